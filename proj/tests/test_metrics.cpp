#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uqcal/metrics.hpp"

using namespace uqcal;

TEST_CASE("ece trivial cases") {
  std::vector<std::pair<double, double>> perfect(50, {0.5, 0.5});
  CHECK(ece(perfect, 10).ece == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<std::pair<double, double>> single{{0.95, 0.0}};
  auto report = ece(single, 10);
  CHECK(report.ece == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(report.n == 1);
}

TEST_CASE("ece input validation") {
  CHECK_THROWS_AS(ece({}, 10), std::invalid_argument);
  CHECK_THROWS_AS(ece({{1.2, 0.5}}, 10), std::invalid_argument);
  CHECK_THROWS_AS(ece({{0.5, -0.1}}, 10), std::invalid_argument);
  CHECK_THROWS_AS(ece({{0.5, 0.5}}, 0), std::invalid_argument);
}

TEST_CASE("bin edges: half-open with zero in bin 1") {
  auto report = ece({{0.0, 1.0}, {0.1, 1.0}, {0.10001, 1.0}, {1.0, 1.0}}, 10);
  CHECK(report.bins[0].count == 2);  // 0.0 and 0.1
  CHECK(report.bins[1].count == 1);  // 0.10001
  CHECK(report.bins[9].count == 1);  // 1.0
  std::size_t total = 0;
  for (const auto& b : report.bins) total += b.count;
  CHECK(total == report.n);
}

TEST_CASE("ece matches the per-definition recomputation on random pairs") {
  std::mt19937_64 rng(61);
  for (unsigned m : {1u, 5u, 10u, 17u}) {
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 1000; ++i)
      pairs.emplace_back((rng() >> 11) * 0x1.0p-53, (rng() >> 11) * 0x1.0p-53);
    auto report = ece(pairs, m);
    CHECK(report.ece ==
          doctest::Approx(oracles::ece_bruteforce(pairs, m)).epsilon(1e-12));
    CHECK(report.ece >= 0.0);
    CHECK(report.ece <= 1.0);
    // report invariant: ece equals the weighted bin-gap sum
    double recomputed = 0.0;
    for (const auto& b : report.bins)
      if (b.count)
        recomputed += static_cast<double>(b.count) / report.n *
                      std::abs(b.mean_acc - b.mean_conf);
    CHECK(std::abs(recomputed - report.ece) < 1e-12);
  }
}

TEST_CASE("ece is invariant under permutation and duplication") {
  std::mt19937_64 rng(71);
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 200; ++i)
    pairs.emplace_back((rng() >> 11) * 0x1.0p-53, (rng() % 2) ? 1.0 : 0.0);
  double reference = ece(pairs, 10).ece;

  auto shuffled = pairs;
  for (std::size_t i = shuffled.size() - 1; i > 0; --i)
    std::swap(shuffled[i], shuffled[rng() % (i + 1)]);
  CHECK(ece(shuffled, 10).ece == doctest::Approx(reference).epsilon(1e-12));

  auto doubled = pairs;
  doubled.insert(doubled.end(), pairs.begin(), pairs.end());
  CHECK(ece(doubled, 10).ece == doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("conf = acc pointwise gives ECE 0 for every M") {
  std::mt19937_64 rng(81);
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 300; ++i) {
    double v = (rng() >> 11) * 0x1.0p-53;
    pairs.emplace_back(v, v);
  }
  for (unsigned m : {1u, 3u, 10u, 25u})
    CHECK(ece(pairs, m).ece == doctest::Approx(0.0).epsilon(1e-12));
}

namespace {

RunSummary make_run(unsigned idx, double ece_a, double ece_b) {
  RunSummary r;
  r.run_index = idx;
  r.seed = 7;
  r.methods["baseline"] = {ece_a, std::nullopt, std::nullopt};
  r.methods["scaled"] = {ece_b, 1.5, std::nullopt};
  return r;
}

}  // namespace

TEST_CASE("aggregate_runs mean and variance") {
  auto agg = aggregate_runs({make_run(0, 0.1, 0.3), make_run(1, 0.2, 0.3)});
  CHECK(agg.methods.at("baseline").mean_ece == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(agg.methods.at("baseline").var_ece == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(agg.methods.at("scaled").var_ece == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(agg.methods.at("scaled").mean_t == doctest::Approx(1.5));
  CHECK_FALSE(agg.methods.at("baseline").mean_t.has_value());
  CHECK(agg.runs == 2);
}

TEST_CASE("aggregate_runs conventions and errors") {
  auto identical = aggregate_runs({make_run(0, 0.2, 0.1), make_run(1, 0.2, 0.1),
                                   make_run(2, 0.2, 0.1)});
  CHECK(identical.methods.at("baseline").var_ece == 0.0);

  auto single = aggregate_runs({make_run(0, 0.42, 0.1)});
  CHECK(single.methods.at("baseline").mean_ece == 0.42);
  CHECK(single.methods.at("baseline").var_ece == 0.0);

  RunSummary odd = make_run(1, 0.1, 0.2);
  odd.methods.erase("scaled");
  CHECK_THROWS_AS(aggregate_runs({make_run(0, 0.1, 0.2), odd}),
                  std::invalid_argument);
}

TEST_CASE("aggregate matches a two-pass oracle; mean within the hull") {
  std::mt19937_64 rng(91);
  std::vector<RunSummary> runs;
  std::vector<double> eces;
  for (unsigned i = 0; i < 5; ++i) {
    double e = (rng() >> 11) * 0x1.0p-53;
    eces.push_back(e);
    runs.push_back(make_run(i, e, e / 2));
  }
  auto agg = aggregate_runs(runs);
  auto [mean, var] = oracles::mean_var_twopass(eces);
  CHECK(agg.methods.at("baseline").mean_ece == doctest::Approx(mean).epsilon(1e-12));
  CHECK(agg.methods.at("baseline").var_ece == doctest::Approx(var).epsilon(1e-12));
  CHECK(agg.methods.at("baseline").mean_ece >=
        *std::min_element(eces.begin(), eces.end()) - 1e-15);
  CHECK(agg.methods.at("baseline").mean_ece <=
        *std::max_element(eces.begin(), eces.end()) + 1e-15);
}
