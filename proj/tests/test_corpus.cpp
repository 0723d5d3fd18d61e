#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "uqcal/corpus.hpp"
#include "uqcal/synth.hpp"

using namespace uqcal;

namespace {

std::string minimal_line(const std::string& id = "e1") {
  return R"({"id":")" + id +
         R"(","question":"q","image_ref":"img","samples":[)"
         R"({"text":"a","token_logprobs":[-0.5],"correct":true},)"
         R"({"text":"b","token_logprobs":[-0.1],"correct":false}]})";
}

std::vector<Ensemble> parse_str(const std::string& s) {
  std::istringstream in(s);
  return parse_dataset(in);
}

}  // namespace

TEST_CASE("parse_dataset accepts a minimal record") {
  auto data = parse_str(minimal_line());
  REQUIRE(data.size() == 1);
  CHECK(data[0].id == "e1");
  CHECK(data[0].samples.size() == 2);
  CHECK(data[0].samples[0].token_logprobs == std::vector<double>{-0.5});
}

TEST_CASE("parse_dataset rejects invariant violations with field context") {
  auto bad = [](const std::string& line, const std::string& needle) {
    std::istringstream in(line);
    try {
      parse_dataset(in);
      FAIL_CHECK("expected ParseError for: " << line);
    } catch (const ParseError& ex) {
      CHECK(std::string(ex.what()).find(needle) != std::string::npos);
      CHECK(ex.line() == 1);
    }
  };
  bad(R"({"id":"x","question":"q","image_ref":"i","samples":[)"
      R"({"text":"a","token_logprobs":[0.1],"correct":true},)"
      R"({"text":"b","token_logprobs":[-1],"correct":true}]})",
      "token_logprobs");
  bad(R"({"id":"x","question":"q","image_ref":"i","samples":[)"
      R"({"text":"a","grounding_conf":1.5,"correct":true},)"
      R"({"text":"b","correct":true}]})",
      "grounding_conf");
  bad(R"({"id":"x","question":"q","image_ref":"i","samples":[)"
      R"({"text":"a","correct":true}]})",
      "at least 2");
  bad(R"({"id":"x","question":"q","image_ref":"i","accuracy":1.2,"samples":[)"
      R"({"text":"a","correct":true},{"text":"b","correct":true}]})",
      "accuracy");
  bad(R"({"id":"x","question":"q","image_ref":"i","samples":[)"
      R"({"text":"a","correct":true},{"text":"b"}]})",
      "correct missing");
  bad("not json", "malformed JSON");
}

TEST_CASE("parse_dataset rejects duplicate ids with the line number") {
  try {
    parse_str(minimal_line("dup") + "\n" + minimal_line("dup") + "\n");
    FAIL_CHECK("expected duplicate-id error");
  } catch (const ParseError& ex) {
    CHECK(ex.line() == 2);
    CHECK(std::string(ex.what()).find("dup") != std::string::npos);
  }
}

TEST_CASE("unknown fields are preserved and canonical form round-trips") {
  std::string line =
      R"({"id":"e1","question":"q","image_ref":"i","custom":{"k":[1,2]},"samples":[)"
      R"({"text":"a","correct":true,"note":"keep me"},)"
      R"({"text":"b","correct":false}]})";
  auto data = parse_str(line);
  CHECK(data[0].extra.contains("custom"));
  CHECK(data[0].samples[0].extra["note"] == "keep me");
  auto reparsed = parse_str(serialize_ensemble(data[0]));
  CHECK(serialize_ensemble(reparsed[0]) == serialize_ensemble(data[0]));
}

TEST_CASE("100 synthetic lines round-trip byte-identically") {
  SynthConfig cfg;
  cfg.n_ensembles = 100;
  cfg.seed = 11;
  auto dataset = generate(cfg);
  std::string canonical = serialize_dataset(dataset);
  std::istringstream in(canonical);
  auto reparsed = parse_dataset(in);
  CHECK(serialize_dataset(reparsed) == canonical);
}

TEST_CASE("single-field mutations of a valid record fail to parse") {
  // property-style: flip one field at a time, expect rejection naming it
  nlohmann::json base = nlohmann::json::parse(minimal_line());
  std::vector<std::pair<nlohmann::json, std::string>> mutations = {
      {[&] { auto j = base; j["samples"][0]["token_logprobs"][0] = 0.25; return j; }(),
       "token_logprobs"},
      {[&] { auto j = base; j["samples"][0]["token_logprobs"] = nlohmann::json::array(); return j; }(),
       "token_logprobs"},
      {[&] { auto j = base; j["samples"][0]["grounding_conf"] = -0.01; return j; }(),
       "grounding_conf"},
      {[&] { auto j = base; j.erase("question"); return j; }(), "question"},
      {[&] { auto j = base; j["samples"].erase(1); return j; }(), "at least 2"},
  };
  for (const auto& [mutated, field] : mutations) {
    std::istringstream in(mutated.dump());
    CHECK_THROWS_WITH_AS(parse_dataset(in), doctest::Contains(field.c_str()),
                         ParseError);
  }
}

TEST_CASE("ensemble_accuracy precedence and counting") {
  auto data = parse_str(minimal_line());
  CHECK(ensemble_accuracy(data[0]) == 0.5);  // 1 of 2 correct

  Ensemble e = data[0];
  e.accuracy = 0.6;  // explicit field wins over per-sample flags
  CHECK(ensemble_accuracy(e) == 0.6);

  Ensemble all_correct = data[0];
  for (auto& s : all_correct.samples) s.correct = true;
  CHECK(ensemble_accuracy(all_correct) == 1.0);

  // 5 of 20
  Ensemble big;
  for (int i = 0; i < 20; ++i) {
    ResponseSample s;
    s.text = "t";
    s.correct = i < 5;
    big.samples.push_back(s);
  }
  CHECK(ensemble_accuracy(big) == 0.25);
}

TEST_CASE("split sizes, determinism, and partition property") {
  SplitSpec spec{0.2, 42, 5};
  auto [val, test] = split_indices(10, spec, 0);
  CHECK(val.size() == 2);
  CHECK(test.size() == 8);

  auto [val2, test2] = split_indices(10, spec, 0);
  CHECK(val == val2);
  CHECK(test == test2);

  // partition for assorted seeds and fractions
  std::mt19937_64 meta(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + meta() % 200;
    SplitSpec s{0.05 + 0.9 * ((meta() >> 11) * 0x1.0p-53), meta(), 3};
    auto [v, t] = split_indices(n, s, static_cast<unsigned>(meta() % 3));
    std::set<std::size_t> all(v.begin(), v.end());
    for (auto i : t) CHECK(all.insert(i).second);
    CHECK(all.size() == n);
    CHECK(*all.rbegin() == n - 1);
  }
}

TEST_CASE("validation size uses round-half-to-even") {
  // 0.2 * 12 = 2.4 -> 2; 0.5 * 5 = 2.5 -> 2 (ties to even); 0.5 * 7 = 3.5 -> 4
  CHECK(split_indices(12, {0.2, 0, 1}, 0).first.size() == 2);
  CHECK(split_indices(5, {0.5, 0, 1}, 0).first.size() == 2);
  CHECK(split_indices(7, {0.5, 0, 1}, 0).first.size() == 4);
}

TEST_CASE("split assignment matches an independent PRNG enumeration") {
  // Re-derive the validation ids for runs 0..4 straight from the documented
  // generator and shuffle, then check coverage of the union.
  const std::size_t n = 100;
  SplitSpec spec{0.2, 123, 5};
  std::set<std::size_t> unioned;
  for (unsigned run = 0; run < 5; ++run) {
    std::mt19937_64 rng(spec.seed + 0x9E3779B97F4A7C15ULL * (run + 1ULL));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(idx[i], idx[rng() % (i + 1)]);
    std::set<std::size_t> expected(idx.begin(), idx.begin() + 20);

    auto [val, test] = split_indices(n, spec, run);
    CHECK(std::set<std::size_t>(val.begin(), val.end()) == expected);
    unioned.insert(val.begin(), val.end());
  }
  CHECK(unioned.size() >= 60);
}

TEST_CASE("split rejects an empty dataset") {
  CHECK_THROWS_AS(split_indices(0, {0.2, 0, 1}, 0), std::invalid_argument);
}
