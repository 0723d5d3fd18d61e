// Independent reference implementations used as test oracles. These must
// stay decoupled from the library code paths they check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracles {

// LCS by exhaustive subsequence enumeration; only viable for |a| <= ~20.
inline std::size_t lcs_bruteforce(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  auto is_subsequence = [](const std::vector<std::string>& sub,
                           const std::vector<std::string>& seq) {
    std::size_t i = 0;
    for (const auto& tok : seq)
      if (i < sub.size() && sub[i] == tok) ++i;
    return i == sub.size();
  };
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask & (1u << i)) sub.push_back(a[i]);
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

// ECE straight from the definition: walk every bin, collect members by edge
// comparison, average, weight by count.
inline double ece_bruteforce(const std::vector<std::pair<double, double>>& pairs,
                             unsigned m) {
  double total = 0.0;
  for (unsigned bin = 1; bin <= m; ++bin) {
    double lo = static_cast<double>(bin - 1) / m;
    double hi = static_cast<double>(bin) / m;
    double conf_sum = 0.0, acc_sum = 0.0;
    std::size_t count = 0;
    for (const auto& [conf, acc] : pairs) {
      bool in_bin = bin == 1 ? conf <= hi : (conf > lo && conf <= hi);
      if (in_bin) {
        conf_sum += conf;
        acc_sum += acc;
        ++count;
      }
    }
    if (count)
      total += static_cast<double>(count) / static_cast<double>(pairs.size()) *
               std::abs(acc_sum / count - conf_sum / count);
  }
  return total;
}

// Exhaustive (T, C) enumeration with lexicographic tie-break, written
// against the formulas rather than the library calls.
struct GridFitResult {
  double t, c, ece;
};

inline GridFitResult fit_fused_bruteforce(
    const std::vector<std::array<double, 3>>& triples,  // baseline, gm, acc
    const std::vector<double>& t_values, const std::vector<double>& c_values,
    unsigned m_bins) {
  GridFitResult best{0, 0, 1e300};
  for (double t : t_values) {
    for (double c : c_values) {
      std::vector<std::pair<double, double>> fused;
      for (const auto& tr : triples) {
        double conf = tr[0] * (tr[1] == 0.0 ? 0.0 : std::pow(tr[1], 1.0 / t)) + c;
        conf = std::clamp(conf, 0.0, 1.0);
        fused.emplace_back(conf, tr[2]);
      }
      double e = ece_bruteforce(fused, m_bins);
      if (e < best.ece) best = {t, c, e};
    }
  }
  return best;
}

// Two-pass mean / unbiased variance.
inline std::pair<double, double> mean_var_twopass(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, var / static_cast<double>(xs.size() - 1)};
}

// Kahan-compensated summation, for checking plain summation results.
inline double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace oracles
