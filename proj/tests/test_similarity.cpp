#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "uqcal/similarity.hpp"

using namespace uqcal;

TEST_CASE("tokenize applies the separator and lowercase rules") {
  CHECK(tokenize("The cat, sat.") == TokenSeq{"the", "cat", "sat"});
  CHECK(tokenize("") == TokenSeq{});
  CHECK(tokenize("X-ray X-RAY") == TokenSeq{"x", "ray", "x", "ray"});
  CHECK(tokenize("  a\t\nb ") == TokenSeq{"a", "b"});
  CHECK(tokenize("abc123 4d") == TokenSeq{"abc123", "4d"});
  CHECK(tokenize("caf\xc3\xa9 CAF\xc3\x89") == TokenSeq{"caf\xc3\xa9", "caf\xc3\xa9"});
}

TEST_CASE("lcs_length basics") {
  TokenSeq a{"the", "cat"};
  CHECK(lcs_length(a, a) == 2);
  CHECK(lcs_length({"x", "y"}, {"p", "q"}) == 0);
  CHECK(lcs_length({"the", "cat", "sat", "on", "mat"}, {"the", "cat", "ran"}) == 2);
  CHECK(lcs_length({}, {"a"}) == 0);
}

TEST_CASE("lcs_length matches exhaustive enumeration on random short pairs") {
  std::mt19937_64 rng(99);
  const char* vocab[] = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 300; ++trial) {
    TokenSeq a, b;
    std::size_t la = rng() % 13, lb = rng() % 13;
    for (std::size_t i = 0; i < la; ++i) a.push_back(vocab[rng() % 5]);
    for (std::size_t i = 0; i < lb; ++i) b.push_back(vocab[rng() % 5]);
    std::size_t got = lcs_length(a, b);
    CHECK(got == oracles::lcs_bruteforce(a, b));
    CHECK(got == lcs_length(b, a));  // symmetric
    CHECK(got <= std::min(a.size(), b.size()));
  }
}

TEST_CASE("rouge_l_f values and conventions") {
  TokenSeq a{"the", "cat", "sat", "on", "mat"};
  TokenSeq b{"the", "cat", "ran"};
  CHECK(rouge_l_f(a, a) == 1.0);
  // P = 2/5, R = 2/3 -> 2PR/(P+R) = 0.5
  CHECK(rouge_l_f(a, b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rouge_l_f(a, {}) == 0.0);
  CHECK(rouge_l_f({}, {}) == 0.0);
  CHECK(rouge_l_f({"x"}, {"y"}) == 0.0);
}

TEST_CASE("rouge_l_f symmetry, range, and identity-of-1 on random pairs") {
  std::mt19937_64 rng(7);
  const char* vocab[] = {"a", "b", "c"};
  for (int trial = 0; trial < 500; ++trial) {
    TokenSeq a, b;
    std::size_t la = rng() % 9, lb = rng() % 9;
    for (std::size_t i = 0; i < la; ++i) a.push_back(vocab[rng() % 3]);
    for (std::size_t i = 0; i < lb; ++i) b.push_back(vocab[rng() % 3]);
    double f = rouge_l_f(a, b);
    CHECK(f == rouge_l_f(b, a));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    if (f == 1.0) CHECK(a == b);
    if (!a.empty() && a == b) CHECK(f == 1.0);
  }
}
