#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "subspace/linalg.hpp"
#include "test_support.hpp"

using namespace subspace;
using namespace subspace::linalg;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, Vector(cols));
  for (auto& r : m) {
    for (auto& x : r) x = testing_support::uniform(rng, -bound, bound);
  }
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rank agrees with the minors oracle") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 400; ++i) {
      const auto rows = static_cast<std::size_t>(testing_support::uniform(rng, 1, 5));
      const auto cols = static_cast<std::size_t>(testing_support::uniform(rng, 1, 5));
      auto m = random_matrix(rng, rows, cols, 1);
      CHECK(rank(m) == oracle::rank(m));
    }
  }

  TEST_CASE("machine-integer rank oracle agrees with the rational one") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
      const auto rows = static_cast<std::size_t>(testing_support::uniform(rng, 1, 6));
      const auto cols = static_cast<std::size_t>(testing_support::uniform(rng, 1, 6));
      auto m = random_matrix(rng, rows, cols, i % 2 ? 1 : 1000);
      oracle::IntMatrix small(rows, std::vector<long long>(cols));
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) small[r][c] = m[r][c].get_num().get_si();
      }
      CHECK(oracle::rank_small(small) == oracle::rank(m));
    }
  }

  TEST_CASE("nullspace vectors are killed and have the right count") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
      const auto rows = static_cast<std::size_t>(testing_support::uniform(rng, 1, 4));
      const auto cols = static_cast<std::size_t>(testing_support::uniform(rng, 1, 5));
      auto m = random_matrix(rng, rows, cols, 2);
      auto ns = nullspace(m, cols);
      CHECK(ns.size() == cols - rank(m));
      for (const auto& v : ns) {
        for (const auto& r : m) {
          Rat s = 0;
          for (std::size_t j = 0; j < cols; ++j) s += r[j] * v[j];
          CHECK(s == 0);
        }
        CHECK(primitive_scale(v) == 1);
      }
      if (!ns.empty()) CHECK(rank(ns) == ns.size());
    }
  }

  TEST_CASE("nullspace of an empty system is everything") {
    auto ns = nullspace({}, 3);
    CHECK(ns.size() == 3);
    CHECK(rank(ns) == 3);
  }

  TEST_CASE("row space intersection dimension follows Grassmann") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      auto a = random_matrix(rng, 2, 4, 1);
      auto b = random_matrix(rng, 2, 4, 1);
      auto both = a;
      both.insert(both.end(), b.begin(), b.end());
      auto inter = row_space_intersection(a, b, 4);
      CHECK(rank(inter) == inter.size());
      CHECK(inter.size() + rank(both) == rank(a) + rank(b));
      for (const auto& v : inter) {
        CHECK(in_row_space(a, v));
        CHECK(in_row_space(b, v));
      }
    }
  }

  TEST_CASE("solve_combination reproduces the target") {
    Matrix rows = {{1, 0, 1}, {0, 1, 1}};
    auto c = solve_combination(rows, {2, 3, 5});
    REQUIRE(c);
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK_FALSE(solve_combination(rows, {0, 0, 1}));
  }

  TEST_CASE("RowSpace membership") {
    RowSpace s(Matrix{{1, 1, 0}, {0, 0, 1}});
    CHECK(s.dim() == 2);
    CHECK(s.contains({2, 2, -3}));
    CHECK_FALSE(s.contains({1, 0, 0}));
    CHECK(s.contains({0, 0, 0}));
  }

  TEST_CASE("primitive_scale") {
    CHECK(primitive_scale({make_rat(-1, 2), make_rat(1, 3)}) == -6);
    CHECK(primitive_scale({0, 4, 6}) == make_rat(1, 2));
    CHECK(primitive_scale({0, 0}) == 0);
  }
}
