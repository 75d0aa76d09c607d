#include <cmath>
#include <filesystem>

#include "albatch/pairwise.hpp"
#include "albatch/scores.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace albatch;

namespace {
constexpr double kLn2 = 0.6931471805599453;
// I between the perfectly-disagreeing one-hot pair and [[.75,.25],[.25,.75]].
constexpr double kMiDupPt75 = 0.13081203594113696;

PosteriorTensor three_point_pool() {
  return testutil::make_tensor({
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.3, 0.7}, {0.3, 0.7}},
      {{0.75, 0.25}, {0.25, 0.75}},
  });
}
}  // namespace

TEST_CASE("pairwise examples") {
  PosteriorTensor correlated = testutil::make_tensor({
      {{1.0, 0.0}, {0.0, 1.0}},
      {{1.0, 0.0}, {0.0, 1.0}},
  });
  CHECK(pairwise_mi(correlated, 0, 1) == doctest::Approx(kLn2).epsilon(1e-12));

  PosteriorTensor pool = three_point_pool();
  // Member-constant output is independent of theta, hence of everything.
  CHECK(pairwise_mi(pool, 0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pairwise_mi(pool, 0, 2) == doctest::Approx(kMiDupPt75).epsilon(1e-12));
}

TEST_CASE("pairwise errors") {
  PosteriorTensor pool = three_point_pool();
  CHECK_THROWS_AS(pairwise_mi(pool, 0, 0), SelfPairError);
  CHECK_THROWS_AS(pairwise_mi(pool, 0, 3), IndexOutOfRangeError);
  CHECK_THROWS_AS(pairwise_mi(pool, -1, 1), IndexOutOfRangeError);
}

TEST_CASE("block equals the per-pair value and the naive oracle") {
  PosteriorTensor t = testutil::random_tensor(8, 4, 3, 2024);
  MiTile one = pairwise_mi_block(t, 2, 3, 5, 6);
  CHECK(one.at(2, 5) == doctest::Approx(pairwise_mi(t, 2, 5)).epsilon(1e-15));

  MiTile full = pairwise_mi_block(t, 0, 8, 0, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j) {
        CHECK(full.at(i, j) == 0.0);
      } else {
        CHECK(std::abs(full.at(i, j) - testutil::oracle_pairwise_mi(t, i, j)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("full matrix matches tiles and stays symmetric") {
  PosteriorTensor t = testutil::random_tensor(12, 3, 4, 314);
  std::vector<double> m = pairwise_mi_matrix(t);
  ScoreVector ent = entropy_scores(t);
  for (int i = 0; i < 12; ++i) {
    CHECK(m[i * 12 + i] == 0.0);
    for (int j = 0; j < 12; ++j) {
      if (i == j) continue;
      CHECK(std::abs(m[i * 12 + j] - m[j * 12 + i]) <= 1e-12);
      CHECK(m[i * 12 + j] >= -1e-9);
      CHECK(m[i * 12 + j] <= std::min(ent.values[i], ent.values[j]) + 1e-9);
      CHECK(std::abs(m[i * 12 + j] - pairwise_mi(t, i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("symmetry computed both ways") {
  PosteriorTensor t = testutil::random_tensor(10, 5, 3, 8);
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      CHECK(std::abs(pairwise_mi(t, i, j) - pairwise_mi(t, j, i)) <= 1e-12);
    }
  }
}

TEST_CASE("pairwise MI is invariant under a common member permutation") {
  PosteriorTensor t = testutil::random_tensor(6, 5, 3, 90);
  std::vector<std::vector<std::vector<double>>> rotated(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 5; ++j) {
      auto row = t.member_row(i, (j + 3) % 5);
      rotated[i].push_back({row.begin(), row.end()});
    }
  }
  PosteriorTensor tr = testutil::make_tensor(rotated);
  CHECK(std::abs(pairwise_mi(t, 1, 4) - pairwise_mi(tr, 1, 4)) <= 1e-12);
}

TEST_CASE("pairwise total correlation") {
  PosteriorTensor pool = three_point_pool();
  const int single[1] = {2};
  CHECK(total_correlation_pairwise(pool, single) == 0.0);

  PosteriorTensor correlated = testutil::make_tensor({
      {{1.0, 0.0}, {0.0, 1.0}},
      {{1.0, 0.0}, {0.0, 1.0}},
  });
  const int pair[2] = {0, 1};
  CHECK(total_correlation_pairwise(correlated, pair) ==
        doctest::Approx(2.0 * kLn2).epsilon(1e-12));

  const int mixed[2] = {0, 2};
  CHECK(total_correlation_pairwise(pool, mixed) ==
        doctest::Approx(2.0 * kMiDupPt75).epsilon(1e-12));

  const int dup[2] = {1, 1};
  CHECK_THROWS_AS(total_correlation_pairwise(pool, dup), DuplicateIndexError);
}

TEST_CASE("pairwise_mi_against matches per-pair calls") {
  PosteriorTensor t = testutil::random_tensor(20, 4, 3, 1234);
  std::vector<int> candidates;
  for (int i = 0; i < 20; ++i) candidates.push_back(i);
  std::vector<double> against = pairwise_mi_against(t, 7, candidates);
  for (int i = 0; i < 20; ++i) {
    if (i == 7) {
      CHECK(against[i] == 0.0);
    } else {
      CHECK(against[i] == doctest::Approx(pairwise_mi(t, i, 7)).epsilon(1e-15));
    }
  }
}

TEST_CASE("matrix file round trip") {
  PosteriorTensor t = testutil::random_tensor(5, 3, 3, 55);
  std::vector<double> m = pairwise_mi_matrix(t);
  auto path = std::filesystem::temp_directory_path() / "albatch_matrix_test.bin";
  write_matrix(path, 5, 5, m);
  MatrixFile back = read_matrix(path);
  CHECK(back.n == 5);
  CHECK(back.m == 5);
  CHECK(back.values == m);
  std::filesystem::remove(path);
}
