#include <doctest.h>

#include <random>

#include "hrnmf/factorization.hpp"
#include "hrnmf/weighting.hpp"
#include "oracles.hpp"

using namespace hrnmf;

namespace {

SparseMatrix sparse(const Eigen::MatrixXd& dense) { return dense.sparseView(); }

}  // namespace

TEST_CASE("nnls with identity columns") {
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  CHECK(nnls_rank2(I, Eigen::Vector2d(3.0, -0.0)) == Eigen::Vector2d(3.0, 0.0));
  const Eigen::Vector2d h = nnls_rank2(I, Eigen::Vector2d(3.0, -1.0));
  CHECK(h == Eigen::Vector2d(3.0, 0.0));
  CHECK((Eigen::Vector2d(3.0, -1.0) - I * h).norm() == doctest::Approx(1.0));
}

TEST_CASE("nnls edge cases") {
  Eigen::MatrixX2d W(3, 2);
  W << 1, 0, 1, 0, 1, 0;  // second column zero
  const Eigen::Vector3d a(1, 2, 3);
  CHECK(nnls_rank2(W, a) == Eigen::Vector2d(2.0, 0.0));
  CHECK_THROWS_AS(nnls_rank2(Eigen::MatrixX2d::Zero(3, 2), a), std::invalid_argument);
  CHECK_THROWS_AS(nnls_rank2(W, Eigen::Vector2d(1, 1)), std::invalid_argument);

  Eigen::MatrixX2d parallel(2, 2);
  parallel << 1, 2, 1, 2;
  const Eigen::Vector2d h = nnls_rank2(parallel, Eigen::Vector2d(2, 2));
  CHECK((Eigen::Vector2d(2, 2) - parallel * h).norm() == doctest::Approx(0.0));
}

TEST_CASE("nnls agrees with support enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> rows(2, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = rows(rng);
    Eigen::MatrixX2d W(m, 2);
    Eigen::VectorXd a(m);
    for (int i = 0; i < m; ++i) {
      W(i, 0) = unit(rng);
      W(i, 1) = unit(rng);
      a[i] = unit(rng);
    }
    const auto expected = oracle::nnls_brute_force(W, a);
    const Eigen::Vector2d h = nnls_rank2(W, a);
    CHECK(h.minCoeff() >= 0.0);
    CHECK((h - expected.h).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((a - W * h).norm() <= expected.residual + 1e-12);
  }
}

TEST_CASE("rank-1 outer product is recovered") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  Eigen::VectorXd u(30), v(40);
  for (auto& x : u) x = unit(rng);
  for (auto& x : v) x = unit(rng);
  const auto pair = nmf_rank2(sparse(u * v.transpose()), {.seed = 1});
  CHECK(pair.relative_residual() <= 1e-6);
}

TEST_CASE("exact two-factor product is recovered") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixX2d W0(25, 2);
  Eigen::Matrix<double, 2, Eigen::Dynamic> H0(2, 35);
  for (auto& x : W0.reshaped()) x = unit(rng);
  for (auto& x : H0.reshaped()) x = unit(rng);
  const auto pair = nmf_rank2(sparse(W0 * H0), {.seed = 3, .max_iters = 500, .tol = 1e-9});
  CHECK(pair.relative_residual() <= 1e-4);
}

TEST_CASE("block-diagonal documents split by topic") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(8, 10);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 4; ++i) A(i, j) = unit(rng);
  }
  for (int j = 5; j < 10; ++j) {
    for (int i = 4; i < 8; ++i) A(i, j) = unit(rng);
  }
  const auto pair = nmf_rank2(sparse(A), {.seed = 6});
  const auto& H = pair.H;
  const int first = H(0, 0) > H(1, 0) ? 0 : 1;
  for (int j = 0; j < 10; ++j) {
    const int topic = j < 5 ? first : 1 - first;
    CHECK(H(topic, j) > H(1 - topic, j));
  }
}

TEST_CASE("factor pairs: nonnegativity, monotone residuals, unit columns, determinism") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto weighted = tfidf(oracle::random_counts(60, 50, 0.08, rng));
    if (weighted.values.nonZeros() == 0) continue;
    bool nonnegative = true;
    Rank2NmfOptions<double> options{.seed = static_cast<std::uint64_t>(trial)};
    options.observer = [&](int, const TermTopicMatrix<double>& W, const TopicDocMatrix<double>& H, double) {
      nonnegative = nonnegative && W.minCoeff() >= 0.0 && H.minCoeff() >= 0.0;
    };
    const auto pair = nmf_rank2(weighted.values, options);
    CHECK(nonnegative);
    CHECK(pair.W.minCoeff() >= 0.0);
    CHECK(pair.H.minCoeff() >= 0.0);
    for (std::size_t t = 1; t < pair.residual_history.size(); ++t) {
      CHECK(pair.residual_history[t] <= pair.residual_history[t - 1] + 1e-10);
    }
    for (int c = 0; c < 2; ++c) {
      const double norm = pair.W.col(c).norm();
      CHECK((norm == 0.0 || std::abs(norm - 1.0) <= 1e-12));
    }
    const auto again = nmf_rank2(weighted.values, {.seed = static_cast<std::uint64_t>(trial)});
    CHECK(again.W == pair.W);
    CHECK(again.H == pair.H);
    CHECK(again.residual_history == pair.residual_history);
  }
}

TEST_CASE("the sparse residual identity matches a dense recomputation") {
  std::mt19937_64 rng(23);
  const auto weighted = tfidf(oracle::random_counts(30, 30, 0.2, rng));
  std::vector<double> dense;
  Rank2NmfOptions<double> options{.seed = 5};
  options.observer = [&](int, const TermTopicMatrix<double>& W, const TopicDocMatrix<double>& H, double r) {
    const double exact = (Eigen::MatrixXd(weighted.values) - W * H).norm();
    CHECK(r == doctest::Approx(exact).epsilon(1e-9));
  };
  const auto pair = nmf_rank2(weighted.values, options);
  CHECK(pair.final_residual ==
        doctest::Approx((Eigen::MatrixXd(weighted.values) - pair.W * pair.H).norm()).epsilon(1e-9));
}

TEST_CASE("nmf input validation") {
  CHECK_THROWS_AS(nmf_rank2(sparse(Eigen::MatrixXd::Ones(1, 5))), std::invalid_argument);
  CHECK_THROWS_AS(nmf_rank2(sparse(Eigen::MatrixXd::Ones(5, 1))), std::invalid_argument);
  CHECK_THROWS_AS(nmf_rank2(SparseMatrix(4, 4)), std::invalid_argument);
}

TEST_CASE("zero-column rescue keeps the descent monotone") {
  // One nonzero row: the second topic has nothing to explain and collapses.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 4);
  A.row(0) << 1, 2, 3, 4;
  const auto pair = nmf_rank2(sparse(A), {.seed = 0});
  CHECK(pair.relative_residual() <= 1e-9);
  for (std::size_t t = 1; t < pair.residual_history.size(); ++t) {
    CHECK(pair.residual_history[t] <= pair.residual_history[t - 1] + 1e-10);
  }
}
