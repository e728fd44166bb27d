#ifndef HRNMF_FACTORIZATION_HPP
#define HRNMF_FACTORIZATION_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace hrnmf {

template <typename Scalar>
using Rank2Gram = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Rank2Vector = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using TermTopicMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
template <typename Scalar>
using TopicDocMatrix = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

/// Exact solution of min_{h >= 0} ||W h - a|| given gram = W^T W and
/// rhs = W^T a.
///
/// If the unconstrained 2x2 solution is nonnegative it is optimal. Otherwise
/// the optimum has at most one active column: each single-column candidate
/// max(0, rhs_c) / gram_cc lowers the squared residual by
/// max(0, rhs_c)^2 / gram_cc, and the larger reduction wins (ties go to
/// column 0). Zero columns are never selected. Throws std::invalid_argument
/// when both columns are zero.
template <typename Scalar>
Rank2Vector<Scalar> solve_rank2(const Rank2Gram<Scalar>& gram, const Rank2Vector<Scalar>& rhs) {
  const Scalar g00 = gram(0, 0);
  const Scalar g11 = gram(1, 1);
  const Scalar g01 = gram(0, 1);
  if (!(g00 > Scalar(0)) && !(g11 > Scalar(0))) {
    throw std::invalid_argument("nnls_rank2: both columns of W are zero");
  }
  const Scalar det = g00 * g11 - g01 * g01;
  // Nearly collinear columns: the unconstrained system is not trusted and the
  // single-column candidates cover the optimum.
  if (det > Scalar(1e-12) * g00 * g11) {
    const Scalar h0 = (g11 * rhs[0] - g01 * rhs[1]) / det;
    const Scalar h1 = (g00 * rhs[1] - g01 * rhs[0]) / det;
    if (h0 >= Scalar(0) && h1 >= Scalar(0)) return {h0, h1};
  }
  Rank2Vector<Scalar> h = Rank2Vector<Scalar>::Zero();
  const Scalar b0 = std::max(rhs[0], Scalar(0));
  const Scalar b1 = std::max(rhs[1], Scalar(0));
  const bool use0 = g00 > Scalar(0);
  const bool use1 = g11 > Scalar(0);
  if (use0 && (!use1 || b0 * b0 * g11 >= b1 * b1 * g00)) {
    h[0] = b0 / g00;
  } else {
    h[1] = b1 / g11;
  }
  return h;
}

template <typename Scalar>
Rank2Gram<Scalar> rank2_gram(const TermTopicMatrix<Scalar>& W) {
  Rank2Gram<Scalar> gram = Rank2Gram<Scalar>::Zero();
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    gram(0, 0) += W(i, 0) * W(i, 0);
    gram(0, 1) += W(i, 0) * W(i, 1);
    gram(1, 1) += W(i, 1) * W(i, 1);
  }
  gram(1, 0) = gram(0, 1);
  return gram;
}

/// argmin_{h >= 0} ||W h - a||_2 for an m x 2 matrix W.
template <typename DerivedW, typename DerivedA>
Rank2Vector<typename DerivedW::Scalar> nnls_rank2(const Eigen::MatrixBase<DerivedW>& W,
                                                  const Eigen::MatrixBase<DerivedA>& a) {
  using Scalar = typename DerivedW::Scalar;
  if (W.cols() != 2 || W.rows() != a.size()) throw std::invalid_argument("nnls_rank2: shape mismatch");
  const Rank2Gram<Scalar> gram = (W.transpose() * W).eval();
  const Rank2Vector<Scalar> rhs = (W.transpose() * a).eval();
  return solve_rank2<Scalar>(gram, rhs);
}

/// Projects sparse columns onto a fixed pair of topic vectors. Used for the
/// final document assignment of a split and for replaying documents against a
/// stored model, so both see identical arithmetic.
template <typename Scalar>
class Rank2Projector {
 public:
  explicit Rank2Projector(TermTopicMatrix<Scalar> W) : W_(std::move(W)), gram_(rank2_gram<Scalar>(W_)) {}

  /// entries: (row, value) pairs in increasing row order.
  template <typename Entries>
  Rank2Vector<Scalar> coefficients(const Entries& entries) const {
    Rank2Vector<Scalar> rhs = Rank2Vector<Scalar>::Zero();
    for (const auto& [row, value] : entries) {
      rhs[0] += W_(row, 0) * value;
      rhs[1] += W_(row, 1) * value;
    }
    return solve_rank2<Scalar>(gram_, rhs);
  }

  const TermTopicMatrix<Scalar>& W() const { return W_; }

 private:
  TermTopicMatrix<Scalar> W_;
  Rank2Gram<Scalar> gram_;
};

template <typename Scalar>
struct FactorPair {
  TermTopicMatrix<Scalar> W;  // m x 2, unit-norm columns (zero columns stay zero)
  TopicDocMatrix<Scalar> H;   // 2 x n
  std::vector<Scalar> residual_history;  // ||A - WH||_F after each outer iteration
  Scalar final_residual = 0;             // after normalization and the last H solve
  Scalar data_norm = 0;                  // ||A||_F
  int iterations = 0;
  bool rescued = false;

  Scalar relative_residual() const { return data_norm > 0 ? final_residual / data_norm : Scalar(0); }
};

template <typename Scalar>
struct Rank2NmfOptions {
  std::uint64_t seed = 0;
  int max_iters = 50;
  Scalar tol = Scalar(1e-6);
  /// Called after each outer iteration with (iteration, W, H, residual).
  std::function<void(int, const TermTopicMatrix<Scalar>&, const TopicDocMatrix<Scalar>&, Scalar)> observer{};
};

namespace detail {

template <typename Scalar, int Options, typename StorageIndex>
void solve_h(const Eigen::SparseMatrix<Scalar, Options, StorageIndex>& A, const TermTopicMatrix<Scalar>& W,
             TopicDocMatrix<Scalar>& H, Eigen::Matrix<Scalar, Eigen::Dynamic, 2>& AtW) {
  const Rank2Gram<Scalar> gram = rank2_gram<Scalar>(W);
  AtW.noalias() = A.transpose() * W;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    H.col(j) = solve_rank2<Scalar>(gram, AtW.row(j).transpose());
  }
}

}  // namespace detail

/// Rank-2 NMF, A ~ W H with W, H >= 0, by alternating exact nonnegative least
/// squares.
///
/// W starts as seeded uniform [0, 1) entries; each outer iteration solves every
/// column of H with W fixed, then every row of W with H fixed. Iteration stops
/// when |r_t - r_{t+1}| < tol * r_0 (r_0 the first recorded residual) or after
/// max_iters. The residual uses
///   ||A - WH||^2 = ||A||^2 - 2 <A, WH> + ||WH||^2
/// with a single sparse traversal of A per half step.
///
/// If a column of W collapses to zero it is re-seeded once with the positive
/// part of the residual of the worst-fit document. The rescued point keeps the
/// objective value (the zero column contributed nothing), so the following
/// exact H solve cannot increase it.
///
/// On return the columns of W have unit norm and H is re-solved against the
/// normalized W. Throws std::invalid_argument for m < 2, n < 2 or an all-zero
/// A.
template <typename Scalar, int Options, typename StorageIndex>
FactorPair<Scalar> nmf_rank2(const Eigen::SparseMatrix<Scalar, Options, StorageIndex>& A,
                             const Rank2NmfOptions<Scalar>& options = {}) {
  static_assert(!(Options & Eigen::RowMajorBit), "nmf_rank2 expects a column-major matrix");
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (m < 2 || n < 2) throw std::invalid_argument("nmf_rank2: need at least 2 rows and 2 columns");
  const Scalar data_sq = A.squaredNorm();
  if (!(data_sq > Scalar(0))) throw std::invalid_argument("nmf_rank2: matrix is all zero");

  FactorPair<Scalar> result;
  result.data_norm = std::sqrt(data_sq);
  auto& W = result.W;
  auto& H = result.H;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  W.resize(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int c = 0; c < 2; ++c) W(i, c) = static_cast<Scalar>(uniform(rng));
  }
  H.setZero(2, n);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> AtW(n, 2);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> AHt(m, 2);

  for (int iter = 0; iter < options.max_iters; ++iter) {
    detail::solve_h(A, W, H, AtW);

    const Rank2Gram<Scalar> hht = (H * H.transpose()).eval();
    AHt.noalias() = A * H.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
      W.row(i) = solve_rank2<Scalar>(hht, AHt.row(i).transpose()).transpose();
    }

    const Rank2Gram<Scalar> wtw = rank2_gram<Scalar>(W);
    const Scalar cross = W.cwiseProduct(AHt).sum();
    const Scalar model_sq = wtw.cwiseProduct(hht).sum();
    const Scalar residual = std::sqrt(std::max(Scalar(0), data_sq - Scalar(2) * cross + model_sq));
    result.residual_history.push_back(residual);
    result.iterations = iter + 1;
    if (options.observer) options.observer(iter, W, H, residual);

    const bool zero0 = !(wtw(0, 0) > Scalar(0));
    const bool zero1 = !(wtw(1, 1) > Scalar(0));
    if (zero0 && zero1) throw std::runtime_error("nmf_rank2: both factor columns collapsed");
    if ((zero0 || zero1) && !result.rescued) {
      result.rescued = true;
      const int dead = zero0 ? 0 : 1;
      // Residual of each document column under the current W and H.
      AtW.noalias() = A.transpose() * W;
      Eigen::Index worst = 0;
      Scalar worst_sq = Scalar(-1);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Rank2Vector<Scalar> h = H.col(j);
        const Scalar r = A.col(j).squaredNorm() - Scalar(2) * h.dot(AtW.row(j).transpose()) + h.dot(wtw * h);
        if (r > worst_sq) {
          worst_sq = r;
          worst = j;
        }
      }
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> column = -(W * H.col(worst));
      column += A.col(worst);
      column = column.cwiseMax(Scalar(0));
      if (!(column.squaredNorm() > Scalar(0))) column = A.col(worst);
      W.col(dead) = column;
      continue;
    }

    const Scalar r0 = result.residual_history.front();
    if (r0 == Scalar(0)) break;
    if (result.residual_history.size() >= 2) {
      const Scalar previous = result.residual_history[result.residual_history.size() - 2];
      if (std::abs(previous - residual) < options.tol * r0) break;
    }
  }

  for (int c = 0; c < 2; ++c) {
    const Scalar norm = W.col(c).norm();
    if (norm > Scalar(0)) W.col(c) /= norm;
  }
  detail::solve_h(A, W, H, AtW);
  const Rank2Gram<Scalar> wtw = rank2_gram<Scalar>(W);
  const Rank2Gram<Scalar> hht = (H * H.transpose()).eval();
  const Scalar cross = H.transpose().cwiseProduct(AtW).sum();
  result.final_residual =
      std::sqrt(std::max(Scalar(0), data_sq - Scalar(2) * cross + wtw.cwiseProduct(hht).sum()));
  return result;
}

}  // namespace hrnmf

#endif  // HRNMF_FACTORIZATION_HPP
