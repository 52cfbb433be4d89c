#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "elearn/error.hpp"

namespace elearn {

/// Thin singular value decomposition A = U * diag(S) * V^T with
/// r = min(rows, cols) factors, S descending.
template <typename Scalar>
struct LatentModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix U;  // terms x r
  Vector S;  // r
  Matrix V;  // docs x r

  Eigen::Index rank() const { return S.size(); }

  friend bool operator==(const LatentModel& a, const LatentModel& b) {
    return a.U == b.U && a.S == b.S && a.V == b.V;
  }
};

template <typename Scalar>
struct TruncatedModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Eigen::Index k = 0;
  Matrix U_k;
  Vector S_k;
  Matrix V_k;
  /// Row d is V_k(d, :) scaled elementwise by S_k.
  Matrix doc_vectors;
};

struct JacobiOptions {
  int max_sweeps = 100;
  double tolerance = 1e-12;
};

namespace detail {

// Hestenes one-sided Jacobi on a tall matrix (rows >= cols). Orthogonalizes
// the columns of `w` in place and accumulates the rotations into `v`.
template <typename Scalar>
void one_sided_jacobi(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& w,
                      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v,
                      const JacobiOptions& opts) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = w.cols();
  v.setIdentity(n, n);
  const Scalar tol = static_cast<Scalar>(opts.tolerance);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Scalar alpha = w.col(i).squaredNorm();
        const Scalar beta = w.col(j).squaredNorm();
        const Scalar gamma = w.col(i).dot(w.col(j));
        if (alpha == Scalar(0) || beta == Scalar(0)) continue;
        if (abs(gamma) <= tol * sqrt(alpha * beta)) continue;
        rotated = true;
        const Scalar zeta = (beta - alpha) / (Scalar(2) * gamma);
        const Scalar t = (zeta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (abs(zeta) + sqrt(Scalar(1) + zeta * zeta));
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          const Scalar wi = w(r, i);
          const Scalar wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar vi = v(r, i);
          const Scalar vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorCode::NoConvergence,
              "Jacobi SVD did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
}

// Replaces the columns flagged in `missing` with unit vectors orthogonal to
// every other column, drawn from the standard basis by Gram-Schmidt.
template <typename Scalar>
void complete_orthonormal_columns(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& u,
                                  const std::vector<bool>& missing) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index m = u.rows();
  std::vector<bool> valid(missing.size());
  for (std::size_t c = 0; c < missing.size(); ++c) valid[c] = !missing[c];
  Eigen::Index next_basis = 0;
  for (std::size_t c = 0; c < missing.size(); ++c) {
    if (!missing[c]) continue;
    bool placed = false;
    while (!placed && next_basis < m) {
      Vector cand = Vector::Unit(m, next_basis++);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t o = 0; o < valid.size(); ++o) {
          if (valid[o]) cand -= u.col(static_cast<Eigen::Index>(o)).dot(cand) * u.col(static_cast<Eigen::Index>(o));
        }
      }
      const Scalar norm = cand.norm();
      if (norm > Scalar(0.5)) {
        u.col(static_cast<Eigen::Index>(c)) = cand / norm;
        valid[c] = true;
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::NoConvergence, "cannot complete orthonormal basis");
  }
}

}  // namespace detail

/// Factors a dense matrix. Columns of U and V are orthonormal, S is sorted
/// descending, and each U column's largest-magnitude entry is non-negative.
template <typename Derived>
LatentModel<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a,
                                          const JacobiOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename LatentModel<Scalar>::Matrix;
  using std::abs;

  if (a.rows() == 0 || a.cols() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  if (!a.allFinite()) throw Error(ErrorCode::NonFinite, "matrix holds NaN or infinity");

  const bool transposed = a.rows() < a.cols();
  Matrix w = transposed ? Matrix(a.transpose()) : Matrix(a);
  Matrix right;
  detail::one_sided_jacobi(w, right, opts);

  const Eigen::Index m = w.rows();
  const Eigen::Index r = w.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sigma(r);
  for (Eigen::Index j = 0; j < r; ++j) sigma[j] = w.col(j).norm();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return sigma[x] > sigma[y]; });

  const Scalar floor = sigma.maxCoeff() * static_cast<Scalar>(std::max(m, r)) *
                       std::numeric_limits<Scalar>::epsilon();

  LatentModel<Scalar> model;
  Matrix left(m, r);
  model.S.resize(r);
  Matrix vs(r, r);
  std::vector<bool> missing(static_cast<std::size_t>(r), false);
  for (Eigen::Index j = 0; j < r; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    vs.col(j) = right.col(src);
    if (sigma[src] > floor) {
      model.S[j] = sigma[src];
      left.col(j) = w.col(src) / sigma[src];
    } else {
      model.S[j] = Scalar(0);
      left.col(j).setZero();
      missing[static_cast<std::size_t>(j)] = true;
    }
  }
  detail::complete_orthonormal_columns(left, missing);

  if (transposed) {
    model.U = std::move(vs);
    model.V = std::move(left);
  } else {
    model.U = std::move(left);
    model.V = std::move(vs);
  }

  for (Eigen::Index j = 0; j < r; ++j) {
    Eigen::Index arg = 0;
    model.U.col(j).cwiseAbs().maxCoeff(&arg);
    if (model.U(arg, j) < Scalar(0)) {
      model.U.col(j) = -model.U.col(j);
      model.V.col(j) = -model.V.col(j);
    }
  }
  return model;
}

template <typename Scalar>
TruncatedModel<Scalar> truncate(const LatentModel<Scalar>& model, Eigen::Index k) {
  if (k < 1 || k > model.rank()) {
    throw Error(ErrorCode::RankOutOfBounds,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(model.rank()) + "]");
  }
  TruncatedModel<Scalar> t;
  t.k = k;
  t.U_k = model.U.leftCols(k);
  t.S_k = model.S.head(k);
  t.V_k = model.V.leftCols(k);
  t.doc_vectors = t.V_k * t.S_k.asDiagonal();
  return t;
}

/// U_k * diag(S_k) * V_k^T.
template <typename Scalar>
typename TruncatedModel<Scalar>::Matrix reconstruct(const TruncatedModel<Scalar>& model) {
  return model.U_k * model.S_k.asDiagonal() * model.V_k.transpose();
}

/// Projects a term-space column into the document-vector space: U_k^T a.
/// For a column of the factored matrix this equals its doc_vectors row.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> fold_in(const TruncatedModel<Scalar>& model,
                                                 const Eigen::MatrixBase<Derived>& column) {
  if (column.size() != model.U_k.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "fold-in vector length differs from term count");
  }
  return model.U_k.transpose() * column;
}

}  // namespace elearn
