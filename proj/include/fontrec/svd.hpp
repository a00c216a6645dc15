#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fontrec/tensor.hpp"

namespace fontrec {

template <class S>
struct SvdResult {
  Tensor<S> u;         // m x r, orthonormal columns
  std::vector<S> s;    // r singular values, non-negative, non-increasing
  Tensor<S> v;         // n x r, orthonormal columns
};

struct SvdOptions {
  double rel_tol = 1e-12;  // column pair is converged when |a_i.a_j| <= tol*|a_i||a_j|
  int max_sweeps = 60;
};

namespace detail {

// Hestenes one-sided Jacobi on the columns of a (m x n, m >= n).
// On return the columns of a are U*S and v holds the accumulated rotations.
template <class S>
int jacobi_orthogonalize(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& a,
                         Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& v,
                         const SvdOptions& opt) {
  const Index n = a.cols();
  int sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    bool rotated = false;
    for (Index i = 0; i + 1 < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const S alpha = a.col(i).squaredNorm();
        const S beta = a.col(j).squaredNorm();
        const S gamma = a.col(i).dot(a.col(j));
        if (std::abs(double(gamma)) <=
            opt.rel_tol * std::sqrt(double(alpha) * double(beta)))
          continue;
        rotated = true;
        const S zeta = (beta - alpha) / (S(2) * gamma);
        const S t = (zeta >= S(0) ? S(1) : S(-1)) /
                    (std::abs(zeta) + std::sqrt(S(1) + zeta * zeta));
        const S c = S(1) / std::sqrt(S(1) + t * t);
        const S s = c * t;
        for (Index k = 0; k < a.rows(); ++k) {
          const S ai = a(k, i), aj = a(k, j);
          a(k, i) = c * ai - s * aj;
          a(k, j) = s * ai + c * aj;
        }
        for (Index k = 0; k < n; ++k) {
          const S vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) return sweep + 1;
  }
  return -1;
}

// Deterministic orthonormal completion for null columns of u.
template <class S>
void complete_null_columns(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& u,
                           const std::vector<S>& sing, double tiny) {
  const Index m = u.rows(), r = u.cols();
  for (Index j = 0; j < r; ++j) {
    if (double(sing[size_t(j)]) > tiny) continue;
    for (Index cand = 0; cand < m; ++cand) {
      Eigen::Matrix<S, Eigen::Dynamic, 1> e =
          Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(m);
      e[cand] = S(1);
      for (Index k = 0; k < r; ++k) {
        if (k == j) continue;
        if (k < j || double(sing[size_t(k)]) > tiny)
          e -= u.col(k).dot(e) * u.col(k);
      }
      const S nrm = e.norm();
      if (double(nrm) > 0.5) {
        u.col(j) = e / nrm;
        break;
      }
    }
  }
}

}  // namespace detail

// One-sided Jacobi SVD: W = U diag(s) V^T with r = min(m, n).
template <class S>
SvdResult<S> svd(const Tensor<S>& w, const SvdOptions& opt = {}) {
  if (w.rank() != 2) throw DimensionError("svd expects a rank-2 tensor");
  if (!w.all_finite()) throw NumericError("svd input has non-finite entries");
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  const Index m = w.extent(0), n = w.extent(1);
  const bool transposed_input = m < n;
  Mat a(std::max(m, n), std::min(m, n));
  if (transposed_input)
    a = w.mat().transpose();
  else
    a = w.mat();
  const Index r = a.cols();
  Mat v = Mat::Identity(r, r);
  const int sweeps = detail::jacobi_orthogonalize(a, v, opt);
  if (sweeps < 0)
    throw NumericError("svd did not converge after " +
                       std::to_string(opt.max_sweeps) + " sweeps");

  std::vector<S> sing(static_cast<size_t>(r));
  for (Index j = 0; j < r; ++j) sing[size_t(j)] = a.col(j).norm();

  std::vector<Index> order(static_cast<size_t>(r));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return sing[size_t(x)] > sing[size_t(y)];
  });

  Mat u_sorted(a.rows(), r), v_sorted(r, r);
  std::vector<S> s_sorted(static_cast<size_t>(r));
  for (Index j = 0; j < r; ++j) {
    const Index src = order[size_t(j)];
    s_sorted[size_t(j)] = sing[size_t(src)];
    v_sorted.col(j) = v.col(src);
    if (double(sing[size_t(src)]) > 0.0)
      u_sorted.col(j) = a.col(src) / sing[size_t(src)];
    else
      u_sorted.col(j).setZero();
  }
  detail::complete_null_columns(u_sorted, s_sorted, 0.0);

  SvdResult<S> out{Tensor<S>({a.rows(), r}), std::move(s_sorted),
                   Tensor<S>({r, r})};
  // Column-major work matrices back into row-major tensors.
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < r; ++j) out.u(i, j) = u_sorted(i, j);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j) out.v(i, j) = v_sorted(i, j);
  if (transposed_input) std::swap(out.u, out.v);
  return out;
}

template <class S>
Tensor<S> svd_reconstruct(const SvdResult<S>& f) {
  const Index m = f.u.extent(0), n = f.v.extent(0), r = f.u.extent(1);
  Tensor<S> scaled = f.u;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < r; ++j) scaled(i, j) *= f.s[size_t(j)];
  Tensor<S> out({m, n});
  out.mat().noalias() = scaled.mat() * f.v.mat().transpose();
  return out;
}

// Best rank-k approximation: keep the k largest singular values, zero the rest.
template <class S>
Tensor<S> rank_project(const Tensor<S>& w, Index k, const SvdOptions& opt = {}) {
  if (k < 1) throw DimensionError("rank_project requires k >= 1");
  SvdResult<S> f = svd(w, opt);
  for (Index i = k; i < Index(f.s.size()); ++i) f.s[size_t(i)] = S(0);
  return svd_reconstruct(f);
}

}  // namespace fontrec
