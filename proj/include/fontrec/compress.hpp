#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fontrec/network.hpp"
#include "fontrec/svd.hpp"

namespace fontrec {

// Top-k SVD factors of an fc weight matrix; stores k(m+n+1) parameters.
template <class S>
struct FactorizedLayer {
  Tensor<S> u_tilde;       // m x k
  std::vector<S> s_tilde;  // k
  Tensor<S> v_tilde;       // n x k
  Index k = 0;

  Index param_count() const {
    return k * (u_tilde.extent(0) + v_tilde.extent(0) + 1);
  }
};

template <class S>
FactorizedLayer<S> take_top_k(const SvdResult<S>& f, Index k) {
  const Index m = f.u.extent(0), n = f.v.extent(0);
  FactorizedLayer<S> out{Tensor<S>({m, k}), std::vector<S>(size_t(k)),
                         Tensor<S>({n, k}), k};
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < k; ++j) out.u_tilde(i, j) = f.u(i, j);
  for (Index j = 0; j < k; ++j) out.s_tilde[size_t(j)] = f.s[size_t(j)];
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < k; ++j) out.v_tilde(i, j) = f.v(i, j);
  return out;
}

template <class S>
Tensor<S> reconstruct(const FactorizedLayer<S>& f) {
  const Index m = f.u_tilde.extent(0), n = f.v_tilde.extent(0);
  Tensor<S> scaled = f.u_tilde;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < f.k; ++j) scaled(i, j) *= f.s_tilde[size_t(j)];
  Tensor<S> out({m, n});
  out.mat().noalias() = scaled.mat() * f.v_tilde.mat().transpose();
  return out;
}

// Plain low-rank truncation of a trained matrix; lossy in general.
template <class S>
FactorizedLayer<S> truncate_lossy(const Tensor<S>& w, Index k) {
  if (w.rank() != 2) throw DimensionError("truncate_lossy expects a matrix");
  if (k < 1) throw DimensionError("truncate_lossy requires k >= 1");
  const Index r = std::min(w.extent(0), w.extent(1));
  return take_top_k(svd(w), std::min(k, r));
}

// Factorization of a matrix that is already numerically rank-k (as produced
// by rank-constrained training); refuses otherwise.
template <class S>
FactorizedLayer<S> export_lossless(const Tensor<S>& w, Index k,
                                   double rank_tol = 1e-6) {
  if (w.rank() != 2) throw DimensionError("export_lossless expects a matrix");
  if (k < 1) throw DimensionError("export_lossless requires k >= 1");
  const Index r = std::min(w.extent(0), w.extent(1));
  SvdResult<S> f = svd(w);
  const Index kk = std::min(k, r);
  if (kk < r && f.s[0] > S(0)) {
    const double ratio = double(f.s[size_t(kk)]) / double(f.s[0]);
    if (ratio > rank_tol) throw RankExceededError(ratio);
  }
  return take_top_k(f, kk);
}

// Compressed-to-dense parameter fraction k(m+n+1)/(mn) for one layer.
struct Ratio {
  Index num = 0;
  Index den = 1;
  double value() const { return double(num) / double(den); }
};

inline Ratio compression_ratio(Index m, Index n, Index k) {
  if (m < 1 || n < 1 || k < 1)
    throw DimensionError("compression_ratio needs positive m, n, k");
  return {k * (m + n + 1), m * n};
}

struct LayerCount {
  std::string name;
  Index dense = 0;                      // weight entries
  std::optional<Index> compressed;      // k(m+n+1) when factorized
};

struct SizeReport {
  std::vector<LayerCount> layers;
  Index total_dense = 0;
  Index total_stored = 0;
  double ratio = 1.0;  // total_dense / total_stored
};

// Parameter accounting from layer shapes alone. Counts weight entries;
// factorized fc layers are counted as k(m+n+1).
inline SizeReport size_report(const NetworkSpec& spec,
                              const std::map<int, Index>& factored_k = {}) {
  SizeReport rep;
  const auto shapes = spec.weight_shapes();
  for (int w = 0; w < int(shapes.size()); ++w) {
    LayerCount lc;
    lc.name = spec.weighted_name(w);
    Index dense = 1;
    for (Index e : shapes[size_t(w)].kernel) dense *= e;
    lc.dense = dense;
    if (auto it = factored_k.find(w); it != factored_k.end()) {
      if (shapes[size_t(w)].kernel.size() != 2)
        throw DimensionError("only fc layers factorize: " + lc.name);
      const Index m = shapes[size_t(w)].kernel[0];
      const Index n = shapes[size_t(w)].kernel[1];
      lc.compressed = compression_ratio(m, n, it->second).num;
    }
    rep.total_dense += lc.dense;
    rep.total_stored += lc.compressed ? *lc.compressed : lc.dense;
    rep.layers.push_back(std::move(lc));
  }
  rep.ratio = double(rep.total_dense) / double(rep.total_stored);
  return rep;
}

// The "mini" deployment: paper-scale topology with fc6/fc7 width 2048 and
// fc6 factorized at k=10, reported against the default model's dense total.
inline SizeReport mini_model_report() {
  const NetworkSpec full = build_cnn(ArchPreset::kFull, 2383, 2);
  const NetworkSpec mini = build_cnn(ArchPreset::kFull, 2383, 2, 2048);
  const int fc6 = mini.weighted_index_of("fc6");
  SizeReport rep = size_report(mini, {{fc6, Index(10)}});
  rep.total_dense = size_report(full).total_dense;
  rep.ratio = double(rep.total_dense) / double(rep.total_stored);
  return rep;
}

}  // namespace fontrec
