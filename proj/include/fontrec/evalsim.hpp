#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fontrec/dataset.hpp"
#include "fontrec/network.hpp"
#include "fontrec/training.hpp"

namespace fontrec {

// Multi-scale multi-view test protocol: three random squeeze ratios from
// [1.5, 3.5], five random 105x105 crops each, fifteen EVAL passes per image.
inline constexpr int kViewRatios = 3;
inline constexpr int kViewPatchesPerRatio = 5;
inline constexpr int kViewCount = kViewRatios * kViewPatchesPerRatio;
inline constexpr double kViewSqueezeMin = 1.5;
inline constexpr double kViewSqueezeMax = 3.5;

struct Prediction {
  std::vector<double> class_probs;  // sums to 1
  int n_views = 0;

  // Ranked class ids; probability ties broken toward the lower id.
  std::vector<int> top_k(int k) const {
    std::vector<int> ids(class_probs.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
      return class_probs[size_t(a)] > class_probs[size_t(b)];
    });
    ids.resize(std::min(size_t(k), ids.size()));
    return ids;
  }
};

namespace detail {

inline std::vector<Patch> multiview_patches(const GrayImage& img, Rng& rng,
                                            int n_ratios, int n_patches) {
  std::vector<Patch> views;
  views.reserve(size_t(n_ratios * n_patches));
  for (int t = 0; t < n_ratios; ++t) {
    const double ratio = rng.uniform(kViewSqueezeMin, kViewSqueezeMax);
    const GrayImage sq = squeeze_to_ratio(img, ratio);
    for (int p = 0; p < n_patches; ++p)
      views.push_back(sample_patch(sq, rng, -1, ratio));
  }
  return views;
}

}  // namespace detail

// Mean over views of a row extractor applied to one batched EVAL pass.
template <class S>
std::vector<double> multiview_mean_rows(const Model<S>& model,
                                        const GrayImage& img, Rng& rng,
                                        int layer_index, int n_ratios = kViewRatios,
                                        int n_patches = kViewPatchesPerRatio) {
  const auto views = detail::multiview_patches(img, rng, n_ratios, n_patches);
  const Tensor<S> batch = batch_tensor<S>(views);
  const auto acts = forward(model, batch, RunMode::kEval);
  const Tensor<S>& rows = acts.out[size_t(layer_index)];
  std::vector<double> mean(size_t(rows.extent(1)), 0.0);
  for (Index i = 0; i < rows.extent(0); ++i)
    for (Index j = 0; j < rows.extent(1); ++j)
      mean[size_t(j)] += double(rows(i, j));
  for (double& v : mean) v /= double(rows.extent(0));
  return mean;
}

template <class S>
Prediction predict_multiview(const Model<S>& model, const GrayImage& img,
                             Rng& rng) {
  Prediction p;
  p.class_probs = multiview_mean_rows(model, img, rng,
                                      int(model.spec.layers.size()) - 1);
  p.n_views = kViewCount;
  return p;
}

// Single-view baseline: one random ratio, one random crop.
template <class S>
Prediction predict_single(const Model<S>& model, const GrayImage& img, Rng& rng) {
  Prediction p;
  p.class_probs =
      multiview_mean_rows(model, img, rng, int(model.spec.layers.size()) - 1, 1, 1);
  p.n_views = 1;
  return p;
}

// Multiview mean of the pre-softmax logit rows.
template <class S>
std::vector<double> multiview_logits(const Model<S>& model, const GrayImage& img,
                                     Rng& rng) {
  return multiview_mean_rows(model, img, rng, logits_layer_index(model.spec));
}

// Multiview mean of the penultimate-fc activations (post-relu, pre-dropout).
template <class S>
std::vector<double> extract_features(const Model<S>& model, const GrayImage& img,
                                     Rng& rng) {
  return multiview_mean_rows(model, img, rng, feature_layer_index(model.spec));
}

// Fraction of samples whose true label is missing from the top-k list.
inline double topk_error(const std::vector<Prediction>& predictions,
                         const std::vector<int>& labels, int k) {
  if (predictions.size() != labels.size())
    throw DimensionError("topk_error size mismatch");
  if (predictions.empty()) return 0.0;
  int wrong = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    const auto top = predictions[i].top_k(k);
    wrong += std::find(top.begin(), top.end(), labels[i]) == top.end();
  }
  return double(wrong) / double(predictions.size());
}

struct SimilarityIndex {
  std::vector<int> class_ids;
  std::vector<std::vector<double>> representative;  // one mean vector per class
};

// Per-class mean of multiview features over up to n_per_class samples.
template <class S>
SimilarityIndex build_similarity(const Model<S>& model, const ImageSet& set,
                                 int n_per_class, std::uint64_t seed) {
  if (n_per_class < 1) throw DataError("build_similarity: n_per_class >= 1");
  std::vector<std::vector<double>> sums;
  std::vector<int> counts;
  std::vector<int> ids;
  auto slot_of = [&](int c) {
    for (size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == c) return int(i);
    ids.push_back(c);
    sums.emplace_back();
    counts.push_back(0);
    return int(ids.size()) - 1;
  };
  Rng root(seed);
  for (int i = 0; i < set.size(); ++i) {
    const int c = set.label(i);
    if (c < 0) continue;
    const int slot = slot_of(c);
    if (counts[size_t(slot)] >= n_per_class) continue;
    Rng rng = root.fork(0x66656174, std::uint64_t(i));
    const auto feat = extract_features(model, set.image(i), rng);
    if (sums[size_t(slot)].empty()) sums[size_t(slot)].assign(feat.size(), 0.0);
    for (size_t j = 0; j < feat.size(); ++j) sums[size_t(slot)][j] += feat[j];
    ++counts[size_t(slot)];
  }
  SimilarityIndex index;
  for (size_t s = 0; s < ids.size(); ++s) {
    if (counts[s] == 0) continue;
    index.class_ids.push_back(ids[s]);
    auto rep = sums[s];
    for (double& v : rep) v /= counts[s];
    index.representative.push_back(std::move(rep));
  }
  return index;
}

inline double representative_distance(const SimilarityIndex& index, int a, int b) {
  auto find = [&](int c) -> const std::vector<double>& {
    for (size_t i = 0; i < index.class_ids.size(); ++i)
      if (index.class_ids[i] == c) return index.representative[i];
    throw DataError("class not in similarity index: " + std::to_string(c));
  };
  const auto& va = find(a);
  const auto& vb = find(b);
  double d2 = 0.0;
  for (size_t i = 0; i < va.size(); ++i) {
    const double d = va[i] - vb[i];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

struct SimilarityHit {
  int class_id;
  double distance;
};

// Other classes by ascending Euclidean distance; the query is excluded.
inline std::vector<SimilarityHit> most_similar(const SimilarityIndex& index,
                                               int query_class, int top_n) {
  std::vector<SimilarityHit> hits;
  for (int c : index.class_ids) {
    if (c == query_class) continue;
    hits.push_back({c, representative_distance(index, query_class, c)});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.class_id < b.class_id;
  });
  if (top_n >= 0 && int(hits.size()) > top_n) hits.resize(size_t(top_n));
  return hits;
}

}  // namespace fontrec
