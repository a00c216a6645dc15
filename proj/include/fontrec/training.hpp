#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fontrec/augment.hpp"
#include "fontrec/dataset.hpp"
#include "fontrec/network.hpp"
#include "fontrec/svd.hpp"

namespace fontrec {

struct TrainConfig {
  double lr0 = 0.01;
  double momentum = 0.9;
  double weight_decay = 0.0005;
  int batch_size = 128;  // desk runs use 32
  double lr_drop_factor = 10.0;
  int patience = 3;  // epochs without validation improvement before an lr drop
  int max_epochs = 30;
  int max_lr_drops = 3;
  std::uint64_t seed = 0;
  std::optional<std::pair<int, Index>> rank_constraint;  // (weighted layer, k)
  double squeeze_ratio = kTrainSqueezeRatio;
  AugmentConfig augment = AugmentConfig::full();
  double fr_real_fraction = 0.5;  // FR recipe mixes domains 50/50, alternating
};

enum class TrainPhase { kScae, kSupervised, kRankFt };

inline std::string phase_name(TrainPhase p) {
  switch (p) {
    case TrainPhase::kScae: return "SCAE";
    case TrainPhase::kSupervised: return "SUPERVISED";
    case TrainPhase::kRankFt: return "RANK_FT";
  }
  return "?";
}

struct EpochRecord {
  int epoch;
  TrainPhase phase;
  double lr;
  double train_loss;
  double val_metric;
  double seconds;
};

struct TrainLog {
  std::vector<EpochRecord> records;

  void write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for write: " + path.string());
    out << "epoch,phase,lr,train_loss,val_metric,seconds\n";
    for (const auto& r : records) {
      char line[192];
      std::snprintf(line, sizeof(line), "%d,%s,%.10g,%.10g,%.10g,%.3f\n",
                    r.epoch, phase_name(r.phase).c_str(), r.lr, r.train_loss,
                    r.val_metric, r.seconds);
      out << line;
    }
  }
};

template <class S>
struct SgdState {
  std::vector<LayerWeights<S>> velocity;  // aligned with model.weights
  double lr = 0.01;

  static SgdState init(const Model<S>& model, double lr0) {
    SgdState st;
    st.lr = lr0;
    for (const auto& w : model.weights)
      st.velocity.push_back(
          {Tensor<S>(w.kernel.shape()), Tensor<S>(w.bias.shape())});
    return st;
  }
};

// v <- momentum*v - lr*(grad + weight_decay*w); w <- w + v.
// Weight decay is not applied to biases; frozen layers are untouched.
template <class S>
void sgd_step(Model<S>& model, const Gradients<S>& grads, SgdState<S>& state,
              const TrainConfig& config) {
  const S mu = S(config.momentum);
  const S lr = S(state.lr);
  const S wd = S(config.weight_decay);
  for (size_t w = 0; w < model.weights.size(); ++w) {
    if (model.frozen[w]) continue;
    const auto& g = grads.g[w];
    if (g.kernel.empty()) continue;
    auto& wt = model.weights[w];
    auto& vel = state.velocity[w];
    for (Index i = 0; i < wt.kernel.numel(); ++i) {
      vel.kernel[i] = mu * vel.kernel[i] - lr * (g.kernel[i] + wd * wt.kernel[i]);
      wt.kernel[i] += vel.kernel[i];
    }
    for (Index i = 0; i < wt.bias.numel(); ++i) {
      vel.bias[i] = mu * vel.bias[i] - lr * g.bias[i];
      wt.bias[i] += vel.bias[i];
    }
  }
}

template <class S>
Tensor<S> batch_tensor(const std::vector<Patch>& patches) {
  if (patches.empty()) throw DimensionError("empty batch");
  const Index b = Index(patches.size());
  Tensor<S> t({b, 1, kPatchSize, kPatchSize});
  for (Index i = 0; i < b; ++i) {
    const auto& px = patches[size_t(i)].image.px;
    S* dst = t.data() + i * kPatchSize * kPatchSize;
    for (size_t p = 0; p < px.size(); ++p) dst[p] = S(px[p]);
  }
  return t;
}

// Render-time spacing is already in the stored images; this applies the
// squeeze normalization, the augmentation pipeline, and the random crop.
inline Patch training_view(const GrayImage& img, const AugmentConfig& aug,
                           double squeeze_ratio, Rng& rng, int source_id = -1) {
  GrayImage sq = squeeze_to_ratio(img, squeeze_ratio);
  if (aug.enabled_steps != 0) sq = augment_pipeline(sq, aug, rng);
  return sample_patch(sq, rng, source_id, squeeze_ratio);
}

inline Patch validation_view(const GrayImage& img, double squeeze_ratio,
                             int source_id = -1) {
  return center_patch(squeeze_to_ratio(img, squeeze_ratio), source_id,
                      squeeze_ratio);
}

namespace detail {

inline std::vector<int> shuffled_indices(int n, Rng& rng) {
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(idx[size_t(i)], idx[size_t(rng.uniform_int(0, i))]);
  return idx;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace detail

// Top-1 error on deterministic single center views.
template <class S>
double validation_top1_error(const Model<S>& model, const ImageSet& val,
                             double squeeze_ratio, int batch_size) {
  const int logits_li = logits_layer_index(model.spec);
  int wrong = 0, total = 0;
  for (int start = 0; start < val.size(); start += batch_size) {
    const int n = std::min(batch_size, val.size() - start);
    std::vector<Patch> patches;
    patches.reserve(size_t(n));
    for (int i = 0; i < n; ++i)
      patches.push_back(validation_view(val.image(start + i), squeeze_ratio));
    const Tensor<S> batch = batch_tensor<S>(patches);
    const auto acts = forward(model, batch, RunMode::kEval);
    const Tensor<S>& logits = acts.out[size_t(logits_li)];
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (Index c = 1; c < logits.extent(1); ++c)
        if (logits(i, c) > logits(i, best)) best = int(c);
      wrong += best != val.label(start + i);
      ++total;
    }
  }
  return total > 0 ? double(wrong) / total : 0.0;
}

enum class ScaeVariant { kN, kS, kF, kR, kFR };

inline std::string scae_variant_name(ScaeVariant v) {
  switch (v) {
    case ScaeVariant::kN: return "N";
    case ScaeVariant::kS: return "S";
    case ScaeVariant::kF: return "F";
    case ScaeVariant::kR: return "R";
    case ScaeVariant::kFR: return "FR";
  }
  return "?";
}

inline ScaeVariant scae_variant_from_name(const std::string& s) {
  if (s == "N") return ScaeVariant::kN;
  if (s == "S") return ScaeVariant::kS;
  if (s == "F") return ScaeVariant::kF;
  if (s == "R") return ScaeVariant::kR;
  if (s == "FR") return ScaeVariant::kFR;
  throw UsageError("unknown SCAE variant '" + s + "' (want N|S|F|R|FR)");
}

// Per-variant training-data recipe over the synthetic / pseudo-real sets.
inline AugmentConfig scae_syn_augment(ScaeVariant v) {
  switch (v) {
    case ScaeVariant::kN: return AugmentConfig::none();
    case ScaeVariant::kS: return AugmentConfig::standard();
    case ScaeVariant::kF:
    case ScaeVariant::kFR: return AugmentConfig::full();
    case ScaeVariant::kR: return AugmentConfig::none();
  }
  return AugmentConfig::none();
}

struct ScaeData {
  const ImageSet* syn = nullptr;
  const ImageSet* real = nullptr;
  const ImageSet* val_syn = nullptr;   // held-out unaugmented synthetic
  const ImageSet* val_real = nullptr;  // held-out pseudo-real
};

template <class S>
struct ScaeResult {
  Model<S> scae;     // full autoencoder
  Model<S> encoder;  // encoder prefix, ready for import_cu
  TrainLog log;
  std::vector<double> val_rel_mse_syn;   // per epoch, empty without val_syn
  std::vector<double> val_rel_mse_real;  // per epoch, empty without val_real
};

// Reconstruction error normalized by the total energy of the inputs.
template <class S>
double scae_relative_mse(const Model<S>& model, const ImageSet& set,
                         double squeeze_ratio, int batch_size) {
  double sse = 0.0, energy = 0.0;
  for (int start = 0; start < set.size(); start += batch_size) {
    const int n = std::min(batch_size, set.size() - start);
    std::vector<Patch> patches;
    for (int i = 0; i < n; ++i)
      patches.push_back(validation_view(set.image(start + i), squeeze_ratio));
    const Tensor<S> batch = batch_tensor<S>(patches);
    const auto acts = forward(model, batch, RunMode::kEval);
    const Tensor<S>& recon = acts.out.back();
    for (Index i = 0; i < batch.numel(); ++i) {
      const double d = double(recon[i]) - double(batch[i]);
      sse += d * d;
      energy += double(batch[i]) * double(batch[i]);
    }
  }
  return energy > 0.0 ? sse / energy : 0.0;
}

template <class S>
Model<S> scae_encoder_fragment(const Model<S>& scae) {
  Model<S> enc;
  const int boundary = cu_boundary(scae.spec, scae.spec.k_split);
  enc.spec.input = scae.spec.input;
  enc.spec.k_split = scae.spec.k_split;
  for (int i = 0; i < boundary; ++i)
    enc.spec.layers.push_back(scae.spec.layers[size_t(i)]);
  for (const auto& l : enc.spec.layers)
    if (l.weighted()) ++enc.spec.n_weighted;
  for (int w = 0; w < enc.spec.n_weighted; ++w) {
    enc.weights.push_back(scae.weights[size_t(w)]);
    enc.frozen.push_back(false);
    enc.factored.push_back(std::nullopt);
  }
  return enc;
}

// Unsupervised reconstruction training at constant learning rate.
template <class S>
ScaeResult<S> train_scae(ScaeVariant variant, const ScaeData& data,
                         const NetworkSpec& cnn_spec, const TrainConfig& config) {
  const bool wants_syn = variant != ScaeVariant::kR;
  const bool wants_real =
      variant == ScaeVariant::kR || variant == ScaeVariant::kFR;
  if (wants_syn && (!data.syn || data.syn->size() == 0))
    throw DataError("SCAE variant " + scae_variant_name(variant) +
                    " needs synthetic data");
  if (wants_real && (!data.real || data.real->size() == 0))
    throw DataError("SCAE variant " + scae_variant_name(variant) +
                    " needs pseudo-real data");

  const NetworkSpec scae_spec = build_scae(cnn_spec, cnn_spec.k_split);
  Rng root(config.seed);
  Rng init_rng = root.fork(0x696e6974);  // init
  Model<S> model = init_model<S>(scae_spec, init_rng);
  SgdState<S> state = SgdState<S>::init(model, config.lr0);
  const AugmentConfig syn_aug = scae_syn_augment(variant);
  const int top = int(scae_spec.layers.size()) - 1;

  ScaeResult<S> result;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng order_rng = root.fork(0x73687566, std::uint64_t(epoch));
    // (domain, index) stream: syn only, real only, or 50/50 alternating.
    std::vector<std::pair<int, int>> stream;
    if (variant == ScaeVariant::kFR) {
      const auto syn_idx = detail::shuffled_indices(data.syn->size(), order_rng);
      const auto real_idx = detail::shuffled_indices(data.real->size(), order_rng);
      const int rounds = std::max(data.syn->size(), data.real->size());
      for (int i = 0; i < rounds; ++i) {
        stream.emplace_back(0, syn_idx[size_t(i % data.syn->size())]);
        stream.emplace_back(1, real_idx[size_t(i % data.real->size())]);
      }
    } else if (variant == ScaeVariant::kR) {
      for (int i : detail::shuffled_indices(data.real->size(), order_rng))
        stream.emplace_back(1, i);
    } else {
      for (int i : detail::shuffled_indices(data.syn->size(), order_rng))
        stream.emplace_back(0, i);
    }

    double loss_sum = 0.0;
    int batches = 0;
    for (size_t start = 0; start < stream.size(); start += size_t(config.batch_size)) {
      const size_t n = std::min(size_t(config.batch_size), stream.size() - start);
      std::vector<Patch> patches;
      patches.reserve(n);
      for (size_t i = 0; i < n; ++i) {
        const auto [dom, idx] = stream[start + i];
        Rng view_rng = root.fork(0x76696577, std::uint64_t(epoch),
                                 std::uint64_t(dom) << 32 | std::uint64_t(idx));
        const ImageSet& set = dom == 0 ? *data.syn : *data.real;
        const AugmentConfig& aug = dom == 0 ? syn_aug : AugmentConfig::none();
        patches.push_back(
            training_view(set.image(idx), aug, config.squeeze_ratio, view_rng));
      }
      const Tensor<S> batch = batch_tensor<S>(patches);
      const auto acts = forward(model, batch, RunMode::kTrain);
      auto [loss, grad] = mse_loss(acts.out.back(), batch);
      loss_sum += double(loss);
      ++batches;
      const auto grads = backward(model, batch, acts, std::move(grad), top);
      sgd_step(model, grads, state, config);
    }

    double val_metric = 0.0;
    int val_terms = 0;
    if (data.val_syn) {
      const double m = scae_relative_mse(model, *data.val_syn,
                                         config.squeeze_ratio, config.batch_size);
      result.val_rel_mse_syn.push_back(m);
      val_metric += m;
      ++val_terms;
    }
    if (data.val_real) {
      const double m = scae_relative_mse(model, *data.val_real,
                                         config.squeeze_ratio, config.batch_size);
      result.val_rel_mse_real.push_back(m);
      val_metric += m;
      ++val_terms;
    }
    result.log.records.push_back({epoch, TrainPhase::kScae, state.lr,
                                  batches ? loss_sum / batches : 0.0,
                                  val_terms ? val_metric / val_terms : 0.0,
                                  detail::elapsed_s(t0)});
  }
  result.scae = std::move(model);
  result.encoder = scae_encoder_fragment(result.scae);
  return result;
}

template <class S>
struct SupervisedResult {
  Model<S> model;  // best-validation snapshot
  TrainLog log;
  double best_val_error = 1.0;
  int iterations = 0;
};

namespace detail {

// Shared epoch loop for the supervised and rank-constrained phases.
template <class S>
SupervisedResult<S> run_supervised_loop(
    Model<S> model, const ImageSet& train, const ImageSet& val,
    const TrainConfig& config, TrainPhase phase,
    const std::function<void(int, Model<S>&)>& post_step) {
  if (train.size() == 0) throw DataError("empty training set");
  for (int i = 0; i < train.size(); ++i)
    if (train.label(i) < 0) throw DataError("supervised training needs labels");

  Rng root(config.seed);
  SgdState<S> state = SgdState<S>::init(model, config.lr0);
  const int logits_li = logits_layer_index(model.spec);

  SupervisedResult<S> result;
  result.best_val_error = 2.0;  // any first validation improves on this
  Model<S> best = model;
  int epochs_since_improvement = 0;
  int drops = 0;
  int iter = 0;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng order_rng = root.fork(0x73687566, std::uint64_t(epoch));
    const auto order = shuffled_indices(train.size(), order_rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (size_t start = 0; start < order.size(); start += size_t(config.batch_size)) {
      const size_t n = std::min(size_t(config.batch_size), order.size() - start);
      std::vector<Patch> patches;
      std::vector<int> labels;
      patches.reserve(n);
      for (size_t i = 0; i < n; ++i) {
        const int idx = order[start + i];
        Rng view_rng =
            root.fork(0x76696577, std::uint64_t(epoch), std::uint64_t(idx));
        patches.push_back(training_view(train.image(idx), config.augment,
                                        config.squeeze_ratio, view_rng));
        labels.push_back(train.label(idx));
      }
      const Tensor<S> batch = batch_tensor<S>(patches);
      Rng drop_rng = root.fork(0x64726f70, std::uint64_t(epoch),
                               std::uint64_t(start));
      const auto acts = forward(model, batch, RunMode::kTrain, &drop_rng);
      auto [loss, grad] =
          softmax_xent(acts.out[size_t(logits_li)], std::span<const int>(labels));
      loss_sum += double(loss);
      ++batches;
      const auto grads = backward(model, batch, acts, std::move(grad), logits_li);
      sgd_step(model, grads, state, config);
      ++iter;
      if (post_step) post_step(iter, model);
    }

    const double val_err = validation_top1_error(model, val, config.squeeze_ratio,
                                                 config.batch_size);
    result.log.records.push_back({epoch, phase, state.lr,
                                  batches ? loss_sum / batches : 0.0, val_err,
                                  elapsed_s(t0)});
    if (val_err < result.best_val_error) {
      result.best_val_error = val_err;
      best = model;
      epochs_since_improvement = 0;
    } else {
      ++epochs_since_improvement;
    }
    if (epochs_since_improvement >= config.patience) {
      if (drops >= config.max_lr_drops) break;
      state.lr /= config.lr_drop_factor;
      ++drops;
      epochs_since_improvement = 0;
    }
  }
  result.model = std::move(best);
  result.iterations = iter;
  return result;
}

}  // namespace detail

// Cross-entropy training of the non-frozen layers on augmented synthetic
// patches; lr is divided by lr_drop_factor on validation plateaus.
template <class S>
SupervisedResult<S> train_supervised(Model<S> model, const ImageSet& train,
                                     const ImageSet& val,
                                     const TrainConfig& config) {
  return detail::run_supervised_loop<S>(std::move(model), train, val, config,
                                        TrainPhase::kSupervised, nullptr);
}

// Supervised fine-tuning with a hard rank constraint: every SGD step is
// followed by a rank-k projection of the target fc weight matrix.
template <class S>
SupervisedResult<S> train_rank_constrained(
    Model<S> model, int layer_widx, Index k, const ImageSet& train,
    const ImageSet& val, const TrainConfig& config,
    const std::function<void(int, const Tensor<S>&)>& after_step = nullptr) {
  if (layer_widx < 0 || layer_widx >= int(model.weights.size()))
    throw DimensionError("rank constraint: bad weighted-layer index");
  const auto widx_list = model.spec.weighted_layer_indices();
  if (model.spec.layers[size_t(widx_list[size_t(layer_widx)])].kind !=
      LayerKind::kFc)
    throw DimensionError("rank constraint targets an fc layer");
  auto project = [layer_widx, k, after_step](int iter, Model<S>& m) {
    Tensor<S>& w = m.weights[size_t(layer_widx)].kernel;
    w = rank_project(w, k);
    if (after_step) after_step(iter, w);
  };
  return detail::run_supervised_loop<S>(std::move(model), train, val, config,
                                        TrainPhase::kRankFt, project);
}

}  // namespace fontrec
