#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fontrec/kernels.hpp"
#include "fontrec/rng.hpp"
#include "fontrec/tensor.hpp"

namespace fontrec {

enum class LayerKind : int {
  kConv = 0,
  kPool = 1,
  kRelu = 2,
  kFc = 3,
  kDropout = 4,
  kSoftmax = 5,
  kUpsample = 6,  // nearest-neighbor, decoder side of the autoencoder
};

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int out_channels = 0, kernel = 0, stride = 1, pad = 0;  // conv
  int window = 0, pool_stride = 0;                        // pool
  int width = 0;                                          // fc
  double drop_p = 0.0;                                    // dropout
  int up_h = 0, up_w = 0;                                 // upsample target

  static LayerSpec conv(int out_ch, int kernel, int stride = 1, int pad = 0) {
    LayerSpec l;
    l.kind = LayerKind::kConv;
    l.out_channels = out_ch;
    l.kernel = kernel;
    l.stride = stride;
    l.pad = pad;
    return l;
  }
  static LayerSpec pool(int window, int stride) {
    LayerSpec l;
    l.kind = LayerKind::kPool;
    l.window = window;
    l.pool_stride = stride;
    return l;
  }
  static LayerSpec relu() { return LayerSpec{}; }
  static LayerSpec fc(int width) {
    LayerSpec l;
    l.kind = LayerKind::kFc;
    l.width = width;
    return l;
  }
  static LayerSpec dropout(double p) {
    LayerSpec l;
    l.kind = LayerKind::kDropout;
    l.drop_p = p;
    return l;
  }
  static LayerSpec softmax() {
    LayerSpec l;
    l.kind = LayerKind::kSoftmax;
    return l;
  }
  static LayerSpec upsample(int h, int w) {
    LayerSpec l;
    l.kind = LayerKind::kUpsample;
    l.up_h = h;
    l.up_w = w;
    return l;
  }

  bool weighted() const {
    return kind == LayerKind::kConv || kind == LayerKind::kFc;
  }
};

struct Shape3 {
  int c = 0, h = 0, w = 0;
  Index flat() const { return Index(c) * h * w; }
  bool operator==(const Shape3&) const = default;
};

struct NetworkSpec {
  std::vector<LayerSpec> layers;
  int n_weighted = 0;
  int k_split = 2;     // leading weighted layers forming the shared sub-network
  int n_classes = 0;
  Shape3 input{1, 105, 105};

  std::vector<int> weighted_layer_indices() const {
    std::vector<int> idx;
    for (int i = 0; i < int(layers.size()); ++i)
      if (layers[i].weighted()) idx.push_back(i);
    return idx;
  }

  // conv1..convC then fcC+1..fcN, by weighted position.
  std::string weighted_name(int widx) const {
    const auto idx = weighted_layer_indices();
    if (widx < 0 || widx >= int(idx.size())) return "w" + std::to_string(widx);
    const bool is_conv = layers[idx[size_t(widx)]].kind == LayerKind::kConv;
    return (is_conv ? "conv" : "fc") + std::to_string(widx + 1);
  }

  int weighted_index_of(const std::string& name) const {
    for (int w = 0; w < n_weighted; ++w)
      if (weighted_name(w) == name) return w;
    throw DataError("no weighted layer named '" + name + "'");
  }

  // Output shape of every layer; throws DimensionError on inconsistency.
  std::vector<Shape3> propagate() const;

  // Per weighted layer: kernel tensor shape and bias length.
  struct WeightShape {
    std::vector<Index> kernel;
    Index bias;
  };
  std::vector<WeightShape> weight_shapes() const;

  void validate() const;
};

inline std::vector<Shape3> NetworkSpec::propagate() const {
  std::vector<Shape3> shapes;
  shapes.reserve(layers.size());
  Shape3 cur = input;
  bool flattened = false;
  for (const auto& l : layers) {
    switch (l.kind) {
      case LayerKind::kConv: {
        if (flattened) throw DimensionError("conv after flatten");
        const Conv2dGeom g = conv2d_geometry(
            {1, cur.c, cur.h, cur.w},
            {l.out_channels, cur.c, l.kernel, l.kernel}, l.stride, l.pad);
        cur = {l.out_channels, int(g.out_h), int(g.out_w)};
        break;
      }
      case LayerKind::kPool: {
        if (flattened) throw DimensionError("pool after flatten");
        const int oh = (cur.h - l.window) / l.pool_stride + 1;
        const int ow = (cur.w - l.window) / l.pool_stride + 1;
        if (cur.h < l.window || cur.w < l.window || oh <= 0 || ow <= 0)
          throw DimensionError("pool output extent is non-positive");
        cur = {cur.c, oh, ow};
        break;
      }
      case LayerKind::kRelu:
      case LayerKind::kDropout:
      case LayerKind::kSoftmax:
        break;
      case LayerKind::kFc:
        cur = {l.width, 1, 1};
        flattened = true;
        break;
      case LayerKind::kUpsample:
        if (flattened) throw DimensionError("upsample after flatten");
        if (l.up_h <= 0 || l.up_w <= 0)
          throw DimensionError("upsample target must be positive");
        cur = {cur.c, l.up_h, l.up_w};
        break;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

inline std::vector<NetworkSpec::WeightShape> NetworkSpec::weight_shapes() const {
  std::vector<WeightShape> out;
  Shape3 cur = input;
  const auto shapes = propagate();
  for (size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.kind == LayerKind::kConv) {
      out.push_back({{l.out_channels, cur.c, l.kernel, l.kernel},
                     Index(l.out_channels)});
    } else if (l.kind == LayerKind::kFc) {
      out.push_back({{cur.flat(), Index(l.width)}, Index(l.width)});
    }
    cur = shapes[i];
  }
  return out;
}

inline void NetworkSpec::validate() const {
  int count = 0;
  for (const auto& l : layers)
    if (l.weighted()) ++count;
  if (count != n_weighted)
    throw DimensionError("n_weighted does not match layer list");
  if (k_split < 1 || k_split >= n_weighted)
    throw DimensionError("k_split must satisfy 1 <= K < N");
  propagate();  // shape-check every transition
}

enum class ArchPreset { kFull, kDesk };

// DESK: the trainable desk-scale network. FULL: the paper-scale topology,
// used for size accounting (fc6 input 36864, fc6/fc7 width 4096 by default).
NetworkSpec build_cnn(ArchPreset preset, int n_classes, int k_split,
                      int fc_width_override = 0);

// Encoder = the first k_split conv stages of `spec` (conv + relu + pool
// groups); decoder mirrors them with nearest-neighbor upsample + conv.
NetworkSpec build_scae(const NetworkSpec& spec, int k_split);

inline NetworkSpec build_cnn(ArchPreset preset, int n_classes, int k_split,
                             int fc_width_override) {
  if (n_classes < 2) throw DimensionError("build_cnn: need >= 2 classes");
  NetworkSpec spec;
  spec.n_classes = n_classes;
  spec.k_split = k_split;
  auto& L = spec.layers;
  if (preset == ArchPreset::kDesk) {
    L.push_back(LayerSpec::conv(16, 5, 2, 2));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::pool(2, 2));
    L.push_back(LayerSpec::conv(32, 3, 1, 1));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::pool(2, 2));
    L.push_back(LayerSpec::conv(32, 3, 1, 1));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::fc(256));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::dropout(0.5));
    L.push_back(LayerSpec::fc(256));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::dropout(0.5));
    L.push_back(LayerSpec::fc(n_classes));
    L.push_back(LayerSpec::softmax());
  } else {
    const int fc_width = fc_width_override > 0 ? fc_width_override : 4096;
    L.push_back(LayerSpec::conv(21, 5, 1, 2));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::pool(2, 2));
    L.push_back(LayerSpec::conv(24, 3, 1, 0));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::pool(2, 2));
    L.push_back(LayerSpec::conv(25, 1, 1, 0));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::conv(27, 1, 1, 0));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::conv(256, 1, 1, 0));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::pool(2, 2));
    L.push_back(LayerSpec::fc(fc_width));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::dropout(0.5));
    L.push_back(LayerSpec::fc(fc_width));
    L.push_back(LayerSpec::relu());
    L.push_back(LayerSpec::dropout(0.5));
    L.push_back(LayerSpec::fc(n_classes));
    L.push_back(LayerSpec::softmax());
  }
  for (const auto& l : L)
    if (l.weighted()) ++spec.n_weighted;
  spec.validate();
  return spec;
}

// Layer index one past the k-th conv stage (its trailing relu/pool included).
inline int cu_boundary(const NetworkSpec& spec, int k_split) {
  int seen = 0, boundary = 0;
  for (int i = 0; i < int(spec.layers.size()); ++i) {
    if (spec.layers[i].weighted()) {
      if (seen == k_split) break;
      ++seen;
    }
    if (seen <= k_split) boundary = i + 1;
  }
  return boundary;
}

inline NetworkSpec build_scae(const NetworkSpec& spec, int k_split) {
  if (k_split < 1 || k_split >= spec.n_weighted)
    throw DimensionError("build_scae: 1 <= K < N required");
  const auto widx = spec.weighted_layer_indices();
  for (int w = 0; w < k_split; ++w)
    if (spec.layers[widx[size_t(w)]].kind != LayerKind::kConv)
      throw DimensionError("build_scae: the first K weighted layers must be conv");

  NetworkSpec scae;
  scae.input = spec.input;
  scae.n_classes = 0;
  scae.k_split = k_split;

  const int boundary = cu_boundary(spec, k_split);
  const auto shapes = spec.propagate();
  // Input spatial size of each encoder conv stage, for the decoder mirrors.
  std::vector<Shape3> stage_inputs;
  {
    Shape3 cur = spec.input;
    for (int i = 0; i < boundary; ++i) {
      if (spec.layers[i].kind == LayerKind::kConv) stage_inputs.push_back(cur);
      cur = shapes[size_t(i)];
    }
  }
  for (int i = 0; i < boundary; ++i) scae.layers.push_back(spec.layers[i]);
  for (int s = k_split - 1; s >= 0; --s) {
    const Shape3 in = stage_inputs[size_t(s)];
    const LayerSpec enc = spec.layers[size_t(spec.weighted_layer_indices()[size_t(s)])];
    scae.layers.push_back(LayerSpec::upsample(in.h, in.w));
    scae.layers.push_back(
        LayerSpec::conv(in.c, enc.kernel, 1, enc.kernel / 2));
    if (s > 0) scae.layers.push_back(LayerSpec::relu());
  }
  for (const auto& l : scae.layers)
    if (l.weighted()) ++scae.n_weighted;
  const auto out_shapes = scae.propagate();
  if (!(out_shapes.back() == scae.input))
    throw DimensionError("scae decoder does not restore the input shape");
  return scae;
}

template <class S>
struct LayerWeights {
  Tensor<S> kernel;  // conv: F x C x kh x kw; fc: m x n
  Tensor<S> bias;    // rank-1
};

template <class S>
struct FactorizedStorage {
  Tensor<S> u;        // m x k
  std::vector<S> s;   // k
  Tensor<S> v;        // n x k
};

template <class S>
struct Model {
  NetworkSpec spec;
  std::vector<LayerWeights<S>> weights;                      // per weighted layer
  std::vector<bool> frozen;                                  // per weighted layer
  std::vector<std::optional<FactorizedStorage<S>>> factored; // checkpoint form

  LayerWeights<S>& weight(int widx) { return weights[size_t(widx)]; }
  const LayerWeights<S>& weight(int widx) const { return weights[size_t(widx)]; }
};

// Zero-mean Gaussian, std sqrt(2 / fan_in); biases zero.
template <class S>
Model<S> init_model(const NetworkSpec& spec, Rng& rng) {
  Model<S> m;
  m.spec = spec;
  const auto shapes = spec.weight_shapes();
  for (const auto& ws : shapes) {
    LayerWeights<S> lw{Tensor<S>(ws.kernel), Tensor<S>({ws.bias})};
    Index fan_in = 1;
    for (size_t d = 1; d < ws.kernel.size(); ++d) fan_in *= ws.kernel[d];
    if (ws.kernel.size() == 2) fan_in = ws.kernel[0];  // fc: rows are inputs
    const double std = std::sqrt(2.0 / double(fan_in));
    for (Index i = 0; i < lw.kernel.numel(); ++i)
      lw.kernel[i] = S(rng.normal(0.0, std));
    m.weights.push_back(std::move(lw));
  }
  m.frozen.assign(m.weights.size(), false);
  m.factored.assign(m.weights.size(), std::nullopt);
  return m;
}

enum class RunMode { kTrain, kEval };

template <class S>
struct Activations {
  std::vector<Tensor<S>> out;                  // per layer
  std::vector<std::vector<Index>> pool_argmax; // per layer, pools only
  std::vector<Tensor<S>> dropout_mask;         // per layer, train-mode dropout only
};

template <class S>
Tensor<S> upsample_nearest(const Tensor<S>& in, int out_h, int out_w) {
  if (in.rank() != 4) throw DimensionError("upsample expects rank-4 input");
  const Index b = in.extent(0), c = in.extent(1), h = in.extent(2), w = in.extent(3);
  Tensor<S> out({b, c, out_h, out_w});
  for (Index bi = 0; bi < b; ++bi)
    for (Index ci = 0; ci < c; ++ci)
      for (Index y = 0; y < out_h; ++y) {
        const Index sy = std::min(h - 1, Index(y * h / out_h));
        for (Index x = 0; x < out_w; ++x) {
          const Index sx = std::min(w - 1, Index(x * w / out_w));
          out(bi, ci, y, x) = in(bi, ci, sy, sx);
        }
      }
  return out;
}

template <class S>
Tensor<S> upsample_nearest_backward(const Tensor<S>& grad_out, Index in_h,
                                    Index in_w) {
  const Index b = grad_out.extent(0), c = grad_out.extent(1);
  const Index oh = grad_out.extent(2), ow = grad_out.extent(3);
  Tensor<S> grad_in({b, c, in_h, in_w});
  for (Index bi = 0; bi < b; ++bi)
    for (Index ci = 0; ci < c; ++ci)
      for (Index y = 0; y < oh; ++y) {
        const Index sy = std::min(in_h - 1, Index(y * in_h / oh));
        for (Index x = 0; x < ow; ++x) {
          const Index sx = std::min(in_w - 1, Index(x * in_w / ow));
          grad_in(bi, ci, sy, sx) += grad_out(bi, ci, y, x);
        }
      }
  return grad_in;
}

// TRAIN applies inverted dropout (kept units scaled by 1/(1-p)); EVAL applies
// none and no rescaling.
template <class S>
Activations<S> forward(const Model<S>& model, const Tensor<S>& batch,
                       RunMode mode, Rng* rng = nullptr) {
  if (batch.rank() != 4) throw DimensionError("forward expects rank-4 batches");
  const Index b = batch.extent(0);
  Activations<S> acts;
  acts.out.reserve(model.spec.layers.size());
  acts.pool_argmax.resize(model.spec.layers.size());
  acts.dropout_mask.resize(model.spec.layers.size());
  Tensor<S> cur = batch;
  int widx = 0;
  for (size_t li = 0; li < model.spec.layers.size(); ++li) {
    const LayerSpec& l = model.spec.layers[li];
    switch (l.kind) {
      case LayerKind::kConv: {
        const auto& w = model.weights[size_t(widx++)];
        cur = conv2d_forward(cur, w.kernel, w.bias, l.stride, l.pad);
        break;
      }
      case LayerKind::kPool: {
        auto r = maxpool2d(cur, l.window, l.pool_stride);
        cur = std::move(r.output);
        acts.pool_argmax[li] = std::move(r.argmax);
        break;
      }
      case LayerKind::kRelu:
        cur = relu(cur);
        break;
      case LayerKind::kFc: {
        const auto& w = model.weights[size_t(widx++)];
        if (cur.rank() != 2) cur = cur.reshaped({b, cur.numel() / b});
        cur = fc_forward(cur, w.kernel, w.bias);
        break;
      }
      case LayerKind::kDropout: {
        if (mode == RunMode::kTrain && l.drop_p > 0.0) {
          if (!rng) throw DimensionError("train-mode dropout needs an rng");
          Tensor<S> mask(cur.shape());
          const S scale = S(1.0 / (1.0 - l.drop_p));
          for (Index i = 0; i < mask.numel(); ++i)
            mask[i] = rng->uniform() < l.drop_p ? S(0) : scale;
          for (Index i = 0; i < cur.numel(); ++i) cur[i] *= mask[i];
          acts.dropout_mask[li] = std::move(mask);
        }
        break;
      }
      case LayerKind::kSoftmax:
        if (cur.rank() != 2) cur = cur.reshaped({b, cur.numel() / b});
        cur = softmax_rows(cur);
        break;
      case LayerKind::kUpsample:
        cur = upsample_nearest(cur, l.up_h, l.up_w);
        break;
    }
    acts.out.push_back(cur);
  }
  return acts;
}

template <class S>
struct Gradients {
  std::vector<LayerWeights<S>> g;  // aligned with model.weights
};

// Backpropagates `grad_top` (gradient w.r.t. the output of layer `top_layer`)
// down to the weights. Descends only as far as needed: gradient flow stops
// below the lowest non-frozen weighted layer.
template <class S>
Gradients<S> backward(const Model<S>& model, const Tensor<S>& batch,
                      const Activations<S>& acts, Tensor<S> grad_top,
                      int top_layer) {
  Gradients<S> grads;
  grads.g.resize(model.weights.size());
  const auto widx_list = model.spec.weighted_layer_indices();
  int lowest_needed = 0;
  for (int w = int(model.weights.size()) - 1; w >= 0; --w)
    if (!model.frozen[size_t(w)]) lowest_needed = widx_list[size_t(w)];
  Tensor<S> grad = std::move(grad_top);
  int widx = 0;
  for (int i = 0; i <= top_layer; ++i)
    if (model.spec.layers[size_t(i)].weighted()) ++widx;
  for (int li = top_layer; li >= 0; --li) {
    const LayerSpec& l = model.spec.layers[size_t(li)];
    const Tensor<S>& below =
        li == 0 ? batch : acts.out[size_t(li - 1)];
    switch (l.kind) {
      case LayerKind::kConv: {
        --widx;
        const auto& w = model.weights[size_t(widx)];
        auto g = conv2d_backward(grad, below, w.kernel, l.stride, l.pad);
        grads.g[size_t(widx)] = {std::move(g.kernel), std::move(g.bias)};
        grad = std::move(g.input);
        break;
      }
      case LayerKind::kPool:
        grad = maxpool2d_backward(grad, acts.pool_argmax[size_t(li)],
                                  below.shape());
        break;
      case LayerKind::kRelu:
        grad = relu_backward(grad, below);
        break;
      case LayerKind::kFc: {
        --widx;
        const auto& w = model.weights[size_t(widx)];
        const Index b = below.extent(0);
        Tensor<S> below2 = below.rank() == 2
                               ? below
                               : below.reshaped({b, below.numel() / b});
        auto g = fc_backward(grad, below2, w.kernel);
        grads.g[size_t(widx)] = {std::move(g.weight), std::move(g.bias)};
        grad = g.input.reshaped(below.shape());
        break;
      }
      case LayerKind::kDropout:
        if (!acts.dropout_mask[size_t(li)].empty()) {
          const auto& mask = acts.dropout_mask[size_t(li)];
          Tensor<S> masked(grad.shape());
          for (Index i = 0; i < grad.numel(); ++i)
            masked[i] = grad[i] * mask[i];
          grad = std::move(masked);
        }
        break;
      case LayerKind::kSoftmax:
        throw DimensionError("backward through softmax is not supported; "
                             "start from the logits");
      case LayerKind::kUpsample:
        grad = upsample_nearest_backward(grad, below.extent(2), below.extent(3));
        break;
    }
    if (li <= lowest_needed) break;
  }
  // Frozen layers never receive updates; drop any grads computed on the way.
  for (size_t w = 0; w < grads.g.size(); ++w)
    if (model.frozen[w]) grads.g[w] = {};
  return grads;
}

// Index of the layer producing classifier logits (the fc feeding softmax).
inline int logits_layer_index(const NetworkSpec& spec) {
  for (int i = int(spec.layers.size()) - 1; i >= 0; --i)
    if (spec.layers[size_t(i)].kind == LayerKind::kFc) return i;
  throw DimensionError("spec has no fc layer");
}

// Index of the relu following the penultimate fc (the feature tap).
inline int feature_layer_index(const NetworkSpec& spec) {
  std::vector<int> fcs;
  for (int i = 0; i < int(spec.layers.size()); ++i)
    if (spec.layers[size_t(i)].kind == LayerKind::kFc) fcs.push_back(i);
  if (fcs.size() < 2) throw DimensionError("spec has no penultimate fc layer");
  const int fc = fcs[fcs.size() - 2];
  for (int i = fc + 1; i < int(spec.layers.size()); ++i) {
    if (spec.layers[size_t(i)].kind == LayerKind::kRelu) return i;
    if (spec.layers[size_t(i)].weighted()) break;
  }
  return fc;
}

// Copies the encoder weights of `scae` into the first K weighted layers of
// `model` and freezes them.
template <class S>
void import_cu(Model<S>& model, const Model<S>& scae) {
  const int k = model.spec.k_split;
  if (scae.spec.k_split != k)
    throw DimensionError("import_cu: encoder K differs from model K");
  if (int(scae.weights.size()) < k)
    throw DimensionError("import_cu: encoder has fewer than K weighted layers");
  for (int w = 0; w < k; ++w) {
    const auto& src = scae.weights[size_t(w)];
    auto& dst = model.weights[size_t(w)];
    if (!src.kernel.same_shape(dst.kernel))
      throw DimensionError("import_cu: weight shape mismatch at layer " +
                           std::to_string(w));
    dst = src;
    model.frozen[size_t(w)] = true;
  }
}

// (shared sub-network, classifier sub-network); join() reassembles.
template <class S>
std::pair<Model<S>, Model<S>> split(const Model<S>& model) {
  const int boundary = cu_boundary(model.spec, model.spec.k_split);
  Model<S> cu, cs;
  cu.spec.input = model.spec.input;
  cu.spec.k_split = model.spec.k_split;
  cs.spec.k_split = model.spec.k_split;
  cs.spec.n_classes = model.spec.n_classes;
  const auto shapes = model.spec.propagate();
  cs.spec.input = boundary > 0 ? shapes[size_t(boundary - 1)] : model.spec.input;
  for (int i = 0; i < int(model.spec.layers.size()); ++i)
    (i < boundary ? cu.spec.layers : cs.spec.layers)
        .push_back(model.spec.layers[size_t(i)]);
  for (const auto& l : cu.spec.layers)
    if (l.weighted()) ++cu.spec.n_weighted;
  for (const auto& l : cs.spec.layers)
    if (l.weighted()) ++cs.spec.n_weighted;
  for (int w = 0; w < int(model.weights.size()); ++w) {
    Model<S>& dst = w < model.spec.k_split ? cu : cs;
    dst.weights.push_back(model.weights[size_t(w)]);
    dst.frozen.push_back(model.frozen[size_t(w)]);
    dst.factored.push_back(model.factored[size_t(w)]);
  }
  return {std::move(cu), std::move(cs)};
}

template <class S>
Model<S> join(const Model<S>& cu, const Model<S>& cs) {
  Model<S> m;
  m.spec.input = cu.spec.input;
  m.spec.k_split = cu.spec.k_split;
  m.spec.n_classes = cs.spec.n_classes;
  for (const auto& l : cu.spec.layers) m.spec.layers.push_back(l);
  for (const auto& l : cs.spec.layers) m.spec.layers.push_back(l);
  for (const auto& l : m.spec.layers)
    if (l.weighted()) ++m.spec.n_weighted;
  for (const Model<S>* part : {&cu, &cs}) {
    for (size_t w = 0; w < part->weights.size(); ++w) {
      m.weights.push_back(part->weights[w]);
      m.frozen.push_back(part->frozen[w]);
      m.factored.push_back(part->factored[w]);
    }
  }
  return m;
}

}  // namespace fontrec
