#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fontrec/tensor.hpp"

namespace fontrec {

// Forward/backward layer kernels. Convolution uses the cross-correlation
// convention with zero padding; gradients are hand-derived.

struct Conv2dGeom {
  Index batch, in_ch, in_h, in_w;
  Index out_ch, kh, kw;
  Index stride, pad;
  Index out_h, out_w;
};

inline Conv2dGeom conv2d_geometry(const std::vector<Index>& in_shape,
                                  const std::vector<Index>& k_shape,
                                  Index stride, Index pad) {
  if (in_shape.size() != 4 || k_shape.size() != 4)
    throw DimensionError("conv2d expects rank-4 input and kernel");
  if (stride < 1) throw DimensionError("conv2d stride must be positive");
  if (pad < 0) throw DimensionError("conv2d pad must be non-negative");
  if (in_shape[1] != k_shape[1])
    throw DimensionError("conv2d channel mismatch");
  Conv2dGeom g{};
  g.batch = in_shape[0];
  g.in_ch = in_shape[1];
  g.in_h = in_shape[2];
  g.in_w = in_shape[3];
  g.out_ch = k_shape[0];
  g.kh = k_shape[2];
  g.kw = k_shape[3];
  g.stride = stride;
  g.pad = pad;
  g.out_h = (g.in_h + 2 * pad - g.kh) / stride + 1;
  g.out_w = (g.in_w + 2 * pad - g.kw) / stride + 1;
  if (g.in_h + 2 * pad < g.kh || g.in_w + 2 * pad < g.kw || g.out_h <= 0 ||
      g.out_w <= 0)
    throw DimensionError("conv2d output extent is non-positive");
  return g;
}

namespace detail {

// One image plane set -> (in_ch*kh*kw) x (out_h*out_w) patch matrix.
template <class S>
void im2col(const S* img, const Conv2dGeom& g, S* cols) {
  const Index owh = g.out_h * g.out_w;
  for (Index c = 0; c < g.in_ch; ++c) {
    const S* plane = img + c * g.in_h * g.in_w;
    for (Index ky = 0; ky < g.kh; ++ky) {
      for (Index kx = 0; kx < g.kw; ++kx) {
        S* row = cols + ((c * g.kh + ky) * g.kw + kx) * owh;
        for (Index oy = 0; oy < g.out_h; ++oy) {
          const Index iy = oy * g.stride - g.pad + ky;
          if (iy < 0 || iy >= g.in_h) {
            std::fill(row + oy * g.out_w, row + (oy + 1) * g.out_w, S(0));
            continue;
          }
          const S* src = plane + iy * g.in_w;
          for (Index ox = 0; ox < g.out_w; ++ox) {
            const Index ix = ox * g.stride - g.pad + kx;
            row[oy * g.out_w + ox] =
                (ix >= 0 && ix < g.in_w) ? src[ix] : S(0);
          }
        }
      }
    }
  }
}

// Scatter-add of a patch matrix back into an image (adjoint of im2col).
template <class S>
void col2im_add(const S* cols, const Conv2dGeom& g, S* img) {
  const Index owh = g.out_h * g.out_w;
  for (Index c = 0; c < g.in_ch; ++c) {
    S* plane = img + c * g.in_h * g.in_w;
    for (Index ky = 0; ky < g.kh; ++ky) {
      for (Index kx = 0; kx < g.kw; ++kx) {
        const S* row = cols + ((c * g.kh + ky) * g.kw + kx) * owh;
        for (Index oy = 0; oy < g.out_h; ++oy) {
          const Index iy = oy * g.stride - g.pad + ky;
          if (iy < 0 || iy >= g.in_h) continue;
          S* dst = plane + iy * g.in_w;
          for (Index ox = 0; ox < g.out_w; ++ox) {
            const Index ix = ox * g.stride - g.pad + kx;
            if (ix >= 0 && ix < g.in_w) dst[ix] += row[oy * g.out_w + ox];
          }
        }
      }
    }
  }
}

}  // namespace detail

template <class S>
Tensor<S> conv2d_forward(const Tensor<S>& input, const Tensor<S>& kernel,
                         const Tensor<S>& bias, Index stride, Index pad) {
  const Conv2dGeom g = conv2d_geometry(input.shape(), kernel.shape(), stride, pad);
  if (bias.numel() != g.out_ch) throw DimensionError("conv2d bias length");
  Tensor<S> out({g.batch, g.out_ch, g.out_h, g.out_w});
  const Index cols_rows = g.in_ch * g.kh * g.kw;
  const Index owh = g.out_h * g.out_w;
  std::vector<S> cols(size_t(cols_rows * owh));
  typename Tensor<S>::ConstMap kmat(kernel.data(), g.out_ch, cols_rows);
  for (Index b = 0; b < g.batch; ++b) {
    detail::im2col(input.data() + b * g.in_ch * g.in_h * g.in_w, g, cols.data());
    typename Tensor<S>::ConstMap cmat(cols.data(), cols_rows, owh);
    typename Tensor<S>::Map omat(out.data() + b * g.out_ch * owh, g.out_ch, owh);
    omat.noalias() = kmat * cmat;
    for (Index f = 0; f < g.out_ch; ++f) omat.row(f).array() += bias[f];
  }
  return out;
}

template <class S>
struct Conv2dGrads {
  Tensor<S> input;
  Tensor<S> kernel;
  Tensor<S> bias;
};

template <class S>
Conv2dGrads<S> conv2d_backward(const Tensor<S>& grad_out, const Tensor<S>& input,
                               const Tensor<S>& kernel, Index stride, Index pad) {
  const Conv2dGeom g = conv2d_geometry(input.shape(), kernel.shape(), stride, pad);
  const std::vector<Index> want{g.batch, g.out_ch, g.out_h, g.out_w};
  if (grad_out.shape() != want)
    throw DimensionError("conv2d_backward grad_out shape mismatch");
  Conv2dGrads<S> grads{Tensor<S>(input.shape()), Tensor<S>(kernel.shape()),
                       Tensor<S>({g.out_ch})};
  const Index cols_rows = g.in_ch * g.kh * g.kw;
  const Index owh = g.out_h * g.out_w;
  std::vector<S> cols(size_t(cols_rows * owh));
  std::vector<S> gcols(size_t(cols_rows * owh));
  typename Tensor<S>::ConstMap kmat(kernel.data(), g.out_ch, cols_rows);
  typename Tensor<S>::Map gkmat(grads.kernel.data(), g.out_ch, cols_rows);
  for (Index b = 0; b < g.batch; ++b) {
    const S* go = grad_out.data() + b * g.out_ch * owh;
    typename Tensor<S>::ConstMap gomat(go, g.out_ch, owh);
    detail::im2col(input.data() + b * g.in_ch * g.in_h * g.in_w, g, cols.data());
    typename Tensor<S>::ConstMap cmat(cols.data(), cols_rows, owh);
    gkmat.noalias() += gomat * cmat.transpose();
    typename Tensor<S>::Map gcmat(gcols.data(), cols_rows, owh);
    gcmat.noalias() = kmat.transpose() * gomat;
    detail::col2im_add(gcols.data(), g,
                       grads.input.data() + b * g.in_ch * g.in_h * g.in_w);
    for (Index f = 0; f < g.out_ch; ++f) grads.bias[f] += gomat.row(f).sum();
  }
  return grads;
}

template <class S>
struct MaxPoolResult {
  Tensor<S> output;
  std::vector<Index> argmax;  // flat index into the input, one per output element
};

template <class S>
MaxPoolResult<S> maxpool2d(const Tensor<S>& input, Index window, Index stride) {
  if (input.rank() != 4) throw DimensionError("maxpool2d expects rank-4 input");
  if (window < 1 || stride < 1)
    throw DimensionError("maxpool2d window/stride must be positive");
  const Index batch = input.extent(0), ch = input.extent(1);
  const Index h = input.extent(2), w = input.extent(3);
  const Index oh = (h - window) / stride + 1;
  const Index ow = (w - window) / stride + 1;
  if (h < window || w < window || oh <= 0 || ow <= 0)
    throw DimensionError("maxpool2d output extent is non-positive");
  MaxPoolResult<S> r{Tensor<S>({batch, ch, oh, ow}), {}};
  r.argmax.resize(size_t(batch * ch * oh * ow));
  Index o = 0;
  for (Index b = 0; b < batch; ++b) {
    for (Index c = 0; c < ch; ++c) {
      const S* plane = input.data() + (b * ch + c) * h * w;
      const Index plane_base = (b * ch + c) * h * w;
      for (Index oy = 0; oy < oh; ++oy) {
        for (Index ox = 0; ox < ow; ++ox, ++o) {
          S best = plane[(oy * stride) * w + ox * stride];
          Index best_idx = (oy * stride) * w + ox * stride;
          for (Index ky = 0; ky < window; ++ky) {
            for (Index kx = 0; kx < window; ++kx) {
              const Index idx = (oy * stride + ky) * w + ox * stride + kx;
              if (plane[idx] > best) {  // ties keep smallest flat index
                best = plane[idx];
                best_idx = idx;
              }
            }
          }
          r.output[o] = best;
          r.argmax[size_t(o)] = plane_base + best_idx;
        }
      }
    }
  }
  return r;
}

template <class S>
Tensor<S> maxpool2d_backward(const Tensor<S>& grad_out,
                             const std::vector<Index>& argmax,
                             const std::vector<Index>& input_shape) {
  if (size_t(grad_out.numel()) != argmax.size())
    throw DimensionError("maxpool2d_backward argmax length mismatch");
  Tensor<S> grad_in(input_shape);
  for (Index i = 0; i < grad_out.numel(); ++i)
    grad_in[argmax[size_t(i)]] += grad_out[i];
  return grad_in;
}

template <class S>
Tensor<S> relu(const Tensor<S>& input) {
  Tensor<S> out(input.shape());
  for (Index i = 0; i < input.numel(); ++i)
    out[i] = input[i] > S(0) ? input[i] : S(0);
  return out;
}

template <class S>
Tensor<S> relu_backward(const Tensor<S>& grad_out, const Tensor<S>& input) {
  if (!grad_out.same_shape(input))
    throw DimensionError("relu_backward shape mismatch");
  Tensor<S> grad_in(input.shape());
  for (Index i = 0; i < input.numel(); ++i)
    grad_in[i] = input[i] > S(0) ? grad_out[i] : S(0);
  return grad_in;
}

template <class S>
Tensor<S> fc_forward(const Tensor<S>& input, const Tensor<S>& weight,
                     const Tensor<S>& bias) {
  if (input.rank() != 2 || weight.rank() != 2)
    throw DimensionError("fc expects rank-2 input and weight");
  if (input.extent(1) != weight.extent(0))
    throw DimensionError("fc input width does not match weight rows");
  if (bias.numel() != weight.extent(1)) throw DimensionError("fc bias length");
  Tensor<S> out({input.extent(0), weight.extent(1)});
  out.mat().noalias() = input.mat() * weight.mat();
  for (Index i = 0; i < out.extent(0); ++i)
    for (Index j = 0; j < out.extent(1); ++j) out(i, j) += bias[j];
  return out;
}

template <class S>
struct FcGrads {
  Tensor<S> input;
  Tensor<S> weight;
  Tensor<S> bias;
};

template <class S>
FcGrads<S> fc_backward(const Tensor<S>& grad_out, const Tensor<S>& input,
                       const Tensor<S>& weight) {
  FcGrads<S> g{Tensor<S>(input.shape()), Tensor<S>(weight.shape()),
               Tensor<S>({weight.extent(1)})};
  g.input.mat().noalias() = grad_out.mat() * weight.mat().transpose();
  g.weight.mat().noalias() = input.mat().transpose() * grad_out.mat();
  for (Index j = 0; j < weight.extent(1); ++j)
    g.bias[j] = grad_out.mat().col(j).sum();
  return g;
}

// Row-wise stable softmax.
template <class S>
Tensor<S> softmax_rows(const Tensor<S>& logits) {
  if (logits.rank() != 2) throw DimensionError("softmax expects rank-2 logits");
  Tensor<S> out(logits.shape());
  const Index rows = logits.extent(0), cols = logits.extent(1);
  for (Index i = 0; i < rows; ++i) {
    S mx = logits(i, 0);
    for (Index j = 1; j < cols; ++j) mx = std::max(mx, logits(i, j));
    S sum = 0;
    for (Index j = 0; j < cols; ++j) {
      const S e = std::exp(logits(i, j) - mx);
      out(i, j) = e;
      sum += e;
    }
    for (Index j = 0; j < cols; ++j) out(i, j) /= sum;
  }
  return out;
}

template <class S>
struct LossResult {
  S loss;
  Tensor<S> grad;
};

// Mean over the batch of -log softmax(logits)[label].
template <class S>
LossResult<S> softmax_xent(const Tensor<S>& logits, std::span<const int> labels) {
  if (logits.rank() != 2) throw DimensionError("softmax_xent expects rank-2 logits");
  const Index rows = logits.extent(0), cols = logits.extent(1);
  if (Index(labels.size()) != rows)
    throw DimensionError("softmax_xent label count mismatch");
  for (int l : labels)
    if (l < 0 || Index(l) >= cols)
      throw DimensionError("softmax_xent label out of range");
  Tensor<S> probs = softmax_rows(logits);
  S loss = 0;
  for (Index i = 0; i < rows; ++i) {
    const S p = std::max(probs(i, labels[size_t(i)]), S(1e-300));
    loss -= std::log(p);
  }
  loss /= S(rows);
  Tensor<S> grad = probs;
  for (Index i = 0; i < rows; ++i) grad(i, labels[size_t(i)]) -= S(1);
  for (Index i = 0; i < grad.numel(); ++i) grad[i] /= S(rows);
  return {loss, std::move(grad)};
}

// Mean of squared element differences; gradient wrt pred.
template <class S>
LossResult<S> mse_loss(const Tensor<S>& pred, const Tensor<S>& target) {
  if (!pred.same_shape(target)) throw DimensionError("mse_loss shape mismatch");
  const Index n = pred.numel();
  S loss = 0;
  Tensor<S> grad(pred.shape());
  for (Index i = 0; i < n; ++i) {
    const S d = pred[i] - target[i];
    loss += d * d;
    grad[i] = S(2) * d / S(n);
  }
  return {loss / S(n), std::move(grad)};
}

}  // namespace fontrec
