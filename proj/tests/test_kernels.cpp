#include <doctest.h>

#include <cmath>

#include "fontrec/kernels.hpp"
#include "testutil.hpp"

using fontrec::DimensionError;
using fontrec::Index;
using fontrec::Tensor;
using testutil::gradient_rel_error;
using testutil::LinearProbe;
using testutil::numeric_gradient;
using testutil::random_tensor;

namespace {

// Independent quadruple-loop convolution, kept apart from the im2col path.
Tensor<double> conv_reference(const Tensor<double>& in, const Tensor<double>& k,
                              const Tensor<double>& bias, Index stride,
                              Index pad) {
  const Index B = in.extent(0), C = in.extent(1), H = in.extent(2),
              W = in.extent(3);
  const Index F = k.extent(0), kh = k.extent(2), kw = k.extent(3);
  const Index oh = (H + 2 * pad - kh) / stride + 1;
  const Index ow = (W + 2 * pad - kw) / stride + 1;
  Tensor<double> out({B, F, oh, ow});
  for (Index b = 0; b < B; ++b)
    for (Index f = 0; f < F; ++f)
      for (Index y = 0; y < oh; ++y)
        for (Index x = 0; x < ow; ++x) {
          double acc = bias[f];
          for (Index c = 0; c < C; ++c)
            for (Index dy = 0; dy < kh; ++dy)
              for (Index dx = 0; dx < kw; ++dx) {
                const Index iy = y * stride - pad + dy;
                const Index ix = x * stride - pad + dx;
                if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
                acc += in(b, c, iy, ix) * k(f, c, dy, dx);
              }
          out(b, f, y, x) = acc;
        }
  return out;
}

}  // namespace

TEST_CASE("conv2d identity kernel") {
  fontrec::Rng rng(3);
  const auto in = random_tensor({1, 1, 3, 3}, rng);
  const auto k = Tensor<double>::full({1, 1, 1, 1}, 1.0);
  const auto b = Tensor<double>::zeros({1});
  const auto out = fontrec::conv2d_forward(in, k, b, 1, 0);
  CHECK(fontrec::max_abs_diff(out, in) == 0.0);
}

TEST_CASE("conv2d all-ones 3x3") {
  const auto in = Tensor<double>::full({1, 1, 3, 3}, 1.0);
  const auto k = Tensor<double>::full({1, 1, 3, 3}, 1.0);
  const auto b = Tensor<double>::zeros({1});
  const auto out = fontrec::conv2d_forward(in, k, b, 1, 0);
  CHECK(out.numel() == 1);
  CHECK(out[0] == doctest::Approx(9.0));
}

TEST_CASE("conv2d zero kernel yields bias") {
  fontrec::Rng rng(5);
  const auto in = random_tensor({2, 3, 6, 7}, rng);
  const auto k = Tensor<double>::zeros({4, 3, 3, 3});
  auto b = Tensor<double>::zeros({4});
  for (Index f = 0; f < 4; ++f) b[f] = 0.25 * double(f) - 0.5;
  const auto out = fontrec::conv2d_forward(in, k, b, 1, 1);
  for (Index bi = 0; bi < 2; ++bi)
    for (Index f = 0; f < 4; ++f)
      for (Index y = 0; y < out.extent(2); ++y)
        for (Index x = 0; x < out.extent(3); ++x)
          CHECK(out(bi, f, y, x) == doctest::Approx(b[f]));
}

TEST_CASE("conv2d rejects non-positive output extents") {
  const auto in = Tensor<double>::zeros({1, 1, 3, 3});
  const auto k = Tensor<double>::zeros({1, 1, 5, 5});
  const auto b = Tensor<double>::zeros({1});
  CHECK_THROWS_AS(fontrec::conv2d_forward(in, k, b, 1, 0), DimensionError);
}

TEST_CASE("conv2d forward matches the reference loop") {
  fontrec::Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Index stride = rng.uniform_int(1, 2);
    const Index pad = rng.uniform_int(0, 2);
    const auto in = random_tensor({2, 2, 6, 5}, rng);
    const auto k = random_tensor({3, 2, 3, 3}, rng);
    const auto b = random_tensor({3}, rng);
    const auto fast = fontrec::conv2d_forward(in, k, b, stride, pad);
    const auto ref = conv_reference(in, k, b, stride, pad);
    CHECK(fontrec::max_abs_diff(fast, ref) < 1e-12);
  }
}

TEST_CASE("conv2d backward trivial cases") {
  fontrec::Rng rng(23);
  const auto in = random_tensor({1, 2, 4, 4}, rng);
  const auto k = random_tensor({2, 2, 3, 3}, rng);
  const auto zero_go = Tensor<double>::zeros({1, 2, 2, 2});
  const auto g = fontrec::conv2d_backward(zero_go, in, k, 1, 0);
  CHECK(g.input.max_abs() == 0.0);
  CHECK(g.kernel.max_abs() == 0.0);
  CHECK(g.bias.max_abs() == 0.0);

  const auto in1 = random_tensor({1, 1, 4, 4}, rng);
  const auto ident = Tensor<double>::full({1, 1, 1, 1}, 1.0);
  const auto go = random_tensor({1, 1, 4, 4}, rng);
  const auto gi = fontrec::conv2d_backward(go, in1, ident, 1, 0);
  CHECK(fontrec::max_abs_diff(gi.input, go) == 0.0);
}

TEST_CASE("conv2d gradients match finite differences") {
  fontrec::Rng rng(29);
  const auto in = random_tensor({1, 2, 5, 5}, rng);
  const auto k = random_tensor({3, 2, 3, 3}, rng);
  const auto b = random_tensor({3}, rng);
  const Index stride = 1, pad = 1;
  const auto out_shape =
      fontrec::conv2d_forward(in, k, b, stride, pad).shape();
  LinearProbe probe(out_shape, rng);

  const auto analytic =
      fontrec::conv2d_backward(probe.grad(), in, k, stride, pad);
  const auto num_in = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::conv2d_forward(x, k, b, stride, pad));
      },
      in);
  CHECK(gradient_rel_error(analytic.input, num_in) < 1e-4);
  const auto num_k = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::conv2d_forward(in, x, b, stride, pad));
      },
      k);
  CHECK(gradient_rel_error(analytic.kernel, num_k) < 1e-4);
  const auto num_b = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::conv2d_forward(in, k, x, stride, pad));
      },
      b);
  CHECK(gradient_rel_error(analytic.bias, num_b) < 1e-4);
}

TEST_CASE("maxpool basics and ties") {
  const auto c = Tensor<double>::full({1, 1, 4, 4}, 0.7);
  const auto rc = fontrec::maxpool2d(c, 2, 2);
  for (Index i = 0; i < rc.output.numel(); ++i)
    CHECK(rc.output[i] == doctest::Approx(0.7));
  // ties break toward the smallest flat index
  CHECK(rc.argmax[0] == 0);
  CHECK(rc.argmax[1] == 2);

  const auto m =
      Tensor<double>({1, 1, 2, 2}, std::vector<double>{1, 2, 3, 4});
  const auto rm = fontrec::maxpool2d(m, 2, 2);
  CHECK(rm.output.numel() == 1);
  CHECK(rm.output[0] == doctest::Approx(4));
  CHECK(rm.argmax[0] == 3);
}

TEST_CASE("maxpool gradient matches finite differences") {
  fontrec::Rng rng(31);
  const auto in = random_tensor({2, 2, 6, 6}, rng);
  const auto pooled = fontrec::maxpool2d(in, 2, 2);
  LinearProbe probe(pooled.output.shape(), rng);
  const auto analytic =
      fontrec::maxpool2d_backward(probe.grad(), pooled.argmax, in.shape());
  const auto numeric = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::maxpool2d(x, 2, 2).output);
      },
      in);
  CHECK(gradient_rel_error(analytic, numeric) < 1e-4);
}

TEST_CASE("relu forward and mask") {
  const auto in = Tensor<double>({1, 4}, std::vector<double>{-1, 2, 0, -0.5});
  const auto out = fontrec::relu(in);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 2.0);
  CHECK(out[2] == 0.0);
  CHECK(out[3] == 0.0);
  const auto go = Tensor<double>::full({1, 4}, 1.0);
  const auto gi = fontrec::relu_backward(go, in);
  CHECK(gi[0] == 0.0);
  CHECK(gi[1] == 1.0);
  CHECK(gi[3] == 0.0);
}

TEST_CASE("relu gradient away from zero") {
  fontrec::Rng rng(37);
  auto in = random_tensor({3, 7}, rng);
  for (Index i = 0; i < in.numel(); ++i)
    if (std::abs(in[i]) < 1e-3) in[i] = 0.1;  // keep clear of the kink
  LinearProbe probe(in.shape(), rng);
  const auto analytic = fontrec::relu_backward(probe.grad(), in);
  const auto numeric = numeric_gradient(
      [&](const Tensor<double>& x) { return probe(fontrec::relu(x)); }, in);
  CHECK(gradient_rel_error(analytic, numeric) < 1e-4);
}

TEST_CASE("fc forward basics") {
  fontrec::Rng rng(41);
  const auto in = random_tensor({2, 3}, rng);
  const auto ident = Tensor<double>::identity(3);
  const auto zero_b = Tensor<double>::zeros({3});
  CHECK(fontrec::max_abs_diff(fontrec::fc_forward(in, ident, zero_b), in) <
        1e-15);
  const auto zin = Tensor<double>::zeros({2, 3});
  const auto w = random_tensor({3, 4}, rng);
  const auto b = random_tensor({4}, rng);
  const auto out = fontrec::fc_forward(zin, w, b);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(out(i, j) == doctest::Approx(b[j]));
}

TEST_CASE("fc gradients match finite differences") {
  fontrec::Rng rng(43);
  const auto in = random_tensor({3, 5}, rng);
  const auto w = random_tensor({5, 4}, rng);
  const auto b = random_tensor({4}, rng);
  LinearProbe probe({3, 4}, rng);
  const auto analytic = fontrec::fc_backward(probe.grad(), in, w);
  const auto num_in = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::fc_forward(x, w, b));
      },
      in);
  CHECK(gradient_rel_error(analytic.input, num_in) < 1e-4);
  const auto num_w = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::fc_forward(in, x, b));
      },
      w);
  CHECK(gradient_rel_error(analytic.weight, num_w) < 1e-4);
  const auto num_b = numeric_gradient(
      [&](const Tensor<double>& x) {
        return probe(fontrec::fc_forward(in, w, x));
      },
      b);
  CHECK(gradient_rel_error(analytic.bias, num_b) < 1e-4);
}

TEST_CASE("softmax_xent uniform logits") {
  const auto logits = Tensor<double>::zeros({2, 4});
  const std::vector<int> labels{1, 3};
  const auto r = fontrec::softmax_xent(logits, labels);
  CHECK(r.loss == doctest::Approx(std::log(4.0)));
  const auto probs = fontrec::softmax_rows(logits);
  for (Index i = 0; i < probs.numel(); ++i)
    CHECK(probs[i] == doctest::Approx(0.25));
}

TEST_CASE("softmax_xent scalar evaluation") {
  const auto logits = Tensor<double>({1, 2}, std::vector<double>{10, -10});
  const std::vector<int> labels{0};
  const auto r = fontrec::softmax_xent(logits, labels);
  const double e20 = std::exp(-20.0);
  CHECK(r.loss == doctest::Approx(std::log1p(e20)).epsilon(1e-6));
  CHECK(r.loss == doctest::Approx(2.061e-9).epsilon(1e-2));
  const auto probs = fontrec::softmax_rows(logits);
  CHECK(probs(0, 0) == doctest::Approx(1.0));
  CHECK(probs(0, 1) == doctest::Approx(e20).epsilon(1e-6));
}

TEST_CASE("softmax_xent grad rows sum to zero") {
  fontrec::Rng rng(47);
  const auto logits = random_tensor({5, 7}, rng, -3, 3);
  std::vector<int> labels;
  for (int i = 0; i < 5; ++i) labels.push_back(int(rng.uniform_int(0, 6)));
  const auto r = fontrec::softmax_xent(logits, labels);
  for (Index i = 0; i < 5; ++i) {
    double s = 0.0;
    for (Index j = 0; j < 7; ++j) s += r.grad(i, j);
    CHECK(std::abs(s) < 1e-10);
  }
}

TEST_CASE("softmax stability at large magnitudes") {
  fontrec::Rng rng(53);
  const auto logits = random_tensor({4, 6}, rng, -1e4, 1e4);
  const auto probs = fontrec::softmax_rows(logits);
  for (Index i = 0; i < 4; ++i) {
    double s = 0.0;
    for (Index j = 0; j < 6; ++j) {
      CHECK(probs(i, j) >= 0.0);
      s += probs(i, j);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("softmax_xent rejects bad labels") {
  const auto logits = Tensor<double>::zeros({2, 3});
  const std::vector<int> bad{0, 3};
  CHECK_THROWS_AS(fontrec::softmax_xent(logits, bad), DimensionError);
}

TEST_CASE("softmax_xent gradient matches finite differences") {
  fontrec::Rng rng(59);
  const auto logits = random_tensor({3, 5}, rng, -2, 2);
  const std::vector<int> labels{4, 0, 2};
  const auto analytic = fontrec::softmax_xent(logits, labels);
  const auto numeric = numeric_gradient(
      [&](const Tensor<double>& x) {
        return double(fontrec::softmax_xent(x, labels).loss);
      },
      logits);
  CHECK(gradient_rel_error(analytic.grad, numeric) < 1e-4);
}

TEST_CASE("mse_loss values and gradient") {
  fontrec::Rng rng(61);
  const auto t = random_tensor({2, 3}, rng);
  CHECK(fontrec::mse_loss(t, t).loss == 0.0);
  auto shifted = t;
  for (Index i = 0; i < shifted.numel(); ++i) shifted[i] += 1.0;
  CHECK(fontrec::mse_loss(shifted, t).loss == doctest::Approx(1.0));

  const auto pred = random_tensor({3, 4}, rng);
  const auto target = random_tensor({3, 4}, rng);
  const auto analytic = fontrec::mse_loss(pred, target);
  const auto numeric = numeric_gradient(
      [&](const Tensor<double>& x) {
        return double(fontrec::mse_loss(x, target).loss);
      },
      pred);
  CHECK(gradient_rel_error(analytic.grad, numeric) < 1e-4);
}
