#pragma once

#include <functional>

#include "fontrec/rng.hpp"
#include "fontrec/tensor.hpp"

namespace testutil {

using fontrec::Index;
using fontrec::Rng;
using fontrec::Tensor;

inline Tensor<double> random_tensor(std::vector<Index> shape, Rng& rng,
                                    double lo = -1.0, double hi = 1.0) {
  Tensor<double> t(std::move(shape));
  for (Index i = 0; i < t.numel(); ++i) t[i] = rng.uniform(lo, hi);
  return t;
}

// Central finite differences of a scalar function of one tensor argument.
inline Tensor<double> numeric_gradient(
    const std::function<double(const Tensor<double>&)>& f, Tensor<double> x,
    double h = 1e-5) {
  Tensor<double> g(x.shape());
  for (Index i = 0; i < x.numel(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f(x);
    x[i] = orig - h;
    const double fm = f(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

// Max abs deviation relative to the numeric gradient's scale.
inline double gradient_rel_error(const Tensor<double>& analytic,
                                 const Tensor<double>& numeric) {
  const double scale = std::max(1.0, double(numeric.max_abs()));
  return double(fontrec::max_abs_diff(analytic, numeric)) / scale;
}

// Fixed random linear functional, to reduce tensor outputs to a scalar loss.
struct LinearProbe {
  Tensor<double> c;
  explicit LinearProbe(const std::vector<Index>& shape, Rng& rng)
      : c(random_tensor(shape, rng)) {}
  double operator()(const Tensor<double>& t) const {
    double acc = 0.0;
    for (Index i = 0; i < t.numel(); ++i) acc += c[i] * t[i];
    return acc;
  }
  Tensor<double> grad() const { return c; }
};

}  // namespace testutil
