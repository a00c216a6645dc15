#include <doctest.h>

#include "fontrec/tensor.hpp"
#include "testutil.hpp"

using fontrec::DimensionError;
using fontrec::Index;
using fontrec::Tensor;

TEST_CASE("matmul against hand expansion") {
  const auto a = Tensor<double>::from_rows({{1, 2}, {3, 4}});
  const auto b = Tensor<double>::from_rows({{5}, {6}});
  const auto c = fontrec::matmul(a, b);
  CHECK(c.shape() == std::vector<Index>{2, 1});
  CHECK(c(0, 0) == doctest::Approx(17));
  CHECK(c(1, 0) == doctest::Approx(39));
}

TEST_CASE("matmul identity and annihilator") {
  fontrec::Rng rng(7);
  const auto b = testutil::random_tensor({3, 5}, rng);
  const auto i3 = Tensor<double>::identity(3);
  CHECK(fontrec::max_abs_diff(fontrec::matmul(i3, b), b) == 0.0);
  const auto z = Tensor<double>::zeros({5, 4});
  CHECK(fontrec::matmul(b, z).max_abs() == 0.0);
}

TEST_CASE("matmul shape mismatch") {
  const auto a = Tensor<double>::zeros({2, 3});
  const auto b = Tensor<double>::zeros({4, 2});
  CHECK_THROWS_AS(fontrec::matmul(a, b), DimensionError);
}

TEST_CASE("matmul against scalar loop on random instances") {
  fontrec::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Index m = rng.uniform_int(1, 6), k = rng.uniform_int(1, 6),
                n = rng.uniform_int(1, 6);
    const auto a = testutil::random_tensor({m, k}, rng);
    const auto b = testutil::random_tensor({k, n}, rng);
    const auto c = fontrec::matmul(a, b);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (Index t = 0; t < k; ++t) acc += a(i, t) * b(t, j);
        CHECK(c(i, j) == doctest::Approx(acc).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("tensor shape invariants") {
  CHECK_THROWS_AS(Tensor<double>({0, 3}), DimensionError);
  CHECK_THROWS_AS(Tensor<double>({1, 2, 3, 4, 5}), DimensionError);
  CHECK_THROWS_AS(Tensor<double>({2, 2}, std::vector<double>{1, 2, 3}),
                  DimensionError);
  const auto t = Tensor<double>::full({2, 3, 4}, 1.5);
  CHECK(t.numel() == 24);
  CHECK(t.all_finite());
  CHECK_THROWS_AS(t.reshaped({5, 5}), DimensionError);
  CHECK(t.reshaped({6, 4}).extent(0) == 6);
}
