#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "fontrec/svd.hpp"
#include "testutil.hpp"

using fontrec::Index;
using fontrec::NumericError;
using fontrec::svd;
using fontrec::SvdResult;
using fontrec::Tensor;
using testutil::random_tensor;

namespace {

double ortho_defect(const Tensor<double>& u) {
  const auto gram = fontrec::matmul(fontrec::transposed(u), u);
  double worst = 0.0;
  for (Index i = 0; i < gram.extent(0); ++i)
    for (Index j = 0; j < gram.extent(1); ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

void check_svd_contract(const Tensor<double>& w, const SvdResult<double>& f) {
  const Index r = std::min(w.extent(0), w.extent(1));
  REQUIRE(Index(f.s.size()) == r);
  for (size_t i = 0; i + 1 < f.s.size(); ++i) {
    CHECK(f.s[i] >= f.s[i + 1]);
    CHECK(f.s[i + 1] >= 0.0);
  }
  CHECK(ortho_defect(f.u) <= 1e-8);
  CHECK(ortho_defect(f.v) <= 1e-8);
  const auto recon = fontrec::svd_reconstruct(f);
  const double tol = 1e-8 * std::max(1.0, double(w.max_abs()));
  CHECK(double(fontrec::max_abs_diff(recon, w)) <= tol);
}

std::vector<double> eigen_singular_values(const Tensor<double>& w) {
  Eigen::MatrixXd m(w.extent(0), w.extent(1));
  for (Index i = 0; i < w.extent(0); ++i)
    for (Index j = 0; j < w.extent(1); ++j) m(i, j) = w(i, j);
  Eigen::BDCSVD<Eigen::MatrixXd> s(m);
  return {s.singularValues().data(),
          s.singularValues().data() + s.singularValues().size()};
}

}  // namespace

TEST_CASE("svd of a diagonal matrix") {
  auto w = Tensor<double>::zeros({3, 3});
  w(0, 0) = 3;
  w(1, 1) = 2;
  w(2, 2) = 1;
  const auto f = svd(w);
  CHECK(f.s[0] == doctest::Approx(3));
  CHECK(f.s[1] == doctest::Approx(2));
  CHECK(f.s[2] == doctest::Approx(1));
  // permutation-signed identity factors
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      CHECK(std::abs(f.u(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
      CHECK(std::abs(f.v(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
  check_svd_contract(w, f);
}

TEST_CASE("svd singular values from the characteristic polynomial") {
  // W = [[3,0],[4,5]]: trace(WW^T) = 50, det(WW^T) = 225 -> eigenvalues 45, 5.
  const auto w = Tensor<double>::from_rows({{3, 0}, {4, 5}});
  const auto f = svd(w);
  CHECK(f.s[0] == doctest::Approx(std::sqrt(45.0)));
  CHECK(f.s[1] == doctest::Approx(std::sqrt(5.0)));
  check_svd_contract(w, f);
}

TEST_CASE("svd of the zero matrix") {
  const auto w = Tensor<double>::zeros({4, 3});
  const auto f = svd(w);
  for (double s : f.s) CHECK(s == 0.0);
  check_svd_contract(w, f);
}

TEST_CASE("svd contract on random matrices") {
  fontrec::Rng rng(101);
  const std::vector<std::pair<Index, Index>> sizes{
      {1, 1}, {5, 3}, {3, 5}, {16, 16}, {64, 64}, {40, 64}};
  for (auto [m, n] : sizes) {
    const auto w = random_tensor({m, n}, rng, -2, 2);
    check_svd_contract(w, svd(w));
  }
}

TEST_CASE("svd agrees with an independent solver") {
  fontrec::Rng rng(103);
  for (int trial = 0; trial < 6; ++trial) {
    const Index m = rng.uniform_int(2, 24), n = rng.uniform_int(2, 24);
    const auto w = random_tensor({m, n}, rng, -3, 3);
    const auto mine = svd(w);
    const auto ref = eigen_singular_values(w);
    REQUIRE(mine.s.size() == ref.size());
    for (size_t i = 0; i < ref.size(); ++i)
      CHECK(mine.s[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  }
}

TEST_CASE("svd handles rank-deficient matrices") {
  fontrec::Rng rng(107);
  const auto a = random_tensor({9, 2}, rng);
  const auto b = random_tensor({2, 7}, rng);
  const auto w = fontrec::matmul(a, b);  // rank <= 2
  const auto f = svd(w);
  check_svd_contract(w, f);
  for (size_t i = 2; i < f.s.size(); ++i) CHECK(f.s[i] <= 1e-10 * f.s[0]);
}

TEST_CASE("svd non-convergence raises a numeric error") {
  fontrec::Rng rng(109);
  const auto w = random_tensor({6, 6}, rng);
  fontrec::SvdOptions opt;
  opt.max_sweeps = 0;
  CHECK_THROWS_AS(svd(w, opt), NumericError);
}

TEST_CASE("rank_project diagonal truncation") {
  auto w = Tensor<double>::zeros({3, 3});
  w(0, 0) = 3;
  w(1, 1) = 2;
  w(2, 2) = 1;
  const auto p = fontrec::rank_project(w, 1);
  CHECK(p(0, 0) == doctest::Approx(3));
  CHECK(std::abs(p(1, 1)) < 1e-12);
  CHECK(std::abs(p(2, 2)) < 1e-12);
}

TEST_CASE("rank_project is identity at full rank") {
  fontrec::Rng rng(113);
  const auto w = random_tensor({6, 4}, rng);
  const auto p = fontrec::rank_project(w, 4);
  CHECK(double(fontrec::max_abs_diff(p, w)) <= 1e-8);
}

TEST_CASE("rank_project satisfies the Eckart-Young identity") {
  fontrec::Rng rng(127);
  const auto w = random_tensor({8, 6}, rng);
  const Index k = 2;
  const auto wk = fontrec::rank_project(w, k);
  double err2 = 0.0;
  for (Index i = 0; i < w.numel(); ++i) {
    const double d = w[i] - wk[i];
    err2 += d * d;
  }
  const auto f = svd(w);
  double tail2 = 0.0;
  for (size_t i = size_t(k); i < f.s.size(); ++i) tail2 += f.s[i] * f.s[i];
  CHECK(err2 == doctest::Approx(tail2).epsilon(1e-8));
}

TEST_CASE("rank_project idempotence and monotonicity") {
  fontrec::Rng rng(131);
  const auto w = random_tensor({10, 7}, rng);
  const auto p3 = fontrec::rank_project(w, 3);
  const auto p3b = fontrec::rank_project(p3, 3);
  CHECK(double(fontrec::max_abs_diff(p3, p3b)) <= 1e-8);

  double prev = 1e300;
  for (Index k = 1; k <= 7; ++k) {
    const auto pk = fontrec::rank_project(w, k);
    double err2 = 0.0;
    for (Index i = 0; i < w.numel(); ++i) {
      const double d = w[i] - pk[i];
      err2 += d * d;
    }
    CHECK(std::sqrt(err2) <= prev + 1e-10);
    prev = std::sqrt(err2);
  }

  // residual singular values below the numerical-rank threshold
  const auto fs = svd(p3);
  for (size_t i = 3; i < fs.s.size(); ++i)
    CHECK(fs.s[i] <= 1e-8 * std::max(1.0, fs.s[0]));

  CHECK_THROWS_AS(fontrec::rank_project(w, 0), fontrec::DimensionError);
}
