#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "fontrec/common.hpp"

namespace fontrec {

// Dense row-major value array, rank 1..4 (batch, channel, height, width).
template <class Scalar>
class Tensor {
 public:
  using MatrixType =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Map = Eigen::Map<MatrixType>;
  using ConstMap = Eigen::Map<const MatrixType>;

  Tensor() = default;

  explicit Tensor(std::vector<Index> shape) : shape_(std::move(shape)) {
    data_.assign(checked_numel(shape_), Scalar(0));
  }

  Tensor(std::vector<Index> shape, std::vector<Scalar> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (checked_numel(shape_) != Index(data_.size()))
      throw DimensionError("tensor data length does not match shape");
  }

  static Tensor zeros(std::vector<Index> shape) { return Tensor(std::move(shape)); }

  static Tensor full(std::vector<Index> shape, Scalar v) {
    Tensor t(std::move(shape));
    std::fill(t.data_.begin(), t.data_.end(), v);
    return t;
  }

  // 2-d literal, row per initializer list.
  static Tensor from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    const Index m = Index(rows.size());
    const Index n = m > 0 ? Index(rows.begin()->size()) : 0;
    Tensor t({m, n});
    Index i = 0;
    for (const auto& row : rows) {
      if (Index(row.size()) != n) throw DimensionError("ragged row literal");
      for (Scalar v : row) t.data_[i++] = v;
    }
    return t;
  }

  static Tensor identity(Index n) {
    Tensor t({n, n});
    for (Index i = 0; i < n; ++i) t.data_[i * n + i] = Scalar(1);
    return t;
  }

  Index rank() const { return Index(shape_.size()); }
  const std::vector<Index>& shape() const { return shape_; }
  Index extent(int axis) const { return shape_.at(axis); }
  Index numel() const { return Index(data_.size()); }
  bool empty() const { return data_.empty(); }

  Scalar* data() { return data_.data(); }
  const Scalar* data() const { return data_.data(); }
  std::vector<Scalar>& storage() { return data_; }
  const std::vector<Scalar>& storage() const { return data_; }

  Scalar& operator[](Index i) { return data_[size_t(i)]; }
  Scalar operator[](Index i) const { return data_[size_t(i)]; }

  Scalar& operator()(Index i, Index j) { return data_[size_t(i * shape_[1] + j)]; }
  Scalar operator()(Index i, Index j) const { return data_[size_t(i * shape_[1] + j)]; }

  Scalar& operator()(Index b, Index c, Index y, Index x) {
    return data_[size_t(((b * shape_[1] + c) * shape_[2] + y) * shape_[3] + x)];
  }
  Scalar operator()(Index b, Index c, Index y, Index x) const {
    return data_[size_t(((b * shape_[1] + c) * shape_[2] + y) * shape_[3] + x)];
  }

  // Same data, new shape; element count must match.
  Tensor reshaped(std::vector<Index> shape) const {
    if (checked_numel(shape) != numel())
      throw DimensionError("reshape changes element count");
    return Tensor(std::move(shape), data_);
  }

  Map mat() {
    require_rank2();
    return Map(data_.data(), shape_[0], shape_[1]);
  }
  ConstMap mat() const {
    require_rank2();
    return ConstMap(data_.data(), shape_[0], shape_[1]);
  }

  // Rank-agnostic view as rows x cols with rows = extent(0).
  Map as2d() {
    const Index rows = shape_.empty() ? 1 : shape_[0];
    return Map(data_.data(), rows, rows ? numel() / rows : 0);
  }
  ConstMap as2d() const {
    const Index rows = shape_.empty() ? 1 : shape_[0];
    return ConstMap(data_.data(), rows, rows ? numel() / rows : 0);
  }

  bool all_finite() const {
    for (Scalar v : data_)
      if (!std::isfinite(double(v))) return false;
    return true;
  }

  Scalar max_abs() const {
    Scalar m = 0;
    for (Scalar v : data_) m = std::max(m, Scalar(std::abs(double(v))));
    return m;
  }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  std::string shape_str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < shape_.size(); ++i)
      os << (i ? "x" : "") << shape_[i];
    os << ']';
    return os.str();
  }

 private:
  static Index checked_numel(const std::vector<Index>& shape) {
    if (shape.empty() || shape.size() > 4)
      throw DimensionError("tensor rank must be 1..4");
    Index n = 1;
    for (Index e : shape) {
      if (e <= 0) throw DimensionError("tensor extents must be positive");
      n *= e;
    }
    return n;
  }

  void require_rank2() const {
    if (shape_.size() != 2) throw DimensionError("expected rank-2 tensor");
  }

  std::vector<Index> shape_;
  std::vector<Scalar> data_;
};

template <class S>
Tensor<S> matmul(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.rank() != 2 || b.rank() != 2)
    throw DimensionError("matmul expects rank-2 tensors");
  if (a.extent(1) != b.extent(0))
    throw DimensionError("matmul inner extents differ: " + a.shape_str() +
                         " vs " + b.shape_str());
  Tensor<S> out({a.extent(0), b.extent(1)});
  out.mat().noalias() = a.mat() * b.mat();
  return out;
}

template <class S>
Tensor<S> transposed(const Tensor<S>& a) {
  if (a.rank() != 2) throw DimensionError("transpose expects rank-2 tensor");
  Tensor<S> out({a.extent(1), a.extent(0)});
  out.mat().noalias() = a.mat().transpose();
  return out;
}

template <class S>
S max_abs_diff(const Tensor<S>& a, const Tensor<S>& b) {
  if (!a.same_shape(b)) throw DimensionError("max_abs_diff shape mismatch");
  S m = 0;
  for (Index i = 0; i < a.numel(); ++i)
    m = std::max(m, S(std::abs(double(a[i] - b[i]))));
  return m;
}

}  // namespace fontrec
