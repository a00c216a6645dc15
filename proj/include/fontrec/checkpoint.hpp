#pragma once

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fontrec/crc32.hpp"
#include "fontrec/network.hpp"

namespace fontrec {

// Checkpoint layout (little-endian): "DFNT" magic, u32 format version, the
// network spec, per-weighted-layer DENSE|FACTORED payloads as f32, and a
// trailing CRC32 over everything between the magic and the checksum.
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace ckpt_detail {

struct Writer {
  std::vector<std::uint8_t> buf;

  void u8(std::uint8_t v) { buf.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(std::uint8_t(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(std::uint32_t(v)); }
  void i64(std::int64_t v) {
    for (int i = 0; i < 8; ++i)
      buf.push_back(std::uint8_t(std::uint64_t(v) >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  template <class S>
  void f32_array(const S* data, Index n) {
    buf.reserve(buf.size() + size_t(n) * 4);
    for (Index i = 0; i < n; ++i) f32(float(data[i]));
  }
};

struct Reader {
  const std::uint8_t* p;
  const std::uint8_t* end;

  void need(size_t n) const {
    if (size_t(end - p) < n) throw DataError("truncated checkpoint");
  }
  std::uint8_t u8() {
    need(1);
    return *p++;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    p += 4;
    return v;
  }
  std::int32_t i32() { return std::int32_t(u32()); }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    p += 8;
    return std::int64_t(v);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  template <class S>
  void f32_array(S* data, Index n) {
    need(size_t(n) * 4);
    for (Index i = 0; i < n; ++i) data[i] = S(f32());
  }
};

inline void write_spec(Writer& w, const NetworkSpec& spec) {
  w.u32(std::uint32_t(spec.layers.size()));
  for (const auto& l : spec.layers) {
    w.u8(std::uint8_t(l.kind));
    switch (l.kind) {
      case LayerKind::kConv:
        w.i32(l.out_channels);
        w.i32(l.kernel);
        w.i32(l.stride);
        w.i32(l.pad);
        break;
      case LayerKind::kPool:
        w.i32(l.window);
        w.i32(l.pool_stride);
        break;
      case LayerKind::kFc:
        w.i32(l.width);
        break;
      case LayerKind::kDropout:
        w.f32(float(l.drop_p));
        break;
      case LayerKind::kUpsample:
        w.i32(l.up_h);
        w.i32(l.up_w);
        break;
      case LayerKind::kRelu:
      case LayerKind::kSoftmax:
        break;
    }
  }
  w.i32(spec.n_weighted);
  w.i32(spec.k_split);
  w.i32(spec.n_classes);
  w.i32(spec.input.c);
  w.i32(spec.input.h);
  w.i32(spec.input.w);
}

inline NetworkSpec read_spec(Reader& r) {
  NetworkSpec spec;
  const std::uint32_t n_layers = r.u32();
  if (n_layers > 4096) throw DataError("implausible checkpoint layer count");
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    LayerSpec l;
    const std::uint8_t kind = r.u8();
    if (kind > std::uint8_t(LayerKind::kUpsample))
      throw DataError("unknown layer kind in checkpoint");
    l.kind = LayerKind(kind);
    switch (l.kind) {
      case LayerKind::kConv:
        l.out_channels = r.i32();
        l.kernel = r.i32();
        l.stride = r.i32();
        l.pad = r.i32();
        break;
      case LayerKind::kPool:
        l.window = r.i32();
        l.pool_stride = r.i32();
        break;
      case LayerKind::kFc:
        l.width = r.i32();
        break;
      case LayerKind::kDropout:
        l.drop_p = double(r.f32());
        break;
      case LayerKind::kUpsample:
        l.up_h = r.i32();
        l.up_w = r.i32();
        break;
      case LayerKind::kRelu:
      case LayerKind::kSoftmax:
        break;
    }
    spec.layers.push_back(l);
  }
  spec.n_weighted = r.i32();
  spec.k_split = r.i32();
  spec.n_classes = r.i32();
  spec.input.c = r.i32();
  spec.input.h = r.i32();
  spec.input.w = r.i32();
  return spec;
}

}  // namespace ckpt_detail

template <class S>
void save_checkpoint(const Model<S>& model, const std::filesystem::path& path) {
  ckpt_detail::Writer w;
  w.u32(kCheckpointVersion);
  ckpt_detail::write_spec(w, model.spec);
  for (size_t i = 0; i < model.weights.size(); ++i) {
    const bool factored = model.factored[i].has_value();
    w.u8(factored ? 1 : 0);
    w.u8(model.frozen[i] ? 1 : 0);
    if (factored) {
      const auto& f = *model.factored[i];
      const Index m = f.u.extent(0), n = f.v.extent(0), k = f.u.extent(1);
      w.i64(m);
      w.i64(n);
      w.i64(k);
      w.f32_array(f.u.data(), f.u.numel());
      w.f32_array(f.s.data(), Index(f.s.size()));
      w.f32_array(f.v.data(), f.v.numel());
    } else {
      const auto& kern = model.weights[i].kernel;
      w.u8(std::uint8_t(kern.rank()));
      for (Index d = 0; d < kern.rank(); ++d) w.i64(kern.extent(int(d)));
      w.f32_array(kern.data(), kern.numel());
    }
    const auto& bias = model.weights[i].bias;
    w.i64(bias.numel());
    w.f32_array(bias.data(), bias.numel());
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for write: " + path.string());
  out.write("DFNT", 4);
  out.write(reinterpret_cast<const char*>(w.buf.data()),
            std::streamsize(w.buf.size()));
  const std::uint32_t crc = crc32(w.buf.data(), w.buf.size());
  char crc_bytes[4];
  for (int i = 0; i < 4; ++i) crc_bytes[i] = char(crc >> (8 * i));
  out.write(crc_bytes, 4);
  if (!out) throw DataError("short write: " + path.string());
}

template <class S>
Model<S> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "DFNT", 4) != 0)
    throw DataError("not a checkpoint (bad magic): " + path.string());
  const size_t payload_len = bytes.size() - 8;
  std::uint32_t stored_crc = 0;
  for (int i = 0; i < 4; ++i)
    stored_crc |= std::uint32_t(bytes[payload_len + 4 + size_t(i)]) << (8 * i);
  if (crc32(bytes.data() + 4, payload_len) != stored_crc)
    throw DataError("checkpoint CRC mismatch: " + path.string());

  ckpt_detail::Reader r{bytes.data() + 4, bytes.data() + 4 + payload_len};
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  Model<S> model;
  model.spec = ckpt_detail::read_spec(r);
  const auto shapes = model.spec.weight_shapes();
  if (int(shapes.size()) != model.spec.n_weighted)
    throw DataError("checkpoint spec is inconsistent");
  for (const auto& ws : shapes) {
    const std::uint8_t tag = r.u8();
    const bool frozen = r.u8() != 0;
    LayerWeights<S> lw;
    std::optional<FactorizedStorage<S>> factored;
    if (tag == 1) {
      const Index m = r.i64(), n = r.i64(), k = r.i64();
      if (std::vector<Index>{m, n} != ws.kernel)
        throw DataError("factored layer shape does not match spec");
      if (k < 1 || k > std::min(m, n))
        throw DataError("factored layer has bad rank");
      FactorizedStorage<S> f{Tensor<S>({m, k}), std::vector<S>(size_t(k)),
                             Tensor<S>({n, k})};
      r.f32_array(f.u.data(), f.u.numel());
      r.f32_array(f.s.data(), Index(f.s.size()));
      r.f32_array(f.v.data(), f.v.numel());
      // Materialize the dense matrix for compute.
      Tensor<S> scaled = f.u;
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < k; ++j) scaled(i, j) *= f.s[size_t(j)];
      lw.kernel = Tensor<S>({m, n});
      lw.kernel.mat().noalias() = scaled.mat() * f.v.mat().transpose();
      factored = std::move(f);
    } else if (tag == 0) {
      const Index rank = r.u8();
      std::vector<Index> dims;
      for (Index d = 0; d < rank; ++d) dims.push_back(r.i64());
      if (dims != ws.kernel)
        throw DataError("dense layer shape does not match spec");
      lw.kernel = Tensor<S>(dims);
      r.f32_array(lw.kernel.data(), lw.kernel.numel());
    } else {
      throw DataError("unknown layer storage tag");
    }
    const Index bias_len = r.i64();
    if (bias_len != ws.bias) throw DataError("bias length does not match spec");
    lw.bias = Tensor<S>({bias_len});
    r.f32_array(lw.bias.data(), bias_len);
    model.weights.push_back(std::move(lw));
    model.frozen.push_back(frozen);
    model.factored.push_back(std::move(factored));
  }
  if (r.p != r.end) throw DataError("trailing bytes in checkpoint");
  return model;
}

}  // namespace fontrec
