// Copyright 2026 The hwarch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "hwarch/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <zlib.h>

#include "hwarch/error.hpp"

namespace hwarch {

namespace {

constexpr char kMagic[8] = {'H', 'W', 'A', 'R', 'C', 'H', 'S', 'N'};
constexpr std::size_t kHeader = sizeof kMagic + 4 + 1;

std::uint32_t checksum(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes 32-bit lengths; feed large buffers in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(Errc::kCorruptSnapshot, what);
}

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void size(std::size_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void vec(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) f64(v[i]);
  }
  void matrix(const Matrix& m) {
    size(static_cast<std::size_t>(m.rows()));
    size(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) f64(m(i, j));
  }
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  std::vector<std::uint8_t>& buffer() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  /// A count of items of item_bytes each that must fit in the rest of the
  /// buffer, so corrupt sizes cannot trigger huge allocations.
  std::size_t count(std::size_t item_bytes) {
    const std::uint64_t n = u64();
    if (item_bytes != 0 && n > remaining() / item_bytes) corrupt("size field exceeds snapshot length");
    return static_cast<std::size_t>(n);
  }
  /// A dimension or parameter; bounded so products of them cannot overflow.
  std::size_t dimension() {
    const std::uint64_t n = u64();
    if (n > (std::uint64_t{1} << 32)) corrupt("dimension field out of range");
    return static_cast<std::size_t>(n);
  }
  Vector vec(std::size_t n) {
    if (n > remaining() / 8) corrupt("vector exceeds snapshot length");
    Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = f64();
    return v;
  }
  Matrix matrix() {
    const std::size_t rows = dimension();
    const std::size_t cols = dimension();
    if (rows != 0 && cols > remaining() / 8 / rows) corrupt("matrix exceeds snapshot length");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = f64();
    return m;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) corrupt("snapshot is truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void write_book(Writer& w, const TemplateBook& b) {
  w.size(b.size());
  for (const Vector& t : b.templates()) w.vec(t);
}

TemplateBook read_book(Reader& r, std::size_t dim) {
  const std::size_t n = r.count(dim * 8);
  TemplateBook b(dim);
  for (std::size_t i = 0; i < n; ++i) b.insert_normalized(r.vec(dim));
  return b;
}

Pooling read_pooling(Reader& r) {
  const std::uint8_t p = r.u8();
  if (p > 1) corrupt("unknown pooling tag");
  return p == 0 ? Pooling::kMax : Pooling::kSum;
}

std::uint8_t pooling_tag(Pooling p) { return p == Pooling::kMax ? 0 : 1; }

void write_layer(Writer& w, const HwLayer& layer) {
  w.u8(static_cast<std::uint8_t>(layer.backend()));
  std::visit(
      [&w](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ExactLayer>) {
          w.size(l.dim());
          w.u8(static_cast<std::uint8_t>(l.similarity().kind));
          w.f64(l.similarity().gain);
          w.u8(pooling_tag(l.pooling()));
          w.size(l.size());
          for (std::size_t k = 0; k < l.size(); ++k) write_book(w, l.module(k).book());
        } else if constexpr (std::is_same_v<T, SvdLayer>) {
          w.size(l.dim());
          w.size(l.rank());
          w.u8(pooling_tag(l.pooling()));
          w.size(l.size());
          for (std::size_t k = 0; k < l.size(); ++k) {
            const SvdModule& m = l.module(k);
            w.size(m.rank());
            w.u8(m.retains_raw() ? 1 : 0);
            if (m.retains_raw()) write_book(w, *m.raw());
            w.matrix(m.basis());
            w.matrix(m.projected());
            w.size(static_cast<std::size_t>(m.singular_values().size()));
            w.vec(m.singular_values());
          }
        } else if constexpr (std::is_same_v<T, RpLayer>) {
          const RpLayer::Options& o = l.options();
          w.size(l.dim());
          w.size(o.initial_columns);
          w.u64(o.seed);
          w.u8(o.shared ? 1 : 0);
          w.u8(static_cast<std::uint8_t>(o.policy.kind));
          w.f64(o.policy.eps);
          w.f64(o.policy.c);
          w.u8(pooling_tag(o.pooling));
          w.size(l.projections().size());
          for (const RpProjection& p : l.projections()) {
            w.u64(p.seed());
            w.u64(p.draws());
            w.matrix(p.matrix());
          }
          w.size(l.size());
          for (std::size_t k = 0; k < l.size(); ++k) {
            const RpModule& m = l.module(k);
            w.size(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
              w.vec(m.raw()[i]);
              w.size(static_cast<std::size_t>(m.projected_rows()[i].size()));
              w.vec(m.projected_rows()[i]);
            }
          }
        } else {
          const WtaHashFamily& f = l.family();
          w.size(f.dim());
          w.size(f.num_hashes());
          w.size(f.bands());
          w.size(f.window());
          w.u64(f.seed());
          for (std::size_t i = 0; i < f.num_hashes(); ++i)
            for (std::size_t b = 0; b < f.bands(); ++b)
              for (std::uint32_t v : f.permutation(i, b)) w.u32(v);
          w.u8(pooling_tag(l.pooling()));
          w.size(l.size());
          for (std::size_t k = 0; k < l.size(); ++k) {
            const LshModule& m = l.module(k);
            w.size(m.size());
            for (std::size_t j = 0; j < m.size(); ++j) {
              w.vec(m.book()[j]);
              for (const HashCode& h : m.hashes()[j])
                for (std::uint32_t c : h.codes) w.u32(c);
            }
          }
        }
      },
      layer.impl());
}

HwLayer read_layer(Reader& r) {
  const std::uint8_t tag = r.u8();
  switch (static_cast<Backend>(tag)) {
    case Backend::kExact: {
      const std::size_t dim = r.dimension();
      const std::uint8_t kind = r.u8();
      if (kind > 1) corrupt("unknown similarity tag");
      const double gain = r.f64();
      const Pooling pooling = read_pooling(r);
      ExactLayer layer(dim, {static_cast<Similarity::Kind>(kind), gain}, pooling);
      const std::size_t modules = r.count(8);
      for (std::size_t k = 0; k < modules; ++k) layer.add_module(read_book(r, dim));
      return layer;
    }
    case Backend::kSvd: {
      const std::size_t dim = r.dimension();
      const std::size_t rank = r.dimension();
      const Pooling pooling = read_pooling(r);
      SvdLayer layer(dim, rank, pooling);
      const std::size_t modules = r.count(8);
      for (std::size_t k = 0; k < modules; ++k) {
        const std::size_t module_rank = r.dimension();
        std::optional<TemplateBook> raw;
        if (r.u8() != 0) raw = read_book(r, dim);
        Matrix basis = r.matrix();
        Matrix projected = r.matrix();
        Vector sv = r.vec(r.count(8));
        layer.add_module(SvdModule::restore(dim, module_rank, std::move(raw), std::move(basis),
                                            std::move(projected), std::move(sv)));
      }
      return layer;
    }
    case Backend::kRp: {
      const std::size_t dim = r.dimension();
      RpLayer::Options o;
      o.initial_columns = r.dimension();
      o.seed = r.u64();
      o.shared = r.u8() != 0;
      const std::uint8_t policy = r.u8();
      if (policy > 2) corrupt("unknown augmentation policy tag");
      o.policy.kind = static_cast<AugmentPolicy::Kind>(policy);
      o.policy.eps = r.f64();
      o.policy.c = r.f64();
      o.pooling = read_pooling(r);
      std::vector<RpProjection> projections;
      const std::size_t n_proj = r.count(32);
      for (std::size_t p = 0; p < n_proj; ++p) {
        const std::uint64_t seed = r.u64();
        const std::uint64_t draws = r.u64();
        projections.push_back(RpProjection::restore(dim, seed, draws, r.matrix()));
      }
      std::vector<RpModule> modules;
      const std::size_t n_mod = r.count(8);
      for (std::size_t k = 0; k < n_mod; ++k) {
        RpModule m(dim);
        const std::size_t rows = r.count(dim * 8 + 8);
        for (std::size_t i = 0; i < rows; ++i) {
          Vector raw = r.vec(dim);
          Vector row = r.vec(r.count(8));
          m.restore_row(std::move(raw), std::move(row));
        }
        modules.push_back(std::move(m));
      }
      return RpLayer::restore(dim, o, std::move(projections), std::move(modules));
    }
    case Backend::kWta: {
      const std::size_t dim = r.dimension();
      const std::size_t hashes = r.dimension();
      const std::size_t bands = r.dimension();
      const std::size_t window = r.dimension();
      const std::uint64_t seed = r.u64();
      if (hashes == 0 || bands == 0 || dim == 0 || hashes > r.remaining() / 4 / dim / bands) {
        corrupt("WTA family exceeds snapshot length");
      }
      std::vector<std::vector<std::uint32_t>> perms(hashes * bands, std::vector<std::uint32_t>(dim));
      for (auto& p : perms)
        for (std::uint32_t& v : p) v = r.u32();
      WtaHashFamily family = WtaHashFamily::restore(dim, hashes, bands, window, seed, std::move(perms));
      const Pooling pooling = read_pooling(r);
      const std::size_t n_mod = r.count(8);
      std::vector<LshModule> modules;
      for (std::size_t k = 0; k < n_mod; ++k) {
        LshModule m(dim);
        const std::size_t n = r.count(dim * 8 + hashes * bands * 4);
        for (std::size_t j = 0; j < n; ++j) {
          Vector t = r.vec(dim);
          std::vector<HashCode> codes(hashes);
          for (HashCode& h : codes) {
            h.codes.resize(bands);
            for (std::uint32_t& c : h.codes) {
              c = r.u32();
              if (c >= window) corrupt("WTA code outside its window");
            }
          }
          m.restore_entry(std::move(t), std::move(codes));
        }
        modules.push_back(std::move(m));
      }
      LshLayer layer(std::move(family), pooling);
      layer.restore(std::move(modules));
      return layer;
    }
  }
  corrupt("unknown backend tag " + std::to_string(tag));
}

std::vector<std::uint8_t> finish(Writer& w, SnapshotKind kind, auto&& body) {
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kSnapshotVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  body(w);
  const std::uint32_t crc = checksum(w.buffer());
  w.u32(crc);
  return std::move(w.buffer());
}

void write_file(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(Errc::kIoError, "write failed for " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const HwArchitecture& arch) {
  Writer w;
  return finish(w, SnapshotKind::kArchitecture, [&arch](Writer& out) {
    out.size(arch.input_dim());
    out.size(arch.depth());
    for (std::size_t s = 0; s < arch.depth(); ++s) {
      const Stage& stage = arch.stage(s);
      out.size(stage.branches.size());
      for (const Branch& b : stage.branches) {
        out.size(b.offset);
        write_layer(out, b.layer);
      }
    }
  });
}

std::vector<std::uint8_t> encode_snapshot(const CortexHippocampusModel& model) {
  Writer w;
  return finish(w, SnapshotKind::kModel, [&model](Writer& out) {
    write_layer(out, model.cortex1());
    out.u8(model.cortex2() ? 1 : 0);
    if (model.cortex2()) write_layer(out, *model.cortex2());
    write_layer(out, model.hippocampus());
  });
}

Snapshot decode_snapshot(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeader + 4) corrupt("snapshot is truncated");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) corrupt("not an hwarch snapshot");
  Reader header(bytes.subspan(sizeof kMagic, 4));
  const std::uint32_t version = header.u32();
  if (version != kSnapshotVersion) {
    throw Error(Errc::kVersionError, "snapshot version " + std::to_string(version) +
                                         " is not supported (expected " +
                                         std::to_string(kSnapshotVersion) + ")");
  }
  const auto body = bytes.first(bytes.size() - 4);
  Reader trailer(bytes.last(4));
  if (checksum(body) != trailer.u32()) corrupt("snapshot checksum mismatch");

  const std::uint8_t kind = body[sizeof kMagic + 4];
  Reader r(body.subspan(kHeader));
  try {
    auto done = [&r](auto&& value) -> Snapshot {
      if (r.remaining() != 0) corrupt("trailing bytes after snapshot payload");
      return std::forward<decltype(value)>(value);
    };
    switch (static_cast<SnapshotKind>(kind)) {
      case SnapshotKind::kArchitecture: {
        HwArchitecture arch(r.dimension());
        const std::size_t depth = r.count(8);
        std::size_t in_dim = arch.input_dim();
        for (std::size_t s = 0; s < depth; ++s) {
          std::vector<Branch> branches;
          const std::size_t n = r.count(9);
          for (std::size_t b = 0; b < n; ++b) {
            const std::size_t offset = r.dimension();
            branches.push_back({read_layer(r), offset});
            const std::size_t need = branches.back().layer.input_dim();
            if (offset + need > in_dim) corrupt("branch reads past its stage input");
          }
          if (n == 1 && branches.front().layer.input_dim() != in_dim) {
            corrupt("layer dimension does not match its stage input");
          }
          arch.add_stage(std::move(branches));
          in_dim = arch.stage(s).output_dim();
        }
        return done(std::move(arch));
      }
      case SnapshotKind::kModel: {
        HwLayer cortex1 = read_layer(r);
        std::optional<HwLayer> cortex2;
        if (r.u8() != 0) cortex2 = read_layer(r);
        HwLayer hippocampus = read_layer(r);
        return done(CortexHippocampusModel(std::move(cortex1), std::move(cortex2), std::move(hippocampus)));
      }
    }
    corrupt("unknown snapshot kind " + std::to_string(kind));
  } catch (const Error& e) {
    if (e.code() == Errc::kCorruptSnapshot) throw;
    throw Error(Errc::kCorruptSnapshot, std::string("inconsistent snapshot payload: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw Error(Errc::kCorruptSnapshot, std::string("inconsistent snapshot payload: ") + e.what());
  }
}

void save_model(const HwArchitecture& arch, const std::filesystem::path& path) {
  write_file(encode_snapshot(arch), path);
}

void save_model(const CortexHippocampusModel& model, const std::filesystem::path& path) {
  write_file(encode_snapshot(model), path);
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open snapshot " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::kIoError, "cannot read snapshot " + path.string());
  return decode_snapshot(bytes);
}

HwArchitecture load_architecture(const std::filesystem::path& path) {
  Snapshot s = load_snapshot(path);
  if (auto* a = std::get_if<HwArchitecture>(&s)) return std::move(*a);
  throw Error(Errc::kInvalidParams, path.string() + " holds a cortex-hippocampus model");
}

CortexHippocampusModel load_model(const std::filesystem::path& path) {
  Snapshot s = load_snapshot(path);
  if (auto* m = std::get_if<CortexHippocampusModel>(&s)) return std::move(*m);
  throw Error(Errc::kInvalidParams, path.string() + " holds an architecture");
}

}  // namespace hwarch
