#pragma once

// Fixed-order little-endian serialization for NvStore slots. Every encoded
// slot starts with a version byte; round-trips are bit-exact.

#include <cstdint>
#include <cstring>
#include <vector>

#include "il/learners.hpp"
#include "il/selection.hpp"

namespace il::nvcodec {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    u64(bits);
  }
  void doubles(const std::vector<double>& v) {
    u64(v.size());
    for (double x : v) f64(x);
  }
  void str(const std::string& s) {
    u64(s.size());
    out_.insert(out_.end(), s.begin(), s.end());
  }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(const Bytes& b) : data_(b) {}
  std::uint8_t u8() { return data_.at(pos_++); }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_.at(pos_++)) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::vector<double> doubles() {
    std::vector<double> v(u64());
    for (auto& x : v) x = f64();
    return v;
  }
  std::string str() {
    std::string s(u64(), '\0');
    for (auto& c : s) c = static_cast<char>(u8());
    return s;
  }

 private:
  const Bytes& data_;
  std::size_t pos_ = 0;
};

inline Bytes encode_doubles(const std::vector<double>& v) {
  Writer w;
  w.u8(kVersion);
  w.doubles(v);
  return w.take();
}

inline std::vector<double> decode_doubles(const Bytes& b) {
  Reader r(b);
  r.u8();
  return r.doubles();
}

inline Bytes encode_knn(const KnnModel& m) {
  Writer w;
  w.u8(kVersion);
  w.u64(m.capacity);
  w.u64(m.k);
  w.f64(m.percentile);
  w.f64(m.threshold);
  w.u8(m.threshold_valid ? 1 : 0);
  w.u64(m.examples.size());
  for (const auto& e : m.examples) w.doubles(e);
  return w.take();
}

inline KnnModel decode_knn(const Bytes& b) {
  Reader r(b);
  r.u8();
  KnnModel m;
  m.capacity = r.u64();
  m.k = r.u64();
  m.percentile = r.f64();
  m.threshold = r.f64();
  m.threshold_valid = r.u8() != 0;
  std::size_t n = r.u64();
  for (std::size_t i = 0; i < n; ++i) m.examples.push_back(r.doubles());
  return m;
}

inline Bytes encode_km(const KmModel& m) {
  Writer w;
  w.u8(kVersion);
  w.f64(m.eta);
  w.u64(m.weights.size());
  for (const auto& row : m.weights) w.doubles(row);
  for (const auto& label : m.labels) {
    w.u8(label ? 1 : 0);
    if (label) w.str(*label);
  }
  return w.take();
}

inline KmModel decode_km(const Bytes& b) {
  Reader r(b);
  r.u8();
  KmModel m;
  m.eta = r.f64();
  std::size_t n = r.u64();
  for (std::size_t i = 0; i < n; ++i) m.weights.push_back(r.doubles());
  for (std::size_t i = 0; i < n; ++i) {
    if (r.u8()) {
      m.labels.push_back(r.str());
    } else {
      m.labels.push_back(std::nullopt);
    }
  }
  return m;
}

inline Bytes encode_bounds(const NormBounds& nb) {
  Writer w;
  w.u8(kVersion);
  w.u64(nb.observations);
  w.doubles(nb.lo);
  w.doubles(nb.hi);
  return w.take();
}

inline NormBounds decode_bounds(const Bytes& b) {
  Reader r(b);
  r.u8();
  NormBounds nb;
  nb.observations = r.u64();
  nb.lo = r.doubles();
  nb.hi = r.doubles();
  return nb;
}

inline Bytes encode_selwin(const SelectionWindow& sw) {
  Writer w;
  w.u8(kVersion);
  w.u64(sw.k);
  w.u64(static_cast<std::uint64_t>(sw.rr_counter));
  w.u64(sw.per_cluster_counts.size());
  for (auto c : sw.per_cluster_counts) w.u64(static_cast<std::uint64_t>(c));
  w.u64(sw.selected.size());
  for (const auto& v : sw.selected) w.doubles(v);
  w.u64(sw.rejected.size());
  for (const auto& v : sw.rejected) w.doubles(v);
  return w.take();
}

inline SelectionWindow decode_selwin(const Bytes& b) {
  Reader r(b);
  r.u8();
  SelectionWindow sw;
  sw.k = r.u64();
  sw.rr_counter = static_cast<std::int64_t>(r.u64());
  std::size_t nc = r.u64();
  for (std::size_t i = 0; i < nc; ++i) {
    sw.per_cluster_counts.push_back(static_cast<std::int64_t>(r.u64()));
  }
  std::size_t ns = r.u64();
  for (std::size_t i = 0; i < ns; ++i) sw.selected.push_back(r.doubles());
  std::size_t nr = r.u64();
  for (std::size_t i = 0; i < nr; ++i) sw.rejected.push_back(r.doubles());
  return sw;
}

}  // namespace il::nvcodec
