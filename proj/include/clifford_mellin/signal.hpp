#pragma once

// Multivector-valued signals on a uniform (s = ln r, theta) grid.
//
// Node (i, l) sits at s_i = smin + i ds, theta_l = l dtheta with
// ds = (smax - smin) / ns and dtheta = 2 pi / ntheta. Both axes are periodic,
// and the measure dtheta dr/r = dtheta ds becomes the uniform weight ds dtheta.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/errors.hpp"
#include "clifford_mellin/io.hpp"
#include "clifford_mellin/parallel.hpp"
#include "clifford_mellin/roots.hpp"
#include "clifford_mellin/split.hpp"

namespace clifford_mellin {

struct GridGeometry {
  std::size_t ns = 64;
  std::size_t ntheta = 64;
  double smin = -std::numbers::pi;
  double smax = std::numbers::pi;

  void validate() const {
    if (ns < 2 || ntheta < 2 || ns % 2 != 0 || ntheta % 2 != 0) {
      throw GeometryError("grid sizes must be even and >= 2 (got ns=" +
                          std::to_string(ns) +
                          ", ntheta=" + std::to_string(ntheta) + ")");
    }
    if (!(smax > smin) || !std::isfinite(smin) || !std::isfinite(smax)) {
      throw GeometryError("grid needs finite smin < smax");
    }
  }

  double span() const { return smax - smin; }
  double ds() const { return span() / static_cast<double>(ns); }
  double dtheta() const {
    return 2.0 * std::numbers::pi / static_cast<double>(ntheta);
  }
  double s_at(std::size_t i) const {
    return smin + static_cast<double>(i) * ds();
  }
  double theta_at(std::size_t l) const {
    return static_cast<double>(l) * dtheta();
  }
  /// Frequency spacing of the log-radial axis, 2 pi / S.
  double dv() const { return 2.0 * std::numbers::pi / span(); }
  std::size_t size() const { return ns * ntheta; }

  /// smin = -smax, so that s -> -s maps the grid onto itself.
  bool symmetric() const {
    return std::abs(smin + smax) <= 1e-12 * span();
  }

  /// s = 0 is a grid node, which makes the radial kernel periodic in the
  /// frequency index with period ns.
  bool contains_origin() const {
    const double steps = -smin / ds();
    return std::abs(steps - std::round(steps)) <= 1e-9;
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

class LogPolarSignal {
 public:
  LogPolarSignal(GridGeometry geometry, Signature sig)
      : geometry_(checked(geometry)),
        sig_(sig),
        samples_(geometry.size(), Multivector(sig)) {}

  LogPolarSignal(GridGeometry geometry, Signature sig,
                 std::vector<Multivector> samples)
      : geometry_(checked(geometry)), sig_(sig), samples_(std::move(samples)) {
    if (samples_.size() != geometry_.size()) {
      throw GeometryError("signal has " + std::to_string(samples_.size()) +
                          " samples, grid needs " +
                          std::to_string(geometry_.size()));
    }
    for (const Multivector& m : samples_) {
      if (!(m.signature() == sig_)) {
        throw DomainError("signal samples must share the signal's algebra");
      }
      for (std::size_t c = 0; c < 4; ++c) {
        if (!std::isfinite(m[c])) {
          throw DomainError("signal samples must be finite");
        }
      }
    }
  }

  /// Samples fn(s, theta) at every node.
  template <class Fn>
  static LogPolarSignal from_function(GridGeometry geometry, Signature sig,
                                      Fn&& fn) {
    LogPolarSignal out(geometry, sig);
    for (std::size_t i = 0; i < geometry.ns; ++i) {
      for (std::size_t l = 0; l < geometry.ntheta; ++l) {
        out.at(i, l) = fn(geometry.s_at(i), geometry.theta_at(l));
      }
    }
    return out;
  }

  const GridGeometry& geometry() const { return geometry_; }
  Signature signature() const { return sig_; }
  std::span<const Multivector> samples() const { return samples_; }
  std::span<Multivector> samples() { return samples_; }

  const Multivector& at(std::size_t i, std::size_t l) const {
    return samples_[i * geometry_.ntheta + l];
  }
  Multivector& at(std::size_t i, std::size_t l) {
    return samples_[i * geometry_.ntheta + l];
  }

  void require_compatible(const LogPolarSignal& o, const char* what) const {
    if (!(geometry_ == o.geometry_)) {
      throw GeometryError(std::string("grid mismatch in ") + what);
    }
    if (!(sig_ == o.sig_)) {
      throw DomainError(std::string("signature mismatch in ") + what);
    }
  }

 private:
  static GridGeometry checked(GridGeometry g) {
    g.validate();
    return g;
  }

  GridGeometry geometry_;
  Signature sig_;
  std::vector<Multivector> samples_;
};

/// Pointwise map of one or two signals into a new signal on the same grid.
template <class Fn>
LogPolarSignal map_samples(const LogPolarSignal& a, Fn&& fn) {
  std::vector<Multivector> out(a.samples().begin(), a.samples().end());
  for (Multivector& m : out) m = fn(m);
  return LogPolarSignal(a.geometry(), a.signature(), std::move(out));
}

inline LogPolarSignal operator+(const LogPolarSignal& a,
                                const LogPolarSignal& b) {
  a.require_compatible(b, "signal addition");
  LogPolarSignal out = a;
  for (std::size_t n = 0; n < out.samples().size(); ++n) {
    out.samples()[n] += b.samples()[n];
  }
  return out;
}

inline LogPolarSignal operator-(const LogPolarSignal& a,
                                const LogPolarSignal& b) {
  a.require_compatible(b, "signal subtraction");
  LogPolarSignal out = a;
  for (std::size_t n = 0; n < out.samples().size(); ++n) {
    out.samples()[n] -= b.samples()[n];
  }
  return out;
}

inline double max_abs_diff(const LogPolarSignal& a, const LogPolarSignal& b) {
  a.require_compatible(b, "comparison");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.samples().size(); ++n) {
    worst = std::max(worst, max_abs_diff(a.samples()[n], b.samples()[n]));
  }
  return worst;
}

inline double max_modulus(std::span<const Multivector> values) {
  double m = 0.0;
  for (const Multivector& v : values) m = std::max(m, modulus(v));
  return m;
}

/// (a, b) = sum a ~b ds dtheta.
inline Multivector inner_product(const LogPolarSignal& a,
                                 const LogPolarSignal& b) {
  a.require_compatible(b, "inner_product");
  std::vector<Multivector> terms(a.samples().size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    terms[n] = a.samples()[n] * principal_reverse(b.samples()[n]);
  }
  const auto& g = a.geometry();
  return pairwise_sum<Multivector>(terms) * (g.ds() * g.dtheta());
}

/// <a, b> = sum a * ~b ds dtheta.
inline double scalar_inner_product(const LogPolarSignal& a,
                                   const LogPolarSignal& b) {
  a.require_compatible(b, "scalar_inner_product");
  std::vector<double> terms(a.samples().size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    terms[n] = scalar_product(a.samples()[n], principal_reverse(b.samples()[n]));
  }
  const auto& g = a.geometry();
  return pairwise_sum<double>(terms) * (g.ds() * g.dtheta());
}

inline double norm(const LogPolarSignal& a) {
  std::vector<double> terms(a.samples().size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    terms[n] = modulus_squared(a.samples()[n]);
  }
  const auto& g = a.geometry();
  return std::sqrt(pairwise_sum<double>(terms) * g.ds() * g.dtheta());
}

struct SignalSplit {
  LogPolarSignal plus;
  LogPolarSignal minus;
};

inline SignalSplit split_signal(const LogPolarSignal& a, const RootPair& pair) {
  if (!(a.signature() == pair.signature())) {
    throw DomainError("split_signal: signal and roots from different algebras");
  }
  SignalSplit out{LogPolarSignal(a.geometry(), a.signature()),
                  LogPolarSignal(a.geometry(), a.signature())};
  for (std::size_t n = 0; n < a.samples().size(); ++n) {
    const SplitPair sp = split(a.samples()[n], pair);
    out.plus.samples()[n] = sp.plus;
    out.minus.samples()[n] = sp.minus;
  }
  return out;
}

// CLMS v1: "CLMS v1" magic line, then algebra/ns/ntheta/smin/smax header lines,
// then 4 ns ntheta little-endian doubles (m0, m1, m2, m12 per sample,
// row-major with s as the slow axis).

inline std::string encode_signal(const LogPolarSignal& h) {
  const GridGeometry& g = h.geometry();
  std::string out = "CLMS v1\n";
  out += "algebra=" + to_string(h.signature()) + "\n";
  out += "ns=" + std::to_string(g.ns) + "\n";
  out += "ntheta=" + std::to_string(g.ntheta) + "\n";
  out += "smin=" + io::format_double(g.smin) + "\n";
  out += "smax=" + io::format_double(g.smax) + "\n";
  out.reserve(out.size() + 32 * g.size());
  for (const Multivector& m : h.samples()) {
    for (std::size_t c = 0; c < 4; ++c) io::append_f64_le(out, m[c]);
  }
  return out;
}

inline LogPolarSignal decode_signal(const std::vector<std::uint8_t>& bytes) {
  io::HeaderCursor cur(bytes);
  cur.expect_line("CLMS v1");
  const std::size_t at_algebra = cur.offset();
  Signature sig;
  try {
    sig = parse_signature(cur.value("algebra"));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), at_algebra);
  }
  GridGeometry g;
  g.ns = cur.count("ns");
  g.ntheta = cur.count("ntheta");
  g.smin = cur.real("smin");
  const std::size_t at_geometry = cur.offset();
  g.smax = cur.real("smax");
  try {
    g.validate();
  } catch (const GeometryError& e) {
    throw ParseError(e.what(), at_geometry);
  }
  const std::vector<double> values = cur.payload(4 * g.size());
  std::vector<Multivector> samples(g.size(), Multivector(sig));
  for (std::size_t n = 0; n < g.size(); ++n) {
    for (std::size_t c = 0; c < 4; ++c) samples[n][c] = values[4 * n + c];
  }
  return LogPolarSignal(g, sig, std::move(samples));
}

inline void write_signal(const std::filesystem::path& path,
                         const LogPolarSignal& h) {
  io::write_atomic(path, encode_signal(h));
}

inline LogPolarSignal read_signal(const std::filesystem::path& path) {
  return decode_signal(io::read_bytes(path));
}

}  // namespace clifford_mellin
