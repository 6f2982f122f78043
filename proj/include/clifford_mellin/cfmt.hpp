#pragma once

// Clifford Fourier-Mellin transform on a log-polar grid:
//
//   H(v_j, k) = ds dtheta / (2 pi) * sum_{i,l} e^{-f v_j s_i} h(s_i, theta_l)
//                                               e^{-g k theta_l}
//   h(s_i, theta_l) = 1/S * sum_{j,k} e^{f v_j s_i} H(v_j, k) e^{g k theta_l}
//
// with v_j = 2 pi j / S, j in [-ns/2, ns/2), k in [-ntheta/2, ntheta/2).
// The kernel order (radial on the left, angular on the right) is never changed
// for unsplit data.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/fft.hpp"
#include "clifford_mellin/io.hpp"
#include "clifford_mellin/parallel.hpp"
#include "clifford_mellin/roots.hpp"
#include "clifford_mellin/signal.hpp"
#include "clifford_mellin/split.hpp"

namespace clifford_mellin {

/// CFMT coefficients stored in centered frequency order: row j + ns/2,
/// column k + ntheta/2.
class Spectrum {
 public:
  Spectrum(GridGeometry geometry, RootPair pair)
      : geometry_(checked(geometry)),
        pair_(std::move(pair)),
        coeffs_(geometry.size(), Multivector(pair_.signature())) {}

  Spectrum(GridGeometry geometry, RootPair pair,
           std::vector<Multivector> coeffs)
      : geometry_(checked(geometry)),
        pair_(std::move(pair)),
        coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != geometry_.size()) {
      throw GeometryError("spectrum size does not match its grid");
    }
    for (const Multivector& m : coeffs_) {
      if (!(m.signature() == pair_.signature())) {
        throw DomainError("spectrum coefficients must share the roots' algebra");
      }
    }
  }

  const GridGeometry& geometry() const { return geometry_; }
  const RootPair& pair() const { return pair_; }
  Signature signature() const { return pair_.signature(); }
  std::span<const Multivector> coeffs() const { return coeffs_; }
  std::span<Multivector> coeffs() { return coeffs_; }

  int j_min() const { return -static_cast<int>(geometry_.ns / 2); }
  int j_max() const { return static_cast<int>(geometry_.ns / 2) - 1; }
  int k_min() const { return -static_cast<int>(geometry_.ntheta / 2); }
  int k_max() const { return static_cast<int>(geometry_.ntheta / 2) - 1; }

  double v(int j) const { return geometry_.dv() * j; }

  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j - j_min()) * geometry_.ntheta +
           static_cast<std::size_t>(k - k_min());
  }
  int j_of(std::size_t index) const {
    return static_cast<int>(index / geometry_.ntheta) + j_min();
  }
  int k_of(std::size_t index) const {
    return static_cast<int>(index % geometry_.ntheta) + k_min();
  }

  const Multivector& at(int j, int k) const { return coeffs_[index(j, k)]; }
  Multivector& at(int j, int k) { return coeffs_[index(j, k)]; }

  void require_compatible(const Spectrum& o, const char* what) const {
    if (!(geometry_ == o.geometry_)) {
      throw GeometryError(std::string("grid mismatch in ") + what);
    }
    if (!pair_.same_as(o.pair_)) {
      throw ContractError(std::string("spectra from different root pairs in ") +
                          what);
    }
  }

 private:
  static GridGeometry checked(GridGeometry g) {
    g.validate();
    return g;
  }

  GridGeometry geometry_;
  RootPair pair_;
  std::vector<Multivector> coeffs_;
};

inline double max_abs_diff(const Spectrum& a, const Spectrum& b) {
  a.require_compatible(b, "comparison");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.coeffs().size(); ++n) {
    worst = std::max(worst, max_abs_diff(a.coeffs()[n], b.coeffs()[n]));
  }
  return worst;
}

inline Spectrum operator+(const Spectrum& a, const Spectrum& b) {
  a.require_compatible(b, "spectrum addition");
  Spectrum out = a;
  for (std::size_t n = 0; n < out.coeffs().size(); ++n) {
    out.coeffs()[n] += b.coeffs()[n];
  }
  return out;
}

inline Spectrum operator-(const Spectrum& a, const Spectrum& b) {
  a.require_compatible(b, "spectrum subtraction");
  Spectrum out = a;
  for (std::size_t n = 0; n < out.coeffs().size(); ++n) {
    out.coeffs()[n] -= b.coeffs()[n];
  }
  return out;
}

/// ||H||^2 = sum |H|^2 dv (weight 1 per angular index).
inline double norm(const Spectrum& h) {
  std::vector<double> terms(h.coeffs().size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    terms[n] = modulus_squared(h.coeffs()[n]);
  }
  return std::sqrt(pairwise_sum<double>(terms) * h.geometry().dv());
}

/// <H, M> = sum H * ~M dv.
inline double scalar_inner_product(const Spectrum& a, const Spectrum& b) {
  a.require_compatible(b, "scalar_inner_product");
  std::vector<double> terms(a.coeffs().size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    terms[n] = scalar_product(a.coeffs()[n], principal_reverse(b.coeffs()[n]));
  }
  return pairwise_sum<double>(terms) * a.geometry().dv();
}

struct SpectrumSplit {
  Spectrum plus;
  Spectrum minus;
};

inline SpectrumSplit split_spectrum(const Spectrum& h) {
  SpectrumSplit out{Spectrum(h.geometry(), h.pair()),
                    Spectrum(h.geometry(), h.pair())};
  for (std::size_t n = 0; n < h.coeffs().size(); ++n) {
    const SplitPair sp = split(h.coeffs()[n], h.pair());
    out.plus.coeffs()[n] = sp.plus;
    out.minus.coeffs()[n] = sp.minus;
  }
  return out;
}

/// Right multiplication by g is a complex structure on the coefficient space
/// (R_g^2 = -1). `basis` has columns u1, u1 g, u2, u2 g, so that
/// x = basis * (a1, b1, a2, b2) and x e^{g phi} corresponds to multiplying
/// z_m = a_m + i b_m by e^{i phi}.
struct ComplexStructure {
  Matrix4<double> basis{};
  Matrix4<double> inverse{};

  std::array<std::complex<double>, 2> coords(const Multivector& x) const {
    const auto c = detail::apply(inverse, x.coeffs());
    return {{{c[0], c[1]}, {c[2], c[3]}}};
  }

  Multivector assemble(Signature sig, std::complex<double> z1,
                       std::complex<double> z2) const {
    return Multivector(sig, detail::apply(basis, {z1.real(), z1.imag(),
                                                  z2.real(), z2.imag()}));
  }
};

/// Picks the pair of basis blades (u1, u2) whose planes are closest to
/// orthogonal, measured by |det| over the product of column norms.
inline ComplexStructure right_complex_structure(const Multivector& g) {
  const Signature sig = g.signature();
  ComplexStructure best;
  double best_ratio = -1.0;
  double best_det = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      const Multivector u1 = Multivector::basis(sig, a);
      const Multivector u2 = Multivector::basis(sig, b);
      const std::array<Multivector, 4> cols{u1, u1 * g, u2, u2 * g};
      Matrix4<double> m{};
      double norms = 1.0;
      for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t r = 0; r < 4; ++r) m[r][c] = cols[c][r];
        norms *= modulus(cols[c]);
      }
      const double det = detail::determinant(m);
      const double ratio = std::abs(det) / norms;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_det = det;
        best.basis = m;
      }
    }
  }
  if (!(best_ratio > 1e-12)) {
    throw SingularityError("right action of g has no complex structure");
  }
  best.inverse = detail::inverse_with_det(best.basis, best_det);
  return best;
}

namespace detail {

inline void require_same_algebra(const LogPolarSignal& h, const RootPair& pair,
                                 const char* what) {
  if (!(h.signature() == pair.signature())) {
    throw DomainError(std::string(what) + ": signal is " +
                      to_string(h.signature()) + " but roots are " +
                      to_string(pair.signature()));
  }
}

}  // namespace detail

/// The defining double sum at one real frequency pair (v, k). Used as the
/// oracle for the fast path and, with T = long double, for finite differences
/// in v and k.
template <std::floating_point T = double>
BasicMultivector<T> cfmt_direct(const LogPolarSignal& h, const RootPair& pair,
                                T v, T k) {
  detail::require_same_algebra(h, pair, "cfmt_direct");
  const GridGeometry& geo = h.geometry();
  const Signature sig = h.signature();
  const BasicMultivector<T> f(pair.f());
  const BasicMultivector<T> g(pair.g());
  const T ds = static_cast<T>(geo.span()) / static_cast<T>(geo.ns);
  const T dtheta = 2 * std::numbers::pi_v<T> / static_cast<T>(geo.ntheta);

  std::vector<BasicMultivector<T>> right(geo.ntheta);
  for (std::size_t l = 0; l < geo.ntheta; ++l) {
    right[l] = exp_root(-k * static_cast<T>(l) * dtheta, g);
  }
  BasicMultivector<T> total(sig);
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const T s = static_cast<T>(geo.smin) + static_cast<T>(i) * ds;
    BasicMultivector<T> row(sig);
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      row += BasicMultivector<T>(h.at(i, l)) * right[l];
    }
    total += exp_root(-v * s, f) * row;
  }
  return total * (ds * dtheta / (2 * std::numbers::pi_v<T>));
}

/// Direct double sum evaluated at the listed centered bins (j, k) only.
inline std::vector<Multivector> cfmt_direct_bins(
    const LogPolarSignal& h, const RootPair& pair,
    std::span<const std::pair<int, int>> bins) {
  detail::require_same_algebra(h, pair, "cfmt_direct_bins");
  const GridGeometry& geo = h.geometry();
  std::vector<Multivector> out(bins.size(), Multivector(h.signature()));
  parallel_for(bins.size(), [&](std::size_t b) {
    out[b] = cfmt_direct<double>(h, pair, geo.dv() * bins[b].first,
                                 static_cast<double>(bins[b].second));
  });
  return out;
}

/// Direct double sum at every grid frequency: O(N^2) in the sample count.
inline Spectrum cfmt_direct_grid(const LogPolarSignal& h,
                                 const RootPair& pair) {
  detail::require_same_algebra(h, pair, "cfmt_direct_grid");
  Spectrum out(h.geometry(), pair);
  std::vector<std::pair<int, int>> bins(out.coeffs().size());
  for (std::size_t n = 0; n < bins.size(); ++n) {
    bins[n] = {out.j_of(n), out.k_of(n)};
  }
  std::vector<Multivector> values = cfmt_direct_bins(h, pair, bins);
  std::copy(values.begin(), values.end(), out.coeffs().begin());
  return out;
}

/// Fast path through the +- split. On each split part the radial kernel moves
/// to the right (e^{-f v s} h_+ = h_+ e^{g v s}, e^{-f v s} h_- = h_- e^{-g v s}),
/// so both kernels act from the right inside the complex subalgebra span{1, g}
/// and each part becomes two ordinary complex 2D DFTs.
inline Spectrum cfmt_fast(const LogPolarSignal& h, const RootPair& pair) {
  detail::require_same_algebra(h, pair, "cfmt_fast");
  const GridGeometry& geo = h.geometry();
  const std::size_t ns = geo.ns;
  const std::size_t nt = geo.ntheta;
  const std::size_t plane = ns * nt;
  const ComplexStructure cs = right_complex_structure(pair.g());

  // Channels: plus z1, plus z2, minus z1, minus z2.
  std::vector<std::complex<double>> buf(4 * plane);
  parallel_for(ns, [&](std::size_t i) {
    for (std::size_t l = 0; l < nt; ++l) {
      const std::size_t n = i * nt + l;
      const SplitPair sp = split(h.at(i, l), pair);
      const auto zp = cs.coords(sp.plus);
      const auto zm = cs.coords(sp.minus);
      buf[n] = zp[0];
      buf[plane + n] = zp[1];
      buf[2 * plane + n] = zm[0];
      buf[3 * plane + n] = zm[1];
    }
  });
  Fft2d(ns, nt, 4).forward(buf);

  Spectrum out(geo, pair);
  const double scale = geo.ds() * geo.dtheta() / (2.0 * std::numbers::pi);
  const Signature sig = h.signature();
  parallel_for(ns, [&](std::size_t row) {
    const int j = static_cast<int>(row) + out.j_min();
    const std::complex<double> phase =
        scale * std::polar(1.0, out.v(j) * geo.smin);
    const std::size_t jp = wrap_index(-j, ns);
    const std::size_t jm = wrap_index(j, ns);
    for (int k = out.k_min(); k <= out.k_max(); ++k) {
      const std::size_t kk = wrap_index(k, nt);
      const std::size_t np = jp * nt + kk;
      const std::size_t nm = jm * nt + kk;
      const Multivector plus =
          cs.assemble(sig, phase * buf[np], phase * buf[plane + np]);
      const Multivector minus =
          cs.assemble(sig, std::conj(phase) * buf[2 * plane + nm],
                      std::conj(phase) * buf[3 * plane + nm]);
      out.at(j, k) = plus + minus;
    }
  });
  return out;
}

/// Forward transform; always evaluated through the fast path.
inline Spectrum cfmt_forward(const LogPolarSignal& h, const RootPair& pair) {
  return cfmt_fast(h, pair);
}

/// Inverse through the same split: on H_+ the radial kernel becomes
/// e^{-g v s} on the right, on H_- it becomes e^{+g v s}.
inline LogPolarSignal cfmt_inverse(const Spectrum& spectrum) {
  const GridGeometry& geo = spectrum.geometry();
  const RootPair& pair = spectrum.pair();
  const std::size_t ns = geo.ns;
  const std::size_t nt = geo.ntheta;
  const std::size_t plane = ns * nt;
  const ComplexStructure cs = right_complex_structure(pair.g());

  std::vector<std::complex<double>> buf(4 * plane);
  parallel_for(ns, [&](std::size_t row) {
    const int j = static_cast<int>(row) + spectrum.j_min();
    const std::complex<double> phase =
        std::polar(1.0, spectrum.v(j) * geo.smin);
    const std::size_t jp = wrap_index(j, ns);
    const std::size_t jm = wrap_index(-j, ns);
    for (int k = spectrum.k_min(); k <= spectrum.k_max(); ++k) {
      const std::size_t kk = wrap_index(-k, nt);
      const SplitPair sp = split(spectrum.at(j, k), pair);
      const auto zp = cs.coords(sp.plus);
      const auto zm = cs.coords(sp.minus);
      buf[jp * nt + kk] = std::conj(phase) * zp[0];
      buf[plane + jp * nt + kk] = std::conj(phase) * zp[1];
      buf[2 * plane + jm * nt + kk] = phase * zm[0];
      buf[3 * plane + jm * nt + kk] = phase * zm[1];
    }
  });
  Fft2d(ns, nt, 4).forward(buf);

  LogPolarSignal out(geo, spectrum.signature());
  const double scale = 1.0 / geo.span();
  const Signature sig = spectrum.signature();
  for (std::size_t n = 0; n < plane; ++n) {
    out.samples()[n] =
        cs.assemble(sig, scale * buf[n], scale * buf[plane + n]) +
        cs.assemble(sig, scale * buf[2 * plane + n], scale * buf[3 * plane + n]);
  }
  return out;
}

/// The inverse Riemann sum evaluated term by term; O(N^2).
inline LogPolarSignal cfmt_inverse_direct(const Spectrum& spectrum) {
  const GridGeometry& geo = spectrum.geometry();
  const RootPair& pair = spectrum.pair();
  const Signature sig = spectrum.signature();
  LogPolarSignal out(geo, sig);
  parallel_for(geo.ns, [&](std::size_t i) {
    const double s = geo.s_at(i);
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      const double theta = geo.theta_at(l);
      Multivector total(sig);
      for (int j = spectrum.j_min(); j <= spectrum.j_max(); ++j) {
        Multivector row(sig);
        for (int k = spectrum.k_min(); k <= spectrum.k_max(); ++k) {
          row += spectrum.at(j, k) * exp_root(k * theta, pair.g());
        }
        total += exp_root(spectrum.v(j) * s, pair.f()) * row;
      }
      out.at(i, l) = total / geo.span();
    }
  });
  return out;
}

// CLMF v1: "CLMF v1" magic line, algebra/ns/ntheta/smin/smax/f/g header lines,
// then 4 ns ntheta little-endian doubles in centered frequency order (j slow,
// k fast, both from their most negative value).

inline std::string encode_spectrum(const Spectrum& h) {
  const GridGeometry& g = h.geometry();
  std::string out = "CLMF v1\n";
  out += "algebra=" + to_string(h.signature()) + "\n";
  out += "ns=" + std::to_string(g.ns) + "\n";
  out += "ntheta=" + std::to_string(g.ntheta) + "\n";
  out += "smin=" + io::format_double(g.smin) + "\n";
  out += "smax=" + io::format_double(g.smax) + "\n";
  out += "f=" + format_multivector(h.pair().f()) + "\n";
  out += "g=" + format_multivector(h.pair().g()) + "\n";
  out.reserve(out.size() + 32 * g.size());
  for (const Multivector& m : h.coeffs()) {
    for (std::size_t c = 0; c < 4; ++c) io::append_f64_le(out, m[c]);
  }
  return out;
}

inline Spectrum decode_spectrum(const std::vector<std::uint8_t>& bytes) {
  io::HeaderCursor cur(bytes);
  cur.expect_line("CLMF v1");
  const std::size_t at_algebra = cur.offset();
  Signature sig;
  try {
    sig = parse_signature(cur.value("algebra"));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), at_algebra);
  }
  GridGeometry geo;
  geo.ns = cur.count("ns");
  geo.ntheta = cur.count("ntheta");
  geo.smin = cur.real("smin");
  const std::size_t at_geometry = cur.offset();
  geo.smax = cur.real("smax");
  try {
    geo.validate();
  } catch (const GeometryError& e) {
    throw ParseError(e.what(), at_geometry);
  }
  const std::size_t at_roots = cur.offset();
  const std::string f_text = cur.value("f");
  const std::string g_text = cur.value("g");
  std::optional<RootPair> pair;
  try {
    pair.emplace(RootPair::from(parse_multivector(f_text, sig),
                                parse_multivector(g_text, sig)));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid roots: ") + e.what(), at_roots);
  }
  const std::vector<double> values = cur.payload(4 * geo.size());
  std::vector<Multivector> coeffs(geo.size(), Multivector(sig));
  for (std::size_t n = 0; n < geo.size(); ++n) {
    for (std::size_t c = 0; c < 4; ++c) coeffs[n][c] = values[4 * n + c];
  }
  return Spectrum(geo, *pair, std::move(coeffs));
}

inline void write_spectrum(const std::filesystem::path& path,
                           const Spectrum& h) {
  io::write_atomic(path, encode_spectrum(h));
}

inline Spectrum read_spectrum(const std::filesystem::path& path) {
  return decode_spectrum(io::read_bytes(path));
}

/// CSV with header "j,k,v,m0,m1,m2,m12".
inline void write_spectrum_csv(std::ostream& out, const Spectrum& h) {
  out << "j,k,v,m0,m1,m2,m12\n";
  char buf[160];
  for (std::size_t n = 0; n < h.coeffs().size(); ++n) {
    const Multivector& m = h.coeffs()[n];
    const int j = h.j_of(n);
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", j,
                  h.k_of(n), h.v(j), m[0], m[1], m[2], m[3]);
    out << buf;
  }
}

}  // namespace clifford_mellin
