#pragma once

// Executable forms of the transform properties: linearity, scale/rotation
// covariance, reflections, modulation, derivative and power-scaling rules,
// Plancherel/Parseval, and the parity separation of real signals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/cfmt.hpp"
#include "clifford_mellin/fft.hpp"
#include "clifford_mellin/signal.hpp"
#include "clifford_mellin/split.hpp"

namespace clifford_mellin {

/// max |a - b| over the largest modulus present (0 when both vanish).
inline double relative_residual(std::span<const Multivector> a,
                                std::span<const Multivector> b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    diff = std::max(diff, max_abs_diff(a[n], b[n]));
    scale = std::max({scale, modulus(a[n]), modulus(b[n])});
  }
  return scale > 0.0 ? diff / scale : 0.0;
}

inline double relative_residual(const Spectrum& a, const Spectrum& b) {
  a.require_compatible(b, "relative_residual");
  return relative_residual(a.coeffs(), b.coeffs());
}

/// Distance of x from span{1, r} for a root r (1 and r are orthogonal because
/// roots have no scalar part).
inline double off_span_one_root(const Multivector& x, const Multivector& r) {
  Multivector rest = x;
  rest[kScalar] = 0.0;
  const double along = scalar_product(rest, principal_reverse(r)) /
                       modulus_squared(r);
  return modulus(rest - along * r);
}

// ---------------------------------------------------------------- linearity

struct LinearityResiduals {
  double left = 0.0;
  double right = 0.0;
};

/// Left coefficients must lie in span{1, f}, right ones in span{1, g}.
inline LinearityResiduals check_linearity(
    const LogPolarSignal& h1, const LogPolarSignal& h2, const RootPair& pair,
    const Multivector& alpha, const Multivector& beta,
    const Multivector& alpha_right, const Multivector& beta_right) {
  h1.require_compatible(h2, "check_linearity");
  auto require_span = [](const Multivector& c, const Multivector& root,
                         const char* name) {
    if (off_span_one_root(c, root) > 1e-12 * std::max(1.0, modulus(c))) {
      throw ContractError(std::string("linearity coefficient ") + name +
                          " is outside its subalgebra");
    }
  };
  require_span(alpha, pair.f(), "alpha (span{1,f})");
  require_span(beta, pair.f(), "beta (span{1,f})");
  require_span(alpha_right, pair.g(), "alpha' (span{1,g})");
  require_span(beta_right, pair.g(), "beta' (span{1,g})");

  const Spectrum t1 = cfmt_forward(h1, pair);
  const Spectrum t2 = cfmt_forward(h2, pair);

  LogPolarSignal left_mix(h1.geometry(), h1.signature());
  LogPolarSignal right_mix(h1.geometry(), h1.signature());
  for (std::size_t n = 0; n < h1.samples().size(); ++n) {
    left_mix.samples()[n] = alpha * h1.samples()[n] + beta * h2.samples()[n];
    right_mix.samples()[n] =
        h1.samples()[n] * alpha_right + h2.samples()[n] * beta_right;
  }
  const Spectrum left = cfmt_forward(left_mix, pair);
  const Spectrum right = cfmt_forward(right_mix, pair);
  Spectrum left_expected(h1.geometry(), pair);
  Spectrum right_expected(h1.geometry(), pair);
  for (std::size_t n = 0; n < t1.coeffs().size(); ++n) {
    left_expected.coeffs()[n] = alpha * t1.coeffs()[n] + beta * t2.coeffs()[n];
    right_expected.coeffs()[n] =
        t1.coeffs()[n] * alpha_right + t2.coeffs()[n] * beta_right;
  }
  return {relative_residual(left, left_expected),
          relative_residual(right, right_expected)};
}

// ------------------------------------------------- scaling, rotation, flips

/// m(s, theta) = h(s + a_shift ds, theta + phi_shift dtheta) on the cyclic
/// grid, i.e. m(r, theta) = h(a r, theta + phi) with a = e^{a_shift ds}.
inline LogPolarSignal apply_scale_rotate(const LogPolarSignal& h, long a_shift,
                                         long phi_shift) {
  const GridGeometry& geo = h.geometry();
  LogPolarSignal out(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const std::size_t si = wrap_index(static_cast<long>(i) + a_shift, geo.ns);
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      const std::size_t sl =
          wrap_index(static_cast<long>(l) + phi_shift, geo.ntheta);
      out.at(i, l) = h.at(si, sl);
    }
  }
  return out;
}

/// Same as apply_scale_rotate for a scale factor a > 0 and angle phi that must
/// be whole grid steps; anything else needs resampling.
inline LogPolarSignal apply_scale_rotate_by(const LogPolarSignal& h,
                                            double scale, double angle) {
  if (!(scale > 0.0)) throw ContractError("scale factor must be positive");
  const double a_steps = std::log(scale) / h.geometry().ds();
  const double phi_steps = angle / h.geometry().dtheta();
  if (std::abs(a_steps - std::round(a_steps)) > 1e-9 ||
      std::abs(phi_steps - std::round(phi_steps)) > 1e-9) {
    throw ContractError(
        "scale/rotation is not a whole number of grid steps; resample instead");
  }
  return apply_scale_rotate(h, std::lround(a_steps), std::lround(phi_steps));
}

struct CovarianceResiduals {
  double covariance = 0.0;  // m^ vs e^{f v s_a} h^ e^{g k phi}
  double magnitude = 0.0;   // | |m^| - |h^| |, relative
};

inline CovarianceResiduals scale_rotate_residuals(const LogPolarSignal& h,
                                                  const RootPair& pair,
                                                  long a_shift,
                                                  long phi_shift) {
  const Spectrum base = cfmt_forward(h, pair);
  const Spectrum moved = cfmt_forward(apply_scale_rotate(h, a_shift, phi_shift), pair);
  const GridGeometry& geo = h.geometry();
  const double s_a = static_cast<double>(a_shift) * geo.ds();
  const double phi = static_cast<double>(phi_shift) * geo.dtheta();
  Spectrum expected(geo, pair);
  double mag_diff = 0.0;
  double mag_scale = 0.0;
  for (int j = base.j_min(); j <= base.j_max(); ++j) {
    const Multivector left = exp_root(base.v(j) * s_a, pair.f());
    for (int k = base.k_min(); k <= base.k_max(); ++k) {
      expected.at(j, k) = left * base.at(j, k) * exp_root(k * phi, pair.g());
      const double a = modulus(moved.at(j, k));
      const double b = modulus(base.at(j, k));
      mag_diff = std::max(mag_diff, std::abs(a - b));
      mag_scale = std::max(mag_scale, b);
    }
  }
  return {relative_residual(moved, expected),
          mag_scale > 0.0 ? mag_diff / mag_scale : 0.0};
}

/// m(s, theta) = h(-s, theta), the reflection r -> 1/r. Needs smin = -smax so
/// the map is a grid automorphism.
inline LogPolarSignal reflect_circle(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  if (!geo.symmetric()) {
    throw ContractError("reflect_circle needs a symmetric grid (smin = -smax)");
  }
  LogPolarSignal out(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const std::size_t src = wrap_index(-static_cast<long>(i), geo.ns);
    for (std::size_t l = 0; l < geo.ntheta; ++l) out.at(i, l) = h.at(src, l);
  }
  return out;
}

/// m(s, theta) = h(s, -theta).
inline LogPolarSignal reverse_rotation(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  LogPolarSignal out(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      out.at(i, l) = h.at(i, wrap_index(-static_cast<long>(l), geo.ntheta));
    }
  }
  return out;
}

/// Wraps a centered frequency index back into [-n/2, n/2).
inline int wrap_centered(long index, std::size_t n) {
  const long half = static_cast<long>(n / 2);
  return static_cast<int>(static_cast<long>(wrap_index(index + half, n)) - half);
}

struct ReflectionResiduals {
  double circle = 0.0;    // m^(v, k) vs h^(-v, k)
  double rotation = 0.0;  // m^(v, k) vs h^(v, -k)
};

inline ReflectionResiduals reflection_residuals(const LogPolarSignal& h,
                                                const RootPair& pair) {
  const Spectrum base = cfmt_forward(h, pair);
  const Spectrum circle = cfmt_forward(reflect_circle(h), pair);
  const Spectrum rotation = cfmt_forward(reverse_rotation(h), pair);
  const GridGeometry& geo = h.geometry();
  Spectrum neg_v(geo, pair);
  Spectrum neg_k(geo, pair);
  for (int j = base.j_min(); j <= base.j_max(); ++j) {
    for (int k = base.k_min(); k <= base.k_max(); ++k) {
      neg_v.at(j, k) = base.at(wrap_centered(-j, geo.ns), k);
      neg_k.at(j, k) = base.at(j, wrap_centered(-k, geo.ntheta));
    }
  }
  return {relative_residual(circle, neg_v), relative_residual(rotation, neg_k)};
}

// --------------------------------------------------------------- modulation

/// m(s, theta) = e^{f v0 s} h(s, theta) e^{g k0 theta} with v0 = j0 dv.
inline LogPolarSignal modulate_bins(const LogPolarSignal& h,
                                    const RootPair& pair, int j0, int k0) {
  const GridGeometry& geo = h.geometry();
  const double v0 = geo.dv() * j0;
  LogPolarSignal out(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const Multivector left = exp_root(v0 * geo.s_at(i), pair.f());
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      out.at(i, l) =
          left * h.at(i, l) * exp_root(k0 * geo.theta_at(l), pair.g());
    }
  }
  return out;
}

/// v0 must be one of the grid frequencies v_j.
inline LogPolarSignal modulate(const LogPolarSignal& h, const RootPair& pair,
                               double v0, int k0) {
  const double j0 = v0 / h.geometry().dv();
  if (std::abs(j0 - std::round(j0)) > 1e-9) {
    throw ContractError("modulation frequency v0 is not a grid frequency");
  }
  return modulate_bins(h, pair, static_cast<int>(std::lround(j0)), k0);
}

/// m^(v, k) vs h^(v - v0, k - k0) over the whole cyclic spectrum. The wrap in
/// v is exact only when s = 0 is a grid node.
inline double modulation_residual(const LogPolarSignal& h,
                                  const RootPair& pair, int j0, int k0) {
  const GridGeometry& geo = h.geometry();
  if (!geo.contains_origin()) {
    throw ContractError(
        "cyclic modulation check needs s = 0 on the grid (smin a multiple of ds)");
  }
  const Spectrum base = cfmt_forward(h, pair);
  const Spectrum moved = cfmt_forward(modulate_bins(h, pair, j0, k0), pair);
  Spectrum expected(geo, pair);
  for (int j = base.j_min(); j <= base.j_max(); ++j) {
    for (int k = base.k_min(); k <= base.k_max(); ++k) {
      expected.at(j, k) = base.at(wrap_centered(j - j0, geo.ns),
                                  wrap_centered(k - k0, geo.ntheta));
    }
  }
  return relative_residual(moved, expected);
}

// ------------------------------------------------- split commutation/moduli

/// M{h_+-} vs (M{h})_+-.
inline double split_commutation_residual(const LogPolarSignal& h,
                                         const RootPair& pair) {
  const SignalSplit parts = split_signal(h, pair);
  const SpectrumSplit spec = split_spectrum(cfmt_forward(h, pair));
  return std::max(
      relative_residual(cfmt_forward(parts.plus, pair), spec.plus),
      relative_residual(cfmt_forward(parts.minus, pair), spec.minus));
}

/// max over bins of | |H|^2 - |M{h_-}|^2 - |M{h_+}|^2 | / max |H|^2.
inline double spectral_pythagoras_residual(const LogPolarSignal& h,
                                           const RootPair& pair) {
  const SignalSplit parts = split_signal(h, pair);
  const Spectrum full = cfmt_forward(h, pair);
  const Spectrum plus = cfmt_forward(parts.plus, pair);
  const Spectrum minus = cfmt_forward(parts.minus, pair);
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < full.coeffs().size(); ++n) {
    const double total = modulus_squared(full.coeffs()[n]);
    diff = std::max(diff, std::abs(total - modulus_squared(plus.coeffs()[n]) -
                                   modulus_squared(minus.coeffs()[n])));
    scale = std::max(scale, total);
  }
  return scale > 0.0 ? diff / scale : 0.0;
}

// ------------------------------------------------------ Plancherel/Parseval

struct PlancherelResult {
  double lhs = 0.0;  // <h, m> over the grid measure ds dtheta
  double rhs = 0.0;  // <h^, m^> over the spectral measure dv
};

inline PlancherelResult plancherel_check(const LogPolarSignal& h,
                                         const LogPolarSignal& m,
                                         const RootPair& pair) {
  h.require_compatible(m, "plancherel_check");
  return {scalar_inner_product(h, m),
          scalar_inner_product(cfmt_forward(h, pair), cfmt_forward(m, pair))};
}

struct ParsevalResult {
  double norm_signal = 0.0;
  double norm_spectrum = 0.0;
  double plus_part = 0.0;   // ||H_+||
  double minus_part = 0.0;  // ||H_-||
};

inline ParsevalResult parseval_check(const LogPolarSignal& h,
                                     const RootPair& pair) {
  if (!pair.blade_like()) {
    throw ContractError("Parseval needs a blade-like pair (~f = -f, ~g = -g)");
  }
  const Spectrum spec = cfmt_forward(h, pair);
  const SpectrumSplit parts = split_spectrum(spec);
  return {norm(h), norm(spec), norm(parts.plus), norm(parts.minus)};
}

// -------------------------------------------------------------- derivatives

enum class Axis { radial, angular };

namespace detail {

/// Frequency index of FFT bin b on an axis of length n, with the Nyquist bin
/// reported separately.
inline long signed_bin(std::size_t b, std::size_t n) {
  const long m = static_cast<long>(n);
  const long x = static_cast<long>(b);
  return x >= m / 2 ? x - m : x;
}

/// Per-channel DFTs of the four blade components, channel-major.
inline std::vector<std::complex<double>> channel_dft(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  const std::size_t plane = geo.size();
  std::vector<std::complex<double>> buf(4 * plane);
  for (std::size_t n = 0; n < plane; ++n) {
    for (std::size_t c = 0; c < 4; ++c) buf[c * plane + n] = h.samples()[n][c];
  }
  Fft2d(geo.ns, geo.ntheta, 4).forward(buf);
  return buf;
}

}  // namespace detail

/// Energy fraction of the per-channel spectrum with |j| > ns/3 or
/// |k| > ntheta/3.
inline double high_band_fraction(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  const auto buf = detail::channel_dft(h);
  const std::size_t plane = geo.size();
  double high = 0.0;
  double total = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t a = 0; a < geo.ns; ++a) {
      const long j = detail::signed_bin(a, geo.ns);
      for (std::size_t b = 0; b < geo.ntheta; ++b) {
        const long k = detail::signed_bin(b, geo.ntheta);
        const double e = std::norm(buf[c * plane + a * geo.ntheta + b]);
        total += e;
        if (3 * std::abs(j) > static_cast<long>(geo.ns) ||
            3 * std::abs(k) > static_cast<long>(geo.ntheta)) {
          high += e;
        }
      }
    }
  }
  return total > 0.0 ? high / total : 0.0;
}

/// n-th derivative along s (= ln r, so d/ds = r d/dr) or theta, by
/// differentiating each blade channel's trigonometric interpolant. The
/// Nyquist bin is dropped for odd orders.
inline LogPolarSignal spectral_derivative(const LogPolarSignal& h, Axis axis,
                                          int order) {
  if (order < 0) throw DomainError("derivative order must be >= 0");
  if (order == 0) return h;
  const GridGeometry& geo = h.geometry();
  const std::size_t plane = geo.size();
  auto buf = detail::channel_dft(h);
  for (std::size_t a = 0; a < geo.ns; ++a) {
    for (std::size_t b = 0; b < geo.ntheta; ++b) {
      std::complex<double> factor;
      bool nyquist = false;
      if (axis == Axis::radial) {
        const long j = detail::signed_bin(a, geo.ns);
        nyquist = (2 * static_cast<std::size_t>(std::abs(j)) == geo.ns);
        factor = std::pow(std::complex<double>(0.0, geo.dv() * j), order);
      } else {
        const long k = detail::signed_bin(b, geo.ntheta);
        nyquist = (2 * static_cast<std::size_t>(std::abs(k)) == geo.ntheta);
        factor = std::pow(std::complex<double>(0.0, static_cast<double>(k)), order);
      }
      if (nyquist && order % 2 == 1) factor = 0.0;
      for (std::size_t c = 0; c < 4; ++c) {
        // Conjugate now so the forward transform below acts as the inverse.
        auto& x = buf[c * plane + a * geo.ntheta + b];
        x = std::conj(x * factor);
      }
    }
  }
  Fft2d(geo.ns, geo.ntheta, 4).forward(buf);
  LogPolarSignal out(geo, h.signature());
  const double inv_n = 1.0 / static_cast<double>(plane);
  for (std::size_t n = 0; n < plane; ++n) {
    for (std::size_t c = 0; c < 4; ++c) {
      out.samples()[n][c] = buf[c * plane + n].real() * inv_n;
    }
  }
  return out;
}

struct DerivativeResiduals {
  double radial = 0.0;   // M{(r d_r)^n h} vs (f v)^n h^
  double angular = 0.0;  // M{d_theta^n h} vs h^ (g k)^n
  bool band_limited = true;
};

inline DerivativeResiduals check_derivative_theorems(const LogPolarSignal& h,
                                                     const RootPair& pair,
                                                     int order) {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0..2");
  DerivativeResiduals out;
  out.band_limited = high_band_fraction(h) <= 1e-24;
  const Spectrum base = cfmt_forward(h, pair);
  const Spectrum radial =
      cfmt_forward(spectral_derivative(h, Axis::radial, order), pair);
  const Spectrum angular =
      cfmt_forward(spectral_derivative(h, Axis::angular, order), pair);
  Spectrum radial_expected(h.geometry(), pair);
  Spectrum angular_expected(h.geometry(), pair);
  for (int j = base.j_min(); j <= base.j_max(); ++j) {
    const Multivector fv = base.v(j) * pair.f();
    for (int k = base.k_min(); k <= base.k_max(); ++k) {
      const Multivector gk = static_cast<double>(k) * pair.g();
      Multivector r = base.at(j, k);
      Multivector a = base.at(j, k);
      for (int p = 0; p < order; ++p) {
        r = fv * r;
        a = a * gk;
      }
      radial_expected.at(j, k) = r;
      angular_expected.at(j, k) = a;
    }
  }
  out.radial = relative_residual(radial, radial_expected);
  out.angular = relative_residual(angular, angular_expected);
  return out;
}

// ------------------------------------------------------------ power scaling

/// Fraction of signal energy within pi/8 of the theta = 0 seam.
inline double seam_energy_fraction(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  const double band = std::numbers::pi / 8.0;
  double seam = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < geo.ns; ++i) {
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      const double theta = geo.theta_at(l);
      const double e = modulus_squared(h.at(i, l));
      total += e;
      if (theta < band || theta > 2.0 * std::numbers::pi - band) seam += e;
    }
  }
  return total > 0.0 ? seam / total : 0.0;
}

struct PowerScalingResult {
  double residual = 0.0;  // max |lhs - rhs| / max |lhs| over the points
  std::vector<Multivector> lhs;
  std::vector<Multivector> rhs;
};

/// Steps of the finite-difference oracle: 1e-3 dv in v and 1e-3 in k.
inline constexpr double kPowerScalingStep = 1e-3;

/// Checks M{(ln r)^m theta^n h}(v, k) = f^m d_v^m d_k^n h^(v, k) g^n at real
/// (v, k). The left side is the direct sum of the multiplied signal; the right
/// side uses 5-point central differences of the direct sum, evaluated in long
/// double so that the stencil's cancellation stays below the tolerance.
inline PowerScalingResult check_power_scaling(
    const LogPolarSignal& h, const RootPair& pair, int m, int n,
    std::span<const std::pair<double, double>> points) {
  if (m < 0 || m > 2 || n < 0 || n > 2) {
    throw DomainError("power scaling orders must be 0..2");
  }
  if (n > 0 && seam_energy_fraction(h) > 1e-12) {
    throw ContractError(
        "signal has energy near the theta seam; theta^n is not periodic");
  }
  const GridGeometry& geo = h.geometry();
  LogPolarSignal weighted(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      weighted.at(i, l) = std::pow(geo.s_at(i), m) *
                          std::pow(geo.theta_at(l), n) * h.at(i, l);
    }
  }

  using Wide = long double;
  static constexpr std::array<std::array<Wide, 5>, 3> kStencil{{
      {0, 0, 1, 0, 0},
      {1.0L / 12, -8.0L / 12, 0, 8.0L / 12, -1.0L / 12},
      {-1.0L / 12, 16.0L / 12, -30.0L / 12, 16.0L / 12, -1.0L / 12},
  }};
  const Wide dv_step = static_cast<Wide>(kPowerScalingStep * geo.dv());
  const Wide dk_step = static_cast<Wide>(kPowerScalingStep);
  const BasicMultivector<Wide> f(pair.f());
  const BasicMultivector<Wide> g(pair.g());

  PowerScalingResult out;
  double diff = 0.0;
  double scale = 0.0;
  for (const auto& [v, k] : points) {
    const Multivector lhs = cfmt_direct<double>(weighted, pair, v, k);
    BasicMultivector<Wide> acc(h.signature());
    for (int a = 0; a < 5; ++a) {
      const Wide wv = kStencil[m][a];
      if (wv == 0) continue;
      for (int b = 0; b < 5; ++b) {
        const Wide wk = kStencil[n][b];
        if (wk == 0) continue;
        acc += (wv * wk) *
               cfmt_direct<Wide>(h, pair, static_cast<Wide>(v) + (a - 2) * dv_step,
                                 static_cast<Wide>(k) + (b - 2) * dk_step);
      }
    }
    acc *= 1 / (std::pow(dv_step, m) * std::pow(dk_step, n));
    for (int p = 0; p < m; ++p) acc = f * acc;
    for (int p = 0; p < n; ++p) acc = acc * g;
    const Multivector rhs(acc);
    diff = std::max(diff, max_abs_diff(lhs, rhs));
    scale = std::max(scale, modulus(lhs));
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
  }
  out.residual = scale > 0.0 ? diff / scale : 0.0;
  return out;
}

// ----------------------------------------------------------------- symmetry

/// Spectra of the parity parts of a real signal (first letter: parity under
/// s -> -s, second: under theta -> -theta). The kernel expands as
///   cos(vs)cos(k theta) - f sin(vs)cos(k theta) - cos(vs)sin(k theta) g
///   + f sin(vs) sin(k theta) g,
/// so ee lands in span{1}, oe in span{f}, eo in span{g} and oo in span{fg}.
struct SymmetryComponents {
  Spectrum ee;
  Spectrum eo;
  Spectrum oe;
  Spectrum oo;
  /// Off-span energy of ee, eo, oe, oo relative to the total spectral energy.
  std::array<double, 4> off_span{};
  bool verified = false;
};

inline constexpr double kSymmetryTolerance = 1e-10;

inline SymmetryComponents symmetry_decompose(const LogPolarSignal& h,
                                             const RootPair& pair) {
  for (const Multivector& m : h.samples()) {
    if (m[kE1] != 0.0 || m[kE2] != 0.0 || m[kE12] != 0.0) {
      throw ContractError("symmetry_decompose needs a real (scalar) signal");
    }
  }
  if (pair.degenerate()) {
    throw ContractError("symmetry_decompose needs g != +-f");
  }
  const Multivector one = Multivector::scalar(pair.signature(), 1.0);
  const Multivector fg = pair.f() * pair.g();
  const std::array<Multivector, 4> spans{one, pair.g(), pair.f(), fg};
  {
    Matrix4<double> m{};
    double norms = 1.0;
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t r = 0; r < 4; ++r) m[r][c] = spans[c][r];
      norms *= modulus(spans[c]);
    }
    if (std::abs(detail::determinant(m)) / norms <= 1e-10) {
      throw ContractError("{1, f, g, fg} is linearly dependent for this pair");
    }
  }

  const LogPolarSignal rs = reflect_circle(h);
  const LogPolarSignal rt = reverse_rotation(h);
  const LogPolarSignal rst = reverse_rotation(rs);
  auto combine = [&](double ss, double st) {
    LogPolarSignal out(h.geometry(), h.signature());
    for (std::size_t n = 0; n < h.samples().size(); ++n) {
      out.samples()[n] = 0.25 * (h.samples()[n] + ss * rs.samples()[n] +
                                 st * rt.samples()[n] +
                                 ss * st * rst.samples()[n]);
    }
    return out;
  };
  SymmetryComponents out{cfmt_forward(combine(+1, +1), pair),
                         cfmt_forward(combine(+1, -1), pair),
                         cfmt_forward(combine(-1, +1), pair),
                         cfmt_forward(combine(-1, -1), pair),
                         {},
                         false};

  const std::array<const Spectrum*, 4> parts{&out.ee, &out.eo, &out.oe, &out.oo};
  double total = 0.0;
  for (const Spectrum* s : parts) {
    for (const Multivector& x : s->coeffs()) total += modulus_squared(x);
  }
  out.verified = true;
  for (std::size_t p = 0; p < 4; ++p) {
    const Multivector& b = spans[p];
    const double b2 = modulus_squared(b);
    double off = 0.0;
    for (const Multivector& x : parts[p]->coeffs()) {
      const double along =
          (x[0] * b[0] + x[1] * b[1] + x[2] * b[2] + x[3] * b[3]) / b2;
      off += modulus_squared(x - along * b);
    }
    out.off_span[p] = total > 0.0 ? off / total : 0.0;
    if (out.off_span[p] > kSymmetryTolerance) out.verified = false;
  }
  return out;
}

}  // namespace clifford_mellin
