#pragma once

// Raster images as multivector fields: PNM I/O, log-polar resampling,
// CFMT magnitude descriptors and scale/rotation registration.
//
// Pixel (x, y) is sampled at integer coordinates with x to the right and y
// down; theta runs from +x towards +y.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/cfmt.hpp"
#include "clifford_mellin/errors.hpp"
#include "clifford_mellin/fft.hpp"
#include "clifford_mellin/io.hpp"
#include "clifford_mellin/parallel.hpp"
#include "clifford_mellin/signal.hpp"
#include "clifford_mellin/theorems.hpp"

namespace clifford_mellin {

inline constexpr std::size_t kMinImageSide = 8;

/// Channel-interleaved pixel values in [0, 1], row-major.
struct RasterImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;
  std::vector<double> values;

  RasterImage() = default;
  RasterImage(std::size_t w, std::size_t h, std::size_t c)
      : width(w), height(h), channels(c), values(w * h * c, 0.0) {
    if (c != 1 && c != 3) throw FormatError("images have 1 or 3 channels");
    if (w < kMinImageSide || h < kMinImageSide) {
      throw FormatError("images must be at least 8x8 pixels (got " +
                        std::to_string(w) + "x" + std::to_string(h) + ")");
    }
  }

  double& at(std::size_t x, std::size_t y, std::size_t c = 0) {
    return values[(y * width + x) * channels + c];
  }
  double at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return values[(y * width + x) * channels + c];
  }
};

namespace detail {

inline bool pnm_space(std::uint8_t b) {
  return b == ' ' || b == '\t' || b == '\n' || b == '\r' || b == '\v' ||
         b == '\f';
}

/// Next unsigned decimal header field, skipping whitespace and # comments.
inline std::size_t pnm_field(const std::vector<std::uint8_t>& bytes,
                             std::size_t& pos, const char* name) {
  while (pos < bytes.size()) {
    if (pnm_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  std::size_t value = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1'000'000) throw ParseError(std::string(name) + " too large", start);
    ++pos;
  }
  if (pos == start) {
    throw ParseError(std::string("expected ") + name + " in PNM header", start);
  }
  if (pos < bytes.size() && !pnm_space(bytes[pos]) && bytes[pos] != '#') {
    throw ParseError(std::string("malformed ") + name + " in PNM header", pos);
  }
  return value;
}

}  // namespace detail

/// Binary PGM (P5) or PPM (P6) with maxval 255.
inline RasterImage decode_pnm(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw ParseError("not a binary PGM/PPM file (expected P5 or P6)", 0);
  }
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;
  std::size_t pos = 2;
  if (pos >= bytes.size() || !detail::pnm_space(bytes[pos])) {
    throw ParseError("expected whitespace after magic number", pos);
  }
  const std::size_t width = detail::pnm_field(bytes, pos, "width");
  const std::size_t height = detail::pnm_field(bytes, pos, "height");
  const std::size_t maxval = detail::pnm_field(bytes, pos, "maxval");
  if (pos >= bytes.size()) throw ParseError("missing pixel data", pos);
  ++pos;  // single whitespace byte before the raster
  if (maxval != 255) {
    throw FormatError("unsupported maxval " + std::to_string(maxval) +
                      " (only 255 is supported)");
  }
  RasterImage img(width, height, channels);
  const std::size_t need = width * height * channels;
  if (bytes.size() - pos < need) {
    throw ParseError("truncated pixel data: need " + std::to_string(need) +
                         " bytes, have " + std::to_string(bytes.size() - pos),
                     bytes.size());
  }
  for (std::size_t n = 0; n < need; ++n) {
    img.values[n] = static_cast<double>(bytes[pos + n]) / 255.0;
  }
  return img;
}

inline RasterImage read_pnm(const std::filesystem::path& path) {
  return decode_pnm(io::read_bytes(path));
}

inline std::string encode_pnm(const RasterImage& img) {
  std::string out = (img.channels == 1 ? "P5\n" : "P6\n") +
                    std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.reserve(out.size() + img.values.size());
  for (double v : img.values) {
    out.push_back(static_cast<char>(
        static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
  }
  return out;
}

inline void write_pnm(const std::filesystem::path& path, const RasterImage& img) {
  io::write_atomic(path, encode_pnm(img));
}

/// Blade receiving each image channel. Gray defaults to the scalar, RGB to
/// (e1, e2, e12).
struct ChannelMap {
  std::size_t gray = kScalar;
  std::array<std::size_t, 3> rgb{kE1, kE2, kE12};
};

/// Parses "1", "e1", "e2", "e12" tokens: one for gray images or three
/// comma-separated ones for RGB.
inline ChannelMap parse_channel_map(std::string_view text) {
  auto blade = [](std::string_view t) -> std::size_t {
    for (std::size_t b = 0; b < 4; ++b) {
      if (t == kBladeNames[b]) return b;
    }
    throw DomainError("unknown blade '" + std::string(t) +
                      "' (use 1, e1, e2 or e12)");
  };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  ChannelMap map;
  if (parts.size() == 1) {
    map.gray = blade(parts[0]);
  } else if (parts.size() == 3) {
    for (std::size_t c = 0; c < 3; ++c) map.rgb[c] = blade(parts[c]);
  } else {
    throw DomainError("channel map needs 1 or 3 blades");
  }
  return map;
}

struct MultivectorImage {
  std::size_t width = 0;
  std::size_t height = 0;
  Signature signature;
  std::vector<Multivector> pixels;

  const Multivector& at(std::size_t x, std::size_t y) const {
    return pixels[y * width + x];
  }
};

inline MultivectorImage ingest(const RasterImage& img, Signature sig,
                               const ChannelMap& map = {}) {
  MultivectorImage out{img.width, img.height, sig,
                       std::vector<Multivector>(img.width * img.height,
                                                Multivector(sig))};
  for (std::size_t n = 0; n < out.pixels.size(); ++n) {
    if (img.channels == 1) {
      out.pixels[n][map.gray] += img.values[n];
    } else {
      for (std::size_t c = 0; c < 3; ++c) {
        out.pixels[n][map.rgb[c]] += img.values[3 * n + c];
      }
    }
  }
  return out;
}

inline MultivectorImage ingest(const std::filesystem::path& path, Signature sig,
                               const ChannelMap& map = {}) {
  return ingest(read_pnm(path), sig, map);
}

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Centroid weighted by pixel modulus; the image center for a blank image.
inline Point intensity_centroid(const MultivectorImage& img) {
  double total = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      const double w = modulus(img.at(x, y));
      total += w;
      sx += w * static_cast<double>(x);
      sy += w * static_cast<double>(y);
    }
  }
  if (total <= 0.0) {
    return {0.5 * static_cast<double>(img.width - 1),
            0.5 * static_cast<double>(img.height - 1)};
  }
  return {sx / total, sy / total};
}

/// Largest usable log radius for an image: ln(min(w, h) / 2 - 1).
inline double max_log_radius(std::size_t width, std::size_t height) {
  return std::log(0.5 * static_cast<double>(std::min(width, height)) - 1.0);
}

/// Bilinear sample at a real position; pixels outside the image read as 0.
inline Multivector sample_bilinear(const MultivectorImage& img, double x,
                                   double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double tx = x - fx;
  const double ty = y - fy;
  Multivector out(img.signature);
  const long x0 = static_cast<long>(fx);
  const long y0 = static_cast<long>(fy);
  const std::array<std::array<double, 2>, 2> w{
      {{(1 - tx) * (1 - ty), tx * (1 - ty)}, {(1 - tx) * ty, tx * ty}}};
  for (long dy = 0; dy < 2; ++dy) {
    for (long dx = 0; dx < 2; ++dx) {
      const long px = x0 + dx;
      const long py = y0 + dy;
      const double weight = w[dy][dx];
      if (weight == 0.0 || px < 0 || py < 0 ||
          px >= static_cast<long>(img.width) ||
          py >= static_cast<long>(img.height)) {
        continue;
      }
      out += weight * img.at(static_cast<std::size_t>(px),
                             static_cast<std::size_t>(py));
    }
  }
  return out;
}

inline LogPolarSignal to_log_polar(const MultivectorImage& img, Point center,
                                   const GridGeometry& geo) {
  geo.validate();
  if (!(center.x >= 0.0 && center.y >= 0.0 &&
        center.x <= static_cast<double>(img.width - 1) &&
        center.y <= static_cast<double>(img.height - 1))) {
    throw GeometryError("log-polar center lies outside the image");
  }
  const double limit =
      0.5 * static_cast<double>(std::min(img.width, img.height)) - 1.0;
  if (std::exp(geo.smax) > limit * (1.0 + 1e-12)) {
    throw GeometryError("e^smax = " + std::to_string(std::exp(geo.smax)) +
                        " exceeds min(width, height)/2 - 1 = " +
                        std::to_string(limit));
  }
  LogPolarSignal out(geo, img.signature);
  std::vector<double> cos_t(geo.ntheta);
  std::vector<double> sin_t(geo.ntheta);
  for (std::size_t l = 0; l < geo.ntheta; ++l) {
    cos_t[l] = std::cos(geo.theta_at(l));
    sin_t[l] = std::sin(geo.theta_at(l));
  }
  parallel_for(geo.ns, [&](std::size_t i) {
    const double r = std::exp(geo.s_at(i));
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      out.at(i, l) = sample_bilinear(img, center.x + r * cos_t[l],
                                     center.y + r * sin_t[l]);
    }
  });
  return out;
}

/// Default image grid: s from 0 (r = 1 pixel) to the largest usable radius.
inline GridGeometry image_geometry(const MultivectorImage& img, std::size_t ns,
                                   std::size_t ntheta) {
  return {ns, ntheta, 0.0, max_log_radius(img.width, img.height)};
}

// ------------------------------------------------------------- descriptors

struct Descriptor {
  GridGeometry geometry;
  RootPair pair;
  std::vector<double> magnitude;  // centered (j, k) order, k fastest
};

inline Descriptor descriptor(const LogPolarSignal& h, const RootPair& pair) {
  if (!pair.blade_like()) {
    throw ContractError(
        "descriptor needs a blade-like pair; |h^| is not shift invariant otherwise");
  }
  const Spectrum spec = cfmt_fast(h, pair);
  Descriptor out{h.geometry(), pair, {}};
  out.magnitude.reserve(spec.coeffs().size());
  for (const Multivector& m : spec.coeffs()) out.magnitude.push_back(modulus(m));
  return out;
}

/// L2 distance under the spectral measure dv.
inline double descriptor_distance(const Descriptor& a, const Descriptor& b) {
  if (!(a.geometry == b.geometry) || !a.pair.same_as(b.pair)) {
    throw ContractError("descriptors come from different grids or root pairs");
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < a.magnitude.size(); ++n) {
    const double d = a.magnitude[n] - b.magnitude[n];
    sum += d * d;
  }
  return std::sqrt(sum * a.geometry.dv());
}

inline void write_descriptor_csv(std::ostream& out, const Descriptor& d) {
  out << "j,k,v,mag\n";
  const long ns = static_cast<long>(d.geometry.ns);
  const long nt = static_cast<long>(d.geometry.ntheta);
  char buf[96];
  for (long a = 0; a < ns; ++a) {
    const long j = a - ns / 2;
    for (long b = 0; b < nt; ++b) {
      const long k = b - nt / 2;
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", j, k,
                    d.geometry.dv() * static_cast<double>(j),
                    d.magnitude[static_cast<std::size_t>(a * nt + b)]);
      out << buf;
    }
  }
}

// ------------------------------------------------------------- registration

inline constexpr double kMatchThreshold = 1.05;
inline constexpr double kMaxConfidence = 1e6;
/// Normalized peak correlation below which two signals are not a match.
inline constexpr double kMinCorrelation = 0.95;

namespace detail {

/// v^{2n}, with the Nyquist row dropped for odd n as spectral_derivative does.
inline double radial_weight(double v, int radial_order, bool nyquist) {
  if (radial_order % 2 == 1 && nyquist) return 0.0;
  return radial_order == 0 ? 1.0 : std::pow(v * v, radial_order);
}

}  // namespace detail

/// c(p, q) = <apply_scale_rotate(d h1, p, q), d h2> over all cyclic shifts,
/// where d removes the mean and applies (r d_r)^radial_order. Evaluated in the
/// CFMT domain: by Plancherel and the derivative theorem,
///   c(p, q) = dv sum_{j,k} v_j^{2n} Sc(e^{f v_j p ds} A e^{g k q dtheta} ~B)
/// with A = M{h1}, B = M{h2}, which splits into two complex exponential sums.
inline std::vector<double> correlation_surface(const LogPolarSignal& h1,
                                               const LogPolarSignal& h2,
                                               const RootPair& pair,
                                               int radial_order = 0) {
  h1.require_compatible(h2, "correlation_surface");
  if (!pair.blade_like()) {
    throw ContractError(
        "spectral correlation needs a blade-like pair (Plancherel hypothesis)");
  }
  if (radial_order < 0 || radial_order > 2) {
    throw DomainError("radial derivative order must be 0..2");
  }
  const GridGeometry& geo = h1.geometry();
  const Spectrum a = cfmt_fast(h1, pair);
  const Spectrum b = cfmt_fast(h2, pair);
  const std::size_t plane = geo.size();
  std::vector<std::complex<double>> buf(2 * plane);
  for (int j = a.j_min(); j <= a.j_max(); ++j) {
    const double w =
        detail::radial_weight(a.v(j), radial_order, j == a.j_min());
    for (int k = a.k_min(); k <= a.k_max(); ++k) {
      if (j == 0 && k == 0) continue;  // mean removal
      const Multivector& x = a.at(j, k);
      const Multivector yr = principal_reverse(b.at(j, k));
      const double s0 = scalar_part(x * yr);
      const double sf = scalar_part(pair.f() * x * yr);
      const double sg = scalar_part(x * pair.g() * yr);
      const double sfg = scalar_part(pair.f() * x * pair.g() * yr);
      // Conjugated so that a forward FFT yields the + exponential sums.
      const std::size_t row = wrap_index(j, geo.ns);
      buf[row * geo.ntheta + wrap_index(k, geo.ntheta)] =
          w * std::complex<double>(s0 - sfg, sf + sg);
      buf[plane + row * geo.ntheta + wrap_index(-k, geo.ntheta)] =
          w * std::complex<double>(s0 + sfg, sf - sg);
    }
  }
  Fft2d(geo.ns, geo.ntheta, 2).forward(buf);
  std::vector<double> out(plane);
  const double scale = 0.5 * geo.dv();
  for (std::size_t n = 0; n < plane; ++n) {
    out[n] = scale * (buf[n].real() + buf[plane + n].real());
  }
  return out;
}

/// c(0, 0) of a signal with itself: dv sum v_j^{2n} |M{h}(v_j, k)|^2 without
/// the DC bin.
inline double correlation_energy(const LogPolarSignal& h, const RootPair& pair,
                                 int radial_order = 0) {
  const Spectrum a = cfmt_fast(h, pair);
  double sum = 0.0;
  for (int j = a.j_min(); j <= a.j_max(); ++j) {
    const double w =
        detail::radial_weight(a.v(j), radial_order, j == a.j_min());
    for (int k = a.k_min(); k <= a.k_max(); ++k) {
      if (j == 0 && k == 0) continue;
      sum += w * modulus_squared(a.at(j, k));
    }
  }
  return sum * h.geometry().dv();
}

struct Registration {
  double scale = 1.0;  // a, with h2(r, theta) = h1(a r, theta + phi)
  double angle = 0.0;  // phi in (-pi, pi]
  double confidence = 0.0;   // peak / second local maximum
  double correlation = 0.0;  // peak / sqrt(energy1 energy2)
  long s_shift = 0;      // p, in grid steps, centered
  long theta_shift = 0;  // q, in grid steps, centered
  bool matched = false;
};

inline Registration register_signals(const LogPolarSignal& h1,
                                     const LogPolarSignal& h2,
                                     const RootPair& pair,
                                     int radial_order = 0) {
  const GridGeometry& geo = h1.geometry();
  const std::vector<double> c = correlation_surface(h1, h2, pair, radial_order);
  const std::size_t ns = geo.ns;
  const std::size_t nt = geo.ntheta;
  std::size_t best = 0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    if (c[n] > c[best]) best = n;
  }
  // Second-highest cyclic local maximum (8-neighbourhood, ties count).
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t l = 0; l < nt; ++l) {
      const std::size_t n = i * nt + l;
      if (n == best) continue;
      bool is_max = true;
      for (long di = -1; di <= 1 && is_max; ++di) {
        for (long dl = -1; dl <= 1; ++dl) {
          if (di == 0 && dl == 0) continue;
          const std::size_t m =
              wrap_index(static_cast<long>(i) + di, ns) * nt +
              wrap_index(static_cast<long>(l) + dl, nt);
          if (c[m] > c[n]) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) second = std::max(second, c[n]);
    }
  }
  Registration out;
  const double peak = c[best];
  if (peak <= 0.0) {
    out.confidence = 0.0;
  } else if (second <= 0.0) {
    out.confidence = kMaxConfidence;
  } else {
    out.confidence = std::min(kMaxConfidence, peak / second);
  }
  const double energy = std::sqrt(correlation_energy(h1, pair, radial_order) *
                                  correlation_energy(h2, pair, radial_order));
  out.correlation = energy > 0.0 ? peak / energy : 0.0;
  out.s_shift = wrap_centered(static_cast<long>(best / nt), ns);
  out.theta_shift = wrap_centered(static_cast<long>(best % nt), nt);
  if (2 * static_cast<std::size_t>(std::abs(out.theta_shift)) == nt) {
    out.theta_shift = static_cast<long>(nt / 2);  // phi = +pi
  }
  out.scale = std::exp(static_cast<double>(out.s_shift) * geo.ds());
  out.angle = static_cast<double>(out.theta_shift) * geo.dtheta();
  out.matched = out.confidence >= kMatchThreshold &&
                out.correlation >= kMinCorrelation;
  return out;
}

/// Multiplies row i by sin^2(pi (i + 1/2) / ns). Image profiles are not
/// periodic in s; the taper removes the jump at the seam.
inline LogPolarSignal taper_radial(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  LogPolarSignal out = h;
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const double x = std::sin(std::numbers::pi * (static_cast<double>(i) + 0.5) /
                              static_cast<double>(geo.ns));
    for (std::size_t l = 0; l < geo.ntheta; ++l) out.at(i, l) *= x * x;
  }
  return out;
}

// ---------------------------------------------------------- image synthesis

/// out(x) = in(c + R(-angle)(x - c) / zoom): the input rotated by angle
/// (from +x towards +y) and magnified by zoom about c, bilinear resampled.
inline RasterImage rotate_scale_image(const RasterImage& in, Point c,
                                      double angle, double zoom) {
  if (!(zoom > 0.0)) throw DomainError("zoom must be positive");
  RasterImage out(in.width, in.height, in.channels);
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  for (std::size_t y = 0; y < in.height; ++y) {
    for (std::size_t x = 0; x < in.width; ++x) {
      const double dx = static_cast<double>(x) - c.x;
      const double dy = static_cast<double>(y) - c.y;
      const double sx = c.x + (ca * dx + sa * dy) / zoom;
      const double sy = c.y + (-sa * dx + ca * dy) / zoom;
      const double fx = std::floor(sx);
      const double fy = std::floor(sy);
      const double tx = sx - fx;
      const double ty = sy - fy;
      for (std::size_t ch = 0; ch < in.channels; ++ch) {
        double acc = 0.0;
        for (int ddy = 0; ddy < 2; ++ddy) {
          for (int ddx = 0; ddx < 2; ++ddx) {
            const long px = static_cast<long>(fx) + ddx;
            const long py = static_cast<long>(fy) + ddy;
            if (px < 0 || py < 0 || px >= static_cast<long>(in.width) ||
                py >= static_cast<long>(in.height)) {
              continue;
            }
            const double w = (ddx ? tx : 1 - tx) * (ddy ? ty : 1 - ty);
            acc += w * in.at(static_cast<std::size_t>(px),
                             static_cast<std::size_t>(py), ch);
          }
        }
        out.at(x, y, ch) = acc;
      }
    }
  }
  return out;
}

/// Image-space motion recovered by registering image 1 against image 2:
/// image 2 is image 1 rotated by `rotation` and magnified by `zoom`.
struct ImageMotion {
  double zoom = 1.0;
  double rotation = 0.0;
};

inline ImageMotion image_motion(const Registration& r) {
  double rot = 0.0 - r.angle;  // 0 - x keeps an exact zero positive
  if (rot <= -std::numbers::pi) rot += 2.0 * std::numbers::pi;
  return {1.0 / r.scale, rot};
}

/// d/ds = r d/dr by central differences (one-sided at the ends). Image
/// profiles are not periodic in s, so a spectral derivative would ring.
inline LogPolarSignal radial_difference(const LogPolarSignal& h) {
  const GridGeometry& geo = h.geometry();
  LogPolarSignal out(geo, h.signature());
  for (std::size_t i = 0; i < geo.ns; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == geo.ns ? i : i + 1;
    const double inv = 1.0 / (static_cast<double>(hi - lo) * geo.ds());
    for (std::size_t l = 0; l < geo.ntheta; ++l) {
      out.at(i, l) = inv * (h.at(hi, l) - h.at(lo, l));
    }
  }
  return out;
}

/// Registers two images: each is resampled about its own intensity centroid
/// on a shared grid, differentiated in s and then tapered, and the two are
/// correlated. Correlating edges keeps the slowly varying radial profile from
/// dominating the peak; tapering after differentiating keeps the fixed window
/// edge out of the derivative, where it would pull the peak towards s = 0.
struct ImageRegistration {
  Registration signal;
  ImageMotion motion;
  GridGeometry geometry;
  Point center1;
  Point center2;
};

inline ImageRegistration register_images(const MultivectorImage& img1,
                                         const MultivectorImage& img2,
                                         const RootPair& pair,
                                         const GridGeometry& geometry) {
  if (!(img1.signature == pair.signature()) ||
      !(img2.signature == pair.signature())) {
    throw DomainError("register_images: images and roots from different algebras");
  }
  ImageRegistration out;
  out.geometry = geometry;
  out.center1 = intensity_centroid(img1);
  out.center2 = intensity_centroid(img2);
  const LogPolarSignal h1 =
      taper_radial(radial_difference(to_log_polar(img1, out.center1, geometry)));
  const LogPolarSignal h2 =
      taper_radial(radial_difference(to_log_polar(img2, out.center2, geometry)));
  out.signal = register_signals(h1, h2, pair);
  out.motion = image_motion(out.signal);
  return out;
}

/// Grid shared by two images: s from 0 to the largest radius usable in both.
inline GridGeometry registration_geometry(const MultivectorImage& a,
                                          const MultivectorImage& b,
                                          std::size_t ns, std::size_t ntheta) {
  return {ns, ntheta, 0.0,
          std::min(max_log_radius(a.width, a.height),
                   max_log_radius(b.width, b.height))};
}

}  // namespace clifford_mellin
