#pragma once

// Arithmetic in the four-dimensional real Clifford algebras Cl(p,q), p+q=2.
//
// Blade basis is {1, e1, e2, e12}; blade indices are bitmasks over the
// generators (bit 0 = e1, bit 1 = e2), so the product of two blades lands on
// the XOR of their indices.

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>

#include "clifford_mellin/errors.hpp"

namespace clifford_mellin {

struct Signature {
  int p = 0;
  int q = 2;

  static constexpr Signature cl20() { return {2, 0}; }
  static constexpr Signature cl11() { return {1, 1}; }
  static constexpr Signature cl02() { return {0, 2}; }

  constexpr bool valid() const { return p >= 0 && q >= 0 && p + q == 2; }

  /// Square of the basis vector e_k, k in {1, 2}.
  constexpr int epsilon(int k) const { return k <= p ? 1 : -1; }

  friend constexpr bool operator==(Signature, Signature) = default;
};

inline constexpr std::array<Signature, 3> kAllSignatures{
    Signature::cl20(), Signature::cl11(), Signature::cl02()};

inline std::string to_string(Signature sig) {
  return "Cl(" + std::to_string(sig.p) + "," + std::to_string(sig.q) + ")";
}

inline Signature parse_signature(std::string_view text) {
  for (Signature sig : kAllSignatures) {
    if (text == to_string(sig)) return sig;
  }
  throw DomainError("unknown algebra '" + std::string(text) +
                    "', expected Cl(2,0), Cl(1,1) or Cl(0,2)");
}

enum Blade : std::size_t { kScalar = 0, kE1 = 1, kE2 = 2, kE12 = 3 };

inline constexpr std::array<std::string_view, 4> kBladeNames{"1", "e1", "e2",
                                                            "e12"};

constexpr int grade_of(std::size_t blade) {
  return std::popcount(static_cast<unsigned>(blade));
}

struct ProductTerm {
  std::uint8_t blade;
  std::int8_t sign;
};

using ProductTable = std::array<std::array<ProductTerm, 4>, 4>;

/// e_a * e_b = sign * e_(a^b): one sign flip per transposition needed to sort
/// the generator word, then one factor epsilon_k per contracted generator.
constexpr ProductTerm blade_product(std::size_t a, std::size_t b,
                                    Signature sig) {
  int sign = 1;
  for (int i = 0; i < 2; ++i) {
    if (!((a >> i) & 1U)) continue;
    for (int j = 0; j < i; ++j) {
      if ((b >> j) & 1U) sign = -sign;
    }
  }
  const std::size_t common = a & b;
  for (int k = 1; k <= 2; ++k) {
    if ((common >> (k - 1)) & 1U) sign *= sig.epsilon(k);
  }
  return {static_cast<std::uint8_t>(a ^ b), static_cast<std::int8_t>(sign)};
}

constexpr ProductTable make_product_table(Signature sig) {
  ProductTable table{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) table[a][b] = blade_product(a, b, sig);
  }
  return table;
}

inline constexpr ProductTable kTableCl20 = make_product_table(Signature::cl20());
inline constexpr ProductTable kTableCl11 = make_product_table(Signature::cl11());
inline constexpr ProductTable kTableCl02 = make_product_table(Signature::cl02());

constexpr const ProductTable& product_table(Signature sig) {
  if (sig.p == 2) return kTableCl20;
  if (sig.p == 1) return kTableCl11;
  return kTableCl02;
}

template <class T>
class BasicMultivector {
 public:
  using value_type = T;

  constexpr BasicMultivector() = default;
  constexpr explicit BasicMultivector(Signature sig) : sig_(checked(sig)) {}
  constexpr BasicMultivector(Signature sig, std::array<T, 4> coeffs)
      : sig_(checked(sig)), c_(coeffs) {}
  constexpr BasicMultivector(Signature sig, T m0, T m1, T m2, T m12)
      : sig_(checked(sig)), c_{m0, m1, m2, m12} {}

  template <class U>
  constexpr explicit BasicMultivector(const BasicMultivector<U>& other)
      : sig_(other.signature()),
        c_{static_cast<T>(other[0]), static_cast<T>(other[1]),
           static_cast<T>(other[2]), static_cast<T>(other[3])} {}

  static constexpr BasicMultivector scalar(Signature sig, T value) {
    return BasicMultivector(sig, value, T{}, T{}, T{});
  }
  static constexpr BasicMultivector basis(Signature sig, std::size_t blade) {
    BasicMultivector m(sig);
    m.c_[blade] = T{1};
    return m;
  }

  constexpr Signature signature() const { return sig_; }
  constexpr const std::array<T, 4>& coeffs() const { return c_; }
  constexpr T operator[](std::size_t i) const { return c_[i]; }
  constexpr T& operator[](std::size_t i) { return c_[i]; }

  constexpr bool is_zero() const {
    return c_[0] == T{} && c_[1] == T{} && c_[2] == T{} && c_[3] == T{};
  }

  constexpr BasicMultivector& operator+=(const BasicMultivector& o) {
    require_same(o, "addition");
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr BasicMultivector& operator-=(const BasicMultivector& o) {
    require_same(o, "subtraction");
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr BasicMultivector& operator*=(T s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend constexpr BasicMultivector operator+(BasicMultivector a,
                                              const BasicMultivector& b) {
    return a += b;
  }
  friend constexpr BasicMultivector operator-(BasicMultivector a,
                                              const BasicMultivector& b) {
    return a -= b;
  }
  friend constexpr BasicMultivector operator-(BasicMultivector a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend constexpr BasicMultivector operator*(BasicMultivector a, T s) {
    return a *= s;
  }
  friend constexpr BasicMultivector operator*(T s, BasicMultivector a) {
    return a *= s;
  }
  friend constexpr BasicMultivector operator/(BasicMultivector a, T s) {
    for (auto& x : a.c_) x /= s;
    return a;
  }

  /// Geometric product.
  friend constexpr BasicMultivector operator*(const BasicMultivector& a,
                                              const BasicMultivector& b) {
    a.require_same(b, "geometric product");
    const ProductTable& table = product_table(a.sig_);
    BasicMultivector r(a.sig_);
    for (std::size_t i = 0; i < 4; ++i) {
      if (a.c_[i] == T{}) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        const ProductTerm t = table[i][j];
        const T term = a.c_[i] * b.c_[j];
        if (t.sign > 0) {
          r.c_[t.blade] += term;
        } else {
          r.c_[t.blade] -= term;
        }
      }
    }
    return r;
  }

  friend constexpr bool operator==(const BasicMultivector&,
                                   const BasicMultivector&) = default;

  constexpr void require_same(const BasicMultivector& o,
                              const char* what) const {
    if (!(sig_ == o.sig_)) {
      throw DomainError(std::string("signature mismatch in ") + what + ": " +
                        to_string(sig_) + " vs " + to_string(o.sig_));
    }
  }

 private:
  static constexpr Signature checked(Signature sig) {
    if (!sig.valid()) throw DomainError("signature must satisfy p + q = 2");
    return sig;
  }

  Signature sig_{};
  std::array<T, 4> c_{};
};

using Multivector = BasicMultivector<double>;

template <class T>
constexpr BasicMultivector<T> geometric_product(const BasicMultivector<T>& a,
                                                const BasicMultivector<T>& b) {
  return a * b;
}

template <class T>
constexpr BasicMultivector<T> grade_part(const BasicMultivector<T>& a, int k) {
  if (k < 0 || k > 2) {
    throw DomainError("grade index " + std::to_string(k) +
                      " out of range 0..2");
  }
  BasicMultivector<T> r(a.signature());
  for (std::size_t i = 0; i < 4; ++i) {
    if (grade_of(i) == k) r[i] = a[i];
  }
  return r;
}

template <class T>
constexpr T scalar_part(const BasicMultivector<T>& a) {
  return a[kScalar];
}

/// Sc(ab), computed without forming the full product.
template <class T>
constexpr T scalar_product(const BasicMultivector<T>& a,
                           const BasicMultivector<T>& b) {
  a.require_same(b, "scalar product");
  const ProductTable& table = product_table(a.signature());
  T sum{};
  for (std::size_t i = 0; i < 4; ++i) {
    const ProductTerm t = table[i][i];
    if (t.sign > 0) {
      sum += a[i] * b[i];
    } else {
      sum -= a[i] * b[i];
    }
  }
  return sum;
}

/// Bilinear extension of <A_k B_s>_{k+s}. For orthogonal blades this keeps
/// the product of disjoint blades and drops any pair sharing a generator.
template <class T>
constexpr BasicMultivector<T> outer_product(const BasicMultivector<T>& a,
                                            const BasicMultivector<T>& b) {
  a.require_same(b, "outer product");
  const ProductTable& table = product_table(a.signature());
  BasicMultivector<T> r(a.signature());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i & j) continue;
      const ProductTerm t = table[i][j];
      r[t.blade] += static_cast<T>(t.sign) * a[i] * b[j];
    }
  }
  return r;
}

template <class T>
constexpr BasicMultivector<T> reverse(BasicMultivector<T> a) {
  a[kE12] = -a[kE12];
  return a;
}

/// The "bar" involution: every generator of negative square changes sign.
template <class T>
constexpr BasicMultivector<T> flip_negative_generators(BasicMultivector<T> a) {
  const Signature sig = a.signature();
  for (std::size_t i = 1; i < 4; ++i) {
    int sign = 1;
    for (int k = 1; k <= 2; ++k) {
      if ((i >> (k - 1)) & 1U) sign *= sig.epsilon(k);
    }
    if (sign < 0) a[i] = -a[i];
  }
  return a;
}

template <class T>
constexpr BasicMultivector<T> principal_reverse(const BasicMultivector<T>& a) {
  return reverse(flip_negative_generators(a));
}

template <class T>
constexpr T modulus_squared(const BasicMultivector<T>& a) {
  return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
}

template <std::floating_point T>
T modulus(const BasicMultivector<T>& a) {
  return std::sqrt(modulus_squared(a));
}

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

/// Matrix of x -> a x acting on coefficient vectors.
template <class T>
constexpr Matrix4<T> left_matrix(const BasicMultivector<T>& a) {
  Matrix4<T> m{};
  for (std::size_t col = 0; col < 4; ++col) {
    const auto image = a * BasicMultivector<T>::basis(a.signature(), col);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = image[row];
  }
  return m;
}

/// Matrix of x -> x a acting on coefficient vectors.
template <class T>
constexpr Matrix4<T> right_matrix(const BasicMultivector<T>& a) {
  Matrix4<T> m{};
  for (std::size_t col = 0; col < 4; ++col) {
    const auto image = BasicMultivector<T>::basis(a.signature(), col) * a;
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = image[row];
  }
  return m;
}

namespace detail {

template <class T>
constexpr T det3(const Matrix4<T>& m, std::size_t skip_row,
                 std::size_t skip_col) {
  std::array<std::size_t, 3> r{}, c{};
  for (std::size_t i = 0, n = 0; i < 4; ++i) {
    if (i != skip_row) r[n++] = i;
  }
  for (std::size_t i = 0, n = 0; i < 4; ++i) {
    if (i != skip_col) c[n++] = i;
  }
  return m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] -
                          m[r[1]][c[2]] * m[r[2]][c[1]]) -
         m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] -
                          m[r[1]][c[2]] * m[r[2]][c[0]]) +
         m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] -
                          m[r[1]][c[1]] * m[r[2]][c[0]]);
}

template <class T>
constexpr T cofactor(const Matrix4<T>& m, std::size_t row, std::size_t col) {
  const T minor = det3(m, row, col);
  return ((row + col) % 2 == 0) ? minor : -minor;
}

template <class T>
constexpr T determinant(const Matrix4<T>& m) {
  T det{};
  for (std::size_t j = 0; j < 4; ++j) det += m[0][j] * cofactor(m, 0, j);
  return det;
}

/// Adjugate inverse; the caller decides what counts as singular.
template <class T>
constexpr Matrix4<T> inverse_with_det(const Matrix4<T>& m, T det) {
  Matrix4<T> inv{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) inv[i][j] = cofactor(m, j, i) / det;
  }
  return inv;
}

template <class T>
constexpr std::array<T, 4> apply(const Matrix4<T>& m,
                                 const std::array<T, 4>& x) {
  std::array<T, 4> y{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) y[i] += m[i][j] * x[j];
  }
  return y;
}

}  // namespace detail

inline constexpr double kSingularityThreshold = 1e-12;

/// Inverse from the adjugate of the left-regular representation. Zero divisors
/// exist in all three algebras; elements with
/// |det L(a)| <= 1e-12 |a|^4 are rejected.
template <std::floating_point T>
BasicMultivector<T> inverse(const BasicMultivector<T>& a) {
  const Matrix4<T> l = left_matrix(a);
  const T det = detail::determinant(l);
  const T norm2 = modulus_squared(a);
  if (std::abs(det) <= static_cast<T>(kSingularityThreshold) * norm2 * norm2) {
    throw SingularityError("multivector is not invertible (det " +
                           std::to_string(static_cast<double>(det)) + ")");
  }
  // Solve L x = 1: x is the first column of adj(L) / det.
  BasicMultivector<T> x(a.signature());
  for (std::size_t i = 0; i < 4; ++i) x[i] = detail::cofactor(l, 0, i) / det;
  // One Newton step x <- x + x (1 - a x) recovers the digits lost to the
  // conditioning of L.
  BasicMultivector<T> residual = -(a * x);
  residual[kScalar] += T(1);
  return x + x * residual;
}

/// exp(angle * f) for f with f^2 = -1.
template <std::floating_point T>
BasicMultivector<T> exp_root(T angle, const BasicMultivector<T>& f) {
  BasicMultivector<T> r = std::sin(angle) * f;
  r[kScalar] += std::cos(angle);
  return r;
}

template <class T>
constexpr T max_abs_diff(const BasicMultivector<T>& a,
                         const BasicMultivector<T>& b) {
  T m{};
  for (std::size_t i = 0; i < 4; ++i) {
    const T d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    if (d > m) m = d;
  }
  return m;
}

template <class T>
constexpr bool approx_equal(const BasicMultivector<T>& a,
                            const BasicMultivector<T>& b, T tol) {
  return a.signature() == b.signature() && max_abs_diff(a, b) <= tol;
}

/// "m0,m1,m2,m12" with round-trip precision.
inline std::string format_multivector(const Multivector& m) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", m[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

inline Multivector parse_multivector(std::string_view text, Signature sig) {
  Multivector m(sig);
  std::size_t field = 0;
  std::size_t pos = 0;
  bool done = false;
  while (!done) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = text.size();
      done = true;
    }
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (field >= 4 || token.empty() || ec != std::errc{} ||
        ptr != token.data() + token.size()) {
      throw DomainError("malformed multivector '" + std::string(text) +
                        "': expected four comma-separated numbers");
    }
    m[field++] = value;
    pos = comma + 1;
  }
  if (field != 4) {
    throw DomainError("malformed multivector '" + std::string(text) +
                      "': expected four comma-separated numbers");
  }
  return m;
}

}  // namespace clifford_mellin
