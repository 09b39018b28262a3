#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bjclass {

/// Library-wide default tolerance for floating-point comparisons.
inline constexpr double kDefaultTol = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

/// Error type for precondition violations and surfaced numerical failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Coefficient (skew) field of a single matrix block.
enum class ScalarKind : std::uint8_t { Real, Complex, Quaternion };

/// Base field of the whole algebra.
enum class FieldTag : std::uint8_t { Real, Complex };

[[nodiscard]] constexpr int real_dim(ScalarKind k) noexcept {
  return k == ScalarKind::Real ? 1 : (k == ScalarKind::Complex ? 2 : 4);
}

[[nodiscard]] inline std::string to_string(ScalarKind k) {
  switch (k) {
    case ScalarKind::Real: return "R";
    case ScalarKind::Complex: return "C";
    default: return "H";
  }
}

[[nodiscard]] inline std::string to_string(FieldTag f) {
  return f == FieldTag::Real ? "R" : "C";
}

/// Quaternion-backed scalar restricted by a kind tag.
///
/// Real scalars use coordinate w only, complex scalars w + x i, quaternions
/// all four coordinates (w, x, y, z) with the Hamilton product (i j = k).
/// The complex subfield sits inside the quaternions as w + x i, so one set of
/// arithmetic serves all three kinds.
struct Scalar {
  ScalarKind kind = ScalarKind::Real;
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Scalar() = default;
  constexpr Scalar(ScalarKind k, double w_, double x_ = 0.0, double y_ = 0.0,
                   double z_ = 0.0)
      : kind(k), w(w_), x(x_), y(y_), z(z_) {}

  [[nodiscard]] static constexpr Scalar real(double v) {
    return Scalar(ScalarKind::Real, v);
  }
  [[nodiscard]] static constexpr Scalar complex(double re, double im) {
    return Scalar(ScalarKind::Complex, re, im);
  }
  [[nodiscard]] static constexpr Scalar quaternion(double w_, double x_,
                                                   double y_, double z_) {
    return Scalar(ScalarKind::Quaternion, w_, x_, y_, z_);
  }
  [[nodiscard]] static constexpr Scalar zero(ScalarKind k) {
    return Scalar(k, 0.0);
  }
  [[nodiscard]] static constexpr Scalar one(ScalarKind k) {
    return Scalar(k, 1.0);
  }

  [[nodiscard]] static Scalar from_std_complex(std::complex<double> c,
                                               ScalarKind k = ScalarKind::Complex) {
    if (k == ScalarKind::Real && c.imag() != 0.0)
      throw Error("from_std_complex: nonzero imaginary part for real scalar");
    return Scalar(k, c.real(), c.imag());
  }

  [[nodiscard]] double re() const noexcept { return w; }
  [[nodiscard]] double modulus2() const noexcept {
    return w * w + x * x + y * y + z * z;
  }
  [[nodiscard]] double modulus() const noexcept { return std::sqrt(modulus2()); }

  [[nodiscard]] Scalar conj() const noexcept {
    return Scalar(kind, w, -x, -y, -z);
  }

  [[nodiscard]] bool is_zero(double tol = 0.0) const noexcept {
    return modulus() <= tol;
  }

  [[nodiscard]] std::complex<double> to_std_complex() const {
    if (kind == ScalarKind::Quaternion)
      throw Error("to_std_complex: quaternion scalar");
    return {w, x};
  }

  /// Complex split q = a + b j with a = w + x i, b = y + z i.
  [[nodiscard]] std::complex<double> complex_part_a() const noexcept {
    return {w, x};
  }
  [[nodiscard]] std::complex<double> complex_part_b() const noexcept {
    return {y, z};
  }
  [[nodiscard]] static Scalar from_complex_pair(std::complex<double> a,
                                                std::complex<double> b) {
    return Scalar(ScalarKind::Quaternion, a.real(), a.imag(), b.real(),
                  b.imag());
  }
};

namespace detail {
inline void require_same_kind(const Scalar& a, const Scalar& b,
                              const char* op) {
  if (a.kind != b.kind)
    throw Error(std::string("scalar kind mismatch in ") + op);
}
}  // namespace detail

[[nodiscard]] inline Scalar operator+(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b, "operator+");
  return Scalar(a.kind, a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
}

[[nodiscard]] inline Scalar operator-(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b, "operator-");
  return Scalar(a.kind, a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z);
}

[[nodiscard]] inline Scalar operator-(const Scalar& a) {
  return Scalar(a.kind, -a.w, -a.x, -a.y, -a.z);
}

/// Hamilton product; restricts to ordinary multiplication on R and C.
[[nodiscard]] inline Scalar operator*(const Scalar& a, const Scalar& b) {
  detail::require_same_kind(a, b, "operator*");
  return Scalar(a.kind, a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
}

[[nodiscard]] inline Scalar operator*(const Scalar& a, double s) {
  return Scalar(a.kind, a.w * s, a.x * s, a.y * s, a.z * s);
}
[[nodiscard]] inline Scalar operator*(double s, const Scalar& a) {
  return a * s;
}

[[nodiscard]] inline Scalar inverse(const Scalar& a) {
  const double m2 = a.modulus2();
  if (m2 == 0.0) throw Error("inverse of zero scalar");
  return a.conj() * (1.0 / m2);
}

[[nodiscard]] inline Scalar quat_mul(const Scalar& a, const Scalar& b) {
  return a * b;
}
[[nodiscard]] inline Scalar quat_conj(const Scalar& a) { return a.conj(); }
[[nodiscard]] inline double modulus(const Scalar& a) { return a.modulus(); }

[[nodiscard]] inline bool approx_equal(const Scalar& a, const Scalar& b,
                                       double tol = kDefaultTol) {
  return (a - b).modulus() <= tol;
}

/// Widens a scalar to a larger kind (R into C, anything into H).
[[nodiscard]] inline Scalar promote(const Scalar& a, ScalarKind k) {
  if (real_dim(k) < real_dim(a.kind))
    throw Error("promote: target kind narrower than source");
  return Scalar(k, a.w, a.x, a.y, a.z);
}

}  // namespace bjclass
