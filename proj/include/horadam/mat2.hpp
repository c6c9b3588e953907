#pragma once

#include <string_view>

#include "horadam/quaternion.hpp"
#include "horadam/sequences.hpp"

namespace horadam {

/// 2x2 matrix with quaternion entries. Scalars embed as real quaternions, so
/// one product routine serves every matrix in sight; the product keeps the
/// left/right order of each entry pair.
struct QMat2 {
  Quaternion m00, m01, m10, m11;

  static QMat2 identity() {
    return {Quaternion::real(1), Quaternion::real(0), Quaternion::real(0),
            Quaternion::real(1)};
  }
  static QMat2 zero() { return {}; }
  static QMat2 scalar(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    return {Quaternion::real(a), Quaternion::real(b), Quaternion::real(c),
            Quaternion::real(d)};
  }

  bool all_real() const {
    return m00.is_real() && m01.is_real() && m10.is_real() && m11.is_real();
  }

  friend QMat2 operator+(const QMat2& x, const QMat2& y) {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
  }
  friend QMat2 operator-(const QMat2& x, const QMat2& y) {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
  }
  friend QMat2 operator*(const QMat2& x, const QMat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }
  friend QMat2 operator*(const Rat& c, const QMat2& x) {
    return {c * x.m00, c * x.m01, c * x.m10, c * x.m11};
  }
  friend bool operator==(const QMat2& x, const QMat2& y) {
    return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
  }
  friend bool operator!=(const QMat2& x, const QMat2& y) { return !(x == y); }
};

inline QMat2 mat_mul(const QMat2& x, const QMat2& y) { return x * y; }

// Exponentiation by squaring; e = 0 gives the identity. Negative e is only
// defined when x is a companion matrix (p q; 1 0) with q != 0, through its
// exact inverse (1/q)(0 q; 1 -p).
QMat2 mat_pow(const QMat2& x, long e);

// Cofactor expansion along row 1 / row 2, the expansion-row entry always the
// LEFT factor. The two values differ once entries stop commuting.
inline Quaternion det_row1(const QMat2& x) {
  return x.m00 * x.m11 - x.m01 * x.m10;
}
inline Quaternion det_row2(const QMat2& x) {
  return x.m11 * x.m00 - x.m10 * x.m01;
}

// The named matrices. Row-major entry layouts:
//   A        (p q; 1 0)                companion matrix
//   T        (w_2 q w_1; w_1 q w_0)    scalar seed
//   U        (U_2 q U_1; U_1 q U_0)    (p,q)-Fibonacci quaternion seed
//   W        (W_2 q W_1; W_1 q W_0)    Horadam quaternion seed
//   K        (V_1 d U_1; U_1 V_1)      Lucas/Fibonacci quaternion seed
//   B        (p d; 1 p)                Lucas companion, d = p^2 + 4q
//   Asc      (p 1; q 0)
//   Desc     (0 -1; -q p)
//   Shift    (u_r 0; q u_{r-1} 1)      takes the extra index r
//   ShiftMirror (1 0; -q u_{r-1} u_r)
QMat2 companion_matrix(const Int& p, const Int& q);
QMat2 horadam_seed_matrix(const HoradamParams& params);
QMat2 pq_fib_quaternion_matrix(const Int& p, const Int& q);
QMat2 horadam_quaternion_matrix(const HoradamParams& params);
QMat2 lucas_quaternion_seed_matrix(const Int& p, const Int& q);
QMat2 lucas_companion_matrix(const Int& p, const Int& q);
QMat2 ascending_matrix(const Int& p, const Int& q);
QMat2 descending_matrix(const Int& p, const Int& q);
QMat2 shift_matrix(const Int& p, const Int& q, long r);
QMat2 shift_mirror_matrix(const Int& p, const Int& q, long r);

// String-keyed dispatcher over the table above; throws UnknownMatrixName.
QMat2 build_named(std::string_view name, const HoradamParams& params, long r = 0);

}  // namespace horadam
