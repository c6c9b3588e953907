#pragma once

#include <string>
#include <utility>

#include "horadam/rational.hpp"

namespace horadam {

/// Real quaternion a0 + a1 i + a2 j + a3 k over exact rationals, with the
/// Hamilton multiplication rule i^2 = j^2 = k^2 = -1, ij = -ji = k,
/// jk = -kj = i, ki = -ik = j. Multiplication is NOT commutative; every
/// routine below keeps left/right factor order.
class Quaternion {
 public:
  Rat a0, a1, a2, a3;

  Quaternion() = default;
  Quaternion(Rat c0, Rat c1, Rat c2, Rat c3)
      : a0(std::move(c0)), a1(std::move(c1)), a2(std::move(c2)),
        a3(std::move(c3)) {}

  // Embeds a scalar as a real quaternion (zero vector part).
  static Quaternion real(Rat c) { return Quaternion(std::move(c), 0, 0, 0); }

  bool is_real() const { return a1.is_zero() && a2.is_zero() && a3.is_zero(); }
  bool is_zero() const { return a0.is_zero() && is_real(); }

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    return {x.a0 + y.a0, x.a1 + y.a1, x.a2 + y.a2, x.a3 + y.a3};
  }
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {x.a0 - y.a0, x.a1 - y.a1, x.a2 - y.a2, x.a3 - y.a3};
  }
  Quaternion operator-() const { return {-a0, -a1, -a2, -a3}; }

  // Hamilton product.
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return {x.a0 * y.a0 - x.a1 * y.a1 - x.a2 * y.a2 - x.a3 * y.a3,
            x.a0 * y.a1 + x.a1 * y.a0 + x.a2 * y.a3 - x.a3 * y.a2,
            x.a0 * y.a2 + x.a2 * y.a0 + x.a3 * y.a1 - x.a1 * y.a3,
            x.a0 * y.a3 + x.a3 * y.a0 + x.a1 * y.a2 - x.a2 * y.a1};
  }

  // Scalars are central, so one-sided scaling is enough.
  friend Quaternion operator*(const Rat& c, const Quaternion& x) {
    return {c * x.a0, c * x.a1, c * x.a2, c * x.a3};
  }
  friend Quaternion operator*(const Quaternion& x, const Rat& c) {
    return c * x;
  }

  friend bool operator==(const Quaternion& x, const Quaternion& y) {
    return x.a0 == y.a0 && x.a1 == y.a1 && x.a2 == y.a2 && x.a3 == y.a3;
  }
  friend bool operator!=(const Quaternion& x, const Quaternion& y) {
    return !(x == y);
  }

  Quaternion conj() const { return {a0, -a1, -a2, -a3}; }

  // N(q) = q conj(q) = a0^2 + a1^2 + a2^2 + a3^2.
  Rat norm() const { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }

  // "a0 + a1 i + a2 j + a3 k" with explicit signs, e.g. "1 - 2 i + 3 j - 4 k".
  std::string str() const {
    std::string out = a0.str();
    const Rat* comps[3] = {&a1, &a2, &a3};
    const char* units[3] = {"i", "j", "k"};
    for (int t = 0; t < 3; ++t) {
      const Rat& c = *comps[t];
      if (c.sign() < 0) {
        out += " - " + (-c).str();
      } else {
        out += " + " + c.str();
      }
      out += " ";
      out += units[t];
    }
    return out;
  }
};

inline Quaternion conj(const Quaternion& x) { return x.conj(); }
inline Rat norm(const Quaternion& x) { return x.norm(); }

}  // namespace horadam
