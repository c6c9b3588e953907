#include "horadam/mat2.hpp"

#include <string>

#include "horadam/errors.hpp"
#include "horadam/qsequences.hpp"

namespace horadam {

namespace {

// (p q; 1 0) with scalar entries?
bool is_companion(const QMat2& x) {
  return x.all_real() && x.m10.a0 == Rat(1) && x.m11.a0 == Rat(0);
}

QMat2 pow_nonneg(QMat2 base, unsigned long e) {
  QMat2 acc = QMat2::identity();
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

}  // namespace

QMat2 mat_pow(const QMat2& x, long e) {
  if (e == 0) return QMat2::identity();
  if (e > 0) {
    // Companion matrices with integer p, q have the closed form
    // (u_{e+1} q u_e; u_e q u_{e-1}), which skips the quaternion product.
    if (is_companion(x) && x.m00.a0.is_integer() && x.m01.a0.is_integer()) {
      const Int p = x.m00.a0.numerator(), q = x.m01.a0.numerator();
      auto [ue, ue1] = pq_fib_pair(p, q, static_cast<unsigned long>(e));
      return QMat2::scalar(Rat(ue1), Rat(q * ue), Rat(ue), Rat(ue1 - p * ue));
    }
    return pow_nonneg(x, static_cast<unsigned long>(e));
  }
  if (!is_companion(x)) throw NegativePowerUnsupported();
  const Rat p = x.m00.a0, q = x.m01.a0;
  if (q.is_zero()) throw NegativeIndexWithZeroQ("companion matrix inverse requires q != 0");
  const QMat2 inverse = {Quaternion::real(0), Quaternion::real(1),
                         Quaternion::real(Rat(1) / q), Quaternion::real(-p / q)};
  const unsigned long m = static_cast<unsigned long>(-(e + 1)) + 1UL;
  return pow_nonneg(inverse, m);
}

QMat2 companion_matrix(const Int& p, const Int& q) {
  return QMat2::scalar(Rat(p), Rat(q), 1, 0);
}

QMat2 horadam_seed_matrix(const HoradamParams& params) {
  const Int w2 = params.p * params.w1 + params.q * params.w0;
  return QMat2::scalar(Rat(w2), Rat(params.q * params.w1), Rat(params.w1),
                       Rat(params.q * params.w0));
}

QMat2 horadam_quaternion_matrix(const HoradamParams& params) {
  const Rat q(params.q);
  return {horadam_quaternion(params, 2), q * horadam_quaternion(params, 1),
          horadam_quaternion(params, 1), q * horadam_quaternion(params, 0)};
}

QMat2 pq_fib_quaternion_matrix(const Int& p, const Int& q) {
  return horadam_quaternion_matrix(pq_fibonacci_params(p, q));
}

QMat2 lucas_quaternion_seed_matrix(const Int& p, const Int& q) {
  const Rat d(p * p + 4 * q);
  const Quaternion u1 = pq_fibonacci_quaternion(p, q, 1);
  const Quaternion v1 = pq_lucas_quaternion(p, q, 1);
  return {v1, d * u1, u1, v1};
}

QMat2 lucas_companion_matrix(const Int& p, const Int& q) {
  return QMat2::scalar(Rat(p), Rat(p * p + 4 * q), 1, Rat(p));
}

QMat2 ascending_matrix(const Int& p, const Int& q) {
  return QMat2::scalar(Rat(p), 1, Rat(q), 0);
}

QMat2 descending_matrix(const Int& p, const Int& q) {
  return QMat2::scalar(0, -1, Rat(-q), Rat(p));
}

QMat2 shift_matrix(const Int& p, const Int& q, long r) {
  return QMat2::scalar(u_term(p, q, r), 0, Rat(q) * u_term(p, q, r - 1), 1);
}

QMat2 shift_mirror_matrix(const Int& p, const Int& q, long r) {
  return QMat2::scalar(1, 0, -(Rat(q) * u_term(p, q, r - 1)), u_term(p, q, r));
}

QMat2 build_named(std::string_view name, const HoradamParams& params, long r) {
  if (name == "A") return companion_matrix(params.p, params.q);
  if (name == "T") return horadam_seed_matrix(params);
  if (name == "U") return pq_fib_quaternion_matrix(params.p, params.q);
  if (name == "W") return horadam_quaternion_matrix(params);
  if (name == "K") return lucas_quaternion_seed_matrix(params.p, params.q);
  if (name == "B") return lucas_companion_matrix(params.p, params.q);
  if (name == "Asc") return ascending_matrix(params.p, params.q);
  if (name == "Desc") return descending_matrix(params.p, params.q);
  if (name == "Shift") return shift_matrix(params.p, params.q, r);
  if (name == "ShiftMirror") return shift_mirror_matrix(params.p, params.q, r);
  throw UnknownMatrixName(std::string(name));
}

}  // namespace horadam
