#include "horadam/qsequences.hpp"

namespace horadam {

Quaternion horadam_quaternion(const HoradamParams& params, long n) {
  auto w = term_window(params, n);
  return {std::move(w[0]), std::move(w[1]), std::move(w[2]), std::move(w[3])};
}

Quaternion pq_fibonacci_quaternion(const Int& p, const Int& q, long n) {
  return horadam_quaternion(pq_fibonacci_params(p, q), n);
}

Quaternion pq_lucas_quaternion(const Int& p, const Int& q, long n) {
  return horadam_quaternion(pq_lucas_params(p, q), n);
}

Quaternion fibonacci_quaternion(long n) { return pq_fibonacci_quaternion(1, 1, n); }

Quaternion lucas_quaternion(long n) { return pq_lucas_quaternion(1, 1, n); }

}  // namespace horadam
