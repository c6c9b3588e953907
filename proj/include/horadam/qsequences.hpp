#pragma once

#include "horadam/quaternion.hpp"
#include "horadam/sequences.hpp"

namespace horadam {

// W_n = w_n + w_{n+1} i + w_{n+2} j + w_{n+3} k; all four components come
// from one companion-matrix power.
Quaternion horadam_quaternion(const HoradamParams& params, long n);

// U_n and V_n: the (0,1) and (2,p) specializations.
Quaternion pq_fibonacci_quaternion(const Int& p, const Int& q, long n);
Quaternion pq_lucas_quaternion(const Int& p, const Int& q, long n);

// Q_n and K_n: the classic Fibonacci and Lucas quaternions (p = q = 1).
Quaternion fibonacci_quaternion(long n);
Quaternion lucas_quaternion(long n);

}  // namespace horadam
