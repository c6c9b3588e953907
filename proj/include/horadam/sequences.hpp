#pragma once

#include <array>
#include <deque>
#include <utility>

#include "horadam/errors.hpp"
#include "horadam/rational.hpp"

namespace horadam {

/// Parameters of the second-order recurrence w_n = p w_{n-1} + q w_{n-2}
/// with initial terms w_0, w_1. Negative indices run the recurrence
/// backwards, w_{n-2} = (w_n - p w_{n-1}) / q, and therefore need q != 0.
struct HoradamParams {
  Int w0, w1, p, q;

  Int d() const { return p * p + 4 * q; }

  friend bool operator==(const HoradamParams& a, const HoradamParams& b) {
    return a.w0 == b.w0 && a.w1 == b.w1 && a.p == b.p && a.q == b.q;
  }
};

inline HoradamParams pq_fibonacci_params(const Int& p, const Int& q) {
  return {0, 1, p, q};
}
inline HoradamParams pq_lucas_params(const Int& p, const Int& q) {
  return {2, p, p, q};
}

/// Which of the three sequence shapes a caller means; the special kinds are
/// the (0,1) and (2,p) initial pairs.
struct SequenceKind {
  enum class Tag { general, pq_fibonacci, pq_lucas };

  Tag tag;
  HoradamParams params;

  static SequenceKind general(HoradamParams pr) {
    return {Tag::general, std::move(pr)};
  }
  static SequenceKind pq_fibonacci(const Int& p, const Int& q) {
    return {Tag::pq_fibonacci, pq_fibonacci_params(p, q)};
  }
  static SequenceKind pq_lucas(const Int& p, const Int& q) {
    return {Tag::pq_lucas, pq_lucas_params(p, q)};
  }
};

// O(|n|) evaluation by running the recurrence; the independent oracle for
// every fast path. Throws NegativeIndexWithZeroQ when n < 0 and q = 0.
Rat term_naive(const HoradamParams& params, long n);

// O(log |n|) evaluation through powers of the companion matrix (p q; 1 0);
// equal to term_naive for every n. Negative n goes through the exact inverse
// (1/q)(0 q; 1 -p).
Rat term_fast(const HoradamParams& params, long n);

// w_n .. w_{n+3} from a single companion-matrix power.
std::array<Rat, 4> term_window(const HoradamParams& params, long n);

// (u_n, u_{n+1}) for the (p,q)-Fibonacci sequence, n >= 0, by index doubling.
std::pair<Int, Int> pq_fib_pair(const Int& p, const Int& q, unsigned long n);

inline Rat u_term(const Int& p, const Int& q, long n) {
  return term_fast(pq_fibonacci_params(p, q), n);
}
inline Rat v_term(const Int& p, const Int& q, long n) {
  return term_fast(pq_lucas_params(p, q), n);
}

// Exact C(n, j); rejects j > n.
Int binomial(unsigned long n, unsigned long j);

/// Grow-on-demand window of sequence terms, filled by the recurrence in both
/// directions. References stay valid across later calls.
class TermCache {
 public:
  explicit TermCache(HoradamParams params)
      : params_(std::move(params)), fwd_{Rat(params_.w0), Rat(params_.w1)} {}

  const HoradamParams& params() const { return params_; }

  const Rat& at(long i) {
    if (i >= 0) {
      while (static_cast<long>(fwd_.size()) <= i) {
        const auto len = fwd_.size();
        fwd_.push_back(Rat(params_.p) * fwd_[len - 1] +
                       Rat(params_.q) * fwd_[len - 2]);
      }
      return fwd_[static_cast<std::size_t>(i)];
    }
    if (params_.q == 0) throw NegativeIndexWithZeroQ();
    const Rat q(params_.q), p(params_.p);
    while (static_cast<long>(bwd_.size()) < -i) {
      const auto len = bwd_.size();
      const Rat& next = len >= 2 ? bwd_[len - 2] : at(1 - static_cast<long>(len));
      const Rat& mid = len >= 1 ? bwd_[len - 1] : at(0);
      bwd_.push_back((next - p * mid) / q);
    }
    return bwd_[static_cast<std::size_t>(-i - 1)];
  }

 private:
  HoradamParams params_;
  std::deque<Rat> fwd_;  // w_0, w_1, ...
  std::deque<Rat> bwd_;  // w_{-1}, w_{-2}, ...
};

}  // namespace horadam
