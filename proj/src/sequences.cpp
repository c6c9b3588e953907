#include "horadam/sequences.hpp"

#include <stdexcept>

namespace horadam {

namespace {

// Row-major 2x2 integer matrix, just enough for companion-matrix powers.
struct IMat2 {
  Int a, b, c, d;
};

IMat2 imul(const IMat2& x, const IMat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IMat2 ipow(IMat2 base, unsigned long e) {
  IMat2 acc{1, 0, 0, 1};
  while (e > 0) {
    if (e & 1) acc = imul(acc, base);
    e >>= 1;
    if (e > 0) base = imul(base, base);
  }
  return acc;
}

unsigned long magnitude_of_negative(long n) {
  // Avoids overflow at LONG_MIN.
  return static_cast<unsigned long>(-(n + 1)) + 1UL;
}

}  // namespace

Rat term_naive(const HoradamParams& params, long n) {
  if (n >= 0) {
    Int lo = params.w0, hi = params.w1;
    if (n == 0) return Rat(lo);
    for (long i = 1; i < n; ++i) {
      Int next = params.p * hi + params.q * lo;
      lo = std::move(hi);
      hi = std::move(next);
    }
    return Rat(hi);
  }
  if (params.q == 0) throw NegativeIndexWithZeroQ();
  // w_{i-2} = (w_i - p w_{i-1}) / q, stepping down from (w_0, w_1).
  const Rat p(params.p), q(params.q);
  Rat lo(params.w0), hi(params.w1);
  for (long i = 0; i > n; --i) {
    Rat prev = (hi - p * lo) / q;
    hi = std::move(lo);
    lo = std::move(prev);
  }
  return lo;
}

std::pair<Int, Int> pq_fib_pair(const Int& p, const Int& q, unsigned long n) {
  Int a(0), b(1);  // (u_0, u_1)
  if (n == 0) return {a, b};
  int top = 63;
  while (top > 0 && ((n >> top) & 1UL) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    // (u_m, u_{m+1}) -> (u_{2m}, u_{2m+1}); q u_{m-1} = u_{m+1} - p u_m.
    Int dbl = a * (2 * b - p * a);
    Int dbl1 = b * b + q * a * a;
    if ((n >> bit) & 1UL) {
      a = std::move(dbl1);
      b = p * a + q * dbl;
    } else {
      a = std::move(dbl);
      b = std::move(dbl1);
    }
  }
  return {a, b};
}

Rat term_fast(const HoradamParams& params, long n) {
  if (n >= 0) {
    // w_n = w_1 u_n + q w_0 u_{n-1}, with q u_{n-1} read off as u_{n+1} - p u_n.
    auto [un, un1] = pq_fib_pair(params.p, params.q, static_cast<unsigned long>(n));
    return Rat(Int(params.w1 * un + params.w0 * (un1 - params.p * un)));
  }
  if (params.q == 0) throw NegativeIndexWithZeroQ();
  // (w_{1-m}; w_{-m}) = (1/q^m) (0 q; 1 -p)^m (w_1; w_0).
  const unsigned long m = magnitude_of_negative(n);
  const IMat2 cm = ipow({0, params.q, 1, -params.p}, m);
  return Rat(Int(cm.c * params.w1 + cm.d * params.w0), pow_int(params.q, m));
}

std::array<Rat, 4> term_window(const HoradamParams& params, long n) {
  Rat wn, wn1;
  if (n >= 0) {
    auto [un, un1] = pq_fib_pair(params.p, params.q, static_cast<unsigned long>(n));
    wn = Rat(Int(params.w1 * un + params.w0 * (un1 - params.p * un)));
    wn1 = Rat(Int(params.w1 * un1 + params.w0 * (params.q * un)));
  } else {
    if (params.q == 0) throw NegativeIndexWithZeroQ();
    const unsigned long m = magnitude_of_negative(n);
    const IMat2 cm = ipow({0, params.q, 1, -params.p}, m);
    const Int qm = pow_int(params.q, m);
    wn = Rat(Int(cm.c * params.w1 + cm.d * params.w0), qm);
    wn1 = Rat(Int(cm.a * params.w1 + cm.b * params.w0), qm);
  }
  const Rat p(params.p), q(params.q);
  Rat wn2 = p * wn1 + q * wn;
  Rat wn3 = p * wn2 + q * wn1;
  return {std::move(wn), std::move(wn1), std::move(wn2), std::move(wn3)};
}

Int binomial(unsigned long n, unsigned long j) {
  if (j > n) throw std::out_of_range("binomial requires 0 <= j <= n");
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, j);
  return out;
}

}  // namespace horadam
