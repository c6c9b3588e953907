#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horadam/io.hpp"
#include "horadam/mat2.hpp"
#include "horadam/qsequences.hpp"
#include "test_util.hpp"

using horadam::companion_matrix;
using horadam::det_row1;
using horadam::det_row2;
using horadam::HoradamParams;
using horadam::horadam_quaternion;
using horadam::mat_pow;
using horadam::QMat2;
using horadam::Quaternion;
using horadam::Rat;
using horadam::term_naive;
using testutil::quat;

namespace {

QMat2 closed_form_power(const HoradamParams& u, long n) {
  // (u_{n+1} q u_n; u_n q u_{n-1})
  const Rat q(u.q);
  return {Quaternion::real(term_naive(u, n + 1)),
          Quaternion::real(q * term_naive(u, n)),
          Quaternion::real(term_naive(u, n)),
          Quaternion::real(q * term_naive(u, n - 1))};
}

HoradamParams u_params(long p, long q) { return {0, 1, p, q}; }

}  // namespace

TEST_CASE("product basics") {
  const QMat2 m{quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1),
                quat(1, 0, 0, 0)};
  CHECK(m * QMat2::identity() == m);
  CHECK(QMat2::identity() * m == m);
  CHECK(m * QMat2::zero() == QMat2::zero());
  CHECK(QMat2::zero() * m == QMat2::zero());
  CHECK(m + QMat2::zero() == m);
  CHECK(m - m == QMat2::zero());

  // (i j; k 1)^2, each entry expanded through the Hamilton table:
  //   [ i i + j k    i j + j ]   [ -1 + i    j + k ]
  //   [ k i + k      k j + 1 ] = [  j + k    1 - i ]
  const QMat2 sq = m * m;
  CHECK(sq.m00 == quat(-1, 1, 0, 0));
  CHECK(sq.m01 == quat(0, 0, 1, 1));
  CHECK(sq.m10 == quat(0, 0, 1, 1));
  CHECK(sq.m11 == quat(1, -1, 0, 0));

  for (long p = -3; p <= 3; ++p) {
    for (long q = -3; q <= 3; ++q) {
      const QMat2 asc = horadam::ascending_matrix(p, q);
      const QMat2 desc = horadam::descending_matrix(p, q);
      CHECK(asc * desc == Rat(-q) * QMat2::identity());
    }
  }
}

TEST_CASE("matrix power closed form") {
  // A(1,1)^5 = (8 5; 5 3): Fibonacci numbers.
  const QMat2 a11 = companion_matrix(1, 1);
  CHECK(mat_pow(a11, 5) == QMat2::scalar(8, 5, 5, 3));
  CHECK(mat_pow(a11, 0) == QMat2::identity());

  for (long p = -3; p <= 3; ++p) {
    for (long q = -3; q <= 3; ++q) {
      const QMat2 a = companion_matrix(p, q);
      QMat2 iterated = QMat2::identity();
      for (long n = 1; n <= 30; ++n) {
        iterated = iterated * a;  // independent route: repeated product
        CHECK(mat_pow(a, n) == iterated);
        CHECK(iterated == closed_form_power(u_params(p, q), n));
      }
    }
  }
  // Deep exponents on sample parameters.
  for (const auto& [p, q] : {std::pair<long, long>{1, 1}, {2, 3}, {-3, 2}}) {
    const QMat2 a = companion_matrix(p, q);
    QMat2 iterated = QMat2::identity();
    for (long n = 1; n <= 100; ++n) {
      iterated = iterated * a;
      CHECK(mat_pow(a, n) == iterated);
      CHECK(iterated == closed_form_power(u_params(p, q), n));
    }
  }
}

TEST_CASE("negative powers of the companion matrix") {
  const QMat2 a = companion_matrix(2, 3);
  CHECK(mat_pow(a, -1) * a == QMat2::identity());
  CHECK(a * mat_pow(a, -1) == QMat2::identity());
  // Power law across signs.
  for (long m = -20; m <= 20; ++m) {
    for (long n = -20; n <= 20; ++n) {
      CHECK(mat_pow(a, m) * mat_pow(a, n) == mat_pow(a, m + n));
    }
  }
  // A^{-n} agrees with the closed form extended to negative n.
  const HoradamParams u = u_params(2, 3);
  for (long n = -10; n < 0; ++n) {
    const QMat2 behind = mat_pow(a, n);
    CHECK(behind.m00.a0 == horadam::term_fast(u, n + 1));
    CHECK(behind.m10.a0 == horadam::term_fast(u, n));
    CHECK(behind.m01.a0 == Rat(3) * horadam::term_fast(u, n));
    CHECK(behind.m11.a0 == Rat(3) * horadam::term_fast(u, n - 1));
  }

  CHECK_THROWS_AS(mat_pow(QMat2::scalar(1, 2, 3, 4), -1),
                  horadam::NegativePowerUnsupported);
  CHECK_THROWS_AS(mat_pow(companion_matrix(2, 0), -1),
                  horadam::NegativeIndexWithZeroQ);
}

TEST_CASE("seed-matrix relations generate the quaternion windows") {
  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      if (q == 0) continue;
      const QMat2 a = companion_matrix(p, q);
      const QMat2 umat = horadam::pq_fib_quaternion_matrix(p, q);
      for (long w0 = -1; w0 <= 1; ++w0) {
        for (long w1 = -1; w1 <= 1; ++w1) {
          const HoradamParams pr{w0, w1, p, q};
          const QMat2 t = horadam::horadam_seed_matrix(pr);
          const QMat2 wmat = horadam::horadam_quaternion_matrix(pr);
          const Rat qr(q);
          for (long n = 1; n <= 8; ++n) {
            // T A^{n-1} = (w_{n+1} q w_n; w_n q w_{n-1})
            const QMat2 ta = t * mat_pow(a, n - 1);
            CHECK(ta == QMat2::scalar(term_naive(pr, n + 1),
                                      qr * term_naive(pr, n),
                                      term_naive(pr, n),
                                      qr * term_naive(pr, n - 1)));
            // (T A^{n-1}) U = U (T A^{n-1}) = (W_{n+2} q W_{n+1}; ...)
            const QMat2 lifted{
                horadam_quaternion(pr, n + 2), qr * horadam_quaternion(pr, n + 1),
                horadam_quaternion(pr, n + 1), qr * horadam_quaternion(pr, n)};
            CHECK(ta * umat == lifted);
            CHECK(umat * ta == lifted);
            // A^n W = W A^n = same window.
            CHECK(mat_pow(a, n) * wmat == lifted);
            CHECK(wmat * mat_pow(a, n) == lifted);
          }
        }
      }
    }
  }
}

TEST_CASE("Lucas-side matrices carry the 2^{n-1} factor") {
  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      const QMat2 b = horadam::lucas_companion_matrix(p, q);
      const QMat2 k = horadam::lucas_quaternion_seed_matrix(p, q);
      const Rat d(p * p + 4 * q);
      Rat two_pow(1);  // 2^{n-1}
      for (long n = 1; n <= 10; ++n) {
        const QMat2 scalar_block = QMat2::scalar(
            horadam::v_term(p, q, n), d * horadam::u_term(p, q, n),
            horadam::u_term(p, q, n), horadam::v_term(p, q, n));
        CHECK(mat_pow(b, n) == two_pow * scalar_block);
        const QMat2 quat_block{
            horadam::pq_lucas_quaternion(p, q, n),
            d * horadam::pq_fibonacci_quaternion(p, q, n),
            horadam::pq_fibonacci_quaternion(p, q, n),
            horadam::pq_lucas_quaternion(p, q, n)};
        CHECK(k * mat_pow(b, n - 1) == two_pow * quat_block);
        two_pow *= Rat(2);
      }
    }
  }
}

TEST_CASE("Cayley-Hamilton and the squared relation") {
  for (long p = -3; p <= 3; ++p) {
    for (long q = -3; q <= 3; ++q) {
      const QMat2 a = companion_matrix(p, q);
      const QMat2 a2 = a * a;
      CHECK(a2 == Rat(p) * a + Rat(q) * QMat2::identity());
      const QMat2 a2_plus_q = a2 + Rat(q) * QMat2::identity();
      CHECK(a2_plus_q * a2_plus_q == Rat(p * p + 4 * q) * a2);
    }
  }
}

TEST_CASE("shift kernels") {
  CHECK(horadam::shift_matrix(1, 1, 1) == QMat2::identity());
  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      for (long r = 1; r <= 6; ++r) {
        const QMat2 prod = horadam::shift_matrix(p, q, r) *
                           horadam::shift_mirror_matrix(p, q, r);
        CHECK(prod == horadam::u_term(p, q, r) * QMat2::identity());
      }
      if (q == 0) continue;
      // Desc^n (W_0; -W_1) = (W_n; -W_{n+1}).
      const HoradamParams pr{2, -1, p, q};
      const QMat2 desc = horadam::descending_matrix(p, q);
      QMat2 desc_n = QMat2::identity();
      for (long n = 1; n <= 8; ++n) {
        desc_n = desc_n * desc;
        const Quaternion top = desc_n.m00 * horadam_quaternion(pr, 0) +
                               desc_n.m01 * -horadam_quaternion(pr, 1);
        const Quaternion bottom = desc_n.m10 * horadam_quaternion(pr, 0) +
                                  desc_n.m11 * -horadam_quaternion(pr, 1);
        CHECK(top == horadam_quaternion(pr, n));
        CHECK(bottom == -horadam_quaternion(pr, n + 1));
      }
    }
  }
}

TEST_CASE("row-expansion determinants") {
  CHECK(det_row1(companion_matrix(4, 7)) == Quaternion::real(-7));
  // (i j; k 1): det_row1 = i 1 - j k = 0, det_row2 = 1 i - k j = 2i.
  const QMat2 m{quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1),
                quat(1, 0, 0, 0)};
  CHECK(det_row1(m) == Quaternion());
  CHECK(det_row2(m) == quat(0, 2, 0, 0));

  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      const QMat2 a = companion_matrix(p, q);
      Rat expect(1);
      for (long n = 1; n <= 10; ++n) {
        expect *= Rat(-q);
        CHECK(det_row1(mat_pow(a, n)) == Quaternion::real(expect));
      }
    }
  }

  // The two expansions agree whenever every entry is real.
  auto gen = testutil::rng(31);
  for (int round = 0; round < 100; ++round) {
    const QMat2 real_mat = QMat2::scalar(
        testutil::rand_rat(gen), testutil::rand_rat(gen),
        testutil::rand_rat(gen), testutil::rand_rat(gen));
    CHECK(det_row1(real_mat) == det_row2(real_mat));
  }
}

TEST_CASE("matrix serialization is a row-major array of quaternions") {
  const horadam::QMat2 k = horadam::lucas_quaternion_seed_matrix(1, 1);
  const horadam::Json j = horadam::mat2_to_json(k);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4);
  CHECK(j[0] == horadam::quaternion_to_json(k.m00));
  CHECK(j[1] == horadam::quaternion_to_json(k.m01));
  CHECK(j[2] == horadam::quaternion_to_json(k.m10));
  CHECK(j[3] == horadam::quaternion_to_json(k.m11));
  CHECK(j[0].dump() == "{\"a0\":\"1\",\"a1\":\"3\",\"a2\":\"4\",\"a3\":\"7\"}");
  for (const auto& entry : j)
    CHECK(horadam::quaternion_from_json(entry).a0.is_integer());
}

TEST_CASE("named builders") {
  const HoradamParams pr{3, 4, 1, 1};
  CHECK(horadam::build_named("A", pr) == QMat2::scalar(1, 1, 1, 0));
  // T = (w_2 q w_1; w_1 q w_0) with w_2 = 7.
  CHECK(horadam::build_named("T", pr) == QMat2::scalar(7, 4, 4, 3));
  const QMat2 k = horadam::build_named("K", pr);
  CHECK(k.m01 == Rat(5) * quat(1, 1, 2, 3));
  CHECK(k.m10 == quat(1, 1, 2, 3));
  CHECK(k.m00 == quat(1, 3, 4, 7));
  CHECK(k.m11 == quat(1, 3, 4, 7));
  CHECK(horadam::build_named("B", pr) == QMat2::scalar(1, 5, 1, 1));
  CHECK(horadam::build_named("Shift", pr, 1) == QMat2::identity());
  CHECK(horadam::build_named("U", pr) ==
        horadam::pq_fib_quaternion_matrix(1, 1));
  CHECK(horadam::build_named("W", pr) == horadam::horadam_quaternion_matrix(pr));
  CHECK(horadam::build_named("Asc", pr) == QMat2::scalar(1, 1, 1, 0));
  CHECK(horadam::build_named("Desc", pr) == QMat2::scalar(0, -1, -1, 1));
  CHECK_THROWS_AS(horadam::build_named("nope", pr), horadam::UnknownMatrixName);
}
