#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "horadam/identities.hpp"
#include "horadam/qsequences.hpp"
#include "test_util.hpp"

using namespace horadam;
using testutil::quat;

namespace {

const HoradamParams fib{0, 1, 1, 1};
const HoradamParams luc{2, 1, 1, 1};

IdentityPoint pt(HoradamParams pr, IndexSet ix,
                 std::optional<HoradamParams> second = std::nullopt) {
  return IdentityPoint{std::move(pr), std::move(second), ix};
}

GridSpec tiny_grid() {
  GridSpec g;
  g.p = {-2, 2};
  g.q = {-2, 2};
  g.initials = {-1, 1};
  g.second_initials = {-1, 1};
  g.indices = {1, 3};
  g.k = {0, 3};
  return g;
}

}  // namespace

TEST_CASE("registry surface") {
  const auto& ids = identity_ids();
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  for (const char* expected :
       {"cassini_star", "cassini_dstar", "cassini_3", "cassini_4", "t21",
        "t22", "t23", "t24", "sq_sum", "sq_diff", "thm100", "cor1_a", "cor1_b",
        "cor1_c", "cor1_d", "cor2", "waddill", "thm101", "t41", "t41_expanded",
        "t42", "t43_as_written", "t43_derived", "t44", "t45",
        "hamilton_remark", "thm3_1", "thm3_2", "thm3_3_even",
        "thm3_3_odd_as_written", "thm3_3_odd_derived", "cor3_1", "thm3_4",
        "lucas_bridge", "remark_u2u0_a", "remark_u2u0_b"}) {
    CHECK(identity_exists(expected));
  }
  CHECK(ids.size() == 36);
  CHECK(!identity_exists("cassini"));
  CHECK(identity_is_informational("t43_as_written"));
  CHECK(identity_is_informational("thm3_3_odd_as_written"));
  CHECK(!identity_is_informational("t43_derived"));
  CHECK(!identity_is_informational("waddill"));
  CHECK(identity_variant_group("t43_derived") == std::string("t43"));
  CHECK(identity_variant_group("thm3_3_odd_as_written") ==
        std::string("thm3_3_odd"));
  CHECK(!identity_variant_group("cassini_star"));
  CHECK_THROWS_AS(check("no_such_identity", pt(fib, {.n = 1})),
                  UnknownIdentity);
}

TEST_CASE("commutator bracket") {
  // Scalar sequences: [w, w]_0 = 0 always.
  CHECK(commutator0_scalar(fib, fib) == Rat(0));
  CHECK(commutator0_scalar(luc, luc) == Rat(0));
  // z = Lucas (2,1), w = Fibonacci (0,1): z1 w0 - z0 w1 = 0 - 2 = -2.
  CHECK(commutator0_scalar(luc, fib) == Rat(-2));
  // Scalar factors commute, so the scalar bracket is antisymmetric.
  auto gen = testutil::rng(41);
  for (int i = 0; i < 40; ++i) {
    const HoradamParams a{testutil::rand_in(gen, -4, 4),
                          testutil::rand_in(gen, -4, 4), 1, 1};
    const HoradamParams b{testutil::rand_in(gen, -4, 4),
                          testutil::rand_in(gen, -4, 4), 1, 1};
    CHECK(commutator0_scalar(a, b) == -commutator0_scalar(b, a));
  }

  // Quaternion lift for Fibonacci: Q_1 Q_0 - Q_0 Q_1 != 0.
  const Quaternion bracket = commutator0(fib, fib);
  CHECK(bracket == quat(0, 2, 2, -2));
  CHECK(bracket != Quaternion());
}

TEST_CASE("delta values from the displayed table") {
  CHECK(delta_scalar(fib, fib) == Rat(1));
  CHECK(delta_scalar(luc, luc) == Rat(-5));
  CHECK(delta_scalar(fib, luc) == Rat(1));
  CHECK(delta_scalar(luc, fib) == Rat(-1));
  auto gen = testutil::rng(37);
  for (int i = 0; i < 50; ++i) {
    const HoradamParams pr{testutil::rand_in(gen, -4, 4),
                           testutil::rand_in(gen, -4, 4),
                           testutil::rand_in(gen, -3, 3),
                           testutil::rand_in(gen, -3, 3)};
    CHECK(delta_scalar(pr, pr) ==
          Rat(pr.w1 * pr.w1 - pr.p * pr.w0 * pr.w1 - pr.q * pr.w0 * pr.w0));
  }
  CHECK_THROWS_AS(delta(HoradamParams{0, 1, 2, 1}, HoradamParams{0, 1, 1, 1}),
                  MismatchedPQ);
  CHECK_THROWS_AS(
      delta_scalar(HoradamParams{0, 1, 1, 2}, HoradamParams{0, 1, 1, 1}),
      MismatchedPQ);
}

TEST_CASE("frozen check examples") {
  // K_3^2 - 5 Q_3^2 = 4 (-1)^3 (2 + i + 3j + 4k) = (-8, -4, -12, -16).
  const auto hamilton = check("hamilton_remark", pt(fib, {.n = 3}));
  CHECK(hamilton.holds);
  CHECK(hamilton.lhs == quat(-8, -4, -12, -16));
  CHECK(hamilton.rhs == quat(-8, -4, -12, -16));

  // Empty binomial expansion: both sides are W_5.
  const HoradamParams any{2, -1, 3, 2};
  const auto trivial = check("thm3_1", pt(any, {.n = 0, .k = 5}));
  CHECK(trivial.holds);
  CHECK(trivial.lhs == horadam_quaternion(any, 5));

  // Cassini at n = 5 for Fibonacci quaternions: both sides equal
  // (-1)^4 (Q_2 Q_0 - Q_1^2).
  const auto cassini = check("cassini_star", pt(fib, {.n = 5}));
  CHECK(cassini.holds);
  const Quaternion q2q0 = fibonacci_quaternion(2) * fibonacci_quaternion(0) -
                          fibonacci_quaternion(1) * fibonacci_quaternion(1);
  CHECK(cassini.rhs == q2q0);

  // t43 as written fails at p = q = 1, m = 2, n = 3; the derived form holds.
  const auto misprint = check("t43_as_written", pt(fib, {.n = 3, .m = 2}));
  CHECK(!misprint.holds);
  CHECK(misprint.lhs == quat(34, 52, 86, 138));
  CHECK(misprint.rhs == quat(10, 16, 26, 42));
  const auto derived = check("t43_derived", pt(fib, {.n = 3, .m = 2}));
  CHECK(derived.holds);
  CHECK(derived.lhs == quat(10, 16, 26, 42));
}

TEST_CASE("check validates points instead of clamping them") {
  CHECK_THROWS_AS(check("waddill", pt(fib, {.n = 1, .r = 1})),
                  IdentityPreconditionError);  // missing s
  CHECK_THROWS_AS(check("waddill", pt(fib, {.n = 0, .r = 1, .s = 1})),
                  IdentityPreconditionError);  // n below 1
  CHECK_THROWS_AS(check("thm100", pt(fib, {.n = 1, .r = 1, .s = 1})),
                  IdentityPreconditionError);  // second family missing
  CHECK_THROWS_AS(
      check("thm100",
            pt(fib, {.n = 1, .r = 1, .s = 1}, HoradamParams{1, 1, 2, 1})),
      MismatchedPQ);
  CHECK_THROWS_AS(
      check("cassini_star", pt(HoradamParams{0, 1, 2, 0}, {.n = 3})),
      IdentityPreconditionError);  // q = 0
  CHECK_THROWS_AS(check("thm3_1", pt(fib, {.n = 2, .k = -1})),
                  IdentityPreconditionError);  // k < 0
  CHECK_THROWS_AS(check("thm3_3_even", pt(fib, {.n = 3, .k = 0})),
                  IdentityPreconditionError);  // parity

  // Cassini explicitly admits n = 0 when q != 0 ((-q)^{-1} is exact).
  const auto cassini0 = check("cassini_star", pt(HoradamParams{1, 2, 2, 3},
                                                 {.n = 0}));
  CHECK(cassini0.holds);
}

TEST_CASE("two-family identities hold and specialize") {
  const HoradamParams w{1, -2, 2, 3};
  const HoradamParams z{-1, 2, 2, 3};
  const auto catalan = check("thm100", pt(w, {.n = 2, .r = 3, .s = 1}, z));
  CHECK(catalan.holds);
  const auto bracketed = check("cor2", pt(w, {.n = 2, .r = 3, .s = 1}, z));
  CHECK(bracketed.holds);
  CHECK(catalan.lhs == bracketed.lhs);

  // thm100 with Z := U reproduces cor1_b point for point.
  const HoradamParams ufam = pq_fibonacci_params(w.p, w.q);
  for (long n = 1; n <= 3; ++n) {
    for (long s = 1; s <= 3; ++s) {
      const auto general = check("thm100", pt(w, {.n = n, .r = 2, .s = s}, ufam));
      const auto special = check("cor1_b", pt(w, {.n = n, .r = 2, .s = s}));
      CHECK(general.holds);
      CHECK(special.holds);
      CHECK(general.lhs == special.lhs);
      CHECK(general.rhs == special.rhs);
    }
  }
}

TEST_CASE("Catalan forms collapse to the Cassini forms at r = s = 1") {
  const HoradamParams pr{2, -1, 3, 2};
  for (long n = 2; n <= 6; ++n) {
    const auto catalan = check("cor1_d", pt(pr, {.n = n - 1, .r = 1, .s = 1}));
    const auto cassini = check("cassini_dstar", pt(pr, {.n = n}));
    CHECK(catalan.holds);
    CHECK(cassini.holds);
    CHECK(catalan.lhs == -cassini.lhs);
    CHECK(catalan.rhs == -cassini.rhs);

    const auto factored = check("thm101", pt(pr, {.n = n - 1, .r = 1, .s = 1}));
    const auto cassini4 = check("cassini_4", pt(pr, {.n = n}));
    CHECK(factored.holds);
    CHECK(factored.lhs == -cassini4.lhs);
    CHECK(factored.rhs == -cassini4.rhs);
  }
}

TEST_CASE("hamilton remark is t41 at p = q = 1") {
  for (long n = 1; n <= 10; ++n) {
    const auto general = check("t41", pt(fib, {.n = n}));
    const auto special = check("hamilton_remark", pt(fib, {.n = n}));
    CHECK(general.holds);
    CHECK(special.holds);
    CHECK(general.lhs == special.lhs);
  }
}

TEST_CASE("cor2's bracket expansion equals thm100's right side") {
  // u_s Delta(Z,W) + q u_{s-1} [Z,W]_0 = Z_1 W_s - Z_0 W_{s+1}.
  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      if (q == 0) continue;
      const HoradamParams w{1, 2, p, q};
      const HoradamParams z{-2, 1, p, q};
      for (long s = 1; s <= 5; ++s) {
        const Quaternion lhs =
            u_term(p, q, s) * delta(z, w) +
            (Rat(q) * u_term(p, q, s - 1)) * commutator0(z, w);
        const Quaternion rhs =
            horadam_quaternion(z, 1) * horadam_quaternion(w, s) -
            horadam_quaternion(z, 0) * horadam_quaternion(w, s + 1);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("reduction of thm3_1 to the (p,q)-Fibonacci special case") {
  for (long p = -2; p <= 2; ++p) {
    for (long q = -2; q <= 2; ++q) {
      const HoradamParams ufam = pq_fibonacci_params(p, q);
      for (long n = 0; n <= 4; ++n) {
        CHECK(check("thm3_1", pt(ufam, {.n = n, .k = 0})).holds);
      }
    }
  }
}

TEST_CASE("check_grid bookkeeping") {
  // Empty grid: zero counts.
  GridSpec empty;
  empty.p = {1, 0};
  const auto nothing = check_grid({"waddill"}, empty);
  CHECK(nothing.totals.checked == 0);
  CHECK(nothing.totals.skipped == 0);
  CHECK(nothing.failures.empty());

  // q = 0 points are skips, not failures.
  GridSpec zero_q = tiny_grid();
  zero_q.q = {0, 0};
  zero_q.include_zero_q = true;
  const auto skipped = check_grid({"thm3_2"}, zero_q);
  CHECK(skipped.totals.checked == 0);
  CHECK(skipped.totals.skipped > 0);
  CHECK(skipped.totals.failed == 0);
  CHECK(skipped.totals.skip_reasons.at("requires q != 0") ==
        skipped.totals.skipped);

  // Deterministic: two runs produce identical outcomes.
  const std::vector<std::string> some = {"t21", "t43_as_written", "waddill"};
  const auto first = check_grid(some, tiny_grid());
  const auto second = check_grid(some, tiny_grid());
  CHECK(first.totals.checked == second.totals.checked);
  CHECK(first.failures.size() == second.failures.size());
  for (std::size_t i = 0; i < first.failures.size(); ++i) {
    CHECK(first.failures[i].id == second.failures[i].id);
    CHECK(first.failures[i].lhs == second.failures[i].lhs);
    CHECK(first.failures[i].rhs == second.failures[i].rhs);
  }
  // Failures arrive sorted by identity id.
  CHECK(std::is_sorted(first.failures.begin(), first.failures.end(),
                       [](const IdentityReport& a, const IdentityReport& b) {
                         return a.id < b.id;
                       }));

  CHECK_THROWS_AS(check_grid({"bogus"}, tiny_grid()), UnknownIdentity);
}

TEST_CASE("verdicts over a small but discriminating grid") {
  GridSpec grid = tiny_grid();
  const std::vector<std::string> variants = {
      "t43_as_written", "t43_derived", "thm3_3_odd_as_written",
      "thm3_3_odd_derived"};
  const auto outcome = check_grid(variants, grid);
  const auto verdicts = derive_verdicts(outcome);
  REQUIRE(verdicts.size() == 2);
  for (const auto& verdict : verdicts) {
    CHECK(verdict.winner == "derived");
    CHECK(verdict.as_written.failed > 0);
    REQUIRE(verdict.as_written.counterexample.has_value());
    CHECK(!verdict.as_written.counterexample->holds);
    CHECK(verdict.derived.failed == 0);
    CHECK(!verdict.derived.counterexample.has_value());
  }
}

TEST_CASE("every derivation-backed identity holds on a small grid") {
  const auto outcome = check_grid(identity_ids(), tiny_grid());
  for (const auto& [id, tally] : outcome.per_identity) {
    if (identity_is_informational(id)) continue;
    CHECK_MESSAGE(tally.failed == 0, id);
    CHECK(tally.checked > 0);
  }
}
