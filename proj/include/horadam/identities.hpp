#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horadam/quaternion.hpp"
#include "horadam/sequences.hpp"

namespace horadam {

/// Which of n, m, r, s, k a check point supplies. Identities read only the
/// indices they use; check() rejects points missing a required index.
struct IndexSet {
  std::optional<long> n, m, r, s, k;
};

/// One evaluation point: a primary family, an optional second family (for
/// the two-family Catalan-type identities; must share (p, q)), and indices.
struct IdentityPoint {
  HoradamParams params;
  std::optional<HoradamParams> second;
  IndexSet idx;
};

/// Outcome of checking one identity at one point. holds iff lhs == rhs
/// exactly; a false report is a concrete counterexample.
struct IdentityReport {
  std::string id;
  IdentityPoint point;
  Quaternion lhs, rhs;
  bool holds = false;
};

struct GridRange {
  long lo = 0, hi = -1;  // inclusive; lo > hi means empty
};

/// Parameter/index ranges for check_grid. The defaults are the standard
/// verification grid: small enough for seconds-scale runs, large enough
/// that both sides (polynomial in every input) cannot agree by accident.
struct GridSpec {
  GridRange p{-3, 3};
  GridRange q{-3, 3};
  bool include_zero_q = false;  // the default grid drops q = 0
  GridRange initials{-2, 2};         // w0 and w1
  GridRange second_initials{-2, 2};  // z0 and z1
  GridRange indices{1, 8};           // n, m, r, s
  GridRange k{0, 5};
};

struct IdentityTally {
  long long checked = 0, held = 0, failed = 0, skipped = 0;
  std::map<std::string, long long> skip_reasons;

  void absorb(const IdentityTally& other) {
    checked += other.checked;
    held += other.held;
    failed += other.failed;
    skipped += other.skipped;
    for (const auto& [reason, count] : other.skip_reasons)
      skip_reasons[reason] += count;
  }
};

/// check_grid result: failures only (in deterministic order: identity id,
/// then point enumeration order) plus per-identity and total tallies.
struct GridOutcome {
  std::vector<IdentityReport> failures;
  std::vector<std::pair<std::string, IdentityTally>> per_identity;
  IdentityTally totals;
};

struct VariantStatus {
  std::string id;
  long long checked = 0, failed = 0, skipped = 0;
  std::optional<IdentityReport> counterexample;  // first failure, if any
};

/// Adjudication of a suspected-misprint pair: the observed status of the
/// as-written and the derivation-implied form over one grid run. Neither
/// form is assumed; the winner is whatever the data says.
struct Verdict {
  std::string group;
  VariantStatus as_written;
  VariantStatus derived;
  std::string winner;  // "as_written" | "derived" | "both" | "neither"
};

// Registry ids in lexicographic order (the processing and output order).
const std::vector<std::string>& identity_ids();
bool identity_exists(const std::string& id);

// True for the *_as_written variants of suspected misprints: their failures
// are reported but are not counted as verification failures.
bool identity_is_informational(const std::string& id);

// Adjudication group ("t43", "thm3_3_odd") an id belongs to, if any.
std::optional<std::string> identity_variant_group(const std::string& id);

// [Z, W]_0 = Z_1 W_0 - Z_0 W_1 on the quaternion lifts; nonzero in general.
Quaternion commutator0(const HoradamParams& zfam, const HoradamParams& wfam);
// The same bracket on the scalar sequences: z_1 w_0 - z_0 w_1 (always 0 when
// both families coincide).
Rat commutator0_scalar(const HoradamParams& zfam, const HoradamParams& wfam);

// Delta(Z, W) = Z_1 W_1 - p Z_0 W_1 - q Z_0 W_0 on the quaternion lifts.
// Throws MismatchedPQ when the families disagree on (p, q).
Quaternion delta(const HoradamParams& zfam, const HoradamParams& wfam);
// Scalar form z_1 w_1 - p z_0 w_1 - q z_0 w_0; for one family this is
// w_1^2 - p w_0 w_1 - q w_0^2.
Rat delta_scalar(const HoradamParams& zfam, const HoradamParams& wfam);

// Evaluates both sides of one identity at one point, exactly and through
// independent formulas. Throws UnknownIdentity / IdentityPreconditionError /
// MismatchedPQ rather than clamping bad points.
IdentityReport check(const std::string& id, const IdentityPoint& point);

// Sweeps every listed identity over the grid dimensions it uses (parameters
// p, q, then initials, then second-family initials, then indices n, m, r, s,
// k). Inadmissible points are recorded as skips with reasons, never failures.
GridOutcome check_grid(const std::vector<std::string>& ids,
                       const GridSpec& grid = {});

// Builds verdicts for every adjudication group whose two variants are both
// present in the outcome.
std::vector<Verdict> derive_verdicts(const GridOutcome& outcome);

}  // namespace horadam
