#pragma once

#include <stdexcept>
#include <string>

namespace horadam {

// Backward recurrence steps and companion-matrix inverses divide by q.
struct NegativeIndexWithZeroQ : std::domain_error {
  NegativeIndexWithZeroQ()
      : std::domain_error("negative index requires q != 0") {}
  explicit NegativeIndexWithZeroQ(const std::string& what)
      : std::domain_error(what) {}
};

// mat_pow with a negative exponent is defined for the companion matrix only.
struct NegativePowerUnsupported : std::domain_error {
  NegativePowerUnsupported()
      : std::domain_error(
            "negative powers are only defined for the companion matrix") {}
  explicit NegativePowerUnsupported(const std::string& what)
      : std::domain_error(what) {}
};

// Two-family operations require both families to share (p, q).
struct MismatchedPQ : std::invalid_argument {
  MismatchedPQ()
      : std::invalid_argument("the two families must share the same (p, q)") {}
  explicit MismatchedPQ(const std::string& what)
      : std::invalid_argument(what) {}
};

struct UnknownIdentity : std::invalid_argument {
  explicit UnknownIdentity(const std::string& id)
      : std::invalid_argument("unknown identity: " + id) {}
};

struct UnknownMatrixName : std::invalid_argument {
  explicit UnknownMatrixName(const std::string& name)
      : std::invalid_argument("unknown matrix name: " + name) {}
};

// An identity was asked about a point outside its index constraints.
struct IdentityPreconditionError : std::invalid_argument {
  explicit IdentityPreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace horadam
