#pragma once

#include <string>

#include <json.hpp>

#include "horadam/identities.hpp"
#include "horadam/mat2.hpp"
#include "horadam/quaternion.hpp"

namespace horadam {

using Json = nlohmann::ordered_json;

// {"a0": "...", "a1": "...", "a2": "...", "a3": "..."} with each component a
// canonical "num/den" string ("5" when the denominator is 1).
inline Json quaternion_to_json(const Quaternion& x) {
  return Json{{"a0", x.a0.str()},
              {"a1", x.a1.str()},
              {"a2", x.a2.str()},
              {"a3", x.a3.str()}};
}

inline Quaternion quaternion_from_json(const Json& j) {
  return {Rat::parse(j.at("a0").get<std::string>()),
          Rat::parse(j.at("a1").get<std::string>()),
          Rat::parse(j.at("a2").get<std::string>()),
          Rat::parse(j.at("a3").get<std::string>())};
}

// Row-major array of four serialized quaternions.
inline Json mat2_to_json(const QMat2& x) {
  return Json::array({quaternion_to_json(x.m00), quaternion_to_json(x.m01),
                      quaternion_to_json(x.m10), quaternion_to_json(x.m11)});
}

inline Json params_to_json(const HoradamParams& p) {
  return Json{{"w0", p.w0.get_str()},
              {"w1", p.w1.get_str()},
              {"p", p.p.get_str()},
              {"q", p.q.get_str()}};
}

inline Json point_to_json(const IdentityPoint& pt) {
  Json j;
  j["params"] = params_to_json(pt.params);
  if (pt.second) j["second"] = params_to_json(*pt.second);
  Json idx = Json::object();
  if (pt.idx.n) idx["n"] = *pt.idx.n;
  if (pt.idx.m) idx["m"] = *pt.idx.m;
  if (pt.idx.r) idx["r"] = *pt.idx.r;
  if (pt.idx.s) idx["s"] = *pt.idx.s;
  if (pt.idx.k) idx["k"] = *pt.idx.k;
  j["indices"] = std::move(idx);
  return j;
}

inline Json report_to_json(const IdentityReport& report) {
  Json j;
  j["type"] = "report";
  j["id"] = report.id;
  Json point = point_to_json(report.point);
  for (auto& [key, value] : point.items()) j[key] = value;
  j["lhs"] = quaternion_to_json(report.lhs);
  j["rhs"] = quaternion_to_json(report.rhs);
  j["holds"] = report.holds;
  return j;
}

inline Json tally_to_json(const IdentityTally& tally) {
  Json j{{"checked", tally.checked},
         {"held", tally.held},
         {"failed", tally.failed},
         {"skipped", tally.skipped}};
  if (!tally.skip_reasons.empty()) {
    Json reasons = Json::object();
    for (const auto& [reason, count] : tally.skip_reasons)
      reasons[reason] = count;
    j["skip_reasons"] = std::move(reasons);
  }
  return j;
}

inline Json verdict_to_json(const Verdict& verdict) {
  auto status = [](const VariantStatus& st) {
    Json j{{"id", st.id},
           {"checked", st.checked},
           {"failed", st.failed},
           {"skipped", st.skipped},
           {"holds", st.failed == 0 && st.checked > 0}};
    if (st.counterexample)
      j["counterexample"] = report_to_json(*st.counterexample);
    return j;
  };
  return Json{{"type", "verdict"},
              {"group", verdict.group},
              {"as_written", status(verdict.as_written)},
              {"derived", status(verdict.derived)},
              {"winner", verdict.winner}};
}

}  // namespace horadam
