#include "deciders_common.hpp"

namespace diagonalis::decide {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::YesModuloKernel: return "YesModuloKernel";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
    case Verdict::SufficientConditionHolds: return "SufficientConditionHolds";
    case Verdict::NecessaryConditionFails: return "NecessaryConditionFails";
    case Verdict::ConditionFails: return "ConditionFails";
  }
  return "Unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Yes:
    case Verdict::YesModuloKernel:
    case Verdict::SufficientConditionHolds: return 0;
    case Verdict::No:
    case Verdict::NecessaryConditionFails: return 1;
    default: return 2;
  }
}

nlohmann::json Decision::to_json() const {
  nlohmann::json j{{"verdict", to_string(verdict)},
                   {"theorem", theorem},
                   {"mode", major::to_string(mode)},
                   {"certificate", certificate}};
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

namespace detail {

json witness_json(const major::MajorizationVerdict& v) {
  json j{{"verdict", major::to_string(v.verdict)}};
  if (v.witness) {
    j["witness"] = {{"m", v.witness->m},
                    {"lhs", io::to_json(v.witness->lhs)},
                    {"rhs", io::to_json(v.witness->rhs)},
                    {"asymptotic", v.witness->asymptotic}};
    if (v.witness->p) j["witness"]["p"] = *v.witness->p;
  }
  if (v.horizon) j["horizon"] = *v.horizon;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Integrality integrality(const Real& x, double tol) {
  Real nearest = (x + (x.exact() ? Real::ratio(1, 2) : Real(0.5))).floor();
  if (x.exact()) return {nearest, x.is_integer() ? Zone::Ok : Zone::Violated};
  double dist = std::abs(x.to_double() - nearest.to_double());
  Zone z = dist <= tol ? Zone::Ok : dist <= kUnclearFactor * tol ? Zone::Unclear : Zone::Violated;
  return {nearest, z};
}

}  // namespace detail
}  // namespace diagonalis::decide
