#pragma once

// Verification reports: an ordered list of checks per suite, with JSON, CSV,
// and markdown emitters. The markdown emitter also renders the
// claim-to-suite traceability matrix.

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace hkit {

struct Check {
  std::string name;
  std::string claim;  // which verified property this check exercises
  double lhs = 0;
  double rhs = 0;
  double error = 0;
  double tolerance = 0;
  bool pass = false;
};

inline Check make_check(std::string name, std::string claim, double lhs, double rhs, double tol) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.lhs = lhs;
  c.rhs = rhs;
  c.error = std::abs(lhs - rhs);
  c.tolerance = tol;
  c.pass = c.error <= tol;
  return c;
}

inline Check make_flag_check(std::string name, std::string claim, bool pass) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.lhs = pass ? 1.0 : 0.0;
  c.rhs = 1.0;
  c.error = pass ? 0.0 : 1.0;
  c.tolerance = 0.0;
  c.pass = pass;
  return c;
}

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
};

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["claim"] = c.claim;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["error"] = c.error;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  return j;
}

inline std::string report_to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "suite,name,claim,lhs,rhs,error,tolerance,pass\n";
  for (const auto& c : r.checks)
    os << r.suite << "," << c.name << "," << c.claim << "," << c.lhs << "," << c.rhs << "," << c.error << ","
       << c.tolerance << "," << (c.pass ? 1 : 0) << "\n";
  return os.str();
}

// The claim labels used across the suites, with the suite that exercises
// each. Kept in one place so the markdown traceability matrix is a complete
// audit of the verified properties.
inline const std::vector<std::pair<std::string, std::string>>& claim_suite_map() {
  static const std::vector<std::pair<std::string, std::string>> m = {
      {"moyal-identity", "moyal"},
      {"special-hermite-orthonormality", "moyal"},
      {"weyl-kernel-spectral-agreement", "weyl"},
      {"weyl-projection-identity", "weyl"},
      {"radial-laguerre-reduction", "weyl"},
      {"twisted-homomorphism", "twisted-algebra"},
      {"twisted-eigenrelation", "twisted-algebra"},
      {"heat-kernel-diagonal", "semigroups"},
      {"heat-semigroup-law", "semigroups"},
      {"membership-weights", "semigroups"},
      {"bergman-isometry", "bergman"},
      {"bergman-ratio-constancy", "bergman"},
      {"pointwise-analytic-bound", "bergman"},
      {"gutzmer-formula", "gutzmer"},
      {"exponential-coefficient-bound", "bounds-3.9"},
      {"gaussian-coefficient-bound", "bounds-4.7"},
      {"bargmann-coefficient-link", "hardy"},
      {"bargmann-intertwining", "hardy"},
      {"hardy-trichotomy", "hardy"},
      {"minimal-type-ladder", "hardy"},
      {"rank-one-factorization", "factorize-analytic"},
      {"entire-route-equivalence", "factorize-entire"},
      {"weyl-maps-into-Ms", "factorize-analytic"},
      {"weyl-maps-into-Es", "factorize-entire"},
      {"tensor-coefficient-estimate", "factorize-analytic"},
      {"algebra-closure", "closure"},
      {"schwartz-mapping", "schwartz"},
  };
  return m;
}

inline std::string report_to_markdown(const VerificationReport& r) {
  std::ostringstream os;
  os << "# Verification report: " << r.suite << "\n\n";
  os << "| check | claim | lhs | rhs | error | tolerance | pass |\n";
  os << "|---|---|---|---|---|---|---|\n";
  os << std::setprecision(8);
  for (const auto& c : r.checks)
    os << "| " << c.name << " | " << c.claim << " | " << c.lhs << " | " << c.rhs << " | " << c.error << " | "
       << c.tolerance << " | " << (c.pass ? "yes" : "NO") << " |\n";
  os << "\n## Traceability matrix\n\n";
  os << "| claim | suite | exercised here |\n|---|---|---|\n";
  for (const auto& [claim, suite] : claim_suite_map()) {
    bool here = false;
    for (const auto& c : r.checks)
      if (c.claim == claim) here = true;
    os << "| " << claim << " | " << suite << " | " << (here ? "yes" : "-") << " |\n";
  }
  return os.str();
}

inline void emit_report(const VerificationReport& r, const std::string& path, const std::string& format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  if (format == "json")
    os << report_to_json(r).dump(2) << "\n";
  else if (format == "csv")
    os << report_to_csv(r);
  else if (format == "markdown")
    os << report_to_markdown(r);
  else
    throw std::invalid_argument("emit_report: unknown format '" + format + "'");
}

}  // namespace hkit
