// Acceptance gate: one pass/fail line per criterion, nonzero exit when
// any criterion fails.  Criteria 1-11 run the shared verification suite
// (seed 7); criterion 12 exercises the installed CLI twice and compares
// reports byte for byte after dropping the timing field.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "hklag/verify.hpp"

namespace {

int failures = 0;

void line(int number, bool ok, const std::string& text) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", number,
              text.c_str());
  if (!ok) ++failures;
}

const hklag::VerifyItem& find_item(const hklag::VerifyReport& rep,
                                   const std::string& name) {
  for (const auto& it : rep.items)
    if (it.name == name) return it;
  static hklag::VerifyItem missing;  // pass=false
  return missing;
}

void criterion(const hklag::VerifyReport& rep, int number,
               const std::string& item, const std::string& text,
               long budget_ms = 0) {
  const auto& it = find_item(rep, item);
  bool ok = it.pass;
  std::string msg = text;
  if (budget_ms > 0) {
    ok = ok && it.duration_ms < budget_ms;
    msg += " (" + std::to_string(it.duration_ms) + " ms of " +
           std::to_string(budget_ms) + ")";
  }
  if (!it.pass)
    for (const auto& r : it.residuals)
      if (!(r.value <= r.tolerance))
        msg += " [" + r.name + " = " + std::to_string(r.value) + "]";
  line(number, ok, msg);
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(HKLAG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int status = pclose(p);
  if (status != 0) return {};
  return out;
}

std::string drop_duration(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string ln;
  while (std::getline(in, ln))
    if (ln.find("duration_ms") == std::string::npos) out << ln << "\n";
  return out.str();
}

}  // namespace

int main() {
  auto rep = hklag::verify_all(7);

  criterion(rep, 1, "dual_conic",
            "dual of the conic is a scalar multiple of xi1^2 - 4 xi0 xi2",
            1000);
  criterion(rep, 2, "pluecker_numbers",
            "plucker numbers match and the cuspidal cubic eliminates to "
            "degree 3",
            5000);
  criterion(rep, 3, "biduality",
            "bidual of the conic and the cuspidal cubic is the curve again",
            30000);
  criterion(rep, 4, "legendre_relation",
            "dual value equals (p-1) f on samples; vanishes on the zero set");
  criterion(rep, 5, "flop_suite",
            "flop preserves levels, is involutive, pulls the form back",
            10000);
  criterion(rep, 6, "calabi_metric",
            "metric hermitian, positive definite, det constant", 10000);
  criterion(rep, 7, "conormal_transport",
            "transported conormals land on the dual curve");
  criterion(rep, 8, "symplectic_linear_algebra",
            "classification criteria agree; projections are lagrangian");
  criterion(rep, 9, "normalized_transform_tables",
            "normalized transform preserves intersection products");
  criterion(rep, 10, "reflection_variant",
            "reflection variant is an involutive isometry fixing P-perp");
  criterion(rep, 11, "charclass_identities",
            "odd chern vanishing, ahat-square and sqrt identities, exact");

  std::string a = run_cli("verify all --seed 7 --json-only");
  std::string b = run_cli("verify all --seed 7 --json-only");
  bool det = !a.empty() && drop_duration(a) == drop_duration(b);
  line(12, det, "verify all --seed 7 is deterministic modulo duration");

  return failures == 0 ? 0 : 1;
}
