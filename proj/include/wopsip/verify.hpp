#ifndef WOPSIP_VERIFY_HPP
#define WOPSIP_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wopsip {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // the quantity that was checked
  double threshold = 0.0;  // its admissible bound (or range note below)
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

/// Executes every module-level invariant (mesh geometry, quadrature
/// exactness, interpolation identities, solver oracles, scheme identities,
/// robustness and inf-sup measurements). Intended for the `verify` CLI
/// subcommand; runtime is a few seconds.
VerifyReport run_verify();

void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace wopsip

#endif
