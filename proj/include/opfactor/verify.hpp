#pragma once

// Self-checks comparing each route against an independent one: closed-form
// coefficients against the integrator, ordered products against direct
// matrix exponentials, grid evolution against closed-form states.

#include <cmath>
#include <string>
#include <vector>

#include "opfactor/grid.hpp"

namespace opfactor {

enum class Suite { algebra, fock, grid, analytic, all };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;

  bool passed() const { return std::isfinite(measured) && measured <= tolerance; }
};

struct VerifyConfig {
  Grid grid = Grid::standard();
  std::size_t fock_dim = 128;
  int ode_steps = 1000;
  /// Allowed norm drift for a single unitary chain.
  double norm_tolerance = 1e-9;
};

/// Throws DomainError when the configuration is unusable (Fock dimension
/// outside the supported range, ode_steps < 1, ...).
std::vector<CheckResult> run_suite(Suite suite, const VerifyConfig& config);

}  // namespace opfactor
