#pragma once

// Subcommands behind the `opfactor` executable. Each returns the process
// exit status and writes human/machine output to the given streams, so they
// can be driven directly from tests.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opfactor/analytic.hpp"
#include "opfactor/grid.hpp"
#include "opfactor/output.hpp"
#include "opfactor/verify.hpp"

namespace opfactor {

struct RunConfig {
  double grid_min = -12.0;
  double grid_max = 12.0;
  std::size_t grid_n = 2048;
  std::size_t fock_dim = 128;
  int ode_steps = 1000;
  /// Norm drift allowed for one command's evolution.
  double tol = 1e-8;
  OutputFormat format = OutputFormat::csv;
  std::string out;

  /// Throws DomainError on non-positive fields or an invalid grid.
  void validate() const;
  Grid grid() const { return Grid(grid_min, grid_max, grid_n); }
  nlohmann::json to_json() const;
};

struct SqueezeFamily {
  double r = 0.0;
  double phi = 0.0;
};
struct OscillatorFamily {};
using Family = std::variant<SqueezeFamily, OscillatorFamily>;

struct FactorizeRequest {
  Family family;
  double t = 1.0;
  bool ode_check = false;
};

struct GroundState {};
struct CoherentState {
  double x0 = 0.0, p0 = 0.0;
};
struct SqueezedState {
  double x0 = 0.0, p0 = 0.0, r = 0.0, phi = 0.0;
};
struct EvenOddState {
  double x0 = 0.0, s = 1.0;
  int sign = 1;
};
using InitialState = std::variant<GroundState, CoherentState, SqueezedState, EvenOddState>;

/// "ground", "coherent:x0:p0", "squeezed:x0:p0:r:phi", "evenodd:x0:s:sign".
InitialState parse_initial_state(const std::string& text);
/// "displace:x0:p0", "squeeze:r:phi", "time:t[:substeps]".
OperatorKind parse_operator(const std::string& text);

WaveFunction prepare_state(const InitialState& state, const Grid& grid);

struct EvolveRequest {
  InitialState initial;
  std::vector<OperatorKind> operators;  ///< applied first to last
};

struct DensityRequest {
  double x0 = 2.0;
  double s = 1.5;
  int sign = 1;
  double t_min = 0.0;
  double t_max = 3.141592653589793;
  int t_steps = 64;
};

int cmd_factorize(const FactorizeRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const EvolveRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(Suite suite, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_density(const DensityRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Path of the normalization-probe table written next to a density trace:
/// "trace.csv" -> "trace_probe.csv".
std::string probe_path(const std::string& trace_path);

/// Parses argv and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace opfactor
