#include "opfactor/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
constexpr int kExitFailure = 1;  // a check or tolerance failed
constexpr int kExitError = 2;    // invalid input or singular parameters

std::vector<double> parse_fields(const std::string& text, std::string& head) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty specification");
  head = parts.front();
  std::vector<double> values;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::size_t used = 0;
    const double v = std::stod(parts[i], &used);
    if (used != parts[i].size()) throw std::invalid_argument("bad number '" + parts[i] + "' in '" + text + "'");
    values.push_back(v);
  }
  return values;
}

void expect_count(const std::string& text, const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (v.size() < lo || v.size() > hi) throw std::invalid_argument("wrong number of fields in '" + text + "'");
}

void print_coefficient(std::ostream& out, const char* name, cplx v) {
  out << std::left << std::setw(6) << name << std::right << std::scientific << std::setprecision(14) << std::setw(22)
      << v.real() << std::setw(22) << v.imag() << '\n';
}

void print_warnings(const Diagnostics& diag, std::ostream& err) {
  // Chains run once per time sample, so the same warning can repeat.
  std::set<std::string> seen;
  for (const auto& w : diag.warnings)
    if (seen.insert(w).second) err << "warning: " << w << '\n';
}

void emit_table(const Table& table, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) write_table(out, table, cfg.format);
  else write_table(cfg.out, table, cfg.format);
}
}  // namespace

void RunConfig::validate() const {
  (void)grid();
  if (fock_dim == 0) throw DomainError("--fock-dim must be positive");
  if (ode_steps < 1) throw DomainError("--ode-steps must be positive");
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
}

nlohmann::json RunConfig::to_json() const {
  return {{"grid_min", grid_min}, {"grid_max", grid_max}, {"grid_n", grid_n}, {"fock_dim", fock_dim},
          {"ode_steps", ode_steps}, {"tol", tol}, {"format", to_string(format)}};
}

InitialState parse_initial_state(const std::string& text) {
  std::string head;
  const auto v = parse_fields(text, head);
  if (head == "ground") {
    expect_count(text, v, 0, 0);
    return GroundState{};
  }
  if (head == "coherent") {
    expect_count(text, v, 2, 2);
    return CoherentState{v[0], v[1]};
  }
  if (head == "squeezed") {
    expect_count(text, v, 4, 4);
    return SqueezedState{v[0], v[1], v[2], v[3]};
  }
  if (head == "evenodd") {
    expect_count(text, v, 3, 3);
    if (v[2] != 1.0 && v[2] != -1.0) throw std::invalid_argument("evenodd sign must be 1 or -1");
    return EvenOddState{v[0], v[1], static_cast<int>(v[2])};
  }
  throw std::invalid_argument("unknown state '" + head + "' (ground, coherent, squeezed, evenodd)");
}

OperatorKind parse_operator(const std::string& text) {
  std::string head;
  const auto v = parse_fields(text, head);
  if (head == "displace") {
    expect_count(text, v, 2, 2);
    return DisplacementOp{v[0], v[1]};
  }
  if (head == "squeeze") {
    expect_count(text, v, 2, 2);
    return SqueezeOp{SqueezeParameter(v[0], v[1])};
  }
  if (head == "time") {
    expect_count(text, v, 1, 2);
    const int substeps = v.size() == 2 ? static_cast<int>(v[1]) : min_substeps(v[0]);
    if (v.size() == 2 && (v[1] != std::floor(v[1]) || v[1] < 1)) throw std::invalid_argument("substeps must be a positive integer");
    return TimeOp{v[0], substeps};
  }
  throw std::invalid_argument("unknown operator '" + head + "' (displace, squeeze, time)");
}

WaveFunction prepare_state(const InitialState& state, const Grid& grid) {
  return std::visit(
      [&grid](const auto& s) -> WaveFunction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GroundState>) {
          return WaveFunction::sample(grid, psi0);
        } else if constexpr (std::is_same_v<T, CoherentState>) {
          return WaveFunction::sample(grid, [&](double x) { return coherent_state(x, s.x0, s.p0); });
        } else if constexpr (std::is_same_v<T, SqueezedState>) {
          const SqueezedStateSpec spec{s.x0, s.p0, SqueezeParameter(s.r, s.phi)};
          return WaveFunction::sample(grid, [&](double x) { return psi_ss(x, spec); });
        } else {
          const EvenOddSpec spec(s.x0, s.s, s.sign);
          return WaveFunction::sample(grid, [&](double x) { return even_odd_initial(x, spec); });
        }
      },
      state);
}

int cmd_factorize(const FactorizeRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    FactorizationCoefficients c;
    GeneratorCoefficients gen;
    std::string family;
    if (const auto* sq = std::get_if<SqueezeFamily>(&req.family)) {
      const SqueezeParameter z(sq->r, sq->phi);
      c = squeeze_factorization(z, req.t);
      gen = GeneratorCoefficients::squeeze(z);
      family = "squeeze";
    } else {
      c = time_displacement_factorization(req.t);
      gen = GeneratorCoefficients::oscillator();
      family = "oscillator";
    }

    std::optional<double> deviation;
    if (req.ode_check) deviation = max_abs_difference(integrate_wei_norman(gen, req.t, cfg.ode_steps).back(), c);

    if (cfg.format == OutputFormat::json) {
      auto pair = [](cplx v) { return nlohmann::json::array({v.real(), v.imag()}); };
      nlohmann::json doc{{"family", family}, {"t", req.t},
                         {"delta", pair(c.delta)}, {"alpha", pair(c.alpha)},
                         {"beta", pair(c.beta)}, {"gamma", pair(c.gamma)}};
      if (deviation) doc["ode_max_abs_deviation"] = *deviation;
      out << doc.dump(2) << '\n';
    } else {
      out << "family " << family << '\n' << "t " << std::setprecision(17) << req.t << '\n';
      out << "#     " << std::setw(22) << "re" << std::setw(22) << "im" << '\n';
      print_coefficient(out, "delta", c.delta);
      print_coefficient(out, "alpha", c.alpha);
      print_coefficient(out, "beta", c.beta);
      print_coefficient(out, "gamma", c.gamma);
      if (deviation)
        out << "ode_max_abs_deviation " << std::scientific << std::setprecision(3) << *deviation << " (" << cfg.ode_steps
            << " RK4 steps)\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "factorize: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_evolve(const EvolveRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  WaveFunction psi = [&] {
    cfg.validate();
    return prepare_state(req.initial, cfg.grid());
  }();
  const double initial_norm = psi.norm();
  Diagnostics diag;
  for (const auto& op : req.operators) psi = apply_chain(psi, build_factor_sequence(op), &diag);
  print_warnings(diag, err);

  Table table = wavefunction_table(psi);
  table.config.update(cfg.to_json());
  emit_table(table, cfg, out);

  const double final_norm = psi.norm();
  std::ostream& report = cfg.out.empty() ? err : out;
  report << "norm " << std::setprecision(17) << final_norm << '\n';
  const double drift = std::abs(final_norm - initial_norm);
  if (drift > cfg.tol) {
    err << "evolve: norm drift " << drift << " exceeds tolerance " << cfg.tol << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_verify(Suite suite, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> results;
  try {
    cfg.validate();
    VerifyConfig vc;
    vc.grid = cfg.grid();
    vc.fock_dim = cfg.fock_dim;
    vc.ode_steps = cfg.ode_steps;
    results = run_suite(suite, vc);
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << '\n';
    return kExitError;
  }

  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.passed();

  if (cfg.format == OutputFormat::json) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results)
      checks.push_back({{"suite", r.suite}, {"check", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance},
                        {"status", r.passed() ? "pass" : "fail"}});
    out << nlohmann::json{{"checks", checks}, {"all_pass", all_pass}}.dump(2) << '\n';
  } else {
    out << "suite,check,measured,tolerance,status\n";
    for (const auto& r : results)
      out << r.suite << ',' << r.name << ',' << std::scientific << std::setprecision(3) << r.measured << ','
          << r.tolerance << ',' << (r.passed() ? "pass" : "fail") << '\n';
  }
  return all_pass ? 0 : kExitFailure;
}

std::string probe_path(const std::string& trace_path) {
  const auto slash = trace_path.find_last_of('/');
  const auto dot = trace_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return trace_path + "_probe";
  return trace_path.substr(0, dot) + "_probe" + trace_path.substr(dot);
}

int cmd_density(const DensityRequest& req, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (!std::isfinite(req.t_min) || !std::isfinite(req.t_max)) throw DomainError("time range must be finite");
  if (req.t_steps < 1) throw DomainError("--t-steps must be positive");
  const EvenOddSpec spec(req.x0, req.s, req.sign);
  const Grid grid = cfg.grid();
  const WaveFunction start = WaveFunction::sample(grid, [&](double x) { return even_odd_initial(x, spec); });

  Table trace;
  trace.columns = {"t", "x", "rho_analytic", "rho_grid", "abs_diff"};
  trace.config = cfg.to_json();
  trace.config["x0"] = req.x0;
  trace.config["s"] = req.s;
  trace.config["sign"] = req.sign;
  trace.rows.reserve(static_cast<std::size_t>(req.t_steps + 1) * grid.size());

  Table probe;
  probe.columns = {"t", "d", "raw_integral", "predicted_integral", "unit_form_integral"};
  probe.config = trace.config;

  Diagnostics diag;
  double worst = 0.0;
  for (int k = 0; k <= req.t_steps; ++k) {
    const double t = req.t_min + (req.t_max - req.t_min) * k / req.t_steps;
    const auto analytic = normalized_density(grid, [&](double x) { return rho_spm(x, t, spec); });
    const auto evolved = apply_chain(start, build_factor_sequence(TimeOp{t, min_substeps(t)}), &diag);
    const auto numeric = evolved.density();
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double diff = std::abs(analytic[j] - numeric[j]);
      worst = std::max(worst, diff);
      trace.rows.push_back({t, grid.x(j), analytic[j], numeric[j], diff});
    }

    double raw = 0.0;
    double unit = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      raw += rho_spm(grid.x(j), t, spec);
      unit += rho_spm(grid.x(j), t, spec, EvenOddNormalization::exact);
    }
    probe.rows.push_back({t, std::sqrt(even_odd_width_squared(t, spec.s)), raw * grid.dx(), rho_spm_integral(t, spec),
                          unit * grid.dx()});
  }
  print_warnings(diag, err);

  emit_table(trace, cfg, out);
  std::ostream& report = cfg.out.empty() ? err : out;
  if (!cfg.out.empty()) {
    write_table(probe_path(cfg.out), probe, cfg.format);
    report << "probe " << probe_path(cfg.out) << '\n';
  } else {
    write_table(err, probe, OutputFormat::csv);
  }
  report << "max_abs_diff " << std::scientific << std::setprecision(3) << worst << '\n';
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered-product factorization of squeeze and oscillator operators"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--grid-min", cfg.grid_min, "grid lower bound")->capture_default_str();
    sub->add_option("--grid-max", cfg.grid_max, "grid upper bound (exclusive)")->capture_default_str();
    sub->add_option("--grid-n", cfg.grid_n, "grid points (power of two)")->capture_default_str();
    sub->add_option("--fock-dim,--dim", cfg.fock_dim, "Fock truncation")->capture_default_str();
    sub->add_option("--ode-steps", cfg.ode_steps, "RK4 steps")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "allowed norm drift")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };

  FactorizeRequest fact;
  std::string family;
  SqueezeFamily squeeze;
  auto* factorize = app.add_subcommand("factorize", "print (delta, alpha, beta, gamma)");
  factorize->add_option("family", family, "squeeze or oscillator")->required()->check(CLI::IsMember({"squeeze", "oscillator"}));
  factorize->add_option("--r", squeeze.r, "squeeze magnitude");
  factorize->add_option("--phi", squeeze.phi, "squeeze phase (radians)");
  factorize->add_option("--t", fact.t, "evolution parameter")->capture_default_str();
  factorize->add_flag("--ode-check", fact.ode_check, "compare with RK4 integration");
  add_config(factorize);

  std::string state = "ground";
  std::vector<std::string> ops;
  auto* evolve = app.add_subcommand("evolve", "apply operators to a grid state");
  evolve->add_option("--state", state, "ground | coherent:x0:p0 | squeezed:x0:p0:r:phi | evenodd:x0:s:sign")
      ->capture_default_str();
  evolve->add_option("--op", ops, "displace:x0:p0 | squeeze:r:phi | time:t[:substeps] (repeatable, applied in order)");
  add_config(evolve);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run self-checks");
  verify->add_option("suite", suite, "algebra | fock | grid | analytic | all")
      ->check(CLI::IsMember({"algebra", "fock", "grid", "analytic", "all"}))
      ->capture_default_str();
  add_config(verify);

  DensityRequest dens;
  auto* density = app.add_subcommand("density", "even/odd density trace, closed form vs grid");
  density->add_option("--x0", dens.x0, "packet offset")->capture_default_str();
  density->add_option("--s", dens.s, "initial width")->capture_default_str();
  density->add_option("--sign", dens.sign, "+1 even, -1 odd")->check(CLI::IsMember({1, -1}))->capture_default_str();
  density->add_option("--t-min", dens.t_min, "first time")->capture_default_str();
  density->add_option("--t-max", dens.t_max, "last time")->capture_default_str();
  density->add_option("--t-steps", dens.t_steps, "time intervals (t_steps + 1 samples)")->capture_default_str();
  add_config(density);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.format = parse_format(format);

  try {
    if (*factorize) {
      if (family == "squeeze") fact.family = squeeze;
      else fact.family = OscillatorFamily{};
      return cmd_factorize(fact, cfg, out, err);
    }
    if (*evolve) {
      EvolveRequest req{parse_initial_state(state), {}};
      for (const auto& op : ops) req.operators.push_back(parse_operator(op));
      return cmd_evolve(req, cfg, out, err);
    }
    if (*verify) return cmd_verify(parse_suite(suite), cfg, out, err);
    return cmd_density(dens, cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace opfactor
