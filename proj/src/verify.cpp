#include "opfactor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "opfactor/analytic.hpp"
#include "opfactor/errors.hpp"
#include "opfactor/fock.hpp"

namespace opfactor {

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}
  void add(std::string name, double measured, double tolerance) {
    results_.push_back({suite_, std::move(name), measured, tolerance});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

std::vector<CheckResult> algebra_checks(const VerifyConfig& cfg) {
  Recorder rec("algebra");

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> r_dist(0.0, 2.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  double scale_gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SqueezeParameter z(r_dist(rng), phi_dist(rng));
    scale_gap = std::max(scale_gap, std::abs(squeeze_scale(z, 1.0) - squeeze_scale_half_angle(z)) / squeeze_scale(z, 1.0));
  }
  rec.add("squeeze_scale_forms_agree", scale_gap, 1e-12);

  const SqueezeParameter z(0.8, kPi / 3.0);
  const auto ode = integrate_wei_norman(GeneratorCoefficients::squeeze(z), 1.0, cfg.ode_steps);
  rec.add("squeeze_ode_vs_closed_form", max_abs_difference(ode.back(), squeeze_factorization(z, 1.0)), 1e-8);

  double osc = 0.0;
  for (double t : {0.3, 0.7, 1.0, 1.4}) {
    const auto traj = integrate_wei_norman(GeneratorCoefficients::oscillator(), t, cfg.ode_steps);
    osc = std::max(osc, max_abs_difference(traj.back(), time_displacement_factorization(t)));
  }
  rec.add("oscillator_ode_vs_closed_form", osc, 1e-7);

  double residue = 0.0;
  for (double t : {0.3, 0.7, 1.0, 1.4})
    residue = std::max(residue, std::abs(time_displacement_factorization(t).unitarity_residue() - 1.0));
  for (double r : {0.25, 0.5, 1.0, 2.0})
    residue = std::max(residue, std::abs(squeeze_factorization(SqueezeParameter(r, 1.0), 1.0).unitarity_residue() - 1.0));
  rec.add("unitarity_residue", residue, 1e-10);
  return rec.take();
}

std::vector<CheckResult> fock_checks(const VerifyConfig& cfg) {
  Recorder rec("fock");
  const FockBasis basis(cfg.fock_dim);
  const auto n = static_cast<Eigen::Index>(basis.dim());

  const auto [a, ad] = ladder_matrices(basis.dim());
  const Matrix comm = a * ad - ad * a;
  rec.add("ladder_commutator_block", block_max_abs_difference(comm, Matrix::Identity(n, n), n - 1), 1e-12);

  const auto [x, d] = xp_matrices(basis.dim());
  const Matrix xd = x * d - d * x;
  rec.add("xd_commutator_block", block_max_abs_difference(xd, -Matrix::Identity(n, n), n - 1), 1e-12);

  const double t = 0.3;
  const Matrix factored = factored_matrix(time_displacement_factorization(t), basis).m;
  Matrix diag = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) diag(k, k) = std::exp(cplx(0.0, -(static_cast<double>(k) + 0.5) * t));
  rec.add("diagonal_phase_t0.3", block_max_abs_difference(factored, diag, n / 2), 1e-8);

  const SqueezeParameter z(0.5, kPi / 3.0);
  const Matrix product = factored_matrix(squeeze_factorization(z, 1.0), basis).m;
  const Matrix direct = matrix_exponential(squeeze_ladder_generator(z, basis).m);
  rec.add("squeeze_vs_direct_exponential", block_max_abs_difference(product, direct, n / 4), 1e-6);

  Vector e0 = Vector::Zero(n);
  e0(0) = 1.0;
  const auto ground = fock_to_position(e0, cfg.grid);
  rec.add("hermite_ground_state", ground.max_abs_difference(WaveFunction::sample(cfg.grid, psi0)), 1e-12);
  return rec.take();
}

std::vector<CheckResult> grid_checks(const VerifyConfig& cfg) {
  Recorder rec("grid");
  const Grid& g = cfg.grid;
  const auto ground = WaveFunction::sample(g, psi0);

  const auto gauss = WaveFunction::sample(g, [](double x) { return cplx(std::exp(-x * x / 2.0)); });
  const auto shifted_ref = WaveFunction::sample(g, [](double x) { return cplx(std::exp(-(x - 1.5) * (x - 1.5) / 2.0)); });
  rec.add("shift_gaussian", apply_shift(gauss, -1.5).max_abs_difference(shifted_ref), 1e-9);

  double cs = 0.0;
  for (double r : {0.5, 1.0}) {
    const auto out = apply_chain(ground, build_factor_sequence(SqueezeOp{SqueezeParameter(r, 0.0)}));
    const double s = std::exp(r);
    cs = std::max(cs, out.max_abs_difference(WaveFunction::sample(g, [s](double x) { return squeezed_real(x, 0.0, 0.0, s); })));
  }
  rec.add("squeeze_real_closed_form", cs, 1e-8);

  const auto coherent = WaveFunction::sample(g, [](double x) { return coherent_state(x, 1.0, 0.5); });
  const auto evolved = apply_chain(coherent, build_factor_sequence(TimeOp{0.7, 1}));
  const auto evolved_ref = WaveFunction::sample(g, [](double x) { return coherent_evolved(x, 0.7, 1.0, 0.5); });
  rec.add("coherent_time_evolution",
          align_global_phase(evolved, evolved_ref, density_argmax(evolved_ref)).max_abs_difference(evolved_ref), 1e-6);

  // Outputs must stay inside the window; cropped mass is not drift.
  const SqueezedStateSpec mild{1.0, 0.5, SqueezeParameter(0.3, kPi / 3.0)};
  const auto mild_state = WaveFunction::sample(g, [&](double x) { return psi_ss(x, mild); });
  double drift = 0.0;
  for (const OperatorKind& op : {OperatorKind{DisplacementOp{1.0, 0.5}}, OperatorKind{SqueezeOp{SqueezeParameter(0.5, 0.4)}},
                                 OperatorKind{TimeOp{0.7, 1}}}) {
    for (const auto* state : {&ground, &coherent, &mild_state}) {
      drift = std::max(drift, std::abs(apply_chain(*state, build_factor_sequence(op)).norm() - state->norm()));
    }
  }
  rec.add("unitary_norm_drift", drift, cfg.norm_tolerance);

  const SqueezedStateSpec spec{1.0, 0.5, SqueezeParameter(0.5, kPi / 3.0)};
  const auto squeezed = WaveFunction::sample(g, [&](double x) { return psi_ss(x, spec); });

  const auto whole = apply_chain(squeezed, build_factor_sequence(TimeOp{0.8, 1}));
  const auto split = apply_chain(apply_chain(squeezed, build_factor_sequence(TimeOp{0.3, 1})), build_factor_sequence(TimeOp{0.5, 1}));
  rec.add("time_group_property", whole.max_abs_difference(split), 1e-7);

  const Grid box(0.0, 2.0, 64);
  double box_err = 0.0;
  for (int mode = 1; mode <= 3; ++mode) {
    const auto wave = WaveFunction::sample(box, [mode](double x) { return cplx(std::sin(kPi * mode * x)); });
    auto expected = wave;
    expected *= box_mode_phase(mode, 1.0);
    box_err = std::max(box_err, apply_spectral_d2(wave, cplx(0.0, 0.5)).max_abs_difference(expected));
  }
  rec.add("box_mode_phase", box_err, 1e-9);
  return rec.take();
}

std::vector<CheckResult> analytic_checks(const VerifyConfig& cfg) {
  Recorder rec("analytic");
  const Grid& g = cfg.grid;

  double identity = 0.0;
  double real_reduction = 0.0;
  double coherent_t0 = 0.0;
  const SqueezedStateSpec zero{0.0, 0.0, SqueezeParameter(0.0, 0.0)};
  const SqueezedStateSpec real_z{1.0, 0.0, SqueezeParameter(1.0, 0.0)};
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    identity = std::max(identity, std::abs(psi_ss(x, zero) - psi0(x)));
    real_reduction = std::max(real_reduction, std::abs(psi_ss(x, real_z) - squeezed_real(x, 1.0, 0.0, std::numbers::e)));
    coherent_t0 = std::max(coherent_t0, std::abs(coherent_evolved(x, 0.0, 1.0, 0.5) - coherent_state(x, 1.0, 0.5)));
  }
  rec.add("squeezed_state_identity", identity, 1e-15);
  rec.add("squeezed_state_real_reduction", real_reduction, 1e-12);
  rec.add("coherent_evolved_at_zero", coherent_t0, 1e-14);

  const SqueezedStateSpec general{1.0, 0.5, SqueezeParameter(0.8, kPi / 3.0)};
  const auto closed = WaveFunction::sample(g, [&](double x) { return psi_ss(x, general); });
  const auto ground = WaveFunction::sample(g, psi0);
  const auto built = apply_chain(apply_chain(ground, build_factor_sequence(SqueezeOp{general.z})),
                                 build_factor_sequence(DisplacementOp{general.x0, general.p0}));
  const std::size_t at_x0 = static_cast<std::size_t>(std::lround((general.x0 - g.x_min()) / g.dx()));
  rec.add("squeezed_state_vs_grid", align_global_phase(built, closed, at_x0).max_abs_difference(closed), 1e-7);

  double parity = 0.0;
  double caustic = 0.0;
  double psi_vs_rho = 0.0;
  double probe = 0.0;
  double grid_vs_rho = 0.0;
  for (int sign : {1, -1}) {
    const EvenOddSpec spec(2.0, 1.5, sign);
    for (double t : {0.0, 0.6, kPi / 2.0, 2.0}) {
      for (double x : {0.3, 1.1, 2.7}) parity = std::max(parity, std::abs(psi_spm(x, t, spec) - double(sign) * psi_spm(-x, t, spec)));
      const auto rho = normalized_density(g, [&](double x) { return rho_spm(x, t, spec); });
      const auto from_psi = normalized_density(g, [&](double x) { return std::norm(psi_spm(x, t, spec)); });
      psi_vs_rho = std::max(psi_vs_rho, max_abs(rho, from_psi));
      for (std::size_t j = 0; j < g.size(); ++j)
        if (!std::isfinite(rho[j]) || !std::isfinite(from_psi[j])) caustic = INFINITY;

      double raw = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) raw += rho_spm(g.x(j), t, spec);
      probe = std::max(probe, std::abs(raw * g.dx() - rho_spm_integral(t, spec)));

      const auto start = WaveFunction::sample(g, [&](double x) { return even_odd_initial(x, spec); });
      const auto evolved = apply_chain(start, build_factor_sequence(TimeOp{t, min_substeps(t)}));
      grid_vs_rho = std::max(grid_vs_rho, max_abs(rho, evolved.density()));
    }
  }
  rec.add("even_odd_parity", parity, 1e-12);
  rec.add("even_odd_caustic_finite", caustic, 0.0);
  rec.add("even_odd_density_vs_wavefunction", psi_vs_rho, 1e-9);
  rec.add("even_odd_density_integral", probe, 1e-9);
  rec.add("even_odd_density_vs_grid", grid_vs_rho, 1e-5);
  return rec.take();
}
}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "algebra") return Suite::algebra;
  if (name == "fock") return Suite::fock;
  if (name == "grid") return Suite::grid;
  if (name == "analytic") return Suite::analytic;
  if (name == "all") return Suite::all;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::algebra: return "algebra";
    case Suite::fock: return "fock";
    case Suite::grid: return "grid";
    case Suite::analytic: return "analytic";
    case Suite::all: return "all";
  }
  return "?";
}

std::vector<CheckResult> run_suite(Suite suite, const VerifyConfig& config) {
  if (config.ode_steps < 1) throw DomainError("ode_steps must be >= 1");
  const FockBasis validated(config.fock_dim);  // rejects bad dimensions up front
  (void)validated;

  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> more) { out.insert(out.end(), more.begin(), more.end()); };
  if (suite == Suite::algebra || suite == Suite::all) append(algebra_checks(config));
  if (suite == Suite::fock || suite == Suite::all) append(fock_checks(config));
  if (suite == Suite::grid || suite == Suite::all) append(grid_checks(config));
  if (suite == Suite::analytic || suite == Suite::all) append(analytic_checks(config));
  return out;
}

}  // namespace opfactor
