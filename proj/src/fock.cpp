#include "opfactor/fock.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
constexpr cplx I{0.0, 1.0};

constexpr double kMaxNorm = 1e6;

template <class M>
double one_norm(const M& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

template <class M>
M expm_impl(const M& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix_exponential needs a square matrix");
  if (!m.allFinite()) throw DomainError("matrix_exponential: non-finite entry");
  const auto n = m.rows();
  if (n == 0) return m;
  const double norm = one_norm(m);
  if (norm > kMaxNorm) {
    std::ostringstream msg;
    msg << "matrix_exponential: 1-norm " << norm << " exceeds " << kMaxNorm;
    throw OverflowError(msg.str());
  }
  if (norm == 0.0) return M::Identity(n, n);
  return M(m.exp());
}

template <class Scalar>
struct Eigenbasis {
  Eigen::VectorXd values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

struct QuadraticBases {
  Eigenbasis<double> x2;  // X^2
  Eigenbasis<double> d2;  // D^2
  Eigenbasis<cplx> s;     // i (X D + D X) / 2, Hermitian
};

// These depend only on the dimension; cache them.
const QuadraticBases& quadratic_bases(std::size_t n) {
  static std::mutex lock;
  static std::map<std::size_t, QuadraticBases> cache;
  const std::scoped_lock guard(lock);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto [xc, dc] = xp_matrices(n);
    const Eigen::MatrixXd x = xc.real();
    const Eigen::MatrixXd d = dc.real();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(x * x), ed(d * d);
    const Matrix s = (I * 0.5) * (x * d + d * x).cast<cplx>();
    const Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    it = cache.emplace(n, QuadraticBases{{ex.eigenvalues(), ex.eigenvectors()},
                                         {ed.eigenvalues(), ed.eigenvectors()},
                                         {es.eigenvalues(), es.eigenvectors()}}).first;
  }
  return it->second;
}

// Rows [0, keep) of exp(c S), S = V diag(lambda) V^T real symmetric.
Matrix symmetric_exp_rows(const Eigenbasis<double>& e, cplx c, Eigen::Index keep) {
  const Eigen::VectorXcd phase = (c * e.values.cast<cplx>()).array().exp();
  const Matrix scaled = e.vectors.topRows(keep).cast<cplx>() * phase.asDiagonal();
  return scaled * e.vectors.transpose();
}

void require_dim(std::size_t n) {
  if (n < 2) throw DomainError("Fock truncation must be >= 2");
}
}  // namespace

FockBasis::FockBasis(std::size_t dim) : dim_(dim) {
  if (dim < kMinDim || dim > kMaxDim) {
    std::ostringstream msg;
    msg << "Fock dimension " << dim << " outside [" << kMinDim << ", " << kMaxDim << "]";
    throw DomainError(msg.str());
  }
}

std::pair<Matrix, Matrix> ladder_matrices(std::size_t n) {
  require_dim(n);
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Matrix ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

std::pair<Matrix, Matrix> xp_matrices(std::size_t n) {
  const auto [a, ad] = ladder_matrices(n);
  const double s = 1.0 / std::numbers::sqrt2;
  return {s * (a + ad), s * (a - ad)};
}

OperatorMatrix generator_matrix(const GeneratorCoefficients& b, const FockBasis& basis) {
  const auto [x, d] = xp_matrices(basis.dim());
  const auto n = x.rows();
  Matrix g = b.b1 * Matrix::Identity(n, n);
  if (b.b2 != cplx{}) g += b.b2 * (x * x);
  if (b.b3 != cplx{}) g += b.b3 * (x * d);
  if (b.b4 != cplx{}) g += b.b4 * (d * d);
  return {std::move(g), "generator"};
}

OperatorMatrix squeeze_ladder_generator(const SqueezeParameter& z, const FockBasis& basis) {
  const auto [a, ad] = ladder_matrices(basis.dim());
  const cplx zz = z.z();
  Matrix g = (zz / 2.0) * (ad * ad) - (std::conj(zz) / 2.0) * (a * a);
  return {std::move(g), "squeeze generator"};
}

Matrix matrix_exponential(const Matrix& m) { return expm_impl(m); }

OperatorMatrix matrix_exponential(const OperatorMatrix& m) {
  return {matrix_exponential(m.m), "exp(" + m.label + ")"};
}

std::size_t default_working_dim(std::size_t n) { return std::max(n, std::min(4 * n, FockBasis::kMaxDim)); }

OperatorMatrix factored_matrix(const FactorizationCoefficients& c, const FockBasis& basis,
                               std::size_t working_dim) {
  const std::size_t n = basis.dim();
  const std::size_t work = working_dim == 0 ? default_working_dim(n) : working_dim;
  if (work < n) throw DomainError("factored_matrix: working dimension below basis dimension");
  // X D = (X D + D X) / 2 - 1/2 as operators; the symmetrised part is
  // antisymmetric, so exp(beta X D) comes from a cached Hermitian eigenbasis.
  const auto keep = static_cast<Eigen::Index>(n);
  const auto& bases = quadratic_bases(work);
  // Only the leading block survives, so the outer factors need n rows / columns.
  const Matrix left = std::exp(c.delta - c.beta / 2.0) * symmetric_exp_rows(bases.x2, I * c.alpha, keep);
  const Matrix right = symmetric_exp_rows(bases.d2, I * c.gamma, keep).transpose();  // symmetric
  const Eigen::VectorXcd phase = (-I * c.beta * bases.s.values.cast<cplx>()).array().exp();
  Matrix u = (left * bases.s.vectors) * phase.asDiagonal() * (bases.s.vectors.adjoint() * right);
  return {std::move(u), "ordered product"};
}

double block_max_abs_difference(const Matrix& a, const Matrix& b, Eigen::Index block) {
  if (block > a.rows() || block > b.rows()) throw DomainError("block larger than matrix");
  return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd hermite_functions(std::size_t count, const Grid& grid) {
  if (count > FockBasis::kMaxDim) throw DomainError("Hermite recurrence limited to 512 functions");
  const auto rows = static_cast<Eigen::Index>(count);
  const auto cols = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd phi(rows, cols);
  if (count == 0) return phi;
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double x = grid.x(static_cast<std::size_t>(j));
    phi(0, j) = norm0 * std::exp(-x * x / 2.0);
    if (rows > 1) phi(1, j) = std::numbers::sqrt2 * x * phi(0, j);
    for (Eigen::Index n = 1; n + 1 < rows; ++n) {
      const double nn = static_cast<double>(n);
      phi(n + 1, j) = std::sqrt(2.0 / (nn + 1.0)) * x * phi(n, j) - std::sqrt(nn / (nn + 1.0)) * phi(n - 1, j);
    }
  }
  if (!phi.allFinite()) throw InstabilityError("non-finite Hermite function sample");
  return phi;
}

WaveFunction fock_to_position(std::span<const cplx> coefficients, const Grid& grid) {
  const Eigen::MatrixXd phi = hermite_functions(coefficients.size(), grid);
  const Eigen::Map<const Vector> c(coefficients.data(), static_cast<Eigen::Index>(coefficients.size()));
  const Vector psi = phi.transpose().cast<cplx>() * c;
  return WaveFunction(grid, std::vector<cplx>(psi.data(), psi.data() + psi.size()));
}

WaveFunction fock_to_position(const Vector& coefficients, const Grid& grid) {
  return fock_to_position(std::span<const cplx>(coefficients.data(), static_cast<std::size_t>(coefficients.size())), grid);
}

Vector position_to_fock(const WaveFunction& psi, std::size_t count) {
  const Eigen::MatrixXd phi = hermite_functions(count, psi.grid());
  const Eigen::Map<const Vector> s(psi.samples().data(), static_cast<Eigen::Index>(psi.size()));
  return (phi.cast<cplx>() * s) * psi.grid().dx();
}

}  // namespace opfactor
