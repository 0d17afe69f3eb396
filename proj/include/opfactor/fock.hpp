#pragma once

// Dense operators on a truncated number-state basis {|0>, ..., |N-1>}.
// Used as an independent oracle for the ordered-product factorizations:
// everything here is a direct matrix exponential, nothing depends on the
// closed-form coefficients.

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>

#include "opfactor/algebra.hpp"
#include "opfactor/grid.hpp"

namespace opfactor {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class FockBasis {
 public:
  static constexpr std::size_t kMinDim = 8;
  static constexpr std::size_t kMaxDim = 512;
  static constexpr std::size_t kDefaultDim = 128;

  /// Throws DomainError outside [kMinDim, kMaxDim].
  explicit FockBasis(std::size_t dim = kDefaultDim);
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

struct OperatorMatrix {
  Matrix m;
  std::string label;

  Eigen::Index dim() const { return m.rows(); }
};

/// a[n-1, n] = sqrt(n); a_dagger is its adjoint. Requires n >= 2.
std::pair<Matrix, Matrix> ladder_matrices(std::size_t n);

/// X = (a + a^dag)/sqrt 2, D = (a - a^dag)/sqrt 2.
std::pair<Matrix, Matrix> xp_matrices(std::size_t n);

/// b1 I + b2 X^2 + b3 X D + b4 D^2 with products formed in the truncated space.
OperatorMatrix generator_matrix(const GeneratorCoefficients& b, const FockBasis& basis);

/// z a^dag a^dag / 2 - conj(z) a a / 2, built from ladder matrices directly.
OperatorMatrix squeeze_ladder_generator(const SqueezeParameter& z, const FockBasis& basis);

/// Scaling and squaring with Pade approximants (Eigen's MatrixFunctions).
/// Throws OverflowError when the 1-norm exceeds 1e6 and DomainError for
/// non-finite entries.
Matrix matrix_exponential(const Matrix& m);
OperatorMatrix matrix_exponential(const OperatorMatrix& m);

/// e^delta exp(i alpha X^2) exp(beta X D) exp(i gamma D^2), returned on the
/// basis' N states. Each factor is exponentiated in a cached eigenbasis:
/// X^2 and D^2 are real symmetric, and X D is taken as (X D + D X)/2 - 1/2,
/// whose first part is antisymmetric.
///
/// The individual factors couple low states to high ones (each spreads |n>
/// far beyond n), so the product of truncated factors is not the truncation
/// of the product. The factors are therefore formed in a working space of
/// `working_dim` >= N states and the product is projected back; 0 selects
/// default_working_dim(N). Passing N itself gives the plain truncated product.
OperatorMatrix factored_matrix(const FactorizationCoefficients& c, const FockBasis& basis,
                               std::size_t working_dim = 0);

/// min(4 N, FockBasis::kMaxDim), but never below N.
std::size_t default_working_dim(std::size_t n);

/// Max |entry| difference over the top-left block x block corner.
double block_max_abs_difference(const Matrix& a, const Matrix& b, Eigen::Index block);

/// Normalized Hermite functions phi_0..phi_{count-1} sampled on the grid,
/// one row per n. Throws InstabilityError on a non-finite sample.
Eigen::MatrixXd hermite_functions(std::size_t count, const Grid& grid);

/// sum_n c_n phi_n(x). Requires at most FockBasis::kMaxDim coefficients.
WaveFunction fock_to_position(std::span<const cplx> coefficients, const Grid& grid);
WaveFunction fock_to_position(const Vector& coefficients, const Grid& grid);

/// c_n = <phi_n | psi> by rectangle-rule quadrature.
Vector position_to_fock(const WaveFunction& psi, std::size_t count);

}  // namespace opfactor
