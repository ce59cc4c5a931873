// Quantum-operator construction on truncated composite Hilbert spaces:
// layouts, dense complex operators, density matrices, expectations,
// partial traces. Everything downstream builds on this.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ptqed/errors.hpp"

namespace ptqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class FactorKind { Resonator, Qubit };

struct Factor {
    FactorKind kind;
    int dim;
};

inline Factor resonator(int n_fock) { return {FactorKind::Resonator, n_fock}; }
inline Factor qubit() { return {FactorKind::Qubit, 2}; }

// Ordered list of subsystem factors. The first factor is the slowest-varying
// index (standard Kronecker order). Total dimension = product of factor dims.
class SpaceLayout {
  public:
    explicit SpaceLayout(std::vector<Factor> factors);

    int dim() const { return dim_; }
    int factor_count() const { return static_cast<int>(factors_.size()); }
    const Factor& factor(int i) const;

    bool operator==(const SpaceLayout& other) const;
    bool operator!=(const SpaceLayout& other) const { return !(*this == other); }

  private:
    std::vector<Factor> factors_;
    int dim_ = 0;
};

// Dense complex operator tagged with its layout. Dimensionless entries
// (hbar = 1, frequencies in units of omega_1 = 1).
struct Operator {
    SpaceLayout layout;
    Matrix data;
};

struct DensityMatrix {
    SpaceLayout layout;
    Matrix data;
};

enum class ComposeOp { Add, Sub, Mul, Commutator };
enum class PauliKind { X, Y, Z, Plus, Minus };

// Embedded annihilation operator a with a|n> = sqrt(n)|n-1> on the factor's
// truncated Fock basis {|0>..|N-1>}.
Operator annihilation(const SpaceLayout& layout, int factor_index);

// Embedded 2x2 Pauli operator. Qubit basis order (|down>, |up>);
// sigma_z|up> = +|up>, sigma_plus = |up><down|.
Operator pauli(const SpaceLayout& layout, int factor_index, PauliKind kind);

Operator identity_op(const SpaceLayout& layout);
Operator zero_op(const SpaceLayout& layout);

Operator compose(const Operator& a, const Operator& b, ComposeOp op);
Operator scale(const Operator& a, cplx c);
Operator dagger(const Operator& a);

// trace(rho * A); layouts must match.
cplx expectation(const DensityMatrix& rho, const Operator& a);

// Reduced density matrix on the kept factors (indices into the layout);
// trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Checks Hermiticity (1e-10 max-norm), unit trace (1e-8) and positivity
// (min eigenvalue >= -1e-8); throws NumericalError on breach.
void validate_density(const DensityMatrix& rho, const std::string& context = "");

// Kronecker product helper (first argument varies slowest).
Matrix kron(const Matrix& a, const Matrix& b);

namespace tol {
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kTrace = 1e-8;
inline constexpr double kPositivity = 1e-8;
}  // namespace tol

}  // namespace ptqed
