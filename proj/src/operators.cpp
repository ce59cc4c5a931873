#include "ptqed/operators.hpp"

#include <cmath>
#include <string>

namespace ptqed {

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ValidationError("SpaceLayout: no factors given");
    dim_ = 1;
    for (const auto& f : factors_) {
        if (f.dim < 2) throw ValidationError("SpaceLayout: every factor dimension must be >= 2");
        if (f.kind == FactorKind::Qubit && f.dim != 2)
            throw ValidationError("SpaceLayout: qubit factors are two-level");
        dim_ *= f.dim;
    }
}

const Factor& SpaceLayout::factor(int i) const {
    if (i < 0 || i >= factor_count())
        throw ValidationError("SpaceLayout: factor index " + std::to_string(i) + " out of range");
    return factors_[static_cast<size_t>(i)];
}

bool SpaceLayout::operator==(const SpaceLayout& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].kind != other.factors_[i].kind || factors_[i].dim != other.factors_[i].dim)
            return false;
    return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

// Embed a local matrix acting on one factor into the full space.
Matrix embed(const SpaceLayout& layout, int factor_index, const Matrix& local) {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < layout.factor_count(); ++i) {
        const int d = layout.factor(i).dim;
        out = (i == factor_index) ? kron(out, local)
                                  : kron(out, Matrix::Identity(d, d));
    }
    return out;
}

void require_same_layout(const SpaceLayout& a, const SpaceLayout& b, const char* who) {
    if (a != b) throw ValidationError(std::string(who) + ": layout mismatch");
}

}  // namespace

Operator annihilation(const SpaceLayout& layout, int factor_index) {
    const Factor& f = layout.factor(factor_index);
    if (f.kind != FactorKind::Resonator)
        throw ValidationError("annihilation: factor " + std::to_string(factor_index) + " is not a resonator");
    const int n = f.dim;
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return {layout, embed(layout, factor_index, a)};
}

Operator pauli(const SpaceLayout& layout, int factor_index, PauliKind kind) {
    const Factor& f = layout.factor(factor_index);
    if (f.kind != FactorKind::Qubit)
        throw ValidationError("pauli: factor " + std::to_string(factor_index) + " is not a qubit");
    Matrix p = Matrix::Zero(2, 2);
    const cplx i1(0.0, 1.0);
    switch (kind) {
        case PauliKind::X: p(0, 1) = 1.0; p(1, 0) = 1.0; break;
        case PauliKind::Y: p(0, 1) = i1; p(1, 0) = -i1; break;
        case PauliKind::Z: p(0, 0) = -1.0; p(1, 1) = 1.0; break;
        case PauliKind::Plus: p(1, 0) = 1.0; break;   // |up><down|
        case PauliKind::Minus: p(0, 1) = 1.0; break;  // |down><up|
    }
    return {layout, embed(layout, factor_index, p)};
}

Operator identity_op(const SpaceLayout& layout) {
    return {layout, Matrix::Identity(layout.dim(), layout.dim())};
}

Operator zero_op(const SpaceLayout& layout) {
    return {layout, Matrix::Zero(layout.dim(), layout.dim())};
}

Operator compose(const Operator& a, const Operator& b, ComposeOp op) {
    require_same_layout(a.layout, b.layout, "compose");
    switch (op) {
        case ComposeOp::Add: return {a.layout, a.data + b.data};
        case ComposeOp::Sub: return {a.layout, a.data - b.data};
        case ComposeOp::Mul: return {a.layout, a.data * b.data};
        case ComposeOp::Commutator: return {a.layout, a.data * b.data - b.data * a.data};
    }
    throw ValidationError("compose: unknown op");
}

Operator scale(const Operator& a, cplx c) { return {a.layout, c * a.data}; }

Operator dagger(const Operator& a) { return {a.layout, a.data.adjoint()}; }

cplx expectation(const DensityMatrix& rho, const Operator& a) {
    require_same_layout(rho.layout, a.layout, "expectation");
    return (rho.data * a.data).trace();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
    const int nf = rho.layout.factor_count();
    std::vector<bool> kept(static_cast<size_t>(nf), false);
    for (int k : keep) {
        if (k < 0 || k >= nf) throw ValidationError("partial_trace: keep index out of range");
        kept[static_cast<size_t>(k)] = true;
    }

    std::vector<int> dims(static_cast<size_t>(nf));
    std::vector<Factor> kept_factors;
    int dim_keep = 1, dim_trace = 1;
    for (int i = 0; i < nf; ++i) {
        dims[static_cast<size_t>(i)] = rho.layout.factor(i).dim;
        if (kept[static_cast<size_t>(i)]) {
            kept_factors.push_back(rho.layout.factor(i));
            dim_keep *= dims[static_cast<size_t>(i)];
        } else {
            dim_trace *= dims[static_cast<size_t>(i)];
        }
    }

    // Map (kept multi-index, traced multi-index) -> full index, factor order preserved.
    auto full_index = [&](int ik, int it) {
        int idx = 0, rk = ik, rt = it;
        // decode from the last factor (fastest) backwards, then recompose forwards
        std::vector<int> comp(static_cast<size_t>(nf));
        for (int i = nf - 1; i >= 0; --i) {
            const int d = dims[static_cast<size_t>(i)];
            if (kept[static_cast<size_t>(i)]) { comp[static_cast<size_t>(i)] = rk % d; rk /= d; }
            else { comp[static_cast<size_t>(i)] = rt % d; rt /= d; }
        }
        for (int i = 0; i < nf; ++i) idx = idx * dims[static_cast<size_t>(i)] + comp[static_cast<size_t>(i)];
        return idx;
    };

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (int i = 0; i < dim_keep; ++i)
        for (int j = 0; j < dim_keep; ++j) {
            cplx s = 0.0;
            for (int t = 0; t < dim_trace; ++t)
                s += rho.data(full_index(i, t), full_index(j, t));
            out(i, j) = s;
        }
    return {SpaceLayout(kept_factors), out};
}

void validate_density(const DensityMatrix& rho, const std::string& context) {
    const std::string where = context.empty() ? "density matrix" : context;
    const double herm = (rho.data - rho.data.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::kHermiticity)
        throw NumericalError(where + ": Hermiticity breach (max |rho - rho^dag| = " +
                             std::to_string(herm) + ")");
    const double tr_err = std::abs(rho.data.trace() - cplx(1.0, 0.0));
    if (tr_err > tol::kTrace)
        throw NumericalError(where + ": trace breach (|tr(rho) - 1| = " + std::to_string(tr_err) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.data + rho.data.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol::kPositivity)
        throw NumericalError(where + ": positivity breach (min eigenvalue = " +
                             std::to_string(min_eig) + ")");
}

}  // namespace ptqed
