#include "ptqed/ptspectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptqed/quartic.hpp"

namespace ptqed {

EffectiveRates effective_rates(double g1, double gamma1, const GCoefficients& G1,
                               double g2, double gamma2, const GCoefficients& G2) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw ValidationError("effective_rates: qubit decay rates must be positive");
    if (G1.g_plus < G1.g_minus)
        throw ValidationError("effective_rates: resonator 1 must be loss-dominant (G1+ >= G1-)");
    if (G2.g_minus < G2.g_plus)
        throw ValidationError("effective_rates: resonator 2 must be gain-dominant (G2- >= G2+)");
    auto rate = [](double g, double gamma, const GCoefficients& G) {
        return (2.0 * g * g / gamma) * std::abs(G.g_plus * G.g_plus - G.g_minus * G.g_minus);
    };
    return {rate(g1, gamma1, G1), rate(g2, gamma2, G2)};
}

MomentMatrix build_m(double delta, double J, const EffectiveRates& rates, MMode mode) {
    if (rates.gamma_tilde_1 < 0.0 || rates.gamma_tilde_2 < 0.0)
        throw ValidationError("build_m: effective rates must be non-negative");
    const cplx i1(0.0, 1.0);
    const double g1 = rates.gamma_tilde_1, g2 = rates.gamma_tilde_2;

    MomentMatrix m;
    m.mode = mode;
    m.delta = delta;
    m.J = J;
    m.gamma_tilde_1 = g1;
    m.gamma_tilde_2 = g2;
    m.data << cplx(delta) - i1 * g1, 0.0, J, J,
              0.0, cplx(-delta) - i1 * g1, -J, -J,
              J, J, cplx(delta) + i1 * g2, 0.0,
              -J, -J, 0.0, cplx(-delta) + i1 * g2;
    if (mode == MMode::Rwa) {
        // drop the entries coupling <a>-type to <a^dag>-type components
        m.data(0, 3) = 0.0;
        m.data(1, 2) = 0.0;
        m.data(2, 1) = 0.0;
        m.data(3, 0) = 0.0;
    }
    return m;
}

double pt_defect(const MomentMatrix& m) {
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    p(0, 2) = 1.0;
    p(1, 3) = 1.0;
    p(2, 0) = 1.0;
    p(3, 1) = 1.0;
    return (p * m.data.conjugate() * p - m.data).cwiseAbs().maxCoeff();
}

std::array<cplx, 4> eigenvalues_closed_form(double delta, double J, const EffectiveRates& rates,
                                            MMode mode) {
    const double avg = 0.5 * (rates.gamma_tilde_1 + rates.gamma_tilde_2);
    const cplx offset(0.0, 0.5 * (rates.gamma_tilde_2 - rates.gamma_tilde_1));
    const cplx inner = std::sqrt(cplx(J * J - avg * avg));

    if (mode == MMode::Rwa) {
        return {delta + inner + offset, delta - inner + offset,
                -delta + inner + offset, -delta - inner + offset};
    }
    const cplx base(delta * delta - avg * avg);
    const cplx w_plus = std::sqrt(base + 2.0 * delta * inner);
    const cplx w_minus = std::sqrt(base - 2.0 * delta * inner);
    return {w_plus + offset, w_minus + offset, -w_plus + offset, -w_minus + offset};
}

std::array<cplx, 4> eigenvalues_closed_form(double delta, double J, const EffectiveRates& rates) {
    return eigenvalues_closed_form(delta, J, rates, MMode::NonRwa);
}

std::array<cplx, 4> eigenvalues_numeric(const MomentMatrix& m) {
    std::array<cplx, 4> roots = solve_quartic(characteristic_polynomial(m.data));
    std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

std::pair<double, double> critical_couplings(double delta, const EffectiveRates& rates) {
    if (!(delta > 0.0))
        throw ValidationError("critical_couplings: delta must be positive for the upper critical "
                              "coupling to be finite");
    const double sum = rates.gamma_tilde_1 + rates.gamma_tilde_2;
    return {0.5 * sum, (sum * sum + 4.0 * delta * delta) / (8.0 * delta)};
}

namespace {

constexpr double kRealityTol = 1e-10;   // |Im| threshold after offset removal
constexpr double kGapTol = 1e-6;        // eigenvalue coalescence scale
constexpr double kCondTol = 1e6;        // eigenvector-matrix defectiveness proxy
constexpr double kOriginTol = 1e-6;     // coalescence-at-origin exclusion scale

}  // namespace

PhasePoint classify(double delta, double J, const EffectiveRates& rates, MMode mode) {
    PhasePoint point;
    point.J = J;
    point.eigenvalues = eigenvalues_closed_form(delta, J, rates, mode);

    const double offset = 0.5 * (rates.gamma_tilde_2 - rates.gamma_tilde_1);
    int complex_count = 0;
    for (const cplx& w : point.eigenvalues)
        if (std::abs(w.imag() - offset) > kRealityTol) ++complex_count;
    switch (complex_count) {
        case 0: point.phase = Phase::ExactPT; break;
        case 2: point.phase = Phase::Unstable; break;
        case 4: point.phase = Phase::BrokenPT; break;
        default:
            throw NumericalError("classify: eigenvalue imaginary parts lost their pair structure");
    }

    const MomentMatrix m = build_m(delta, J, rates, mode);
    point.pt_defect_value = pt_defect(m);

    // Exceptional point: eigenvalues coalesce AND eigenvectors degenerate.
    // A pair meeting at the spectral origin (after removing the common
    // imbalance offset) is the instability crossing, not a PT-breaking EP,
    // and is excluded even though the matrix is defective there too.
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m.data);
    const auto& ev = es.eigenvalues();
    double gap = std::numeric_limits<double>::infinity();
    double pair_mean = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double d = std::abs(ev(i) - ev(j));
            if (d < gap) {
                gap = d;
                pair_mean = std::abs(0.5 * (ev(i) + ev(j)) - cplx(0.0, offset));
            }
        }
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(es.eigenvectors());
    const double smin = svd.singularValues()(3);
    const double cond = (smin > 0.0) ? svd.singularValues()(0) / smin
                                     : std::numeric_limits<double>::infinity();
    point.is_ep = (gap < kGapTol) && (cond > kCondTol) && (pair_mean >= kOriginTol);
    return point;
}

std::vector<PhasePoint> sweep_spectrum(const std::vector<double>& j_grid, double delta,
                                       const EffectiveRates& rates, MMode mode) {
    if (j_grid.empty()) throw ValidationError("sweep_spectrum: empty coupling grid");
    for (size_t i = 1; i < j_grid.size(); ++i)
        if (!(j_grid[i] > j_grid[i - 1]))
            throw ValidationError("sweep_spectrum: coupling grid must be strictly ascending");
    std::vector<PhasePoint> points;
    points.reserve(j_grid.size());
    for (double j : j_grid) points.push_back(classify(delta, j, rates, mode));
    return points;
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::BrokenPT: return "broken_pt";
        case Phase::ExactPT: return "exact_pt";
        case Phase::Unstable: return "unstable";
    }
    return "unknown";
}

}  // namespace ptqed
