// Numerical checks of the analytic eavesdropping results.
//
// maximize_iae searches over probe amplitudes for the largest information Eve can
// read from her probe in the computational basis, given the equal-disturbance
// constraints. optimize_eve_measurement searches over Eve's projective
// measurements for a fixed probe. find_intersection locates curve crossings.

#pragma once

#include "sixstate/attack.hpp"
#include "sixstate/infotheory.hpp"
#include "sixstate/numerics.hpp"
#include "sixstate/qcore.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace sixstate {

using numerics::convergence_error;

enum class ConstraintMode {
    /// Equal disturbance for all six states; B = |00>, D = |11>.
    SixState,
    /// Equal disturbance for the four Z/X states only; all probe states free.
    BB84,
};

struct ConstraintSet {
    ConstraintMode mode = ConstraintMode::SixState;
    double tolerance = 1e-10;
};

struct OptimizationResult {
    double best_value = 0.0;
    std::optional<ProbeSpec> probe;
    std::vector<double> residuals;
    int iterations = 0;
    int restarts = 0;
    int converged_restarts = 0;
    /// Restarts whose value is within 1e-6 of best_value.
    int restarts_at_best = 0;
    std::vector<double> restart_values;
};

/// Expansion coefficients of a two-qubit probe state a|00> + b|10> + g|01> + d|11>.
struct ProbeCoefficients {
    complex alpha, beta, gamma, delta;
};

inline ProbeCoefficients probe_coefficients(const PureState& s)
{
    detail::require(s.dim() == 4, "probe_coefficients: expected a two-qubit probe state");
    return {s[0], s[2], s[1], s[3]};
}

namespace detail {

inline CVector complex_block(const numerics::Vec& x, Eigen::Index offset, int dim)
{
    CVector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = complex(x(offset + 2 * k), x(offset + 2 * k + 1));
    return v;
}

/// Probe states encoded in a real parameter vector (each state normalized on decode).
struct ProbeParameters {
    ConstraintMode mode;
    double fidelity;

    int size() const { return mode == ConstraintMode::SixState ? 16 : 32; }

    struct States {
        CVector a, b, c, d;
        double scale_defect = 0.0;
    };

    States decode(const numerics::Vec& x) const
    {
        States s;
        auto take = [&](Eigen::Index offset) {
            CVector v = complex_block(x, offset, 4);
            const double n2 = v.squaredNorm();
            s.scale_defect += (n2 - 1.0) * (n2 - 1.0);
            return CVector(v / std::sqrt(n2));
        };
        if (mode == ConstraintMode::SixState) {
            s.a = take(0);
            s.c = take(8);
            s.b = CVector::Zero(4);
            s.b(0) = 1.0;
            s.d = CVector::Zero(4);
            s.d(3) = 1.0;
        } else {
            s.a = take(0);
            s.b = take(8);
            s.c = take(16);
            s.d = take(24);
        }
        return s;
    }

    double information(const States& s) const
    {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double p0 = fidelity * std::norm(s.a(k)) + (1.0 - fidelity) * std::norm(s.b(k));
            const double p1 = fidelity * std::norm(s.c(k)) + (1.0 - fidelity) * std::norm(s.d(k));
            acc += tau(p0, p1);
        }
        return 1.0 + 0.5 * acc;
    }

    numerics::Vec constraints(const States& s) const
    {
        const double f = fidelity;
        const complex ca = s.c.dot(s.a);
        const complex cross = s.a.dot(s.b) + s.d.dot(s.c);
        const complex iso = s.a.dot(s.d) + s.b.dot(s.c);
        numerics::Vec r;
        if (mode == ConstraintMode::SixState) {
            r.resize(5);
            r << ca.real() - (2.0 - 1.0 / f), cross.real(), cross.imag(), iso.real(), iso.imag();
        } else {
            const complex db = s.d.dot(s.b);
            r.resize(4);
            r << f * ca.real() + (1.0 - f) * db.real() - (2.0 * f - 1.0), cross.real(), iso.real(), iso.imag();
        }
        return r;
    }
};

} // namespace detail

/// Maximizes Eve's computational-basis information over probe states at disturbance `d`.
inline OptimizationResult maximize_iae(double d, const ConstraintSet& constraints, std::uint64_t seed,
                                       int restarts = 32)
{
    if (!(d >= 0.0 && d <= 0.5)) throw std::domain_error("maximize_iae: disturbance outside [0, 1/2]");
    detail::require(restarts >= 1, "maximize_iae: need at least one restart");

    const detail::ProbeParameters params{constraints.mode, 1.0 - d};
    auto objective = [&](const numerics::Vec& x) {
        const auto s = params.decode(x);
        return params.information(s) - s.scale_defect;
    };
    auto residuals = [&](const numerics::Vec& x) { return params.constraints(params.decode(x)); };

    numerics::ConstrainedOptions opt;
    opt.tolerance = constraints.tolerance;

    std::mt19937_64 master(seed);
    std::normal_distribution<double> normal;

    OptimizationResult out;
    out.restarts = restarts;
    std::optional<numerics::Vec> best_x;
    for (int r = 0; r < restarts; ++r) {
        numerics::Vec x0(params.size());
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = normal(master);
        const numerics::ConstrainedResult res = numerics::maximize_constrained(objective, residuals, x0, opt);
        out.iterations += res.iterations;
        if (!res.converged) continue;
        const double value = params.information(params.decode(res.x));
        ++out.converged_restarts;
        out.restart_values.push_back(value);
        if (!best_x || value > out.best_value) {
            out.best_value = value;
            best_x = res.x;
        }
    }
    if (!best_x) throw convergence_error("maximize_iae: no restart satisfied the constraints");

    for (double v : out.restart_values)
        if (v >= out.best_value - 1e-6) ++out.restarts_at_best;

    const auto s = params.decode(*best_x);
    const numerics::Vec r = params.constraints(s);
    out.residuals.assign(r.data(), r.data() + r.size());
    out.probe.emplace(params.fidelity, PureState::normalized(s.a), PureState::normalized(s.b),
                      PureState::normalized(s.c), PureState::normalized(s.d));
    return out;
}

struct MeasurementResult {
    /// Orthonormal measurement vectors on the probe space.
    std::vector<PureState> measurement;
    double information = 0.0;
    int restarts_at_best = 0;
};

namespace detail {

/// Modified Gram-Schmidt on the columns of a square complex matrix.
inline CMatrix orthonormalize(CMatrix m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index k = 0; k < j; ++k) m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
        m.col(j) /= m.col(j).norm();
    }
    return m;
}

inline double measured_information(const CMatrix& u, const CMatrix& rho0, const CMatrix& rho1)
{
    std::vector<double> g0(static_cast<std::size_t>(u.cols())), g1(g0.size());
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        g0[static_cast<std::size_t>(k)] = std::max(0.0, u.col(k).dot(rho0 * u.col(k)).real());
        g1[static_cast<std::size_t>(k)] = std::max(0.0, u.col(k).dot(rho1 * u.col(k)).real());
    }
    return information_from_conditionals(g0, g1);
}

} // namespace detail

/// Best projective (rank-one, complete) measurement of Eve's probe after Alice's basis is announced.
inline MeasurementResult optimize_eve_measurement(const ProbeSpec& p, Basis basis, std::uint64_t seed,
                                                  int restarts = 16)
{
    const auto [rho0, rho1] = eve_conditional_states(p, basis);
    const int dim = p.probe_dim();
    auto unitary = [dim](const numerics::Vec& x) {
        CMatrix m(dim, dim);
        for (int j = 0; j < dim; ++j) m.col(j) = detail::complex_block(x, 2 * dim * j, dim);
        return detail::orthonormalize(std::move(m));
    };
    auto negative_info = [&](const numerics::Vec& x) {
        return -detail::measured_information(unitary(x), rho0.matrix(), rho1.matrix());
    };

    std::mt19937_64 master(seed);
    std::normal_distribution<double> normal;
    std::vector<double> values;
    MeasurementResult out;
    out.information = -1.0;
    numerics::MinimizeOptions opt;
    opt.gradient_tol = 1e-11;
    for (int r = 0; r < restarts; ++r) {
        numerics::Vec x0(2 * dim * dim);
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = normal(master);
        const auto res = numerics::bfgs_minimize(negative_info, x0, opt);
        const double value = -res.value;
        values.push_back(value);
        if (value > out.information) {
            out.information = value;
            const CMatrix u = unitary(res.x);
            out.measurement.clear();
            for (int k = 0; k < dim; ++k) out.measurement.push_back(PureState::normalized(u.col(k)));
        }
    }
    if (!std::isfinite(out.information)) throw convergence_error("optimize_eve_measurement: no finite optimum");
    for (double v : values)
        if (v >= out.information - 1e-6) ++out.restarts_at_best;
    return out;
}

/// Root of curve_a - curve_b on [lo, hi].
///
/// A sign change is located by bisection. Without one, a root where the
/// difference only touches zero is accepted if a minimum of |difference| reaches
/// 1e-10; identical curves and brackets without any root are errors.
inline double find_intersection(const std::function<double(double)>& curve_a,
                                const std::function<double(double)>& curve_b, double lo, double hi)
{
    detail::require(lo < hi, "find_intersection: empty bracket");
    constexpr double tol = 1e-10;
    auto diff = [&](double x) { return curve_a(x) - curve_b(x); };
    const double flo = diff(lo), fhi = diff(hi);

    if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0)) {
        const double root = numerics::bisect(diff, lo, hi);
        if (std::abs(diff(root)) >= tol) throw convergence_error("find_intersection: bisection did not converge");
        return root;
    }
    if (flo == 0.0 && fhi == 0.0) throw std::invalid_argument("find_intersection: no sign change in bracket");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    const double touch = numerics::golden_minimize([&](double x) { return std::abs(diff(x)); }, lo, hi);
    if (std::abs(diff(touch)) < tol) return touch;
    throw std::invalid_argument("find_intersection: no sign change in bracket");
}

} // namespace sixstate
