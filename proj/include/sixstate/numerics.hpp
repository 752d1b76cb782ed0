// Small dense optimization routines used by the verification code.
//
// Everything works on Eigen::VectorXd parameter vectors with finite-difference
// derivatives; problem sizes here are a few dozen parameters at most.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace sixstate::numerics {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when an iterative method cannot meet its tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class F>
Vec gradient(F& f, const Vec& x, double rel_step)
{
    Vec g(x.size());
    Vec xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

/// Jacobian of a vector-valued function by central differences.
template <class C>
Mat jacobian(C& c, const Vec& x, double rel_step)
{
    const Vec c0 = c(x);
    Mat j(c0.size(), x.size());
    Vec xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const Vec cp = c(xp);
        xp(i) = x(i) - h;
        const Vec cm = c(xp);
        xp(i) = x(i);
        j.col(i) = (cp - cm) / (2.0 * h);
    }
    return j;
}

struct MinimizeOptions {
    int max_iterations = 1000;
    double gradient_tol = 1e-10;
    double value_tol = 1e-16;
    double fd_step = 1e-6;
};

struct MinimizeResult {
    Vec x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Quasi-Newton (BFGS) minimization with Armijo backtracking.
template <class F>
MinimizeResult bfgs_minimize(F&& f, Vec x, const MinimizeOptions& opt = {})
{
    const Eigen::Index n = x.size();
    Mat h = Mat::Identity(n, n);
    double fx = f(x);
    Vec g = gradient(f, x, opt.fd_step);
    int stalled = 0;

    MinimizeResult res;
    for (int it = 0; it < opt.max_iterations; ++it) {
        res.iterations = it + 1;
        if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) {
            res.converged = true;
            break;
        }
        Vec dir = -h * g;
        double slope = g.dot(dir);
        if (slope >= 0.0) {
            h.setIdentity();
            dir = -g;
            slope = -g.squaredNorm();
        }

        double step = 1.0;
        Vec xn;
        double fn = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            xn = x + step * dir;
            fn = f(xn);
            if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (h.isIdentity()) {
                // No descent possible along the gradient at this resolution.
                res.converged = g.lpNorm<Eigen::Infinity>() < 1e3 * opt.gradient_tol;
                break;
            }
            h.setIdentity();
            continue;
        }

        const Vec gn = gradient(f, xn, opt.fd_step);
        const Vec s = xn - x;
        const Vec y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            if (it == 0) h *= sy / y.squaredNorm();
            const double rho = 1.0 / sy;
            const Vec hy = h * y;
            h += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }

        const double drop = fx - fn;
        x = xn;
        fx = fn;
        g = gn;
        stalled = drop <= opt.value_tol * std::max(1.0, std::abs(fx)) ? stalled + 1 : 0;
        if (stalled >= 5) {
            res.converged = true;
            break;
        }
    }
    res.x = std::move(x);
    res.value = fx;
    return res;
}

struct ConstrainedOptions {
    double tolerance = 1e-10;
    int max_outer = 40;
    double initial_penalty = 10.0;
    double penalty_growth = 10.0;
    double max_penalty = 1e10;
    MinimizeOptions inner{};
};

struct ConstrainedResult {
    Vec x;
    double objective = 0.0;
    Vec residuals;
    int iterations = 0;
    bool converged = false;

    double max_residual() const { return residuals.size() ? residuals.cwiseAbs().maxCoeff() : 0.0; }
};

/// Gauss-Newton projection of `x` onto {c(x) = 0} using minimum-norm corrections.
template <class C>
Vec project_onto_constraints(C& c, Vec x, double tol, int max_iter = 50, double fd_step = 1e-7)
{
    for (int it = 0; it < max_iter; ++it) {
        const Vec r = c(x);
        if (r.lpNorm<Eigen::Infinity>() < tol) break;
        const Mat j = jacobian(c, x, fd_step);
        const Vec dx = j.completeOrthogonalDecomposition().solve(r);
        x -= dx;
    }
    return x;
}

/// Maximizes `objective(x)` subject to `constraints(x) = 0`.
///
/// Quadratic penalty with increasing weight plus first-order multiplier updates,
/// followed by a projection onto the constraint set.
template <class Obj, class Cons>
ConstrainedResult maximize_constrained(Obj&& objective, Cons&& constraints, Vec x,
                                       const ConstrainedOptions& opt = {})
{
    Vec lambda = Vec::Zero(constraints(x).size());
    double mu = opt.initial_penalty;
    double last_violation = std::numeric_limits<double>::infinity();

    ConstrainedResult res;
    for (int outer = 0; outer < opt.max_outer; ++outer) {
        auto merit = [&](const Vec& z) {
            const Vec r = constraints(z);
            return -objective(z) + lambda.dot(r) + 0.5 * mu * r.squaredNorm();
        };
        const MinimizeResult inner = bfgs_minimize(merit, x, opt.inner);
        x = inner.x;
        res.iterations += inner.iterations;

        const Vec r = constraints(x);
        const double violation = r.lpNorm<Eigen::Infinity>();
        if (violation < 0.01 * opt.tolerance) break;
        lambda += mu * r;
        if (violation > 0.25 * last_violation) mu = std::min(mu * opt.penalty_growth, opt.max_penalty);
        last_violation = violation;
    }

    x = project_onto_constraints(constraints, std::move(x), 0.01 * opt.tolerance);
    res.residuals = constraints(x);
    res.objective = objective(x);
    res.converged = std::isfinite(res.objective) && res.max_residual() < opt.tolerance;
    res.x = std::move(x);
    return res;
}

/// Bisection for a sign change of `f` on [lo, hi]; returns the midpoint of the final bracket.
template <class F>
double bisect(F&& f, double lo, double hi)
{
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw std::invalid_argument("bisect: no sign change in bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
template <class F>
double golden_minimize(F&& f, double lo, double hi, int iterations = 200)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iterations && b - a > 1e-15; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace sixstate::numerics
