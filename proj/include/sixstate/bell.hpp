// Entanglement-based view: Alice and Bob share a singlet, Eve attacks Bob's half.
//
// Correlations E(a, b) = Tr[rho (a.sigma (x) b.sigma)] enter the chained Bell
// combination
//
//   S = E(a1,b1) + E(a2,b1) + E(a2,b2) + E(a3,b2) + ... + E(an,bn) - E(a1,bn)
//
// whose local-hidden-variable bound is 2n - 2. For n = 2 this is CHSH.

#pragma once

#include "sixstate/attack.hpp"
#include "sixstate/numerics.hpp"
#include "sixstate/qcore.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace sixstate {

using Vec3 = Eigen::Vector3d;

struct DirectionSet {
    std::vector<Vec3> alice;
    std::vector<Vec3> bob;

    int settings() const { return static_cast<int>(alice.size()); }

    void validate() const
    {
        detail::require(alice.size() == bob.size(), "DirectionSet: Alice and Bob need the same number of settings");
        detail::require(alice.size() >= 2, "DirectionSet: at least two settings per side");
        for (const auto* side : {&alice, &bob})
            for (const Vec3& v : *side)
                detail::require(std::abs(v.norm() - 1.0) <= kAlgebraTol, "DirectionSet: direction is not a unit vector");
    }
};

struct BellReport {
    int settings = 2;
    double disturbance = 0.0;
    /// |S| at this disturbance using the singlet-optimal directions.
    double s = 0.0;
    /// Optimized |S| for the undisturbed singlet.
    double s_q = 0.0;
    /// Local-hidden-variable bound 2n - 2.
    double s_c = 0.0;
    double d_c = 0.0;

    double ratio() const { return s_q / s_c; }
};

inline double classical_bound(int n) { return 2.0 * n - 2.0; }

/// Alice-Bob state after Eve's optimal attack on Bob's half of a singlet (closed form).
///
/// Diagonal D/2 on |00>, |11>; (1-D)/2 on |01>, |10> with coherence (2D-1)/2 between
/// them. The matrix is symmetric under exchanging |01> and |10>, so it reads the same
/// in either ordering of those two basis states.
inline DensityMatrix rho_ab(double d)
{
    if (!(d >= 0.0 && d <= 0.5)) throw std::domain_error("rho_ab: disturbance outside [0, 1/2]");
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5 * d;
    m(1, 1) = m(2, 2) = 0.5 * (1.0 - d);
    m(1, 2) = m(2, 1) = 0.5 * (2.0 * d - 1.0);
    return DensityMatrix(std::move(m));
}

/// Same state built by running the optimal probe on Bob's qubit and tracing out Eve.
inline DensityMatrix rho_ab_from_attack(double d)
{
    const AttackIsometry v = to_isometry(build_optimal_probe(d));
    return DensityMatrix(v.apply_to_second_qubit(make_singlet().projector()));
}

namespace detail {

inline void require_unit(const Vec3& v, const char* who)
{
    require(std::abs(v.norm() - 1.0) <= 1e-9, std::string(who) + ": direction is not a unit vector");
}

/// T_ij = Tr[rho sigma_i (x) sigma_j], so that E(a, b) = a^T T b.
inline Eigen::Matrix3d correlation_tensor(const DensityMatrix& rho)
{
    require(rho.dim() == 4, "correlation_tensor: expected a two-qubit state");
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = rho.expectation(kron(pauli(i), pauli(j))).real();
    return t;
}

inline double chained_from_tensor(const Eigen::Matrix3d& t, const std::vector<Vec3>& a, const std::vector<Vec3>& b)
{
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += a[k].dot(t * b[k]);
    for (std::size_t k = 0; k + 1 < n; ++k) s += a[k + 1].dot(t * b[k]);
    s -= a[0].dot(t * b[n - 1]);
    return s;
}

inline Vec3 from_angles(double theta, double phi)
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

} // namespace detail

/// E(a, b) = Tr[rho (a.sigma (x) b.sigma)]
inline double correlation(const DensityMatrix& rho, const Vec3& a, const Vec3& b)
{
    detail::require(rho.dim() == 4, "correlation: expected a two-qubit state");
    detail::require_unit(a, "correlation");
    detail::require_unit(b, "correlation");
    const CMatrix op = detail::kron(spin_operator(a.x(), a.y(), a.z()), spin_operator(b.x(), b.y(), b.z()));
    return rho.expectation(op).real();
}

inline double chained_s(const DensityMatrix& rho, const DirectionSet& dirs)
{
    dirs.validate();
    return detail::chained_from_tensor(detail::correlation_tensor(rho), dirs.alice, dirs.bob);
}

/// Standard coplanar CHSH directions (x-z plane, 45 degree steps) that maximize |S| on the singlet.
inline DirectionSet chsh_directions()
{
    const double q = std::numbers::pi / 4.0;
    auto in_plane = [](double angle) { return Vec3(std::sin(angle), 0.0, std::cos(angle)); };
    return {{in_plane(0.0), in_plane(2 * q)}, {in_plane(q), in_plane(3 * q)}};
}

/// Largest distance of any direction from the best-fit plane through the origin.
inline double coplanarity_defect(const DirectionSet& dirs)
{
    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto* side : {&dirs.alice, &dirs.bob})
        for (const Vec3& v : *side) scatter += v * v.transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
    const Vec3 normal = solver.eigenvectors().col(0);
    double worst = 0.0;
    for (const auto* side : {&dirs.alice, &dirs.bob})
        for (const Vec3& v : *side) worst = std::max(worst, std::abs(normal.dot(v)));
    return worst;
}

struct DirectionResult {
    DirectionSet directions;
    /// Signed S at the optimum; |s| is the maximized quantity.
    double s = 0.0;
    int restarts_at_best = 0;
};

/// Multi-start maximization of |S| over unit vectors anywhere on the sphere.
inline DirectionResult optimize_directions(const DensityMatrix& rho, int n, std::uint64_t seed, int restarts = 16)
{
    detail::require(n >= 2, "optimize_directions: need at least two settings");
    detail::require(restarts >= 1, "optimize_directions: need at least one restart");
    const Eigen::Matrix3d t = detail::correlation_tensor(rho);
    const auto count = static_cast<std::size_t>(n);

    auto decode = [count, n](const numerics::Vec& x) {
        DirectionSet d;
        d.alice.reserve(count);
        d.bob.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const auto i = static_cast<Eigen::Index>(2 * k);
            d.alice.push_back(detail::from_angles(x(i), x(i + 1)));
            d.bob.push_back(detail::from_angles(x(i + 2 * n), x(i + 2 * n + 1)));
        }
        return d;
    };

    std::mt19937_64 master(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> values;
    DirectionResult best;
    double best_abs = -1.0;
    numerics::MinimizeOptions opt;
    opt.gradient_tol = 1e-12;
    for (int r = 0; r < restarts; ++r) {
        const double sign = r % 2 == 0 ? 1.0 : -1.0;
        numerics::Vec x0(4 * n);
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = angle(master);
        auto negative = [&](const numerics::Vec& x) {
            const DirectionSet d = decode(x);
            return -sign * detail::chained_from_tensor(t, d.alice, d.bob);
        };
        const auto res = numerics::bfgs_minimize(negative, x0, opt);
        const DirectionSet d = decode(res.x);
        const double s = detail::chained_from_tensor(t, d.alice, d.bob);
        values.push_back(std::abs(s));
        if (std::abs(s) > best_abs) {
            best_abs = std::abs(s);
            best.s = s;
            best.directions = d;
        }
    }
    for (double v : values)
        if (v >= best_abs - 1e-6) ++best.restarts_at_best;
    return best;
}

/// Disturbance at which the optimal chained correlation reaches the classical bound.
///
/// Uses |S(D)| = S_q (1 - 2D), hence D_c = (1 - S_c / S_q) / 2.
inline double critical_disturbance(int n, std::uint64_t seed = 1)
{
    const double s_q = std::abs(optimize_directions(DensityMatrix(make_singlet()), n, seed).s);
    return 0.5 * (1.0 - classical_bound(n) / s_q);
}

inline BellReport bell_report(int n, double d, std::uint64_t seed)
{
    const DirectionResult opt = optimize_directions(DensityMatrix(make_singlet()), n, seed);
    BellReport r;
    r.settings = n;
    r.disturbance = d;
    r.s_q = std::abs(opt.s);
    r.s = std::abs(chained_s(rho_ab(d), opt.directions));
    r.s_c = classical_bound(n);
    r.d_c = 0.5 * (1.0 - r.s_c / r.s_q);
    return r;
}

} // namespace sixstate
