// Eve's single-qubit probe interactions.
//
// A probe is described by Bob's fidelity F and four probe states A, B, C, D:
//
//   |0>|X>  ->  sqrt(F) |0>|A> + sqrt(1-F) |1>|B>
//   |1>|X>  ->  sqrt(F) |1>|C> + sqrt(1-F) |0>|D>
//
// The interaction is kept as an isometry from Bob's qubit into qubit (x) probe, so
// unitarity of the full transformation is exactly column orthonormality.

#pragma once

#include "sixstate/infotheory.hpp"
#include "sixstate/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace sixstate {

class ProbeSpec {
public:
    ProbeSpec(double fidelity, PureState a, PureState b, PureState c, PureState d)
        : fidelity_(fidelity), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
    {
        detail::require(fidelity_ >= 0.5 && fidelity_ <= 1.0, "ProbeSpec: fidelity outside [1/2, 1]");
        const int p = a_.dim();
        detail::require(p == 2 || p == 4, "ProbeSpec: probe dimension must be 2 or 4");
        detail::require(b_.dim() == p && c_.dim() == p && d_.dim() == p,
                        "ProbeSpec: probe states differ in dimension");
    }

    double fidelity() const { return fidelity_; }
    double disturbance() const { return 1.0 - fidelity_; }
    int probe_dim() const { return a_.dim(); }

    const PureState& a() const { return a_; }
    const PureState& b() const { return b_; }
    const PureState& c() const { return c_; }
    /// Probe state D (paired with the bit flip of |1>); not the disturbance.
    const PureState& d() const { return d_; }

private:
    double fidelity_;
    PureState a_, b_, c_, d_;
};

struct ConstraintResiduals {
    double bd_overlap = 0.0;  ///< |<B|D>|
    double ca_overlap = 0.0;  ///< |Re<C|A> - (2 - 1/F)|
    double cross_terms = 0.0; ///< |<A|B> + <D|C>|
    double isometry = 0.0;    ///< |<A|D> + <B|C>|

    double max() const { return std::max({bd_overlap, ca_overlap, cross_terms, isometry}); }
    bool valid(double tol = kEigenTol) const { return max() < tol; }
};

/// Equal-disturbance constraints for the six signal states plus the unitarity condition.
inline ConstraintResiduals check_constraints(const ProbeSpec& p)
{
    const double f = p.fidelity();
    ConstraintResiduals r;
    r.bd_overlap = std::abs(p.b().inner(p.d()));
    r.ca_overlap = std::abs(p.c().inner(p.a()).real() - (2.0 - 1.0 / f));
    r.cross_terms = std::abs(p.a().inner(p.b()) + p.d().inner(p.c()));
    r.isometry = std::abs(p.a().inner(p.d()) + p.b().inner(p.c()));
    return r;
}

class AttackIsometry {
public:
    /// `v` maps Bob's qubit into qubit (x) probe; rows are ordered qubit-major.
    AttackIsometry(CMatrix v, int probe_dim) : v_(std::move(v)), probe_dim_(probe_dim)
    {
        detail::require(probe_dim_ == 2 || probe_dim_ == 4, "AttackIsometry: probe dimension must be 2 or 4");
        detail::require(v_.rows() == 2 * probe_dim_ && v_.cols() == 2, "AttackIsometry: bad matrix shape");
        detail::require(isometry_defect() <= kEigenTol, "AttackIsometry: columns are not orthonormal");
    }

    const CMatrix& matrix() const { return v_; }
    int probe_dim() const { return probe_dim_; }
    int joint_dim() const { return 2 * probe_dim_; }

    /// max |V^dagger V - 1|
    double isometry_defect() const
    {
        return (v_.adjoint() * v_ - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    }

    PureState apply(const PureState& input) const
    {
        detail::require(input.dim() == 2, "AttackIsometry::apply: input must be a qubit");
        return PureState::normalized(v_ * input.amplitudes());
    }

    /// Bob's qubit after the interaction.
    DensityMatrix bob_state(const PureState& input) const
    {
        const std::array<int, 2> dims{2, probe_dim_};
        return partial_trace(DensityMatrix(apply(input)), 0, dims);
    }

    /// Eve's probe after the interaction.
    DensityMatrix eve_state(const PureState& input) const
    {
        const std::array<int, 2> dims{2, probe_dim_};
        return partial_trace(DensityMatrix(apply(input)), 1, dims);
    }

    /// Kraus operators K_e = (1 (x) <e|) V of the channel seen by Bob.
    std::vector<CMatrix> kraus_operators() const
    {
        std::vector<CMatrix> ks;
        ks.reserve(static_cast<std::size_t>(probe_dim_));
        for (int e = 0; e < probe_dim_; ++e) {
            CMatrix k(2, 2);
            for (int bob = 0; bob < 2; ++bob) k.row(bob) = v_.row(bob * probe_dim_ + e);
            ks.push_back(std::move(k));
        }
        return ks;
    }

    /// Applies the attack channel to the second qubit of a two-qubit state (Alice, Bob).
    CMatrix apply_to_second_qubit(const CMatrix& rho_ab) const
    {
        detail::require(rho_ab.rows() == 4 && rho_ab.cols() == 4, "apply_to_second_qubit: expected 4x4");
        CMatrix out = CMatrix::Zero(4, 4);
        const CMatrix id = CMatrix::Identity(2, 2);
        for (const CMatrix& k : kraus_operators()) {
            const CMatrix big = detail::kron(id, k);
            out += big * rho_ab * big.adjoint();
        }
        return out;
    }

private:
    CMatrix v_;
    int probe_dim_;
};

namespace detail {

inline CVector unit(int dim, int index)
{
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

inline void require_half_range(double d, const char* who)
{
    if (!(d >= 0.0 && d <= 0.5)) throw std::domain_error(std::string(who) + ": disturbance outside [0, 1/2]");
}

} // namespace detail

/// Rotation angle of the optimal two-qubit probe: sin(2 theta) = (1-2D)/(1-D).
inline double optimal_probe_angle(double d)
{
    detail::require_half_range(d, "optimal_probe_angle");
    const double s = std::clamp((1.0 - 2.0 * d) / (1.0 - d), 0.0, 1.0);
    return 0.5 * std::asin(s);
}

/// Optimal two-qubit probe: B = |00>, D = |11>,
/// A = cos t |10> + sin t |01>, C = sin t |10> + cos t |01>.
inline ProbeSpec build_optimal_probe(double d)
{
    const double t = optimal_probe_angle(d);
    // Kronecker index: |00> = 0, |01> = 1, |10> = 2, |11> = 3.
    CVector a = CVector::Zero(4), c = CVector::Zero(4);
    a(2) = std::cos(t);
    a(1) = std::sin(t);
    c(2) = std::sin(t);
    c(1) = std::cos(t);
    return ProbeSpec(1.0 - d, PureState::normalized(a), PureState(detail::unit(4, 0)),
                     PureState::normalized(c), PureState(detail::unit(4, 3)));
}

/// Angle phi of the one-qubit probe A = (cos phi, sin phi), C = -(sin phi, cos phi).
///
/// The constraints force sin(2 phi) = -(1-2D)/(1-D); the branch cos(2 phi) >= 0
/// is the one that maximizes Eve's information.
inline double one_bit_probe_angle(double d)
{
    detail::require_half_range(d, "one_bit_probe_angle");
    const double s = std::clamp((1.0 - 2.0 * d) / (1.0 - d), 0.0, 1.0);
    return -0.5 * std::asin(s);
}

/// One-qubit probe with B = |0>, D = |1>, real A and C.
inline ProbeSpec build_one_bit_probe_at(double d, double phi)
{
    detail::require_half_range(d, "build_one_bit_probe");
    CVector a(2), c(2);
    a << std::cos(phi), std::sin(phi);
    c << -std::sin(phi), -std::cos(phi);
    return ProbeSpec(1.0 - d, PureState::normalized(a), PureState(detail::unit(2, 0)),
                     PureState::normalized(c), PureState(detail::unit(2, 1)));
}

inline ProbeSpec build_one_bit_probe(double d) { return build_one_bit_probe_at(d, one_bit_probe_angle(d)); }

/// Isometry of a probe; throws if the probe violates the constraints.
inline AttackIsometry to_isometry(const ProbeSpec& p)
{
    detail::require(check_constraints(p).valid(), "to_isometry: probe violates the attack constraints");
    const int dim = p.probe_dim();
    const double sf = std::sqrt(p.fidelity());
    const double sd = std::sqrt(1.0 - p.fidelity());
    CMatrix v = CMatrix::Zero(2 * dim, 2);
    v.col(0).segment(0, dim) = sf * p.a().amplitudes();
    v.col(0).segment(dim, dim) = sd * p.b().amplitudes();
    v.col(1).segment(dim, dim) = sf * p.c().amplitudes();
    v.col(1).segment(0, dim) = sd * p.d().amplitudes();
    return AttackIsometry(std::move(v), dim);
}

inline PureState apply(const AttackIsometry& v, const PureState& input) { return v.apply(input); }

/// Largest deviation of Bob's fidelity from 1 - D over the given qubit inputs.
inline double universality_defect(const ProbeSpec& p, std::span<const PureState> inputs)
{
    const AttackIsometry v = to_isometry(p);
    double worst = 0.0;
    for (const PureState& in : inputs)
        worst = std::max(worst, std::abs(fidelity_pure(in, v.bob_state(in)) - p.fidelity()));
    return worst;
}

/// Eve's probe states conditioned on Alice's bit 0 and 1 in `basis`.
inline std::pair<DensityMatrix, DensityMatrix> eve_conditional_states(const ProbeSpec& p, Basis basis)
{
    const AttackIsometry v = to_isometry(p);
    return {v.eve_state(basis_state(basis, 0)), v.eve_state(basis_state(basis, 1))};
}

/// Outcome distributions p(k|bit) when Eve reads her probe in its computational basis.
inline std::pair<std::vector<double>, std::vector<double>> computational_conditionals(const ProbeSpec& p,
                                                                                        Basis basis)
{
    const auto [rho0, rho1] = eve_conditional_states(p, basis);
    std::vector<double> g0(static_cast<std::size_t>(p.probe_dim())), g1(g0.size());
    for (int k = 0; k < p.probe_dim(); ++k) {
        g0[static_cast<std::size_t>(k)] = std::max(0.0, rho0(k, k).real());
        g1[static_cast<std::size_t>(k)] = std::max(0.0, rho1(k, k).real());
    }
    return {std::move(g0), std::move(g1)};
}

/// Eve's information from a computational-basis readout of her probe.
inline double computational_information(const ProbeSpec& p, Basis basis)
{
    const auto [g0, g1] = computational_conditionals(p, basis);
    return information_from_conditionals(g0, g1);
}

} // namespace sixstate
