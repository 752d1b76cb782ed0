// Small dense quantum-state toolkit for qubit/probe systems of dimension 2, 4 and 8.
//
// Composite systems use the Kronecker convention with the first factor as the
// most significant index, so |1>|0> is basis vector 2 of the 4-dim space.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixstate {

using complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities (norms, traces, hermiticity).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for eigenvalue positivity and basis completeness.
inline constexpr double kEigenTol = 1e-10;
/// Largest Hilbert-space dimension handled here (qubit plus two-qubit probe).
inline constexpr int kMaxDim = 8;

namespace detail {

inline bool supported_dim(Eigen::Index dim) { return dim == 2 || dim == 4 || dim == 8; }

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument(what);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace detail

class PureState {
public:
    explicit PureState(CVector amplitudes) : amps_(std::move(amplitudes))
    {
        detail::require(detail::supported_dim(amps_.size()),
                        "PureState: dimension must be 2, 4 or 8");
        detail::require(std::abs(amps_.squaredNorm() - 1.0) <= kAlgebraTol,
                        "PureState: amplitudes are not unit norm");
    }

    /// Rescales `v` to unit norm; throws on a zero vector.
    static PureState normalized(CVector v)
    {
        const double n = v.norm();
        detail::require(n > 0.0, "PureState: cannot normalize the zero vector");
        return PureState(v / n);
    }

    /// Computational basis vector |index> of the given dimension.
    static PureState basis_vector(int dim, int index)
    {
        detail::require(index >= 0 && index < dim, "PureState: basis index out of range");
        CVector v = CVector::Zero(dim);
        v(index) = 1.0;
        return PureState(std::move(v));
    }

    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }
    complex operator[](int i) const { return amps_(i); }

    /// <this|other>
    complex inner(const PureState& other) const
    {
        detail::require(dim() == other.dim(), "PureState::inner: dimension mismatch");
        return amps_.dot(other.amps_);
    }

    CMatrix projector() const { return amps_ * amps_.adjoint(); }

private:
    CVector amps_;
};

class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix entries) : rho_(std::move(entries))
    {
        detail::require(rho_.rows() == rho_.cols(), "DensityMatrix: matrix is not square");
        detail::require(detail::supported_dim(rho_.rows()),
                        "DensityMatrix: dimension must be 2, 4 or 8");
        detail::require((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= kAlgebraTol,
                        "DensityMatrix: matrix is not Hermitian");
        detail::require(std::abs(rho_.trace() - complex(1.0)) <= kAlgebraTol,
                        "DensityMatrix: trace is not 1");
        detail::require(min_eigenvalue() >= -kEigenTol,
                        "DensityMatrix: matrix is not positive semidefinite");
    }

    explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

    static DensityMatrix maximally_mixed(int dim)
    {
        return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    int dim() const { return static_cast<int>(rho_.rows()); }
    const CMatrix& matrix() const { return rho_; }
    complex operator()(int i, int j) const { return rho_(i, j); }

    Eigen::VectorXd eigenvalues() const
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    double min_eigenvalue() const { return eigenvalues().minCoeff(); }

    /// Tr[rho * op]
    complex expectation(const CMatrix& op) const { return (rho_ * op).trace(); }

private:
    CMatrix rho_;
};

enum class Basis { Z, X, Y };

inline constexpr std::array<Basis, 3> kAllBases{Basis::Z, Basis::X, Basis::Y};

inline const char* to_string(Basis b)
{
    switch (b) {
    case Basis::Z: return "Z";
    case Basis::X: return "X";
    case Basis::Y: return "Y";
    }
    return "?";
}

/// The two eigenstates of the Pauli operator matching `basis`; bit 0 is the +1 eigenstate.
inline PureState basis_state(Basis basis, int bit)
{
    detail::require(bit == 0 || bit == 1, "basis_state: bit must be 0 or 1");
    const double r = 1.0 / std::sqrt(2.0);
    const double sign = bit == 0 ? 1.0 : -1.0;
    CVector v(2);
    switch (basis) {
    case Basis::Z: v << (bit == 0 ? 1.0 : 0.0), (bit == 0 ? 0.0 : 1.0); break;
    case Basis::X: v << r, sign * r; break;
    case Basis::Y: v << r, complex(0.0, sign * r); break;
    }
    return PureState(std::move(v));
}

struct SignalState {
    Basis basis;
    int bit;
    PureState state;
};

/// The six signal states: +/- eigenstates of Z, X and Y, in that order.
inline std::vector<SignalState> six_states()
{
    std::vector<SignalState> out;
    out.reserve(6);
    for (Basis b : kAllBases)
        for (int bit : {0, 1}) out.push_back({b, bit, basis_state(b, bit)});
    return out;
}

inline PureState tensor(const PureState& a, const PureState& b)
{
    detail::require(a.dim() * b.dim() <= kMaxDim, "tensor: composite dimension exceeds 8");
    CVector v(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    return PureState::normalized(std::move(v));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b)
{
    detail::require(a.dim() * b.dim() <= kMaxDim, "tensor: composite dimension exceeds 8");
    return DensityMatrix(detail::kron(a.matrix(), b.matrix()));
}

namespace detail {

/// Partial trace on a raw matrix: keeps factor `keep` of the product space `dims`.
inline CMatrix partial_trace(const CMatrix& rho, int keep, std::span<const int> dims)
{
    require(!dims.empty(), "partial_trace: no subsystem dimensions given");
    require(keep >= 0 && keep < static_cast<int>(dims.size()), "partial_trace: bad subsystem id");
    const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
    require(total == rho.rows() && rho.rows() == rho.cols(),
            "partial_trace: subsystem dimensions do not match the matrix");

    int stride = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k > keep; --k) stride *= dims[k];
    const int kept = dims[keep];
    const int outer = total / (kept * stride);

    CMatrix out = CMatrix::Zero(kept, kept);
    for (int hi = 0; hi < outer; ++hi)
        for (int lo = 0; lo < stride; ++lo) {
            const int base = hi * kept * stride + lo;
            for (int a = 0; a < kept; ++a)
                for (int b = 0; b < kept; ++b)
                    out(a, b) += rho(base + a * stride, base + b * stride);
        }
    return out;
}

} // namespace detail

inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep, std::span<const int> dims)
{
    return DensityMatrix(detail::partial_trace(rho.matrix(), keep, dims));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep, std::initializer_list<int> dims)
{
    return partial_trace(rho, keep, std::span<const int>(dims.begin(), dims.size()));
}

/// <psi|rho|psi>
inline double fidelity_pure(const PureState& psi, const DensityMatrix& rho)
{
    detail::require(psi.dim() == rho.dim(), "fidelity_pure: dimension mismatch");
    const double f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
    return std::clamp(f, 0.0, 1.0);
}

/// (|01> - |10>)/sqrt(2)
inline PureState make_singlet()
{
    const double r = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(4);
    v(1) = r;
    v(2) = -r;
    return PureState(std::move(v));
}

/// Born-rule outcome probabilities of a complete orthonormal measurement basis.
inline std::vector<double> measure_projective(const DensityMatrix& rho, std::span<const PureState> basis)
{
    detail::require(static_cast<int>(basis.size()) == rho.dim(),
                    "measure_projective: basis is incomplete");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        detail::require(basis[i].dim() == rho.dim(), "measure_projective: dimension mismatch");
        for (std::size_t j = 0; j <= i; ++j) {
            const complex g = basis[i].inner(basis[j]);
            const double target = i == j ? 1.0 : 0.0;
            detail::require(std::abs(g - target) <= kEigenTol,
                            "measure_projective: basis is not orthonormal");
        }
    }
    std::vector<double> probs;
    probs.reserve(basis.size());
    for (const auto& v : basis)
        probs.push_back(std::max(0.0, v.amplitudes().dot(rho.matrix() * v.amplitudes()).real()));
    return probs;
}

// Bloch picture ------------------------------------------------------------

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Pauli matrices sigma_x, sigma_y, sigma_z for axis 0, 1, 2.
inline CMatrix pauli(int axis)
{
    CMatrix s(2, 2);
    switch (axis) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, complex(0, -1), complex(0, 1), 0; break;
    case 2: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: axis must be 0, 1 or 2");
    }
    return s;
}

/// n . sigma for a real 3-vector n.
inline CMatrix spin_operator(double nx, double ny, double nz)
{
    return nx * pauli(0) + ny * pauli(1) + nz * pauli(2);
}

inline BlochVector bloch_vector(const DensityMatrix& rho)
{
    detail::require(rho.dim() == 2, "bloch_vector: requires a single qubit");
    return {rho.expectation(pauli(0)).real(), rho.expectation(pauli(1)).real(),
            rho.expectation(pauli(2)).real()};
}

inline BlochVector bloch_vector(const PureState& psi) { return bloch_vector(DensityMatrix(psi)); }

inline DensityMatrix density_from_bloch(const BlochVector& s)
{
    detail::require(s.norm() <= 1.0 + kAlgebraTol, "density_from_bloch: Bloch vector longer than 1");
    return DensityMatrix(0.5 * (CMatrix::Identity(2, 2) + spin_operator(s.x, s.y, s.z)));
}

/// Pure qubit state with Bloch vector (sin t cos p, sin t sin p, cos t).
inline PureState qubit_from_angles(double theta, double phi)
{
    CVector v(2);
    v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    return PureState::normalized(std::move(v));
}

/// Haar-random pure state of the given dimension.
template <class Urbg>
PureState random_pure_state(int dim, Urbg& rng)
{
    std::normal_distribution<double> normal;
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex(normal(rng), normal(rng));
    return PureState::normalized(std::move(v));
}

} // namespace sixstate
