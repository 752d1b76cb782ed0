// Closed-form information quantities for the six-state protocol.
//
// All logarithms are base 2 and 0*log(0) is taken as 0.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sixstate {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// tau[x, y] = x log x + y log y - (x + y) log(x + y)
inline double tau(double x, double y)
{
    if (x < 0.0 || y < 0.0) throw std::domain_error("tau: arguments must be non-negative");
    return xlog2x(x) + xlog2x(y) - xlog2x(x + y);
}

inline double binary_entropy(double p)
{
    if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0, 1]");
    return -xlog2x(p) - xlog2x(1.0 - p);
}

namespace detail {

inline void require_disturbance(double d, double hi, const char* who)
{
    if (!(d >= 0.0 && d <= hi)) throw std::domain_error(std::string(who) + ": disturbance out of range");
}

} // namespace detail

/// Alice-Bob information of a binary symmetric channel with error rate D.
inline double i_ab(double d)
{
    detail::require_disturbance(d, 1.0, "i_ab");
    return 1.0 + xlog2x(d) + xlog2x(1.0 - d);
}

/// Weight |beta_A|^2 of the optimal two-qubit probe: (1 + sqrt(D(2-3D))/(1-D))/2.
inline double two_bit_weight(double d)
{
    detail::require_disturbance(d, 0.5, "two_bit_weight");
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, d * (2.0 - 3.0 * d))) / (1.0 - d));
}

/// Eve's outcome-agreement probability with a one-qubit probe: (1 + D + sqrt(D(2-3D)))/2.
inline double one_bit_weight(double d)
{
    detail::require_disturbance(d, 0.5, "one_bit_weight");
    return 0.5 * (1.0 + d + std::sqrt(std::max(0.0, d * (2.0 - 3.0 * d))));
}

/// Eve's maximal information with the optimal two-qubit probe.
inline double i_ae_two_bit(double d)
{
    const double f = two_bit_weight(d);
    return 1.0 + (1.0 - d) * (xlog2x(f) + xlog2x(1.0 - f));
}

/// Eve's maximal information with a one-qubit probe.
inline double i_ae_one_bit(double d)
{
    const double f = one_bit_weight(d);
    return 1.0 + xlog2x(f) + xlog2x(1.0 - f);
}

/// Joint probability table: rows are Alice's bit (0/1), columns the counterpart's outcomes.
class JointDistribution {
public:
    explicit JointDistribution(Eigen::MatrixXd p) : p_(std::move(p))
    {
        if (p_.rows() != 2 || p_.cols() < 2)
            throw std::invalid_argument("JointDistribution: expected 2 rows and at least 2 columns");
        if (p_.minCoeff() < 0.0) throw std::invalid_argument("JointDistribution: negative entry");
        if (std::abs(p_.sum() - 1.0) > 1e-12)
            throw std::invalid_argument("JointDistribution: entries do not sum to 1");
    }

    /// Normalizes a table of non-negative counts.
    static JointDistribution from_counts(const Eigen::MatrixXd& counts)
    {
        const double total = counts.sum();
        if (!(total > 0.0)) throw std::invalid_argument("JointDistribution: empty count table");
        return JointDistribution(counts / total);
    }

    /// Equiprobable Alice bit with conditional outcome distributions p(k|0), p(k|1).
    static JointDistribution from_conditionals(const std::vector<double>& given0,
                                               const std::vector<double>& given1)
    {
        if (given0.size() != given1.size())
            throw std::invalid_argument("JointDistribution: conditional sizes differ");
        Eigen::MatrixXd p(2, static_cast<Eigen::Index>(given0.size()));
        for (std::size_t k = 0; k < given0.size(); ++k) {
            p(0, static_cast<Eigen::Index>(k)) = 0.5 * given0[k];
            p(1, static_cast<Eigen::Index>(k)) = 0.5 * given1[k];
        }
        return JointDistribution(std::move(p));
    }

    const Eigen::MatrixXd& table() const { return p_; }
    int outcomes() const { return static_cast<int>(p_.cols()); }

private:
    Eigen::MatrixXd p_;
};

/// Shannon mutual information (bits) between the row and column variables.
inline double mutual_information(const JointDistribution& j)
{
    const Eigen::MatrixXd& p = j.table();
    const Eigen::VectorXd rows = p.rowwise().sum();
    const Eigen::RowVectorXd cols = p.colwise().sum();
    double h_rows = 0.0, h_cols = 0.0, h_joint = 0.0;
    for (Eigen::Index r = 0; r < p.rows(); ++r) h_rows -= xlog2x(rows(r));
    for (Eigen::Index c = 0; c < p.cols(); ++c) h_cols -= xlog2x(cols(c));
    for (Eigen::Index r = 0; r < p.rows(); ++r)
        for (Eigen::Index c = 0; c < p.cols(); ++c) h_joint -= xlog2x(p(r, c));
    return std::max(0.0, h_rows + h_cols - h_joint);
}

/// Information of an equiprobable bit sent through outcome distributions p(k|0), p(k|1):
/// 1 + (1/2) sum_k tau[p(k|0), p(k|1)].
inline double information_from_conditionals(const std::vector<double>& given0,
                                            const std::vector<double>& given1)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < given0.size(); ++k) acc += tau(given0[k], given1[k]);
    return 1.0 + 0.5 * acc;
}

} // namespace sixstate
