// Monte Carlo sessions of the prepare-and-measure protocol with an optional
// eavesdropper on the line.
//
// Each round: Alice picks a basis and bit uniformly, Eve (if present) entangles
// her probe with the qubit, Bob measures in a uniformly random basis. Rounds in
// which Alice's and Bob's bases coincide are kept (sifting). There is no channel
// noise; every error is caused by Eve.

#pragma once

#include "sixstate/attack.hpp"
#include "sixstate/infotheory.hpp"
#include "sixstate/qcore.hpp"
#include "sixstate/random.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixstate {

enum class AttackKind { None, OptimalOneBit, OptimalTwoBit };

inline const char* to_string(AttackKind a)
{
    switch (a) {
    case AttackKind::None: return "none";
    case AttackKind::OptimalOneBit: return "opt1";
    case AttackKind::OptimalTwoBit: return "opt2";
    }
    return "?";
}

struct SessionConfig {
    std::int64_t n_signals = 100000;
    /// 4 (Z and X bases) or 6 (Z, X and Y bases).
    int num_states = 6;
    double disturbance = 0.0;
    AttackKind attack = AttackKind::None;
    std::uint64_t seed = 0;

    int num_bases() const { return num_states / 2; }

    void validate() const
    {
        if (n_signals < 1) throw std::invalid_argument("SessionConfig: n_signals must be at least 1");
        if (num_states != 4 && num_states != 6) throw std::invalid_argument("SessionConfig: num_states must be 4 or 6");
        if (!(disturbance >= 0.0 && disturbance <= 0.5))
            throw std::invalid_argument("SessionConfig: disturbance outside [0, 1/2]");
    }
};

struct BasisStats {
    std::int64_t sent = 0;
    std::int64_t sifted = 0;
    std::int64_t errors = 0;

    double qber() const { return sifted ? static_cast<double>(errors) / static_cast<double>(sifted) : 0.0; }
};

struct SessionStats {
    std::int64_t n_signals = 0;
    std::int64_t sifted_count = 0;
    double sift_rate = 0.0;
    double qber = 0.0;
    /// Plug-in estimate from sifted (Alice bit, Bob bit) pairs; NaN below 1000 records.
    double empirical_i_ab = std::numeric_limits<double>::quiet_NaN();
    /// Plug-in estimate from Z-announced (Alice bit, Eve outcome) pairs; NaN without Eve
    /// or below 1000 records.
    double empirical_i_ae = std::numeric_limits<double>::quiet_NaN();
    std::int64_t eve_records = 0;
    std::int64_t errors = 0;
    /// Indexed by Basis (Z, X, Y); Y stays empty in four-state sessions.
    std::array<BasisStats, 3> per_basis{};
};

/// Bitwise equality (NaN fields compare equal to NaN).
inline bool identical(const SessionStats& a, const SessionStats& b)
{
    auto same = [](double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); };
    for (std::size_t k = 0; k < 3; ++k) {
        const auto &pa = a.per_basis[k], &pb = b.per_basis[k];
        if (pa.sent != pb.sent || pa.sifted != pb.sifted || pa.errors != pb.errors) return false;
    }
    return a.n_signals == b.n_signals && a.sifted_count == b.sifted_count && a.errors == b.errors &&
           a.eve_records == b.eve_records && same(a.sift_rate, b.sift_rate) && same(a.qber, b.qber) &&
           same(a.empirical_i_ab, b.empirical_i_ab) && same(a.empirical_i_ae, b.empirical_i_ae);
}

struct OutcomeRecord {
    int alice_bit = 0;
    int outcome = 0;
};

/// Minimum number of records accepted by the plug-in estimator.
inline constexpr std::size_t kMinEstimatorRecords = 1000;

/// Plug-in mutual information of the empirical (Alice bit x outcome) table.
inline double empirical_mutual_information(std::span<const OutcomeRecord> records)
{
    if (records.size() < kMinEstimatorRecords)
        throw std::invalid_argument("empirical_mutual_information: at least 1000 records required");
    int outcomes = 2;
    for (const auto& r : records) {
        if ((r.alice_bit != 0 && r.alice_bit != 1) || r.outcome < 0)
            throw std::invalid_argument("empirical_mutual_information: malformed record");
        outcomes = std::max(outcomes, r.outcome + 1);
    }
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(2, outcomes);
    for (const auto& r : records) counts(r.alice_bit, r.outcome) += 1.0;
    return mutual_information(JointDistribution::from_counts(counts));
}

namespace detail {

inline double plug_in_information(const Eigen::MatrixXd& counts)
{
    if (counts.sum() < static_cast<double>(kMinEstimatorRecords)) return std::numeric_limits<double>::quiet_NaN();
    return mutual_information(JointDistribution::from_counts(counts));
}

/// Joint (Bob bit, Eve outcome) distributions for every (sent state, Bob basis) pair.
class RoundModel {
public:
    explicit RoundModel(const SessionConfig& cfg)
    {
        std::optional<AttackIsometry> iso;
        if (cfg.attack == AttackKind::OptimalTwoBit) iso = to_isometry(build_optimal_probe(cfg.disturbance));
        if (cfg.attack == AttackKind::OptimalOneBit) iso = to_isometry(build_one_bit_probe(cfg.disturbance));
        probe_dim_ = iso ? iso->probe_dim() : 1;

        for (Basis sent : kAllBases)
            for (int bit : {0, 1}) {
                const PureState in = basis_state(sent, bit);
                const CVector joint = iso ? iso->apply(in).amplitudes() : in.amplitudes();
                for (Basis meas : kAllBases) {
                    auto& table = cumulative_[index(sent, bit, meas)];
                    table.clear();
                    double acc = 0.0;
                    for (int b = 0; b < 2; ++b) {
                        const CVector bra = basis_state(meas, b).amplitudes();
                        for (int e = 0; e < probe_dim_; ++e) {
                            complex amp{0.0, 0.0};
                            for (int q = 0; q < 2; ++q) amp += std::conj(bra(q)) * joint(q * probe_dim_ + e);
                            acc += std::norm(amp);
                            table.push_back(acc);
                        }
                    }
                    for (double& v : table) v /= acc;
                }
            }
    }

    int probe_dim() const { return probe_dim_; }

    /// Samples (Bob bit, Eve outcome) from a uniform variate.
    std::pair<int, int> sample(Basis sent, int bit, Basis measured, double u) const
    {
        const auto& table = cumulative_[index(sent, bit, measured)];
        int k = 0;
        while (k + 1 < static_cast<int>(table.size()) && u >= table[static_cast<std::size_t>(k)]) ++k;
        return {k / probe_dim_, k % probe_dim_};
    }

private:
    static std::size_t index(Basis sent, int bit, Basis meas)
    {
        return static_cast<std::size_t>((static_cast<int>(sent) * 2 + bit) * 3 + static_cast<int>(meas));
    }

    int probe_dim_ = 1;
    std::array<std::vector<double>, 18> cumulative_;
};

} // namespace detail

/// Runs one protocol session; fully determined by the config (including its seed).
inline SessionStats run_session(const SessionConfig& cfg)
{
    cfg.validate();
    const detail::RoundModel model(cfg);
    const int bases = cfg.num_bases();
    const bool eve = cfg.attack != AttackKind::None;

    Eigen::MatrixXd ab_counts = Eigen::MatrixXd::Zero(2, 2);
    Eigen::MatrixXd ae_counts = Eigen::MatrixXd::Zero(2, std::max(2, model.probe_dim()));

    SessionStats st;
    st.n_signals = cfg.n_signals;
    for (std::int64_t i = 0; i < cfg.n_signals; ++i) {
        SubstreamRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        const auto sent = static_cast<Basis>(rng.below(bases));
        const int bit = rng.below(2);
        const auto measured = static_cast<Basis>(rng.below(bases));
        const auto [bob_bit, eve_outcome] = model.sample(sent, bit, measured, rng.uniform());

        auto& pb = st.per_basis[static_cast<std::size_t>(sent)];
        ++pb.sent;
        // Eve reads her probe in the computational basis once Z is announced.
        if (eve && sent == Basis::Z) {
            ae_counts(bit, eve_outcome) += 1.0;
            ++st.eve_records;
        }
        if (sent != measured) continue;
        ++pb.sifted;
        ++st.sifted_count;
        ab_counts(bit, bob_bit) += 1.0;
        if (bob_bit != bit) {
            ++pb.errors;
            ++st.errors;
        }
    }

    st.sift_rate = static_cast<double>(st.sifted_count) / static_cast<double>(cfg.n_signals);
    st.qber = st.sifted_count ? static_cast<double>(st.errors) / static_cast<double>(st.sifted_count) : 0.0;
    st.empirical_i_ab = detail::plug_in_information(ab_counts);
    if (eve) st.empirical_i_ae = detail::plug_in_information(ae_counts);
    return st;
}

} // namespace sixstate
