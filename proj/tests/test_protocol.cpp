#include "sixstate/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace sixstate;

namespace {

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

SessionConfig config(int states, AttackKind attack, double d, std::uint64_t seed, std::int64_t n = 100000)
{
    SessionConfig c;
    c.n_signals = n;
    c.num_states = states;
    c.attack = attack;
    c.disturbance = d;
    c.seed = seed;
    return c;
}

} // namespace

TEST(Philox, KnownAnswerVectors)
{
    using C = Philox4x32::counter_type;
    EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
              (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(SubstreamRng, UniformRangeAndIndependence)
{
    SubstreamRng a(7, 0), b(7, 1), again(7, 0);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
        EXPECT_EQ(x, again.uniform());
        differs |= x != b.uniform();
    }
    EXPECT_TRUE(differs);
    SubstreamRng c(7, 3);
    for (int i = 0; i < 1000; ++i) {
        const int k = c.below(3);
        EXPECT_GE(k, 0);
        EXPECT_LT(k, 3);
    }
}

TEST(SessionConfig, Validation)
{
    EXPECT_THROW(run_session(config(5, AttackKind::None, 0.0, 1)), std::invalid_argument);
    EXPECT_THROW(run_session(config(6, AttackKind::None, 0.0, 1, 0)), std::invalid_argument);
    EXPECT_THROW(run_session(config(6, AttackKind::OptimalTwoBit, 0.7, 1)), std::invalid_argument);
}

TEST(RunSession, NoEavesdropperSixStates)
{
    const SessionStats st = run_session(config(6, AttackKind::None, 0.3, 7));
    EXPECT_EQ(st.errors, 0);
    EXPECT_EQ(st.qber, 0.0);
    EXPECT_NEAR(st.sift_rate, 1.0 / 3.0, 5.0 * binomial_sigma(1.0 / 3.0, 1e5));
    EXPECT_EQ(st.eve_records, 0);
    EXPECT_TRUE(std::isnan(st.empirical_i_ae));
    EXPECT_NEAR(st.empirical_i_ab, 1.0, 1e-3);
}

TEST(RunSession, NoEavesdropperFourStates)
{
    const SessionStats st = run_session(config(4, AttackKind::None, 0.0, 7));
    EXPECT_EQ(st.qber, 0.0);
    EXPECT_NEAR(st.sift_rate, 0.5, 5.0 * binomial_sigma(0.5, 1e5));
    EXPECT_EQ(st.per_basis[2].sent, 0);
}

TEST(RunSession, OptimalAttackStatistics)
{
    const double d = 0.1;
    const SessionStats st = run_session(config(6, AttackKind::OptimalTwoBit, d, 11));
    const double n = static_cast<double>(st.sifted_count);
    EXPECT_NEAR(st.qber, d, 5.0 * binomial_sigma(d, n));
    for (const BasisStats& b : st.per_basis) EXPECT_NEAR(b.qber(), d, 5.0 * binomial_sigma(d, static_cast<double>(b.sifted)));
    EXPECT_NEAR(st.empirical_i_ab, i_ab(d), 0.01);
    EXPECT_NEAR(st.empirical_i_ae, i_ae_two_bit(d), 0.01);
}

TEST(RunSession, OneBitAttackStatistics)
{
    const double d = 0.2;
    const SessionStats st = run_session(config(6, AttackKind::OptimalOneBit, d, 3));
    EXPECT_NEAR(st.qber, d, 5.0 * binomial_sigma(d, static_cast<double>(st.sifted_count)));
    EXPECT_NEAR(st.empirical_i_ae, i_ae_one_bit(d), 0.01);
}

TEST(RunSession, FourStateAttackKeepsDisturbanceInZAndX)
{
    const double d = 0.15;
    const SessionStats st = run_session(config(4, AttackKind::OptimalTwoBit, d, 5));
    EXPECT_NEAR(st.qber, d, 5.0 * binomial_sigma(d, static_cast<double>(st.sifted_count)));
}

TEST(RunSession, Deterministic)
{
    const auto cfg = config(6, AttackKind::OptimalTwoBit, 0.1, 99, 20000);
    EXPECT_TRUE(identical(run_session(cfg), run_session(cfg)));
    auto other = cfg;
    other.seed = 100;
    EXPECT_FALSE(identical(run_session(cfg), run_session(other)));
}

TEST(RunSession, SmallRunsReportNaNInformation)
{
    const SessionStats st = run_session(config(6, AttackKind::OptimalTwoBit, 0.1, 1, 500));
    EXPECT_TRUE(std::isnan(st.empirical_i_ab));
    EXPECT_TRUE(std::isnan(st.empirical_i_ae));
    EXPECT_LE(st.sifted_count, st.n_signals);
}

TEST(EmpiricalInformation, EdgeCases)
{
    std::vector<OutcomeRecord> few(999, {0, 0});
    EXPECT_THROW(empirical_mutual_information(few), std::invalid_argument);

    std::vector<OutcomeRecord> agree;
    for (int i = 0; i < 2000; ++i) agree.push_back({i % 2, i % 2});
    EXPECT_NEAR(empirical_mutual_information(agree), 1.0, 1e-12);

    std::vector<OutcomeRecord> malformed(1000, {2, 0});
    EXPECT_THROW(empirical_mutual_information(malformed), std::invalid_argument);
}

TEST(EmpiricalInformation, IndependentRecordsNearZero)
{
    std::mt19937_64 rng(17);
    std::bernoulli_distribution coin(0.5);
    const int n = 100000;
    std::vector<OutcomeRecord> records;
    for (int i = 0; i < n; ++i) records.push_back({coin(rng) ? 1 : 0, coin(rng) ? 1 : 0});
    const double bias = 1.0 / (2.0 * n * std::log(2.0));
    EXPECT_LT(empirical_mutual_information(records), 20.0 * bias);
}

TEST(EmpiricalInformation, BinarySymmetricChannel)
{
    std::mt19937_64 rng(23);
    std::bernoulli_distribution coin(0.5), flip(0.25);
    std::vector<OutcomeRecord> records;
    for (int i = 0; i < 100000; ++i) {
        const int a = coin(rng) ? 1 : 0;
        records.push_back({a, flip(rng) ? 1 - a : a});
    }
    EXPECT_NEAR(empirical_mutual_information(records), i_ab(0.25), 0.01);
}
