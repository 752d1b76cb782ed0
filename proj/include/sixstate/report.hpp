// Text reports behind the command-line tool: key=value lines, one per quantity.

#pragma once

#include "sixstate/attack.hpp"
#include "sixstate/bell.hpp"
#include "sixstate/infotheory.hpp"
#include "sixstate/optimizer.hpp"
#include "sixstate/protocol.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace sixstate::report {

class KeyValueWriter {
public:
    void fixed(const std::string& key, double v) { line(key, v, "%.6f"); }
    void sci(const std::string& key, double v) { line(key, v, "%.3e"); }
    void integer(const std::string& key, std::int64_t v) { os_ << key << '=' << v << '\n'; }
    void text(const std::string& key, const std::string& v) { os_ << key << '=' << v << '\n'; }

    std::string str() const { return os_.str(); }

private:
    void line(const std::string& key, double v, const char* fmt)
    {
        if (std::isnan(v)) {
            os_ << key << "=nan\n";
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, fmt, v);
        os_ << key << '=' << buf << '\n';
    }

    std::ostringstream os_;
};

/// Value where the six-state curves I_AB and I_AE cross.
inline double six_state_crossing() { return find_intersection(i_ab, i_ae_two_bit, 0.1, 0.2); }

inline std::string intersect(std::uint64_t seed = 1)
{
    KeyValueWriter w;
    w.fixed("six_state_dstar", six_state_crossing());
    w.fixed("one_bit_dstar", find_intersection(i_ab, i_ae_one_bit, 0.1, 0.3));
    w.fixed("bb84_reference_dstar", 0.5 * (1.0 - 1.0 / std::sqrt(2.0)));
    w.fixed("chsh_dc", critical_disturbance(2, seed));
    return w.str();
}

inline std::string simulate(const SessionConfig& cfg)
{
    const SessionStats st = run_session(cfg);
    KeyValueWriter w;
    w.integer("signals", st.n_signals);
    w.integer("states", cfg.num_states);
    w.text("attack", to_string(cfg.attack));
    if (cfg.attack != AttackKind::None) w.fixed("d", cfg.disturbance);
    w.integer("seed", static_cast<std::int64_t>(cfg.seed));
    w.integer("sifted", st.sifted_count);
    w.fixed("sift_rate", st.sift_rate);
    w.integer("errors", st.errors);
    w.fixed("qber", st.qber);
    for (Basis b : kAllBases) {
        if (static_cast<int>(b) >= cfg.num_bases()) break;
        const BasisStats& pb = st.per_basis[static_cast<std::size_t>(b)];
        const std::string prefix = std::string("basis_") + to_string(b) + "_";
        w.integer(prefix + "sifted", pb.sifted);
        w.fixed(prefix + "qber", pb.qber());
    }
    w.fixed("empirical_i_ab", st.empirical_i_ab);
    w.integer("eve_records", st.eve_records);
    w.fixed("empirical_i_ae", st.empirical_i_ae);
    return w.str();
}

inline std::string bell(int n, double d, std::uint64_t seed)
{
    const BellReport r = bell_report(n, d, seed);
    KeyValueWriter w;
    w.integer("settings", n);
    w.fixed("d", d);
    w.fixed("s_q", r.s_q);
    w.fixed("s", r.s);
    w.fixed("s_c", r.s_c);
    w.fixed("ratio", r.ratio());
    w.fixed("d_c", r.d_c);
    return w.str();
}

inline std::string optimize(double d, ConstraintMode mode, std::uint64_t seed)
{
    const OptimizationResult r = maximize_iae(d, {mode, 1e-10}, seed);
    KeyValueWriter w;
    w.fixed("d", d);
    w.text("mode", mode == ConstraintMode::SixState ? "six_state" : "bb84");
    w.fixed("best_value", r.best_value);
    if (mode == ConstraintMode::SixState) {
        w.fixed("analytic_i_ae", i_ae_two_bit(d));
        const auto a = probe_coefficients(r.probe->a());
        const auto c = probe_coefficients(r.probe->c());
        w.sci("alpha_delta_weight",
              std::max({std::norm(a.alpha), std::norm(a.delta), std::norm(c.alpha), std::norm(c.delta)}));
        w.fixed("beta_a_sq_plus_beta_c_sq", std::norm(a.beta) + std::norm(c.beta));
    }
    double worst = 0.0;
    for (double v : r.residuals) worst = std::max(worst, std::abs(v));
    w.sci("max_residual", worst);
    w.integer("restarts", r.restarts);
    w.integer("converged_restarts", r.converged_restarts);
    w.integer("restarts_at_best", r.restarts_at_best);
    return w.str();
}

inline std::string attack_verify(double d, std::uint64_t seed, int inputs = 1000)
{
    const ProbeSpec two = build_optimal_probe(d);
    const ProbeSpec one = build_one_bit_probe(d);
    KeyValueWriter w;
    w.fixed("d", d);
    for (const auto& [name, p] : {std::pair{"opt2", &two}, std::pair{"opt1", &one}}) {
        const ConstraintResiduals r = check_constraints(*p);
        w.sci(std::string(name) + "_residual_bd", r.bd_overlap);
        w.sci(std::string(name) + "_residual_ca", r.ca_overlap);
        w.sci(std::string(name) + "_residual_cross", r.cross_terms);
        w.sci(std::string(name) + "_residual_isometry", r.isometry);
    }
    std::mt19937_64 rng(seed);
    std::vector<PureState> states;
    states.reserve(static_cast<std::size_t>(inputs));
    for (int i = 0; i < inputs; ++i) states.push_back(random_pure_state(2, rng));
    w.integer("universality_inputs", inputs);
    w.sci("universality_max_deviation", universality_defect(two, states));
    w.fixed("analytic_i_ae_two_bit", i_ae_two_bit(d));
    w.fixed("analytic_i_ae_one_bit", i_ae_one_bit(d));
    w.fixed("opt1_computational_i_ae", computational_information(one, Basis::Z));
    for (Basis b : kAllBases)
        w.fixed(std::string("opt2_measured_i_ae_") + to_string(b), optimize_eve_measurement(two, b, seed).information);
    return w.str();
}

} // namespace sixstate::report
