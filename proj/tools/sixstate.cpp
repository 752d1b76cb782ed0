// sixstate: command-line front end for the curves, attack, protocol and Bell analyses.

#include "sixstate/curves.hpp"
#include "sixstate/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

struct Flags {
    double d = 0.1;
    double d_min = 0.0;
    double d_max = 0.5;
    int steps = 11;
    int bases = 6;
    std::string attack = "none";
    std::int64_t signals = 100000;
    std::uint64_t seed = 1;
    int settings = 2;
    std::string out;
};

sixstate::AttackKind parse_attack(const std::string& s)
{
    if (s == "opt1") return sixstate::AttackKind::OptimalOneBit;
    if (s == "opt2") return sixstate::AttackKind::OptimalTwoBit;
    return sixstate::AttackKind::None;
}

void write_curves(const Flags& f)
{
    const sixstate::CurveTable t = sixstate::build_curve_table(f.d_min, f.d_max, f.steps, f.seed);
    if (f.out.empty()) {
        sixstate::write_curve_csv(std::cout, t);
        return;
    }
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + f.out + "' for writing");
    sixstate::write_curve_csv(os, t);
    os.flush();
    if (!os) throw std::runtime_error("failed writing '" + f.out + "'");
    std::cout << "rows=" << t.rows.size() << "\nout=" << f.out << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Six-state quantum key distribution: eavesdropping and Bell analysis"};
    app.require_subcommand(1);
    Flags f;

    auto add_d = [&f](CLI::App* c) { c->add_option("--d", f.d, "disturbance D in [0, 0.5]")->capture_default_str(); };
    auto add_seed = [&f](CLI::App* c) { c->add_option("--seed", f.seed, "random seed")->capture_default_str(); };

    auto* curves = app.add_subcommand("curves", "write the information curves as CSV");
    curves->add_option("--d-min", f.d_min, "first grid point")->capture_default_str();
    curves->add_option("--d-max", f.d_max, "last grid point")->capture_default_str();
    curves->add_option("--steps", f.steps, "number of grid points (>= 2)")->capture_default_str();
    curves->add_option("--out", f.out, "CSV path (stdout if omitted)");
    add_seed(curves);

    auto* intersect = app.add_subcommand("intersect", "report the crossing disturbances");
    add_seed(intersect);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the prepare-and-measure protocol");
    add_d(simulate);
    simulate->add_option("--bases", f.bases, "number of signal states")
        ->check(CLI::IsMember({4, 6}))
        ->capture_default_str();
    simulate->add_option("--attack", f.attack, "eavesdropping attack")
        ->check(CLI::IsMember({"none", "opt1", "opt2"}))
        ->capture_default_str();
    simulate->add_option("--signals", f.signals, "number of signals")->check(CLI::PositiveNumber)->capture_default_str();
    add_seed(simulate);

    auto* bell = app.add_subcommand("bell", "chained Bell correlations of the attacked singlet");
    bell->add_option("--settings", f.settings, "settings per side (>= 2)")->capture_default_str();
    add_d(bell);
    add_seed(bell);

    auto* optimize = app.add_subcommand("optimize", "numerically maximize Eve's information at one disturbance");
    add_d(optimize);
    optimize->add_option("--bases", f.bases, "constraint set: 6 (six-state) or 4 (BB84)")
        ->check(CLI::IsMember({4, 6}))
        ->capture_default_str();
    add_seed(optimize);

    auto* verify = app.add_subcommand("attack-verify", "check the attack constraints and universality");
    add_d(verify);
    add_seed(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    CLI::App* used = app.get_subcommands().front();
    try {
        if (used == curves) {
            write_curves(f);
        } else if (used == intersect) {
            std::cout << sixstate::report::intersect(f.seed);
        } else if (used == simulate) {
            sixstate::SessionConfig cfg;
            cfg.n_signals = f.signals;
            cfg.num_states = f.bases;
            cfg.disturbance = f.d;
            cfg.attack = parse_attack(f.attack);
            cfg.seed = f.seed;
            std::cout << sixstate::report::simulate(cfg);
        } else if (used == bell) {
            std::cout << sixstate::report::bell(f.settings, f.d, f.seed);
        } else if (used == optimize) {
            const auto mode = f.bases == 6 ? sixstate::ConstraintMode::SixState : sixstate::ConstraintMode::BB84;
            std::cout << sixstate::report::optimize(f.d, mode, f.seed);
        } else if (used == verify) {
            std::cout << sixstate::report::attack_verify(f.d, f.seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n\n" << used->help();
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n\n" << used->help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
