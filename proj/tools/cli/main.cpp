#include <iostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "commands.hpp"

namespace {

using qabsorb::cli::RunConfig;

void add_run_flags(CLI::App* app, RunConfig& cfg, std::string& formulation, double& t_end) {
    app->add_option("--wavepacket", cfg.wavepacket,
                    "exp:c=<rate> | gauss:center=<t>,width=<t> | file:<csv>");
    app->add_option("--phi0", cfg.phi0, "absorber phase offset [rad]");
    app->add_option("--T", cfg.truncation, "truncation time, or frac:<x> of t-end");
    app->add_option("--t-end", t_end, "end time (default 10/c, or the packet horizon)");
    app->add_option("--grid", cfg.grid_points, "reporting grid points");
    app->add_option("--rel-tol", cfg.rel_tol, "integrator relative tolerance");
    app->add_option("--abs-tol", cfg.abs_tol, "integrator absolute tolerance");
    app->add_option("--formulation", formulation, "amplitudes | moments | oracle | all");
    app->add_option("--out", cfg.out, "output file (directory for design)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupling design and absorption simulation for single-photon wavepackets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string formulation = "moments";
    double t_end = 0.0;
    std::string t_values;

    auto* design = app.add_subcommand("design", "tabulate lambda, gamma and gamma_T");
    auto* simulate = app.add_subcommand("simulate", "integrate one or all formulations");
    auto* sweep = app.add_subcommand("sweep", "final n2 over a list of truncation times");
    auto* figure = app.add_subcommand("figure", "n2(t) for the three reference truncations");
    auto* verify = app.add_subcommand("verify", "run the consistency checks");
    for (auto* sub : {design, simulate, sweep}) add_run_flags(sub, cfg, formulation, t_end);
    sweep->add_option("--T-values", t_values, "comma-separated list of times or frac:<x>");
    sweep->add_option("--jobs", cfg.jobs, "worker threads");
    for (auto* sub : {figure, verify}) {
        sub->add_option("--rel-tol", cfg.rel_tol, "integrator relative tolerance");
        sub->add_option("--abs-tol", cfg.abs_tol, "integrator absolute tolerance");
    }
    figure->add_option("--grid", cfg.grid_points, "reporting grid points");
    figure->add_option("--out", cfg.out, "CSV output file (default stdout)");
    verify->add_flag("--quick", cfg.quick, "reduced check set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qabsorb::cli::kUsage;
    }

    try {
        cfg.formulation = qabsorb::cli::parse_formulation(formulation);
    } catch (const qabsorb::cli::UsageError& e) {
        std::cerr << "qabsorb: " << e.what() << '\n';
        return qabsorb::cli::kUsage;
    }
    if (t_end != 0.0) cfg.t_end = t_end;

    using namespace qabsorb::cli;
    if (*design) return cmd_design(cfg, std::cout, std::cerr);
    if (*simulate) return cmd_simulate(cfg, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(cfg, split_list(t_values), std::cout, std::cerr);
    if (*figure) return cmd_figure(cfg, std::cout, std::cerr);
    return cmd_verify(cfg, std::cout, std::cerr);
}
