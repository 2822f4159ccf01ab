#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "qabsorb/coupling.hpp"
#include "qabsorb/csv.hpp"
#include "qabsorb/error.hpp"
#include "qabsorb/oracle.hpp"
#include "qabsorb/slh.hpp"

namespace qabsorb::cli {

namespace {

std::string fmt(double v, int digits = 6) { return csv::format_double(v, digits); }

// key=value pairs separated by commas.
std::vector<std::pair<std::string, double>> parse_params(const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& item : split_list(text)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
        try {
            out.emplace_back(item.substr(0, eq), csv::parse_double(item.substr(eq + 1)));
        } catch (const InvalidParameter&) {
            throw UsageError("bad number in '" + item + "'");
        }
    }
    return out;
}

double take(const std::vector<std::pair<std::string, double>>& params, const std::string& key,
            const std::string& spec) {
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    throw UsageError("wavepacket '" + spec + "' is missing '" + key + "'");
}

void require_known(const std::vector<std::pair<std::string, double>>& params,
                   std::initializer_list<const char*> known, const std::string& spec) {
    for (const auto& [k, v] : params) {
        if (std::none_of(known.begin(), known.end(), [&](const char* n) { return k == n; })) {
            throw UsageError("wavepacket '" + spec + "': unknown parameter '" + k + "'");
        }
    }
}

RunOptions seeded(const RunOptions& options, const Wavepacket& packet, double eps) {
    RunOptions o = options;
    o.tol.abs = options.tol.abs * std::sqrt(packet.head_energy(eps));
    return o;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

int report_numeric(std::ostream& err, const std::string& what, double t) {
    err << "qabsorb: numeric failure at t=" << fmt(t, 17) << ": " << what << '\n';
    return kNumeric;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "qabsorb: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidParameter& e) {
        err << "qabsorb: invalid parameter: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "qabsorb: " << e.what() << '\n';
        return kUsage;
    } catch (const DivergentCoupling& e) {
        return report_numeric(err, e.what(), e.time());
    } catch (const IntegrationFailure& e) {
        return report_numeric(err, e.what(), e.time());
    }
}

void write_or_print(const std::filesystem::path& path, const std::string& content,
                    std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        csv::write_atomic(path, content);
    }
}

std::string coupling_table(const CouplingSchedule& g, const std::vector<double>& grid) {
    std::string s = "t,re,im,abs\n";
    for (double t : grid) {
        const auto v = g(t);
        s += fmt(t, 17);
        if (v.divergent()) {
            s += ",nan,nan,inf\n";
        } else {
            s += ',' + fmt((*v).real(), 17) + ',' + fmt((*v).imag(), 17) + ',' +
                 fmt(std::abs(*v), 17) + '\n';
        }
    }
    return s;
}

double max_abs_coupling(const CouplingSchedule& g, double t_end, std::size_t points) {
    double m = 0.0;
    for (double t : uniform_grid(0.0, t_end, points)) m = std::max(m, std::abs(g(t).value()));
    if (auto T = g.truncation_time()) m = std::max(m, std::abs(g(*T).value()));
    return m;
}

} // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        std::string item = text.substr(start, end - start);
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Wavepacket parse_wavepacket(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw UsageError("wavepacket must be kind:params, got '" + spec + "'");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "file") {
        if (rest.empty()) throw UsageError("file: needs a path");
        return load_tabulated_csv(rest);
    }
    const auto params = parse_params(rest);
    if (kind == "exp") {
        require_known(params, {"c"}, spec);
        return make_exponential(take(params, "c", spec));
    }
    if (kind == "gauss") {
        require_known(params, {"center", "width"}, spec);
        return make_gaussian(take(params, "center", spec), take(params, "width", spec));
    }
    throw UsageError("unknown wavepacket kind '" + kind + "'");
}

Formulation parse_formulation(const std::string& name) {
    if (name == "amplitudes") return Formulation::Amplitudes;
    if (name == "moments") return Formulation::Moments;
    if (name == "oracle") return Formulation::Oracle;
    if (name == "all") return Formulation::All;
    throw UsageError("unknown formulation '" + name + "'");
}

double parse_time_or_fraction(const std::string& text, double t_end) {
    try {
        if (text.rfind("frac:", 0) == 0) return csv::parse_double(text.substr(5)) * t_end;
        return csv::parse_double(text);
    } catch (const InvalidParameter&) {
        throw UsageError("expected a time or frac:<x>, got '" + text + "'");
    }
}

double default_t_end(const Wavepacket& packet) {
    if (packet.kind() == WavepacketKind::ExponentialDecay) return 10.0 / packet.rate();
    return packet.horizon();
}

ResolvedRun resolve(const RunConfig& cfg) {
    auto packet = parse_wavepacket(cfg.wavepacket);
    const double t_end = cfg.t_end ? *cfg.t_end : default_t_end(packet);
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw UsageError("t-end must be positive");
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || !(cfg.abs_tol > 0.0 && cfg.abs_tol < 1.0)) {
        throw UsageError("tolerances must lie in (0, 1)");
    }
    if (cfg.grid_points < 2) throw UsageError("grid needs at least 2 points");
    if (!std::isfinite(cfg.phi0)) throw UsageError("phi0 must be finite");
    std::optional<double> truncation;
    if (!cfg.truncation.empty()) {
        const double T = parse_time_or_fraction(cfg.truncation, t_end);
        if (!(T > 0.0 && T < t_end)) throw UsageError("T must satisfy 0 < T < t-end");
        truncation = T;
    }
    RunOptions options;
    options.tol.rel = cfg.rel_tol;
    options.tol.abs = cfg.abs_tol;
    options.grid_points = cfg.grid_points;
    return {std::move(packet), cfg.phi0, t_end, truncation, options};
}

FormulationResult run_formulation(const ResolvedRun& run, Formulation formulation) {
    const auto& w = run.packet;
    const auto lambda = generator_coupling(w);
    const auto gamma = run.truncation ? truncated_coupling(w, run.phi0, *run.truncation)
                                      : absorber_coupling(w, run.phi0);
    const double t0 = run.truncation ? 0.0 : seed_time(w);
    const RunOptions opts = run.truncation ? run.options : seeded(run.options, w, t0);

    switch (formulation) {
    case Formulation::Amplitudes: {
        auto traj = run.truncation ? integrate_amplitudes(lambda, gamma, 0.0, run.t_end, opts)
                                   : exact_absorption_run(w, run.phi0, run.t_end, run.options);
        auto n2 = traj.real("n2");
        return {std::move(traj), std::move(n2)};
    }
    case Formulation::Moments: {
        const MomentState start =
            run.truncation ? MomentState{} : exact_absorber_moments(w, run.phi0, t0);
        auto traj = integrate_moments(lambda, gamma, start, t0, run.t_end, opts);
        auto n2 = traj.real("n2");
        return {std::move(traj), std::move(n2)};
    }
    case Formulation::Oracle: {
        const AmplitudeState start =
            run.truncation ? AmplitudeState{} : exact_absorber_amplitudes(w, run.phi0, t0);
        const auto result = master_equation_evolve(generator_absorber_cascade(lambda, gamma),
                                                   DensityMatrix::from_amplitudes(start), t0,
                                                   run.t_end, opts);
        auto n2 = result.expectation_series(qubit::on_absorber(qubit::number()));
        auto traj = result.to_trajectory();
        traj.add_column("n2", n2);
        return {std::move(traj), std::move(n2)};
    }
    case Formulation::All:
        break;
    }
    throw InvalidParameter("run_formulation: pick a single formulation");
}

int cmd_design(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto run = resolve(cfg);
        const auto& w = run.packet;
        const auto grid = uniform_grid(0.0, run.t_end, run.options.grid_points);
        const auto dir = cfg.out.empty() ? std::filesystem::path(".") : cfg.out;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (!std::filesystem::is_directory(dir)) {
            throw IoError("cannot create output directory '" + dir.string() + "'");
        }

        const auto lambda = generator_coupling(w);
        const auto gamma = absorber_coupling(w, run.phi0);
        csv::write_atomic(dir / "lambda.csv", coupling_table(lambda, grid));
        csv::write_atomic(dir / "gamma.csv", coupling_table(gamma, grid));

        // Zero-dynamics recovery of gamma against the direct formula, where
        // head is not tiny.
        const auto zd = zero_dynamics_solve(w, run.phi0, grid);
        double recovery = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (w.head_energy(grid[i]) <= 1e-6) continue;
            const Complex direct = gamma(grid[i]).value();
            recovery = std::max(recovery, std::abs(zd.complex("gamma")[i] - direct) / std::abs(direct));
        }

        out << "wavepacket=" << w.describe() << '\n';
        out << "t_end=" << fmt(run.t_end) << '\n';
        out << "lambda(0)=" << fmt(std::abs(lambda(0.0).value())) << '\n';
        out << "gamma(0)=divergent\n";
        out << "zero_dynamics_gamma_rel_dev=" << fmt(recovery, 3) << '\n';
        if (run.truncation) {
            const double T = *run.truncation;
            const auto gT = truncated_coupling(w, run.phi0, T);
            csv::write_atomic(dir / "gamma_T.csv", coupling_table(gT, grid));
            const double quad = coupling_energy_integral(gT, T, run.t_end).value();
            const double closed = std::log(w.head_energy(run.t_end) / w.head_energy(T));
            out << "T=" << fmt(T) << '\n';
            out << "head(T)=" << fmt(w.head_energy(T)) << '\n';
            out << "max|gamma_T|=" << fmt(max_abs_coupling(gT, run.t_end, grid.size())) << '\n';
            out << "log_identity_dev=" << fmt(std::abs(quad - closed), 3) << '\n';
        } else {
            out << "gamma_T: skipped (no --T)\n";
        }
        return static_cast<int>(kOk);
    });
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto run = resolve(cfg);
        out << "wavepacket=" << run.packet.describe() << '\n';
        out << "absorber=" << (run.truncation ? "truncated T=" + fmt(*run.truncation) : "exact")
            << '\n';
        if (cfg.formulation != Formulation::All) {
            auto res = run_formulation(run, cfg.formulation);
            if (!cfg.out.empty()) res.trajectory.write_csv(cfg.out);
            if (cfg.formulation == Formulation::Amplitudes) {
                const auto r = residual_check(res.trajectory);
                out << "conservation_residual=" << fmt(r.conservation, 3) << '\n';
                out << "max_output=" << fmt(r.max_output, 3) << '\n';
            }
            out << "n2(t_end)=" << fmt(res.n2.back()) << '\n';
            return static_cast<int>(kOk);
        }
        auto amp = run_formulation(run, Formulation::Amplitudes);
        auto mom = run_formulation(run, Formulation::Moments);
        auto orc = run_formulation(run, Formulation::Oracle);
        // Exact-absorber runs all start at the same seed time, so the grids
        // coincide.
        Trajectory traj(amp.trajectory.times());
        traj.add_column("n2_amplitudes", amp.n2);
        traj.add_column("p_out", amp.trajectory.real("p_out"));
        traj.add_column("n2_moments", mom.n2);
        traj.add_column("n2_oracle", orc.n2);
        if (!cfg.out.empty()) traj.write_csv(cfg.out);
        const double dev = std::max({max_abs_diff(amp.n2, mom.n2), max_abs_diff(amp.n2, orc.n2),
                                     max_abs_diff(mom.n2, orc.n2)});
        out << "n2(t_end)=" << fmt(mom.n2.back()) << '\n';
        out << "max_deviation=" << fmt(dev, 3) << '\n';
        return static_cast<int>(kOk);
    });
}

std::vector<SweepRow> run_sweep(const ResolvedRun& base, std::vector<double> truncations,
                                unsigned jobs) {
    std::sort(truncations.begin(), truncations.end());
    std::vector<SweepRow> rows(truncations.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            const double T = truncations[i];
            SweepRow row{T, std::nan(""), std::nan(""), false};
            try {
                ResolvedRun r = base;
                r.truncation = T;
                const auto res = run_formulation(r, Formulation::Moments);
                row.n2_final = res.n2.back();
                row.max_abs_gamma = max_abs_coupling(
                    truncated_coupling(r.packet, r.phi0, T), r.t_end, r.options.grid_points);
                row.ok = true;
            } catch (const Error&) {
                row.ok = false;
            }
            rows[i] = row;
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "T,n2_final,max_abs_gamma,status\n";
    for (const auto& r : rows) {
        s += fmt(r.truncation, 17) + ',' + fmt(r.n2_final, 17) + ',' + fmt(r.max_abs_gamma, 17) +
             ',' + (r.ok ? "ok" : "failed") + '\n';
    }
    return s;
}

int cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& t_values, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        RunConfig base_cfg = cfg;
        base_cfg.truncation.clear();
        const auto base = resolve(base_cfg);
        std::vector<double> truncations;
        for (const auto& text : t_values) {
            const double T = parse_time_or_fraction(text, base.t_end);
            if (!(T > 0.0 && T < base.t_end)) {
                throw UsageError("sweep value '" + text + "' is outside (0, t-end)");
            }
            truncations.push_back(T);
        }
        const auto rows = run_sweep(base, truncations, std::max(1u, cfg.jobs));
        write_or_print(cfg.out, sweep_csv(rows), out);
        if (!cfg.out.empty()) {
            const auto failed = std::count_if(rows.begin(), rows.end(), [](auto& r) { return !r.ok; });
            out << "rows=" << rows.size() << " failed=" << failed << '\n';
        }
        return static_cast<int>(kOk);
    });
}

std::string figure_csv(const RunOptions& options, std::size_t points) {
    const auto w = make_exponential(kReferenceRate);
    const double t1 = 10.0 / kReferenceRate;
    const auto lambda = generator_coupling(w);
    RunOptions o = options;
    o.grid_points = points;
    std::vector<Trajectory> runs;
    for (double f : kReferenceFractions) {
        runs.push_back(integrate_moments(lambda, truncated_coupling(w, 0.0, f * t1), t1, o));
    }
    Trajectory traj(runs.front().times());
    traj.add_column("n2_T0p001", runs[0].real("n2"));
    traj.add_column("n2_T0p01", runs[1].real("n2"));
    traj.add_column("n2_T0p1", runs[2].real("n2"));
    return traj.to_csv();
}

int cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunOptions o;
        o.tol.rel = cfg.rel_tol;
        o.tol.abs = cfg.abs_tol;
        const auto csv_text = figure_csv(o, cfg.grid_points);
        write_or_print(cfg.out, csv_text, out);
        if (!cfg.out.empty()) {
            const auto last = csv::split_line(
                std::string_view(csv_text).substr(csv_text.rfind('\n', csv_text.size() - 2) + 1));
            out << "terminal n2: " << fmt(csv::parse_double(last[1])) << ' '
                << fmt(csv::parse_double(last[2])) << ' ' << fmt(csv::parse_double(last[3]))
                << '\n';
        }
        return static_cast<int>(kOk);
    });
}

std::vector<CheckResult> run_checks(const RunOptions& options, bool quick) {
    std::vector<CheckResult> checks;
    auto add = [&](std::string name, double tol, double observed) {
        checks.push_back({std::move(name), tol, observed, observed <= tol});
    };

    const auto w = make_exponential(kReferenceRate);
    const double t1 = 10.0 / kReferenceRate;
    const auto lambda = generator_coupling(w);
    const auto n2_op = qubit::on_absorber(qubit::number());

    double reference = 0.0, equiv = 0.0, oracle = 0.0, conservation = 0.0, drift = 0.0;
    double n1n2 = 0.0, n1sz = 0.0, log_id = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double T = kReferenceFractions[k] * t1;
        const auto gamma = truncated_coupling(w, 0.0, T);
        const auto mom = integrate_moments(lambda, gamma, t1, options);
        const auto amp = integrate_amplitudes(lambda, gamma, 0.0, t1, options);
        reference = std::max(reference, std::abs(mom.real("n2").back() - kReferenceValues[k]));
        equiv = std::max(equiv, max_abs_diff(mom.real("n2"), amp.real("n2")));
        const auto& cross = mom.complex("cross");
        const auto& p2 = amp.complex("psi2");
        const auto& p3 = amp.complex("psi3");
        for (std::size_t i = 0; i < cross.size(); ++i) {
            equiv = std::max(equiv, std::abs(cross[i] - std::conj(p2[i]) * p3[i]));
        }
        conservation = std::max(conservation, residual_check(amp).conservation);
        const double quad = coupling_energy_integral(gamma, T, t1).value();
        log_id = std::max(log_id, std::abs(quad - std::log(w.head_energy(t1) / w.head_energy(T))));

        const auto full = integrate_moments(lambda, gamma, t1, options, MomentSystem::Full);
        for (std::size_t i = 0; i < full.size(); ++i) {
            n1n2 = std::max(n1n2, std::abs(full.real("n1n2")[i]));
            n1sz = std::max(n1sz, std::abs(full.real("n1sz")[i] + w.tail_energy(full.times()[i])));
        }
        if (!quick || k == 0) {
            const auto orc = master_equation_evolve(generator_absorber_cascade(lambda, gamma),
                                                    DensityMatrix::from_amplitudes({}), 0.0, t1,
                                                    options);
            oracle = std::max(oracle, max_abs_diff(orc.expectation_series(n2_op), mom.real("n2")));
            drift = std::max(drift, orc.max_trace_drift);
        }
    }
    add("reference terminal values (moments)", kReferenceBand, reference);
    add("formulation equivalence (n2, cross)", 1e-7, equiv);
    add("oracle equivalence", 1e-6, oracle);
    add("amplitude conservation", 1e-8, conservation);
    add("master-equation trace drift", 1e-9, drift);
    add("n1n2 stays zero", 1e-12, n1n2);
    add("n1sz closed form", 1e-7, n1sz);
    add("log identity for |gamma_T|^2", 1e-7, log_id);

    // Exact absorber, seeded at head = 1e-12.
    double closed = 0.0;
    const auto exact = exact_absorption_run(w, 0.0, t1, options);
    const auto report = residual_check(exact);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto ref = exact_absorber_amplitudes(w, 0.0, exact.times()[i]);
        closed = std::max({closed, std::abs(exact.complex("psi2")[i] - ref.psi2),
                           std::abs(exact.complex("psi3")[i] - ref.psi3)});
    }
    add("exact absorber n2 deficit", 2e-4, 1.0 - exact.real("n2").back());
    add("zero-output residual", 1e-7, report.max_output);
    add("exact absorber closed forms", 1e-7, closed);

    if (!quick) {
        double phase = 0.0;
        const auto gamma = truncated_coupling(w, 0.0, 0.01 * t1);
        const auto ref = integrate_amplitudes(lambda, gamma, 0.0, t1, options);
        for (double phi0 : {1.0, std::numbers::pi}) {
            const auto r = integrate_amplitudes(lambda, truncated_coupling(w, phi0, 0.01 * t1),
                                                0.0, t1, options);
            phase = std::max({phase, max_abs_diff(ref.real("n2"), r.real("n2")),
                              max_abs_diff(ref.real("p_out"), r.real("p_out"))});
        }
        add("phi0 invariance", 1e-12, phase);
    }

    // Algebraic identities on random couplings and states.
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    auto rc = [&] { return Complex(normal(rng), normal(rng)); };
    const int samples = quick ? 10 : 50;
    double identity = 0.0, adjoint = 0.0, series = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Complex l = rc(), g = rc();
        const auto L = CouplingSchedule::constant(l);
        const auto G = CouplingSchedule::constant(g);
        const auto cascade = generator_absorber_cascade(L, G);
        const auto snap = cascade.at(0.0).value();
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                Eigen::Matrix2cd x1 = Eigen::Matrix2cd::Zero(), x2 = Eigen::Matrix2cd::Zero();
                x1(a / 2, a % 2) = 1.0;
                x2(b / 2, b % 2) = 1.0;
                const Operator lhs = heisenberg_generator(snap, qubit::kron(x1, x2));
                const Operator rhs = cascade_product_generator(l, g, x1, x2);
                identity = std::max(identity, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
        const auto composed = series_product(absorber_node(G), generator_node(L)).at(0.0).value();
        series = std::max({series, (composed.l - snap.l).cwiseAbs().maxCoeff(),
                           (composed.h - snap.h).cwiseAbs().maxCoeff(),
                           (composed.s - snap.s).cwiseAbs().maxCoeff()});
        for (int r = 0; r < 2; ++r) {
            Operator m = Operator::Zero(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m(i, j) = rc();
            Operator rho = m * m.adjoint();
            rho /= rho.trace();
            adjoint = std::max({adjoint, adjoint_consistency_check(cascade, rho, n2_op, 0.0),
                                adjoint_consistency_check(cascade, rho, m + m.adjoint(), 0.0)});
        }
    }
    add("heisenberg generator vs four-term form", 1e-12, identity);
    add("adjoint consistency", 1e-12, adjoint);
    add("cascade from series product", 1e-12, series);
    return checks;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunOptions o;
        o.tol.rel = cfg.rel_tol;
        o.tol.abs = cfg.abs_tol;
        if (!(o.tol.rel > 0.0 && o.tol.rel < 1.0) || !(o.tol.abs > 0.0 && o.tol.abs < 1.0)) {
            throw UsageError("tolerances must lie in (0, 1)");
        }
        const auto checks = run_checks(o, cfg.quick);
        bool all = true;
        for (const auto& c : checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name << "  tol=" << fmt(c.tolerance, 3)
                << "  observed=" << fmt(c.observed, 3) << '\n';
            all = all && c.pass;
        }
        out << (all ? "all checks passed" : "verification failed") << '\n';
        return static_cast<int>(all ? kOk : kVerifyFailed);
    });
}

} // namespace qabsorb::cli
