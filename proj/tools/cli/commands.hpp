#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qabsorb/dynamics.hpp"
#include "qabsorb/wavepacket.hpp"

namespace qabsorb::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNumeric = 2,
    kVerifyFailed = 3,
};

// Malformed flag values. Mapped to kUsage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Formulation { Amplitudes, Moments, Oracle, All };

struct RunConfig {
    std::string wavepacket = "exp:c=7.2e7";
    double phi0 = 0.0;
    // Absolute time or "frac:x" (x times t_end). Empty: exact absorber.
    std::string truncation;
    std::optional<double> t_end;
    std::size_t grid_points = 2001;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    Formulation formulation = Formulation::Moments;
    std::filesystem::path out;
    unsigned jobs = 1;
    bool quick = false;
};

// exp:c=<rate> | gauss:center=<t>,width=<t> | file:<path>
Wavepacket parse_wavepacket(const std::string& spec);
Formulation parse_formulation(const std::string& name);
// <time> or frac:<x>, resolved against t_end.
double parse_time_or_fraction(const std::string& text, double t_end);
std::vector<std::string> split_list(const std::string& text);

// 10/c for exponential packets, the support horizon otherwise.
double default_t_end(const Wavepacket& packet);

// Validated, fully resolved run parameters.
struct ResolvedRun {
    Wavepacket packet;
    double phi0;
    double t_end;
    std::optional<double> truncation;
    RunOptions options;
};
ResolvedRun resolve(const RunConfig& cfg);

struct FormulationResult {
    Trajectory trajectory;
    std::vector<double> n2;
};

// One formulation on the resolved run: truncated absorber if a truncation
// time is set, otherwise the exact absorber seeded at head = 1e-12.
FormulationResult run_formulation(const ResolvedRun& run, Formulation formulation);

// Commands return an exit code; diagnostics go to `err`.
int cmd_design(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& t_values, std::ostream& out,
              std::ostream& err);
int cmd_figure(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Rows of the sweep CSV, ascending in T.
struct SweepRow {
    double truncation;
    double n2_final;
    double max_abs_gamma;
    bool ok;
};
std::vector<SweepRow> run_sweep(const ResolvedRun& base, std::vector<double> truncations,
                                unsigned jobs);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Fixed parameters of the reference example: c = 7.2e7, t1 = 10/c and
// T in {0.001, 0.01, 0.1} t1.
inline constexpr double kReferenceRate = 7.2e7;
inline constexpr double kReferenceFractions[3] = {0.001, 0.01, 0.1};
inline constexpr double kReferenceValues[3] = {0.9957, 0.9575, 0.6037};
inline constexpr double kReferenceBand = 0.002;

std::string figure_csv(const RunOptions& options, std::size_t points = 2001);

struct CheckResult {
    std::string name;
    double tolerance;
    double observed;
    bool pass;
};
std::vector<CheckResult> run_checks(const RunOptions& options, bool quick);

} // namespace qabsorb::cli
