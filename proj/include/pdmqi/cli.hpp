// pdmqi/cli.hpp
//
// Front end shared by the `pdmqi` executable, the tests and the Python
// module: run configuration, the tables / spectrum / plotdata commands and
// their file formats.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdmqi/info.hpp"
#include "pdmqi/model.hpp"

namespace pdmqi::cli {

enum class OutputFormat { Csv, Json };

/// Exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInequalityViolated = 2;

struct RunConfig {
    double v1 = 1.0;
    double v2 = 1.0;
    double hbar = 1.0;
    /// Unset: m0 = a^2 hbar^2 / 2 for each width, i.e. kappa = 1.
    std::optional<double> m0;
    std::vector<int> levels{0, 1, 2};
    std::vector<double> widths{2.0, 4.0, 6.0};
    double quad_tol = 1e-10;
    double fourier_tol = 1e-8;
    double eig_tol = 1e-4;
    std::size_t grid_points = 4001;
    std::size_t plot_points = 2001;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path output_path = ".";
    /// Allows levels above 2 and non-preset potentials (general solution).
    bool general = false;

    [[nodiscard]] model::ModelParams params_for(double a) const;
    [[nodiscard]] info::Tolerances tolerances() const;

    /// Throws Error{InvalidConfig} describing the first violated rule.
    void validate() const;
};

/// Applies one `key = value` setting. Throws Error{InvalidConfig} for an
/// unknown key or a malformed value.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key-value file: one `key = value` per line, `#` starts a comment.
[[nodiscard]] RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

[[nodiscard]] std::vector<double> parse_real_list(std::string_view text);
[[nodiscard]] std::vector<int> parse_int_list(std::string_view text);

/// Worker count from PDMQI_THREADS (0 or unset = hardware concurrency).
[[nodiscard]] std::size_t thread_count();

inline constexpr std::string_view kShannonHeader = "n,a,S_x,S_p,S_sum,bbm_bound";
inline constexpr std::string_view kFisherHeader = "n,a,x2_mean,p2_mean,dx,dp,dxdp,F_x,F_p";
inline constexpr std::string_view kSpectrumHeader = "n,E_closed_form,eps_fd,E_fd,abs_diff";
inline constexpr std::string_view kCalibrationHeader =
    "case,n,eps_exact,eps_fd_raw,eps_fd,abs_diff,convergence_order";
inline constexpr std::string_view kMomentumRoutesHeader =
    "n,a,S_p,S_p_closed_form,F_p,F_p_closed_form,phi_const_closed_form,phi_const_fitted";
inline constexpr std::string_view kPositionPlotHeader = "x,psi,rho,rho_s,rho_F";
inline constexpr std::string_view kMomentumPlotHeader = "p,phi,rho_p,rho_s_p,rho_F_p";
inline constexpr std::string_view kMassHeader = "x,m(x),k,m(k)";

/// Six significant digits, the CSV number format.
[[nodiscard]] std::string format_csv_number(double value);

struct TableCell {
    info::InfoReport report;
    info::Margins margins;
    std::optional<analytic::MomentumConstantFit> momentum_fit;
};

/// Computes every (level, width) cell, in parallel, ordered level-major.
[[nodiscard]] std::vector<TableCell> compute_tables(const RunConfig& config);

struct SpectrumRow {
    int n;
    double e_closed_form;
    double eps_fd;
    double e_fd;
    double abs_diff;
};

struct CalibrationRow {
    std::string name; // "box" or "free_pdm"
    int n;
    double eps_exact;
    double eps_fd_raw;
    double eps_fd;
    double abs_diff;
    double convergence_order;
};

struct SpectrumOutput {
    std::vector<SpectrumRow> rows;
    std::vector<CalibrationRow> calibration;
};

[[nodiscard]] SpectrumOutput compute_spectrum(const RunConfig& config);

/// Writes shannon.csv, fisher.csv and momentum_routes.csv (or their .json
/// forms plus reports.json). Returns kExitInequalityViolated if any margin
/// is negative.
int cmd_tables(const RunConfig& config);

/// Writes spectrum.csv and spectrum_calibration.csv (or .json). Returns
/// kExitFailure via Error{ConvergenceFailure} if a calibration row misses eig_tol.
int cmd_spectrum(const RunConfig& config);

/// Writes psi_n<n>_a<a>.csv, phi_n<n>_a<a>.csv per cell and mass.csv.
int cmd_plotdata(const RunConfig& config);

/// Full command-line entry point: parses arguments, runs the command and
/// maps errors to exit code 1 with a JSON error record on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pdmqi::cli
