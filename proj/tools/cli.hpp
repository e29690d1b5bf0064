#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "report.hpp"
#include "ssram/sram.hpp"

namespace ssram::cli {

/// Exit codes of the driver.
inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolations = 2;

/// Largest data width for which --init-<n> options are registered.
inline constexpr std::size_t kMaxInitColumns = 32;

struct RunConfig {
    std::string stimulus_path;
    std::string vcd_path;  // empty: stimulus path with a .vcd extension
    std::size_t words = 16;
    std::size_t bits = 2;
    std::vector<std::optional<std::string>> init = std::vector<std::optional<std::string>>(kMaxInitColumns);
    bool active_low = false;
    SramTiming timing;
    bool t_cko_given = false;
    ReportFormat report = ReportFormat::Text;

    /// Builds and validates the device configuration. Throws ConfigError or
    /// LiteralError.
    SramConfig device_config() const;
};

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Operating-mode table for the configured polarity and geometry, derived
/// by probing the device model.
std::string render_mode_table(const SramConfig& config);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ssram::cli
