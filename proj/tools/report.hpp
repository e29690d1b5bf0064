#pragma once

#include <ostream>
#include <string>

#include "ssram/kernel.hpp"

namespace ssram::cli {

enum class ReportFormat { Text, JsonLines };

/// Picoseconds as nanoseconds with three decimals, e.g. 3000 -> "3.000".
std::string format_ns(double ps);

void write_text_report(std::ostream& out, const SimulationReport& report);
void write_json_lines_report(std::ostream& out, const SimulationReport& report);

} // namespace ssram::cli
