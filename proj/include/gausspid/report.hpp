#pragma once

#include <string>

#include "json.hpp"

#include "gausspid/measures.hpp"

namespace gausspid {

/// Shortest decimal representation that round-trips the exact double
/// ("%.17g"); used for every floating-point cell in CSV output.
std::string format_double(double value);

/// Writes to a temporary file in the same directory, then renames into
/// place, so a failure never leaves a partial output file.
void atomic_write_file(const std::string& path, const std::string& content);

nlohmann::json measure_report_to_json(const MeasureReport& report);
std::string measure_report_to_csv(const MeasureReport& report);

}  // namespace gausspid
