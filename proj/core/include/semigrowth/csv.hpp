#pragma once

#include <string>
#include <vector>

namespace semigrowth {

/// Shortest-stable decimal with 17 significant digits.
std::string format_double(double x);

/// Comma-separated table with a header row and LF line endings.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace semigrowth
