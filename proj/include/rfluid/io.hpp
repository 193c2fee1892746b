// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rfluid::io {

/// Writes the whole content to a sibling temporary file and renames it over
/// the target. Throws IoError.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal representation that round-trips (%.17g), '.' decimal.
std::string format_double(double v);

/// Joins already formatted cells with ',' and terminates the row with '\n'.
std::string csv_row(const std::vector<std::string>& cells);

/// Splits a CSV document (no quoting needed for numeric data) into rows.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

double parse_double(const std::string& cell);

} // namespace rfluid::io
