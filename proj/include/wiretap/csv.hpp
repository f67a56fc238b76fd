// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "wiretap/experiments.hpp"

namespace wiretap {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest text that reads back to the same double.
std::string format_number(double value);

/// Header line of the sweep CSV, without the newline.
std::string sweep_csv_header();
std::string sweep_csv_line(const SweepRow& row);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

void write_validation_csv(std::ostream& out, const ValidationReport& report);

/// Writes to \p path, throwing std::runtime_error if it cannot be opened.
void write_file(const std::string& path, const std::string& contents);

}  // namespace wiretap
