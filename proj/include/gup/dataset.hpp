#pragma once

// Pendulum period-vs-amplitude CSV files.
//
//   amplitude_sq_cm2,period_s[,sigma_amp_sq_cm2,sigma_period_s]
//
// Sigma columns are optional; an empty cell falls back to the default
// sigma supplied at conversion time. Numbers use '.' as decimal separator.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gup/evfit.hpp"

namespace gup {

struct DatasetRow {
  double amplitude_sq_cm2 = 0.0;
  double period_s = 0.0;
  std::optional<double> sigma_amp_sq_cm2;
  std::optional<double> sigma_period_s;
};

struct Dataset {
  std::vector<DatasetRow> rows;
  bool sigma_columns = false;
};

/// Throws ParseError with the 1-based line number on malformed input.
Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::filesystem::path& path);

/// Inverse of parse_dataset. Numbers are written in shortest round-trip form,
/// so a file written this way re-emits byte for byte.
std::string format_dataset(const Dataset& dataset);

/// x = A^2 in m^2, y = period in s. Sigma defaults are in SI (m^2, s).
MeasurementSeries to_series(const Dataset& dataset, double default_sigma_amp_sq_m2,
                            double default_sigma_period_s);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Bundled copy of the tabulated pendulum data.
std::filesystem::path bundled_table_path();

}  // namespace gup
