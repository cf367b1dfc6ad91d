#include "gup/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gup/errors.hpp"

namespace gup {

namespace {

constexpr double cm2_to_m2 = 1e-4;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view cell, std::string_view column, std::size_t line) {
  double value = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value))
    throw ParseError("column " + std::string(column) + ": '" + std::string(cell) +
                         "' is not a finite number",
                     line);
  return value;
}

}  // namespace

Dataset parse_dataset(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty dataset", 1);

  constexpr std::array<std::string_view, 4> names = {"amplitude_sq_cm2", "period_s",
                                                     "sigma_amp_sq_cm2", "sigma_period_s"};
  std::array<int, 4> column = {-1, -1, -1, -1};
  const auto header = split(lines[0]);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = trim(header[c]);
    bool known = false;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (name != names[k]) continue;
      if (column[k] >= 0) throw ParseError("duplicate column " + std::string(name), 1);
      column[k] = static_cast<int>(c);
      known = true;
    }
    if (!known) throw ParseError("unknown column '" + std::string(name) + "'", 1);
  }
  if (column[0] < 0 || column[1] < 0)
    throw ParseError("header must contain amplitude_sq_cm2 and period_s", 1);
  if ((column[2] < 0) != (column[3] < 0))
    throw ParseError("sigma_amp_sq_cm2 and sigma_period_s must appear together", 1);

  Dataset out;
  out.sigma_columns = column[2] >= 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) throw ParseError("blank line inside data", line_no);
    const auto cells = split(lines[i]);
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no);
    DatasetRow row;
    row.amplitude_sq_cm2 = parse_number(trim(cells[column[0]]), names[0], line_no);
    row.period_s = parse_number(trim(cells[column[1]]), names[1], line_no);
    if (row.amplitude_sq_cm2 < 0.0) throw ParseError("amplitude_sq_cm2 must be >= 0", line_no);
    if (!(row.period_s > 0.0)) throw ParseError("period_s must be positive", line_no);
    if (out.sigma_columns) {
      for (int k : {2, 3}) {
        const auto cell = trim(cells[column[k]]);
        if (cell.empty()) continue;
        const double s = parse_number(cell, names[k], line_no);
        if (!(s > 0.0)) throw ParseError(std::string(names[k]) + " must be positive", line_no);
        (k == 2 ? row.sigma_amp_sq_cm2 : row.sigma_period_s) = s;
      }
    }
    out.rows.push_back(row);
  }
  return out;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw InvalidArgument("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_dataset(const Dataset& dataset) {
  std::string out = "amplitude_sq_cm2,period_s";
  if (dataset.sigma_columns) out += ",sigma_amp_sq_cm2,sigma_period_s";
  out += '\n';
  for (const auto& row : dataset.rows) {
    out += format_double(row.amplitude_sq_cm2);
    out += ',';
    out += format_double(row.period_s);
    if (dataset.sigma_columns) {
      out += ',';
      if (row.sigma_amp_sq_cm2) out += format_double(*row.sigma_amp_sq_cm2);
      out += ',';
      if (row.sigma_period_s) out += format_double(*row.sigma_period_s);
    }
    out += '\n';
  }
  return out;
}

MeasurementSeries to_series(const Dataset& dataset, double default_sigma_amp_sq_m2,
                            double default_sigma_period_s) {
  MeasurementSeries series;
  series.points.reserve(dataset.rows.size());
  for (const auto& row : dataset.rows) {
    MeasurementPoint pt;
    pt.x = row.amplitude_sq_cm2 * cm2_to_m2;
    pt.y = row.period_s;
    pt.sigma_x = row.sigma_amp_sq_cm2 ? *row.sigma_amp_sq_cm2 * cm2_to_m2 : default_sigma_amp_sq_m2;
    pt.sigma_y = row.sigma_period_s ? *row.sigma_period_s : default_sigma_period_s;
    series.points.push_back(pt);
  }
  return series;
}

std::filesystem::path bundled_table_path() {
  return std::filesystem::path(GUP_DATA_DIR) / "table1.csv";
}

}  // namespace gup
