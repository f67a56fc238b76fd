// SPDX-License-Identifier: Apache-2.0

#include "wiretap/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace wiretap {

namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

/// Quotes a field when it contains a separator, quote or line break.
std::string quoted(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw std::runtime_error("format_number: to_chars failed");
  return std::string(buffer, end);
}

std::string sweep_csv_header() {
  return "schema_version,preset,scheme,n_alice,n_bob,n_eve,gamma_bar_b_db,"
         "gamma_bar_e_db,rate_rs,epsilon,metric,evaluator,value,stderr,"
         "n_trials,seed,error,wall_time_ms";
}

std::string sweep_csv_line(const SweepRow& row) {
  const auto& p = row.point;
  const bool capacity = row.metric == Metric::OutageCapacity;
  std::string line;
  auto field = [&](const std::string& text) {
    if (!line.empty()) line += ',';
    line += text;
  };
  line = std::to_string(kCsvSchemaVersion);
  field(quoted(row.preset));
  field(std::string(to_string(row.scheme)));
  field(std::to_string(p.n_alice));
  field(std::to_string(p.n_bob));
  field(std::to_string(p.n_eve));
  field(format_number(p.gamma_b_db));
  field(format_number(p.gamma_e_db));
  // R_s is an output of the capacity metric and epsilon is unused elsewhere.
  field(capacity ? std::string() : format_number(p.rate_rs));
  field(capacity ? format_number(p.epsilon) : std::string());
  field(std::string(to_string(row.metric)));
  field(std::string(to_string(row.evaluator)));
  field(optional_number(row.value));
  field(optional_number(row.std_error));
  field(row.n_trials > 0 ? std::to_string(row.n_trials) : std::string());
  field(row.seed ? std::to_string(*row.seed) : std::string());
  field(quoted(row.error));
  field(optional_number(row.wall_time_ms));
  return line;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << sweep_csv_header() << '\n';
  for (const auto& row : rows) out << sweep_csv_line(row) << '\n';
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
  out << "schema_version,n_alice,n_bob,n_eve,gamma_bar_b_db,gamma_bar_e_db,"
         "rate_rs,closed_form,quadrature,mc_estimate,mc_stderr,mc_trials,"
         "abs_dev_quadrature,abs_dev_mc,cancellation_ratio,error_bound,psi3,"
         "psi4,status,error\n";
  for (const auto& v : report.points) {
    const auto& p = v.point;
    std::string status = "ok";
    if (v.precision_exhausted) {
      status = "precision-exhausted";
    } else if (!v.error.empty()) {
      status = "error";
    } else if (!v.quadrature_ok) {
      status = "fail-quadrature";
    } else if (!v.mc_ok) {
      status = "fail-mc";
    }
    out << kCsvSchemaVersion << ',' << p.n_alice << ',' << p.n_bob << ','
        << p.n_eve << ',' << format_number(p.gamma_b_db) << ','
        << format_number(p.gamma_e_db) << ',' << format_number(p.rate_rs) << ','
        << optional_number(v.closed_form) << ',' << optional_number(v.quadrature)
        << ',';
    if (v.monte_carlo) {
      out << format_number(v.monte_carlo->estimate) << ','
          << format_number(v.monte_carlo->std_error) << ','
          << v.monte_carlo->n_trials << ',';
    } else {
      out << ",,,";
    }
    std::optional<double> dev_quad;
    std::optional<double> dev_mc;
    if (v.closed_form && v.quadrature) dev_quad = std::abs(*v.closed_form - *v.quadrature);
    if (v.closed_form && v.monte_carlo) {
      dev_mc = std::abs(*v.closed_form - v.monte_carlo->estimate);
    }
    const bool have_cf = v.closed_form.has_value();
    out << optional_number(dev_quad) << ',' << optional_number(dev_mc) << ','
        << (have_cf ? format_number(v.cancellation_ratio) : std::string()) << ','
        << (have_cf ? format_number(v.error_bound) : std::string()) << ','
        << optional_number(v.psi3) << ',' << optional_number(v.psi4) << ','
        << status << ',' << quoted(v.error) << '\n';
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace wiretap
