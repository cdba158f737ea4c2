#include "cli/csv_output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace ictmc::cli {

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

void write_series_csv(std::ostream& out, const MeasureSeries& series,
                      const std::vector<double>& consumed_after_step,
                      const ReferenceColumns* reference) {
  const std::size_t rows = series.times.size();
  if (consumed_after_step.size() != rows)
    throw std::invalid_argument("write_series_csv: ledger length does not match series");
  if (reference != nullptr &&
      (reference->expected_state.size() != rows || reference->relative_es_error.size() != rows ||
       reference->max_abs_error.size() != rows)) {
    throw std::invalid_argument("write_series_csv: reference columns do not match series");
  }

  out << "t_minutes,expected_state,p_immediate,p_tail,mvm_count,steady_detected,"
         "error_consumed_cumulative";
  if (reference != nullptr) out << ",ref_expected_state,es_relative_error,max_abs_error";
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_number(series.times[i]) << ',' << format_number(series.expected_state[i])
        << ',' << format_number(series.p_immediate[i]) << ','
        << format_number(series.p_tail[i]) << ',' << series.mvm_per_step[i] << ','
        << (series.steady_flags[i] ? 1 : 0) << ',' << format_number(consumed_after_step[i]);
    if (reference != nullptr) {
      const auto& rel = reference->relative_es_error[i];
      out << ',' << format_number(reference->expected_state[i]) << ','
          << (rel ? format_number(*rel) : std::string("nan")) << ','
          << format_number(reference->max_abs_error[i]);
    }
    out << '\n';
  }
}

void write_distribution_csv(const std::filesystem::path& path, const ProbabilityVector& p) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << "state,probability\n";
  for (std::size_t k = 0; k < p.size(); ++k) file << k << ',' << format_number(p[k]) << '\n';
}

}  // namespace ictmc::cli
