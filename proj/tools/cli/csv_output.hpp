#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ictmc/measures.hpp"

namespace ictmc::cli {

/// Shortest round-trip decimal form, independent of the global locale.
[[nodiscard]] std::string format_number(double value);

/// Extra columns produced by a reference-accuracy comparison run.
struct ReferenceColumns {
  std::vector<double> expected_state;
  std::vector<std::optional<double>> relative_es_error;
  std::vector<double> max_abs_error;  // ||p_hat(t) - p_ref(t)||_inf
};

/// One header row, then one row per step:
/// t_minutes,expected_state,p_immediate,p_tail,mvm_count,steady_detected,
/// error_consumed_cumulative[,ref_expected_state,es_relative_error,max_abs_error]
void write_series_csv(std::ostream& out, const MeasureSeries& series,
                      const std::vector<double>& consumed_after_step,
                      const ReferenceColumns* reference = nullptr);

/// state,probability rows for one distribution.
void write_distribution_csv(const std::filesystem::path& path, const ProbabilityVector& p);

}  // namespace ictmc::cli
