#pragma once

#include "hamon/monitor.hpp"

#include <string>

namespace hamon {

enum class BenchMethod { direct, method1, both };

/// One sweep: every model crossed with every log length, `seeds` random
/// logs per cell. Timing covers monitoring only (log generation and model
/// construction excluded).
struct BenchPlan {
  std::vector<std::string> models; // builtin selectors or model-file paths
  std::vector<std::size_t> lengths;
  std::size_t seeds = 5;
  Rational interval_lo{1};
  Rational interval_hi{5};
  BenchMethod method = BenchMethod::direct;
  MonitorConfig monitor;
  double timeout_seconds = 600.0;
  std::size_t jobs = 1;

  static BenchPlan desk_default();
};

struct BenchCell {
  std::string model;
  std::size_t length = 0;
  std::size_t runs = 0;
  std::size_t generation_failures = 0;
  std::size_t timeouts = 0;
  std::size_t saturated_runs = 0;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
  double mean_seconds_method1 = 0.0; // when method != direct
  std::size_t accepted_indices = 0;
  std::size_t rejected_indices = 0;
  std::size_t inconclusive_indices = 0;
  bool methods_agree = true; // meaningful when method == both
};

struct BenchReport {
  std::vector<BenchCell> cells;
};

BenchPlan bench_plan_from_json(std::string_view text);
std::string bench_report_to_json(const BenchReport& r);

BenchReport run_bench(const BenchPlan& plan);

enum class PlotAxis { length, dimension };

/// Whitespace-separated (x, seconds) series per model/method with a '#'
/// comment header; timeout cells appear as a flagged sentinel row.
std::string emit_plot_data(const BenchReport& r, PlotAxis axis);

} // namespace hamon
