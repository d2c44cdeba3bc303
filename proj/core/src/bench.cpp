#include "hamon/bench.hpp"

#include "hamon/builtin_models.hpp"
#include "hamon/errors.hpp"
#include "hamon/log_gen.hpp"
#include "hamon/model_json.hpp"
#include "hamon/translate.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

namespace hamon {

using nlohmann::json;

BenchPlan BenchPlan::desk_default() {
  BenchPlan p;
  p.models = {"ACCI"};
  p.lengths = {10, 100, 1000};
  p.seeds = 5;
  return p;
}

BenchPlan bench_plan_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench plan is not valid JSON: ") + e.what());
  }
  BenchPlan p;
  if (doc.contains("models")) p.models = doc["models"].get<std::vector<std::string>>();
  if (doc.contains("lengths")) p.lengths = doc["lengths"].get<std::vector<std::size_t>>();
  if (doc.contains("seeds")) p.seeds = doc["seeds"].get<std::size_t>();
  if (doc.contains("interval")) {
    p.interval_lo = Rational::from_string(doc["interval"][0].get<std::string>());
    p.interval_hi = Rational::from_string(doc["interval"][1].get<std::string>());
  }
  if (doc.contains("method")) {
    auto m = doc["method"].get<std::string>();
    p.method = m == "direct"    ? BenchMethod::direct
               : m == "method1" ? BenchMethod::method1
               : m == "both"    ? BenchMethod::both
                                : throw ParseError("bench method must be direct|method1|both");
  }
  if (doc.contains("cap")) p.monitor.max_discrete_steps_per_interval = doc["cap"].get<std::size_t>();
  if (doc.contains("merge")) p.monitor.merge_polyhedra = doc["merge"].get<bool>();
  if (doc.contains("timeout_seconds")) p.timeout_seconds = doc["timeout_seconds"].get<double>();
  if (doc.contains("jobs")) p.jobs = doc["jobs"].get<std::size_t>();
  if (p.models.empty()) p.models = {"ACCI"};
  return p;
}

namespace {

Lha load_selector(const std::string& selector) {
  if (is_builtin_selector(selector)) return builtin_model(selector);
  return load_model_file(selector);
}

void tally_verdict(BenchCell& cell, const MonitorVerdict& v) {
  for (const auto& r : v.indices) {
    switch (r.verdict) {
      case IndexVerdict::accepted: cell.accepted_indices++; break;
      case IndexVerdict::rejected: cell.rejected_indices++; break;
      case IndexVerdict::inconclusive: cell.inconclusive_indices++; break;
    }
  }
  if (!v.saturated_intervals.empty()) cell.saturated_runs++;
}

BenchCell run_cell(const BenchPlan& plan, const std::string& selector, std::size_t length) {
  BenchCell cell;
  cell.model = selector;
  cell.length = length;
  Lha m = load_selector(selector);

  std::vector<double> times;
  std::vector<double> times_m1;
  for (std::size_t seed = 1; seed <= plan.seeds; ++seed) {
    std::optional<TimedQuantitativeWord> w;
    try {
      w = generate_log(m, seed, length, plan.interval_lo, plan.interval_hi);
    } catch (const SimulationStuck&) {
      cell.generation_failures++;
      continue;
    }
    cell.runs++;

    std::optional<MonitorVerdict> direct, indirect;
    if (plan.method != BenchMethod::method1) {
      auto t0 = std::chrono::steady_clock::now();
      direct = run_monitor(m, *w, plan.monitor);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      times.push_back(secs);
      if (secs > plan.timeout_seconds) cell.timeouts++;
      tally_verdict(cell, *direct);
    }
    if (plan.method != BenchMethod::direct) {
      auto t0 = std::chrono::steady_clock::now();
      indirect = method1_verdict(m, *w, plan.monitor);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      times_m1.push_back(secs);
      if (secs > plan.timeout_seconds) cell.timeouts++;
      if (plan.method == BenchMethod::method1) tally_verdict(cell, *indirect);
    }
    if (direct && indirect) {
      // agreement on C(w, M); mutually saturated runs are excluded
      bool both_sat = !direct->saturated_intervals.empty() &&
                      !indirect->saturated_intervals.empty();
      if (!both_sat && direct->accepted_set() != indirect->accepted_set())
        cell.methods_agree = false;
    }
  }
  auto summarize = [](std::vector<double>& v, double& mean, double* median) {
    if (v.empty()) return;
    double sum = 0;
    for (double x : v) sum += x;
    mean = sum / static_cast<double>(v.size());
    if (median) {
      std::sort(v.begin(), v.end());
      *median = v[v.size() / 2];
    }
  };
  summarize(times, cell.mean_seconds, &cell.median_seconds);
  summarize(times_m1, cell.mean_seconds_method1, nullptr);
  if (plan.method == BenchMethod::method1) {
    cell.mean_seconds = cell.mean_seconds_method1;
    if (!times_m1.empty()) {
      std::sort(times_m1.begin(), times_m1.end());
      cell.median_seconds = times_m1[times_m1.size() / 2];
    }
  }
  return cell;
}

} // namespace

BenchReport run_bench(const BenchPlan& plan) {
  struct Job {
    std::string model;
    std::size_t length;
  };
  std::vector<Job> jobs;
  for (const auto& m : plan.models)
    for (auto len : plan.lengths) jobs.push_back({m, len});

  BenchReport report;
  report.cells.resize(jobs.size());
  std::size_t workers = std::max<std::size_t>(1, plan.jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      report.cells[i] = run_cell(plan, jobs[i].model, jobs[i].length);
    return report;
  }
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= jobs.size()) return;
        i = next++;
      }
      auto cell = run_cell(plan, jobs[i].model, jobs[i].length);
      std::lock_guard<std::mutex> lock(mu);
      report.cells[i] = std::move(cell);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return report;
}

std::string bench_report_to_json(const BenchReport& r) {
  json doc;
  doc["cells"] = json::array();
  for (const auto& c : r.cells) {
    json jc;
    jc["model"] = c.model;
    jc["length"] = c.length;
    jc["runs"] = c.runs;
    jc["generation_failures"] = c.generation_failures;
    jc["timeouts"] = c.timeouts;
    jc["saturated_runs"] = c.saturated_runs;
    jc["mean_seconds"] = c.mean_seconds;
    jc["median_seconds"] = c.median_seconds;
    jc["mean_seconds_method1"] = c.mean_seconds_method1;
    jc["accepted_indices"] = c.accepted_indices;
    jc["rejected_indices"] = c.rejected_indices;
    jc["inconclusive_indices"] = c.inconclusive_indices;
    jc["methods_agree"] = c.methods_agree;
    doc["cells"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::optional<std::size_t> selector_dimension(const std::string& selector) {
  if (selector == "ACCI") return 2;
  if (selector.rfind("ACCD:", 0) == 0 || selector.rfind("ACCC:", 0) == 0) {
    auto rest = selector.substr(5);
    auto colon = rest.find(':');
    try {
      return std::stoul(colon == std::string::npos ? rest : rest.substr(0, colon));
    } catch (...) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

} // namespace

std::string emit_plot_data(const BenchReport& r, PlotAxis axis) {
  if (r.cells.empty()) throw DomainError("emit_plot_data: empty report");
  std::ostringstream os;
  os << "# hamon bench plot data: columns are <"
     << (axis == PlotAxis::length ? "length" : "dimension") << "> <mean seconds>\n";
  os << "# timeout cells carry -1 in the seconds column\n";

  auto row_value = [&](const BenchCell& c) {
    return c.timeouts == c.runs && c.runs > 0 ? -1.0 : c.mean_seconds;
  };

  if (axis == PlotAxis::length) {
    std::vector<std::string> models;
    for (const auto& c : r.cells)
      if (std::find(models.begin(), models.end(), c.model) == models.end())
        models.push_back(c.model);
    for (const auto& model : models) {
      std::size_t count = 0;
      os << "# series model=" << model << "\n";
      for (const auto& c : r.cells)
        if (c.model == model) {
          os << c.length << " " << row_value(c) << (c.timeouts == c.runs && c.runs ? " # timeout" : "")
             << "\n";
          ++count;
        }
      if (count == 1) os << "# warning: single-point series\n";
      os << "\n";
    }
  } else {
    std::vector<std::size_t> lengths;
    for (const auto& c : r.cells)
      if (std::find(lengths.begin(), lengths.end(), c.length) == lengths.end())
        lengths.push_back(c.length);
    for (auto len : lengths) {
      std::size_t count = 0;
      os << "# series length=" << len << "\n";
      for (const auto& c : r.cells) {
        if (c.length != len) continue;
        auto dim = selector_dimension(c.model);
        if (!dim) continue;
        os << *dim << " " << row_value(c) << (c.timeouts == c.runs && c.runs ? " # timeout" : "")
           << "\n";
        ++count;
      }
      if (count == 1) os << "# warning: single-point series\n";
      os << "\n";
    }
  }
  return os.str();
}

} // namespace hamon
