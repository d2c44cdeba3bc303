// hamon: model-bounded monitoring of hybrid-system logs against LHA
// bounding models, with exact convex-polyhedra computation.

#include "hamon/bench.hpp"
#include "hamon/builtin_models.hpp"
#include "hamon/errors.hpp"
#include "hamon/log_gen.hpp"
#include "hamon/model_json.hpp"
#include "hamon/monitor.hpp"
#include "hamon/translate.hpp"
#include "hamon/verdict_json.hpp"
#include "hamon/word.hpp"

#include <CLI11.hpp>

#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <queue>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitAlarm = 2;
constexpr int kExitInconclusive = 3;

hamon::Lha load_model(const std::string& selector) {
  if (hamon::is_builtin_selector(selector)) return hamon::builtin_model(selector);
  return hamon::load_model_file(selector);
}

hamon::MonitorConfig make_config(std::size_t cap_flag, bool no_merge, bool witness) {
  hamon::MonitorConfig cfg;
  cfg.max_discrete_steps_per_interval = cap_flag;
  if (cap_flag == 0) {
    if (const char* env = std::getenv("HAMON_CAP")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end && *end == '\0' && v > 0) cfg.max_discrete_steps_per_interval = v;
    }
  }
  cfg.merge_polyhedra = !no_merge;
  cfg.emit_witness = witness;
  return cfg;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw hamon::Error("cannot write " + out_path);
  out << text;
}

void print_human_verdict(const hamon::MonitorVerdict& v, const hamon::Lha& m) {
  std::cout << "  i  timestamp     verdict\n";
  for (const auto& r : v.indices) {
    std::printf("%3zu  %-12s %-12s %s\n", r.index, r.timestamp.str().c_str(),
                std::string(hamon::verdict_text(r.verdict)).c_str(), r.diagnostic.c_str());
    if (r.witness) {
      for (const auto& s : *r.witness) {
        std::cout << "       " << (s.via_edge >= 0 ? "-> " : "start ") << s.location;
        if (s.via_edge >= 0) std::cout << " (edge " << s.via_edge << ")";
        std::cout << "  " << s.region.str() << "\n";
      }
    }
  }
  std::cout << "C = {";
  auto c = v.accepted_set();
  for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? ", " : "") << c[i];
  std::cout << "}\n";
  (void)m;
}

int verdict_exit_code(const hamon::MonitorVerdict& v) {
  if (v.any(hamon::IndexVerdict::accepted)) return kExitAlarm;
  if (v.any(hamon::IndexVerdict::inconclusive)) return kExitInconclusive;
  return kExitOk;
}

// --follow: one reader thread, one monitoring worker, bounded handoff queue
int follow_mode(const hamon::Lha& m, const hamon::MonitorConfig& cfg, bool json_out) {
  std::mutex mu;
  std::condition_variable cv_push, cv_pop;
  std::queue<hamon::Sample> queue;
  bool done = false;
  bool reader_failed = false;
  constexpr std::size_t kQueueCap = 64;

  std::thread reader([&] {
    std::string line;
    bool header_seen = false;
    while (std::getline(std::cin, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (!header_seen) { header_seen = true; continue; } // header row
      std::vector<std::string> cells;
      std::string cur;
      for (char ch : line + ",") {
        if (ch == ',') { cells.push_back(cur); cur.clear(); }
        else cur.push_back(ch);
      }
      try {
        if (cells.size() != m.space()->dim() + 1) throw hamon::ParseError("wrong cell count");
        hamon::Sample s;
        s.timestamp = hamon::Rational::from_string(cells[0]);
        for (std::size_t i = 0; i < m.space()->dim(); ++i)
          s.values.push_back(hamon::Rational::from_string(cells[i + 1]));
        std::unique_lock<std::mutex> lock(mu);
        cv_pop.wait(lock, [&] { return queue.size() < kQueueCap; });
        queue.push(std::move(s));
        cv_push.notify_one();
      } catch (const std::exception& e) {
        std::cerr << "hamon: bad sample line: " << e.what() << "\n";
        std::lock_guard<std::mutex> lock(mu);
        reader_failed = true;
        cv_push.notify_one();
        return;
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    done = true;
    cv_push.notify_one();
  });

  auto states = hamon::initial_states(m);
  hamon::Rational prev_t(0);
  bool sat_seen = false;
  std::size_t index = 0;
  int exit_code = kExitOk;
  while (true) {
    hamon::Sample s;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv_push.wait(lock, [&] { return !queue.empty() || done || reader_failed; });
      if (queue.empty()) break;
      s = std::move(queue.front());
      queue.pop();
      cv_pop.notify_one();
    }
    ++index;
    if (s.timestamp < prev_t) {
      std::cerr << "hamon: decreasing timestamp at sample " << index << "\n";
      exit_code = kExitInputError;
      break;
    }
    auto d = s.timestamp - prev_t;
    prev_t = s.timestamp;
    auto reach = hamon::bounded_reach(m, states, d, cfg);
    sat_seen = sat_seen || reach.saturated;
    states = hamon::restrict_to_sample(reach.states, s);
    bool accepted = false;
    for (const auto& st : states)
      if (m.location(st.location).accepting) accepted = true;
    std::string verdict = accepted ? "accepted" : sat_seen ? "inconclusive" : states.empty() ? "rejected" : "rejected";
    if (json_out) {
      std::cout << "{\"i\": " << index << ", \"timestamp\": \"" << s.timestamp.str()
                << "\", \"verdict\": \"" << verdict << "\"}" << std::endl;
    } else {
      std::cout << index << " " << s.timestamp.str() << " " << verdict << std::endl;
    }
    if (accepted) exit_code = kExitAlarm;
    else if (verdict == "inconclusive" && exit_code == kExitOk) exit_code = kExitInconclusive;
  }
  {
    std::lock_guard<std::mutex> lock(mu);
    if (reader_failed) exit_code = kExitInputError;
  }
  reader.join();
  return exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"model-bounded monitoring of hybrid-system logs (LHA bounding models)"};
  app.require_subcommand(1);

  // monitor
  std::string mon_model, mon_spec, mon_log;
  std::size_t mon_method = 2, mon_cap = 0;
  bool mon_no_merge = false, mon_json = false, mon_witness = false, mon_follow = false;
  auto* mon = app.add_subcommand("monitor", "decide C(w, M) for a log against a bounding model");
  mon->add_option("model", mon_model, "model file or builtin selector")->required();
  mon->add_option("log", mon_log, "log CSV file (ignored with --follow)");
  mon->add_option("--spec", mon_spec, "safety spec file; arms the model against it");
  mon->add_option("--method", mon_method, "1 = reachability translation, 2 = direct (default)")
      ->check(CLI::IsMember({1, 2}));
  mon->add_option("--cap", mon_cap, "discrete-step cap per interval (default 10*|L|, env HAMON_CAP)");
  mon->add_flag("--no-merge", mon_no_merge, "disable exact polyhedra merging");
  mon->add_flag("--json", mon_json, "machine-readable verdict output");
  mon->add_flag("--witness", mon_witness, "record and print accepting run witnesses");
  mon->add_flag("--follow", mon_follow, "read samples from stdin, verdict per sample");

  // validate
  std::string val_model;
  auto* val = app.add_subcommand("validate", "check a model file for well-formedness");
  val->add_option("model", val_model, "model file or builtin selector")->required();

  // gen-log
  std::string gen_model, gen_out, gen_interval = "1:5";
  std::uint64_t gen_seed = 1;
  std::size_t gen_length = 10;
  auto* gen = app.add_subcommand("gen-log", "sample a random run of the model into a log");
  gen->add_option("model", gen_model)->required();
  gen->add_option("--seed", gen_seed, "PRNG seed (default 1)");
  gen->add_option("--length", gen_length, "number of samples (default 10)");
  gen->add_option("--interval", gen_interval, "sampling interval range lo:hi (default 1:5)");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // product
  std::string prod_model, prod_log, prod_out;
  auto* prod = app.add_subcommand("product", "emit the model x word-automaton product as model JSON");
  prod->add_option("model", prod_model)->required();
  prod->add_option("log", prod_log)->required();
  prod->add_option("-o,--out", prod_out, "output file (default stdout)");

  // export
  std::string exp_model, exp_log, exp_out;
  bool exp_force = false;
  auto* exp = app.add_subcommand("export", "emit the external reachability dialect for model + log");
  exp->add_option("model", exp_model)->required();
  exp->add_option("log", exp_log)->required();
  exp->add_option("-o,--out", exp_out, "output file")->required();
  exp->add_flag("--force", exp_force, "overwrite an existing output file");

  // bench
  std::string bench_plan_path, bench_out, bench_plot_axis, bench_plot_out;
  auto* ben = app.add_subcommand("bench", "run a model x length x seed monitoring sweep");
  ben->add_option("--plan", bench_plan_path, "bench plan JSON (default: ACCI desk plan)");
  ben->add_option("-o,--out", bench_out, "report JSON output (default stdout)");
  ben->add_option("--plot-axis", bench_plot_axis, "also emit plot data: length or dimension")
      ->check(CLI::IsMember({"length", "dimension"}));
  ben->add_option("--plot-out", bench_plot_out, "plot data output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mon) {
      auto model = load_model(mon_model);
      auto diags = hamon::validate(model);
      if (hamon::has_errors(diags)) {
        for (const auto& d : diags) std::cerr << "hamon: model: " << d.message << "\n";
        return kExitInputError;
      }
      if (!mon_spec.empty())
        model = hamon::against_safety(model, hamon::load_spec_file(mon_spec, model.space()));
      auto cfg = make_config(mon_cap, mon_no_merge, mon_witness);
      if (mon_follow) return follow_mode(model, cfg, mon_json);
      if (mon_log.empty()) {
        std::cerr << "hamon: monitor needs a log file (or --follow)\n";
        return kExitInputError;
      }
      auto w = hamon::parse_log(hamon::read_text_file(mon_log), model.space());
      auto verdict = mon_method == 1 ? hamon::method1_verdict(model, w, cfg)
                                     : hamon::run_monitor(model, w, cfg);
      if (mon_json) std::cout << hamon::verdict_to_json(verdict, model.space());
      else print_human_verdict(verdict, model);
      return verdict_exit_code(verdict);
    }

    if (*val) {
      auto model = load_model(val_model);
      auto diags = hamon::validate(model);
      for (const auto& d : diags)
        std::cerr << (d.severity == hamon::Severity::error ? "error: " : "warning: ")
                  << d.message << "\n";
      if (hamon::has_errors(diags)) return kExitInputError;
      std::cout << "ok\n";
      return kExitOk;
    }

    if (*gen) {
      auto model = load_model(gen_model);
      auto colon = gen_interval.find(':');
      if (colon == std::string::npos) {
        std::cerr << "hamon: --interval needs lo:hi\n";
        return kExitInputError;
      }
      auto lo = hamon::Rational::from_string(gen_interval.substr(0, colon));
      auto hi = hamon::Rational::from_string(gen_interval.substr(colon + 1));
      try {
        auto w = hamon::generate_log(model, gen_seed, gen_length, lo, hi);
        write_output(hamon::format_log(w), gen_out);
      } catch (const hamon::SimulationStuck& e) {
        std::cerr << "hamon: " << e.what() << "\npartial log follows on stderr:\n"
                  << hamon::format_log(e.partial());
        return kExitInputError;
      }
      return kExitOk;
    }

    if (*prod) {
      auto model = load_model(prod_model);
      auto w = hamon::parse_log(hamon::read_text_file(prod_log), model.space());
      auto p = hamon::product(model, hamon::tqw2lha(w, model.space()));
      write_output(hamon::model_to_json(p), prod_out);
      return kExitOk;
    }

    if (*exp) {
      auto model = load_model(exp_model);
      auto w = hamon::parse_log(hamon::read_text_file(exp_log), model.space());
      if (!exp_force && std::filesystem::exists(exp_out)) {
        std::cerr << "hamon: " << exp_out << " exists; use --force to overwrite\n";
        return kExitInputError;
      }
      write_output(hamon::export_external(model, w), exp_out);
      return kExitOk;
    }

    if (*ben) {
      auto plan = bench_plan_path.empty()
                      ? hamon::BenchPlan::desk_default()
                      : hamon::bench_plan_from_json(hamon::read_text_file(bench_plan_path));
      auto report = hamon::run_bench(plan);
      write_output(hamon::bench_report_to_json(report), bench_out);
      if (!bench_plot_axis.empty()) {
        auto axis = bench_plot_axis == "length" ? hamon::PlotAxis::length : hamon::PlotAxis::dimension;
        write_output(hamon::emit_plot_data(report, axis), bench_plot_out);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "hamon: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
