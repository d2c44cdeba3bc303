#include "hamon/builtin_models.hpp"
#include "hamon/model_json.hpp"
#include "hamon/word.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// Exercises the installed CLI surface: subcommands, exit-code contract,
// file handling. The binary path comes from the build system.

namespace {

namespace fs = std::filesystem;

const std::string kBin = HAMON_BIN_PATH;
const fs::path kTmp = fs::path(HAMON_TEST_TMPDIR) / "cli";

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_file = "") {
  fs::create_directories(kTmp);
  auto out_path = kTmp / "out.txt";
  std::string cmd = kBin + " " + args;
  if (!stdin_file.empty()) cmd += " < " + stdin_file;
  cmd += " > " + out_path.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {WEXITSTATUS(rc), text};
}

std::string write_file(const std::string& name, const std::string& content) {
  fs::create_directories(kTmp);
  auto p = (kTmp / name).string();
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

std::string platoon_model_file() {
  return write_file("platoon.json", hamon::model_to_json(hamon::platooning_model()));
}

std::string platoon_spec_file() {
  return write_file("spec.json", R"({"atoms": ["x1 - x2 > 0"]})");
}

std::string platoon_log_file() {
  return write_file("log.csv", "time,x1,x2\n0,40,35\n10,123,117\n20,203,201\n");
}

} // namespace

TEST_CASE("monitor exit codes: alarm, safe prefix, missing file") {
  auto model = platoon_model_file();
  auto spec = platoon_spec_file();
  auto log = platoon_log_file();

  auto alarm = run("monitor " + model + " " + log + " --spec " + spec);
  CHECK(alarm.exit_code == 2);
  CHECK(alarm.out.find("C = {3}") != std::string::npos);

  auto safe_log = write_file("log2.csv", "time,x1,x2\n0,40,35\n10,123,117\n");
  auto safe = run("monitor " + model + " " + safe_log + " --spec " + spec);
  CHECK(safe.exit_code == 0);

  auto missing = run("monitor " + model + " /does/not/exist.csv --spec " + spec);
  CHECK(missing.exit_code == 1);
}

TEST_CASE("monitor --json and --method=1") {
  auto model = platoon_model_file();
  auto spec = platoon_spec_file();
  auto log = platoon_log_file();
  auto js = run("monitor " + model + " " + log + " --spec " + spec + " --json");
  CHECK(js.exit_code == 2);
  CHECK(js.out.find("\"C\"") != std::string::npos);
  CHECK(js.out.find("\"verdict\": \"accepted\"") != std::string::npos);
  auto m1 = run("monitor " + model + " " + log + " --spec " + spec + " --method 1");
  CHECK(m1.exit_code == 2);
  CHECK(m1.out.find("C = {3}") != std::string::npos);
}

TEST_CASE("inconclusive maps to exit 3, HAMON_CAP is honored") {
  // the reset-ratchet cycle under a tight cap via environment variable
  auto model = write_file("zeno.json", R"({
    "variables": ["x"],
    "locations": [
      {"id": "a", "flow": ["x' = 1"], "invariant": [], "initial": ["x = 0"], "accepting": false},
      {"id": "b", "flow": ["x' = 1"], "invariant": [], "initial": "false", "accepting": true}
    ],
    "edges": [
      {"from": "a", "to": "b", "guard": ["x >= 1"], "update": {"x": [0, 0]}},
      {"from": "b", "to": "a", "guard": ["x >= 1"], "update": {"x": [0, 0]}}
    ]
  })");
  auto log = write_file("zeno.csv", "time,x\n60,0\n");
  auto out_path = (kTmp / "env_out.txt").string();
  int rc = std::system(("env HAMON_CAP=8 " + kBin + " monitor " + model + " " + log + " > " +
                        out_path + " 2>&1")
                           .c_str());
  CHECK(WEXITSTATUS(rc) == 3);
  rc = std::system(("env HAMON_CAP=4000 " + kBin + " monitor " + model + " " + log + " > " +
                    out_path + " 2>&1")
                       .c_str());
  CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("validate: clean model and diagnostics") {
  auto model = platoon_model_file();
  auto ok = run("validate " + model);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("ok") != std::string::npos);

  auto bad = write_file("bad.json", R"({
    "variables": ["x"],
    "locations": [{"id": "a", "flow": ["x' = 1"], "invariant": [], "initial": ["x = 0"]}],
    "edges": [{"from": "a", "to": "ghost", "guard": []}]
  })");
  auto r = run("validate " + bad);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("ghost") != std::string::npos);

  CHECK(run("validate ACCI").exit_code == 0);
}

TEST_CASE("gen-log emits a parseable deterministic CSV") {
  auto a = run("gen-log ACCI --seed 7 --length 20");
  CHECK(a.exit_code == 0);
  CHECK(a.out.rfind("time,x1,x2", 0) == 0);
  auto b = run("gen-log ACCI --seed 7 --length 20");
  CHECK(a.out == b.out);
  auto sp = hamon::VarSpace::make({"x1", "x2"});
  auto w = hamon::parse_log(a.out, sp);
  CHECK(w.size() == 20);
}

TEST_CASE("export: determinism, --force, empty log") {
  auto model = platoon_model_file();
  auto log = platoon_log_file();
  auto out1 = (kTmp / "export1.txt").string();
  auto r1 = run("export " + model + " " + log + " -o " + out1);
  CHECK(r1.exit_code == 0);
  auto again = run("export " + model + " " + log + " -o " + out1);
  CHECK(again.exit_code == 1); // refuses to overwrite without --force
  auto forced = run("export " + model + " " + log + " -o " + out1 + " --force");
  CHECK(forced.exit_code == 0);

  auto out2 = (kTmp / "export2.txt").string();
  run("export " + model + " " + log + " -o " + out2);
  CHECK(hamon::read_text_file(out1) == hamon::read_text_file(out2));

  auto empty_log = write_file("empty.csv", "time,x1,x2\n");
  auto r = run("export " + model + " " + empty_log + " -o " + (kTmp / "export3.txt").string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("product subcommand emits loadable model JSON") {
  auto model = platoon_model_file();
  auto log = platoon_log_file();
  auto r = run("product " + model + " " + log);
  CHECK(r.exit_code == 0);
  auto prod = hamon::model_from_json(r.out);
  CHECK(prod.locations().size() == 8); // 2 model locations x 4 chain locations
}

TEST_CASE("bench subcommand runs a small plan") {
  auto plan = write_file("plan.json", R"({"models": ["ACCI"], "lengths": [3, 5], "seeds": 2})");
  auto r = run("bench --plan " + plan);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"cells\"") != std::string::npos);
}

TEST_CASE("--follow reads samples from stdin and streams verdicts") {
  auto model = platoon_model_file();
  auto spec = platoon_spec_file();
  auto log = platoon_log_file();
  auto r = run("monitor " + model + " --spec " + spec + " --follow", log);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("1 0 rejected") != std::string::npos);
  CHECK(r.out.find("3 20 accepted") != std::string::npos);
}
