#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcond/error.hpp"
#include "qcond/scene.hpp"
#include "qcond/suites.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 7;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void write_json(const std::string& path, const qcond::json& j) {
  std::ofstream out(path);
  if (!out) qcond::fail(qcond::ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QCOND_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    qcond::fail(qcond::ErrorKind::InvalidArgument, std::string("QCOND_SEED is not an integer: ") + env);
  }
  return kDefaultSeed;
}

int cmd_validate(const std::string& path) {
  const qcond::Scene scene = qcond::load_scene(path);
  qcond::validate_scene(scene);
  std::cout << "valid: " << path << " (" << scene.objects.size() << " objects, " << scene.checks.size()
            << " checks)\n";
  return 0;
}

int cmd_run(const std::string& path, std::optional<double> tol, const std::string& json_out) {
  const qcond::Scene scene = qcond::load_scene(path);
  const qcond::SceneReport report = qcond::run_scene(scene, tol);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  [" << c.check << "]  residual=" << sci(c.residual);
    if (!c.error.empty()) std::cout << "  (" << c.error << ")";
    std::cout << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
  std::cout << passed << "/" << report.checks.size() << " checks passed\n";
  if (!json_out.empty()) write_json(json_out, report.to_json());
  return report.passed() ? 0 : kExitFailure;
}

int cmd_verify(bool all, std::vector<std::string> names, const std::vector<std::size_t>& dims,
               std::optional<std::size_t> trials, std::optional<std::uint64_t> seed_flag, const std::string& json_out) {
  if (all) {
    names.clear();
    for (const auto& info : qcond::suite_catalog()) names.push_back(info.name);
  }
  if (names.empty()) qcond::fail(qcond::ErrorKind::InvalidArgument, "verify needs --all or at least one suite name");
  for (const auto& n : names) qcond::suite_info(n);

  const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
  qcond::json reports = qcond::json::array();
  bool ok = true;
  for (const auto& n : names) {
    const qcond::SuiteInfo& info = qcond::suite_info(n);
    const qcond::SuiteReport r =
        qcond::run_suite(n, dims.empty() ? info.default_dims : dims, trials.value_or(info.default_trials), seed);
    ok = ok && r.ok;
    std::cout << (r.ok ? "ok    " : "FAIL  ") << r.suite << "  dims=" << join(r.dims) << " trials=" << r.trials
              << " passes=" << r.passes << " failures=" << r.failures.size();
    if (r.kind == qcond::SuiteKind::Search) std::cout << " witnesses=" << r.witnesses.size();
    if (r.skipped > 0) std::cout << " skipped=" << r.skipped;
    std::cout << " max_residual=" << sci(r.max_residual) << '\n';
    reports.push_back(r.to_json());
  }
  if (!json_out.empty()) write_json(json_out, qcond::json{{"seed", seed}, {"suites", std::move(reports)}});
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditioned effects, observables and instruments: scenes and property suites"};
  app.require_subcommand(1);

  std::string scene_path;
  auto* validate = app.add_subcommand("validate", "Parse a scene and validate every object");
  validate->add_option("scene", scene_path, "Scene file")->required();

  std::optional<double> tol;
  std::string json_out;
  auto* run = app.add_subcommand("run", "Run the checks of a scene");
  run->add_option("scene", scene_path, "Scene file")->required();
  run->add_option("--tol", tol, "Comparison tolerance for checks without their own");
  run->add_option("--json", json_out, "Write the report as JSON");

  bool all = false;
  bool list = false;
  std::vector<std::string> names;
  std::string dims_text;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_flag("--all", all, "Run every suite");
  verify->add_flag("--list", list, "List the suites and exit");
  verify->add_option("suites", names, "Suite names");
  verify->add_option("--dims", dims_text, "Comma-separated dimensions (default: per suite)");
  verify->add_option("--trials", trials, "Trials per dimension (default: per suite)");
  verify->add_option("--seed", seed, "Seed (default: $QCOND_SEED or 7)");
  verify->add_option("--json", json_out, "Write the reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(scene_path);
    if (*run) return cmd_run(scene_path, tol, json_out);
    if (list) {
      for (const auto& info : qcond::suite_catalog()) {
        std::cout << info.name << "  (" << (info.kind == qcond::SuiteKind::Identity ? "identity" : "search")
                  << ", dims " << join(info.default_dims) << ", " << info.default_trials << " trials)  "
                  << info.description << '\n';
      }
      return 0;
    }
    std::vector<std::size_t> dims;
    if (!dims_text.empty()) {
      std::size_t start = 0;
      while (start <= dims_text.size()) {
        const std::size_t end = std::min(dims_text.find(',', start), dims_text.size());
        const std::string item = dims_text.substr(start, end - start);
        std::size_t used = 0;
        unsigned long d = 0;
        try {
          d = std::stoul(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != item.size() || d == 0) {
          std::cerr << "error: --dims expects positive integers separated by commas, got '" << dims_text << "'\n";
          return kExitUsage;
        }
        dims.push_back(d);
        start = end + 1;
      }
    }
    return cmd_verify(all, names, dims, trials, seed, json_out);
  } catch (const qcond::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
