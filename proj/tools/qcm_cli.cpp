#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcm/config.hpp"
#include "qcm/io.hpp"
#include "qcm/pipeline.hpp"
#include "qcm/verify.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> mode;
  std::optional<double> noise;
  std::optional<int> jobs;
};

qcm::RunConfig resolve(const Overrides& o) {
  qcm::RunConfig c = o.config.empty() ? qcm::RunConfig{} : qcm::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out_dir = *o.out;
  if (o.mode) c.mode = *o.mode == "exact" ? qcm::vqe::EvalMode::Exact : qcm::vqe::EvalMode::Sampled;
  if (o.noise) c.noise = *o.noise;
  if (o.jobs) c.jobs = *o.jobs;
  c.validate();
  return c;
}

int report(const std::vector<qcm::pipeline::StageReport>& stages) {
  int rc = 0;
  for (const auto& s : stages) {
    std::cout << s.name << ": " << (s.ok ? "ok" : "FAILED") << " (" << s.seconds << " s, " << s.files.size()
              << " files)\n";
    for (const auto& w : s.warnings) std::cout << "  warning: " << w << '\n';
    if (!s.ok) {
      std::cerr << s.name << ": " << s.error << '\n';
      rc = 1;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster perturbation theory with quantum-circuit cluster solvers"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--mode", o.mode, "evaluation mode")->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--noise", o.noise, "depolarizing probability per gate and qubit");
  app.add_option("--jobs", o.jobs, "worker threads (0 = all)");

  auto* ground = app.add_subcommand("ground", "VQE energy sweep with DZNE")->fallthrough();
  auto* green = app.add_subcommand("green", "cluster Green's function from Hadamard tests")->fallthrough();
  auto* spectra = app.add_subcommand("spectra", "CPT spectra from cluster_green.csv")->fallthrough();
  auto* verify = app.add_subcommand("verify", "invariant suite against the oracles")->fallthrough();
  auto* all = app.add_subcommand("all", "ground, green and spectra with a manifest")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  qcm::RunConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const qcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*ground) return report({qcm::pipeline::run_ground(cfg)});
    if (*green) return report({qcm::pipeline::run_green(cfg)});
    if (*spectra) return report({qcm::pipeline::run_spectra(cfg)});
    if (*all) return report(qcm::pipeline::run_all(cfg));
    if (*verify) {
      const auto r = qcm::verify(cfg);
      for (const auto& c : r.checks)
        std::cout << (c.passed ? "pass " : "FAIL ") << c.module << '/' << c.name << " value=" << c.value
                  << " threshold=" << c.threshold << (c.detail.empty() ? "" : " " + c.detail) << '\n';
      const auto path = std::filesystem::path(cfg.out_dir) / "verify.json";
      qcm::io::write_file(path, r.to_json().dump(2) + "\n");
      std::cout << (r.passed() ? "verify: all checks passed" : "verify: FAILED") << " (" << r.seconds << " s), "
                << path.string() << '\n';
      return r.passed() ? 0 : 3;
    }
  } catch (const qcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
