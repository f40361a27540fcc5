// Command-line front end: semigrowth {check,curve,certify,classify} --config FILE

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "semigrowth/config.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/parallel.hpp"
#include "semigrowth/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Run description (YAML)")->required();
  cmd->add_option("--out", opt.out, "Output directory (overrides output.dir)");
  cmd->add_option("--seed", opt.seed, "Seed for randomized probe sets");
  cmd->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
}

int run(semigrowth::Verb verb, const Options& opt) {
  using namespace semigrowth;
  RunConfig cfg;
  try {
    cfg = load_config(opt.config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  set_default_threads(opt.threads);

  try {
    const auto report = run_pipeline(cfg, verb);
    emit_outputs(report, cfg.output_dir);
    std::cout << summary_text(report);
    for (const auto& [stage, seconds] : report.timing) {
      std::fprintf(stderr, "time %-22s %.3fs\n", stage.c_str(), seconds);
    }
    return report.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth bounds for quasi-multiplication semigroups from explicit spectra"};
  app.require_subcommand(1);
  Options opt;
  struct VerbInfo {
    const char* name;
    const char* help;
    semigrowth::Verb verb;
  };
  const VerbInfo verbs[] = {
      {"check", "Run the configured checks", semigrowth::Verb::check},
      {"curve", "Emit growth and envelope CSVs only", semigrowth::Verb::curve},
      {"certify", "Search a positive-increase certificate for the envelope", semigrowth::Verb::certify},
      {"classify", "Classify the regularity of the semigroup", semigrowth::Verb::classify},
  };
  std::optional<semigrowth::Verb> chosen;
  for (const auto& v : verbs) {
    auto* cmd = app.add_subcommand(v.name, v.help);
    add_common(cmd, opt);
    cmd->callback([&chosen, verb = v.verb] { chosen = verb; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  return run(*chosen, opt);
}
