// Batch driver: load a context spec, run the selected verification suites,
// and write a machine-readable report.
//
// Exit status: 0 all checks pass, 1 verification failure, 2 bad config or
// context.

#include <iostream>

#include <CLI11.hpp>

#include "relst/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact verification engine for relative Steinberg presentations"};

  std::string config_path;
  std::string suite = "all";
  std::string relations;
  std::size_t samples = 100;
  relst::u64 seed = 1;
  std::size_t jobs = 1;
  std::string out_path;

  app.add_option("--config", config_path, "context spec file (JSON)")->required();
  app.add_option("--suite", suite, "relations | elimination | chevalley | ft | all")
      ->check(CLI::IsMember({"relations", "elimination", "chevalley", "ft", "all"}));
  app.add_option("--relations", relations, "comma separated relation id filter");
  app.add_option("--samples", samples, "instances per relation id");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--out", out_path, "report path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    relst::JobConfig cfg;
    cfg.context = relst::parse_context_file(config_path);
    cfg.suite = suite;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.jobs = jobs == 0 ? 1 : jobs;
    cfg.out_path = out_path;
    if (!relations.empty()) {
      std::size_t start = 0;
      while (start <= relations.size()) {
        std::size_t comma = relations.find(',', start);
        std::string name = relations.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!name.empty()) {
          auto id = relst::relation_from_name(name);
          if (!id) throw relst::ConfigError("unknown relation id: " + name);
          cfg.relation_filter.push_back(*id);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    return relst::run_job_to_file(cfg);
  } catch (const relst::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const relst::Error& e) {
    std::cerr << "context error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
