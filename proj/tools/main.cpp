#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "config.hpp"
#include "holderlab/parallel.hpp"
#include "runner.hpp"

namespace {

constexpr int kUsageError = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace holderlab;
  CLI::App app{"Numerical checks of interior Holder estimates for the complex Monge-Ampere equation"};
  app.set_version_flag("--version", cli::kToolVersion);
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  app.add_option("--config", config_path, "configuration file (see CONFIG.md)")->required();
  app.add_option("--out", out_dir, "output directory (overrides [run] out)");
  app.add_option("--seed", seed, "master seed (overrides [run] seed)");
  app.add_option("--threads", threads, "worker threads, 0 for all cores; results do not depend on it");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    cli::RunConfig config = cli::load_config(config_path);
    if (seed) config.seed = *seed;
    if (out_dir) config.out = *out_dir;
    set_thread_count(threads);
    const cli::RunOutcome outcome = cli::run(config, config.out);
    std::cout << to_string(outcome.verdict) << " " << config.command << ": " << outcome.message << "\n";
    return exit_code(outcome.verdict);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
