#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "roeflow_cli/experiment.hpp"

namespace roeflow::cli {
namespace {

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return text;
}

int report(std::ostream& err, int code, const char* kind, const std::string& guard,
           const std::string& message) {
  err << "error code=" << code << " kind=" << kind << " guard=" << (guard.empty() ? "-" : guard)
      << " message=\"" << one_line(message) << "\"\n";
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"roeflow: finite-scale experiments on uniform Roe algebra flows"};
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  app.add_option("--config", config_path, "Experiment configuration (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory (default: config 'output' or '.')");
  auto* seed_opt = app.add_option("--seed", seed, "Seed override");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return report(err, 2, "usage", "", e.what());
  }

  try {
    auto config = load_config(config_path, seed_opt->count() ? std::optional(seed) : std::nullopt);
    if (threads > 0) config.threads = threads;
    std::filesystem::path dir = ".";
    if (!out_dir.empty()) {
      dir = out_dir;
    } else if (const auto it = config.doc.find("output"); it != config.doc.end()) {
      if (!it->is_string()) throw ConfigError("config.output: expected a string");
      dir = it->get<std::string>();
    }
    for (const auto& file : run(config, dir)) out << "wrote " << file.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    return report(err, 2, "config", "", e.what());
  } catch (const SizeGuardError& e) {
    return report(err, 3, "size_guard", e.guard(), e.what());
  } catch (const NumericError& e) {
    return report(err, 4, "numeric", "", e.what());
  } catch (const InvalidArgument& e) {
    return report(err, 2, "invalid_argument", "", e.what());
  } catch (const std::exception& e) {
    return report(err, 1, "internal", "", e.what());
  }
}

}  // namespace roeflow::cli
