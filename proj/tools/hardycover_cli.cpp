// Command line front end: group, induce, verify and isometry runs.
//
// Exit status: 0 when every check passes, 1 when any check fails, 2 on
// usage, config or I/O errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hardycover/hardycover.hpp"

namespace {

using hardycover::RunConfig;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hardycover::config_error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig load_config(const std::string& path, const std::string& mode) {
  RunConfig cfg = hardycover::parse_config(read_file(path),
                                           std::filesystem::path(path).parent_path());
  if (cfg.mode != mode) {
    throw hardycover::config_error("config is for mode '" + cfg.mode + "', not '" + mode + "'");
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverings of bordered surfaces, induced flat bundles and Hardy space checks"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string report_path;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--report", report_path, "Write the report here instead of stdout");

  int genus = 0;
  int boundary = 1;
  bool doubled = false;
  auto* group = app.add_subcommand("group", "Print the presentation of pi1(S) or of its double");
  group->add_option("--genus", genus, "Handles s")->required();
  group->add_option("--boundary", boundary, "Boundary circles k")->required();
  group->add_flag("--double", doubled, "Present the double X instead of S");

  std::string config_path;
  std::string out_path;
  auto* induce = app.add_subcommand("induce", "Induce chi1 along a covering");
  induce->add_option("--config", config_path)->required();
  induce->add_option("--out", out_path, "Where to write the induced representation")->required();

  auto* verify = app.add_subcommand("verify", "Induce and check every symmetry condition");
  verify->add_option("--config", config_path)->required();

  std::size_t samples = 0;
  int degree = -1;
  std::uint64_t seed = 0;
  auto* isometry = app.add_subcommand("isometry", "Numerical isometry test on annuli");
  isometry->add_option("--config", config_path)->required();
  auto* samples_opt = isometry->add_option("--samples", samples, "Quadrature points N");
  auto* degree_opt = isometry->add_option("--degree", degree, "Laurent degree D");
  auto* seed_opt = isometry->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (group->parsed()) {
      cfg.mode = "group";
      cfg.group = {genus, boundary, doubled};
    } else if (induce->parsed()) {
      cfg = load_config(config_path, "induce");
      cfg.out = out_path;
    } else if (verify->parsed()) {
      cfg = load_config(config_path, "verify");
    } else {
      cfg = load_config(config_path, "isometry");
      if (samples_opt->count() > 0) cfg.isometry.samples = samples;
      if (degree_opt->count() > 0) {
        if (degree < 0) throw hardycover::config_error("degree must be non-negative");
        cfg.isometry.degree = degree;
      }
      if (seed_opt->count() > 0) cfg.seed = seed;
    }

    const auto start = std::chrono::steady_clock::now();
    hardycover::Report report = hardycover::run_pipeline(cfg);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const auto fmt = format == "text" ? hardycover::ReportFormat::text
                                      : hardycover::ReportFormat::json;
    const std::string text = hardycover::emit_report(report, fmt, report_path);
    if (report_path.empty()) std::cout << text;
    return report.pass() ? 0 : 1;
  } catch (const hardycover::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
