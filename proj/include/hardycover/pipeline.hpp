#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hardycover/covering.hpp"
#include "hardycover/errors.hpp"
#include "hardycover/hardy.hpp"
#include "hardycover/induction.hpp"
#include "hardycover/json_io.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/surface.hpp"

namespace hardycover {

inline constexpr const char* kVersion = "0.1.0";

struct Tolerances {
  double exact = kExactTolerance;
  double product = kProductTolerance;
  double isometry = 1e-9;
};

struct GroupJob {
  int s = 0;
  int k = 1;
  bool doubled = false;
};

/// Covering of pi1(X) for (s, k) with chi1 on its Schreier generators.
struct InductionJob {
  int s = 0;
  int k = 1;
  Json covering;
  Json chi1;
  std::optional<Json> g1;
};

struct IsometryJob {
  double rho1 = 0.6;
  int n = 1;
  int m = 1;
  double alpha = 0.0;
  int signs[2] = {1, 1};
  int degree = 8;
  std::size_t samples = 1024;
  int trials = 20;
  std::vector<std::size_t> convergence{64, 128, 256, 512, 1024, 2048};
};

struct RunConfig {
  std::string mode;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string out;
  GroupJob group;
  InductionJob induction;
  IsometryJob isometry;
};

namespace detail {

inline void require_fields(const Json& j, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw config_error(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw config_error("unknown field '" + where + key + "'");
  }
  for (const char* r : required) {
    if (!j.contains(r)) throw config_error("missing required field '" + where + r + "'");
  }
}

template <class T>
T field(const Json& j, const char* name, const std::string& where = "") {
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception&) {
    throw config_error("field '" + where + name + "' has the wrong type");
  }
}

inline double positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw config_error("tolerance '" + name + "' must be positive");
  return v;
}

/// A nested object given inline or as a path to a JSON file.
inline Json load_input(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_string()) return j;
  const std::filesystem::path p = base_dir / j.get<std::string>();
  std::ifstream in(p);
  if (!in) throw config_error("cannot read input file " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_strict(buf.str());
}

}  // namespace detail

/// Validates a config document and fills defaults. Relative input paths are
/// resolved against base_dir.
inline RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {}) {
  const Json j = parse_json_strict(text);
  if (!j.is_object()) throw config_error("config must be a JSON object");
  if (!j.contains("mode")) throw config_error("missing required field 'mode'");
  RunConfig cfg;
  cfg.mode = detail::field<std::string>(j, "mode");
  if (j.contains("seed")) cfg.seed = detail::field<std::uint64_t>(j, "seed");
  if (j.contains("out")) cfg.out = detail::field<std::string>(j, "out");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    detail::require_fields(t, {}, {"exact", "product", "isometry"}, "tolerances.");
    if (t.contains("exact")) cfg.tol.exact = detail::positive(t["exact"].get<double>(), "exact");
    if (t.contains("product")) {
      cfg.tol.product = detail::positive(t["product"].get<double>(), "product");
    }
    if (t.contains("isometry")) {
      cfg.tol.isometry = detail::positive(t["isometry"].get<double>(), "isometry");
    }
  }

  if (cfg.mode == "group") {
    detail::require_fields(j, {"s", "k"}, {"mode", "seed", "out", "tolerances", "s", "k", "double"},
                           "");
    cfg.group.s = detail::field<int>(j, "s");
    cfg.group.k = detail::field<int>(j, "k");
    if (j.contains("double")) cfg.group.doubled = detail::field<bool>(j, "double");
  } else if (cfg.mode == "induce" || cfg.mode == "verify") {
    detail::require_fields(j, {"s", "k", "covering", "chi1"},
                           {"mode", "seed", "out", "tolerances", "s", "k", "covering", "chi1", "G1"},
                           "");
    if (cfg.mode == "verify" && !j.contains("G1")) {
      throw config_error("missing required field 'G1'");
    }
    auto& job = cfg.induction;
    job.s = detail::field<int>(j, "s");
    job.k = detail::field<int>(j, "k");
    job.covering = detail::load_input(j["covering"], base_dir);
    job.chi1 = detail::load_input(j["chi1"], base_dir);
    if (j.contains("G1")) job.g1 = j["G1"];
  } else if (cfg.mode == "isometry") {
    detail::require_fields(j, {"rho1", "n", "alpha", "signs"},
                           {"mode", "seed", "out", "tolerances", "rho1", "n", "m", "alpha", "signs",
                            "degree", "samples", "trials", "convergence"},
                           "");
    auto& job = cfg.isometry;
    job.rho1 = detail::field<double>(j, "rho1");
    job.n = detail::field<int>(j, "n");
    job.alpha = detail::field<double>(j, "alpha");
    const auto signs = detail::field<std::vector<int>>(j, "signs");
    if (signs.size() != 2) throw config_error("'signs' needs one entry per boundary circle");
    for (std::size_t i = 0; i < 2; ++i) {
      if (signs[i] != 1 && signs[i] != -1) throw config_error("'signs' entries must be +1 or -1");
      job.signs[i] = signs[i];
    }
    if (j.contains("m")) job.m = detail::field<int>(j, "m");
    if (j.contains("degree")) job.degree = detail::field<int>(j, "degree");
    if (j.contains("samples")) job.samples = detail::field<std::size_t>(j, "samples");
    if (j.contains("trials")) job.trials = detail::field<int>(j, "trials");
    if (j.contains("convergence")) {
      job.convergence = detail::field<std::vector<std::size_t>>(j, "convergence");
    }
    if (job.m < 1) throw config_error("'m' must be positive");
    if (job.degree < 0) throw config_error("'degree' must be non-negative");
    if (job.trials < 1) throw config_error("'trials' must be positive");
  } else {
    throw config_error("unknown mode '" + cfg.mode + "'");
  }
  return cfg;
}

inline Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["mode"] = cfg.mode;
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"exact", cfg.tol.exact},
                     {"product", cfg.tol.product},
                     {"isometry", cfg.tol.isometry}};
  if (cfg.mode == "group") {
    j["s"] = cfg.group.s;
    j["k"] = cfg.group.k;
    j["double"] = cfg.group.doubled;
  } else if (cfg.mode == "induce" || cfg.mode == "verify") {
    j["s"] = cfg.induction.s;
    j["k"] = cfg.induction.k;
    j["covering"] = cfg.induction.covering;
    j["chi1"] = cfg.induction.chi1;
    if (cfg.induction.g1) j["G1"] = *cfg.induction.g1;
  } else if (cfg.mode == "isometry") {
    const auto& job = cfg.isometry;
    j["rho1"] = job.rho1;
    j["n"] = job.n;
    j["m"] = job.m;
    j["alpha"] = job.alpha;
    j["signs"] = {job.signs[0], job.signs[1]};
    j["degree"] = job.degree;
    j["samples"] = job.samples;
    j["trials"] = job.trials;
    j["convergence"] = job.convergence;
  }
  if (!cfg.out.empty()) j["out"] = cfg.out;
  return j;
}

struct Check {
  std::string name;
  std::optional<double> residual;  // empty when the step raised an error
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  Json config;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  Json data = Json::object();
  double elapsed_ms = 0.0;  // shown in text output only, so JSON stays byte-stable

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }

  void add(const std::string& name, double residual, double tol) {
    checks.push_back({name, residual, tol, residual < tol});
  }
  void add(const Residual& r) { add(r.name, r.value, r.tolerance); }
  void fail(const std::string& message) { checks.push_back({message, std::nullopt, 0.0, false}); }
};

namespace detail {

inline void run_group(const RunConfig& cfg, Report& rep) {
  const auto& job = cfg.group;
  const int expected_rank = job.doubled ? 4 * job.s + 2 * (job.k - 1) : 2 * job.s + job.k;
  if (job.doubled) {
    const DoubledPresentation p = double_group(job.s, job.k);
    rep.data = presentation_to_json(p.group, p.s, p.k, p.genus);
    rep.add("generator count", std::abs(p.group.rank() - expected_rank), cfg.tol.exact);
    double involutive = 0.0;
    for (int x = 0; x < p.group.rank(); ++x) {
      if (apply_involution(p, apply_involution(p, p.group.generator(x))) != p.group.generator(x)) {
        involutive = 1.0;
      }
    }
    rep.add("tau involutive", involutive, cfg.tol.exact);
    const Word r = p.relator();
    rep.add("tau reverses relator",
            free_conjugate(apply_involution(p, r), invert(r)) ? 0.0 : 1.0, cfg.tol.exact);
  } else {
    const GroupPresentation p = surface_group(job.s, job.k);
    rep.data = presentation_to_json(p.group, p.s, p.k, 2 * p.s + p.k - 1);
    rep.add("generator count", std::abs(p.group.rank() - expected_rank), cfg.tol.exact);
  }
}

struct InductionRun {
  DoubledPresentation p;
  CoveringAction c;
  Transversal t;
  MatrixRep chi1;
  std::optional<InducedRep> chi2;
};

/// Shared front half of induce and verify. Leaves chi2 empty when chi1 fails
/// its own checks.
inline InductionRun run_induction(const RunConfig& cfg, Report& rep) {
  const auto& job = cfg.induction;
  DoubledPresentation p = double_group(job.s, job.k);
  CoveringAction c = covering_from_json(job.covering, p.group);
  Transversal t = schreier_transversal(c);
  MatrixRep chi1 = rep_from_json(job.chi1, t.schreier_names);
  InductionRun run{std::move(p), std::move(c), std::move(t), std::move(chi1), std::nullopt};

  Presentation sub;
  sub.generators = run.t.schreier_names;
  sub.relators = subgroup_relators(run.c, run.t);
  const RepReport r1 = check_representation(run.chi1, sub, cfg.tol.exact);
  for (const auto& u : r1.unitarity) rep.add("chi1 " + u.name, u.value, u.tolerance);
  for (const auto& r : r1.relators) {
    rep.add("chi1 rewritten " + r.name, r.value, cfg.tol.product);
  }
  if (!rep.pass()) return run;

  run.chi2 = induce_representation(run.c, run.t, run.chi1, cfg.tol.product);
  const RepReport r2 = check_representation(run.chi2->rep, run.p.group, cfg.tol.exact);
  for (const auto& u : r2.unitarity) rep.add("chi2 " + u.name, u.value, u.tolerance);
  for (const auto& r : r2.relators) rep.add("chi2 " + r.name, r.value, cfg.tol.product);
  double monomial = 0.0;
  for (const auto& img : run.chi2->rep.images) {
    if (!is_block_monomial(img, run.c.sheets(), run.chi2->m)) monomial = 1.0;
  }
  rep.add("chi2 block monomial", monomial, cfg.tol.exact);
  return run;
}

inline Json block_structure(const InducedRep& chi2, const Presentation& p) {
  Json out = Json::object();
  for (int x = 0; x < p.rank(); ++x) {
    Json pairs = Json::array();
    for (Sheet k = 0; k < chi2.n; ++k) {
      pairs.push_back({k + 1, chi2.block_perm[static_cast<std::size_t>(x)](k) + 1});
    }
    out[p.generators[static_cast<std::size_t>(x)]] = pairs;
  }
  return out;
}

inline Json induced_to_json(const InducedRep& chi2, const Presentation& p) {
  Json images = Json::object();
  for (int x = 0; x < p.rank(); ++x) {
    images[p.generators[static_cast<std::size_t>(x)]] =
        matrix_to_json(chi2.rep.images[static_cast<std::size_t>(x)]);
  }
  return Json{{"m", chi2.m},
              {"n", chi2.n},
              {"images", images},
              {"block_structure", block_structure(chi2, p)}};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << text;
  if (!out) throw io_error("write failed for " + path);
}

inline void run_induce(const RunConfig& cfg, Report& rep) {
  InductionRun run = run_induction(cfg, rep);
  rep.data["schreier_generators"] = run.t.schreier_names;
  if (!run.chi2) return;
  const Json induced = induced_to_json(*run.chi2, run.p.group);
  rep.data["block_structure"] = induced["block_structure"];
  if (!cfg.out.empty()) write_file(cfg.out, induced.dump(2) + "\n");
}

inline void run_verify(const RunConfig& cfg, Report& rep) {
  InductionRun run = run_induction(cfg, rep);
  if (!run.chi2) return;
  const Matrix g1 = matrix_from_json(*cfg.induction.g1, run.chi1.m);
  rep.add("G1 signature", signature_residual(g1), cfg.tol.exact);
  for (const auto& r : tau_symmetry_residuals(run.chi1, subgroup_presentation(run.c, run.t), g1,
                                              cfg.tol.exact)) {
    rep.add("chi1 " + r.name, r.value, r.tolerance);
  }
  if (!rep.pass()) return;
  const Matrix g2 = build_G2(run.c, run.t, run.chi1, g1);
  const auto j2 =
      build_J2_diagonal(lift_signatures(run.c, run.t, run.chi1, g1, run.p, cfg.tol.exact),
                        cfg.tol.exact);
  for (const auto& r : verify_symmetry_conditions(*run.chi2, g2, j2, run.p, cfg.tol.exact).checks) {
    rep.add(r);
  }
  rep.data["G2"] = matrix_to_json(g2);
  Json js = Json::array();
  for (const auto& j : j2) js.push_back(matrix_to_json(j));
  rep.data["J2"] = js;
}

inline SectionSpec random_section(const AnnulusBundle& b, int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  SectionSpec s = SectionSpec::zero(b.m(), degree, b.exponents());
  for (auto& v : s.coeffs) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  }
  return s;
}

/// Largest value r_next may take after r_prev and still count as decreasing:
/// a factor two of slack on top of the rounding floor.
inline double convergence_allowance(double r_prev, double magnitude) {
  return 2.0 * r_prev + 1e-13 * std::max(1.0, magnitude);
}

inline void run_isometry(const RunConfig& cfg, Report& rep) {
  const auto& job = cfg.isometry;
  const AnnulusCovering cov = make_annulus_cover(job.rho1, job.n);
  const Matrix id = Matrix::Identity(job.m, job.m);
  AnnulusBundle bundle{std::vector<double>(static_cast<std::size_t>(job.m), job.alpha),
                       {{job.signs[0] * id, job.signs[1] * id}}};
  const InducedAnnulusData data = induce_annulus_bundle(cov, bundle, cfg.tol.exact);
  rep.add("induced bundle symmetry (worst)", data.symmetry.worst(), cfg.tol.exact);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<SectionSpec, SectionSpec>> pairs;
  for (int i = 0; i < job.trials; ++i) {
    SectionSpec f = random_section(bundle, job.degree, rng);
    SectionSpec h = random_section(bundle, job.degree, rng);
    pairs.emplace_back(std::move(f), std::move(h));
  }

  Json trials = Json::array();
  for (int i = 0; i < job.trials; ++i) {
    const auto& [f, h] = pairs[static_cast<std::size_t>(i)];
    const IsometryResult r = isometry_residual(cov, f, h, bundle, data.j2, job.samples);
    rep.add("isometry trial " + std::to_string(i + 1), r.residual, cfg.tol.isometry);
    trials.push_back({{"trial", i + 1},
                      {"base", complex_to_json(r.base)},
                      {"quotient", complex_to_json(r.quotient)},
                      {"residual", r.residual}});
  }
  rep.data["trials"] = trials;

  // f = h = e_1 z^c: [f, f] = 2 pi (eps0 + eps1 rho^(1 + 2c)) on S1, and the
  // same value for the direct image.
  SectionSpec one = SectionSpec::zero(job.m, 0, bundle.exponents());
  one.coeff(0)(0) = 1.0;
  const double c = bundle.exponents()[0];
  const double closed = kTwoPi * (job.signs[0] + job.signs[1] * std::pow(job.rho1, 1.0 + 2.0 * c));
  const IsometryResult r1 = isometry_residual(cov, one, one, bundle, data.j2, job.samples);
  rep.add("closed form [1,1] on S1", std::abs(r1.base - closed), cfg.tol.product);
  rep.add("closed form [1,1] on S2", std::abs(r1.quotient - closed), cfg.tol.product);
  rep.data["closed_form"] = {{"expected", closed},
                             {"S1", complex_to_json(r1.base)},
                             {"S2", complex_to_json(r1.quotient)}};

  {
    const auto& [f, h] = pairs.front();
    double flip = 0.0;
    for (int comp = 0; comp < 2; ++comp) {
      const Matrix& j = data.j2[static_cast<std::size_t>(comp)];
      const Complex a = component_product(pushforward_section(cov, f, comp, job.samples),
                                          pushforward_section(cov, h, comp, job.samples), j);
      const Complex b = component_product(pushforward_section(cov, f, comp, job.samples, true),
                                          pushforward_section(cov, h, comp, job.samples, true), j);
      flip = std::max(flip, std::abs(a - b));
    }
    rep.add("branch flip invariance", flip, cfg.tol.exact);
  }

  Json table = Json::array();
  double prev = -1.0;
  double violation = 0.0;
  double last = 0.0;
  for (std::size_t n_samples : job.convergence) {
    double worst = 0.0;
    double magnitude = 0.0;
    for (const auto& [f, h] : pairs) {
      const IsometryResult r = isometry_residual(cov, f, h, bundle, data.j2, n_samples);
      worst = std::max(worst, r.residual);
      magnitude = std::max(magnitude, std::abs(r.base));
    }
    if (prev >= 0.0) {
      violation = std::max(violation, worst - convergence_allowance(prev, magnitude));
    }
    table.push_back({{"samples", n_samples}, {"residual", worst}});
    prev = worst;
    last = worst;
  }
  rep.data["convergence"] = table;
  if (!job.convergence.empty()) {
    rep.checks.push_back({"convergence monotone within 2x noise", std::max(violation, 0.0), 0.0,
                          violation <= 0.0});
    rep.add("convergence final residual", last, cfg.tol.isometry);
  }
}

}  // namespace detail

/// Runs one mode. Library errors end up as failed checks rather than
/// escaping; only I/O failures on the output file propagate.
inline Report run_pipeline(const RunConfig& cfg) {
  Report rep;
  rep.config = config_to_json(cfg);
  rep.seed = cfg.seed;
  try {
    if (cfg.mode == "group") {
      detail::run_group(cfg, rep);
    } else if (cfg.mode == "induce") {
      detail::run_induce(cfg, rep);
    } else if (cfg.mode == "verify") {
      detail::run_verify(cfg, rep);
    } else if (cfg.mode == "isometry") {
      detail::run_isometry(cfg, rep);
    } else {
      throw config_error("unknown mode '" + cfg.mode + "'");
    }
  } catch (const io_error&) {
    throw;
  } catch (const std::exception& e) {
    rep.fail(std::string("error: ") + e.what());
  }
  return rep;
}

inline Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual ? Json(*c.residual) : Json(nullptr);
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    checks.push_back(std::move(jc));
  }
  Json out;
  out["version"] = kVersion;
  out["seed"] = r.seed;
  out["config"] = r.config;
  out["checks"] = checks;
  out["pass"] = r.pass();
  out["data"] = r.data;
  return out;
}

enum class ReportFormat { json, text };

inline std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "hardycover " << kVersion << "  mode " << r.config.value("mode", "?") << "  seed "
      << r.seed << "\n";
  for (const auto& c : r.checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
    if (c.residual) out << "  residual " << *c.residual << "  tol " << c.tolerance;
    out << "\n";
  }
  out << (r.pass() ? "all checks passed" : "some checks failed") << "  (" << r.elapsed_ms
      << " ms)\n";
  return out.str();
}

/// Writes the report to path, or returns it when path is empty.
inline std::string emit_report(const Report& r, ReportFormat format, const std::string& path) {
  std::string text = emit_report(r, format);
  if (!path.empty()) detail::write_file(path, text);
  return text;
}

}  // namespace hardycover
