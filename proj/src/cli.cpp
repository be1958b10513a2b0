#include "ccl/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ccl/arith.hpp"
#include "ccl/circle.hpp"
#include "ccl/coeffs.hpp"
#include "ccl/correlations.hpp"
#include "ccl/errors.hpp"
#include "ccl/spectral.hpp"
#include "ccl/version.hpp"
#include "ccl/voronoi.hpp"
#include "ccl/windows.hpp"

namespace ccl {

namespace {

// Reads typed keys from a JSON object and records the resolved value of each.
// finish() rejects anything the schema never asked for.
class ConfigReader {
 public:
  explicit ConfigReader(const Json& j) : j_(j) {
    require(j.is_object(), "config: top level must be a JSON object");
  }

  double real(const std::string& key, double fallback) {
    double v = fallback;
    if (const Json* x = find(key)) {
      require(x->is_number(), "config: '" + key + "' must be a number");
      v = x->get<double>();
      require(std::isfinite(v), "config: '" + key + "' must be finite");
    }
    resolved_[key] = v;
    return v;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    std::int64_t v = fallback;
    if (const Json* x = find(key)) v = as_integer(*x, key);
    resolved_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    std::string v = fallback;
    if (const Json* x = find(key)) {
      require(x->is_string(), "config: '" + key + "' must be a string");
      v = x->get<std::string>();
    }
    resolved_[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool fallback) {
    bool v = fallback;
    if (const Json* x = find(key)) {
      require(x->is_boolean(), "config: '" + key + "' must be a boolean");
      v = x->get<bool>();
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
    if (const Json* x = find(key)) {
      require(x->is_array() && !x->empty(), "config: '" + key + "' must be a non-empty array");
      fallback.clear();
      for (const auto& e : *x) {
        require(e.is_number(), "config: '" + key + "' entries must be numbers");
        fallback.push_back(e.get<double>());
      }
    }
    resolved_[key] = fallback;
    return fallback;
  }

  std::vector<std::int64_t> integers(const std::string& key, std::vector<std::int64_t> fallback) {
    if (const Json* x = find(key)) {
      require(x->is_array() && !x->empty(), "config: '" + key + "' must be a non-empty array");
      fallback.clear();
      for (const auto& e : *x) fallback.push_back(as_integer(e, key));
    }
    resolved_[key] = fallback;
    return fallback;
  }

  // Replaces a recorded value with its derived form (H' = 0 -> X/3 and the like).
  void resolve(const std::string& key, const Json& value) { resolved_[key] = value; }

  Json finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw ContractError("config: unknown key '" + key + "'");
    return resolved_;
  }

 private:
  const Json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  static std::int64_t as_integer(const Json& x, const std::string& key) {
    if (x.is_number_integer()) return x.get<std::int64_t>();
    require(x.is_number_float(), "config: '" + key + "' must be an integer");
    double d = x.get<double>();
    require(std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15, "config: '" + key + "' must be an integer");
    return static_cast<std::int64_t>(d);
  }

  const Json& j_;
  std::set<std::string> seen_;
  Json resolved_ = Json::object();
};

ExperimentConfig read_experiment(ConfigReader& r) {
  ExperimentConfig cfg;
  cfg.X = r.real("X", cfg.X);
  cfg.H = r.real("H", cfg.H);
  cfg.H_prime = r.real("H_prime", 0.0);
  auto w = r.integers("weights", {12, 12, 12});
  require(w.size() == 3, "config: 'weights' must list three weights");
  for (std::size_t i = 0; i < 3; ++i) cfg.weights[i] = static_cast<int>(w[i]);
  std::string window = r.text("window", "bump");
  require(window == "bump", "config: only the 'bump' window is available");
  cfg.a = parse_test_sequence(r.text("a", "ones"));
  std::int64_t seed = r.integer("seed", 1);
  require(seed >= 0, "config: 'seed' must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.validate();
  r.resolve("H_prime", cfg.resolved_H_prime());
  return cfg;
}

Report correlation_report(const std::string& kind, const Json& config) {
  ConfigReader r(config);
  Report rep;
  if (kind == "pair" || kind == "triple") {
    auto cfg = read_experiment(r);
    rep.config = r.finish();
    auto c = kind == "pair" ? shifted_pair_correlation(cfg) : triple_correlation(cfg);
    rep.results = {{"value", c.value},   {"bound", c.bound},
                   {"bound_ratio", c.bound_ratio}, {"a_norm", c.a_norm},
                   {"shifts", static_cast<double>(c.shifts)}};
  } else if (kind == "divisor") {
    auto cfg = read_experiment(r);
    std::int64_t d_max = r.integer("d_max", 1000);
    rep.config = r.finish();
    auto d = divisor_main_term(cfg, d_max);
    rep.results = {{"exact_lhs", d.exact_lhs},
                   {"main_term", d.main_term},
                   {"relative_deviation", d.relative_deviation},
                   {"last_block_share", d.last_block_share},
                   {"tail_bound", d.tail_bound}};
  } else if (kind == "wilton") {
    int weight = static_cast<int>(r.integer("weight", 12));
    auto xs = r.integers("x", {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16});
    int grid_factor = static_cast<int>(r.integer("grid_factor", 4));
    rep.config = r.finish();
    require(weight == 12 || weight == 16, "wilton: weight must be 12 or 16");
    std::vector<std::size_t> x;
    for (auto v : xs) {
      require(v >= 1, "wilton: x values must be positive");
      x.push_back(static_cast<std::size_t>(v));
    }
    auto lambda = eigenvalue_table(weight, *std::max_element(x.begin(), x.end()));
    auto w = wilton_exponent(lambda, x, grid_factor);
    rep.results = {{"slope", w.fit.slope}, {"intercept", w.fit.intercept}, {"rms_residual", w.fit.rms_residual}};
    rep.table.columns = {"x", "sup"};
    for (std::size_t i = 0; i < w.x.size(); ++i) rep.table.rows.push_back({w.x[i], w.sup[i]});
  } else if (kind == "gamma-star") {
    GammaStarConfig cfg;
    cfg.M1 = r.integer("M1", cfg.M1);
    cfg.M2 = r.integer("M2", cfg.M2);
    cfg.z = r.real("z", cfg.z);
    cfg.u1 = r.real("u1", cfg.u1);
    cfg.u2 = r.real("u2", cfg.u2);
    cfg.u3 = r.real("u3", cfg.u3);
    cfg.sign1 = static_cast<int>(r.integer("sign1", cfg.sign1));
    cfg.sign2 = static_cast<int>(r.integer("sign2", cfg.sign2));
    cfg.Zcal = r.real("Zcal", 0.0);
    cfg.apply_window = r.flag("apply_window", cfg.apply_window);
    int weight1 = static_cast<int>(r.integer("weight1", 12));
    int weight2 = static_cast<int>(r.integer("weight2", 12));
    require(cfg.M1 >= 1 && cfg.M2 >= 1, "gamma-star: M1, M2 must be at least 1");
    r.resolve("Zcal", cfg.resolved_Zcal());
    rep.config = r.finish();
    auto l1 = eigenvalue_table(weight1, static_cast<std::size_t>(2 * cfg.M1));
    auto l2 = eigenvalue_table(weight2, static_cast<std::size_t>(2 * cfg.M2));
    auto g = gamma_star_norm(cfg, l1, l2);
    rep.results = {{"norm2", g.norm2}, {"parseval", g.parseval}, {"bound", g.bound}, {"ratio", g.ratio}};
    rep.table.columns = {"b", "re", "im", "abs"};
    for (std::size_t i = 0; i < g.gamma.size(); ++i)
      rep.table.rows.push_back({static_cast<double>(g.b0 + static_cast<std::int64_t>(i)), g.gamma[i].real(),
                                g.gamma[i].imag(), std::abs(g.gamma[i])});
  } else if (kind == "pipeline") {
    PipelineConfig cfg;
    cfg.n = r.integer("n", cfg.n);
    cfg.H = r.real("H", cfg.H);
    cfg.H_prime = r.real("H_prime", cfg.H_prime);
    cfg.Q = r.real("Q", cfg.Q);
    cfg.delta = r.real("delta", 0.0);
    cfg.weight1 = static_cast<int>(r.integer("weight1", cfg.weight1));
    cfg.weight2 = static_cast<int>(r.integer("weight2", cfg.weight2));
    r.resolve("delta", cfg.resolved_delta());
    rep.config = r.finish();
    require(cfg.n >= 1 && cfg.H > 0.0, "pipeline: n and H must be positive");
    auto upto = static_cast<std::size_t>(cfg.n + static_cast<std::int64_t>(std::ceil(2.0 * cfg.H)) + 1);
    auto l1 = eigenvalue_table(cfg.weight1, upto);
    auto l2 = eigenvalue_table(cfg.weight2, static_cast<std::size_t>(cfg.n));
    auto p = pipeline_fidelity(cfg, l1, l2);
    rep.results = {{"E_direct", p.E_direct},
                   {"E_reconstructed", p.E_reconstructed},
                   {"imag_residual", p.imag_residual},
                   {"abs_error", p.abs_error},
                   {"relative_error", p.relative_error},
                   {"heuristic", p.heuristic},
                   {"delta", p.delta},
                   {"Lambda", p.Lambda},
                   {"intervals", static_cast<double>(p.intervals)}};
  } else if (kind == "scaling") {
    auto sk = parse_scaling_kind(r.text("scaling_kind", "pair"));
    double theta = r.real("theta", 0.75);
    auto X = r.reals("X", {4096.0, 8192.0, 16384.0, 32768.0, 65536.0});
    ExperimentConfig base;
    auto w = r.integers("weights", {12, 12, 12});
    require(w.size() == 3, "config: 'weights' must list three weights");
    for (std::size_t i = 0; i < 3; ++i) base.weights[i] = static_cast<int>(w[i]);
    base.a = parse_test_sequence(r.text("a", "ones"));
    std::int64_t seed = r.integer("seed", 1);
    require(seed >= 0, "config: 'seed' must be non-negative");
    base.seed = static_cast<std::uint64_t>(seed);
    rep.config = r.finish();
    auto s = scaling_study(X, theta, sk, base);
    rep.results = {{"bound_slope", s.bound_fit.slope}, {"degenerate", s.degenerate ? 1.0 : 0.0}};
    if (!s.degenerate) {
      rep.results["slope"] = s.fit.slope;
      rep.results["rms_residual"] = s.fit.rms_residual;
    }
    rep.table.columns = {"X", "H", "value", "bound"};
    for (std::size_t i = 0; i < s.X.size(); ++i) rep.table.rows.push_back({s.X[i], s.H[i], s.value[i], s.bound[i]});
  } else {
    throw ContractError("correlate: unknown kind '" + kind +
                        "' (pair, triple, divisor, wilton, gamma-star, pipeline, scaling)");
  }
  Json seed = rep.config.contains("seed") ? rep.config["seed"] : Json(nullptr);
  rep.provenance = provenance("correlate " + kind, seed);
  return rep;
}

// Writes to the path, or to out in the given format when no path was set.
void emit(const Report& rep, const std::string& path, ReportFormat fallback, std::ostream& out) {
  if (!path.empty()) {
    write_report(rep, path);
    return;
  }
  out << (fallback == ReportFormat::Csv ? to_csv(rep) : to_json(rep));
}

Json args_json(std::initializer_list<std::pair<const char*, Json>> items) {
  Json j = Json::object();
  for (const auto& [k, v] : items) j[k] = v;
  return j;
}

// "lo:hi:step" with inclusive end.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      require(used == item.size(), "grid: malformed number '" + item + "'");
    } catch (const std::logic_error&) {
      throw ContractError("grid: malformed number '" + item + "'");
    }
  }
  require(parts.size() == 3, "grid: expected lo:hi:step");
  double lo = parts[0], hi = parts[1], step = parts[2];
  require(step > 0.0 && hi >= lo, "grid: need step > 0 and hi >= lo");
  double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
  require(count <= 1e6, "grid: more than 10^6 points");
  std::vector<double> g;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) g.push_back(lo + step * static_cast<double>(i));
  return g;
}

std::string grid_text(const std::vector<double>& g) {
  return g.empty() ? "" : fmt::format("{}:{}:{}", g.front(), g.back(), g.size() > 1 ? g[1] - g[0] : 1.0);
}

}  // namespace

Report run_correlate(const std::string& kind, const Json& config) { return correlation_report(kind, config); }

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computational checks for shifted convolution sums of Hecke eigenvalues", "ccl"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Print a summary line to standard error");

  std::string out_path;
  auto out_option = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file; .csv selects CSV, anything else JSON");
  };

  int weight = 12;
  std::int64_t upto = 100;
  auto* coeffs = app.add_subcommand("coeffs", "Eigenform coefficients a(n) and lambda(n)");
  coeffs->add_option("--weight", weight, "12 or 16")->check(CLI::IsMember({12, 16}));
  coeffs->add_option("--upto", upto, "Largest n")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}));
  out_option(coeffs);

  std::int64_t ka = 1, kb = 1, cmax = 100;
  auto* klo = app.add_subcommand("kloosterman", "S(a, b; c) against the Weil bound for c <= cmax");
  klo->add_option("--a", ka)->required();
  klo->add_option("--b", kb)->required();
  klo->add_option("--cmax", cmax)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30));
  out_option(klo);

  std::vector<double> Qs;
  double delta_exp = 1.5;
  auto* circle = app.add_subcommand("circle", "Farey cover with bump weights: Lambda, L2 error, bound ratio");
  circle->add_option("--Q", Qs, "One or more scales")->required()->check(CLI::PositiveNumber);
  circle->add_option("--delta-exp", delta_exp, "delta = Q^-e, 1 <= e <= 2")->check(CLI::Range(1.0, 2.0));
  out_option(circle);

  std::int64_t vb = 1, vc = 1;
  double vN = 50.0;
  auto* voronoi = app.add_subcommand("voronoi", "Both sides of the Voronoi formula for sum lambda(n) e(bn/c) V(n/N)");
  voronoi->add_option("--weight", weight, "12 or 16")->check(CLI::IsMember({12, 16}));
  voronoi->add_option("--b", vb)->required();
  voronoi->add_option("--c", vc)->required()->check(CLI::PositiveNumber);
  voronoi->add_option("--N", vN)->required()->check(CLI::PositiveNumber);
  out_option(voronoi);

  std::string tkind;
  int kappa = 12;
  double tw = 1.0, tZ = 10.0, talpha = 0.0, ttau = 0.0;
  int tsign = 1;
  std::string grid;
  auto* transform = app.add_subcommand("transform", "W*, dot-phi or tilde-phi on a grid");
  transform->add_option("--kind", tkind)->required()->check(CLI::IsMember({"wstar", "dot", "tilde"}));
  transform->add_option("--kappa", kappa, "Weight for wstar");
  transform->add_option("--w", tw, "Shift w for wstar (grid runs over z >= 4|w|)");
  transform->add_option("--Z", tZ, "Kernel scale for dot and tilde")->check(CLI::PositiveNumber);
  transform->add_option("--alpha", talpha, "Kernel frequency");
  transform->add_option("--tau", ttau, "Kernel twist");
  transform->add_option("--sign", tsign)->check(CLI::IsMember({-1, 1}));
  transform->add_option("--grid", grid, "lo:hi:step over z (wstar), k (dot) or t (tilde)")->required();
  out_option(transform);

  std::int64_t mmax = 10;
  auto* petersson = app.add_subcommand("petersson", "Geometric side P_k(m, n) with ratio residuals");
  petersson->add_option("--weight", weight, "Even weight >= 12")->check(CLI::Range(12, 200));
  petersson->add_option("--mmax", mmax)->check(CLI::Range(std::int64_t{1}, std::int64_t{200}));
  petersson->add_option("--cmax", cmax)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 24));
  out_option(petersson);

  int kmax = 26;
  std::int64_t sM = 10, trials = 1, seed = 1;
  auto* sieve = app.add_subcommand("sieve", "Large sieve ratio for Gaussian coefficient vectors on [M, 2M]");
  sieve->add_option("--kmax", kmax)->check(CLI::Range(12, 26));
  sieve->add_option("--M", sM)->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  sieve->add_option("--trials", trials)->check(CLI::Range(std::int64_t{1}, std::int64_t{1000}));
  sieve->add_option("--seed", seed)->check(CLI::NonNegativeNumber);
  out_option(sieve);

  std::string ckind, config_path, csv_path;
  auto* correlate = app.add_subcommand("correlate", "Correlation experiments from a JSON config");
  correlate->add_option("--kind", ckind)
      ->required()
      ->check(CLI::IsMember({"pair", "triple", "divisor", "wilton", "gamma-star", "pipeline", "scaling"}));
  correlate->add_option("--config", config_path, "JSON config; omitted keys take defaults")->check(CLI::ExistingFile);
  out_option(correlate);
  correlate->add_option("--csv", csv_path, "Also write the row table (or results) as CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (coeffs->parsed()) {
      auto form = make_eigenform(weight, static_cast<std::size_t>(upto));
      Report rep;
      rep.config = args_json({{"weight", weight}, {"upto", upto}});
      rep.table.columns = {"n", "a", "lambda"};
      for (std::size_t n = 1; n <= static_cast<std::size_t>(upto); ++n)
        rep.table.rows.push_back({static_cast<double>(n), form.a[n].get_str(), form.lambda[n]});
      rep.provenance = provenance("coeffs");
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (klo->parsed()) {
      Report rep;
      rep.config = args_json({{"a", ka}, {"b", kb}, {"cmax", cmax}});
      rep.table.columns = {"c", "S", "weil_bound"};
      for (std::int64_t c = 1; c <= cmax; ++c)
        rep.table.rows.push_back({static_cast<double>(c), kloosterman(ka, kb, c), weil_bound(ka, kb, c)});
      rep.provenance = provenance("kloosterman");
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (circle->parsed()) {
      Report rep;
      rep.config = args_json({{"Q", Qs}, {"delta_exp", delta_exp}, {"w0", "bump"}});
      rep.table.columns = {"Q", "delta", "Lambda", "intervals", "l2_error", "bound_ratio"};
      auto bump = SmoothWindow::bump();
      auto w0 = [&bump](double x) { return bump(x); };
      for (double Q : Qs) {
        auto cover = build_cover(w0, Q, std::pow(Q, -delta_exp));
        rep.table.rows.push_back({Q, cover.delta(), cover.Lambda(), static_cast<double>(cover.interval_count()),
                                  cover.l2_error(), l2_bound_ratio(cover)});
      }
      rep.provenance = provenance("circle");
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (voronoi->parsed()) {
      VoronoiInstance inst;
      inst.weight = weight;
      inst.b = vb;
      inst.c = vc;
      inst.N = vN;
      auto lambda = eigenvalue_table(weight, required_coefficients(inst, true));
      inst.lambda = lambda;
      auto v = voronoi_check(inst, true);
      Report rep;
      rep.config = args_json({{"weight", weight}, {"b", vb}, {"c", vc}, {"N", vN}, {"V", "bump"}});
      rep.results = {{"lhs_re", v.lhs.real()},
                     {"lhs_im", v.lhs.imag()},
                     {"rhs_re", v.rhs.value.real()},
                     {"rhs_im", v.rhs.value.imag()},
                     {"relative_error", v.relative_error},
                     {"doubling_change", v.doubling_change},
                     {"rhs_terms", static_cast<double>(v.rhs.terms)},
                     {"truncation_estimate", v.rhs.truncation_estimate},
                     {"quadrature_error", v.rhs.quadrature_error}};
      rep.provenance = provenance("voronoi");
      emit(rep, out_path, ReportFormat::Json, out);
    } else if (transform->parsed()) {
      auto g = parse_grid(grid);
      Report rep;
      TransformKernel kernel;
      kernel.Z = tZ;
      kernel.alpha = talpha;
      kernel.tau = ttau;
      kernel.sign = tsign;
      if (tkind == "wstar") {
        rep.config = args_json({{"kind", tkind}, {"kappa", kappa}, {"w", tw}, {"grid", grid_text(g)}});
        rep.table.columns = {"z", "re", "im", "abs"};
      } else {
        rep.config = args_json({{"kind", tkind}, {"Z", tZ}, {"alpha", talpha}, {"tau", ttau}, {"sign", tsign},
                                {"grid", grid_text(g)}});
        rep.table.columns = {tkind == "dot" ? "k" : "t", "re", "im", "abs"};
      }
      for (double x : g) {
        std::complex<double> v;
        if (tkind == "wstar") {
          v = w_star(SmoothWindow::bump(), kappa, x, tw);
        } else if (tkind == "dot") {
          require(x == std::round(x), "transform: dot grid must be integral");
          v = kuznetsov_transform_dot(kernel, static_cast<int>(x));
        } else {
          v = kuznetsov_transform_tilde(kernel, x);
        }
        rep.table.rows.push_back({x, v.real(), v.imag(), std::abs(v)});
      }
      rep.provenance = provenance("transform");
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (petersson->parsed()) {
      require(weight % 2 == 0, "petersson: weight must be even");
      std::vector<std::int64_t> idx;
      for (std::int64_t m = 1; m <= mmax; ++m) idx.push_back(m);
      PeterssonTable table({weight}, idx, cmax);
      bool eigen = weight == 12 || weight == 16;
      std::vector<double> lambda;
      if (eigen) lambda = eigenvalue_table(weight, static_cast<std::size_t>(mmax));
      double p11 = table.value(0, 0, 0);
      Report rep;
      rep.config = args_json({{"weight", weight}, {"mmax", mmax}, {"cmax", cmax}});
      rep.table.columns = {"m", "n", "P", "tail_bound", "r1", "r2"};
      double r1_max = 0.0, r2_max = 0.0;
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) {
          double p = table.value(0, i, j);
          double r1 = std::abs(p * p11 - table.value(0, i, 0) * table.value(0, j, 0));
          r1_max = std::max(r1_max, r1);
          Cell r2 = std::string();
          if (eigen) {
            double v = std::abs(p / p11 - lambda[i + 1] * lambda[j + 1]);
            r2_max = std::max(r2_max, v);
            r2 = v;
          }
          rep.table.rows.push_back(
              {static_cast<double>(idx[i]), static_cast<double>(idx[j]), p, table.tail_bound(0, i, j), r1, r2});
        }
      rep.results = {{"r1_max", r1_max}};
      if (eigen) rep.results["r2_max"] = r2_max;
      rep.provenance = provenance("petersson");
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (sieve->parsed()) {
      std::mt19937_64 gen(static_cast<std::uint64_t>(seed));
      std::normal_distribution<double> normal;
      Report rep;
      rep.config = args_json({{"kmax", kmax}, {"M", sM}, {"trials", trials}, {"seed", seed}});
      rep.table.columns = {"trial", "lhs", "norm2", "ratio", "c_max", "tail_bound"};
      double worst = 0.0;
      for (std::int64_t t = 0; t < trials; ++t) {
        std::vector<std::complex<double>> a(static_cast<std::size_t>(sM + 1));
        for (auto& v : a) {
          double re = normal(gen);
          v = {re, normal(gen)};
        }
        auto s = large_sieve_ratio(kmax, sM, a);
        worst = std::max(worst, s.ratio);
        rep.table.rows.push_back({static_cast<double>(t), s.lhs, s.norm2, s.ratio, static_cast<double>(s.c_max),
                                  s.tail_bound});
      }
      rep.results = {{"max_ratio", worst}};
      rep.provenance = provenance("sieve", seed);
      emit(rep, out_path, ReportFormat::Csv, out);
    } else if (correlate->parsed()) {
      Json config = Json::object();
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        try {
          config = Json::parse(in);
        } catch (const Json::exception& e) {
          throw ContractError(std::string("config: invalid JSON: ") + e.what());
        }
      }
      Report rep = run_correlate(ckind, config);
      emit(rep, out_path, ReportFormat::Json, out);
      if (!csv_path.empty()) write_report(rep, csv_path, ReportFormat::Csv);
    }
    if (verbosity > 0) err << "ccl: " << app.get_subcommands().front()->get_name() << " done\n";
    return 0;
  } catch (const ContractError& e) {
    err << "ccl: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "ccl: numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "ccl: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ccl: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ccl
