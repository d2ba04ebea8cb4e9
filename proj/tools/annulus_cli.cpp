#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "annulus/biharmonic.hpp"
#include "annulus/eigensolve.hpp"
#include "annulus/oracle.hpp"
#include "annulus/secular.hpp"
#include "annulus/verify.hpp"

using namespace annulus;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string problem = "I";
  double m = 1.0;
  int d = 2;
  std::string n = "min";
  std::string a, b;
  double R = 0.0;
  bool json_out = false;
  bool csv_out = false;
  bool force = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--problem", c.problem, "I (weighted L2) or II (weighted gradient)")
      ->check(CLI::IsMember({"I", "II"}));
  cmd->add_option("--m", c.m, "operator parameter m >= 1 (plane only)");
  cmd->add_option("--d", c.d, "dimension")->check(CLI::Range(2, 64));
  cmd->add_option("--n", c.n, "mode index or 'min'");
  cmd->add_option("--a", c.a, "inner radius (number or e^x)");
  cmd->add_option("--b", c.b, "outer radius (number or e^x)");
  cmd->add_option("--R", c.R, "conformal class log(b/a), with a = 1");
  cmd->add_flag("--json", c.json_out, "emit a JSON run record");
  cmd->add_flag("--csv", c.csv_out, "emit CSV");
  cmd->add_flag("--force", c.force, "run outside the proven regime and flag the results");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

double parse_radius(const std::string& s) {
  if (s.rfind("e^", 0) == 0) return std::exp(std::stod(s.substr(2)));
  if (s == "e") return std::exp(1.0);
  return std::stod(s);
}

Geometry geometry_of(const Common& c, int d) {
  if (c.R > 0.0) {
    if (!c.a.empty() || !c.b.empty()) throw CLI::ValidationError("geometry", "give either --R or --a/--b");
    return Geometry::from_R(c.R, d);
  }
  if (c.a.empty() || c.b.empty()) throw CLI::ValidationError("geometry", "need --R or both --a and --b");
  return Geometry(parse_radius(c.a), parse_radius(c.b), d);
}

Problem problem_of(const Common& c) { return c.problem == "I" ? Problem::WeightedL2 : Problem::WeightedGradient; }

std::string num(double v) { return fmt::format("{:.17g}", v); }
std::string human(double v) { return fmt::format("{:.6g}", v); }

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json record(const std::string& command, json params, json results) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["parameters"] = std::move(params);
  j["results"] = std::move(results);
  j["version"] = kVersion;
  j["timestamp"] = timestamp();
  return j;
}

json params_json(const Common& c, const Geometry& g) {
  return json{{"problem", c.problem}, {"m", c.m}, {"d", g.d}, {"n", c.n},
              {"a", g.a},             {"b", g.b}, {"R", g.conformal_class()}, {"force", c.force}};
}

json to_json(const EigenResult& r) {
  return json{{"problem", to_string(r.problem)},
              {"m", r.m},
              {"d", r.geometry.d},
              {"n", r.mode},
              {"R", r.geometry.conformal_class()},
              {"value", r.value},
              {"theta_star", r.theta_star},
              {"regime", to_string(r.regime)},
              {"lower_bound", r.lower_bound},
              {"upper_bound", r.upper_bound},
              {"proven", r.bracket_proven}};
}

const char* kEigenHeader = "problem,m,d,n,R,value,theta_star,regime,lower_bound,upper_bound,proven";

std::string csv_row(const EigenResult& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", to_string(r.problem), num(r.m), r.geometry.d, r.mode,
                     num(r.geometry.conformal_class()), num(r.value), num(r.theta_star), to_string(r.regime),
                     num(r.lower_bound), num(r.upper_bound), r.bracket_proven ? 1 : 0);
}

void print_human(const EigenResult& r) {
  const std::string who = r.geometry.d == 2 ? fmt::format("m={}", human(r.m)) : fmt::format("d={}", r.geometry.d);
  fmt::print("problem {}  {}  n={}  R={}\n", to_string(r.problem), who, r.mode, human(r.geometry.conformal_class()));
  fmt::print("  value      {}\n", human(r.value));
  fmt::print("  theta*     {}\n", human(r.theta_star));
  fmt::print("  bounds     ({}, {})\n", human(r.lower_bound), human(r.upper_bound));
  fmt::print("  regime     {}\n", to_string(r.regime));
  fmt::print("  proven     {}\n", r.bracket_proven ? "yes" : "no");
}

std::vector<EigenResult> solve(const Common& c, const Geometry& g, const std::string& n) {
  const Problem p = problem_of(c);
  std::vector<EigenResult> out;
  if (g.d == 2) {
    if (n == "min") {
      if (p == Problem::WeightedL2) {
        if (c.m != std::round(c.m)) throw CLI::ValidationError("--m", "minimisation over modes needs integer m");
        out.push_back(lambda_min_d2(int(c.m), g));
      } else {
        if (c.m != std::round(c.m)) throw CLI::ValidationError("--m", "minimisation over modes needs integer m");
        const auto mm = mu_min_d2(int(c.m), g);
        out.push_back(mm.best);
        if (!mm.ordered) {
          for (const auto& cand : {mm.radial, mm.matched})
            if (cand && cand->mode != mm.best.mode) out.push_back(*cand);
        }
      }
    } else {
      const int k = std::stoi(n);
      out.push_back(p == Problem::WeightedL2 ? lambda_mn(c.m, k, g) : mu_mn(c.m, k, g));
    }
  } else {
    if (n == "min")
      out.push_back(p == Problem::WeightedL2 ? lambda_min_dimd(g) : mu_min_dimd(g));
    else {
      const int k = std::stoi(n);
      out.push_back(p == Problem::WeightedL2 ? lambda_n_dimd(k, g) : mu_n_dimd(k, g));
    }
  }
  return out;
}

int cmd_eigen(const Common& c) {
  const Geometry g = geometry_of(c, c.d);
  const auto res = solve(c, g, c.n);
  const bool proven = std::all_of(res.begin(), res.end(), [](const EigenResult& r) { return r.bracket_proven; });
  if (!proven && !c.force)
    throw HypothesisViolation("outside the proven regime (bracket or threshold condition fails); rerun with --force");
  if (c.json_out) {
    json results = json::array();
    for (const auto& r : res) results.push_back(to_json(r));
    std::cout << record("eigen", params_json(c, g), results).dump(2) << "\n";
  } else if (c.csv_out) {
    std::cout << kEigenHeader << "\n";
    for (const auto& r : res) std::cout << csv_row(r) << "\n";
  } else {
    for (const auto& r : res) print_human(r);
    if (res.size() > 1) fmt::print("note: candidates reported without a certified winner\n");
  }
  return 0;
}

struct SweepArgs {
  std::string axis = "R";
  std::vector<double> values;
  double from = 5.0, to = 200.0;
  int steps = 40;
};

int cmd_sweep(const Common& c, const SweepArgs& s) {
  std::vector<double> pts = s.values;
  if (pts.empty()) {
    const int k = std::max(1, s.steps);
    for (int i = 0; i <= k; ++i) pts.push_back(s.from + (s.to - s.from) * i / k);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  struct Row {
    double x = 0.0;
    std::vector<EigenResult> res;
    std::string error;
  };
  std::vector<Row> rows(pts.size());
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      Row& row = rows[i];
      row.x = pts[i];
      try {
        Common cc = c;
        int d = c.d;
        std::string n = c.n;
        if (s.axis == "R") {
          cc.R = pts[i];
          cc.a.clear();
          cc.b.clear();
        } else if (s.axis == "m") {
          cc.m = pts[i];
        } else if (s.axis == "n") {
          n = std::to_string(int(std::lround(pts[i])));
        } else if (s.axis == "d") {
          d = int(std::lround(pts[i]));
        }
        const Geometry g = geometry_of(cc, d);
        row.res = solve(cc, g, n);
        for (auto& r : row.res)
          if (!r.bracket_proven && !c.force) row.error = "unproven";
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int nt = std::clamp(c.threads, 1, std::max<int>(1, int(pts.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w) pool.emplace_back(work, int(pts.size()) * w / nt, int(pts.size()) * (w + 1) / nt);
  for (auto& t : pool) t.join();

  if (c.json_out) {
    json results = json::array();
    for (auto& row : rows) {
      json j{{"axis_value", row.x}, {"error", row.error}, {"results", json::array()}};
      for (auto& r : row.res) j["results"].push_back(to_json(r));
      results.push_back(j);
    }
    json params = {{"axis", s.axis}, {"problem", c.problem}, {"m", c.m}, {"d", c.d}, {"n", c.n}, {"R", c.R}};
    std::cout << record("sweep", params, results).dump(2) << "\n";
  } else {
    std::cout << "sweep_" << s.axis << "," << kEigenHeader << ",error\n";
    for (auto& row : rows) {
      if (row.res.empty()) {
        std::cout << num(row.x) << ",,,,,,,,,,,," << '"' << row.error << '"' << "\n";
        continue;
      }
      for (auto& r : row.res) std::cout << num(row.x) << "," << csv_row(r) << "," << row.error << "\n";
    }
  }
  return 0;
}

int cmd_oracle(const Common& c, std::vector<int> grids) {
  const Geometry g = geometry_of(c, c.d);
  if (grids.empty()) grids = {2000};
  const auto res = solve(c, g, c.n);
  const EigenResult& r = res.front();
  if (!r.bracket_proven && !c.force)
    throw HypothesisViolation("secular value outside the proven regime; rerun with --force");
  const bool exact = g.d == 4 && r.mode == 0 && r.problem == Problem::WeightedGradient;
  const double reference = exact ? mu0_dim4_exact(g) : r.value;

  struct Line {
    int N;
    double value, gap, order;
  };
  std::vector<Line> lines;
  for (int N : grids) {
    const double v = oracle_eigenvalue(r.problem, r.m, r.mode, g, N);
    lines.push_back({N, v, std::abs(v - reference) / std::abs(reference), std::nan("")});
  }
  std::sort(lines.begin(), lines.end(), [](auto& x, auto& y) { return x.N < y.N; });
  for (size_t i = 1; i < lines.size(); ++i)
    lines[i].order = std::log(lines[i - 1].gap / lines[i].gap) / std::log(double(lines[i].N) / lines[i - 1].N);

  if (c.json_out) {
    json rows = json::array();
    for (auto& l : lines)
      rows.push_back({{"N", l.N}, {"oracle", l.value}, {"rel_gap", l.gap},
                      {"order", std::isnan(l.order) ? json(nullptr) : json(l.order)}});
    json results = {{"secular", to_json(r)}, {"reference", reference}, {"exact", exact}, {"grid", rows}};
    std::cout << record("oracle", params_json(c, g), results).dump(2) << "\n";
  } else if (c.csv_out) {
    std::cout << "N,secular,reference,oracle,rel_gap,order\n";
    for (auto& l : lines)
      std::cout << fmt::format("{},{},{},{},{},{}\n", l.N, num(r.value), num(reference), num(l.value), num(l.gap),
                               std::isnan(l.order) ? "" : num(l.order));
  } else {
    print_human(r);
    if (exact) fmt::print("  exact      {}\n", human(reference));
    fmt::print("  {:>6}  {:>14}  {:>10}  {:>6}\n", "N", "oracle", "rel gap", "order");
    for (auto& l : lines)
      fmt::print("  {:>6}  {:>14}  {:>10}  {:>6}\n", l.N, human(l.value), human(l.gap),
                 std::isnan(l.order) ? "" : fmt::format("{:.3f}", l.order));
  }
  return 0;
}

struct VerifyArgs {
  std::string name;
  InequalityParams p;
  int trials = 1000;
  std::uint64_t seed = 1;
  bool tight = false;
  int grid = 2000;
};

int cmd_verify(const Common& c, VerifyArgs v) {
  v.p.m = c.m;
  v.p.d = c.d;
  const int gd = (v.name == "theorem-C-I" || v.name == "theorem-C-II") ? c.d : (v.name == "bilap-weights-d4" ? 4 : 2);
  const Geometry g = geometry_of(c, gd);
  VerifyReport rep;
  try {
    rep = check_inequality(v.name, g, v.p, v.trials, v.seed, c.force, c.threads);
  } catch (const HypothesisError& e) {
    throw HypothesisViolation(e.what());
  }
  std::optional<TightnessReport> tr;
  if (v.tight) tr = tightness(v.name, g, v.p, v.grid);

  auto nan_or = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  if (c.json_out) {
    json params = {{"name", v.name}, {"m", v.p.m},         {"d", v.p.d},         {"beta", v.p.beta},
                   {"gamma", v.p.gamma}, {"alpha", v.p.alpha}, {"R", rep.R},      {"trials", v.trials},
                   {"seed", v.seed},     {"force", c.force}};
    json results = {{"violations", rep.violations},
                    {"min_ratio", nan_or(rep.min_ratio)},
                    {"min_quotient", nan_or(rep.min_quotient)},
                    {"constant", rep.constant},
                    {"max_effective_constant", rep.max_effective_constant},
                    {"worst_trial", rep.worst_trial},
                    {"worst_mode", rep.worst_mode},
                    {"hypothesis", rep.hypothesis},
                    {"flagged", rep.forced}};
    if (tr)
      results["tightness"] = {{"mode", tr->mode},   {"eigenvalue", tr->eigenvalue}, {"constant", tr->constant},
                              {"ratio", tr->ratio}, {"expected", tr->expected},     {"rel_gap", tr->rel_gap}};
    std::cout << record("verify", params, results).dump(2) << "\n";
  } else if (c.csv_out) {
    std::cout << "name,R,trials,seed,violations,min_ratio,min_quotient,constant,max_effective_constant,hypothesis\n";
    std::cout << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", v.name, num(rep.R), v.trials, v.seed, rep.violations,
                             num(rep.min_ratio), num(rep.min_quotient), num(rep.constant),
                             num(rep.max_effective_constant), rep.hypothesis ? 1 : 0);
  } else {
    fmt::print("{}  R={}  trials={}  seed={}{}\n", v.name, human(rep.R), v.trials, v.seed,
               rep.forced ? "  [outside hypothesis, exploratory]" : "");
    fmt::print("  violations   {}\n", rep.violations);
    fmt::print("  min ratio    {}\n", human(rep.min_ratio));
    if (std::isfinite(rep.min_quotient)) fmt::print("  min quotient {}\n", human(rep.min_quotient));
    if (rep.max_effective_constant > 0) fmt::print("  max C_eff    {}\n", human(rep.max_effective_constant));
    if (tr)
      fmt::print("  tightness    mode {}  ratio {}  expected {}  gap {}\n", tr->mode, human(tr->ratio),
                 human(tr->expected), human(tr->rel_gap));
  }
  return 0;
}

int cmd_biharmonic(const Common& c, const std::string& file, double gamma, double beta) {
  std::ifstream in(file);
  if (!in) throw CLI::ValidationError("--coeffs", "cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  const BiharmonicFun psi = BiharmonicFun::parse(ss.str());
  const Geometry g = geometry_of(c, 2);
  const auto rep = check_interpolation(psi, g, beta, gamma);
  if (!rep.hypothesis && !c.force)
    throw HypothesisViolation("conformal class below the interpolation hypothesis; rerun with --force");

  static const char* names[] = {"grad_weighted", "psi_weighted", "laplacian_sq", "dz2_sq", "hessian_sq", "dzzbar_sq"};
  struct SideRows {
    const char* side;
    Eigen::Array<double, 6, 1> closed, quad;
  };
  std::vector<SideRows> sides;
  for (Side s : {Side::Outer, Side::Inner})
    sides.push_back({s == Side::Outer ? "outer" : "inner", weighted_norms(psi, g, gamma, s).as_array(),
                     weighted_norms_quadrature(psi, g, gamma, s).as_array()});

  if (c.json_out) {
    json table = json::array();
    for (auto& s : sides)
      for (int i = 0; i < 6; ++i)
        table.push_back({{"side", s.side}, {"integral", names[i]}, {"closed_form", s.closed(i)},
                         {"quadrature", s.quad(i)}});
    json results = {{"norms", table},
                    {"interpolation",
                     {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"ratio", rep.ratio}, {"gamma_effective", rep.gamma_effective},
                      {"hypothesis", rep.hypothesis}}}};
    json params = {{"coeffs", file}, {"gamma", gamma}, {"beta", beta}, {"a", g.a}, {"b", g.b}, {"R", g.conformal_class()}};
    std::cout << record("biharmonic", params, results).dump(2) << "\n";
  } else if (c.csv_out) {
    std::cout << "side,integral,closed_form,quadrature\n";
    for (auto& s : sides)
      for (int i = 0; i < 6; ++i)
        std::cout << fmt::format("{},{},{},{}\n", s.side, names[i], num(s.closed(i)), num(s.quad(i)));
  } else {
    fmt::print("{:<6} {:<14} {:>14} {:>14} {:>10}\n", "side", "integral", "closed form", "quadrature", "rel diff");
    for (auto& s : sides)
      for (int i = 0; i < 6; ++i) {
        const double diff = std::abs(s.closed(i) - s.quad(i)) / std::max(std::abs(s.quad(i)), 1e-300);
        fmt::print("{:<6} {:<14} {:>14} {:>14} {:>10}\n", s.side, names[i], human(s.closed(i)), human(s.quad(i)),
                   human(diff));
      }
    fmt::print("interpolation: lhs {}  rhs {}  Gamma_eff {}  hypothesis {}\n", human(rep.lhs), human(rep.rhs),
               human(rep.gamma_effective), rep.hypothesis ? "holds" : "fails");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clamped eigenvalue problems on annuli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common eigen_c, sweep_c, oracle_c, verify_c, bih_c;
  auto* eigen = app.add_subcommand("eigen", "first eigenvalue of one mode or over all modes");
  add_common(eigen, eigen_c);

  auto* sweep = app.add_subcommand("sweep", "CSV matrix over one parameter axis");
  add_common(sweep, sweep_c);
  SweepArgs sa;
  sweep->add_option("--axis", sa.axis, "R, n, m or d")->check(CLI::IsMember({"R", "n", "m", "d"}));
  sweep->add_option("--values", sa.values, "explicit axis values")->delimiter(',');
  sweep->add_option("--from", sa.from, "first axis value");
  sweep->add_option("--to", sa.to, "last axis value");
  sweep->add_option("--steps", sa.steps, "number of intervals");

  auto* oracle = app.add_subcommand("oracle", "finite-difference cross-check");
  add_common(oracle, oracle_c);
  std::vector<int> grids;
  oracle->add_option("--grid", grids, "grid sizes N")->check(CLI::Range(50, 10000000));

  auto* verify = app.add_subcommand("verify", "fuzz one registered inequality");
  add_common(verify, verify_c);
  VerifyArgs va;
  verify->add_option("name", va.name, "inequality name")->required();
  verify->add_option("--trials", va.trials, "random test functions")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", va.seed, "base seed");
  verify->add_option("--beta", va.p.beta, "beta");
  verify->add_option("--gamma", va.p.gamma, "gamma");
  verify->add_option("--alpha", va.p.alpha, "alpha");
  verify->add_flag("--tightness", va.tight, "also inject the oracle minimiser");
  verify->add_option("--grid", va.grid, "oracle grid for --tightness");

  auto* bih = app.add_subcommand("biharmonic", "closed-form integrals and the interpolation report");
  add_common(bih, bih_c);
  std::string coeffs;
  double gamma = 0.75, beta = 0.75;
  bih->add_option("--coeffs", coeffs, "coefficient file")->required();
  bih->add_option("--gamma", gamma, "gamma");
  bih->add_option("--beta", beta, "beta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eigen) return cmd_eigen(eigen_c);
    if (*sweep) return cmd_sweep(sweep_c, sa);
    if (*oracle) return cmd_oracle(oracle_c, grids);
    if (*verify) return cmd_verify(verify_c, va);
    if (*bih) return cmd_biharmonic(bih_c, coeffs, gamma, beta);
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
