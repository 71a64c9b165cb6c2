#include "seqspace/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "seqspace/basis.hpp"
#include "seqspace/duals.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/sampling.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/specparse.hpp"
#include "seqspace/transform.hpp"
#include "seqspace/triangles.hpp"

namespace seqspace::cli {

using nlohmann::ordered_json;
using specs::format_double;
using specs::SpecError;

std::string RunConfig::emit() const {
  std::ostringstream os;
  os << "band = " << format_double(band.r()) << "," << format_double(band.s()) << ","
     << format_double(band.t()) << "\n";
  os << "lambda = " << lambda_spec << "\n";
  os << "eps_exact = " << format_double(tol.eps_exact) << "\n";
  os << "eps_tail = " << format_double(tol.eps_tail) << "\n";
  os << "window = " << tol.window << "\n";
  os << "n_default = " << tol.n_default << "\n";
  os << "growth_ratio = " << format_double(tol.growth_ratio) << "\n";
  os << "schedule = ";
  for (size_t i = 0; i < schedule.size(); ++i) os << (i ? "," : "") << schedule[i];
  os << "\n";
  os << "format = " << format << "\n";
  os << "seed = " << seed << "\n";
  return os.str();
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(line, "config lines are key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "band") {
        std::istringstream vs(value);
        double r, s, t;
        char c1, c2;
        if (!(vs >> r >> c1 >> s >> c2 >> t) || c1 != ',' || c2 != ',')
          throw SpecError(value, "band is r,s,t");
        cfg.band = BandParams(r, s, t);
      } else if (key == "lambda") {
        cfg.lambda_spec = value;
      } else if (key == "eps_exact") {
        cfg.tol.eps_exact = std::stod(value);
      } else if (key == "eps_tail") {
        cfg.tol.eps_tail = std::stod(value);
      } else if (key == "window") {
        cfg.tol.window = std::stoll(value);
      } else if (key == "n_default") {
        cfg.tol.n_default = std::stoll(value);
      } else if (key == "growth_ratio") {
        cfg.tol.growth_ratio = std::stod(value);
      } else if (key == "schedule") {
        cfg.schedule.clear();
        std::istringstream vs(value);
        std::string part;
        while (std::getline(vs, part, ',')) cfg.schedule.push_back(std::stoll(part));
      } else if (key == "format") {
        if (value != "json" && value != "csv" && value != "table")
          throw SpecError(value, "format is json | csv | table");
        cfg.format = value;
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else {
        throw SpecError(line, "unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw SpecError(line, e.what());
    }
  }
  cfg.tol.validate();
  return cfg;
}

Tolerances tolerances_from_env(Tolerances base) {
  auto getd = [](const char* name, double fallback) {
    const char* v = std::getenv(name);
    return v ? std::stod(v) : fallback;
  };
  auto geti = [](const char* name, Index fallback) {
    const char* v = std::getenv(name);
    return v ? static_cast<Index>(std::stoll(v)) : fallback;
  };
  base.eps_exact = getd("SEQSPACE_EPS_EXACT", base.eps_exact);
  base.eps_tail = getd("SEQSPACE_EPS_TAIL", base.eps_tail);
  base.window = geti("SEQSPACE_WINDOW", base.window);
  base.n_default = geti("SEQSPACE_N_DEFAULT", base.n_default);
  base.growth_ratio = getd("SEQSPACE_GROWTH_RATIO", base.growth_ratio);
  base.validate();
  return base;
}

namespace {

ordered_json diagnostic_json(const SpaceTag& tag, const Diagnostic& d) {
  ordered_json j;
  j["space"] = tag.str();
  j["verdict"] = std::string(to_string(d.verdict.kind));
  j["N"] = d.N;
  if (d.tail_sup) j["tail_sup"] = *d.tail_sup;
  if (d.cauchy_gap) j["cauchy_gap"] = *d.cauchy_gap;
  if (d.psum_tail_increment) j["psum_tail_increment"] = *d.psum_tail_increment;
  if (d.limit_estimate) j["limit_estimate"] = *d.limit_estimate;
  ordered_json ev;
  for (const auto& [k, val] : d.verdict.evidence) ev[k] = val;
  j["evidence"] = std::move(ev);
  return j;
}

ordered_json condition_json(const duals::ConditionRecord& c) {
  ordered_json j;
  j["id"] = c.id;
  j["statement"] = c.statement;
  j["schedule"] = c.schedule;
  j["values"] = c.values;
  j["verdict"] = std::string(to_string(c.verdict));
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

ordered_json inputs_json(const RunConfig& cfg, const CommandArgs& args) {
  ordered_json j;
  j["band"] = {cfg.band.r(), cfg.band.s(), cfg.band.t()};
  j["lambda"] = cfg.lambda_spec;
  ordered_json tolj;
  tolj["eps_exact"] = cfg.tol.eps_exact;
  tolj["eps_tail"] = cfg.tol.eps_tail;
  tolj["window"] = cfg.tol.window;
  tolj["n_default"] = cfg.tol.n_default;
  tolj["growth_ratio"] = cfg.tol.growth_ratio;
  j["tolerances"] = std::move(tolj);
  j["schedule"] = cfg.schedule;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  ordered_json a;
  if (args.seq) a["seq"] = *args.seq;
  if (args.a_spec) a["a"] = *args.a_spec;
  if (args.matrix) a["A"] = *args.matrix;
  if (args.space) a["space"] = *args.space;
  if (args.base_space) a["base_space"] = true;
  if (args.N) a["N"] = *args.N;
  if (args.theorem) a["theorem"] = *args.theorem;
  if (args.part != 1) a["part"] = args.part;
  if (args.dual) a["dual"] = *args.dual;
  if (args.conditions) a["conditions"] = *args.conditions;
  if (args.p_exp) a["p"] = *args.p_exp;
  if (!args.basis_ks.empty()) a["k"] = args.basis_ks;
  if (args.mmax) a["mmax"] = *args.mmax;
  if (args.witness_name) a["witness"] = *args.witness_name;
  j["args"] = std::move(a);
  return j;
}

const std::string& require(const std::optional<std::string>& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string("missing required argument: ") + what);
  return *v;
}

/// Validates the configured lambda as a semantic precondition of a command.
LambdaSeq checked_lambda(const RunConfig& cfg, Index N, Report& rep) {
  LambdaSeq lam = specs::parse_lambda_spec(cfg.lambda_spec);
  Verdict v = validate_lambda(lam, std::min<Index>(N, 4096), cfg.tol);
  if (v.kind == VerdictKind::NonMember)
    throw PreconditionError("lambda spec '" + cfg.lambda_spec +
                            "' is certified non-admissible (monotonicity/positivity)");
  if (v.kind == VerdictKind::Inconclusive)
    rep.warnings.push_back("lambda growth heuristic inconclusive at N=" +
                           std::to_string(v.truncation) + "; results hold at truncation only");
  return lam;
}

ordered_json sequence_results(const RealSeq& y, Index N) {
  ordered_json j;
  j["N"] = N;
  std::vector<double> vals = y.prefix(N);
  double sup = 0.0, n1 = 0.0, n2 = 0.0;
  for (double v : vals) {
    sup = std::max(sup, std::fabs(v));
    n1 += std::fabs(v);
    n2 += v * v;
  }
  j["values"] = vals;
  ordered_json summary;
  summary["sup_abs"] = sup;
  ordered_json norms;
  norms["1"] = n1;
  norms["2"] = std::sqrt(n2);
  summary["p_norms"] = std::move(norms);
  j["summary"] = std::move(summary);
  return j;
}

struct CheckOutcome {
  std::string name;
  int cases = 0;
  int passed = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
};

ordered_json selfcheck_results(const RunConfig& cfg, Report& rep) {
  Rng rng(cfg.seed);
  LambdaSeq unit_lam = arithmetic_lambda(1.0, 1.0);
  std::vector<CheckOutcome> checks;

  auto run_cases = [](CheckOutcome& c, int cases, auto&& one) {
    c.cases = cases;
    for (int i = 0; i < cases; ++i) {
      double err = one(i);
      c.max_error = std::max(c.max_error, err);
      if (err < c.tolerance) ++c.passed;
    }
  };

  {
    CheckOutcome c{"band_inverse_identity", 0, 0, 0.0, 1e-9};
    std::vector<BandParams> ps = {BandParams(1, -2, 1), BandParams(1, -1, 0),
                                  BandParams(1, 0, 0)};
    for (int i = 0; i < 20; ++i) ps.push_back(sample_band_params(rng, identity_check_profile()));
    run_cases(c, static_cast<int>(ps.size()), [&](int i) {
      Triangle prod = compose(triple_band(ps[static_cast<size_t>(i)]),
                              band_inverse(ps[static_cast<size_t>(i)]));
      double worst = 0.0;
      for (Index n = 0; n < 64; ++n)
        for (Index k = 0; k <= n; ++k)
          worst = std::max(worst, std::fabs(prod.at(n, k) - (n == k ? 1.0 : 0.0)));
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"mean_inverse_identity", 0, 0, 0.0, cfg.tol.eps_exact};
    run_cases(c, 8, [&](int) {
      LambdaSeq lam = sample_lambda(rng);
      Triangle prod = compose(lambda_mean(lam), lambda_mean_inverse(lam));
      double worst = 0.0;
      for (Index n = 0; n < 64; ++n)
        for (Index k = 0; k <= n; ++k)
          worst = std::max(worst, std::fabs(prod.at(n, k) - (n == k ? 1.0 : 0.0)));
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"factorization", 0, 0, 0.0, 1e-12};
    run_cases(c, 8, [&](int) {
      BandParams p = sample_band_params(rng, identity_check_profile());
      LambdaSeq lam = sample_lambda(rng);
      Triangle direct = what_matrix(p, lam);
      Triangle composed = compose(lambda_mean(lam), triple_band(p));
      double worst = 0.0;
      for (Index n = 0; n < 64; ++n)
        for (Index k = 0; k <= n; ++k)
          worst = std::max(worst, std::fabs(direct.at(n, k) - composed.at(n, k)));
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"round_trip", 0, 0, 0.0, 1e-8};
    run_cases(c, 10, [&](int) {
      BandParams p = sample_band_params(rng, round_trip_profile());
      RealSeq x = sample_uniform_seq(rng);
      return roundtrip_error(p, unit_lam, x, 200);
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"basis_duality", 0, 0, 0.0, 1e-10};
    run_cases(c, 4, [&](int) {
      BandParams p = sample_band_params(rng, basis_profile());
      LambdaSeq lam = sample_lambda(rng);
      double worst = 0.0;
      for (Index k = 0; k <= 20; ++k) {
        RealSeq y = forward(p, lam, basis_vector(p, lam, k).seq, 40);
        for (Index n = 0; n < 40; ++n)
          worst = std::max(worst, std::fabs(y.at(n) - (n == k ? 1.0 : 0.0)));
      }
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"pairing_pointwise", 0, 0, 0.0, 1e-8};
    run_cases(c, 8, [&](int) {
      BandParams p = sample_band_params(rng, round_trip_profile());
      RealSeq a = sample_uniform_seq(rng);
      RealSeq x = sample_uniform_seq(rng);
      RealSeq y = forward(p, unit_lam, x, 50);
      Triangle F = duals::build_F(p, unit_lam, a);
      double worst = 0.0;
      for (Index n = 0; n < 50; ++n) {
        double fn = 0.0;
        for (Index k = 0; k <= n; ++k) fn += F.at(n, k) * y.at(k);
        worst = std::max(worst, std::fabs(a.at(n) * x.at(n) - fn));
      }
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"pairing_cumulative", 0, 0, 0.0, 1e-8};
    run_cases(c, 8, [&](int) {
      BandParams p = sample_band_params(rng, round_trip_profile());
      LambdaSeq lam = sample_lambda(rng);
      return duals::pairing_test(p, lam, sample_uniform_seq(rng), sample_uniform_seq(rng), 50);
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"matrix_partial_sum", 0, 0, 0.0, 1e-8};
    run_cases(c, 8, [&](int) {
      BandParams p = sample_band_params(rng, round_trip_profile());
      RealSeq arow = sample_uniform_seq(rng);
      RealSeq x = sample_uniform_seq(rng);
      matclass::InfiniteMatrix A(
          [arow](Index n, Index k) { return arow.at(k) / static_cast<double>(n + 1); }, "probe");
      RealSeq y = forward(p, unit_lam, x, 64);
      double worst = 0.0;
      for (Index n : {0, 1, 3}) {
        for (Index m : {10, 25, 40}) {
          double lhs = 0.0;
          for (Index k = 0; k <= m; ++k) lhs += A.at(n, k) * x.at(k);
          double rhs = (1.0 / p.r()) * unit_lam.at(m) / unit_lam.diff(m) * A.at(n, m) * y.at(m);
          for (Index k = 0; k < m; ++k)
            rhs += matclass::ghat_nk_m(A, p, unit_lam, n, k, m) * y.at(k);
          worst = std::max(worst, std::fabs(lhs - rhs));
        }
      }
      return worst;
    });
    checks.push_back(c);
  }
  {
    CheckOutcome c{"subset_sup_sandwich", 0, 0, 0.0, 1.0};  // pass iff error == 0
    run_cases(c, 10, [&](int) {
      RealSeq entries = sample_uniform_seq(rng);
      Triangle M("probe", "", [entries](Index n, Index k) {
        return entries.at(17 * n + k) / std::pow(1.4, static_cast<double>(n));
      });
      auto res = duals::subset_sup_l1(M, 10, 12);
      bool ok = res.exact <= res.surrogate * (1 + 1e-12) &&
                res.surrogate <= 4.0 * res.exact * (1 + 1e-12);
      return ok ? 0.0 : 1.0;
    });
    checks.push_back(c);
  }

  ordered_json j;
  auto arr = ordered_json::array();
  bool all = true;
  int total = 0, passed = 0;
  for (const auto& c : checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["cases"] = c.cases;
    cj["passed"] = c.passed;
    cj["max_error"] = c.max_error;
    cj["tolerance"] = c.tolerance;
    arr.push_back(std::move(cj));
    all = all && c.passed == c.cases;
    total += c.cases;
    passed += c.passed;
  }
  j["checks"] = std::move(arr);
  j["total_cases"] = total;
  j["total_passed"] = passed;
  j["all_passed"] = all;
  if (!all) rep.warnings.push_back("selfcheck: some identity checks failed");
  return j;
}

}  // namespace

ordered_json Report::to_json() const {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["warnings"] = warnings;
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Report dispatch(const std::string& command, const RunConfig& cfg, const CommandArgs& args) {
  cfg.tol.validate();
  Report rep;
  rep.command = command;
  rep.inputs = inputs_json(cfg, args);

  if (command == "transform" || command == "invert") {
    const Index N = args.N.value_or(cfg.tol.n_default);
    LambdaSeq lam = checked_lambda(cfg, N, rep);
    RealSeq x = specs::parse_sequence_spec(require(args.seq, "--seq"), cfg.band);
    RealSeq y = command == "transform" ? forward(cfg.band, lam, x, N)
                                       : inverse(cfg.band, lam, x, N);
    rep.results = sequence_results(y, N);
  } else if (command == "classify") {
    const Index N = args.N.value_or(cfg.tol.n_default);
    LambdaSeq lam = checked_lambda(cfg, N, rep);
    SpaceTag tag = SpaceTag::parse(require(args.space, "--space"), !args.base_space);
    RealSeq x = specs::parse_sequence_spec(require(args.seq, "--seq"), cfg.band);
    Diagnostic d = tag.wrapped ? classify_domain(x, tag, cfg.band, lam, N, cfg.tol)
                               : classify_base(x, tag, N, cfg.tol);
    if (d.verdict.kind == VerdictKind::Inconclusive)
      rep.warnings.push_back("classification inconclusive at truncation " + std::to_string(N));
    rep.results = diagnostic_json(tag, d);
  } else if (command == "witness") {
    const Index N = args.N.value_or(32);
    RealSeq w = witness(require(args.witness_name, "--name"), cfg.band);
    rep.results = sequence_results(w, N);
    rep.results["name"] = *args.witness_name;
  } else if (command == "basis") {
    const Index N = args.N.value_or(64);
    LambdaSeq lam = checked_lambda(cfg, N, rep);
    if (!args.basis_ks.empty()) {
      auto arr = ordered_json::array();
      for (Index k : args.basis_ks) {
        ordered_json vj;
        vj["k"] = k;
        vj["values"] = basis_vector(cfg.band, lam, k).seq.prefix(N);
        arr.push_back(std::move(vj));
      }
      rep.results["N"] = N;
      rep.results["vectors"] = std::move(arr);
    } else {
      const Index mmax = args.mmax.value_or(N / 2);
      if (mmax >= N) throw std::invalid_argument("basis: need mmax < N");
      RealSeq x = specs::parse_sequence_spec(require(args.seq, "--seq"), cfg.band);
      RealSeq y = forward(cfg.band, lam, x, N);
      // Reconstruction error in the domain sup norm equals the tail sup of
      // the transform coordinates.
      auto table = ordered_json::array();
      for (Index m = 0; m <= mmax; ++m) {
        double err = 0.0;
        for (Index n = m + 1; n < N; ++n) err = std::max(err, std::fabs(y.at(n)));
        table.push_back({m, err});
      }
      rep.results["N"] = N;
      rep.results["error_table"] = std::move(table);
    }
  } else if (command == "dual") {
    LambdaSeq lam = checked_lambda(cfg, cfg.schedule.back(), rep);
    const std::string& ds = require(args.dual, "--dual");
    duals::DualType dt;
    if (ds == "alpha") dt = duals::DualType::alpha;
    else if (ds == "beta") dt = duals::DualType::beta;
    else if (ds == "gamma") dt = duals::DualType::gamma;
    else throw std::invalid_argument("dual: --dual must be alpha | beta | gamma");
    SpaceTag tag = SpaceTag::parse(require(args.space, "--space"), true);
    RealSeq a = specs::parse_sequence_spec(require(args.a_spec, "--a"), cfg.band);
    duals::DualReport dr = duals::dual_check(dt, tag, cfg.band, lam, a, cfg.schedule, cfg.tol);
    ordered_json j;
    j["dual"] = std::string(duals::to_string(dr.dual));
    j["space"] = tag.str();
    j["overall"] = std::string(to_string(dr.overall));
    auto arr = ordered_json::array();
    for (const auto& c : dr.conditions) arr.push_back(condition_json(c));
    j["conditions"] = std::move(arr);
    rep.results = std::move(j);
    if (dr.overall == VerdictKind::Inconclusive)
      rep.warnings.push_back("dual membership inconclusive along the schedule");
  } else if (command == "matclass") {
    LambdaSeq lam = checked_lambda(cfg, cfg.schedule.back(), rep);
    matclass::InfiniteMatrix A = specs::parse_matrix_spec(require(args.matrix, "--A"));
    matclass::Evaluator ev(A, cfg.band, lam, cfg.schedule, cfg.tol);
    if (args.theorem) {
      matclass::ClassReport cr = ev.class_verdict(*args.theorem, args.p_exp, args.part);
      ordered_json j;
      j["theorem"] = cr.theorem;
      j["source"] = cr.source;
      j["target"] = cr.target;
      j["overall"] = std::string(to_string(cr.overall));
      auto arr = ordered_json::array();
      for (const auto& c : cr.conditions) arr.push_back(condition_json(c));
      j["conditions"] = std::move(arr);
      rep.results = std::move(j);
      if (cr.overall == VerdictKind::Inconclusive)
        rep.warnings.push_back("class membership inconclusive along the schedule");
    } else if (args.conditions) {
      auto arr = ordered_json::array();
      std::istringstream is(*args.conditions);
      std::string id;
      const double pe = args.p_exp.value_or(2.0);
      while (std::getline(is, id, ',')) {
        std::optional<double> q;
        if (id == "34" || id == "39" || id == "L10") q = pe;
        if (id == "51" || id == "L2ii" || id == "L6" || id == "L8") q = pe / (pe - 1.0);
        arr.push_back(condition_json(ev.condition(id, q)));
      }
      rep.results["conditions"] = std::move(arr);
    } else {
      throw std::invalid_argument("matclass: need --thm or --conditions");
    }
  } else if (command == "selfcheck") {
    rep.results = selfcheck_results(cfg, rep);
  } else {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
  return rep;
}

}  // namespace seqspace::cli
