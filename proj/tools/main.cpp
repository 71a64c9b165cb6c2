#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "seqspace/cli.hpp"
#include "seqspace/specparse.hpp"

namespace {

using seqspace::Index;
using seqspace::cli::CommandArgs;
using seqspace::cli::Report;
using seqspace::cli::RunConfig;

void render(const Report& rep, const RunConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << rep.dump();
    return;
  }
  if (cfg.format == "csv") {
    if (rep.results.contains("values")) {
      const auto& vals = rep.results["values"];
      for (size_t n = 0; n < vals.size(); ++n)
        std::cout << n << "," << vals[n].dump() << "\n";
      std::cerr << "summary: " << rep.results["summary"].dump() << "\n";
      return;
    }
    if (rep.results.contains("error_table")) {
      for (const auto& row : rep.results["error_table"])
        std::cout << row[0].dump() << "," << row[1].dump() << "\n";
      return;
    }
    if (rep.results.contains("vectors")) {
      for (const auto& vec : rep.results["vectors"]) {
        const auto& vals = vec["values"];
        for (size_t n = 0; n < vals.size(); ++n)
          std::cout << vec["k"].dump() << "," << n << "," << vals[n].dump() << "\n";
      }
      return;
    }
  }
  if (cfg.format == "table" && rep.results.contains("checks")) {
    for (const auto& c : rep.results["checks"])
      std::cout << c["name"].get<std::string>() << ": " << c["passed"].dump() << "/"
                << c["cases"].dump() << " (max err " << c["max_error"].dump() << ")\n";
    return;
  }
  // Fall back to the JSON report for shapes without a flat rendering.
  std::cout << rep.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqspace: triangle-domain sequence space toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.tol = seqspace::cli::tolerances_from_env(cfg.tol);
  CommandArgs args;

  std::string band_str, config_path, schedule_str;
  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--band", band_str, "band parameters r,s,t");
  app.add_option("--lambda", cfg.lambda_spec, "lambda spec (e.g. arithmetic:1,1)");
  app.add_option("--schedule", schedule_str, "truncation schedule, comma separated");
  app.add_option("--format", cfg.format, "output format: json | csv | table");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--eps-exact", cfg.tol.eps_exact, "identity-check tolerance");
  app.add_option("--eps-tail", cfg.tol.eps_tail, "tail tolerance for verdicts");
  app.add_option("--window", cfg.tol.window, "minimum tail window");
  app.add_option("--growth-ratio", cfg.tol.growth_ratio, "divergence heuristic ratio");

  Index n_arg = -1, mmax_arg = -1;
  double p_arg = 0.0;
  std::string seq, a_spec, matrix, space, dual, conditions, witness_name, ks_str;

  auto* t_cmd = app.add_subcommand("transform", "apply the forward W transform to a sequence");
  t_cmd->add_option("--seq", seq, "sequence spec")->required();
  t_cmd->add_option("--N", n_arg, "truncation");

  auto* i_cmd = app.add_subcommand("invert", "apply the inverse transform to a sequence");
  i_cmd->add_option("--seq", seq, "sequence spec (the transform coordinates)")->required();
  i_cmd->add_option("--N", n_arg, "truncation");

  auto* c_cmd = app.add_subcommand("classify", "membership diagnostics for a sequence");
  c_cmd->add_option("--space", space, "c0 | c | linf | lp:<p>")->required();
  c_cmd->add_option("--seq", seq, "sequence spec")->required();
  c_cmd->add_option("--N", n_arg, "truncation");
  c_cmd->add_flag("--base", args.base_space, "classify in the base space, not the matrix domain");

  auto* w_cmd = app.add_subcommand("witness", "print a named witness sequence");
  w_cmd->add_option("--name", witness_name, "thm4 | thm5 | thm7 | e | e_k(j)")->required();
  w_cmd->add_option("--N", n_arg, "prefix length");

  auto* b_cmd = app.add_subcommand("basis", "basis vectors or reconstruction error table");
  b_cmd->add_option("--k", ks_str, "comma separated basis indices");
  b_cmd->add_option("--seq", seq, "sequence spec for the error table");
  b_cmd->add_option("--mmax", mmax_arg, "largest partial-sum order for the error table");
  b_cmd->add_option("--N", n_arg, "truncation");

  auto* d_cmd = app.add_subcommand("dual", "dual-set membership report");
  d_cmd->add_option("--dual", dual, "alpha | beta | gamma")->required();
  d_cmd->add_option("--space", space, "c0 | c | linf | lp:<p>")->required();
  d_cmd->add_option("--a", a_spec, "candidate sequence spec")->required();

  auto* m_cmd = app.add_subcommand("matclass", "matrix transformation class report");
  m_cmd->add_option("--A", matrix, "matrix spec")->required();
  int thm = 0;
  m_cmd->add_option("--thm", thm, "theorem number 11..20");
  m_cmd->add_option("--part", args.part, "theorem part (13 has two)");
  m_cmd->add_option("--conditions", conditions, "comma separated condition ids");
  m_cmd->add_option("--p", p_arg, "exponent p for lp source/target");

  auto* s_cmd = app.add_subcommand("selfcheck", "run the identity suite and report pass counts");
  (void)s_cmd;

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw seqspace::specs::SpecError(config_path, "cannot open config file");
      std::stringstream ss;
      ss << in.rdbuf();
      RunConfig file_cfg = RunConfig::parse(ss.str());
      // Explicit command-line values override the file.
      if (app.count("--lambda") == 0) cfg.lambda_spec = file_cfg.lambda_spec;
      if (app.count("--format") == 0) cfg.format = file_cfg.format;
      if (app.count("--seed") == 0) cfg.seed = file_cfg.seed;
      if (app.count("--schedule") == 0) cfg.schedule = file_cfg.schedule;
      if (app.count("--eps-exact") == 0) cfg.tol.eps_exact = file_cfg.tol.eps_exact;
      if (app.count("--eps-tail") == 0) cfg.tol.eps_tail = file_cfg.tol.eps_tail;
      if (app.count("--window") == 0) cfg.tol.window = file_cfg.tol.window;
      if (app.count("--growth-ratio") == 0) cfg.tol.growth_ratio = file_cfg.tol.growth_ratio;
      if (band_str.empty()) cfg.band = file_cfg.band;
    }
    if (!band_str.empty()) {
      std::istringstream bs(band_str);
      double r, s, t;
      char c1, c2;
      if (!(bs >> r >> c1 >> s >> c2 >> t) || c1 != ',' || c2 != ',')
        throw seqspace::specs::SpecError(band_str, "band is r,s,t");
      cfg.band = seqspace::BandParams(r, s, t);
    }
    if (!schedule_str.empty()) {
      cfg.schedule.clear();
      std::istringstream ss(schedule_str);
      std::string part;
      while (std::getline(ss, part, ',')) cfg.schedule.push_back(std::stoll(part));
    }
    if (n_arg >= 0) args.N = n_arg;
    if (mmax_arg >= 0) args.mmax = mmax_arg;
    if (!seq.empty()) args.seq = seq;
    if (!a_spec.empty()) args.a_spec = a_spec;
    if (!matrix.empty()) args.matrix = matrix;
    if (!space.empty()) args.space = space;
    if (!dual.empty()) args.dual = dual;
    if (!conditions.empty()) args.conditions = conditions;
    if (!witness_name.empty()) args.witness_name = witness_name;
    if (thm != 0) args.theorem = thm;
    if (p_arg != 0.0) args.p_exp = p_arg;
    if (!ks_str.empty()) {
      std::istringstream ks(ks_str);
      std::string part;
      while (std::getline(ks, part, ',')) args.basis_ks.push_back(std::stoll(part));
    }

    std::string command = app.get_subcommands().front()->get_name();
    Report rep = seqspace::cli::dispatch(command, cfg, args);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    render(rep, cfg);
    return 0;
  } catch (const seqspace::cli::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
