#ifndef SEQSPACE_CLI_HPP
#define SEQSPACE_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqspace/core.hpp"

namespace seqspace::cli {

/// The full run configuration. emit() and parse() round-trip exactly.
struct RunConfig {
  BandParams band{1.0, -2.0, 1.0};
  std::string lambda_spec = "arithmetic:1,1";
  Tolerances tol{};
  std::vector<Index> schedule{64, 128, 256, 512};
  std::string format = "json";  // json | csv | table
  std::uint64_t seed = 1;

  bool operator==(const RunConfig&) const = default;
  std::string emit() const;
  static RunConfig parse(const std::string& text);
};

/// Tolerance defaults with SEQSPACE_* environment overrides applied
/// (SEQSPACE_EPS_EXACT, SEQSPACE_EPS_TAIL, SEQSPACE_WINDOW,
/// SEQSPACE_N_DEFAULT, SEQSPACE_GROWTH_RATIO).
Tolerances tolerances_from_env(Tolerances base = {});

/// Per-command inputs beyond the shared RunConfig.
struct CommandArgs {
  std::optional<std::string> seq;
  std::optional<std::string> a_spec;
  std::optional<std::string> matrix;
  std::optional<std::string> space;
  bool base_space = false;  // classify against the base space, not the domain
  std::optional<Index> N;
  std::optional<int> theorem;
  int part = 1;
  std::optional<std::string> dual;
  std::optional<std::string> conditions;
  std::optional<double> p_exp;
  std::vector<Index> basis_ks;
  std::optional<Index> mmax;
  std::optional<std::string> witness_name;
};

/// A failed semantic precondition (e.g. the lambda sequence is certified
/// non-admissible); maps to a distinct nonzero exit status.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kReportSchema = "seqspace-report/1";

struct Report {
  std::string command;
  nlohmann::ordered_json inputs;
  nlohmann::ordered_json results;
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
  std::string dump() const;  // canonical serialized form
};

/// Runs one command. Commands: transform | invert | classify | basis |
/// dual | matclass | witness | selfcheck.
Report dispatch(const std::string& command, const RunConfig& cfg, const CommandArgs& args);

}  // namespace seqspace::cli

#endif  // SEQSPACE_CLI_HPP
