#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crossing/schrodinger.hpp"
#include "crossing/sweep.hpp"

namespace crossing::kit {

enum class Mode { Predict, SolveModel, SolveSchrodinger, Sweep, Verify };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

/// General symbol pair for `predict`; q_j are the coupling values at the crossing.
struct SymbolProblem {
  Poly2 p1;
  Poly2 p2;
  cplx q1 = 1.0;
  cplx q2 = 1.0;
};

using Problem = std::variant<NormalFormProblem, SchrodingerSweepProblem, SymbolProblem>;

struct RunConfig {
  std::optional<Mode> mode;
  Problem problem;
  std::optional<double> h;
  std::vector<double> h_values;  ///< empty until resolved by default_h_values
  SweepOptions sweep;
  VerdictSpec verdicts;
  int random_polynomials = 0;  ///< extra seeded bracket checks in verify
  std::optional<std::string> csv_path;
  std::optional<std::string> summary_path;
};

/// Parses and validates a JSON config. Unknown keys and type mismatches raise
/// Error(Schema) naming the key path; unreadable files raise Error(Io).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// 12 points 1e-1..1e-4 for the reduced model, 8 points 1e-2..1e-4 otherwise.
std::vector<double> default_h_values(const Problem& p);

}  // namespace crossing::kit
