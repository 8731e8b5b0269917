#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crossing/normalform.hpp"
#include "crossing/schrodinger.hpp"
#include "crossing/transfer.hpp"

namespace crossing {

struct PowerFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double log_coeff = 0.0;  ///< coefficient of log log(1/h), 0 unless with_log
  double residual = 0.0;   ///< RMS of the log residuals
  bool with_log = false;
};

/// Least squares on log y = exponent log h + log amplitude [+ g log log(1/h)].
/// with_log needs every h < 1.
PowerFit fit_power_law(std::span<const std::pair<double, double>> points, bool with_log);

/// Amplitude of the best fit y = A h^exponent (geometric mean of y / h^exponent).
double fixed_exponent_amplitude(std::span<const std::pair<double, double>> points, double exponent);

/// n points from hmax down to hmin, equally spaced in log h.
std::vector<double> geometric_grid(double hmax, double hmin, int n);

enum class ModelSolver { Auto, Neumann, Ode };

struct SchrodingerSweepProblem {
  SchrodingerProblem problem;
  CrossingPoint which = CrossingPoint::Plus;
};

using SweepProblem = std::variant<NormalFormProblem, SchrodingerSweepProblem>;

struct SweepOptions {
  int jobs = 1;
  ModelSolver solver = ModelSolver::Auto;
  int neumann_terms = 8;
  double ode_tol = 1e-11;
  ExtractionOptions extraction;
  double schrodinger_eps = 0.0;
};

/// Entry order everywhere: t11, t12, t21, t22.
struct SweepRow {
  double h = 0.0;
  TransferMatrix extracted;
  TransferMatrix predicted;
  std::array<double, 4> abs_err{};
  std::array<double, 4> rel_err{};
  std::string status = "ok";
  std::string solver;
};

struct EntryFit {
  std::string entry;  ///< "t12", "t21", "t11-1", "t22-1"
  PowerFit fit;
  double prefactor = 0.0;            ///< amplitude at the theoretical exponent
  double predicted_prefactor = 0.0;  ///< |predicted entry| / h^{1/(m+1)} (off-diagonals)
};

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepReport {
  int m = 0;  ///< contact order of the swept crossing
  std::vector<SweepRow> rows;
  std::vector<EntryFit> fits;
  std::vector<Verdict> verdicts;

  const EntryFit* fit(const std::string& entry) const;
  bool all_pass() const;
};

/// One extraction and prediction at h; throws on failure instead of recording it.
SweepRow evaluate_row(const SweepProblem& problem, double h, const SweepOptions& opt = {});

/// h_values must be decreasing, at least 4 of them, spanning >= 2 decades.
SweepReport run_sweep(const SweepProblem& problem, const std::vector<double>& h_values, const SweepOptions& opt = {});

struct VerdictSpec {
  double exponent_tol = 0.02;           ///< off-diagonal exponent vs 1/(m+1)
  double prefactor_rel_tol = 0.10;      ///< fixed-exponent prefactor vs prediction
  double angle_tol = 0.1;               ///< |arg(t / t_predicted)| over all rows, off-diagonals
  double diag_below = 0.1;              ///< remainder exponent window around 2/(m+1)
  double diag_above = 0.15;
  std::optional<double> rel_error_tol;  ///< off-diagonal relative error on rows with h <= rel_error_max_h
  double rel_error_max_h = 1e-3;
  double identity_tol = 1e-8;           ///< used when the coupling vanishes
};

/// Fills report.verdicts. Zero-signal entries are skipped and the identity
/// check is used instead.
void evaluate_verdicts(SweepReport& report, const VerdictSpec& spec);

/// 17 significant digits, fixed column set.
void write_csv(std::ostream& os, const SweepReport& report);
std::vector<SweepRow> read_csv(std::istream& is);
std::string csv_header();

/// JSON text summarising fits and verdicts.
std::string summary_json(const SweepReport& report);

}  // namespace crossing
