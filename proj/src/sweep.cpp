#include "crossing/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "crossing/error.hpp"

namespace crossing {

namespace {

constexpr const char* kEntries[4] = {"t11", "t12", "t21", "t22"};

// Least squares via modified Gram-Schmidt; columns are the regressors.
std::vector<double> least_squares(std::vector<std::vector<double>> cols, std::vector<double> y) {
  const std::size_t k = cols.size();
  std::vector<std::vector<double>> R(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double d = 0.0;
      for (std::size_t r = 0; r < y.size(); ++r) d += cols[i][r] * cols[j][r];
      R[i][j] = d;
      for (std::size_t r = 0; r < y.size(); ++r) cols[j][r] -= d * cols[i][r];
    }
    double nrm = 0.0;
    for (double v : cols[j]) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12)) throw Error(ErrorCode::DegenerateFit, "regressors are linearly dependent");
    R[j][j] = nrm;
    for (double& v : cols[j]) v /= nrm;
  }
  std::vector<double> qty(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < y.size(); ++r) qty[j] += cols[j][r] * y[r];
  std::vector<double> beta(k, 0.0);
  for (std::size_t j = k; j-- > 0;) {
    double s = qty[j];
    for (std::size_t i = j + 1; i < k; ++i) s -= R[j][i] * beta[i];
    beta[j] = s / R[j][j];
  }
  return beta;
}

void check_points(std::span<const std::pair<double, double>> pts, std::size_t min_points) {
  if (pts.size() < min_points) throw Error(ErrorCode::DegenerateFit, "too few points");
  for (auto [h, y] : pts)
    if (!(h > 0.0) || !(y > 0.0) || !std::isfinite(h) || !std::isfinite(y))
      throw Error(ErrorCode::DegenerateFit, "h and magnitudes must be positive and finite");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

cplx entry(const TransferMatrix& T, int k) { return T(k / 2, k % 2); }

}  // namespace

PowerFit fit_power_law(std::span<const std::pair<double, double>> pts, bool with_log) {
  check_points(pts, 3);
  std::vector<double> lh, one, ll, ly;
  for (auto [h, y] : pts) {
    if (with_log && !(h < 1.0)) throw Error(ErrorCode::DegenerateFit, "log correction needs h < 1");
    lh.push_back(std::log(h));
    one.push_back(1.0);
    if (with_log) ll.push_back(std::log(std::log(1.0 / h)));
    ly.push_back(std::log(y));
  }
  std::vector<std::vector<double>> cols{lh, one};
  if (with_log) cols.push_back(ll);
  const auto beta = least_squares(cols, ly);
  PowerFit f;
  f.with_log = with_log;
  f.exponent = beta[0];
  f.amplitude = std::exp(beta[1]);
  f.log_coeff = with_log ? beta[2] : 0.0;
  double ss = 0.0;
  for (std::size_t r = 0; r < ly.size(); ++r) {
    double pred = beta[0] * lh[r] + beta[1];
    if (with_log) pred += beta[2] * ll[r];
    ss += (ly[r] - pred) * (ly[r] - pred);
  }
  f.residual = std::sqrt(ss / static_cast<double>(ly.size()));
  return f;
}

double fixed_exponent_amplitude(std::span<const std::pair<double, double>> pts, double exponent) {
  check_points(pts, 1);
  double s = 0.0;
  for (auto [h, y] : pts) s += std::log(y) - exponent * std::log(h);
  return std::exp(s / static_cast<double>(pts.size()));
}

std::vector<double> geometric_grid(double hmax, double hmin, int n) {
  if (!(hmax > hmin) || !(hmin > 0.0) || n < 2) throw Error(ErrorCode::Domain, "need hmax > hmin > 0 and n >= 2");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = hmax * std::pow(hmin / hmax, static_cast<double>(k) / (n - 1));
  out.front() = hmax;
  out.back() = hmin;
  return out;
}

const EntryFit* SweepReport::fit(const std::string& entry) const {
  for (const auto& f : fits)
    if (f.entry == entry) return &f;
  return nullptr;
}

bool SweepReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

SweepRow model_row(const NormalFormProblem& base, double h, const SweepOptions& opt) {
  NormalFormProblem p = base;
  p.h = h;
  SweepRow row;
  row.h = h;
  row.predicted = predict_model_transfer(p);
  auto solve_pair = [&](bool neumann) {
    if (neumann) return std::pair{neumann_solve(p, 1.0, 0.0, opt.neumann_terms), neumann_solve(p, 0.0, 1.0, opt.neumann_terms)};
    return std::pair{ode_oracle(p, 1.0, 0.0, opt.ode_tol), ode_oracle(p, 0.0, 1.0, opt.ode_tol)};
  };
  std::pair<ModelSolution, ModelSolution> sols;
  if (opt.solver == ModelSolver::Ode) {
    sols = solve_pair(false);
    row.solver = "ode";
  } else if (opt.solver == ModelSolver::Neumann) {
    sols = solve_pair(true);
    row.solver = "neumann";
  } else {
    try {
      sols = solve_pair(true);
      row.solver = "neumann";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotContractive) throw;
      sols = solve_pair(false);
      row.solver = "ode";
    }
  }
  row.extracted = extract_transfer(p, sols.first, sols.second, opt.extraction);
  return row;
}

SweepRow schrodinger_row(const SchrodingerSweepProblem& base, double h, const SweepOptions& opt) {
  SchrodingerProblem p = base.problem;
  p.h = h;
  SweepRow row;
  row.h = h;
  row.solver = "ode";
  row.predicted = predict_transfer_case_i(p, base.which);
  row.extracted = numeric_transfer_case_i(p, base.which, opt.schrodinger_eps, opt.ode_tol).T;
  return row;
}

int sweep_m(const SweepProblem& problem) {
  if (const auto* p = std::get_if<NormalFormProblem>(&problem)) return p->m;
  const auto& s = std::get<SchrodingerSweepProblem>(problem);
  return s.which == CrossingPoint::Caustic ? 2 * s.problem.n() : s.problem.n();
}

void fill_errors(SweepRow& row) {
  for (int k = 0; k < 4; ++k) {
    const cplx e = entry(row.extracted, k), p = entry(row.predicted, k);
    row.abs_err[k] = std::abs(e - p);
    row.rel_err[k] = std::abs(p) > 0.0 ? row.abs_err[k] / std::abs(p) : row.abs_err[k];
  }
}

}  // namespace

SweepRow evaluate_row(const SweepProblem& problem, double h, const SweepOptions& opt) {
  SweepRow row = std::visit(
      [&](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, NormalFormProblem>)
          return model_row(p, h, opt);
        else
          return schrodinger_row(p, h, opt);
      },
      problem);
  fill_errors(row);
  row.extracted.kind = TransferMatrix::Kind::Extracted;
  return row;
}

SweepReport run_sweep(const SweepProblem& problem, const std::vector<double>& h_values, const SweepOptions& opt) {
  if (h_values.size() < 4) throw Error(ErrorCode::Domain, "a sweep needs at least 4 h values");
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0)) throw Error(ErrorCode::Domain, "h values must be positive");
    if (i > 0 && !(h_values[i] < h_values[i - 1])) throw Error(ErrorCode::Domain, "h values must be decreasing");
  }
  if (h_values.front() / h_values.back() < 100.0 * (1.0 - 1e-12))
    throw Error(ErrorCode::Domain, "h values must span at least two decades");

  SweepReport report;
  report.m = sweep_m(problem);
  report.rows.resize(h_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < h_values.size(); i = next++) {
      SweepRow row;
      try {
        row = evaluate_row(problem, h_values[i], opt);
      } catch (const Error& e) {
        row = SweepRow{};
        row.h = h_values[i];
        const double nan = std::nan("");
        for (auto* T : {&row.extracted, &row.predicted})
          for (auto& r : T->t)
            for (auto& z : r) z = cplx(nan, nan);
        row.abs_err.fill(nan);
        row.rel_err.fill(nan);
        row.status = std::string(to_string(e.code()));
      }
      row.extracted.h = row.predicted.h = h_values[i];
      row.extracted.kind = TransferMatrix::Kind::Extracted;
      row.predicted.kind = TransferMatrix::Kind::Predicted;
      report.rows[i] = std::move(row);
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(h_values.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // fits over successful rows
  const double e = 1.0 / (report.m + 1);
  struct Track {
    const char* name;
    int k;
    bool diagonal;
  };
  for (const Track tr : {Track{"t12", 1, false}, Track{"t21", 2, false}, Track{"t11-1", 0, true}, Track{"t22-1", 3, true}}) {
    std::vector<std::pair<double, double>> pts;
    double pred_pref = 0.0;
    for (const auto& row : report.rows) {
      if (row.status != "ok") continue;
      const cplx z = entry(row.extracted, tr.k);
      const double mag = tr.diagonal ? std::abs(z - 1.0) : std::abs(z);
      pts.emplace_back(row.h, mag);
      if (!tr.diagonal && pred_pref == 0.0) pred_pref = std::abs(entry(row.predicted, tr.k)) / std::pow(row.h, e);
    }
    if (pts.size() < 3) continue;
    const double peak = std::max_element(pts.begin(), pts.end(), [](auto a, auto b) { return a.second < b.second; })->second;
    if (!(peak > 1e-12) || std::any_of(pts.begin(), pts.end(), [](auto p) { return !(p.second > 0.0); })) continue;
    EntryFit f;
    f.entry = tr.name;
    const bool with_log = tr.diagonal && report.m == 1;
    f.fit = fit_power_law(pts, with_log);
    f.prefactor = fixed_exponent_amplitude(pts, tr.diagonal ? 2.0 * e : e);
    f.predicted_prefactor = pred_pref;
    report.fits.push_back(f);
  }
  return report;
}

void evaluate_verdicts(SweepReport& report, const VerdictSpec& spec) {
  report.verdicts.clear();
  const double e = 1.0 / (report.m + 1);
  std::size_t failed = 0;
  for (const auto& r : report.rows) failed += r.status != "ok";
  report.verdicts.push_back({"rows.ok", failed == 0, static_cast<double>(failed), 0.0, 0.0});

  bool coupled = false;
  for (const auto& r : report.rows)
    if (r.status == "ok" && (std::abs(r.predicted(0, 1)) > 0.0 || std::abs(r.predicted(1, 0)) > 0.0)) coupled = true;
  if (!coupled) {
    double worst = 0.0;
    for (const auto& r : report.rows)
      if (r.status == "ok") worst = std::max(worst, r.extracted.max_abs_diff(r.predicted));
    report.verdicts.push_back({"identity", worst <= spec.identity_tol, worst, 0.0, spec.identity_tol});
    return;
  }
  for (const char* name : {"t12", "t21"}) {
    const EntryFit* f = report.fit(name);
    const std::string n(name);
    if (!f) {
      report.verdicts.push_back({n + ".fit", false, 0.0, 0.0, 0.0});
      continue;
    }
    report.verdicts.push_back({n + ".exponent", std::abs(f->fit.exponent - e) <= spec.exponent_tol, f->fit.exponent,
                               e - spec.exponent_tol, e + spec.exponent_tol});
    const double rel = std::abs(f->prefactor - f->predicted_prefactor) / f->predicted_prefactor;
    report.verdicts.push_back({n + ".prefactor", rel <= spec.prefactor_rel_tol, rel, 0.0, spec.prefactor_rel_tol});
    const int k = n == "t12" ? 1 : 2;
    double worst = 0.0;
    for (const auto& r : report.rows)
      if (r.status == "ok") worst = std::max(worst, std::abs(std::arg(entry(r.extracted, k) / entry(r.predicted, k))));
    report.verdicts.push_back({n + ".angle", worst <= spec.angle_tol, worst, 0.0, spec.angle_tol});
    if (spec.rel_error_tol) {
      double rmax = 0.0;
      bool any = false;
      for (const auto& r : report.rows)
        if (r.status == "ok" && r.h <= spec.rel_error_max_h * (1.0 + 1e-12)) {
          rmax = std::max(rmax, r.rel_err[k]);
          any = true;
        }
      report.verdicts.push_back({n + ".rel_error", any && rmax <= *spec.rel_error_tol, rmax, 0.0, *spec.rel_error_tol});
    }
  }
  if (spec.diag_below >= 0.0 && spec.diag_above >= 0.0) {
    for (const char* name : {"t11-1", "t22-1"}) {
      const EntryFit* f = report.fit(name);
      const double lo = 2.0 * e - spec.diag_below, hi = 2.0 * e + spec.diag_above;
      const std::string n = std::string(name) + ".remainder_exponent";
      if (!f)
        report.verdicts.push_back({n, false, 0.0, lo, hi});
      else
        report.verdicts.push_back({n, f->fit.exponent >= lo && f->fit.exponent <= hi, f->fit.exponent, lo, hi});
    }
  }
}

std::string csv_header() {
  std::string s = "h";
  for (const char* kind : {"ext", "pred"})
    for (const char* e : kEntries) s += std::string(",") + e + "_" + kind + "_re," + e + "_" + kind + "_im";
  for (const char* e : kEntries) s += std::string(",") + e + "_abs_err";
  return s + ",status";
}

void write_csv(std::ostream& os, const SweepReport& report) {
  os << csv_header() << '\n';
  for (const auto& r : report.rows) {
    os << fmt(r.h);
    for (const TransferMatrix* T : {&r.extracted, &r.predicted})
      for (int k = 0; k < 4; ++k) os << ',' << fmt(entry(*T, k).real()) << ',' << fmt(entry(*T, k).imag());
    for (double a : r.abs_err) os << ',' << fmt(a);
    os << ',' << r.status << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) throw Error(ErrorCode::Io, "unexpected CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != 22) throw Error(ErrorCode::Io, "expected 22 CSV columns, got " + std::to_string(cells.size()));
    auto num = [&](std::size_t i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str()) throw Error(ErrorCode::Io, "bad number '" + cells[i] + "'");
      return v;
    };
    SweepRow r;
    r.h = num(0);
    std::size_t c = 1;
    for (TransferMatrix* T : {&r.extracted, &r.predicted}) {
      T->h = r.h;
      for (int k = 0; k < 4; ++k, c += 2) (*T)(k / 2, k % 2) = cplx(num(c), num(c + 1));
    }
    r.extracted.kind = TransferMatrix::Kind::Extracted;
    for (int k = 0; k < 4; ++k) r.abs_err[k] = num(17 + k);
    r.status = cells[21];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summary_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["m"] = report.m;
  j["rows"] = report.rows.size();
  auto& fits = j["fits"] = nlohmann::ordered_json::object();
  for (const auto& f : report.fits) {
    fits[f.entry] = {{"exponent", f.fit.exponent},
                     {"amplitude", f.fit.amplitude},
                     {"log_coeff", f.fit.log_coeff},
                     {"residual", f.fit.residual},
                     {"with_log", f.fit.with_log},
                     {"prefactor", f.prefactor}};
    if (f.predicted_prefactor > 0.0) fits[f.entry]["predicted_prefactor"] = f.predicted_prefactor;
  }
  auto& v = j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& x : report.verdicts)
    v.push_back({{"name", x.name}, {"pass", x.pass}, {"value", x.value}, {"lo", x.lo}, {"hi", x.hi}});
  j["all_pass"] = report.all_pass();
  return j.dump(2);
}

}  // namespace crossing
