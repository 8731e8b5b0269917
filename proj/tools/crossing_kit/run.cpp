#include "run.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "crossing/error.hpp"
#include "crossing/symbolcalc.hpp"

namespace crossing::kit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string cnum(cplx z) { return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i"; }

ordered_json matrix_json(const TransferMatrix& T) {
  ordered_json j = ordered_json::array();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) j.push_back({T(i, k).real(), T(i, k).imag()});
  return j;
}

void print_matrix(std::ostream& out, const char* label, const TransferMatrix& T) {
  out << label << ":\n";
  for (int i = 0; i < 2; ++i) out << "  [" << cnum(T(i, 0)) << ",  " << cnum(T(i, 1)) << "]\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write failed for " + path);
}

void write_report_csv(const std::string& path, const SweepReport& rep) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  write_csv(f, rep);
  if (!f) throw Error(ErrorCode::Io, "write failed for " + path);
}

SweepProblem sweep_problem(const Problem& p, Mode mode) {
  if (const auto* m = std::get_if<NormalFormProblem>(&p)) return *m;
  if (const auto* s = std::get_if<SchrodingerSweepProblem>(&p)) {
    if (s->which == CrossingPoint::Caustic)
      throw Error(ErrorCode::Schema, "problem.crossing: " + to_string(mode) + " supports plus and minus crossings only");
    return *s;
  }
  throw Error(ErrorCode::Schema, "problem.kind: " + to_string(mode) + " needs a model or schrodinger problem");
}

TransferMatrix predict(const Problem& p, double h, ordered_json& info) {
  if (const auto* m = std::get_if<NormalFormProblem>(&p)) {
    NormalFormProblem q = *m;
    q.h = h;
    q.validate();
    const cplx w = model_omega(q.m, q.f_m_0());
    info["m"] = q.m;
    info["omega"] = {w.real(), w.imag()};
    return predict_model_transfer(q);
  }
  if (const auto* s = std::get_if<SchrodingerSweepProblem>(&p)) {
    SchrodingerProblem q = s->problem;
    q.h = h;
    const auto d = build_crossing_data(q, s->which);
    info["m"] = d.m;
    info["s"] = d.s;
    if (s->which == CrossingPoint::Caustic) {
      const auto w = omega_case_ii(q);
      info["omega1"] = {w.omega1.real(), w.omega1.imag()};
      info["omega2"] = {w.omega2.real(), w.omega2.imag()};
      return predict_transfer_case_ii(q);
    }
    const auto w = omega_case_i(q);
    info["omega1"] = {w.omega1.real(), w.omega1.imag()};
    info["omega2"] = {w.omega2.real(), w.omega2.imag()};
    return predict_transfer_case_i(q, s->which);
  }
  const auto& y = std::get<SymbolProblem>(p);
  const auto d = crossing_data(y.p1, y.p2, y.q1, y.q2);
  const auto w = omega_general(d);
  info["m"] = d.m;
  info["s"] = d.s;
  info["omega1"] = {w.omega1.real(), w.omega1.imag()};
  info["omega2"] = {w.omega2.real(), w.omega2.imag()};
  return transfer_predicted_general(d, h);
}

// Seeded antisymmetry / Leibniz / Jacobi checks on random integer symbols.
Verdict random_bracket_check(int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 3);
  const auto draw = [&] {
    Poly2 p;
    for (int t = 0; t < 4; ++t) p += Poly2::monomial(deg(rng), deg(rng), coef(rng));
    return p;
  };
  int bad = 0;
  for (int i = 0; i < count; ++i) {
    const Poly2 a = draw(), b = draw(), c = draw();
    bad += !(poisson_bracket(a, b) == -poisson_bracket(b, a));
    bad += !(poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
    bad += !(poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                 poisson_bracket(c, poisson_bracket(a, b)))
                .is_zero();
  }
  return {"brackets.random", bad == 0, static_cast<double>(bad), 0.0, 0.0};
}

void print_report(std::ostream& out, const SweepReport& rep) {
  out << "m = " << rep.m << "\n";
  out << "h               |t12|           |t21|           rel_err_t12     rel_err_t21     status\n";
  for (const auto& r : rep.rows) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-15.6e %-15.6e %-15.6e %-15.6e %-15.6e %s (%s)\n", r.h, std::abs(r.extracted(0, 1)),
                  std::abs(r.extracted(1, 0)), r.rel_err[1], r.rel_err[2], r.status.c_str(),
                  r.solver.empty() ? "-" : r.solver.c_str());
    out << buf;
  }
  for (const auto& f : rep.fits) {
    out << "fit " << f.entry << ": exponent " << num(f.fit.exponent) << ", amplitude " << num(f.fit.amplitude);
    if (f.fit.with_log) out << ", log coefficient " << num(f.fit.log_coeff);
    out << ", residual " << num(f.fit.residual);
    if (f.predicted_prefactor > 0.0)
      out << ", prefactor " << num(f.prefactor) << " (predicted " << num(f.predicted_prefactor) << ")";
    out << "\n";
  }
  for (const auto& v : rep.verdicts)
    out << (v.pass ? "PASS " : "FAIL ") << v.name << " = " << num(v.value) << " [" << num(v.lo) << ", " << num(v.hi)
        << "]\n";
}

}  // namespace

int log_level_from_env() {
  const char* v = std::getenv("CROSSING_KIT_LOG");
  if (!v) return 1;
  const std::string s(v);
  if (s == "0" || s == "quiet" || s == "error") return 0;
  if (s == "2" || s == "debug") return 2;
  return 1;
}

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema:
    case ErrorCode::Io:
    case ErrorCode::Domain:
    case ErrorCode::InvalidPhase:
    case ErrorCode::NoFiniteContact:
    case ErrorCode::ZeroGradient:
    case ErrorCode::DegenerateS:
    case ErrorCode::TransversalUnsupported:
    case ErrorCode::WindowInsideSupport:
    case ErrorCode::CaseMismatch:
    case ErrorCode::TurningPointInRange:
      return kConfigError;
    default:
      return kNumericalFailure;
  }
}

ExitCode run(Mode mode, RunConfig cfg, const Overrides& ov, std::ostream& out, std::ostream& log, int level) {
  if (cfg.mode && *cfg.mode != mode)
    throw Error(ErrorCode::Schema, "mode: config says '" + to_string(*cfg.mode) + "' but '" + to_string(mode) + "' was requested");
  if (ov.jobs) cfg.sweep.jobs = std::max(1, *ov.jobs);
  const auto csv_path = ov.out ? ov.out : cfg.csv_path;
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  if (mode == Mode::Predict || mode == Mode::SolveModel || mode == Mode::SolveSchrodinger) {
    if (!cfg.h) throw Error(ErrorCode::Schema, "h: required for " + to_string(mode));
    const double h = *cfg.h;
    ordered_json summary;
    summary["mode"] = to_string(mode);
    summary["h"] = h;
    if (mode == Mode::Predict) {
      ordered_json info;
      const auto T = predict(cfg.problem, h, info);
      summary.update(info);
      summary["predicted"] = matrix_json(T);
      print_matrix(out, "predicted", T);
      out << "m = " << info["m"].get<int>() << "\n";
    } else {
      const bool want_model = mode == Mode::SolveModel;
      if (want_model != std::holds_alternative<NormalFormProblem>(cfg.problem))
        throw Error(ErrorCode::Schema,
                    std::string("problem.kind: ") + to_string(mode) + " needs a " + (want_model ? "model" : "schrodinger") + " problem");
      const auto sp = sweep_problem(cfg.problem, mode);
      if (auto* m = std::get_if<NormalFormProblem>(&cfg.problem)) {
        m->h = h;
        m->validate();
      }
      SweepReport rep;
      rep.rows.push_back(evaluate_row(sp, h, cfg.sweep));
      const auto& r = rep.rows.front();
      print_matrix(out, "extracted", r.extracted);
      print_matrix(out, "predicted", r.predicted);
      out << "solver = " << r.solver << ", rel_err t12 = " << num(r.rel_err[1]) << ", t21 = " << num(r.rel_err[2]) << "\n";
      summary["solver"] = r.solver;
      summary["extracted"] = matrix_json(r.extracted);
      summary["predicted"] = matrix_json(r.predicted);
      summary["abs_err"] = r.abs_err;
      summary["rel_err"] = r.rel_err;
      if (csv_path) write_report_csv(*csv_path, rep);
    }
    if (cfg.summary_path) write_file(*cfg.summary_path, summary.dump(2) + "\n");
    if (level >= 2) log << "[crossing-kit] " << to_string(mode) << " finished in " << elapsed() << " s\n";
    return kOk;
  }

  const auto sp = sweep_problem(cfg.problem, mode);
  if (cfg.h_values.empty()) cfg.h_values = default_h_values(cfg.problem);
  if (level >= 1)
    log << "[crossing-kit] " << to_string(mode) << ": " << cfg.h_values.size() << " h values in [" << cfg.h_values.back()
        << ", " << cfg.h_values.front() << "], jobs " << cfg.sweep.jobs << "\n";
  SweepReport rep = run_sweep(sp, cfg.h_values, cfg.sweep);
  evaluate_verdicts(rep, cfg.verdicts);
  if (mode == Mode::Verify && cfg.random_polynomials > 0)
    rep.verdicts.push_back(random_bracket_check(cfg.random_polynomials, ov.seed));
  if (level >= 2)
    for (const auto& r : rep.rows) log << "[crossing-kit] h=" << r.h << " status=" << r.status << " solver=" << r.solver << "\n";
  print_report(out, rep);
  if (csv_path) write_report_csv(*csv_path, rep);
  if (cfg.summary_path) write_file(*cfg.summary_path, summary_json(rep));
  if (level >= 1) log << "[crossing-kit] done in " << elapsed() << " s\n";

  const bool any_ok = std::any_of(rep.rows.begin(), rep.rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
  if (!any_ok) return kNumericalFailure;
  if (mode == Mode::Verify && !rep.all_pass()) return kVerdictFailed;
  return kOk;
}

}  // namespace crossing::kit
