#include "mulgeo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mulgeo/catalog.hpp"
#include "mulgeo/classify.hpp"
#include "mulgeo/error.hpp"
#include "mulgeo/reconstruct.hpp"

namespace mulgeo::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

json log_array(const MulVector3& v) {
  const auto l = v.log_coords();
  return json::array({l[0], l[1], l[2]});
}

struct CurveArgs {
  std::string curve;
  std::string x, y, z;
  std::optional<double> from, to;
  int samples = 512;
  std::optional<double> tol;
  std::string backend = "jet";
  std::string format;
  std::string out;
  bool reparametrize = false;
};

void add_output_options(CLI::App* cmd, CurveArgs& a, const std::string& default_format) {
  a.format = default_format;
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", a.out, "Write results to this file instead of stdout");
}

void add_curve_options(CLI::App* cmd, CurveArgs& a, const std::string& default_format) {
  auto* curve = cmd->add_option("--curve", a.curve, "Catalog curve name");
  auto* x = cmd->add_option("--x", a.x, "First component expression in t");
  auto* y = cmd->add_option("--y", a.y, "Second component expression in t");
  auto* z = cmd->add_option("--z", a.z, "Third component expression in t");
  curve->excludes(x)->excludes(y)->excludes(z);
  cmd->add_option("--from", a.from, "Lower parameter bound (> 0)")->check(CLI::PositiveNumber);
  cmd->add_option("--to", a.to, "Upper parameter bound (> 0)")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", a.samples, "Number of log-uniform samples")->check(CLI::Range(8, 1000000));
  cmd->add_option("--tol", a.tol, "Log-metric zero-test tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--backend", a.backend, "Derivative backend")->check(CLI::IsMember({"jet", "fd"}));
  cmd->add_flag("--reparametrize", a.reparametrize, "Reparametrize non-unit-speed curves by arc length");
  add_output_options(cmd, a, default_format);
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a flag's expression, naming the flag in any error.
ExprAst parse_flag(const std::string& text, const char* flag) {
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(flag) + ": " + e.what(), e.position(), e.expected());
  }
}

AnalysisOptions analysis_options(const CurveArgs& a) {
  AnalysisOptions o;
  o.backend = a.backend == "fd" ? Backend::FiniteDifference : Backend::Jet;
  o.tol = a.tol;
  if (!o.tol) {
    if (const char* env = std::getenv("MULGEO_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
        throw UsageError("MULGEO_TOL must be a positive number, got '" + std::string(env) + "'");
      }
      o.tol = v;
    }
  }
  o.reparametrize = a.reparametrize;
  o.samples = a.samples;
  return o;
}

MulCurve resolve_curve(const CurveArgs& a) {
  std::optional<MulCurve> curve;
  if (!a.curve.empty()) {
    curve = catalog(a.curve);
  } else if (!a.x.empty() && !a.y.empty() && !a.z.empty()) {
    // User curves default to (e^-1, e) unless bounded.
    curve = MulCurve({parse_flag(a.x, "--x"), parse_flag(a.y, "--y"), parse_flag(a.z, "--z")},
                     {MulScalar(std::exp(-1.0)), MulScalar(std::exp(1.0))}, "user curve");
  } else {
    throw UsageError("a curve is required: --curve <name> or all of --x, --y, --z");
  }
  if (a.from || a.to) {
    const MulScalar lo = a.from ? MulScalar(*a.from) : curve->domain().lo;
    const MulScalar hi = a.to ? MulScalar(*a.to) : curve->domain().hi;
    if (!(lo.value() < hi.value())) throw UsageError("--from must be smaller than --to");
    curve = curve->with_domain({lo, hi});
  }
  return *curve;
}

// Writes the result either to the stream or to the --out file.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

struct Row {
  double u = 0.0;
  std::array<double, 3> x{};
  double speed = 0.0, kappa = 0.0, tau = 0.0, lambda = 0.0, nu = 0.0, mu = 0.0, rho = 0.0, perp = 0.0;
  MulVector3 t, n, b;
};

std::vector<Row> analyze_rows(const MulCurve& curve, const AnalysisOptions& o) {
  std::vector<Row> rows;
  for (double u : sample_log_parameters(curve.domain(), o.samples, o.trim)) {
    const MulScalar s = MulScalar::from_log(u);
    const FrenetData f = frenet(curve, s, o);
    const MulVector3 x = curve.at(s);
    const Decomposition d = decompose(x, f);
    Row r;
    r.u = u;
    r.x = x.log_coords();
    r.speed = f.speed.log();
    r.kappa = f.kappa.log();
    r.tau = f.tau.log();
    r.lambda = d.lambda.log();
    r.nu = d.nu.log();
    r.mu = d.mu.log();
    r.rho = d.rho.log();
    r.perp = d.perp_norm.log();
    r.t = f.t;
    r.n = f.n;
    r.b = f.b;
    rows.push_back(r);
  }
  return rows;
}

std::string render_rows(const MulCurve& curve, const std::vector<Row>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << csv_header() << '\n';
    for (const Row& r : rows) {
      os << num(r.u) << ',' << num(r.x[0]) << ',' << num(r.x[1]) << ',' << num(r.x[2]) << ',' << num(r.speed) << ','
         << num(r.kappa) << ',' << num(r.tau) << ',' << num(r.lambda) << ',' << num(r.nu) << ',' << num(r.mu) << ','
         << num(r.rho) << ',' << num(r.perp) << '\n';
    }
    return os.str();
  }
  json samples = json::array();
  for (const Row& r : rows) {
    samples.push_back({{"s", r.u},
                       {"x1", r.x[0]},
                       {"x2", r.x[1]},
                       {"x3", r.x[2]},
                       {"speed_log", r.speed},
                       {"kappa_log", r.kappa},
                       {"tau_log", r.tau},
                       {"lambda_log", r.lambda},
                       {"nu_log", r.nu},
                       {"mu_log", r.mu},
                       {"rho_log", r.rho},
                       {"perp_log", r.perp},
                       {"t_log", log_array(r.t)},
                       {"n_log", log_array(r.n)},
                       {"b_log", log_array(r.b)}});
  }
  json doc = {{"curve", curve.label()}, {"samples", samples}};
  return doc.dump(2) + "\n";
}

std::string render_report(const MulCurve& curve, const ClassificationReport& r, const AnalysisOptions& o) {
  json doc;
  doc["curve"] = curve.label();
  doc["backend"] = o.backend == Backend::Jet ? "jet" : "fd";
  doc["tolerance"] = r.tolerance;
  doc["samples_used"] = r.samples_used;
  doc["line"] = r.line;
  doc["planar"] = r.planar;
  doc["spherical"] = r.spherical;
  doc["rectifying"] = r.rectifying;
  doc["residuals"] = {{"line", r.line_residual},
                      {"planar", r.planar_residual},
                      {"spherical", r.spherical_residual},
                      {"rectifying", r.rectifying_residual}};
  if (r.spherical_evaluated) {
    doc["sphere"] = {{"center_log", log_array(r.sphere.center)},
                     {"radius_log", r.sphere.radius.log()},
                     {"residual", r.sphere.residual},
                     {"twisted", r.sphere.twisted},
                     {"degenerate_samples", r.sphere.degenerate_samples},
                     {"position_residual", r.sphere.position_residual},
                     {"radius_identity_residual", r.sphere.radius_identity_residual},
                     {"identity_radius_log", r.sphere.identity_radius_log}};
  }
  if (r.rectifying_evaluated) {
    const RectifyingFits& f = r.fits;
    doc["fits"] = {
        {"tangential", {{"a_log", f.a_log}, {"b_log", f.b_log}, {"residual", f.tangential_residual},
                        {"binormal_residual", f.binormal_residual}, {"pass", f.tangential_pass}}},
        {"curvature_ratio", {{"c", f.c}, {"d_log", f.d_log}, {"residual", f.ratio_residual},
                             {"degenerate", f.ratio_degenerate}, {"pass", f.ratio_pass}}},
        {"distance", {{"c", f.quad_c}, {"d", f.quad_d}, {"shift", f.shift}, {"offset", f.offset},
                      {"residual", f.distance_residual}, {"pass", f.distance_pass}}},
        {"normal_part", {{"rho_range_log", f.rho_range_log}, {"perp_norm_log", f.perp_norm_log},
                         {"residual", f.perp_residual}, {"pass", f.perp_pass}}},
        {"perp_norm_log", f.perp_norm_log}};
  }
  doc["diagnostics"] = r.diagnostics;
  return doc.dump(2) + "\n";
}

// Comma-separated component expressions, e.g. "e,1,exp(-1)".
MulVector3 parse_vector(const std::string& text, const char* flag) {
  std::array<double, 3> logs{};
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) != (comma != std::string::npos)) {
      throw UsageError(std::string(flag) + " needs exactly three comma-separated components");
    }
    const std::string part = text.substr(start, i < 2 ? comma - start : std::string::npos);
    const double v = evaluate(parse_flag(part, flag), 1.0);
    logs[i] = MulScalar(v).log();
    start = comma + 1;
  }
  return MulVector3::from_log(logs);
}

int run_catalog(bool list, std::ostream& out) {
  if (!list) throw UsageError("catalog needs --list");
  for (const auto& name : catalog_names()) out << name << '\n';
  return kExitOk;
}

}  // namespace

std::string render_analysis(const MulCurve& curve, const AnalysisOptions& options, const std::string& format) {
  return render_rows(curve, analyze_rows(curve, options), format);
}

const char* csv_header() noexcept {
  return "s,x1,x2,x3,speed_log,kappa_log,tau_log,lambda_log,nu_log,mu_log,rho_log,perp_log";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicative differential geometry of space curves", "mulgeo"};
  app.require_subcommand(1);

  // eval
  std::string eval_op, eval_expr;
  std::optional<double> eval_a, eval_b, eval_at;
  auto* eval = app.add_subcommand("eval", "Multiplicative scalar arithmetic, or evaluate an expression");
  eval->add_option("--op", eval_op, "Operation")
      ->check(CLI::IsMember({"add", "sub", "mul", "div", "neg", "square", "sqrt", "abs", "cos", "sin", "tan", "sec",
                             "arccos", "arctan"}));
  eval->add_option("--a", eval_a, "First operand (> 0)");
  eval->add_option("--b", eval_b, "Second operand (> 0)");
  eval->add_option("--expr", eval_expr, "Expression in t");
  eval->add_option("--at", eval_at, "Value of t")->check(CLI::PositiveNumber);

  // derive
  std::string derive_expr, derive_backend = "jet";
  std::vector<double> derive_at;
  int derive_order = 1;
  auto* derive = app.add_subcommand("derive", "Multiplicative derivative of an expression");
  derive->add_option("--expr", derive_expr, "Expression in t")->required();
  derive->add_option("--at", derive_at, "Points (> 0)")->required()->check(CLI::PositiveNumber);
  derive->add_option("--order", derive_order, "Derivative order")->check(CLI::Range(1, 4));
  derive->add_option("--backend", derive_backend, "Derivative backend")->check(CLI::IsMember({"jet", "fd"}));

  // integrate
  std::string integrate_expr;
  double integrate_from = 0.0, integrate_to = 0.0, integrate_tol = kDefaultQuadratureTol;
  auto* integrate = app.add_subcommand("integrate", "Multiplicative integral of an expression");
  integrate->add_option("--expr", integrate_expr, "Expression in t")->required();
  integrate->add_option("--from", integrate_from, "Lower bound (> 0)")->required()->check(CLI::PositiveNumber);
  integrate->add_option("--to", integrate_to, "Upper bound (> 0)")->required()->check(CLI::PositiveNumber);
  integrate->add_option("--tol", integrate_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);

  CurveArgs analyze_args, classify_args, construct_args;
  auto* analyze = app.add_subcommand("analyze", "Per-sample Frenet apparatus and position decomposition");
  add_curve_options(analyze, analyze_args, "csv");
  auto* classify_cmd = app.add_subcommand("classify", "Line / planar / spherical / rectifying classification");
  add_curve_options(classify_cmd, classify_args, "json");

  double construct_a = std::exp(1.0);
  auto* construct = app.add_subcommand("construct", "Rectifying curve (a sec* s) y(s) over a spherical curve y");
  add_curve_options(construct, construct_args, "csv");
  construct->add_option("--a", construct_a, "Scale a > 1 (default e)")->check(CLI::PositiveNumber);

  std::string rec_kappa, rec_tau, rec_x0, rec_t0, rec_n0;
  std::optional<double> rec_s0;
  double rec_from = std::exp(-1.0), rec_to = std::exp(1.0), rec_step = kReconstructStep;
  CurveArgs rec_out;
  auto* rec = app.add_subcommand("reconstruct", "Curve from prescribed curvature and torsion");
  rec->add_option("--kappa", rec_kappa, "Curvature as an expression in t (> 1)")->required();
  rec->add_option("--tau", rec_tau, "Torsion as an expression in t (> 0)")->required();
  rec->add_option("--x0", rec_x0, "Initial point, three comma-separated expressions")->required();
  rec->add_option("--t0", rec_t0, "Initial tangent")->required();
  rec->add_option("--n0", rec_n0, "Initial principal normal")->required();
  rec->add_option("--s0", rec_s0, "Parameter of the initial data (default 1, or --from)")->check(CLI::PositiveNumber);
  rec->add_option("--from", rec_from, "Lower parameter bound")->check(CLI::PositiveNumber);
  rec->add_option("--to", rec_to, "Upper parameter bound")->check(CLI::PositiveNumber);
  rec->add_option("--step", rec_step, "Log-parameter step")->check(CLI::PositiveNumber);
  add_output_options(rec, rec_out, "csv");

  bool catalog_list = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "Built-in curves");
  catalog_cmd->add_flag("--list", catalog_list, "List catalog curve names");

  std::vector<const char*> argv{"mulgeo"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mulgeo: error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      std::ostringstream os;
      if (!eval_op.empty()) {
        if (!eval_a) throw UsageError("--op needs --a");
        const MulScalar a(*eval_a);
        static const std::map<std::string, FieldOp> field{
            {"add", FieldOp::Add}, {"sub", FieldOp::Sub}, {"mul", FieldOp::Mul}, {"div", FieldOp::Div}};
        static const std::map<std::string, PowerOp> power{
            {"square", PowerOp::Square}, {"sqrt", PowerOp::Sqrt}, {"abs", PowerOp::Abs}};
        static const std::map<std::string, TrigOp> trig{{"cos", TrigOp::Cos},   {"sin", TrigOp::Sin},
                                                        {"tan", TrigOp::Tan},   {"sec", TrigOp::Sec},
                                                        {"arccos", TrigOp::Arccos}, {"arctan", TrigOp::Arctan}};
        MulScalar r;
        if (auto it = field.find(eval_op); it != field.end()) {
          if (!eval_b) throw UsageError("--op " + eval_op + " needs --b");
          r = field_op(a, MulScalar(*eval_b), it->second);
        } else if (eval_b) {
          throw UsageError("--op " + eval_op + " takes only --a");
        } else if (eval_op == "neg") {
          r = neg(a);
        } else if (auto p = power.find(eval_op); p != power.end()) {
          r = power_op(a, p->second);
        } else {
          r = trig_op(a, trig.at(eval_op));
        }
        os << num(r.value()) << '\n';
      } else if (!eval_expr.empty()) {
        os << num(evaluate(parse_flag(eval_expr, "--expr"), eval_at.value_or(1.0))) << '\n';
      } else {
        throw UsageError("eval needs --op or --expr");
      }
      out << os.str();
      return kExitOk;
    }
    if (derive->parsed()) {
      const ExprAst f = parse_flag(derive_expr, "--expr");
      for (double at : derive_at) {
        const MulScalar x(at);
        MulScalar r;
        if (derive_backend == "jet") {
          r = mul_derivative(f, x, derive_order);
        } else if (derive_order == 1) {
          r = mul_derivative_fd([&](double t) { return evaluate(f, t); }, x);
        } else {
          const Series g = finite_difference_series(
              [&](double u) { return std::log(evaluate(f, std::exp(u))); }, x.log(), derive_order, kFdJetStep);
          r = MulScalar::from_log(g.derivative_at(derive_order));
        }
        out << num(r.value()) << '\n';
      }
      return kExitOk;
    }
    if (integrate->parsed()) {
      const MulScalar r = mul_integral(parse_flag(integrate_expr, "--expr"), MulScalar(integrate_from), MulScalar(integrate_to),
                                       integrate_tol);
      out << num(r.value()) << '\n';
      return kExitOk;
    }
    if (analyze->parsed()) {
      const AnalysisOptions o = analysis_options(analyze_args);
      const MulCurve curve = resolve_curve(analyze_args);
      emit(render_analysis(curve, o, analyze_args.format), analyze_args.out, out);
      return kExitOk;
    }
    if (classify_cmd->parsed()) {
      if (classify_args.format != "json") throw UsageError("classify supports --format json only");
      const AnalysisOptions o = analysis_options(classify_args);
      const MulCurve curve = resolve_curve(classify_args);
      emit(render_report(curve, classify(curve, o), o), classify_args.out, out);
      return kExitOk;
    }
    if (construct->parsed()) {
      const AnalysisOptions o = analysis_options(construct_args);
      CurveArgs base = construct_args;
      if (base.curve.empty() && base.x.empty()) base.curve = "spherical_y";
      const MulCurve y = resolve_curve(base);
      const MulCurve x = construct_rectifying(MulScalar(construct_a), y, o);
      emit(render_analysis(x, o, construct_args.format), construct_args.out, out);
      return kExitOk;
    }
    if (rec->parsed()) {
      if (!(rec_from < rec_to)) throw UsageError("--from must be smaller than --to");
      const MulScalar s0(rec_s0.value_or(rec_from <= 1.0 && 1.0 <= rec_to ? 1.0 : rec_from));
      const MulVector3 t0 = parse_vector(rec_t0, "--t0");
      const MulVector3 n0 = parse_vector(rec_n0, "--n0");
      const Reconstruction r =
          reconstruct_from_curvatures(parse_flag(rec_kappa, "--kappa"), parse_flag(rec_tau, "--tau"), parse_vector(rec_x0, "--x0"),
                                      complete_frame(t0, n0), {MulScalar(rec_from), MulScalar(rec_to)}, s0, rec_step);
      std::ostringstream os;
      if (rec_out.format == "csv") {
        os << "s,x1,x2,x3,t1,t2,t3,n1,n2,n3,b1,b2,b3\n";
        for (const auto& smp : r.samples) {
          os << num(smp.s.log());
          for (const auto* v : {&smp.x, &smp.frame.t, &smp.frame.n, &smp.frame.b})
            for (double c : v->log_coords()) os << ',' << num(c);
          os << '\n';
        }
      } else {
        json samples = json::array();
        for (const auto& smp : r.samples) {
          samples.push_back({{"s", smp.s.log()},
                             {"x_log", log_array(smp.x)},
                             {"t_log", log_array(smp.frame.t)},
                             {"n_log", log_array(smp.frame.n)},
                             {"b_log", log_array(smp.frame.b)}});
        }
        json doc = {{"step", r.step}, {"max_correction", r.max_correction}, {"samples", samples}};
        os << doc.dump(2) << '\n';
      }
      emit(os.str(), rec_out.out, out);
      return kExitOk;
    }
    if (catalog_cmd->parsed()) return run_catalog(catalog_list, out);
  } catch (const UsageError& e) {
    err << "mulgeo: error[usage]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "mulgeo: error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::LexError:
      case ErrorKind::ParseError:
      case ErrorKind::UnknownFunction:
      case ErrorKind::UnknownIdentifier:
      case ErrorKind::UnknownCurve:
      case ErrorKind::InvalidArgument:
        return kExitUsage;
      default:
        return kExitNumeric;
    }
  }
  err << "mulgeo: error[usage]: no subcommand given\n";
  return kExitUsage;
}

}  // namespace mulgeo::cli
