#include "fracvel/cli.hpp"

#include "fracvel/acceptance.hpp"
#include "fracvel/expr.hpp"
#include "fracvel/langevin.hpp"
#include "fracvel/lfd.hpp"
#include "fracvel/singular_ifs.hpp"
#include "fracvel/velocity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <variant>

namespace fracvel::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// What a command produced: the table is the CSV form; the JSON form is
/// `summary` plus the rows (merged into the top level when `single`).
struct Report {
  Table table;
  json summary = json::object();
  bool single = false;
  bool rows_in_json = true;
  int exit_code = success;
};

std::string csv_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s)
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "");
      std::visit(
          [&os](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              os << csv_number(v);
            else if constexpr (std::is_same_v<T, long long>)
              os << v;
            else
              os << csv_text(v);
          },
          row[i]);
    }
    os << '\n';
  }
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return std::isfinite(v) ? json(v) : json(csv_number(v));
        else
          return json(v);
      },
      c);
}

void write_json(std::ostream& os, const std::string& command, const Report& r) {
  json doc = json::object();
  doc["schema"] = 1;
  doc["command"] = command;
  for (const auto& [k, v] : r.summary.items())
    doc[k] = v;
  auto row_object = [&](const std::vector<Cell>& row) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      o[r.table.columns[i]] = cell_json(row[i]);
    return o;
  };
  if (r.single && r.table.rows.size() == 1) {
    const json only = row_object(r.table.rows.front());
    for (const auto& [k, v] : only.items())
      doc[k] = v;
  } else if (r.rows_in_json) {
    json rows = json::array();
    for (const auto& row : r.table.rows)
      rows.push_back(row_object(row));
    doc["rows"] = std::move(rows);
  }
  os << doc.dump(2) << '\n';
}

json number_json(double v) { return std::isfinite(v) ? json(v) : json(csv_number(v)); }

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void add_output_options(CLI::App* sub, OutputOptions& o, const std::string& default_format = "json") {
  o.format = default_format;
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
}

void add_schedule_options(CLI::App* sub, EstimatorSchedule& s) {
  sub->add_option("--eps0", s.eps0, "Initial increment");
  sub->add_option("--ratio", s.ratio, "Geometric decay of the increments");
  sub->add_option("--levels", s.levels, "Number of increments");
  sub->add_option("--zero-band", s.zero_band, "Slope tolerance");
  sub->add_option("--value-tol", s.value_tol, "Extrapolation tolerance");
}

void add_quadrature_options(CLI::App* sub, QuadratureConfig& q, std::string& scheme) {
  sub->add_option("--nodes", q.nodes, "Initial Gauss points per panel");
  sub->add_option("--max-nodes", q.max_nodes, "Upper bound on Gauss points per panel");
  sub->add_option("--tolerance", q.tolerance, "Relative quadrature tolerance");
  sub->add_option("--scheme", scheme, "substitution or jacobi_weight")
      ->check(CLI::IsMember({"substitution", "jacobi_weight"}));
}

/// Sample points from --x or a uniform --grid on [lo, hi].
struct PointOptions {
  std::vector<double> xs;
  int grid = 0;
  double lo = 0.0;
  double hi = 1.0;

  std::vector<double> points() const {
    std::vector<double> out = xs;
    if (grid > 0)
      for (int i = 0; i <= grid; ++i)
        out.push_back(lo + (hi - lo) * i / grid);
    if (out.empty())
      throw CLI::ValidationError("--x or --grid", "no evaluation points given");
    return out;
  }
};

void add_point_options(CLI::App* sub, PointOptions& p) {
  sub->add_option("--x", p.xs, "Evaluation point (repeatable, comma separated)")->delimiter(',');
  sub->add_option("--grid", p.grid, "Uniform grid with this many intervals")->check(CLI::PositiveNumber);
  sub->add_option("--lo", p.lo, "Left end of the grid");
  sub->add_option("--hi", p.hi, "Right end of the grid");
}

RealFunction function_from(const std::string& src) { return to_function(parse_function(src)); }

std::string classification_text(Classification c) { return std::string(to_string(c)); }

// ---------------------------------------------------------------------------

struct EvalCmd {
  std::string fn;
  PointOptions points;
  std::vector<std::string> exact_points;
  bool exact = false;
  OutputOptions out;

  Report run() const {
    Report r;
    r.table.columns = {"x", "value"};
    const FunctionExpr e = parse_function(fn);
    if (exact) {
      const auto* b = std::get_if<Builtin>(&e.form);
      if (b == nullptr || b->kind != BuiltinKind::derham)
        throw ParamError("--exact needs a derham(a) expression");
      std::vector<DyadicRational> xs;
      for (const std::string& s : exact_points)
        xs.push_back(DyadicRational::parse(s));
      for (double x : points.xs)
        xs.push_back(DyadicRational::from_double(x));
      if (points.grid > 0) {
        if ((points.grid & (points.grid - 1)) != 0)
          throw ParamError("--exact grids need a power-of-two interval count");
        const auto e2 = static_cast<unsigned>(std::countr_zero(static_cast<unsigned>(points.grid)));
        for (int i = 0; i <= points.grid; ++i)
          xs.push_back(DyadicRational(i, e2));
      }
      if (xs.empty())
        throw CLI::ValidationError("--x or --grid", "no evaluation points given");
      r.table.columns = {"x", "x_dyadic", "value"};
      for (const DyadicRational& x : xs)
        r.table.rows.push_back({x.to_double(), x.to_string(), derham_eval_exact(b->args[0], x)});
    } else {
      const RealFunction f = to_function(e);
      for (double x : points.points())
        r.table.rows.push_back({x, f(x)});
    }
    r.summary["function"] = print(e);
    r.single = r.table.rows.size() == 1;
    return r;
  }
};

struct VelocityCmd {
  std::string fn;
  PointOptions points;
  double beta = 0.5;
  std::string side = "forward";
  EstimatorSchedule sched;
  OutputOptions out;

  Report run() const {
    const RealFunction f = function_from(fn);
    const Side s = parse_side(side);
    Report r;
    r.table.columns = {"x", "side", "beta", "classification", "value", "fitted_slope", "residual"};
    for (double x : points.points()) {
      const VelocityEstimate v = estimate_velocity(f, x, beta, s, sched);
      r.table.rows.push_back({x, std::string(to_string(s)), beta, classification_text(v.classification),
                              v.classification == Classification::finite ? v.value : 0.0, v.fitted_slope,
                              v.residual});
    }
    r.summary["function"] = print(parse_function(fn));
    r.single = r.table.rows.size() == 1;
    return r;
  }
};

struct ScaleVelocityCmd {
  std::string fn;
  double x = 0.0;
  double order = 0.5;
  std::string side = "forward";
  double step_fraction = 0.125;
  EstimatorSchedule sched;
  OutputOptions out;

  Report run() const {
    const RealFunction f = function_from(fn);
    const Side s = parse_side(side);
    sched.validate();
    Report r;
    r.table.columns = {"eps", "value"};
    for (int n = 0; n < sched.levels; ++n) {
      const double e = sched.eps(n);
      r.table.rows.push_back({e, scale_velocity(f, x, e, order, s, step_fraction * e)});
    }
    const VelocityEstimate limit = basic_evaluation(f, x, 1.0 - order, s, sched, step_fraction);
    r.summary["function"] = print(parse_function(fn));
    r.summary["x"] = x;
    r.summary["order"] = order;
    r.summary["side"] = to_string(s);
    r.summary["classification"] = classification_text(limit.classification);
    r.summary["value"] = number_json(limit.limit());
    return r;
  }
};

struct LfdCmd {
  std::string fn;
  double a = 0.0;
  double beta = 0.5;
  std::string side = "forward";
  bool bv = false;
  EstimatorSchedule sched;
  QuadratureConfig quad;
  std::string scheme = "substitution";
  OutputOptions out;

  Report run() const {
    const FunctionExpr e = parse_function(fn);
    const RealFunction f = to_function(e);
    const Side s = parse_side(side);
    QuadratureConfig q = quad;
    q.scheme = parse_scheme(scheme);
    q.h_schedule = sched;

    Report r;
    r.summary["function"] = print(e);
    r.summary["a"] = a;
    r.summary["beta"] = beta;
    r.summary["side"] = to_string(s);

    LFDResult lfd;
    if (bv) {
      if (s != Side::forward)
        throw ParamError("the derivative form is available for the forward side only");
      lfd = kg_lfd_bv(f, derivative_function(e), a, beta, q);
    } else {
      lfd = kg_lfd(f, a, beta, s, q);
    }
    const VelocityEstimate v = estimate_velocity(f, a, beta, s, sched);
    r.summary["lfd"] = {{"classification", classification_text(lfd.classification)},
                        {"value", number_json(lfd.value)},
                        {"residual", number_json(lfd.residual)},
                        {"form", bv ? "derivative" : "integral_average"}};
    r.summary["velocity"] = {{"classification", classification_text(v.classification)},
                             {"value", number_json(v.limit())}};
    if (v.classification == Classification::finite && lfd.classification == Classification::finite &&
        std::abs(v.value) > 1e-12)
      r.summary["gamma_ratio"] = lfd.value / v.value;
    else
      r.summary["gamma_ratio"] = nullptr;

    r.table.columns = {"h", bv ? "quotient" : "M"};
    for (const VelocitySample& m : lfd.m_samples)
      r.table.rows.push_back({m.eps, m.value});
    return r;
  }
};

struct RlCmd {
  std::string fn;
  double a = 0.0;
  PointOptions points;
  double beta = 0.5;
  std::string side = "forward";
  std::string op = "integral";
  QuadratureConfig quad;
  std::string scheme = "substitution";
  OutputOptions out;

  Report run() const {
    const FunctionExpr e = parse_function(fn);
    const RealFunction f = to_function(e);
    const Side s = parse_side(side);
    QuadratureConfig q = quad;
    q.scheme = parse_scheme(scheme);
    Report r;
    r.table.columns = {"x", "value"};
    for (double x : points.points()) {
      const double v = op == "integral" ? rl_integral(f, a, x, beta, s, q) : rl_derivative(f, a, x, beta, s, q);
      r.table.rows.push_back({x, v});
    }
    r.summary["function"] = print(e);
    r.summary["operation"] = op;
    r.summary["a"] = a;
    r.summary["beta"] = beta;
    r.summary["side"] = to_string(s);
    r.single = r.table.rows.size() == 1;
    return r;
  }
};

struct IfsCmd {
  std::string family = "derham";
  double a = 0.5;
  int depth = 8;
  int grid = 1024;
  double lo = 0.0;
  double hi = 1.0;
  std::string parity = "even";
  bool velocity = false;
  std::optional<double> beta;
  bool dyadic_columns = false;
  bool exact = false;
  OutputOptions out;

  double velocity_order(const IFSSpec& spec) const {
    if (beta)
      return *beta;
    return spec.family == IFSFamily::neidinger ? -std::log2(std::max(spec.a, 1.0 - spec.a)) : -std::log2(spec.a);
  }

  Report run() const {
    const IFSSpec spec{parse_family(family), a, depth, parse_swap_parity(parity)};
    check_depth(depth);
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
      throw ParamError("grid must lie inside [0, 1]");
    std::function<double(double)> value;
    if (velocity) {
      const double b = velocity_order(spec);
      if (spec.family == IFSFamily::neidinger) {
        value = [=](double x) { return neidinger_velocity_iterate(spec.a, b, spec.depth, x, spec.swap_parity); };
      } else if (spec.family == IFSFamily::derham) {
        value = [=](double x) {
          const VelocityEstimate v = derham_velocity_closed_form(spec.a, x, b);
          switch (v.classification) {
          case Classification::finite:
            return v.value;
          case Classification::zero:
            return 0.0;
          case Classification::divergent:
            return std::numeric_limits<double>::infinity();
          case Classification::inconclusive:
            break;
          }
          return std::numeric_limits<double>::quiet_NaN();
        };
      } else {
        throw ParamError("velocity grids are available for the derham and neidinger families");
      }
    } else if (exact) {
      if (spec.family != IFSFamily::derham)
        throw ParamError("--exact applies to the derham family");
      value = [=](double x) { return derham_eval(spec.a, x); };
    } else {
      value = [=](double x) { return ifs_curve(spec, x); };
    }

    Report r;
    r.table.columns = dyadic_columns ? std::vector<std::string>{"x_num", "x_exp", "x_real", "value"}
                                     : std::vector<std::string>{"x", "value"};
    for (int i = 0; i <= grid; ++i) {
      const double x = lo + (hi - lo) * i / grid;
      const double v = value(x);
      if (dyadic_columns) {
        const DyadicRational d = DyadicRational::from_double(x);
        r.table.rows.push_back({d.num().str(), static_cast<long long>(d.exp()), x, v});
      } else {
        r.table.rows.push_back({x, v});
      }
    }
    r.summary["family"] = to_string(spec.family);
    r.summary["a"] = a;
    r.summary["depth"] = depth;
    r.summary["swap_parity"] = parity;
    r.summary["quantity"] = velocity ? "velocity" : "curve";
    if (velocity)
      r.summary["beta"] = velocity_order(spec);
    return r;
  }
};

struct LangevinCmd {
  double beta = 0.5;
  int steps = 1 << 12;
  std::optional<double> dt;
  double noise_amp = 1.0;
  std::string oscillation = "alternating";
  std::uint64_t seed = 0;
  double x0 = 0.0;
  double drift = 0.0;
  int probes = 16;
  std::vector<int> partitions{4, 16, 64};
  OutputOptions out;

  Report run() const {
    PathSpec spec;
    spec.beta = beta;
    spec.steps = steps;
    spec.dt = dt.value_or(1.0 / steps);
    spec.noise_amp = noise_amp;
    spec.oscillation = parse_sign_process(oscillation);
    spec.seed = seed;
    spec.x0 = x0;
    const double a = drift;
    spec.drift = [a](double, double) { return a; };
    const Path path = generate_path(spec);

    Report r;
    r.table.columns = {"t", "x"};
    for (std::size_t k = 0; k < path.size(); ++k)
      r.table.rows.push_back({path.t[k], path.x[k]});

    const HolderExponent e = path_holder_exponent(path, probes);
    r.summary["beta"] = beta;
    r.summary["steps"] = steps;
    r.summary["dt"] = spec.dt;
    r.summary["oscillation"] = to_string(spec.oscillation);
    r.summary["seed"] = seed;
    r.summary["exponent"] = e.defined ? json(e.exponent) : json(nullptr);
    r.summary["exponent_defined"] = e.defined;
    json scaling = json::array();
    for (int n : partitions) {
      const ScalingCheck c = partition_scaling_check(noise_amp, beta, n, spec.oscillation);
      scaling.push_back({{"n", n},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"ratio", c.ratio},
                         {"expected_constant", std::pow(static_cast<double>(n), 1.0 - beta)},
                         {"zero_coefficient", c.zero_coefficient}});
    }
    r.summary["scaling"] = std::move(scaling);
    // The JSON form is the summary; the path itself is the CSV form.
    r.rows_in_json = false;
    return r;
  }
};

struct VerifyCmd {
  std::string format = "text";
  std::string out_path;
  std::vector<int> only;

  Report run() const {
    std::vector<CriterionResult> results;
    if (only.empty())
      results = run_acceptance();
    else
      for (int id : only)
        results.push_back(run_criterion(id));
    Report r;
    r.table.columns = {"id", "criterion", "status", "seconds", "detail"};
    bool all = true;
    for (const CriterionResult& c : results) {
      all = all && c.passed;
      r.table.rows.push_back({static_cast<long long>(c.id), c.title, std::string(c.passed ? "PASS" : "FAIL"),
                              c.seconds, c.detail});
    }
    r.summary["passed"] = all;
    r.exit_code = all ? success : acceptance_failure;
    return r;
  }
};

void write_text_table(std::ostream& os, const Report& r) {
  for (const auto& row : r.table.rows) {
    os << std::get<std::string>(row[2]) << "  #" << std::setw(2) << std::left << std::get<long long>(row[0])
       << std::right << " " << std::get<std::string>(row[1]) << "  (" << std::fixed << std::setprecision(2)
       << std::get<double>(row[3]) << "s)  " << std::get<std::string>(row[4]) << '\n';
    os.unsetf(std::ios::floatfield);
  }
  os << (r.summary["passed"].get<bool>() ? "all criteria passed" : "some criteria FAILED") << '\n';
}

int emit(const std::string& command, const Report& r, const std::string& format, const std::string& out_path,
         std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return usage_error;
    }
    os = &file;
  }
  os->imbue(std::locale::classic());
  if (format == "csv")
    write_csv(*os, r.table);
  else if (format == "text")
    write_text_table(*os, r);
  else
    write_json(*os, command, r);
  return r.exit_code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional velocities, local fractional derivatives and singular IFS functions", "fracvel"};
  app.require_subcommand(1);

  EvalCmd eval;
  auto* eval_sub = app.add_subcommand("eval", "Evaluate a function at points or on a grid");
  eval_sub->add_option("--fn", eval.fn, "Function expression")->required();
  add_point_options(eval_sub, eval.points);
  eval_sub->add_option("--dyadic", eval.exact_points, "Dyadic point k/2^n (with --exact)")->delimiter(',');
  eval_sub->add_flag("--exact", eval.exact, "Exact dyadic evaluation of derham(a)");
  add_output_options(eval_sub, eval.out);

  VelocityCmd vel;
  auto* vel_sub = app.add_subcommand("velocity", "Estimate one-sided fractional velocities");
  vel_sub->add_option("--fn", vel.fn, "Function expression")->required();
  add_point_options(vel_sub, vel.points);
  vel_sub->add_option("--beta", vel.beta, "Velocity order in (0, 1]")->required();
  vel_sub->add_option("--side", vel.side, "forward or backward");
  add_schedule_options(vel_sub, vel.sched);
  add_output_options(vel_sub, vel.out);

  ScaleVelocityCmd sv;
  auto* sv_sub = app.add_subcommand("scale-velocity", "Scale velocity along the increment schedule");
  sv_sub->add_option("--fn", sv.fn, "Function expression")->required();
  sv_sub->add_option("--x", sv.x, "Base point");
  sv_sub->add_option("--order", sv.order, "Operator order in [0, 1)");
  sv_sub->add_option("--side", sv.side, "forward or backward");
  sv_sub->add_option("--step-fraction", sv.step_fraction, "Derivative step as a fraction of eps");
  add_schedule_options(sv_sub, sv.sched);
  add_output_options(sv_sub, sv.out);

  LfdCmd lfd;
  auto* lfd_sub = app.add_subcommand("lfd", "Local fractional derivative and its equivalence with the velocity");
  lfd_sub->add_option("--fn", lfd.fn, "Function expression")->required();
  lfd_sub->add_option("--a", lfd.a, "Base point");
  lfd_sub->add_option("--beta", lfd.beta, "Order in (0, 1)")->required();
  lfd_sub->add_option("--side", lfd.side, "forward or backward");
  lfd_sub->add_flag("--bv", lfd.bv, "Use the derivative form");
  add_schedule_options(lfd_sub, lfd.sched);
  add_quadrature_options(lfd_sub, lfd.quad, lfd.scheme);
  add_output_options(lfd_sub, lfd.out);

  RlCmd rl;
  auto* rl_sub = app.add_subcommand("rl", "Riemann-Liouville integral or derivative");
  rl_sub->add_option("--fn", rl.fn, "Function expression")->required();
  rl_sub->add_option("--a", rl.a, "Lower (left) or upper (right) terminal");
  add_point_options(rl_sub, rl.points);
  rl_sub->add_option("--beta", rl.beta, "Order")->required();
  rl_sub->add_option("--side", rl.side, "forward (left) or backward (right)");
  rl_sub->add_option("--op", rl.op, "integral or derivative")->check(CLI::IsMember({"integral", "derivative"}));
  add_quadrature_options(rl_sub, rl.quad, rl.scheme);
  add_output_options(rl_sub, rl.out);

  IfsCmd ifs;
  auto* ifs_sub = app.add_subcommand("ifs", "Curves and velocity grids of the IFS families");
  ifs_sub->add_option("--family", ifs.family, "derham, derham_reparam or neidinger");
  ifs_sub->add_option("--a", ifs.a, "Parameter");
  ifs_sub->add_option("--depth", ifs.depth, "Iteration depth")->check(CLI::NonNegativeNumber);
  ifs_sub->add_option("--grid", ifs.grid, "Grid intervals")->check(CLI::PositiveNumber);
  ifs_sub->add_option("--lo", ifs.lo, "Left end of the grid");
  ifs_sub->add_option("--hi", ifs.hi, "Right end of the grid");
  ifs_sub->add_option("--swap-parity", ifs.parity, "Neidinger levels using 1 - a")
      ->check(CLI::IsMember({"even", "odd"}));
  ifs_sub->add_flag("--velocity", ifs.velocity, "Emit the velocity instead of the curve");
  ifs_sub->add_option("--beta", ifs.beta, "Velocity order");
  ifs_sub->add_flag("--dyadic-columns", ifs.dyadic_columns, "Emit x as num/2^exp columns");
  ifs_sub->add_flag("--exact", ifs.exact, "Exact De Rham values instead of the depth-n iterate");
  add_output_options(ifs_sub, ifs.out, "csv");

  LangevinCmd lan;
  auto* lan_sub = app.add_subcommand("langevin", "Fractional Langevin path and scaling checks");
  lan_sub->add_option("--beta", lan.beta, "Order of the fractional term");
  lan_sub->add_option("--steps", lan.steps, "Number of steps")->check(CLI::PositiveNumber);
  lan_sub->add_option("--dt", lan.dt, "Time step (default 1/steps)");
  lan_sub->add_option("--noise-amp", lan.noise_amp, "Magnitude of B");
  lan_sub->add_option("--oscillation", lan.oscillation, "alternating, random_sign or constant");
  lan_sub->add_option("--seed", lan.seed, "Random seed");
  lan_sub->add_option("--x0", lan.x0, "Initial value");
  lan_sub->add_option("--drift", lan.drift, "Constant drift a");
  lan_sub->add_option("--probes", lan.probes, "Probe count for the exponent")->check(CLI::PositiveNumber);
  lan_sub->add_option("--partition", lan.partitions, "Refinement counts N")->delimiter(',');
  add_output_options(lan_sub, lan.out);

  VerifyCmd ver;
  auto* ver_sub = app.add_subcommand("verify", "Run the acceptance suite");
  ver_sub->add_option("--format", ver.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  ver_sub->add_option("--out", ver.out_path, "Write output to this file");
  ver_sub->add_option("--criterion", ver.only, "Run only these criteria")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? success : usage_error;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "eval")
      return emit(name, eval.run(), eval.out.format, eval.out.out_path, out, err);
    if (name == "velocity")
      return emit(name, vel.run(), vel.out.format, vel.out.out_path, out, err);
    if (name == "scale-velocity")
      return emit(name, sv.run(), sv.out.format, sv.out.out_path, out, err);
    if (name == "lfd")
      return emit(name, lfd.run(), lfd.out.format, lfd.out.out_path, out, err);
    if (name == "rl")
      return emit(name, rl.run(), rl.out.format, rl.out.out_path, out, err);
    if (name == "ifs")
      return emit(name, ifs.run(), ifs.out.format, ifs.out.out_path, out, err);
    if (name == "langevin")
      return emit(name, lan.run(), lan.out.format, lan.out.out_path, out, err);
    if (name == "verify")
      return emit(name, ver.run(), ver.format, ver.out_path, out, err);
    err << "error: unknown command\n";
    return usage_error;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const ParamError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  }
}

} // namespace fracvel::cli
