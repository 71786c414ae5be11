#include "evopoisson/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "evopoisson/config.hpp"
#include "evopoisson/control.hpp"
#include "evopoisson/csv.hpp"
#include "evopoisson/dynamics.hpp"
#include "evopoisson/equilibrium.hpp"
#include "evopoisson/errors.hpp"
#include "evopoisson/payoff.hpp"

namespace evopoisson::cli {
namespace {

namespace fs = std::filesystem;

enum class Format { kCsv, kSvg };

struct GlobalOptions {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::string convention;
  std::string format = "csv";
  std::vector<std::string> sets;
};

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "svg") return Format::kSvg;
  throw ConfigError("unknown format '" + name + "' (expected csv or svg)");
}

std::string decimal_string(const Fraction& f) { return format_number(f.value()); }

/// Base model: --config if given, else `fallback`; then --set overrides and --convention.
PopulationModel resolve_model(const GlobalOptions& g, const PopulationModel& fallback) {
  PopulationModel model = g.config.empty() ? fallback : load_model(g.config);
  for (const std::string& assignment : g.sets) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects name=value, got '" + assignment + "'");
    model = set_parameter(model, assignment.substr(0, eq), Fraction::parse_decimal(assignment.substr(eq + 1)));
  }
  if (!g.convention.empty()) model = model.with_convention(parse_convention(g.convention));
  return model;
}

std::ofstream open_file(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  return file;
}

void finish(std::ofstream& file, const fs::path& path) {
  file.flush();
  if (!file) throw IoError("write failed for " + path.string());
}

Series table_series(const Table& table, std::size_t x_column, std::size_t y_column, std::string name) {
  Series s;
  s.name = std::move(name);
  for (const auto& row : table.rows) {
    s.xs.push_back(std::stod(row.at(x_column)));
    s.ys.push_back(std::stod(row.at(y_column)));
  }
  return s;
}

/// Writes a table to `path` (stdout when empty) as CSV or as a chart of
/// column `y_column` against column `x_column`.
void emit(const Table& table, const std::string& path, Format format, std::ostream& out, std::size_t x_column,
          std::size_t y_column, const std::string& title) {
  auto render = [&](std::ostream& os) {
    if (format == Format::kCsv) {
      write_csv(os, table);
    } else {
      write_svg(os, title, table.header.at(x_column), table.header.at(y_column),
                {table_series(table, x_column, y_column, table.header.at(y_column))});
    }
  };
  if (path.empty()) {
    render(out);
    return;
  }
  std::ofstream file = open_file(path);
  render(file);
  finish(file, path);
}

std::string figure_file(const std::string& dir, const std::string& stem, Format format) {
  return (fs::path(dir.empty() ? "." : dir) / (stem + (format == Format::kCsv ? ".csv" : ".svg"))).string();
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_eq(const GlobalOptions& g, std::ostream& out) {
  const PopulationModel model = resolve_model(g, figure_model(4));
  const PayoffEngine engine(model);
  const EquilibriumResult r = solve_equilibrium(engine);
  out << "p_star = " << format_number(r.p_star) << '\n'
      << "protection_rate = " << format_number(r.protection_rate()) << '\n'
      << "kind = " << to_string(r.kind) << '\n'
      << "residual = " << format_number(r.residual) << '\n'
      << "iterations = " << r.iterations << '\n'
      << "convention = " << to_string(r.convention) << '\n'
      << "safe_set_size = " << engine.safe_set().size() << '\n';
  if (!g.out.empty()) {
    Table t{{"p_star", "protection_rate", "kind", "residual", "iterations", "convention"}, {}};
    t.add_row({format_number(r.p_star), format_number(r.protection_rate()), to_string(r.kind),
               format_number(r.residual), std::to_string(r.iterations), to_string(r.convention)});
    std::ofstream file = open_file(g.out);
    write_csv(file, t);
    finish(file, g.out);
  }
  return kOk;
}

struct SweepOptions {
  std::string x;
  std::string y;
};

int cmd_sweep(const GlobalOptions& g, const SweepOptions& o, std::ostream& out) {
  const PopulationModel base = resolve_model(g, figure_model(4));
  std::vector<SweepAxis> axes{parse_sweep_axis(o.x)};
  if (!o.y.empty()) axes.push_back(parse_sweep_axis(o.y));

  Table table;
  for (const auto& axis : axes) table.header.push_back(axis.name);
  for (const char* col : {"p_star", "protection_rate", "revenue", "kind"}) table.header.emplace_back(col);

  auto evaluate = [&](const PopulationModel& model, std::vector<std::string> cells) {
    const EquilibriumResult r = solve_equilibrium(PayoffEngine(model));
    const double revenue = model.lambda() * (1.0 - r.p_star) * model.protection_cost();
    cells.push_back(format_number(r.p_star));
    cells.push_back(format_number(r.protection_rate()));
    cells.push_back(format_number(revenue));
    cells.emplace_back(to_string(r.kind));
    table.add_row(std::move(cells));
  };
  for (const Fraction& xv : axes[0].values) {
    const PopulationModel mx = set_parameter(base, axes[0].name, xv);
    if (axes.size() == 1) {
      evaluate(mx, {decimal_string(xv)});
      continue;
    }
    for (const Fraction& yv : axes[1].values) {
      evaluate(set_parameter(mx, axes[1].name, yv), {decimal_string(xv), decimal_string(yv)});
    }
  }
  emit(table, g.out, parse_format(g.format), out, 0, axes.size() + 1, "protection rate sweep");
  return kOk;
}

struct ReplicatorOptions {
  double p0 = 0.3;
  std::optional<double> dt;
  double t_max = 1e4;
  double epsilon = 1.0;
  double tol = 1e-10;
  std::string discrete;
  std::int64_t n_max = 10'000'000;
};

Table trajectory_table(const Trajectory& t) {
  Table table{{"t_or_n", "p"}, {}};
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    table.add_row({format_number(t.times[i]), format_number(t.values[i])});
  }
  return table;
}

int cmd_replicator(const GlobalOptions& g, const ReplicatorOptions& o, std::ostream& out, std::ostream& err) {
  const PayoffEngine engine(resolve_model(g, figure_model(4)));
  Trajectory traj;
  if (o.discrete.empty()) {
    IntegrationOptions io;
    io.dt = o.dt;
    io.t_max = o.t_max;
    io.epsilon = o.epsilon;
    io.tol = o.tol;
    traj = integrate_replicator(engine, o.p0, io);
  } else {
    DiscreteOptions d;
    d.n_max = o.n_max;
    d.tol = o.tol;
    traj = discrete_replicator(engine, o.p0, StepSchedule::parse(o.discrete), d);
  }
  for (const auto& w : traj.warnings) err << "warning: " << w << '\n';
  emit(trajectory_table(traj), g.out, parse_format(g.format), out, 0, 1, "replicator dynamics");
  if (!g.out.empty()) {
    out << "final_p = " << format_number(traj.final_value()) << '\n'
        << "converged = " << (traj.converged ? "true" : "false") << '\n'
        << "steps = " << traj.steps << '\n';
  }
  return kOk;
}

struct RevenueOptions {
  std::optional<double> price;
  std::size_t points = 201;
  bool optimize = false;
};

Table revenue_table(const PayoffEngine& engine, std::size_t points) {
  Table table{{"C", "revenue", "p_star"}, {}};
  const double k = engine.infection_cost();
  for (std::size_t i = 0; i < points; ++i) {
    const double c = points == 1 ? 0.0 : k * static_cast<double>(i) / static_cast<double>(points - 1);
    const double p = solve_equilibrium(engine.with_protection_cost(c)).p_star;
    table.add_row({format_number(c), format_number(revenue(engine, c)), format_number(p)});
  }
  return table;
}

int cmd_revenue(const GlobalOptions& g, const RevenueOptions& o, std::ostream& out) {
  const PayoffEngine engine(resolve_model(g, figure_model(5)));
  if (o.price) {
    const double p = solve_equilibrium(engine.with_protection_cost(*o.price)).p_star;
    Table table{{"C", "revenue", "p_star"}, {}};
    table.add_row({format_number(*o.price), format_number(revenue(engine, *o.price)), format_number(p)});
    emit(table, g.out, Format::kCsv, out, 0, 1, "revenue");
    return kOk;
  }
  if (o.points < 2) throw ConfigError("--points must be >= 2");
  emit(revenue_table(engine, o.points), g.out, parse_format(g.format), out, 0, 1, "revenue vs price");
  if (o.optimize) {
    const RevenueOptimum best = optimize_exact(engine);
    (g.out.empty() ? std::cerr : out) << "C_star = " << format_number(best.price)
                                      << "\nR_star = " << format_number(best.revenue) << '\n';
  }
  return kOk;
}

struct SpsaOptions {
  std::string schedule = "inv_n_log_n";
  std::string mode = "nested";
  std::optional<double> c0;
  std::optional<double> delta;
  std::int64_t n_outer = 300;
  double p0 = 0.5;
};

ControlMode parse_mode(const std::string& name) {
  if (name == "nested") return ControlMode::kNested;
  if (name == "coupled") return ControlMode::kCoupled;
  throw ConfigError("unknown mode '" + name + "' (expected nested or coupled)");
}

Table trace_table(const ControllerState& state) {
  const bool coupled = state.mode == ControlMode::kCoupled;
  Table table{{"n", "C_n", "R_hat", "Delta_n"}, {}};
  if (coupled) table.header.emplace_back("p_population");
  for (const TraceRow& row : state.trace) {
    std::vector<std::string> cells{std::to_string(row.n), format_number(row.price),
                                   format_number(row.revenue_estimate), std::to_string(row.direction)};
    if (coupled) cells.push_back(format_number(row.population.value_or(0.0)));
    table.add_row(std::move(cells));
  }
  return table;
}

TwoTimescaleOptions controller_options(const GlobalOptions& g, const SpsaOptions& o, StepSchedule schedule) {
  TwoTimescaleOptions opts;
  opts.price_steps = schedule;
  opts.mode = parse_mode(o.mode);
  opts.c0 = o.c0;
  opts.delta = o.delta;
  opts.n_outer = o.n_outer;
  opts.seed = g.seed;
  opts.p0 = o.p0;
  return opts;
}

int cmd_spsa(const GlobalOptions& g, const SpsaOptions& o, std::ostream& out, std::ostream& err) {
  const PayoffEngine engine(resolve_model(g, figure_model(6)));
  const ControllerState state =
      run_two_timescale(engine, controller_options(g, o, StepSchedule::parse(o.schedule)));
  for (const auto& note : state.notes) err << "note: " << note << '\n';
  emit(trace_table(state), g.out, parse_format(g.format), out, 0, 1, "SPSA price trace");
  if (!g.out.empty()) out << "final_price = " << format_number(state.price) << '\n';
  return kOk;
}

struct FigureOptions {
  int which = 0;
  std::vector<double> lambdas;
  std::vector<std::string> taus1;
  std::size_t r_points = 21;
  std::vector<double> p0s{0.3, 0.7};
  std::size_t points = 201;
  SpsaOptions spsa;
};

std::vector<Fraction> unit_grid(std::size_t points) {
  if (points < 2) throw ConfigError("need at least 2 grid points");
  std::vector<Fraction> values;
  for (std::size_t i = 0; i < points; ++i) {
    values.push_back(Fraction::make(static_cast<std::int64_t>(i), static_cast<std::int64_t>(points - 1)));
  }
  return values;
}

Table protection_curve(const PopulationModel& model, const std::string& label, const std::string& label_value,
                       std::size_t r_points) {
  Table table{{label, "r", "protection_rate"}, {}};
  for (const Fraction& r : unit_grid(r_points)) {
    const EquilibriumResult eq = solve_equilibrium(PayoffEngine(set_parameter(model, "r", r)));
    table.add_row({label_value, format_number(r.value()), format_number(eq.protection_rate())});
  }
  return table;
}

void write_figure_table(const Table& table, const std::string& path, Format format, std::size_t x, std::size_t y,
                        const std::string& title) {
  std::ostringstream unused;
  emit(table, path, format, unused, x, y, title);
}

int cmd_figure(const GlobalOptions& g, const FigureOptions& o, std::ostream& out) {
  if (o.which < 2 || o.which > 6) throw ConfigError("figure must be one of 2, 3, 4, 5, 6");
  const Format format = parse_format(g.format);
  const PopulationModel base = resolve_model(g, figure_model(o.which));
  std::vector<std::string> written;
  auto save = [&](const Table& t, const std::string& stem, std::size_t x, std::size_t y, const std::string& title) {
    const std::string path = figure_file(g.out, stem, format);
    write_figure_table(t, path, format, x, y, title);
    written.push_back(path);
  };

  switch (o.which) {
    case 2: {
      const std::vector<double> lambdas = o.lambdas.empty() ? std::vector<double>{2, 10, 20, 30} : o.lambdas;
      for (double lambda : lambdas) {
        save(protection_curve(base.with_lambda(lambda), "lambda", format_number(lambda), o.r_points),
             "fig2_lambda_" + format_number(lambda), 1, 2, "protection rate, lambda=" + format_number(lambda));
      }
      break;
    }
    case 3: {
      const std::vector<std::string> taus = o.taus1.empty() ? std::vector<std::string>{"0.05", "0.1"} : o.taus1;
      for (const std::string& tau : taus) {
        const PopulationModel m = set_parameter(base, "tau1", Fraction::parse_decimal(tau));
        save(protection_curve(m, "tau1", tau, o.r_points), "fig3_tau1_" + tau, 1, 2,
             "protection rate, tau1=" + tau);
      }
      break;
    }
    case 4: {
      const std::vector<double> lambdas = o.lambdas.empty() ? std::vector<double>{10, 20} : o.lambdas;
      for (double lambda : lambdas) {
        const PayoffEngine engine(base.with_lambda(lambda));
        for (double p0 : o.p0s) {
          const Trajectory t = integrate_replicator(engine, p0);
          save(trajectory_table(t), "fig4_lambda_" + format_number(lambda) + "_p0_" + format_number(p0), 0, 1,
               "replicator dynamics, p0=" + format_number(p0));
        }
      }
      break;
    }
    case 5: {
      if (o.points < 2) throw ConfigError("--points must be >= 2");
      save(revenue_table(PayoffEngine(base), o.points), "fig5_revenue", 0, 1, "revenue vs price");
      break;
    }
    case 6: {
      const PayoffEngine engine(base);
      for (const StepSchedule& s : {StepSchedule::inv_n_log_n(), StepSchedule::inv_n(), StepSchedule::inv_n_sq()}) {
        const ControllerState state = run_two_timescale(engine, controller_options(g, o.spsa, s));
        save(trace_table(state), "fig6_" + s.name(), 0, 1, "SPSA price, a(n)=" + s.name());
      }
      break;
    }
  }
  for (const auto& path : written) out << path << '\n';
  return kOk;
}

}  // namespace

PopulationModel figure_model(int which) {
  const auto tau = [](std::int64_t num, std::int64_t den) { return Rate::exact(num, den); };
  switch (which) {
    case 2:
    case 4:
      return PopulationModel::from_taus(10.0, {0.1, 0.9}, {tau(1, 20), tau(1, 5)}, 5.0, 4.0);
    case 3:
      return PopulationModel::from_taus(30.0, {0.1, 0.9}, {tau(1, 20), tau(1, 5)}, 5.0, 4.0);
    case 5:
      return PopulationModel::from_taus(10.0, {0.3, 0.7}, {tau(1, 2), tau(49, 50)}, 10.0, 5.0);
    case 6: {
      ModelParams p;
      p.lambda = 10.0;
      p.type_dist = {0.3, 0.7};
      p.beta = Rate::exact(5, 1);
      p.recovery_rates = {Rate::exact(10, 1), Rate::exact(51, 10)};
      p.infection_cost = 10.0;
      p.protection_cost = 5.0;
      return PopulationModel(std::move(p));
    }
    default:
      throw ConfigError("no figure " + std::to_string(which));
  }
}

PopulationModel set_parameter(const PopulationModel& model, std::string_view name, Fraction value) {
  ModelParams p = model.params();
  p.convention = model.convention();
  const std::string key(name);
  auto type_index = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
    std::size_t idx = 0;
    for (char ch : name.substr(prefix.size())) {
      if (ch < '0' || ch > '9') return std::nullopt;
      idx = idx * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (idx < 1 || idx > p.type_dist.size()) {
      throw ConfigError("type index out of range in '" + key + "'");
    }
    return idx - 1;
  };

  if (name == "lambda") {
    p.lambda = value.value();
  } else if (name == "C") {
    p.protection_cost = value.value();
  } else if (name == "K") {
    p.infection_cost = value.value();
  } else if (name == "beta") {
    // Keep tau fixed: rescale recovery rates with beta.
    const Rate beta = Rate::exact(value);
    for (std::size_t t = 0; t < p.recovery_rates.size(); ++t) p.recovery_rates[t] = beta / model.taus()[t];
    p.beta = beta;
  } else if (name == "r") {
    if (p.type_dist.size() < 2) throw ConfigError("'r' needs at least two types");
    const double share = value.value();
    if (share < 0 || share > 1) throw ConfigError("'r' must lie in [0, 1]");
    double rest = 0;
    for (std::size_t t = 1; t < p.type_dist.size(); ++t) rest += p.type_dist[t];
    const double n_rest = static_cast<double>(p.type_dist.size() - 1);
    for (std::size_t t = 1; t < p.type_dist.size(); ++t) {
      p.type_dist[t] = rest > 0 ? p.type_dist[t] / rest * (1.0 - share) : (1.0 - share) / n_rest;
    }
    p.type_dist[0] = share;
  } else if (auto t = type_index("tau")) {
    if (!(value.num > 0)) throw ConfigError("'" + key + "' must be > 0");
    p.recovery_rates[*t] = p.beta / Rate::exact(value);
  } else if (auto t = type_index("delta")) {
    p.recovery_rates[*t] = Rate::exact(value);
  } else {
    throw ConfigError("unknown parameter '" + key + "'");
  }
  try {
    return PopulationModel(std::move(p));
  } catch (const InvalidParameter& e) {
    throw ConfigError("invalid value for '" + key + "': " + e.what());
  }
}

SweepAxis parse_sweep_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("sweep axis must look like name=lo:hi:count");
  SweepAxis axis;
  axis.name = std::string(spec.substr(0, eq));
  std::vector<std::string> parts;
  std::string rest(spec.substr(eq + 1));
  std::stringstream ss(rest);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ConfigError("sweep axis must look like name=lo:hi:count");
  Fraction lo, hi;
  long count = 0;
  try {
    lo = Fraction::parse_decimal(parts[0]);
    hi = Fraction::parse_decimal(parts[1]);
    std::size_t used = 0;
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw ConfigError("bad count");
  } catch (const std::exception& e) {
    throw ConfigError("cannot parse sweep axis '" + std::string(spec) + "': " + e.what());
  }
  if (count < 1) throw ConfigError("sweep axis '" + axis.name + "' is empty");
  if (hi.value() < lo.value()) throw ConfigError("sweep axis '" + axis.name + "' has hi < lo");
  if (count == 1) {
    axis.values.push_back(lo);
    return axis;
  }
  for (long i = 0; i < count; ++i) {
    axis.values.push_back(lo + (hi - lo) * Fraction::make(i, count - 1));
  }
  return axis;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria, replicator dynamics and price control for the Poisson virus-protection game",
               "evopoisson"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "Model JSON file");
  app.add_option("--out", g.out, "Output file (figure: output directory)");
  app.add_option("--seed", g.seed, "Seed for the SPSA perturbations");
  app.add_option("--convention", g.convention, "Safe-set convention: literal | exclusive");
  app.add_option("--format", g.format, "Output format: csv | svg");
  app.add_option("--set", g.sets, "Override a model parameter, e.g. --set lambda=20 (repeatable)");

  std::function<int()> action;

  auto* eq = app.add_subcommand("eq", "Solve for the symmetric equilibrium");
  eq->callback([&] { action = [&] { return cmd_eq(g, out); }; });

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Equilibrium over a 1-D or 2-D parameter grid");
  sweep->add_option("--x", sweep_opts.x, "Outer axis name=lo:hi:count")->required();
  sweep->add_option("--y", sweep_opts.y, "Inner axis name=lo:hi:count");
  sweep->callback([&] { action = [&] { return cmd_sweep(g, sweep_opts, out); }; });

  ReplicatorOptions rep_opts;
  auto* rep = app.add_subcommand("replicator", "Integrate the replicator dynamics");
  rep->add_option("--p0", rep_opts.p0, "Initial OFF share");
  rep->add_option("--dt", rep_opts.dt, "RK4 time step (default 0.5 eps/(lambda K))");
  rep->add_option("--t-max", rep_opts.t_max, "Time horizon");
  rep->add_option("--epsilon", rep_opts.epsilon, "Time-scale factor");
  rep->add_option("--tol", rep_opts.tol, "Rest-point tolerance");
  rep->add_option("--discrete", rep_opts.discrete, "Run the discrete iteration with this schedule instead");
  rep->add_option("--n-max", rep_opts.n_max, "Iteration cap for --discrete");
  rep->callback([&] { action = [&] { return cmd_replicator(g, rep_opts, out, err); }; });

  RevenueOptions rev_opts;
  auto* rev = app.add_subcommand("revenue", "Controller revenue R(C) = lambda (1 - p*(C)) C");
  rev->add_option("--price", rev_opts.price, "Single price instead of a grid");
  rev->add_option("--points", rev_opts.points, "Grid points over [0, K]");
  rev->add_flag("--optimize", rev_opts.optimize, "Also report the exact optimum");
  rev->callback([&] { action = [&] { return cmd_revenue(g, rev_opts, out); }; });

  SpsaOptions spsa_opts;
  auto add_spsa_options = [](CLI::App* cmd, SpsaOptions& o) {
    cmd->add_option("--schedule", o.schedule, "Price step a(n): inv_n_log_n | inv_n | inv_n_sq | const:<h>");
    cmd->add_option("--mode", o.mode, "nested | coupled");
    cmd->add_option("--c0", o.c0, "Starting price (default K/2)");
    cmd->add_option("--delta", o.delta, "Probe width (default 0.01 K)");
    cmd->add_option("--n-outer", o.n_outer, "Price updates");
    cmd->add_option("--p0", o.p0, "Initial population OFF share");
  };
  auto* spsa = app.add_subcommand("spsa", "Two-timescale SPSA price learning");
  add_spsa_options(spsa, spsa_opts);
  spsa->callback([&] { action = [&] { return cmd_spsa(g, spsa_opts, out, err); }; });

  FigureOptions fig_opts;
  auto* fig = app.add_subcommand("figure", "Regenerate the data behind figures 2-6");
  fig->add_option("which", fig_opts.which, "Figure number (2-6)")->required();
  fig->add_option("--lambdas", fig_opts.lambdas, "Interaction sizes (figures 2 and 4)");
  fig->add_option("--taus1", fig_opts.taus1, "Type-1 spreading rates (figure 3)");
  fig->add_option("--r-points", fig_opts.r_points, "Grid points for r (figures 2 and 3)");
  fig->add_option("--p0s", fig_opts.p0s, "Initial states (figure 4)");
  fig->add_option("--points", fig_opts.points, "Price grid points (figure 5)");
  add_spsa_options(fig, fig_opts.spsa);
  fig->callback([&] { action = [&] { return cmd_figure(g, fig_opts, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    return action ? action() : kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace evopoisson::cli
