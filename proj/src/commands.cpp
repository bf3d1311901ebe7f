#include "relilat/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "relilat/errors.hpp"
#include "relilat/mcoracle.hpp"
#include "relilat/reliability.hpp"
#include "relilat/spec_file.hpp"

namespace relilat {

namespace {

struct Options {
  std::string command;
  std::string spec_path;
  std::string grid;
  std::string times;
  std::string formula = "auto";
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  std::optional<double> at_time;
  bool emit_canonical = false;
};

std::string number(double x) { return fmt::format("{:.17g}", x); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot read spec file '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double parse_time(const std::string& s, const char* flag) {
  double t = 0.0;
  try {
    std::size_t used = 0;
    t = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw ParseError(fmt::format("{}: '{}' is not a number", flag, s));
  }
  if (!(t >= 0.0) || std::isinf(t)) throw DomainError(fmt::format("{}: time {} must be finite and >= 0", flag, s));
  return t;
}

std::vector<double> split_numbers(const std::string& s, char sep, const char* flag) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(parse_time(item, flag));
  return out;
}

// start:stop:step, inclusive of stop up to rounding; points are start + i*step.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ParseError(fmt::format("--grid: expected start:stop:step, got '{}'", spec));
  const double start = parse_time(parts[0], "--grid");
  const double stop = parse_time(parts[1], "--grid");
  const double step = parse_time(parts[2], "--grid");
  if (!(step > 0.0) || stop < start) throw DomainError(fmt::format("--grid: '{}' describes no points", spec));
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

std::vector<double> time_points(const Options& o) {
  if (!o.grid.empty() && !o.times.empty()) throw ParseError("--grid and --times are mutually exclusive");
  if (!o.grid.empty()) return parse_grid(o.grid);
  if (!o.times.empty()) return split_numbers(o.times, ',', "--times");
  throw ParseError(fmt::format("{} needs --grid or --times", o.command));
}

Formula formula_of(const Options& o) {
  const std::optional<Formula> f = parse_formula(o.formula);
  if (!f) throw ParseError(fmt::format("--formula: unknown formula '{}'", o.formula));
  return *f;
}

DistributionRoute distribution_route_of(const Options& o) {
  if (o.formula == "auto") return DistributionRoute::MobiusCdf;
  for (DistributionRoute r : kAllDistributionRoutes)
    if (to_string(r) == o.formula) return r;
  throw ParseError(fmt::format("--formula: unknown distribution route '{}'", o.formula));
}

// The structure tables a set-level command works on: φ itself, or φ_{v_t} with --at-time.
StructureTables tables_for(const SystemSpec& spec, const Options& o) {
  if (o.at_time) return threshold_structure(spec.polynomial(), *o.at_time).tables;
  if (spec.weighted())
    throw ValidationError(fmt::format("{} on a weighted system needs --at-time", o.command));
  return std::get<SystemStructure>(spec.system).tables();
}

void print_sets(std::ostream& out, const std::vector<Mask>& sets) {
  for (Mask a : sets) fmt::print(out, "{}\n", format_subset(a));
}

std::string_view kind_name(const JointLifetimeModel& j) {
  switch (j.kind().index()) {
    case 0: return "independent";
    case 1: return "discrete_joint";
    default: return "comonotone";
  }
}

int cmd_check(const SystemSpec& spec, const Options& o, std::ostream& out) {
  if (o.emit_canonical) {
    out << emit_canonical(spec);
    return kExitOk;
  }
  fmt::print(out, "status: ok\nn: {}\n", spec.n);
  if (const auto* s = std::get_if<SystemStructure>(&spec.system)) {
    fmt::print(out, "system: structure\n");
    fmt::print(out, "minimal_paths: {}\n", s->paths_and_cuts().minimal_paths.size());
    fmt::print(out, "minimal_cuts: {}\n", s->paths_and_cuts().minimal_cuts.size());
    if (!s->irrelevant_components().empty())
      fmt::print(out, "irrelevant: {}\n", fmt::join(s->irrelevant_components(), " "));
  } else {
    const WeightedLatticePolynomial& p = std::get<WeightedLatticePolynomial>(spec.system);
    fmt::print(out, "system: weighted{}\n", spec.profile ? " (symmetric)" : "");
    fmt::print(out, "breakpoints: {}\n", p.breakpoints().size());
  }
  fmt::print(out, "lifetimes: {}\n", kind_name(spec.lifetimes));
  return kExitOk;
}

int cmd_mobius(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const StructureTables tables = tables_for(spec, o);
  fmt::print(out, "subset,m\n");
  for (Mask a = 0; a < tables.m_v.size(); ++a)
    if (tables.m_v[a] != 0) fmt::print(out, "{},{}\n", format_subset(a), tables.m_v[a]);
  return kExitOk;
}

int cmd_dual(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const StructureTables tables = tables_for(spec, o);
  std::string bits;
  for (std::uint8_t b : tables.v_star.values()) bits += b ? '1' : '0';
  fmt::print(out, "{}\n", bits);
  return kExitOk;
}

int cmd_reliability(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const std::vector<double> grid = time_points(o);
  const ReliabilityQuery q(spec.polynomial(), spec.lifetimes, formula_of(o));
  fmt::print(out, "t,R_S\n");
  for (double t : grid) fmt::print(out, "{},{}\n", number(t), number(reliability_at(q, t)));
  return kExitOk;
}

int cmd_mttf(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const ReliabilityQuery q(spec.polynomial(), spec.lifetimes, formula_of(o));
  const MttfResult r = mttf(q);
  fmt::print(out, "{} {}\n", number(r.value), to_string(r.method));
  return kExitOk;
}

int cmd_dist(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const std::vector<double> grid = time_points(o);
  const DistributionRoute route = distribution_route_of(o);
  const WeightedLatticePolynomial p = spec.polynomial();
  fmt::print(out, "t,F\n");
  for (double t : grid) fmt::print(out, "{},{}\n", number(t), number(wlp_distribution_at(p, spec.lifetimes, t, route)));
  return kExitOk;
}

int cmd_verify(const SystemSpec& spec, const Options& o, std::ostream& out) {
  const std::vector<double> grid = time_points(o);
  const ReliabilityQuery q(spec.polynomial(), spec.lifetimes, formula_of(o));
  fmt::print(out, "t,exact,mc_mean,mc_stderr,status\n");
  bool all_pass = true;
  for (double t : grid) {
    const double exact = reliability_at(q, t);
    const McEstimate mc = estimate_reliability(q.system(), spec.lifetimes, t, o.samples, o.seed);
    const double diff = std::abs(exact - mc.mean);
    // A zero standard error means every sample agreed; only rounding may separate them.
    const bool pass = mc.std_error > 0.0 ? diff < 3.0 * mc.std_error : diff <= 1e-12;
    all_pass = all_pass && pass;
    fmt::print(out, "{},{},{},{},{}\n", number(t), number(exact), number(mc.mean), number(mc.std_error),
               pass ? "PASS" : "FAIL");
  }
  return all_pass ? kExitOk : kExitVerification;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Validation: return "validation";
    case ErrorCategory::Numerical: return "numerical";
    case ErrorCategory::Verification: return "verification";
  }
  return "internal";
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return kExitParse;
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Numerical: return kExitNumerical;
    case ErrorCategory::Verification: return kExitVerification;
  }
  return kExitNumerical;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Reliability analysis of semicoherent systems and weighted lattice polynomials", "relilat"};
  app.add_option("command", o.command, "check|paths|cuts|mobius|dual|reliability|mttf|dist|verify")
      ->required()
      ->check(CLI::IsMember({"check", "paths", "cuts", "mobius", "dual", "reliability", "mttf", "dist", "verify"}));
  app.add_option("specfile", o.spec_path, "system-spec file")->required();
  app.add_option("--grid", o.grid, "time grid start:stop:step");
  app.add_option("--times", o.times, "comma-separated times");
  app.add_option("--formula", o.formula, "evaluation route");
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_option("--samples", o.samples, "Monte Carlo sample count");
  app.add_option("--at-time", o.at_time, "threshold time for weighted systems");
  app.add_flag("--emit-canonical", o.emit_canonical, "print the canonical spec instead of the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error[parse]: {}\n", one_line(e.what()));
    return kExitParse;
  }

  try {
    if (o.at_time && (*o.at_time < 0.0 || std::isnan(*o.at_time) || std::isinf(*o.at_time)))
      throw DomainError(fmt::format("--at-time: time {} must be finite and >= 0", *o.at_time));
    const SystemSpec spec = parse_spec(read_file(o.spec_path));
    if (o.command == "check") return cmd_check(spec, o, out);
    if (o.command == "paths") {
      print_sets(out, minimal_true_sets(tables_for(spec, o).v));
      return kExitOk;
    }
    if (o.command == "cuts") {
      print_sets(out, minimal_true_sets(tables_for(spec, o).v_star));
      return kExitOk;
    }
    if (o.command == "mobius") return cmd_mobius(spec, o, out);
    if (o.command == "dual") return cmd_dual(spec, o, out);
    if (o.command == "reliability") return cmd_reliability(spec, o, out);
    if (o.command == "mttf") return cmd_mttf(spec, o, out);
    if (o.command == "dist") return cmd_dist(spec, o, out);
    return cmd_verify(spec, o, out);
  } catch (const Error& e) {
    fmt::print(err, "error[{}]: {}\n", category_name(e.category()), one_line(e.what()));
    return exit_code(e.category());
  } catch (const std::exception& e) {
    fmt::print(err, "error[numerical]: {}\n", one_line(e.what()));
    return kExitNumerical;
  }
}

}  // namespace relilat
