#include "relilat/spec_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "relilat/errors.hpp"

namespace relilat {

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "";
  return fmt::format("line {}: ", mark.line + 1);
}

[[noreturn]] void parse_fail(const YAML::Node& node, std::string_view key, std::string_view msg) {
  throw ParseError(fmt::format("{}{}: {}", where(node), key, msg));
}

[[noreturn]] void invalid(const YAML::Node& node, std::string_view key, std::string_view msg) {
  throw ValidationError(fmt::format("{}{}: {}", where(node), key, msg));
}

// Library errors raised while building a section are re-raised with the section's line.
template <class F>
auto anchored(const YAML::Node& node, std::string_view key, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Parse) throw;
    invalid(node, key, e.what());
  }
}

std::string scalar(const YAML::Node& node, std::string_view key) {
  if (!node.IsScalar()) parse_fail(node, key, "expected a scalar");
  return node.Scalar();
}

double parse_number(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key);
  if (s == "inf" || s == ".inf" || s == "+inf" || s == "+.inf" || s == "Inf" || s == ".Inf") return kInf;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || std::isnan(value))
    parse_fail(node, key, fmt::format("'{}' is not a number", s));
  return value;
}

long long parse_integer(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    parse_fail(node, key, fmt::format("'{}' is not an integer", s));
  return value;
}

std::vector<double> parse_numbers(const YAML::Node& node, std::string_view key) {
  if (!node.IsSequence()) parse_fail(node, key, "expected a list of numbers");
  std::vector<double> out;
  for (const YAML::Node& item : node) out.push_back(parse_number(item, key));
  return out;
}

int parse_component(const YAML::Node& node, std::string_view key, std::string_view token, int n) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    parse_fail(node, key, fmt::format("'{}' is not a component index", token));
  if (value < 1 || value > n) invalid(node, key, fmt::format("component {} outside 1..{}", value, n));
  return value;
}

// "1 3 5", "{}" / "" for the empty set, or a list of indices.
Mask parse_subset(const YAML::Node& node, std::string_view key, int n) {
  Mask m = 0;
  auto add = [&](int i) {
    const Mask bit = Mask{1} << (i - 1);
    if (m & bit) invalid(node, key, fmt::format("component {} repeated", i));
    m |= bit;
  };
  if (node.IsSequence()) {
    for (const YAML::Node& item : node) add(parse_component(item, key, scalar(item, key), n));
    return m;
  }
  if (node.IsNull()) return 0;
  const std::string s = scalar(node, key);
  if (s == "{}") return 0;
  std::istringstream tokens(s);
  std::string token;
  while (tokens >> token) add(parse_component(node, key, token, n));
  return m;
}

std::vector<Mask> parse_subsets(const YAML::Node& node, std::string_view key, int n) {
  if (!node.IsSequence()) parse_fail(node, key, "expected a list of subsets");
  std::vector<Mask> out;
  for (const YAML::Node& item : node) out.push_back(parse_subset(item, key, n));
  return out;
}

// The single key of a one-entry map such as `kofn: {k: 2}` or `exponential: {rate: 1}`.
std::pair<std::string, YAML::Node> single_entry(const YAML::Node& node, std::string_view key) {
  if (!node.IsMap() || node.size() != 1) parse_fail(node, key, "expected exactly one entry");
  const auto it = node.begin();
  return {it->first.as<std::string>(), it->second};
}

const YAML::Node required(const YAML::Node& map, std::string_view parent, const char* field) {
  if (!map.IsMap()) parse_fail(map, parent, "expected a mapping");
  const YAML::Node child = map[field];
  if (!child) parse_fail(map, parent, fmt::format("missing '{}'", field));
  return child;
}

void check_length(const YAML::Node& node, std::string_view key, std::size_t got, std::size_t want) {
  if (got != want) invalid(node, key, fmt::format("expected {} entries, got {}", want, got));
}

WeightedLatticePolynomial parse_weights(const YAML::Node& node, int n) {
  if (!node.IsSequence()) parse_fail(node, "weights", "expected a list of (subset, value) pairs");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> listed(size, std::nan(""));
  for (const YAML::Node& entry : node) {
    YAML::Node set_node;
    YAML::Node value_node;
    if (entry.IsSequence() && entry.size() == 2) {
      set_node = entry[0];
      value_node = entry[1];
    } else if (entry.IsMap()) {
      set_node = required(entry, "weights", "set");
      value_node = required(entry, "weights", "value");
    } else {
      parse_fail(entry, "weights", "each entry is {set: ..., value: ...} or [subset, value]");
    }
    const Mask a = parse_subset(set_node, "weights", n);
    if (!std::isnan(listed[a])) invalid(entry, "weights", fmt::format("subset {} listed twice", format_subset(a)));
    const double value = parse_number(value_node, "weights");
    if (value < 0.0) invalid(entry, "weights", fmt::format("w({}) = {} is negative", format_subset(a), value));
    listed[a] = value;
  }
  // Monotone closure: max over listed subsets, with w(∅) = 0 unless listed.
  std::vector<double> closure(size, 0.0);
  for (Mask a = 0; a < size; ++a) closure[a] = std::isnan(listed[a]) ? 0.0 : listed[a];
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask a = 0; a < size; ++a)
      if (a & bit) closure[a] = std::max(closure[a], closure[a ^ bit]);
  }
  std::vector<double> w(size);
  for (Mask a = 0; a < size; ++a) w[a] = std::isnan(listed[a]) ? closure[a] : listed[a];
  return anchored(node, "weights", [&] { return WeightedLatticePolynomial(RealSetFunction(n, std::move(w))); });
}

struct ParsedSystem {
  std::variant<SystemStructure, WeightedLatticePolynomial> system;
  std::optional<SymmetricProfile> profile;
};

ParsedSystem parse_structure(const YAML::Node& node, int n) {
  const auto [kind, body] = single_entry(node, "structure");
  const std::string key = "structure." + kind;
  auto boolean = [](SystemStructure s) { return ParsedSystem{std::move(s), std::nullopt}; };
  auto weighted = [](WeightedLatticePolynomial p) { return ParsedSystem{std::move(p), std::nullopt}; };

  if (kind == "path_sets" || kind == "cut_sets") {
    const std::vector<Mask> sets = parse_subsets(body, key, n);
    return anchored(body, key, [&] {
      return boolean(kind == "path_sets" ? from_path_sets(n, sets) : from_cut_sets(n, sets));
    });
  }
  if (kind == "truth_table") {
    const std::string bits = scalar(body, key);
    check_length(body, key, bits.size(), std::size_t{1} << n);
    std::vector<std::uint8_t> v(bits.size());
    for (std::size_t a = 0; a < bits.size(); ++a) {
      if (bits[a] != '0' && bits[a] != '1') parse_fail(body, key, fmt::format("'{}' is not a bit", bits[a]));
      v[a] = bits[a] == '1';
    }
    return anchored(body, key, [&] { return boolean(SystemStructure(BooleanSetFunction(n, std::move(v)))); });
  }
  if (kind == "kofn") {
    if (const YAML::Node inner_n = body.IsMap() ? body["n"] : YAML::Node(); inner_n) {
      if (parse_integer(inner_n, key + ".n") != n)
        invalid(inner_n, key + ".n", fmt::format("disagrees with n = {}", n));
    }
    const long long k = parse_integer(required(body, key, "k"), key + ".k");
    return anchored(body, key, [&] {
      if (k < 1 || k > n) throw RangeError(fmt::format("k = {} outside [1, {}]", k, n));
      return boolean(make_kofn(n, static_cast<int>(k)));
    });
  }
  if (kind == "series") return boolean(make_series(n));
  if (kind == "parallel") return boolean(make_parallel(n));
  if (kind == "weights") return weighted(parse_weights(body, n));
  if (kind == "weighted_min" || kind == "weighted_max") {
    const YAML::Node bounds_node = required(body, key, "bounds");
    const std::vector<double> bounds = parse_numbers(bounds_node, key + ".bounds");
    check_length(bounds_node, key + ".bounds", bounds.size(), static_cast<std::size_t>(n));
    return anchored(bounds_node, key, [&] {
      return weighted(kind == "weighted_min" ? make_weighted_min(bounds) : make_weighted_max(bounds));
    });
  }
  if (kind == "symmetric") {
    const YAML::Node values = required(body, key, "w_tilde");
    std::vector<double> w_tilde = parse_numbers(values, key + ".w_tilde");
    check_length(values, key + ".w_tilde", w_tilde.size(), static_cast<std::size_t>(n) + 1);
    return anchored(values, key, [&] {
      SymmetricProfile profile(std::move(w_tilde));
      return ParsedSystem{make_symmetric(profile), profile};
    });
  }
  parse_fail(node, "structure", fmt::format("unknown kind '{}'", kind));
}

MarginalLifetime parse_marginal(const YAML::Node& node, std::string_view parent) {
  const auto [kind, body] = single_entry(node, parent);
  const std::string key = fmt::format("{}.{}", parent, kind);
  if (kind == "exponential") {
    const double rate = parse_number(required(body, key, "rate"), key + ".rate");
    return anchored(body, key, [&] { return MarginalLifetime::exponential(rate); });
  }
  if (kind == "weibull") {
    const double shape = parse_number(required(body, key, "shape"), key + ".shape");
    const double scale = parse_number(required(body, key, "scale"), key + ".scale");
    return anchored(body, key, [&] { return MarginalLifetime::weibull(shape, scale); });
  }
  if (kind == "empirical") {
    const YAML::Node knots_node = body.IsMap() ? required(body, key, "knots") : body;
    if (!knots_node.IsSequence()) parse_fail(knots_node, key, "expected a list of [time, survival] pairs");
    std::vector<std::pair<double, double>> knots;
    for (const YAML::Node& knot : knots_node) {
      if (!knot.IsSequence() || knot.size() != 2) parse_fail(knot, key, "each knot is [time, survival]");
      knots.emplace_back(parse_number(knot[0], key), parse_number(knot[1], key));
    }
    return anchored(knots_node, key, [&] { return MarginalLifetime::piecewise(std::move(knots)); });
  }
  parse_fail(node, parent, fmt::format("unknown marginal '{}'", kind));
}

std::vector<MarginalLifetime> parse_marginals(const YAML::Node& node, std::string_view key, int n) {
  if (!node.IsSequence()) parse_fail(node, key, "expected one marginal per component");
  std::vector<MarginalLifetime> out;
  for (const YAML::Node& item : node) out.push_back(parse_marginal(item, key));
  check_length(node, key, out.size(), static_cast<std::size_t>(n));
  return out;
}

JointLifetimeModel parse_lifetimes(const YAML::Node& node, int n) {
  const auto [kind, body] = single_entry(node, "lifetimes");
  const std::string key = "lifetimes." + kind;
  if (kind == "independent") {
    std::vector<MarginalLifetime> marginals = parse_marginals(body, key, n);
    return JointLifetimeModel::independent(std::move(marginals));
  }
  if (kind == "comonotone") {
    std::vector<MarginalLifetime> marginals = parse_marginals(body, key, n);
    return JointLifetimeModel::comonotone(std::move(marginals));
  }
  if (kind == "discrete_joint") {
    if (!body.IsSequence()) parse_fail(body, key, "expected a list of atoms");
    std::vector<LifetimeAtom> atoms;
    for (const YAML::Node& atom : body) {
      const YAML::Node times = required(atom, key, "times");
      LifetimeAtom a{parse_numbers(times, key + ".times"), parse_number(required(atom, key, "prob"), key + ".prob")};
      check_length(times, key + ".times", a.times.size(), static_cast<std::size_t>(n));
      atoms.push_back(std::move(a));
    }
    return anchored(body, key, [&] { return JointLifetimeModel::discrete_joint(std::move(atoms)); });
  }
  parse_fail(node, "lifetimes", fmt::format("unknown model '{}'", kind));
}

std::string number(double x) { return std::isinf(x) ? std::string("inf") : fmt::format("{:.17g}", x); }

std::string number_list(std::span<const double> xs) {
  std::vector<std::string> parts;
  for (double x : xs) parts.push_back(number(x));
  return fmt::format("[{}]", fmt::join(parts, ", "));
}

std::string emit_marginal(const MarginalLifetime& m) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, MarginalLifetime::Exponential>) {
          return fmt::format("exponential: {{rate: {}}}", number(k.rate));
        } else if constexpr (std::is_same_v<K, MarginalLifetime::Weibull>) {
          return fmt::format("weibull: {{shape: {}, scale: {}}}", number(k.shape), number(k.scale));
        } else {
          std::vector<std::string> knots;
          for (const auto& [t, s] : k.knots) knots.push_back(fmt::format("[{}, {}]", number(t), number(s)));
          return fmt::format("empirical: {{knots: [{}]}}", fmt::join(knots, ", "));
        }
      },
      m.kind());
}

}  // namespace

WeightedLatticePolynomial SystemSpec::polynomial() const {
  if (const auto* s = std::get_if<SystemStructure>(&system)) return lp_from_structure(*s);
  return std::get<WeightedLatticePolynomial>(system);
}

SystemSpec parse_spec(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(fmt::format("line {}: {}", e.mark.line + 1, e.msg));
  }
  if (!root.IsMap()) throw ParseError("document must be a mapping with keys n, structure, lifetimes");
  for (const auto& entry : root) {
    const std::string key = entry.first.as<std::string>();
    if (key != "n" && key != "structure" && key != "lifetimes")
      parse_fail(entry.first, key, "unknown top-level key");
  }
  const YAML::Node n_node = required(root, "document", "n");
  const long long n = parse_integer(n_node, "n");
  if (n < 1 || n > kMaxComponents) invalid(n_node, "n", fmt::format("must lie in 1..{}", kMaxComponents));

  try {
    ParsedSystem parsed = parse_structure(required(root, "document", "structure"), static_cast<int>(n));
    JointLifetimeModel lifetimes = parse_lifetimes(required(root, "document", "lifetimes"), static_cast<int>(n));
    return SystemSpec{static_cast<int>(n), std::move(parsed.system), std::move(parsed.profile),
                      std::move(lifetimes)};
  } catch (const YAML::Exception& e) {
    throw ParseError(fmt::format("line {}: {}", e.mark.line + 1, e.msg));
  }
}

std::string emit_canonical(const SystemSpec& spec) {
  std::string out = fmt::format("n: {}\nstructure:\n", spec.n);
  if (const auto* s = std::get_if<SystemStructure>(&spec.system)) {
    std::string bits;
    for (std::uint8_t b : s->v().values()) bits += b ? '1' : '0';
    out += fmt::format("  truth_table: \"{}\"\n", bits);
  } else if (spec.profile) {
    out += fmt::format("  symmetric: {{w_tilde: {}}}\n", number_list(spec.profile->values()));
  } else {
    const RealSetFunction& w = std::get<WeightedLatticePolynomial>(spec.system).weights();
    out += "  weights:\n";
    for (Mask a = 0; a < w.size(); ++a)
      out += fmt::format("    - {{set: \"{}\", value: {}}}\n", format_subset(a), number(w[a]));
  }

  out += "lifetimes:\n";
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, JointLifetimeModel::DiscreteJoint>) {
          out += "  discrete_joint:\n";
          for (const LifetimeAtom& atom : k.atoms)
            out += fmt::format("    - {{times: {}, prob: {}}}\n", number_list(atom.times), number(atom.probability));
        } else {
          out += std::is_same_v<K, JointLifetimeModel::Independent> ? "  independent:\n" : "  comonotone:\n";
          for (const MarginalLifetime& m : k.marginals) out += fmt::format("    - {}\n", emit_marginal(m));
        }
      },
      spec.lifetimes.kind());
  return out;
}

}  // namespace relilat
