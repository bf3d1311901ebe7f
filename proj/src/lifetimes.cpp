#include "relilat/lifetimes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "relilat/numerics.hpp"

namespace relilat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kNegativeProbabilityAbort = 1e-9;

void check_time(double t) {
  if (std::isnan(t) || t < 0.0) throw DomainError(fmt::format("time {} outside [0, inf]", t));
}

void check_times(std::span<const double> t, int n) {
  if (static_cast<int>(t.size()) != n)
    throw DimensionMismatch(fmt::format("expected {} times, got {}", n, t.size()));
  for (double ti : t) check_time(ti);
}

void check_marginals(const std::vector<MarginalLifetime>& marginals) {
  check_component_count(static_cast<int>(marginals.size()));
}

}  // namespace

MarginalLifetime MarginalLifetime::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw DomainError(fmt::format("exponential rate must be positive and finite, got {}", rate));
  return MarginalLifetime(Exponential{rate});
}

MarginalLifetime MarginalLifetime::weibull(double shape, double scale) {
  if (!(shape > 0.0) || !std::isfinite(shape) || !(scale > 0.0) || !std::isfinite(scale))
    throw DomainError(fmt::format("Weibull shape and scale must be positive, got {} and {}", shape, scale));
  return MarginalLifetime(Weibull{shape, scale});
}

MarginalLifetime MarginalLifetime::piecewise(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw DomainError("empirical survival needs at least one knot");
  double prev_time = -1.0;
  double prev_survival = 1.0;
  for (const auto& [time, survival] : knots) {
    if (!std::isfinite(time) || time < 0.0 || time <= prev_time)
      throw DomainError(fmt::format("empirical knot times must be finite, >= 0 and increasing (at {})", time));
    if (!(survival >= 0.0 && survival <= prev_survival))
      throw DomainError(fmt::format("empirical survival must be nonincreasing in [0, 1] (at t = {})", time));
    if (time == 0.0 && survival != 1.0)
      throw DomainError("empirical survival must equal 1 at t = 0");
    prev_time = time;
    prev_survival = survival;
  }
  if (knots.back().second != 0.0)
    throw DomainError("empirical survival must reach 0 (defective lifetimes are not supported)");
  if (knots.front().first > 0.0) knots.insert(knots.begin(), {0.0, 1.0});
  return MarginalLifetime(PiecewiseEmpirical{std::move(knots)});
}

std::optional<double> MarginalLifetime::exponential_rate() const {
  if (const auto* e = std::get_if<Exponential>(&kind_)) return e->rate;
  return std::nullopt;
}

double MarginalLifetime::survival(double t) const {
  if (t <= 0.0) return 1.0;
  if (t == kInf) return 0.0;
  return std::visit(
      Overloaded{
          [t](const Exponential& e) { return std::exp(-e.rate * t); },
          [t](const Weibull& w) { return std::exp(-std::pow(t / w.scale, w.shape)); },
          [t](const PiecewiseEmpirical& p) {
            const auto& k = p.knots;
            auto it = std::upper_bound(k.begin(), k.end(), t,
                                       [](double x, const auto& knot) { return x < knot.first; });
            if (it == k.end()) return 0.0;
            const auto& [t1, s1] = *it;
            const auto& [t0, s0] = *(it - 1);
            return s0 + (s1 - s0) * (t - t0) / (t1 - t0);
          },
      },
      kind_);
}

double MarginalLifetime::inverse_survival(double u) const {
  return std::visit(
      Overloaded{
          [u](const Exponential& e) { return -std::log(u) / e.rate; },
          [u](const Weibull& w) { return w.scale * std::pow(-std::log(u), 1.0 / w.shape); },
          [u](const PiecewiseEmpirical& p) {
            const auto& k = p.knots;
            for (std::size_t i = 1; i < k.size(); ++i) {
              const auto& [t0, s0] = k[i - 1];
              const auto& [t1, s1] = k[i];
              if (s1 <= u) {
                if (s0 == s1) return t0;
                return t0 + (s0 - u) * (t1 - t0) / (s0 - s1);
              }
            }
            return k.back().first;
          },
      },
      kind_);
}

std::vector<double> MarginalLifetime::kinks() const {
  std::vector<double> out;
  if (const auto* p = std::get_if<PiecewiseEmpirical>(&kind_))
    for (const auto& knot : p->knots)
      if (knot.first > 0.0) out.push_back(knot.first);
  return out;
}

bool MarginalLifetime::operator==(const MarginalLifetime& other) const {
  return std::visit(
      Overloaded{
          [](const Exponential& a, const Exponential& b) { return a.rate == b.rate; },
          [](const Weibull& a, const Weibull& b) { return a.shape == b.shape && a.scale == b.scale; },
          [](const PiecewiseEmpirical& a, const PiecewiseEmpirical& b) { return a.knots == b.knots; },
          [](const auto&, const auto&) { return false; },
      },
      kind_, other.kind_);
}

JointLifetimeModel JointLifetimeModel::independent(std::vector<MarginalLifetime> marginals) {
  check_marginals(marginals);
  const int n = static_cast<int>(marginals.size());
  return JointLifetimeModel(n, Independent{std::move(marginals)});
}

JointLifetimeModel JointLifetimeModel::comonotone(std::vector<MarginalLifetime> marginals) {
  check_marginals(marginals);
  const int n = static_cast<int>(marginals.size());
  return JointLifetimeModel(n, Comonotone{std::move(marginals)});
}

JointLifetimeModel JointLifetimeModel::discrete_joint(std::vector<LifetimeAtom> atoms) {
  if (atoms.empty()) throw DomainError("discrete joint model needs at least one atom");
  const int n = static_cast<int>(atoms.front().times.size());
  check_component_count(n);
  CompensatedSum total;
  for (const auto& atom : atoms) {
    if (static_cast<int>(atom.times.size()) != n)
      throw DimensionMismatch(fmt::format("atom has {} coordinates, expected {}", atom.times.size(), n));
    for (double t : atom.times) check_time(t);
    if (!(atom.probability >= 0.0) || !std::isfinite(atom.probability))
      throw DomainError(fmt::format("atom probability {} is negative", atom.probability));
    total += atom.probability;
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw DomainError(fmt::format("atom probabilities sum to {:.17g}, not 1", total.value()));
  return JointLifetimeModel(n, DiscreteJoint{std::move(atoms)});
}

std::optional<std::vector<double>> JointLifetimeModel::independent_exponential_rates() const {
  const auto* ind = std::get_if<Independent>(&kind_);
  if (!ind) return std::nullopt;
  std::vector<double> rates;
  for (const auto& m : ind->marginals) {
    auto rate = m.exponential_rate();
    if (!rate) return std::nullopt;
    rates.push_back(*rate);
  }
  return rates;
}

double JointLifetimeModel::joint_survival(std::span<const double> t) const {
  check_times(t, n_);
  return std::visit(
      Overloaded{
          [&](const Independent& m) {
            double r = 1.0;
            for (int i = 0; i < n_; ++i) r *= m.marginals[i].survival(t[i]);
            return r;
          },
          [&](const DiscreteJoint& m) {
            CompensatedSum r;
            for (const auto& atom : m.atoms) {
              bool alive = true;
              for (int i = 0; i < n_ && alive; ++i) alive = atom.times[i] > t[i];
              if (alive) r += atom.probability;
            }
            return r.value();
          },
          [&](const Comonotone& m) {
            double r = 1.0;
            for (int i = 0; i < n_; ++i) r = std::min(r, m.marginals[i].survival(t[i]));
            return r;
          },
      },
      kind_);
}

double JointLifetimeModel::joint_cdf(std::span<const double> t) const {
  check_times(t, n_);
  return std::visit(
      Overloaded{
          [&](const Independent& m) {
            double f = 1.0;
            for (int i = 0; i < n_; ++i) f *= m.marginals[i].cdf(t[i]);
            return f;
          },
          [&](const DiscreteJoint& m) {
            CompensatedSum f;
            for (const auto& atom : m.atoms) {
              bool failed = true;
              for (int i = 0; i < n_ && failed; ++i) failed = atom.times[i] <= t[i];
              if (failed) f += atom.probability;
            }
            return f.value();
          },
          [&](const Comonotone& m) {
            double f = 1.0;
            for (int i = 0; i < n_; ++i) f = std::min(f, m.marginals[i].cdf(t[i]));
            return f;
          },
      },
      kind_);
}

double JointLifetimeModel::survival_on(Mask a, double t) const {
  check_time(t);
  return std::visit(
      Overloaded{
          [&](const Independent& m) {
            double r = 1.0;
            for (Mask rest = a; rest != 0; rest &= rest - 1)
              r *= m.marginals[std::countr_zero(rest)].survival(t);
            return r;
          },
          [&](const DiscreteJoint& m) {
            CompensatedSum r;
            for (const auto& atom : m.atoms) {
              bool alive = true;
              for (Mask rest = a; rest != 0 && alive; rest &= rest - 1)
                alive = atom.times[std::countr_zero(rest)] > t;
              if (alive) r += atom.probability;
            }
            return r.value();
          },
          [&](const Comonotone& m) {
            double r = 1.0;
            for (Mask rest = a; rest != 0; rest &= rest - 1)
              r = std::min(r, m.marginals[std::countr_zero(rest)].survival(t));
            return r;
          },
      },
      kind_);
}

double JointLifetimeModel::cdf_on(Mask a, double t) const {
  check_time(t);
  return std::visit(
      Overloaded{
          [&](const Independent& m) {
            double f = 1.0;
            for (Mask rest = a; rest != 0; rest &= rest - 1)
              f *= m.marginals[std::countr_zero(rest)].cdf(t);
            return f;
          },
          [&](const DiscreteJoint& m) {
            CompensatedSum f;
            for (const auto& atom : m.atoms) {
              bool failed = true;
              for (Mask rest = a; rest != 0 && failed; rest &= rest - 1)
                failed = atom.times[std::countr_zero(rest)] <= t;
              if (failed) f += atom.probability;
            }
            return f.value();
          },
          [&](const Comonotone& m) {
            double f = 1.0;
            for (Mask rest = a; rest != 0; rest &= rest - 1)
              f = std::min(f, m.marginals[std::countr_zero(rest)].cdf(t));
            return f;
          },
      },
      kind_);
}

double JointLifetimeModel::marginal_survival(int i, double t) const {
  if (i < 0 || i >= n_) throw RangeError(fmt::format("component index {} outside [0, {})", i, n_));
  return survival_on(Mask{1} << i, t);
}

double JointLifetimeModel::pgf(std::span<const double> z, double t) const {
  if (static_cast<int>(z.size()) != n_)
    throw DimensionMismatch(fmt::format("expected {} pgf arguments, got {}", n_, z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(std::abs(z[i]) <= 1.0)) throw DomainError(fmt::format("|z[{}]| = {} exceeds 1", i + 1, std::abs(z[i])));
  }
  const StateVectorDistribution dist = state_vector_dist(t);
  CompensatedSum g;
  for (Mask a = 0; a < dist.probs.size(); ++a) {
    double term = dist.probs[a];
    for (Mask rest = a; rest != 0; rest &= rest - 1) term *= z[std::countr_zero(rest)];
    g += term;
  }
  return g.value();
}

StateVectorDistribution JointLifetimeModel::state_vector_dist(double t) const {
  check_time(t);
  StateVectorDistribution out;
  out.time = t;
  const Mask full = full_mask(n_);

  if (const auto* ind = std::get_if<Independent>(&kind_)) {
    std::vector<double> probs(std::size_t{1} << n_);
    probs[0] = 1.0;
    for (int i = 0; i < n_; ++i) {
      const double r = ind->marginals[i].survival(t);
      const Mask half = Mask{1} << i;
      for (Mask a = 0; a < half; ++a) {
        probs[a | half] = probs[a] * r;
        probs[a] *= 1.0 - r;
      }
    }
    out.probs = RealSetFunction(n_, std::move(probs));
    return out;
  }

  // G(e_B, t) = F(e_B^{t,∞}) = Pr(T_i <= t for all i ∉ B); its Möbius transform is
  // Pr(X(t) = e_A).
  std::vector<double> g(std::size_t{1} << n_);
  for (Mask b = 0; b < g.size(); ++b) g[b] = cdf_on(full & ~b, t);
  detail::mobius_in_place(g, n_);

  double total = 0.0;
  for (Mask a = 0; a < g.size(); ++a) {
    if (g[a] < -kNegativeProbabilityAbort)
      throw NumericalError(fmt::format("Pr(X({}) = e_{{{}}}) = {} is negative; joint model is inconsistent",
                                       t, format_subset(a), g[a]));
    if (g[a] < 0.0) {
      g[a] = 0.0;
      ++out.clamped;
    }
    total += g[a];
  }
  if (out.clamped > 0)
    for (double& p : g) p /= total;
  out.probs = RealSetFunction(n_, std::move(g));
  return out;
}

std::vector<double> JointLifetimeModel::kinks() const {
  std::vector<double> out;
  std::visit(Overloaded{
                 [&](const DiscreteJoint& m) {
                   for (const LifetimeAtom& atom : m.atoms)
                     for (double t : atom.times)
                       if (std::isfinite(t)) out.push_back(t);
                 },
                 [&](const auto& m) {
                   for (const auto& marginal : m.marginals) {
                     auto k = marginal.kinks();
                     out.insert(out.end(), k.begin(), k.end());
                   }
                 },
             },
             kind_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> JointLifetimeModel::draw(Rng& rng) const {
  std::vector<double> t(n_);
  std::visit(Overloaded{
                 [&](const Independent& m) {
                   for (int i = 0; i < n_; ++i) t[i] = m.marginals[i].inverse_survival(rng.uniform());
                 },
                 [&](const DiscreteJoint& m) {
                   const double u = rng.uniform();
                   double cumulative = 0.0;
                   const LifetimeAtom* chosen = &m.atoms.back();
                   for (const auto& atom : m.atoms) {
                     cumulative += atom.probability;
                     if (u < cumulative) {
                       chosen = &atom;
                       break;
                     }
                   }
                   t = chosen->times;
                 },
                 [&](const Comonotone& m) {
                   const double u = rng.uniform();
                   for (int i = 0; i < n_; ++i) t[i] = m.marginals[i].inverse_survival(u);
                 },
             },
             kind_);
  return t;
}

std::vector<std::vector<double>> sample_lifetimes(const JointLifetimeModel& j, std::uint64_t seed,
                                                  std::size_t count) {
  if (count < 1) throw RangeError("sample count must be at least 1");
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(j.draw(rng));
  return out;
}

}  // namespace relilat
