#ifndef RELILAT_SPEC_FILE_HPP
#define RELILAT_SPEC_FILE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "relilat/latpoly.hpp"
#include "relilat/lifetimes.hpp"
#include "relilat/structure.hpp"

namespace relilat {

/// A parsed and validated system-spec file: one system plus its lifetime model.
/// The grammar is documented in docs/spec-format.md.
struct SystemSpec {
  int n;
  /// Boolean systems keep their structure function; weighted ones only the polynomial.
  std::variant<SystemStructure, WeightedLatticePolynomial> system;
  /// Present when the system was declared through a symmetric profile.
  std::optional<SymmetricProfile> profile;
  JointLifetimeModel lifetimes;

  bool weighted() const { return std::holds_alternative<WeightedLatticePolynomial>(system); }
  /// The system as a weighted lattice polynomial (γ ∘ v for boolean systems).
  WeightedLatticePolynomial polynomial() const;
};

/// ParseError for malformed documents, ValidationError (or another validation-class
/// error) for semantic problems. Messages start with "line N:" when a location is known.
SystemSpec parse_spec(std::string_view text);

/// Canonical spec text: truth table or full weight list, explicit lifetime declarations,
/// floating values with 17 significant digits. Re-parses to an identical system.
std::string emit_canonical(const SystemSpec& spec);

}  // namespace relilat

#endif  // RELILAT_SPEC_FILE_HPP
