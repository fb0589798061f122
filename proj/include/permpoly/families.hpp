#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "permpoly/field.hpp"
#include "permpoly/sparse_poly.hpp"

namespace permpoly {

/// Stable identifiers of the twelve constructions. F12 is the pair of
/// composition transforms used as property-test machinery.
enum class FamilyId { F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12 };

inline constexpr int kFamilyCount = 12;

std::string_view to_string(FamilyId id);
std::optional<FamilyId> parse_family_id(std::string_view text);

enum class ParamKind {
  Integer,         // signed 64-bit, bounded below by ParamSpec::min
  PrimePower,      // q = p^e
  Element,         // any field element
  NonzeroElement,  // field element != 0
  Polynomial,      // SparsePoly over the family field
  Choice,          // one of ParamSpec::choices
};

struct ParamSpec {
  std::string name;
  ParamKind kind;
  bool shape = false;     // selects the field rather than living in it
  bool required = true;   // false: has a computed default or is case-dependent
  std::int64_t min = 1;
  std::vector<std::string> choices;
  std::string doc;
};

using ParamValue = std::variant<std::int64_t, Elem, SparsePoly, std::string>;
using ParamMap = std::map<std::string, ParamValue, std::less<>>;

struct FamilySpec {
  FamilyId id;
  std::string source;      // e.g. "Proposition 2"
  std::string anchor;      // the construction's defining formula
  std::string polynomial;  // template with parameter names
  std::string field_text;  // e.g. "GF(2^{3m})"
  std::vector<ParamSpec> params;

  const ParamSpec* param(std::string_view name) const;
};

std::span<const FamilySpec> registry();
const FamilySpec& family(FamilyId id);

struct FieldShape {
  unsigned p;
  unsigned k;
};

/// Field required by the shape parameters (m, q, n).
FieldShape field_shape(FamilyId id, const ParamMap& params);
FieldPtr make_family_field(FamilyId id, const ParamMap& params);

/// Validates names and domains against the schema and fills computed
/// defaults. Throws SchemaMismatch or FieldShapeMismatch.
ParamMap resolve_params(FamilyId id, const Field& field, const ParamMap& params);

using WitnessValue = std::variant<BigInt, Elem, std::string, bool>;

struct ClauseResult {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, WitnessValue>> witness;
};

struct ConditionReport {
  bool pass = false;
  std::vector<ClauseResult> clauses;

  const ClauseResult* clause(std::string_view name) const;
  /// Conjunction over every clause whose name is not listed.
  bool pass_excluding(std::span<const std::string_view> names) const;
};

/// The literal polynomial with every exponent expanded exactly. Large
/// powers are expanded digit-wise in base p and may throw SizeLimitExceeded.
SparsePoly build(FamilyId id, const Field& field, const ParamMap& params);

/// Structured evaluator for the same polynomial; agrees with build()
/// pointwise and never expands.
FieldMap evaluator(FamilyId id, const Field& field, const ParamMap& params);

/// Evaluates every hypothesis clause independently. Never throws once the
/// parameters pass the schema.
ConditionReport check(FamilyId id, const Field& field, const ParamMap& params);

/// Divisor d of q - 1 for which build() has the form x^r h(x^{(q-1)/d}),
/// when the family has one.
std::optional<std::uint64_t> zieve_divisor(FamilyId id, const Field& field, const ParamMap& params);

struct EnumerationRow {
  ParamMap params;
  ConditionReport condition;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

/// Element parameters missing from `fixed` are free and range over their
/// domain (all elements, or the nonzero ones), in schema order with the
/// last free parameter varying fastest. Throws EnumerationTooLarge when the
/// number of assignments exceeds `cap`.
std::uint64_t enumeration_size(FamilyId id, const Field& field, const ParamMap& fixed);
void enumerate(FamilyId id, const Field& field, const ParamMap& fixed,
               const std::function<void(const EnumerationRow&)>& sink,
               std::uint64_t cap = kDefaultEnumerationCap);

enum class Sign { Minus, Plus };

/// Both sides of the composition transform over GF(q^n), q = p^e:
///   f_delta(x) = g(x^{q^k} -+ x + delta) + c x
///   h(x)       = g(x)^{q^k} -+ g(x) + c x
struct L02Pair {
  std::function<FieldMap(const Elem& delta)> f_delta;
  std::function<SparsePoly(const Elem& delta)> f_delta_poly;
  SparsePoly h;
};

/// Requires 0 < k < n (BadDegrees) and c in GF(q^{gcd(k,n)})* (BadSubfieldConstant).
L02Pair transform_l02(const SparsePoly& g, const Elem& c, unsigned q_degree, unsigned k, Sign sign);

std::string format_param(const ParamValue& value);
/// Parses CLI text for one parameter. Element and polynomial parameters need
/// the family field; polynomials are comma-separated coefficients, constant
/// term first.
ParamValue parse_param(const ParamSpec& spec, const Field* field, std::string_view text);

}  // namespace permpoly
