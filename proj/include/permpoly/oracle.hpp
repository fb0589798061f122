#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "permpoly/field.hpp"
#include "permpoly/sparse_poly.hpp"

namespace permpoly {

/// f(x1) = f(x2) with x1 < x2 in scan order.
struct Collision {
  Elem x1;
  Elem x2;
  Elem image;
};

/// f(x) left the subset being permuted.
struct Escape {
  Elem x;
  Elem image;
};

using Witness = std::variant<Collision, Escape>;

struct VerifyReport {
  std::string target;  // "full-field" or a subset id such as "mu_9"
  bool is_permutation = false;
  std::optional<Witness> witness;
  std::uint64_t evaluations = 0;
  std::chrono::duration<double, std::milli> elapsed{0};
};

struct VerifyOptions {
  /// Worker threads used to evaluate the map; the scan that detects
  /// repeated images stays sequential, so the report does not depend on it.
  unsigned parallelism = 1;
};

/// Evaluates f on every element in ascending rep order and stops at the
/// first repeated image.
VerifyReport is_permutation(const FieldMap& f, const Field& field, VerifyOptions options = {});

/// True iff f maps the subset into itself bijectively. Leaving the subset is
/// reported as an Escape witness.
VerifyReport permutes_subset(const FieldMap& f, std::span<const Elem> subset,
                             std::string subset_id = "subset", VerifyOptions options = {});

/// Re-evaluates a failure witness; true iff it is a genuine collision or a
/// genuine escape from `subset` (empty span means the full field).
bool witness_holds(const FieldMap& f, const Witness& witness, std::span<const Elem> subset = {});

/// Every x in the field with pred(x), ascending rep order.
std::vector<Elem> brute_force_roots(const Field& field, const std::function<bool(const Elem&)>& pred);

/// f(x) = x^r h(x^{(q-1)/d}).
struct ZieveSplit {
  BigInt r;
  SparsePoly h;
  std::uint64_t d;
  std::uint64_t t;  // (q - 1) / d
};

/// Splits f when every exponent is congruent to the least one modulo
/// (q-1)/d; r is that least exponent and must be positive. Returns nullopt
/// otherwise. Throws NotADivisor when d does not divide q - 1.
std::optional<ZieveSplit> zieve_split(const SparsePoly& f, std::uint64_t d);

/// Both conditions of the multiplicative criterion for a split polynomial:
/// gcd(r, (q-1)/d) = 1 and x^r h(x)^{(q-1)/d} permutes mu_d.
struct ZieveVerdict {
  bool gcd_ok = false;
  VerifyReport subset;
  bool permutes() const noexcept { return gcd_ok && subset.is_permutation; }
};

ZieveVerdict zieve_criterion(const ZieveSplit& split, VerifyOptions options = {});

}  // namespace permpoly
