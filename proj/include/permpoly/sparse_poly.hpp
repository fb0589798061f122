#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "permpoly/field.hpp"

namespace permpoly {

struct Term {
  Elem coeff;
  BigInt exp;
};

/// f(x) = sum coeff_i x^{exp_i} with arbitrary-precision exponents.
///
/// Terms are kept sorted by strictly increasing exponent with no zero
/// coefficients. Exponents are never reduced: x^{q} and x are different
/// polynomials even though they agree as maps on GF(q).
class SparsePoly {
 public:
  /// Upper bound on the number of terms any product may produce.
  static constexpr std::size_t kTermCap = std::size_t{1} << 20;

  explicit SparsePoly(const Field& field) : field_(&field) {}
  SparsePoly(const Field& field, std::vector<Term> terms);

  static SparsePoly x(const Field& field) { return monomial(field.one(), 1); }
  static SparsePoly constant(const Elem& c) { return monomial(c, 0); }
  static SparsePoly monomial(const Elem& c, BigInt exp);
  /// sum coeffs[i] x^i.
  static SparsePoly from_coefficients(const Field& field, std::span<const Elem> coeffs);

  const Field& field() const { return *field_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  BigInt degree() const;

  Elem operator()(const Elem& x) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const Elem& c, const SparsePoly& a);

  /// f^{p^i}: coefficients go through Frobenius, exponents scale by p^i.
  SparsePoly frobenius_power(unsigned i) const;
  /// f^e, expanded digit by digit in base p so the term count stays at
  /// most the product of (size choose digit) over the digits of e.
  SparsePoly pow(const BigInt& e) const;
  /// f(inner(x)).
  SparsePoly compose(const SparsePoly& inner) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

  std::string to_string() const;

 private:
  void normalize();

  const Field* field_;
  std::vector<Term> terms_;
};

/// Reference evaluator: sum coeff * pow(x, exp), x^0 = 1 including at 0.
Elem eval(const SparsePoly& f, const Elem& x);

/// SparsePoly with exponents pre-reduced for repeated evaluation on one field.
class CompiledPoly {
 public:
  explicit CompiledPoly(const SparsePoly& f);

  Rep operator()(Rep x) const noexcept;
  Elem operator()(const Elem& x) const;

 private:
  struct Reduced {
    Rep coeff;
    std::uint64_t exp;  // in [1, q-1] for positive exponents, 0 for the constant
  };
  const Field* field_;
  std::vector<Reduced> terms_;
};

/// The map x -> f(x); the representation every verifier consumes.
using FieldMap = std::function<Elem(const Elem&)>;

FieldMap as_map(const SparsePoly& f);

}  // namespace permpoly
