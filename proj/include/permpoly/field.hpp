#pragma once

#include <atomic>
#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permpoly/error.hpp"

namespace permpoly {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial-basis encoding of a field element: rep = sum c_i p^i.
using Rep = std::uint32_t;

class Field;
class Elem;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint64_t kDefaultSizeLimit = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 16;

/// Builds GF(p^k). Without an explicit modulus the least monic irreducible
/// polynomial is used, ordered by its integer encoding sum c_i p^i (so the
/// comparison runs from the x^{k-1} coefficient down). The generator is the
/// least rep of multiplicative order p^k - 1.
FieldPtr make_field(unsigned p, unsigned k,
                    std::optional<std::vector<unsigned>> modulus = std::nullopt,
                    std::uint64_t size_limit = kDefaultSizeLimit);

/// Immutable description of GF(p^k) plus rep-level arithmetic.
///
/// Elements are integers in [0, p^k). Multiplication goes through log/antilog
/// tables for fields of at most 2^16 elements; the tables are built on first
/// use and the construction is guarded by std::call_once, so a Field can be
/// shared freely between threads.
class Field {
  struct Private {};

 public:
  Field(Private, unsigned p, unsigned k, std::vector<unsigned> modulus);
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return q_; }
  std::uint64_t group_order() const noexcept { return q_ - 1; }
  /// Monic modulus, k + 1 coefficients, lowest degree first.
  std::span<const unsigned> modulus() const noexcept { return modulus_; }
  Rep generator_rep() const noexcept { return generator_; }

  Elem zero() const;
  Elem one() const;
  Elem generator() const;
  /// Throws std::out_of_range when rep >= p^k.
  Elem elem(Rep rep) const;
  /// Image of an integer under Z -> GF(p).
  Elem from_int(std::int64_t n) const;
  Elem gen_pow(const BigInt& e) const;

  Rep add(Rep a, Rep b) const noexcept;
  Rep sub(Rep a, Rep b) const noexcept;
  Rep neg(Rep a) const noexcept;
  Rep mul(Rep a, Rep b) const noexcept;
  Rep inv(Rep a) const;
  Rep div(Rep a, Rep b) const;
  /// 0^0 = 1. Nonzero bases reduce the exponent mod p^k - 1 first.
  Rep pow(Rep a, std::uint64_t e) const noexcept;
  Rep pow(Rep a, const BigInt& e) const noexcept;
  /// a^{p^i}; i is taken mod k.
  Rep frobenius(Rep a, unsigned i) const noexcept;

  bool has_log_tables() const noexcept { return q_ <= kLogTableLimit; }
  /// Discrete log to the generator; only available with log tables.
  std::optional<std::uint64_t> log(Rep a) const;

  std::vector<unsigned> coefficients(Rep a) const;
  Rep from_coefficients(std::span<const unsigned> coeffs) const;

  /// e.g. "GF(2^3) mod x^3+x+1".
  std::string describe() const;
  /// "0", "g^e" when a discrete log is available, else "#rep".
  std::string format(Rep a) const;

 private:
  struct Tables {
    std::vector<Rep> exp;            // 2 (q - 1) entries
    std::vector<std::uint32_t> log;  // q entries, log[0] unused
  };

  Rep mul_slow(Rep a, Rep b) const noexcept;
  Rep pow_slow(Rep a, std::uint64_t e) const noexcept;
  const Tables* tables() const;
  void find_generator();

  unsigned p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<unsigned> modulus_;
  std::uint64_t modulus_bits_ = 0;  // characteristic 2 only, includes x^k
  Rep generator_ = 1;

  mutable std::once_flag tables_once_;
  mutable std::unique_ptr<Tables> tables_storage_;
  mutable std::atomic<const Tables*> tables_{nullptr};

  friend FieldPtr make_field(unsigned, unsigned, std::optional<std::vector<unsigned>>,
                             std::uint64_t);
};

/// One element of a Field. Holds a non-owning pointer to its field, which
/// must outlive the element.
class Elem {
 public:
  Elem() = default;
  Elem(const Field& field, Rep rep) noexcept : field_(&field), rep_(rep) {}

  const Field& field() const;
  const Field* field_ptr() const noexcept { return field_; }
  Rep rep() const noexcept { return rep_; }
  bool is_zero() const noexcept { return rep_ == 0; }
  bool is_one() const noexcept { return rep_ == 1; }

  Elem inverse() const;
  Elem operator-() const;

  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Elem& o);
  Elem& operator/=(const Elem& o);

  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(Elem a, const Elem& b) { return a *= b; }
  friend Elem operator/(Elem a, const Elem& b) { return a /= b; }

  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem& a, const Elem& b) noexcept {
    return a.rep_ <=> b.rep_;
  }

  std::string to_string() const;

 private:
  const Field& checked_with(const Elem& o) const;

  const Field* field_ = nullptr;
  Rep rep_ = 0;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Binary operation with context checking; throws CtxMismatch / DivisionByZero.
Elem arith(const Elem& a, const Elem& b, ArithOp op);

Elem pow(const Elem& a, const BigInt& e);

template <std::integral I>
Elem pow(const Elem& a, I e) {
  if constexpr (std::is_signed_v<I>) {
    if (e < 0) return pow(a.inverse(), static_cast<std::uint64_t>(-(e + 1)) + 1);
  }
  return Elem(a.field(), a.field().pow(a.rep(), static_cast<std::uint64_t>(e)));
}

/// a^{p^i}, 0 <= i <= k.
Elem frobenius(const Elem& a, unsigned i);

/// Tr_m^n(a) = sum_{j < n/m} a^{p^{mj}}. Requires m | n | k and a in GF(p^n).
Elem rel_trace(const Elem& a, unsigned m, unsigned n);

/// N_m^n(a) = a^{(p^n - 1)/(p^m - 1)}. Same degree requirements as rel_trace.
Elem norm(const Elem& a, unsigned m, unsigned n);

/// True iff a lies in the GF(p^m) subfield; requires m | k.
bool subfield_test(const Elem& a, unsigned m);

/// The order-d subgroup as generator powers g^{(q-1)/d * j}, j = 0..d-1.
std::vector<Elem> subgroup(const Field& field, std::uint64_t d);

/// Every element in rep order.
std::vector<Elem> elements(const Field& field);
std::vector<Elem> nonzero_elements(const Field& field);
/// Elements of the GF(p^m) subfield in rep order.
std::vector<Elem> subfield_elements(const Field& field, unsigned m);

/// Accepts "g", "g^e", "-g^e" (odd characteristic), or a decimal rep.
Elem parse_element(const Field& field, std::string_view text);

bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned e) noexcept;
BigInt big_pow(unsigned base, unsigned e);

}  // namespace permpoly
