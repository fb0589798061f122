#include "permpoly/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permpoly {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::FieldShapeMismatch: return "FieldShapeMismatch";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::BadDegrees: return "BadDegrees";
    case ErrorCode::BadSubfieldConstant: return "BadSubfieldConstant";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) noexcept {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

BigInt big_pow(unsigned base, unsigned e) {
  BigInt r = 1;
  while (e-- > 0) r *= base;
  return r;
}

namespace {

// Dense polynomials over GF(p), lowest degree first, used only to validate
// and select the modulus.
using PrimePoly = std::vector<unsigned>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime: a^{p-2}
  std::uint64_t r = 1, b = a % p;
  for (unsigned e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<unsigned>(r);
}

PrimePoly poly_mod(PrimePoly a, const PrimePoly& f, unsigned p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const unsigned lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::size_t shift = a.size() - 1 - df;
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= df; ++i) {
      const std::uint64_t sub = factor * f[i] % p;
      a[shift + i] = static_cast<unsigned>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f,
                      unsigned p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<unsigned>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

PrimePoly poly_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& f, unsigned p) {
  PrimePoly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return poly_mod(std::move(r), f, p);
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{p^j} mod f, by j successive p-th powers.
PrimePoly frobenius_x(const PrimePoly& f, unsigned p, unsigned j) {
  PrimePoly x = poly_mod(PrimePoly{0, 1}, f, p);
  for (unsigned i = 0; i < j; ++i) x = poly_powmod(x, p, f, p);
  return x;
}

// Rabin's test for a monic f of degree k.
bool is_irreducible(const PrimePoly& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  PrimePoly x = poly_mod(PrimePoly{0, 1}, f, p);
  if (frobenius_x(f, p, k) != x) return false;
  for (std::uint64_t l : prime_factors(k)) {
    PrimePoly h = frobenius_x(f, p, static_cast<unsigned>(k / l));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    PrimePoly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

FieldPtr make_field(unsigned p, unsigned k, std::optional<std::vector<unsigned>> modulus,
                    std::uint64_t size_limit) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  BigInt q = big_pow(p, k);
  if (q > size_limit || q > kDefaultSizeLimit * 256)
    throw Error(ErrorCode::SizeLimitExceeded,
                std::to_string(p) + "^" + std::to_string(k) + " exceeds the size limit");

  std::vector<unsigned> f;
  if (modulus) {
    f = *modulus;
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() != k + 1)
      throw Error(ErrorCode::DegreeMismatch, "modulus must have degree " + std::to_string(k));
    const unsigned lead_inv = inv_mod(f.back(), p);
    for (auto& c : f) c = static_cast<unsigned>(std::uint64_t{c} * lead_inv % p);
    if (!is_irreducible(f, p))
      throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(" +
                                                   std::to_string(p) + ")");
  } else {
    const std::uint64_t count = ipow(p, k);
    for (std::uint64_t j = 0; j < count; ++j) {
      f.assign(k + 1, 0);
      std::uint64_t t = j;
      for (unsigned i = 0; i < k; ++i, t /= p) f[i] = static_cast<unsigned>(t % p);
      f[k] = 1;
      if (k > 1 && f[0] == 0) continue;
      if (is_irreducible(f, p)) break;
    }
  }
  auto field = std::make_shared<Field>(Field::Private{}, p, k, std::move(f));
  field->find_generator();
  return field;
}

Field::Field(Private, unsigned p, unsigned k, std::vector<unsigned> modulus)
    : p_(p), k_(k), q_(ipow(p, k)), modulus_(std::move(modulus)) {
  if (p_ == 2) {
    for (unsigned i = 0; i <= k_; ++i)
      if (modulus_[i]) modulus_bits_ |= std::uint64_t{1} << i;
  }
}

void Field::find_generator() {
  if (q_ == 2) {
    generator_ = 1;
    return;
  }
  const auto factors = prime_factors(q_ - 1);
  for (std::uint64_t g = 1; g < q_; ++g) {
    const bool full = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t l) {
      return pow_slow(static_cast<Rep>(g), (q_ - 1) / l) != 1;
    });
    if (full) {
      generator_ = static_cast<Rep>(g);
      return;
    }
  }
  throw std::logic_error("no primitive element found");
}

const Field::Tables* Field::tables() const {
  if (!has_log_tables()) return nullptr;
  if (const Tables* t = tables_.load(std::memory_order_acquire)) return t;
  std::call_once(tables_once_, [this] {
    auto t = std::make_unique<Tables>();
    const std::uint64_t n = q_ - 1;
    t->exp.resize(2 * n);
    t->log.assign(q_, 0);
    Rep x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      t->exp[i] = x;
      t->exp[i + n] = x;
      t->log[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, generator_);
    }
    tables_storage_ = std::move(t);
    tables_.store(tables_storage_.get(), std::memory_order_release);
  });
  return tables_.load(std::memory_order_acquire);
}

Elem Field::zero() const { return Elem(*this, 0); }
Elem Field::one() const { return Elem(*this, 1); }
Elem Field::generator() const { return Elem(*this, generator_); }

Elem Field::elem(Rep rep) const {
  if (rep >= q_)
    throw std::out_of_range("rep " + std::to_string(rep) + " outside " + describe());
  return Elem(*this, rep);
}

Elem Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem(*this, static_cast<Rep>(r));
}

Elem Field::gen_pow(const BigInt& e) const {
  BigInt r = e % BigInt(q_ - 1);
  if (r < 0) r += q_ - 1;
  return Elem(*this, pow(generator_, static_cast<std::uint64_t>(r)));
}

Rep Field::add(Rep a, Rep b) const noexcept {
  if (p_ == 2) return a ^ b;
  Rep r = 0, scale = 1;
  while (a != 0 || b != 0) {
    r += static_cast<Rep>((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Rep Field::neg(Rep a) const noexcept {
  if (p_ == 2) return a;
  Rep r = 0, scale = 1;
  while (a != 0) {
    r += static_cast<Rep>((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Rep Field::sub(Rep a, Rep b) const noexcept { return p_ == 2 ? a ^ b : add(a, neg(b)); }

Rep Field::mul(Rep a, Rep b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (const Tables* t = has_log_tables() ? tables() : nullptr)
    return t->exp[t->log[a] + t->log[b]];
  return mul_slow(a, b);
}

Rep Field::mul_slow(Rep a, Rep b) const noexcept {
  if (p_ == 2) {
    std::uint64_t r = 0, x = a;
    for (Rep y = b; y != 0; y >>= 1, x <<= 1)
      if (y & 1) r ^= x;
    for (int bit = 2 * static_cast<int>(k_) - 2; bit >= static_cast<int>(k_); --bit)
      if (r >> bit & 1) r ^= modulus_bits_ << (bit - k_);
    return static_cast<Rep>(r);
  }
  std::vector<std::uint64_t> prod(2 * k_, 0);
  std::vector<unsigned> da = coefficients(a), db = coefficients(b);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  for (unsigned d = 2 * k_ - 1; d-- > k_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k_; ++i)
      prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  Rep r = 0;
  for (unsigned i = k_; i-- > 0;) r = r * p_ + static_cast<Rep>(prod[i]);
  return r;
}

Rep Field::inv(Rep a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, q_ - 2);
}

Rep Field::div(Rep a, Rep b) const { return mul(a, inv(b)); }

Rep Field::pow_slow(Rep a, std::uint64_t e) const noexcept {
  Rep r = 1;
  while (e > 0) {
    if (e & 1) r = mul_slow(r, a);
    a = mul_slow(a, a);
    e >>= 1;
  }
  return r;
}

Rep Field::pow(Rep a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  e %= n;
  if (const Tables* t = has_log_tables() ? tables() : nullptr)
    return t->exp[(std::uint64_t{t->log[a]} * e) % n];
  return pow_slow(a, e);
}

Rep Field::pow(Rep a, const BigInt& e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const auto reduced = static_cast<std::uint64_t>(e % (q_ - 1));
  return reduced == 0 ? 1 : pow(a, reduced);
}

Rep Field::frobenius(Rep a, unsigned i) const noexcept {
  i %= k_;
  return i == 0 ? a : pow(a, ipow(p_, i));
}

std::optional<std::uint64_t> Field::log(Rep a) const {
  if (a == 0) return std::nullopt;
  if (const Tables* t = tables()) return t->log[a];
  return std::nullopt;
}

std::vector<unsigned> Field::coefficients(Rep a) const {
  std::vector<unsigned> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i, a /= p_) c[i] = a % p_;
  return c;
}

Rep Field::from_coefficients(std::span<const unsigned> coeffs) const {
  Rep r = 0;
  for (std::size_t i = std::min<std::size_t>(coeffs.size(), k_); i-- > 0;)
    r = r * p_ + coeffs[i] % p_;
  return r;
}

std::string Field::describe() const {
  std::ostringstream out;
  out << "GF(" << p_ << '^' << k_ << ") mod ";
  bool first = true;
  for (unsigned i = k_ + 1; i-- > 0;) {
    const unsigned c = modulus_[i];
    if (c == 0) continue;
    if (!first) out << '+';
    first = false;
    if (c != 1 || i == 0) out << c;
    if (i > 0) out << 'x';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

std::string Field::format(Rep a) const {
  if (a == 0) return "0";
  if (auto l = log(a)) return *l == 0 ? "1" : (*l == 1 ? "g" : "g^" + std::to_string(*l));
  return "#" + std::to_string(a);
}

const Field& Elem::field() const {
  if (field_ == nullptr) throw Error(ErrorCode::CtxMismatch, "element has no field");
  return *field_;
}

const Field& Elem::checked_with(const Elem& o) const {
  if (field_ == nullptr || field_ != o.field_)
    throw Error(ErrorCode::CtxMismatch, "operands belong to different fields");
  return *field_;
}

Elem Elem::inverse() const {
  const Field& f = field();
  return Elem(f, f.inv(rep_));
}

Elem Elem::operator-() const {
  const Field& f = field();
  return Elem(f, f.neg(rep_));
}

Elem& Elem::operator+=(const Elem& o) {
  rep_ = checked_with(o).add(rep_, o.rep_);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  rep_ = checked_with(o).sub(rep_, o.rep_);
  return *this;
}

Elem& Elem::operator*=(const Elem& o) {
  rep_ = checked_with(o).mul(rep_, o.rep_);
  return *this;
}

Elem& Elem::operator/=(const Elem& o) {
  rep_ = checked_with(o).div(rep_, o.rep_);
  return *this;
}

std::string Elem::to_string() const { return field_ ? field_->format(rep_) : "<none>"; }

Elem arith(const Elem& a, const Elem& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

Elem pow(const Elem& a, const BigInt& e) {
  const Field& f = a.field();
  if (e < 0) return pow(a.inverse(), BigInt(-e));
  return Elem(f, f.pow(a.rep(), e));
}

Elem frobenius(const Elem& a, unsigned i) {
  const Field& f = a.field();
  if (i > f.degree())
    throw Error(ErrorCode::DegreeMismatch, "frobenius index exceeds field degree");
  return Elem(f, f.frobenius(a.rep(), i));
}

namespace {

void require_tower(const Elem& a, unsigned m, unsigned n) {
  const Field& f = a.field();
  if (m == 0 || n == 0 || n % m != 0 || f.degree() % n != 0)
    throw Error(ErrorCode::DegreeMismatch, "need m | n | k, got m=" + std::to_string(m) +
                                               " n=" + std::to_string(n) +
                                               " k=" + std::to_string(f.degree()));
  if (n != f.degree() && f.frobenius(a.rep(), n) != a.rep())
    throw Error(ErrorCode::DegreeMismatch,
                "element does not lie in GF(p^" + std::to_string(n) + ")");
}

}  // namespace

Elem rel_trace(const Elem& a, unsigned m, unsigned n) {
  require_tower(a, m, n);
  const Field& f = a.field();
  Rep acc = 0, x = a.rep();
  for (unsigned j = 0; j < n / m; ++j) {
    acc = f.add(acc, x);
    x = f.frobenius(x, m);
  }
  return Elem(f, acc);
}

Elem norm(const Elem& a, unsigned m, unsigned n) {
  require_tower(a, m, n);
  const Field& f = a.field();
  const std::uint64_t e = (ipow(f.characteristic(), n) - 1) / (ipow(f.characteristic(), m) - 1);
  return Elem(f, f.pow(a.rep(), e));
}

bool subfield_test(const Elem& a, unsigned m) {
  const Field& f = a.field();
  if (m == 0 || f.degree() % m != 0)
    throw Error(ErrorCode::DegreeMismatch,
                std::to_string(m) + " does not divide " + std::to_string(f.degree()));
  return f.frobenius(a.rep(), m) == a.rep();
}

std::vector<Elem> subgroup(const Field& field, std::uint64_t d) {
  const std::uint64_t n = field.group_order();
  if (d == 0 || n % d != 0)
    throw Error(ErrorCode::NotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(n));
  const Rep step = field.pow(field.generator_rep(), n / d);
  std::vector<Elem> out;
  out.reserve(d);
  Rep x = 1;
  for (std::uint64_t j = 0; j < d; ++j) {
    out.emplace_back(field, x);
    x = field.mul(x, step);
  }
  return out;
}

std::vector<Elem> elements(const Field& field) {
  std::vector<Elem> out;
  out.reserve(field.size());
  for (std::uint64_t r = 0; r < field.size(); ++r) out.emplace_back(field, static_cast<Rep>(r));
  return out;
}

std::vector<Elem> nonzero_elements(const Field& field) {
  std::vector<Elem> out;
  out.reserve(field.size() - 1);
  for (std::uint64_t r = 1; r < field.size(); ++r) out.emplace_back(field, static_cast<Rep>(r));
  return out;
}

std::vector<Elem> subfield_elements(const Field& field, unsigned m) {
  if (m == 0 || field.degree() % m != 0)
    throw Error(ErrorCode::DegreeMismatch,
                std::to_string(m) + " does not divide " + std::to_string(field.degree()));
  std::vector<Elem> out;
  for (std::uint64_t r = 0; r < field.size(); ++r)
    if (field.frobenius(static_cast<Rep>(r), m) == r) out.emplace_back(field, static_cast<Rep>(r));
  return out;
}

Elem parse_element(const Field& field, std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::SchemaMismatch, "cannot parse element '" + std::string(text) + "'");
  };
  bool negate = false;
  if (!text.empty() && text.front() == '-') {
    negate = true;
    text.remove_prefix(1);
  }
  if (text.empty()) throw fail();
  Elem value;
  if (text.front() == 'g' || text.front() == 'w') {
    std::string_view rest = text.substr(1);
    BigInt e = 1;
    if (!rest.empty()) {
      if (rest.front() != '^' || rest.size() < 2) throw fail();
      rest.remove_prefix(1);
      if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw fail();
      e = BigInt(std::string(rest));
    }
    value = field.gen_pow(e);
  } else {
    std::uint64_t rep = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), rep);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw fail();
    if (rep >= field.size())
      throw Error(ErrorCode::SchemaMismatch,
                  "rep " + std::to_string(rep) + " outside " + field.describe());
    value = Elem(field, static_cast<Rep>(rep));
  }
  return negate ? -value : value;
}

}  // namespace permpoly
