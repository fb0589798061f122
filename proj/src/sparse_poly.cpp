#include "permpoly/sparse_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace permpoly {

namespace {

void check_same(const Field& a, const Field& b) {
  if (&a != &b) throw Error(ErrorCode::CtxMismatch, "polynomials over different fields");
}

// Collect like terms; the map keeps exponents ordered.
SparsePoly collect(const Field& field, std::map<BigInt, Rep>&& acc) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) terms.push_back({Elem(field, c), e});
  return SparsePoly(field, std::move(terms));
}

// Multinomial coefficients mod p for small exponents d < p via repeated
// multiplication; only used inside pow().
SparsePoly small_pow(const SparsePoly& f, unsigned d) {
  SparsePoly r = SparsePoly::constant(f.field().one());
  for (unsigned i = 0; i < d; ++i) r = r * f;
  return r;
}

}  // namespace

SparsePoly::SparsePoly(const Field& field, std::vector<Term> terms)
    : field_(&field), terms_(std::move(terms)) {
  for (const auto& t : terms_) check_same(*field_, t.coeff.field());
  normalize();
}

void SparsePoly::normalize() {
  for (const auto& t : terms_)
    if (t.exp < 0) throw Error(ErrorCode::DegreeMismatch, "negative exponent");
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
}

SparsePoly SparsePoly::monomial(const Elem& c, BigInt exp) {
  return SparsePoly(c.field(), {Term{c, std::move(exp)}});
}

SparsePoly SparsePoly::from_coefficients(const Field& field, std::span<const Elem> coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back({coeffs[i], BigInt(i)});
  return SparsePoly(field, std::move(terms));
}

BigInt SparsePoly::degree() const { return terms_.empty() ? BigInt(-1) : terms_.back().exp; }

Elem SparsePoly::operator()(const Elem& x) const { return eval(*this, x); }

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_same(*field_, *o.field_);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_same(*field_, *o.field_);
  for (const auto& t : o.terms_) terms_.push_back({-t.coeff, t.exp});
  normalize();
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  check_same(*a.field_, *b.field_);
  const Field& f = *a.field_;
  if (a.size() * b.size() > SparsePoly::kTermCap * 8)
    throw Error(ErrorCode::SizeLimitExceeded, "polynomial product too large");
  std::map<BigInt, Rep> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Rep& slot = acc[s.exp + t.exp];
      slot = f.add(slot, f.mul(s.coeff.rep(), t.coeff.rep()));
    }
  if (acc.size() > SparsePoly::kTermCap)
    throw Error(ErrorCode::SizeLimitExceeded, "polynomial product too large");
  return collect(f, std::move(acc));
}

SparsePoly operator*(const Elem& c, const SparsePoly& a) {
  check_same(c.field(), *a.field_);
  std::vector<Term> terms;
  for (const auto& t : a.terms_) terms.push_back({c * t.coeff, t.exp});
  return SparsePoly(*a.field_, std::move(terms));
}

SparsePoly SparsePoly::frobenius_power(unsigned i) const {
  const Field& f = *field_;
  const BigInt scale = big_pow(f.characteristic(), i);
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_)
    terms.push_back({Elem(f, f.frobenius(t.coeff.rep(), i % f.degree())), t.exp * scale});
  return SparsePoly(f, std::move(terms));
}

SparsePoly SparsePoly::pow(const BigInt& e) const {
  if (e < 0) throw Error(ErrorCode::DegreeMismatch, "negative polynomial power");
  const Field& f = *field_;
  const unsigned p = f.characteristic();
  SparsePoly result = constant(f.one());
  if (e == 0) return result;
  if (is_zero()) return *this;
  BigInt rest = e;
  unsigned digit_pos = 0;
  while (rest > 0) {
    const auto d = static_cast<unsigned>(rest % p);
    rest /= p;
    if (d != 0) result = result * small_pow(frobenius_power(digit_pos), d);
    ++digit_pos;
  }
  return result;
}

SparsePoly SparsePoly::compose(const SparsePoly& inner) const {
  check_same(*field_, *inner.field_);
  SparsePoly out(*field_);
  for (const auto& t : terms_) out += t.coeff * inner.pow(t.exp);
  return out;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.field_ != b.field_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = terms_.size(); i-- > 0;) {
    const Term& t = terms_[i];
    if (i + 1 != terms_.size()) out << " + ";
    const bool unit = t.coeff.is_one();
    if (!unit || t.exp == 0) {
      const std::string c = t.coeff.to_string();
      out << (t.exp != 0 && c.find('^') != std::string::npos ? "(" + c + ")" : c);
    }
    if (t.exp != 0) {
      if (!unit) out << '*';
      out << 'x';
      if (t.exp != 1) out << '^' << t.exp;
    }
  }
  return out.str();
}

Elem eval(const SparsePoly& f, const Elem& x) {
  check_same(f.field(), x.field());
  const Field& field = f.field();
  Rep acc = 0;
  for (const auto& t : f.terms()) {
    const Rep power = t.exp == 0 ? Rep{1} : field.pow(x.rep(), t.exp);
    acc = field.add(acc, field.mul(t.coeff.rep(), power));
  }
  return Elem(field, acc);
}

CompiledPoly::CompiledPoly(const SparsePoly& f) : field_(&f.field()) {
  const std::uint64_t n = field_->group_order();
  std::map<std::uint64_t, Rep> acc;
  for (const auto& t : f.terms()) {
    // x^e for e > 0 equals x^{((e-1) mod n) + 1} on the whole field, including 0.
    const std::uint64_t e = t.exp == 0 ? 0 : static_cast<std::uint64_t>((t.exp - 1) % n) + 1;
    Rep& slot = acc[e];
    slot = field_->add(slot, t.coeff.rep());
  }
  for (auto [e, c] : acc)
    if (c != 0) terms_.push_back({c, e});
}

Rep CompiledPoly::operator()(Rep x) const noexcept {
  const Field& f = *field_;
  Rep acc = 0;
  for (const auto& t : terms_) acc = f.add(acc, f.mul(t.coeff, t.exp == 0 ? 1 : f.pow(x, t.exp)));
  return acc;
}

Elem CompiledPoly::operator()(const Elem& x) const {
  check_same(*field_, x.field());
  return Elem(*field_, (*this)(x.rep()));
}

FieldMap as_map(const SparsePoly& f) {
  auto compiled = std::make_shared<const CompiledPoly>(f);
  return [compiled](const Elem& x) { return (*compiled)(x); };
}

}  // namespace permpoly
