#include "permpoly/families.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "permpoly/solvers.hpp"

namespace permpoly {

namespace {

using Witness = std::vector<std::pair<std::string, WitnessValue>>;

// ---- parameter access -------------------------------------------------------

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaMismatch, what); }

const ParamValue& lookup(const ParamMap& params, std::string_view name) {
  const auto it = params.find(name);
  if (it == params.end()) schema_error("missing parameter '" + std::string(name) + "'");
  return it->second;
}

std::int64_t get_int(const ParamMap& params, std::string_view name) {
  const auto* v = std::get_if<std::int64_t>(&lookup(params, name));
  if (!v) schema_error("parameter '" + std::string(name) + "' must be an integer");
  return *v;
}

const Elem& get_elem(const ParamMap& params, std::string_view name) {
  const auto* v = std::get_if<Elem>(&lookup(params, name));
  if (!v) schema_error("parameter '" + std::string(name) + "' must be a field element");
  return *v;
}

const SparsePoly& get_poly(const ParamMap& params, std::string_view name) {
  const auto* v = std::get_if<SparsePoly>(&lookup(params, name));
  if (!v) schema_error("parameter '" + std::string(name) + "' must be a polynomial");
  return *v;
}

const std::string& get_choice(const ParamMap& params, std::string_view name) {
  const auto* v = std::get_if<std::string>(&lookup(params, name));
  if (!v) schema_error("parameter '" + std::string(name) + "' must be one of its choices");
  return *v;
}

unsigned get_m(const ParamMap& params) { return static_cast<unsigned>(get_int(params, "m")); }

// q = p^e for the families parameterized by a prime power.
std::pair<unsigned, unsigned> prime_power(std::int64_t q) {
  if (q < 2) schema_error("q must be a prime power >= 2");
  const auto factors = prime_factors(static_cast<std::uint64_t>(q));
  if (factors.size() != 1) schema_error(std::to_string(q) + " is not a prime power");
  const auto p = static_cast<unsigned>(factors.front());
  unsigned e = 0;
  for (std::int64_t t = q; t > 1; t /= p) ++e;
  return {p, e};
}

BigInt big(std::uint64_t v) { return BigInt(v); }
BigInt two_pow(unsigned e) { return big_pow(2, e); }

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
}

// Pre-reduced exponent so that pow(x, e) == pow(x, reduce(e)) for every x.
std::uint64_t reduce(const Field& field, const BigInt& e) {
  if (e == 0) return 0;
  return static_cast<std::uint64_t>((e - 1) % field.group_order()) + 1;
}

// ---- condition reports ------------------------------------------------------

class Clauses {
 public:
  void add(std::string name, bool pass, Witness witness = {}) {
    report_.clauses.push_back({std::move(name), pass, std::move(witness)});
  }
  ConditionReport done() {
    report_.pass = std::all_of(report_.clauses.begin(), report_.clauses.end(),
                               [](const ClauseResult& c) { return c.pass; });
    return std::move(report_);
  }

 private:
  ConditionReport report_;
};

void gcd_clause(Clauses& out, const std::string& name, const BigInt& a, const BigInt& b) {
  const BigInt g = big_gcd(a, b);
  out.add(name, g == 1, {{"gcd", g}});
}

void subfield_unit_clause(Clauses& out, const std::string& name, const Elem& c, unsigned m) {
  const bool in = subfield_test(c, m);
  out.add(name, !c.is_zero() && in, {{"value", c}, {"in-subfield", in}});
}

// ---- x^r (sum inner)^outer ---------------------------------------------------

struct PowerForm {
  BigInt r;
  std::vector<Term> inner;
  BigInt outer;
};

FieldMap power_form_map(const Field& field, const PowerForm& form) {
  const auto inner = std::make_shared<const CompiledPoly>(SparsePoly(field, form.inner));
  const std::uint64_t r = reduce(field, form.r), outer = reduce(field, form.outer);
  return [&field, inner, r, outer](const Elem& x) {
    return Elem(field, field.mul(field.pow(x.rep(), r), field.pow((*inner)(x.rep()), outer)));
  };
}

SparsePoly power_form_poly(const Field& field, const PowerForm& form) {
  return SparsePoly::monomial(field.one(), form.r) * SparsePoly(field, form.inner).pow(form.outer);
}

// ---- composition transform -------------------------------------------------------

// x -> g(x^{q^k} -+ x + delta) + c x with q = p^e, no hypothesis checks.
FieldMap l02_map(const SparsePoly& g, const Elem& c, unsigned e, unsigned k, Sign sign, const Elem& delta) {
  const Field& field = g.field();
  const auto compiled = std::make_shared<const CompiledPoly>(g);
  const unsigned shift = e * k;
  const Rep cr = c.rep(), dr = delta.rep();
  return [&field, compiled, shift, sign, cr, dr](const Elem& x) {
    const Rep fx = field.frobenius(x.rep(), shift);
    const Rep lin = sign == Sign::Minus ? field.sub(fx, x.rep()) : field.add(fx, x.rep());
    return Elem(field, field.add((*compiled)(field.add(lin, dr)), field.mul(cr, x.rep())));
  };
}

SparsePoly l02_poly(const SparsePoly& g, const Elem& c, unsigned e, unsigned k, Sign sign, const Elem& delta) {
  const Field& field = g.field();
  const auto frob = SparsePoly::monomial(field.one(), big_pow(field.characteristic(), e * k));
  const auto x = SparsePoly::x(field);
  const auto inner = (sign == Sign::Minus ? frob - x : frob + x) + SparsePoly::constant(delta);
  return g.compose(inner) + c * x;
}

// g for the trace/norm compositions over GF(q^n): case i sums the n Frobenius
// conjugates of u, case ii is x^{i (q^n - 1)/(q - 1)}; both scaled by c0.
SparsePoly conjugate_sum_g(const Field& field, const ParamMap& params, unsigned e, unsigned n, const Elem& c0) {
  if (get_choice(params, "case") == "i") {
    const SparsePoly& u = get_poly(params, "u");
    SparsePoly g(field);
    for (unsigned j = 0; j < n; ++j) g += u.frobenius_power(e * j);
    return c0 * g;
  }
  const BigInt q = big_pow(field.characteristic(), e);
  const BigInt exp = BigInt(get_int(params, "i")) * ((boost::multiprecision::pow(q, n) - 1) / (q - 1));
  return SparsePoly::monomial(c0, exp);
}

// ---- registry --------------------------------------------------------------------

ParamSpec shape_m() { return {"m", ParamKind::Integer, true, true, 1, {}, "field parameter, 2^m"}; }
ParamSpec shape_q() { return {"q", ParamKind::PrimePower, true, true, 2, {}, "base field size q = p^e"}; }
ParamSpec integer(std::string name, std::int64_t min, std::string doc, bool required = true) {
  return {std::move(name), ParamKind::Integer, false, required, min, {}, std::move(doc)};
}
ParamSpec element(std::string name, std::string doc, bool nonzero = false, bool required = true) {
  return {std::move(name), nonzero ? ParamKind::NonzeroElement : ParamKind::Element, false, required, 0, {},
          std::move(doc)};
}
ParamSpec poly(std::string name, std::string doc, bool required = true) {
  return {std::move(name), ParamKind::Polynomial, false, required, 0, {}, std::move(doc)};
}
ParamSpec choice(std::string name, std::vector<std::string> choices, std::string doc) {
  return {std::move(name), ParamKind::Choice, false, true, 0, std::move(choices), std::move(doc)};
}

std::vector<FamilySpec> make_registry() {
  std::vector<FamilySpec> r;
  r.push_back({FamilyId::F1, "Proposition 1", "(x^{2^m}+x+\\delta)^{2^{2m}+1}+cx",
               "(x^{2^m} + x + delta)^{2^{2m}+1} + c x", "GF(2^{3m})",
               {shape_m(), element("delta", "shift"), element("c", "linear coefficient", true)}});
  r.push_back({FamilyId::F2, "Corollary 1", "x^{2^{m}(2^{2m}+1)}+x^{2^{2m}+1}+cx",
               "x^{2^m(2^{2m}+1)} + x^{2^{2m}+1} + c x", "GF(2^{3m})",
               {shape_m(), element("c", "linear coefficient", true)}});
  r.push_back({FamilyId::F3, "Proposition 2", "cx+x^s+c^qx^{qs}", "c x + x^s + c^q x^{q s}, q = 2^m",
               "GF(2^{2m})",
               {shape_m(), element("c", "coefficient"),
                integer("s", 1, "exponent, defaults to (q^2+q+1)/3", false)}});
  r.push_back({FamilyId::F4, "Proposition 3", "x^{{{2^{2m}-1}\\over 3}+1}+bx", "x^{(2^{2m}-1)/3+1} + b x",
               "GF(2^{2m})", {shape_m(), element("b", "linear coefficient")}});
  r.push_back({FamilyId::F5, "Proposition 4", "x^{i(2^m-1)+r}+bx^r", "x^{i(2^m-1)+r} + b x^r", "GF(2^{2m})",
               {shape_m(), integer("r", 1, "outer exponent"), integer("i", 1, "multiplier of 2^m-1"),
                element("b", "coefficient")}});
  r.push_back({FamilyId::F6, "Proposition 5", "g(x^{q}-x+\\delta)+cx",
               "g(x^q - x + delta) + c x, g = u^{q^2}+u^q+u (case i) or x^{i(q^2+q+1)} (case ii)",
               "GF(q^3)",
               {shape_q(), choice("case", {"i", "ii"}, "shape of g"),
                poly("u", "inner polynomial, case i", false), integer("i", 1, "exponent multiplier, case ii", false),
                element("delta", "shift"), element("c", "linear coefficient", true)}});
  r.push_back({FamilyId::F7, "Proposition 6", "g(x^{q}+x+\\delta)+cx",
               "g(x^q + x + delta) + c x, g = c0 (u^{q^3}+u^{q^2}+u^q+u) (case i) or c0 x^{i(q^3+q^2+q+1)} "
               "(case ii)",
               "GF(q^4)",
               {shape_q(), choice("case", {"i", "ii"}, "shape of g"),
                poly("u", "inner polynomial, case i", false), integer("i", 1, "exponent multiplier, case ii", false),
                element("delta", "shift"), element("c", "linear coefficient", true),
                element("c0", "scalar with c0^q + c0 = 0, defaults to the least solution", true, false)}});
  r.push_back({FamilyId::F8, "Proposition 7", "x^{r}{(x^{s(2^m-1)}+ax^{2^m-1}+\\delta)}^{2^m+1}",
               "x^r (x^{s(2^m-1)} + a x^{2^m-1} + delta)^{2^m+1}", "GF(2^{2m})",
               {shape_m(), integer("r", 1, "outer exponent"), integer("s", 1, "inner exponent multiplier"),
                element("a", "coefficient"), element("delta", "constant term")}});
  r.push_back({FamilyId::F9, "Proposition 8", "x^{2^{m-1}(2^m+1)}+ax^{2^m+1} +\\delta",
               "x^r (x^{2^{m-1}(2^m+1)} + a x^{2^m+1} + delta)^{s(2^m-1)}", "GF(2^{2m})",
               {shape_m(), integer("r", 1, "outer exponent"), integer("s", 1, "power multiplier"),
                element("a", "coefficient"), element("delta", "constant term")}});
  r.push_back({FamilyId::F10, "Proposition 9", "x^{ {2^m}(2^m-1)}+ax^{2^m-1}+b",
               "x^r (x^{2^m(2^m-1)} + a x^{2^m-1} + b)^{s(2^{2m}+2^m+1)}", "GF(2^{3m})",
               {shape_m(), integer("r", 1, "outer exponent"), integer("s", 1, "power multiplier"),
                element("a", "coefficient", true), element("b", "constant term", true)}});
  r.push_back({FamilyId::F11, "Proposition 10", "x^{2^{2m}(2^m-1)}+bx^{2^m(2^m-1)}+ax^{2^m-1}+\\delta",
               "x^r (x^{2^{2m}(2^m-1)} + b x^{2^m(2^m-1)} + a x^{2^m-1} + delta)^{s(2^{2m}+2^m+1)}",
               "GF(2^{3m})",
               {shape_m(), integer("r", 1, "outer exponent"), integer("s", 1, "power multiplier"),
                element("a", "coefficient", true), element("b", "coefficient", true),
                element("delta", "constant term")}});
  r.push_back({FamilyId::F12, "Lemma 1 / Lemma 2",
               "$g(x^{q^k}-x+\\delta)+cx$ permutes / $g(x^{q^k}+x+\\delta)+cx$ permutes",
               "g(x^{q^k} -+ x + delta) + c x versus g(x)^{q^k} -+ g(x) + c x", "GF(q^n)",
               {shape_q(), {"n", ParamKind::Integer, true, true, 1, {}, "extension degree over GF(q)"},
                integer("k", 1, "Frobenius power"), choice("sign", {"minus", "plus"}, "which transform"),
                poly("g", "outer polynomial"), element("c", "linear coefficient", true),
                element("delta", "shift")}});
  return r;
}

// ---- per-family behaviour ----------------------------------------------------

struct Impl {
  FieldShape (*shape)(const ParamMap&);
  void (*defaults)(const Field&, ParamMap&);
  ConditionReport (*check)(const Field&, const ParamMap&);
  FieldMap (*evaluate)(const Field&, const ParamMap&);
  SparsePoly (*expand)(const Field&, const ParamMap&);
  std::optional<std::uint64_t> (*zieve)(const Field&, const ParamMap&);
};

FieldShape shape_2m(const ParamMap& p) { return {2, 2 * get_m(p)}; }
FieldShape shape_3m(const ParamMap& p) { return {2, 3 * get_m(p)}; }

template <unsigned N>
FieldShape shape_qn(const ParamMap& p) {
  const auto [prime, e] = prime_power(get_int(p, "q"));
  return {prime, N * e};
}

FieldShape shape_f12(const ParamMap& p) {
  const auto [prime, e] = prime_power(get_int(p, "q"));
  return {prime, static_cast<unsigned>(get_int(p, "n")) * e};
}

void no_defaults(const Field&, ParamMap&) {}
std::optional<std::uint64_t> no_zieve(const Field&, const ParamMap&) { return std::nullopt; }

// F1
SparsePoly f1_inner(const Field& f, const ParamMap& p) {
  const unsigned m = get_m(p);
  return SparsePoly(f, {{f.one(), two_pow(m)}, {f.one(), 1}, {get_elem(p, "delta"), 0}});
}
ConditionReport f1_check(const Field&, const ParamMap& p) {
  Clauses out;
  subfield_unit_clause(out, "c in GF(2^m)*", get_elem(p, "c"), get_m(p));
  return out.done();
}
FieldMap f1_eval(const Field& f, const ParamMap& p) {
  const unsigned m = get_m(p);
  const std::uint64_t Q = ipow(2, m), outer = reduce(f, big(Q * Q + 1));
  const Rep d = get_elem(p, "delta").rep(), c = get_elem(p, "c").rep();
  return [&f, m, outer, d, c](const Elem& x) {
    const Rep inner = f.add(f.add(f.frobenius(x.rep(), m), x.rep()), d);
    return Elem(f, f.add(f.pow(inner, outer), f.mul(c, x.rep())));
  };
}
SparsePoly f1_expand(const Field& f, const ParamMap& p) {
  const unsigned m = get_m(p);
  return f1_inner(f, p).pow(two_pow(2 * m) + 1) + SparsePoly::monomial(get_elem(p, "c"), 1);
}

// F2
std::vector<Term> f2_terms(const Field& f, const ParamMap& p) {
  const unsigned m = get_m(p);
  const BigInt e = two_pow(2 * m) + 1;
  return {{f.one(), two_pow(m) * e}, {f.one(), e}, {get_elem(p, "c"), 1}};
}
ConditionReport f2_check(const Field& f, const ParamMap& p) { return f1_check(f, p); }
FieldMap f2_eval(const Field& f, const ParamMap& p) { return as_map(SparsePoly(f, f2_terms(f, p))); }
SparsePoly f2_expand(const Field& f, const ParamMap& p) { return SparsePoly(f, f2_terms(f, p)); }
std::optional<std::uint64_t> f2_zieve(const Field& f, const ParamMap&) { return f.group_order(); }

// F3
void f3_defaults(const Field&, ParamMap& p) {
  if (!p.contains("s")) {
    const std::int64_t Q = std::int64_t{1} << get_m(p);
    p["s"] = (Q * Q + Q + 1) / 3;
  }
}
std::vector<Term> f3_terms(const Field&, const ParamMap& p) {
  const Elem& c = get_elem(p, "c");
  const BigInt Q = two_pow(get_m(p)), s(get_int(p, "s"));
  return {{c, 1}, {c.field().one(), s}, {pow(c, Q), Q * s}};
}
ConditionReport f3_check(const Field&, const ParamMap& p) {
  Clauses out;
  const unsigned m = get_m(p);
  const BigInt Q = two_pow(m);
  const BigInt s(get_int(p, "s"));
  out.add("q = 1 mod 3", Q % 3 == 1, {{"q mod 3", BigInt(Q % 3)}});
  out.add("s = (q^2+q+1)/3", 3 * s == Q * Q + Q + 1, {{"s", s}});
  const Elem& c = get_elem(p, "c");
  out.add("c != 0", !c.is_zero(), {{"c", c}});
  const Elem tr = rel_trace(pow(c, Q + 1), 1, m);
  out.add("Tr_1^m(c^{q+1}) = 0", tr.is_zero(), {{"trace", tr}});
  return out.done();
}
FieldMap f3_eval(const Field& f, const ParamMap& p) { return as_map(SparsePoly(f, f3_terms(f, p))); }
SparsePoly f3_expand(const Field& f, const ParamMap& p) { return SparsePoly(f, f3_terms(f, p)); }
std::optional<std::uint64_t> f3_zieve(const Field&, const ParamMap& p) { return ipow(2, get_m(p)) + 1; }

// F4
std::uint64_t f4_D(const Field& f) { return f.group_order() / 3; }
ConditionReport f4_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const Elem& b = get_elem(p, "b");
  const std::uint64_t D = f4_D(f);
  const Elem gamma = f.generator();
  // V_i = { gamma^{3k+i} (gamma^{Di} + b) : 1 <= k <= D }, i = 0, 1, 2.
  std::vector<std::int8_t> owner(f.size(), -1);
  std::vector<std::uint64_t> index(f.size(), 0);
  std::optional<Witness> overlap;
  std::optional<unsigned> vanishing;
  for (unsigned i = 0; i < 3 && !overlap; ++i) {
    const Elem beta = pow(gamma, D * i) + b;
    if (beta.is_zero()) vanishing = i;
    Elem v = pow(gamma, 3 + i) * beta;
    const Elem step = pow(gamma, 3);
    for (std::uint64_t k = 1; k <= D; ++k, v *= step) {
      const std::int8_t prev = owner[v.rep()];
      if (prev >= 0 && prev != static_cast<std::int8_t>(i)) {
        overlap = Witness{{"i", BigInt(prev)}, {"k", BigInt(index[v.rep()])}, {"i'", BigInt(i)},
                          {"k'", BigInt(k)}, {"value", v}};
        break;
      }
      if (prev < 0) {
        owner[v.rep()] = static_cast<std::int8_t>(i);
        index[v.rep()] = k;
      }
    }
  }
  out.add("gamma^{3k+i}(gamma^{Di}+b) != gamma^{3k'+i'}(gamma^{Di'}+b) for i != i'", !overlap,
          overlap.value_or(Witness{}));
  Witness w;
  if (vanishing) w.push_back({"s", BigInt(*vanishing)});
  out.add("b != gamma^{Ds}", !vanishing, std::move(w));
  return out.done();
}
SparsePoly f4_expand(const Field& f, const ParamMap& p) {
  return SparsePoly(f, {{f.one(), big(f4_D(f) + 1)}, {get_elem(p, "b"), 1}});
}
FieldMap f4_eval(const Field& f, const ParamMap& p) { return as_map(f4_expand(f, p)); }
std::optional<std::uint64_t> f4_zieve(const Field&, const ParamMap&) { return 3; }

// F5
SparsePoly f5_expand(const Field& f, const ParamMap& p) {
  const BigInt Q = two_pow(get_m(p)), r(get_int(p, "r")), i(get_int(p, "i"));
  return SparsePoly(f, {{f.one(), i * (Q - 1) + r}, {get_elem(p, "b"), r}});
}
ConditionReport f5_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const BigInt Q = two_pow(get_m(p)), r(get_int(p, "r")), i(get_int(p, "i"));
  const BigInt n = big(f.group_order());
  gcd_clause(out, "gcd(r-i, 2^m+1) = 1", r - i, Q + 1);
  gcd_clause(out, "gcd(r, i(2^m-1)) = 1", r, i * (Q - 1));
  const Elem& b = get_elem(p, "b");
  const BigInt e = n / big_gcd(i * (Q - 1), n);
  const Elem be = pow(b, e);
  out.add("b^{(2^{2m}-1)/gcd(i(2^m-1), 2^{2m}-1)} != 1", !be.is_one(), {{"exponent", e}, {"value", be}});
  const Elem norm_b = pow(b, Q + 1);
  out.add("b^{2^m+1} = 1", norm_b.is_one(), {{"value", norm_b}});
  return out.done();
}
FieldMap f5_eval(const Field& f, const ParamMap& p) { return as_map(f5_expand(f, p)); }
std::optional<std::uint64_t> f5_zieve(const Field&, const ParamMap& p) { return ipow(2, get_m(p)) + 1; }

// F6 / F7
void trace_defaults(const Field&, ParamMap& p) {
  const std::string& which = get_choice(p, "case");
  if (which == "i" && !p.contains("u")) schema_error("case i requires parameter 'u'");
  if (!p.contains("i")) p["i"] = std::int64_t{1};
}

unsigned q_degree(const ParamMap& p) { return prime_power(get_int(p, "q")).second; }

ConditionReport f6_check(const Field&, const ParamMap& p) {
  Clauses out;
  subfield_unit_clause(out, "c in GF(q)*", get_elem(p, "c"), q_degree(p));
  return out.done();
}
SparsePoly f6_g(const Field& f, const ParamMap& p) { return conjugate_sum_g(f, p, q_degree(p), 3, f.one()); }
FieldMap f6_eval(const Field& f, const ParamMap& p) {
  return l02_map(f6_g(f, p), get_elem(p, "c"), q_degree(p), 1, Sign::Minus, get_elem(p, "delta"));
}
SparsePoly f6_expand(const Field& f, const ParamMap& p) {
  return l02_poly(f6_g(f, p), get_elem(p, "c"), q_degree(p), 1, Sign::Minus, get_elem(p, "delta"));
}

void f7_defaults(const Field& f, ParamMap& p) {
  trace_defaults(f, p);
  if (p.contains("c0")) return;
  if (f.characteristic() == 2) {
    p["c0"] = f.one();
    return;
  }
  const std::uint64_t q = ipow(f.characteristic(), q_degree(p));
  const Elem minus_one = -f.one();
  for (const Elem& c0 : nonzero_elements(f)) {
    if (pow(c0, q - 1) != minus_one) continue;
    // c0^{q-1} = -1 != 1, so c0 lies outside GF(q)*.
    if (subfield_test(c0, q_degree(p))) throw std::logic_error("c0 must lie outside GF(q)*");
    p["c0"] = c0;
    return;
  }
  throw std::logic_error("no c0 with c0^{q-1} = -1");
}
ConditionReport f7_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const unsigned e = q_degree(p);
  subfield_unit_clause(out, "c in GF(q)*", get_elem(p, "c"), e);
  const Elem& c0 = get_elem(p, "c0");
  const Elem sum = frobenius(c0, e) + c0;
  out.add("c0^q + c0 = 0", sum.is_zero(), {{"c0", c0}, {"value", sum}});
  if (f.characteristic() != 2) {
    const bool in = subfield_test(c0, e);
    out.add("c0 not in GF(q)* (odd characteristic)", !in, {{"c0", c0}});
  }
  return out.done();
}
SparsePoly f7_g(const Field& f, const ParamMap& p) {
  return conjugate_sum_g(f, p, q_degree(p), 4, get_elem(p, "c0"));
}
FieldMap f7_eval(const Field& f, const ParamMap& p) {
  return l02_map(f7_g(f, p), get_elem(p, "c"), q_degree(p), 1, Sign::Plus, get_elem(p, "delta"));
}
SparsePoly f7_expand(const Field& f, const ParamMap& p) {
  return l02_poly(f7_g(f, p), get_elem(p, "c"), q_degree(p), 1, Sign::Plus, get_elem(p, "delta"));
}

// F8
PowerForm f8_form(const Field& f, const ParamMap& p) {
  const BigInt Q = two_pow(get_m(p)), s(get_int(p, "s"));
  return {BigInt(get_int(p, "r")),
          {{f.one(), s * (Q - 1)}, {get_elem(p, "a"), Q - 1}, {get_elem(p, "delta"), 0}},
          Q + 1};
}
ConditionReport f8_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const unsigned m = get_m(p);
  const BigInt Q = two_pow(m);
  out.add("s > 1", get_int(p, "s") > 1, {{"s", BigInt(get_int(p, "s"))}});
  gcd_clause(out, "gcd(r, 2^{2m}-1) = 1", BigInt(get_int(p, "r")), big(f.group_order()));
  const Elem na = pow(get_elem(p, "a"), Q + 1), nd = pow(get_elem(p, "delta"), Q + 1);
  const Elem den = na + nd + f.one();
  if (den.is_zero()) {
    out.add("Tr_1^m(a^{q+1} delta^{q+1} / (a^{q+1}+delta^{q+1}+1)^2) = 0", false,
            {{"denominator", den}});
  } else {
    const Elem tr = rel_trace(na * nd / (den * den), 1, m);
    out.add("Tr_1^m(a^{q+1} delta^{q+1} / (a^{q+1}+delta^{q+1}+1)^2) = 0", tr.is_zero(),
            {{"denominator", den}, {"trace", tr}});
  }
  return out.done();
}
FieldMap f8_eval(const Field& f, const ParamMap& p) { return power_form_map(f, f8_form(f, p)); }
SparsePoly f8_expand(const Field& f, const ParamMap& p) { return power_form_poly(f, f8_form(f, p)); }
std::optional<std::uint64_t> f8_zieve(const Field&, const ParamMap& p) { return ipow(2, get_m(p)) + 1; }

// F9
PowerForm f9_form(const Field& f, const ParamMap& p) {
  const unsigned m = get_m(p);
  const BigInt Q = two_pow(m), s(get_int(p, "s"));
  return {BigInt(get_int(p, "r")),
          {{f.one(), two_pow(m - 1) * (Q + 1)}, {get_elem(p, "a"), Q + 1}, {get_elem(p, "delta"), 0}},
          s * (Q - 1)};
}
ConditionReport f9_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const unsigned m = get_m(p);
  gcd_clause(out, "gcd(r, 2^{2m}-1) = 1", BigInt(get_int(p, "r")), big(f.group_order()));
  const Elem &a = get_elem(p, "a"), &delta = get_elem(p, "delta");
  subfield_unit_clause(out, "a in GF(2^m)*", a, m);
  subfield_unit_clause(out, "delta in GF(2^m)*", delta, m);
  const std::string name = "Tr_1^m(a^3/delta) = 1";
  if (delta.is_zero() || !subfield_test(a, m) || !subfield_test(delta, m)) {
    out.add(name, false, {{"value", std::string("undefined")}});
  } else {
    const Elem tr = rel_trace(pow(a, 3) / delta, 1, m);
    out.add(name, tr.is_one(), {{"trace", tr}});
  }
  return out.done();
}
FieldMap f9_eval(const Field& f, const ParamMap& p) { return power_form_map(f, f9_form(f, p)); }
SparsePoly f9_expand(const Field& f, const ParamMap& p) { return power_form_poly(f, f9_form(f, p)); }
std::optional<std::uint64_t> f9_zieve(const Field&, const ParamMap& p) { return ipow(2, get_m(p)) - 1; }

// F10
PowerForm f10_form(const Field& f, const ParamMap& p) {
  const BigInt Q = two_pow(get_m(p)), s(get_int(p, "s"));
  return {BigInt(get_int(p, "r")),
          {{f.one(), Q * (Q - 1)}, {get_elem(p, "a"), Q - 1}, {get_elem(p, "b"), 0}},
          s * (Q * Q + Q + 1)};
}
ConditionReport f10_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const unsigned m = get_m(p);
  const BigInt Q = two_pow(m), d = Q * Q + Q + 1;
  gcd_clause(out, "gcd(r, 2^{3m}-1) = 1", BigInt(get_int(p, "r")), big(f.group_order()));
  const Elem &a = get_elem(p, "a"), &b = get_elem(p, "b");
  const Elem A = pow(a, d);
  const Elem numerator = affine_frobenius_numerator(a, b, m);
  const RootReport roots = affine_frobenius_roots(a, b, m);
  Witness w{{"a^{q^2+q+1}", A}, {"numerator", numerator}, {"solver", roots.certificate}};
  bool pass = false;
  std::string branch = "none";
  if (!A.is_one()) {
    const Elem candidate = numerator / (A + f.one());
    const Elem norm = pow(candidate, d);
    w.push_back({"candidate", candidate});
    w.push_back({"candidate^{q^2+q+1}", norm});
    pass = !norm.is_one();
    branch = "i";
  } else {
    pass = !numerator.is_zero();
    branch = "ii";
  }
  w.insert(w.begin(), std::pair<std::string, WitnessValue>{"case", branch});
  out.add("case (i) a^{q^2+q+1} != 1 and candidate^{q^2+q+1} != 1, or case (ii) a^{q^2+q+1} = 1 and "
          "numerator != 0",
          pass, std::move(w));
  return out.done();
}
FieldMap f10_eval(const Field& f, const ParamMap& p) { return power_form_map(f, f10_form(f, p)); }
SparsePoly f10_expand(const Field& f, const ParamMap& p) { return power_form_poly(f, f10_form(f, p)); }
std::optional<std::uint64_t> cubic_zieve(const Field&, const ParamMap& p) {
  const std::uint64_t Q = ipow(2, get_m(p));
  return Q * Q + Q + 1;
}

// F11
PowerForm f11_form(const Field& f, const ParamMap& p) {
  const BigInt Q = two_pow(get_m(p)), s(get_int(p, "s"));
  return {BigInt(get_int(p, "r")),
          {{f.one(), Q * Q * (Q - 1)},
           {get_elem(p, "b"), Q * (Q - 1)},
           {get_elem(p, "a"), Q - 1},
           {get_elem(p, "delta"), 0}},
          s * (Q * Q + Q + 1)};
}
ConditionReport f11_check(const Field& f, const ParamMap& p) {
  Clauses out;
  const unsigned m = get_m(p);
  gcd_clause(out, "gcd(r, 2^{3m}-1) = 1", BigInt(get_int(p, "r")), big(f.group_order()));
  gcd_clause(out, "gcd(3, 2^m-1) = 1", 3, two_pow(m) - 1);
  const Elem &a = get_elem(p, "a"), &b = get_elem(p, "b"), &delta = get_elem(p, "delta");
  const Elem one = f.one();
  const Elem sum = a + b + one;
  out.add("a+b+1 != 0", !sum.is_zero(), {{"value", sum}});
  if (sum.is_zero()) {
    out.add("(delta+1)/(a+b+1) in GF(2^m)*", false, {{"value", std::string("undefined")}});
  } else {
    subfield_unit_clause(out, "(delta+1)/(a+b+1) in GF(2^m)*", (delta + one) / sum, m);
  }
  const Elem shifted = sum + delta;
  out.add("a+b+delta+1 != 0", !shifted.is_zero(), {{"value", shifted}});
  out.add("ax+bx^q+x^{q^2} has only the root 0", linearized_bijective(a, b, m));
  return out.done();
}
FieldMap f11_eval(const Field& f, const ParamMap& p) { return power_form_map(f, f11_form(f, p)); }
SparsePoly f11_expand(const Field& f, const ParamMap& p) { return power_form_poly(f, f11_form(f, p)); }

// F12
Sign f12_sign(const ParamMap& p) { return get_choice(p, "sign") == "minus" ? Sign::Minus : Sign::Plus; }
ConditionReport f12_check(const Field&, const ParamMap& p) {
  Clauses out;
  const std::int64_t n = get_int(p, "n"), k = get_int(p, "k");
  out.add("0 < k < n", 0 < k && k < n, {{"k", BigInt(k)}, {"n", BigInt(n)}});
  const auto g = static_cast<unsigned>(std::gcd(k, n));
  subfield_unit_clause(out, "c in GF(q^{gcd(k,n)})*", get_elem(p, "c"), g * q_degree(p));
  return out.done();
}
FieldMap f12_eval(const Field&, const ParamMap& p) {
  return l02_map(get_poly(p, "g"), get_elem(p, "c"), q_degree(p), static_cast<unsigned>(get_int(p, "k")),
                 f12_sign(p), get_elem(p, "delta"));
}
SparsePoly f12_expand(const Field&, const ParamMap& p) {
  return l02_poly(get_poly(p, "g"), get_elem(p, "c"), q_degree(p), static_cast<unsigned>(get_int(p, "k")),
                  f12_sign(p), get_elem(p, "delta"));
}

const Impl& impl(FamilyId id) {
  static const Impl table[kFamilyCount] = {
      {shape_3m, no_defaults, f1_check, f1_eval, f1_expand, no_zieve},
      {shape_3m, no_defaults, f2_check, f2_eval, f2_expand, f2_zieve},
      {shape_2m, f3_defaults, f3_check, f3_eval, f3_expand, f3_zieve},
      {shape_2m, no_defaults, f4_check, f4_eval, f4_expand, f4_zieve},
      {shape_2m, no_defaults, f5_check, f5_eval, f5_expand, f5_zieve},
      {shape_qn<3>, trace_defaults, f6_check, f6_eval, f6_expand, no_zieve},
      {shape_qn<4>, f7_defaults, f7_check, f7_eval, f7_expand, no_zieve},
      {shape_2m, no_defaults, f8_check, f8_eval, f8_expand, f8_zieve},
      {shape_2m, no_defaults, f9_check, f9_eval, f9_expand, f9_zieve},
      {shape_3m, no_defaults, f10_check, f10_eval, f10_expand, cubic_zieve},
      {shape_3m, no_defaults, f11_check, f11_eval, f11_expand, cubic_zieve},
      {shape_f12, no_defaults, f12_check, f12_eval, f12_expand, no_zieve},
  };
  return table[static_cast<int>(id) - 1];
}

void validate(const FamilySpec& spec, const Field& field, const ParamMap& params) {
  for (const auto& [name, value] : params)
    if (!spec.param(name)) schema_error("unknown parameter '" + name + "' for " + std::string(to_string(spec.id)));
  for (const ParamSpec& ps : spec.params) {
    const auto it = params.find(ps.name);
    if (it == params.end()) {
      if (ps.required) schema_error("missing parameter '" + ps.name + "'");
      continue;
    }
    const ParamValue& v = it->second;
    const std::string where = "parameter '" + ps.name + "'";
    switch (ps.kind) {
      case ParamKind::Integer:
      case ParamKind::PrimePower: {
        const auto* i = std::get_if<std::int64_t>(&v);
        if (!i) schema_error(where + " must be an integer");
        if (*i < ps.min) schema_error(where + " must be >= " + std::to_string(ps.min));
        if (ps.kind == ParamKind::PrimePower) prime_power(*i);
        break;
      }
      case ParamKind::Element:
      case ParamKind::NonzeroElement: {
        const auto* e = std::get_if<Elem>(&v);
        if (!e) schema_error(where + " must be a field element");
        if (e->field_ptr() != &field) schema_error(where + " belongs to another field");
        if (ps.kind == ParamKind::NonzeroElement && e->is_zero()) schema_error(where + " must be nonzero");
        break;
      }
      case ParamKind::Polynomial: {
        const auto* f = std::get_if<SparsePoly>(&v);
        if (!f) schema_error(where + " must be a polynomial");
        if (&f->field() != &field) schema_error(where + " belongs to another field");
        break;
      }
      case ParamKind::Choice: {
        const auto* s = std::get_if<std::string>(&v);
        if (!s || std::find(ps.choices.begin(), ps.choices.end(), *s) == ps.choices.end())
          schema_error(where + " has an invalid choice");
        break;
      }
    }
  }
}

}  // namespace

std::string_view to_string(FamilyId id) {
  static constexpr std::string_view names[] = {"F1", "F2", "F3", "F4",  "F5",  "F6",
                                                "F7", "F8", "F9", "F10", "F11", "F12"};
  return names[static_cast<int>(id) - 1];
}

std::optional<FamilyId> parse_family_id(std::string_view text) {
  for (int i = 1; i <= kFamilyCount; ++i)
    if (to_string(static_cast<FamilyId>(i)) == text) return static_cast<FamilyId>(i);
  return std::nullopt;
}

const ParamSpec* FamilySpec::param(std::string_view name) const {
  for (const ParamSpec& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

std::span<const FamilySpec> registry() {
  static const std::vector<FamilySpec> r = make_registry();
  return r;
}

const FamilySpec& family(FamilyId id) { return registry()[static_cast<std::size_t>(id) - 1]; }

const ClauseResult* ConditionReport::clause(std::string_view name) const {
  for (const ClauseResult& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

bool ConditionReport::pass_excluding(std::span<const std::string_view> names) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const ClauseResult& c) {
    return c.pass || std::find(names.begin(), names.end(), c.name) != names.end();
  });
}

FieldShape field_shape(FamilyId id, const ParamMap& params) {
  for (const ParamSpec& ps : family(id).params) {
    if (!ps.shape) continue;
    const auto* v = params.contains(ps.name) ? std::get_if<std::int64_t>(&params.find(ps.name)->second) : nullptr;
    if (!v) schema_error("missing integer parameter '" + ps.name + "'");
    if (*v < ps.min) schema_error("parameter '" + ps.name + "' must be >= " + std::to_string(ps.min));
  }
  return impl(id).shape(params);
}

FieldPtr make_family_field(FamilyId id, const ParamMap& params) {
  const FieldShape shape = field_shape(id, params);
  return make_field(shape.p, shape.k);
}

ParamMap resolve_params(FamilyId id, const Field& field, const ParamMap& params) {
  const FieldShape shape = field_shape(id, params);
  if (shape.p != field.characteristic() || shape.k != field.degree())
    throw Error(ErrorCode::FieldShapeMismatch,
                std::string(to_string(id)) + " needs GF(" + std::to_string(shape.p) + "^" +
                    std::to_string(shape.k) + "), got " + field.describe());
  const FamilySpec& spec = family(id);
  validate(spec, field, params);
  ParamMap out = params;
  impl(id).defaults(field, out);
  validate(spec, field, out);
  return out;
}

SparsePoly build(FamilyId id, const Field& field, const ParamMap& params) {
  return impl(id).expand(field, resolve_params(id, field, params));
}

FieldMap evaluator(FamilyId id, const Field& field, const ParamMap& params) {
  return impl(id).evaluate(field, resolve_params(id, field, params));
}

ConditionReport check(FamilyId id, const Field& field, const ParamMap& params) {
  return impl(id).check(field, resolve_params(id, field, params));
}

std::optional<std::uint64_t> zieve_divisor(FamilyId id, const Field& field, const ParamMap& params) {
  return impl(id).zieve(field, resolve_params(id, field, params));
}

namespace {

std::vector<const ParamSpec*> free_params(FamilyId id, const ParamMap& fixed) {
  std::vector<const ParamSpec*> out;
  for (const ParamSpec& ps : family(id).params) {
    if (fixed.contains(ps.name)) continue;
    if (ps.kind == ParamKind::Element || ps.kind == ParamKind::NonzeroElement) {
      if (ps.required) out.push_back(&ps);
    }
  }
  return out;
}

}  // namespace

std::uint64_t enumeration_size(FamilyId id, const Field& field, const ParamMap& fixed) {
  BigInt total = 1;
  for (const ParamSpec* ps : free_params(id, fixed))
    total *= ps->kind == ParamKind::NonzeroElement ? field.group_order() : field.size();
  const BigInt limit = BigInt(std::numeric_limits<std::uint64_t>::max());
  return static_cast<std::uint64_t>(total > limit ? limit : total);
}

void enumerate(FamilyId id, const Field& field, const ParamMap& fixed,
               const std::function<void(const EnumerationRow&)>& sink, std::uint64_t cap) {
  const std::uint64_t total = enumeration_size(id, field, fixed);
  if (total > cap)
    throw Error(ErrorCode::EnumerationTooLarge,
                std::to_string(total) + " assignments exceed the cap of " + std::to_string(cap));
  const auto free = free_params(id, fixed);
  std::vector<Rep> first(free.size()), cursor(free.size());
  for (std::size_t i = 0; i < free.size(); ++i)
    first[i] = cursor[i] = free[i]->kind == ParamKind::NonzeroElement ? 1 : 0;

  for (std::uint64_t n = 0; n < total; ++n) {
    ParamMap params = fixed;
    for (std::size_t i = 0; i < free.size(); ++i) params[free[i]->name] = field.elem(cursor[i]);
    EnumerationRow row;
    row.params = resolve_params(id, field, params);
    row.condition = impl(id).check(field, row.params);
    sink(row);
    for (std::size_t i = free.size(); i-- > 0;) {
      if (++cursor[i] < field.size()) break;
      cursor[i] = first[i];
    }
  }
}

L02Pair transform_l02(const SparsePoly& g, const Elem& c, unsigned q_degree, unsigned k, Sign sign) {
  const Field& field = g.field();
  if (c.field_ptr() != &field) throw Error(ErrorCode::CtxMismatch, "c and g live in different fields");
  if (q_degree == 0 || field.degree() % q_degree != 0)
    throw Error(ErrorCode::BadDegrees, "GF(p^" + std::to_string(q_degree) + ") is not a subfield of " +
                                           field.describe());
  const unsigned n = field.degree() / q_degree;
  if (k == 0 || k >= n)
    throw Error(ErrorCode::BadDegrees, "need 0 < k < n, got k = " + std::to_string(k) +
                                           ", n = " + std::to_string(n));
  const unsigned sub = q_degree * std::gcd(k, n);
  if (c.is_zero() || !subfield_test(c, sub))
    throw Error(ErrorCode::BadSubfieldConstant, "c must lie in GF(p^" + std::to_string(sub) + ")*");

  const SparsePoly lifted = g.frobenius_power(q_degree * k);
  SparsePoly h = (sign == Sign::Minus ? lifted - g : lifted + g) + c * SparsePoly::x(field);
  return {
      [g, c, q_degree, k, sign](const Elem& delta) { return l02_map(g, c, q_degree, k, sign, delta); },
      [g, c, q_degree, k, sign](const Elem& delta) { return l02_poly(g, c, q_degree, k, sign, delta); },
      std::move(h)};
}

std::string format_param(const ParamValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, Elem>) return v.field().format(v.rep());
        else if constexpr (std::is_same_v<T, SparsePoly>) return v.to_string();
        else return v;
      },
      value);
}

ParamValue parse_param(const ParamSpec& spec, const Field* field, std::string_view text) {
  const std::string where = "parameter '" + spec.name + "'";
  switch (spec.kind) {
    case ParamKind::Integer:
    case ParamKind::PrimePower: {
      std::int64_t v = 0;
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || end != text.data() + text.size())
        schema_error(where + ": '" + std::string(text) + "' is not an integer");
      return v;
    }
    case ParamKind::Element:
    case ParamKind::NonzeroElement:
      if (!field) schema_error(where + " needs a field");
      return parse_element(*field, text);
    case ParamKind::Polynomial: {
      if (!field) schema_error(where + " needs a field");
      std::vector<Elem> coeffs;
      std::size_t start = 0;
      while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        coeffs.push_back(parse_element(*field, text.substr(start, comma - start)));
        start = comma + 1;
      }
      return SparsePoly::from_coefficients(*field, coeffs);
    }
    case ParamKind::Choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), text) == spec.choices.end())
        schema_error(where + ": '" + std::string(text) + "' is not a valid choice");
      return std::string(text);
  }
  schema_error(where + ": unsupported kind");
}

}  // namespace permpoly
