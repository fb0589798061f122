#include "permpoly/solvers.hpp"

#include <algorithm>
#include <stdexcept>

namespace permpoly {

std::string_view to_string(RootKind kind) {
  switch (kind) {
    case RootKind::NoRoot: return "NoRoot";
    case RootKind::Unique: return "Unique";
    case RootKind::TwoRoots: return "TwoRoots";
    case RootKind::SubfieldMany: return "SubfieldMany";
  }
  return "?";
}

namespace {

const Field& same_field(const Elem& a, const Elem& b) {
  const Field& f = a.field();
  if (&f != &b.field()) throw Error(ErrorCode::CtxMismatch, "operands belong to different fields");
  return f;
}

void require_char2_degree(const Field& f, unsigned multiple, unsigned m) {
  if (f.characteristic() != 2 || m == 0 || f.degree() != multiple * m)
    throw Error(ErrorCode::DegreeMismatch, "expected GF(2^" + std::to_string(multiple * m) +
                                               "), got " + f.describe());
}

Elem absolute_trace(const Elem& a) { return rel_trace(a, 1, a.field().degree()); }

// y with y^2 + y = w, given Tr(w) = 0.
Elem artin_schreier_root(const Elem& w) {
  const Field& f = w.field();
  const unsigned k = f.degree();
  if (k % 2 == 1) {
    // Half-trace.
    Elem y = f.zero(), t = w;
    for (unsigned i = 0; i <= (k - 1) / 2; ++i) {
      y += t;
      t = frobenius(frobenius(t, 1), 1);
    }
    return y;
  }
  // y = sum_{i<k} T_i w^{2^i} with T_i = sum_{j<i} tau^{2^j} and Tr(tau) = 1.
  Elem tau = f.one();
  for (Rep r = 1; r < f.size(); ++r) {
    tau = f.elem(r);
    if (absolute_trace(tau).is_one()) break;
  }
  Elem y = f.zero(), partial = f.zero(), tau_pow = tau, w_pow = w;
  for (unsigned i = 0; i < k; ++i) {
    y += partial * w_pow;
    partial += tau_pow;
    tau_pow = frobenius(tau_pow, 1);
    w_pow = frobenius(w_pow, 1);
  }
  return y;
}

RootReport make_report(RootKind kind, std::vector<Elem> roots, std::string certificate) {
  std::sort(roots.begin(), roots.end());
  return RootReport{kind, std::move(roots), std::move(certificate)};
}

}  // namespace

RootReport quad_char2_roots(const Elem& u, const Elem& v) {
  const Field& f = same_field(u, v);
  if (f.characteristic() != 2)
    throw Error(ErrorCode::DegreeMismatch, "quadratic solver needs characteristic 2");
  auto satisfies = [&](const Elem& x) { return (x * x + u * x + v).is_zero(); };

  if (u.is_zero()) {
    const Elem root = frobenius(v, f.degree() - 1);
    if (!satisfies(root)) throw std::logic_error("square root failed substitution");
    return make_report(RootKind::Unique, {root}, "degenerate: u = 0, x = v^(2^(k-1))");
  }
  const Elem w = v / (u * u);
  if (!absolute_trace(w).is_zero())
    return make_report(RootKind::NoRoot, {}, "Tr(v/u^2) = 1");
  const Elem r = u * artin_schreier_root(w);
  if (!satisfies(r) || !satisfies(r + u)) throw std::logic_error("quadratic root failed substitution");
  return make_report(RootKind::TwoRoots, {r, r + u},
                     f.degree() % 2 == 1 ? "Tr(v/u^2) = 0, half-trace" : "Tr(v/u^2) = 0, trace-one split");
}

RootReport unit_circle_quad(const Elem& a, const Elem& b, unsigned m) {
  const Field& f = same_field(a, b);
  require_char2_degree(f, 2, m);
  if (a.is_zero() || b.is_zero())
    throw Error(ErrorCode::HypothesisUnmet, "unit-circle quadratic needs a, b != 0");
  const Elem w = b / (a * a);
  if (!absolute_trace(w).is_zero())
    throw Error(ErrorCode::HypothesisUnmet, "Tr_1^{2m}(b/a^2) != 0");

  const std::uint64_t q = ipow(2, m);
  const Elem one = f.one();
  const Elem a_q = pow(a, q);
  const Elem b_q = pow(b, q);
  const bool b_is_ratio = b == a / a_q;

  const bool both = b_is_ratio && rel_trace(w, 1, m).is_one() &&
                    rel_trace(pow(a, q + 1).inverse(), 1, m).is_one();
  const Elem bq1 = pow(b, q + 1), aq1 = pow(a, q + 1);
  const bool single =
      !b_is_ratio &&
      ((one + bq1) * (one + aq1 + bq1) + a * a * b_q + pow(a, 2 * q) * b).is_zero();

  std::vector<Elem> on_circle;
  for (const Elem& x : quad_char2_roots(a, b).roots)
    if (pow(x, q + 1) == one) on_circle.push_back(x);

  RootKind kind = RootKind::NoRoot;
  std::string certificate = "no root on the unit circle";
  if (both) {
    kind = RootKind::TwoRoots;
    certificate = "both roots on the unit circle: b = a^(1-2^m), traces equal 1";
  } else if (single) {
    kind = RootKind::Unique;
    certificate = "exactly one root on the unit circle";
  }
  const std::size_t expected = kind == RootKind::TwoRoots ? 2 : (kind == RootKind::Unique ? 1 : 0);
  if (on_circle.size() != expected)
    throw std::logic_error("unit-circle classification disagrees with the computed roots");
  return make_report(kind, std::move(on_circle), std::move(certificate));
}

Elem affine_frobenius_numerator(const Elem& a, const Elem& b, unsigned m) {
  const Field& f = same_field(a, b);
  require_char2_degree(f, 3, m);
  const std::uint64_t q = ipow(2, m);
  const Elem a_q2 = pow(a, q * q);
  return a_q2 * pow(b, q) + a_q2 * pow(a, q) * b + pow(b, q * q);
}

RootReport affine_frobenius_roots(const Elem& a, const Elem& b, unsigned m) {
  const Field& f = same_field(a, b);
  require_char2_degree(f, 3, m);
  if (a.is_zero() || b.is_zero())
    throw Error(ErrorCode::ZeroCoefficient, "affine Frobenius equation needs a, b != 0");
  const std::uint64_t q = ipow(2, m);
  auto satisfies = [&](const Elem& x) { return (pow(x, q) + a * x + b).is_zero(); };

  const Elem big_a = pow(a, q * q + q + 1);
  const Elem numerator = affine_frobenius_numerator(a, b, m);
  if (!big_a.is_one()) {
    const Elem candidate = numerator / (big_a + f.one());
    if (satisfies(candidate))
      return make_report(RootKind::Unique, {candidate}, "case (i): candidate verified");
    return make_report(RootKind::NoRoot, {}, "case (i): candidate fails substitution");
  }
  if (!numerator.is_zero())
    return make_report(RootKind::NoRoot, {}, "case (iii): A = 1, numerator != 0");

  // c0 with c0^{q-1} = a; a lies in mu_{q^2+q+1}, the image of x -> x^{q-1}.
  Elem c0;
  if (auto t = f.log(a.rep())) {
    c0 = f.gen_pow(*t / (q - 1));
  } else {
    for (Rep r = 1; r < f.size(); ++r) {
      if (f.pow(r, q - 1) == a.rep()) {
        c0 = f.elem(r);
        break;
      }
    }
  }
  const Elem base = pow(a, q * q) * pow(b, q);
  std::vector<Elem> roots{base};
  for (const Elem& lambda : subfield_elements(f, m))
    if (!lambda.is_zero()) roots.push_back(c0 * lambda + base);
  for (const Elem& x : roots)
    if (!satisfies(x)) throw std::logic_error("affine Frobenius root failed substitution");
  return make_report(RootKind::SubfieldMany, std::move(roots), "case (ii): A = 1, numerator = 0");
}

bool linearized_bijective(const Elem& a, const Elem& b, unsigned m) {
  const Field& f = same_field(a, b);
  require_char2_degree(f, 3, m);
  if (a.is_zero() || b.is_zero())
    throw Error(ErrorCode::ZeroCoefficient, "linearized polynomial needs a, b != 0");
  const std::uint64_t q = ipow(2, m);
  const Elem u = pow(a, q) / pow(b, q + 1);
  const Elem one = f.one();
  const Elem lhs = one + norm(b, m, 3 * m) * (pow(u, q * q) + pow(u, q) + u + one) + norm(a, m, 3 * m);
  return !lhs.is_zero();
}

}  // namespace permpoly
