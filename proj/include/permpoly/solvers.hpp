#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "permpoly/field.hpp"

namespace permpoly {

enum class RootKind { NoRoot, Unique, TwoRoots, SubfieldMany };

std::string_view to_string(RootKind kind);

/// Root set of one equation, with the branch of the decision procedure that
/// produced it. Roots are sorted by rep and each one has been substituted
/// back into the source equation.
struct RootReport {
  RootKind kind = RootKind::NoRoot;
  std::vector<Elem> roots;
  std::string certificate;
};

/// x^2 + u x + v = 0 over GF(2^k). Two roots iff Tr(v/u^2) = 0.
/// u = 0 is the degenerate square-root case and yields the unique root
/// v^{2^{k-1}}.
RootReport quad_char2_roots(const Elem& u, const Elem& v);

/// x^2 + a x + b = 0 over GF(2^{2m}), restricted to the unit circle
/// mu_{2^m+1}. The classification uses the closed-form membership tests:
///   both roots:  b = a^{1-2^m} and Tr_1^m(b/a^2) = Tr_1^m(a^{-(2^m+1)}) = 1
///   one root:    b != a^{1-2^m} and
///                (1+b^{Q+1})(1+a^{Q+1}+b^{Q+1}) + a^2 b^Q + a^{2Q} b = 0
/// with Q = 2^m. Requires a, b != 0 and Tr_1^{2m}(b/a^2) = 0, otherwise
/// throws HypothesisUnmet.
RootReport unit_circle_quad(const Elem& a, const Elem& b, unsigned m);

/// x^{2^m} + a x + b = 0 over GF(2^{3m}) with a, b != 0.
///
/// With A = a^{Q^2+Q+1} and B = a^{Q^2} b^Q + a^{Q^2+Q} b + b^{Q^2}:
///  - A != 1: the only candidate is B / (A + 1); it is substituted back and
///    may fail, giving NoRoot.
///  - A = 1, B = 0: exactly Q roots, a^{Q^2} b^Q plus c + a^{Q^2} b^Q for the
///    Q - 1 solutions of c^{Q-1} = a.
///  - A = 1, B != 0: no root.
RootReport affine_frobenius_roots(const Elem& a, const Elem& b, unsigned m);

/// Numerator B above; shared with the family condition that needs it.
Elem affine_frobenius_numerator(const Elem& a, const Elem& b, unsigned m);

/// True iff L(x) = a x + b x^q + x^{q^2} has only the root 0 in GF(q^3),
/// q = 2^m, decided by 1 + N(b)(u^{q^2} + u^q + u + 1) + N(a) != 0 with
/// u = a^q / b^{q+1} and N the norm to GF(q). Throws ZeroCoefficient when
/// a or b is zero.
bool linearized_bijective(const Elem& a, const Elem& b, unsigned m);

}  // namespace permpoly
