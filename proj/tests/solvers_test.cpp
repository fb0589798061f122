#include <doctest.h>

#include <random>

#include "permpoly/oracle.hpp"
#include "permpoly/solvers.hpp"

using namespace permpoly;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::NotPrime;
}

std::vector<Elem> quad_brute(const Elem& u, const Elem& v) {
  return brute_force_roots(u.field(), [&](const Elem& x) { return (x * x + u * x + v).is_zero(); });
}

std::vector<Elem> circle_brute(const Elem& a, const Elem& b, unsigned m) {
  const std::uint64_t q = ipow(2, m);
  return brute_force_roots(a.field(), [&](const Elem& x) {
    return (x * x + a * x + b).is_zero() && pow(x, q + 1).is_one();
  });
}

std::vector<Elem> affine_brute(const Elem& a, const Elem& b, unsigned m) {
  const std::uint64_t q = ipow(2, m);
  return brute_force_roots(a.field(), [&](const Elem& x) { return (pow(x, q) + a * x + b).is_zero(); });
}

std::size_t linearized_kernel(const Elem& a, const Elem& b, unsigned m) {
  const std::uint64_t q = ipow(2, m);
  return brute_force_roots(a.field(), [&](const Elem& x) {
           return (a * x + b * pow(x, q) + pow(x, q * q)).is_zero();
         }).size();
}

}  // namespace

TEST_CASE("quad_char2_roots examples") {
  auto gf4 = make_field(2, 2);
  const auto r4 = quad_char2_roots(gf4->one(), gf4->one());
  CHECK(r4.kind == RootKind::TwoRoots);
  const Elem w = gf4->generator();
  CHECK(r4.roots == std::vector<Elem>{w, w * w});

  auto gf2 = make_field(2, 1);
  CHECK(quad_char2_roots(gf2->one(), gf2->one()).kind == RootKind::NoRoot);

  auto gf8 = make_field(2, 3);
  CHECK(rel_trace(gf8->one(), 1, 3).is_one());
  const auto r8 = quad_char2_roots(gf8->one(), gf8->one());
  CHECK(r8.kind == RootKind::NoRoot);
  CHECK(r8.certificate == "Tr(v/u^2) = 1");

  const auto degenerate = quad_char2_roots(gf8->zero(), gf8->generator());
  CHECK(degenerate.kind == RootKind::Unique);
  CHECK(degenerate.roots.front() * degenerate.roots.front() == gf8->generator());
  CHECK(degenerate.certificate.starts_with("degenerate"));

  auto gf9 = make_field(3, 2);
  CHECK_THROWS_AS(quad_char2_roots(gf9->one(), gf9->one()), Error);
  CHECK(error_of([&] { quad_char2_roots(gf8->one(), gf4->one()); }) == ErrorCode::CtxMismatch);
}

TEST_CASE("quad_char2_roots matches brute force") {
  for (unsigned k : {1u, 2u, 3u, 4u, 5u, 6u}) {
    auto f = make_field(2, k);
    for (const Elem& u : elements(*f))
      for (const Elem& v : elements(*f)) REQUIRE(quad_char2_roots(u, v).roots == quad_brute(u, v));
  }
  std::mt19937_64 rng(1);
  for (unsigned k : {9u, 12u}) {
    auto f = make_field(2, k);
    for (int i = 0; i < 10000; ++i) {
      const Elem u = f->elem(static_cast<Rep>(rng() % f->size()));
      const Elem v = f->elem(static_cast<Rep>(rng() % f->size()));
      const auto report = quad_char2_roots(u, v);
      for (const Elem& x : report.roots) REQUIRE((x * x + u * x + v).is_zero());
      if (i % 50 == 0) REQUIRE(report.roots == quad_brute(u, v));
    }
  }
}

TEST_CASE("unit_circle_quad examples") {
  auto gf16 = make_field(2, 4);
  const Elem one = gf16->one();
  const auto r = unit_circle_quad(one, one, 2);
  CHECK(r.kind == RootKind::NoRoot);
  CHECK(r.roots == circle_brute(one, one, 2));
  CHECK(quad_char2_roots(one, one).roots.size() == 2);  // the roots exist, off the circle

  // z^2 + c^{-q} z + c^{1-q} with Tr_1^m(c^{q+1}) = 0 over GF(q^2), q = 16.
  auto gf256 = make_field(2, 8);
  int checked = 0;
  for (const Elem& c : nonzero_elements(*gf256)) {
    if (!rel_trace(pow(c, 17), 1, 4).is_zero()) continue;
    const auto report = unit_circle_quad(pow(c, 16).inverse(), c / pow(c, 16), 4);
    REQUIRE(report.kind == RootKind::NoRoot);
    ++checked;
  }
  CHECK(checked == 119);

  for (const Elem& a : nonzero_elements(*gf16))
    for (const Elem& b : nonzero_elements(*gf16))
      if (!rel_trace(b / (a * a), 1, 4).is_zero())
        REQUIRE(error_of([&] { unit_circle_quad(a, b, 2); }) == ErrorCode::HypothesisUnmet);
  CHECK(error_of([&] { unit_circle_quad(gf16->zero(), one, 2); }) == ErrorCode::HypothesisUnmet);
  CHECK(error_of([&] { unit_circle_quad(one, one, 3); }) == ErrorCode::DegreeMismatch);
}

TEST_CASE("unit_circle_quad matches brute force") {
  for (unsigned m : {1u, 2u, 3u}) {
    auto f = make_field(2, 2 * m);
    int hits[3] = {0, 0, 0};
    for (const Elem& a : nonzero_elements(*f))
      for (const Elem& b : nonzero_elements(*f)) {
        if (!rel_trace(b / (a * a), 1, 2 * m).is_zero()) continue;
        const auto report = unit_circle_quad(a, b, m);
        REQUIRE(report.roots == circle_brute(a, b, m));
        for (const Elem& x : report.roots) REQUIRE(pow(x, ipow(2, m) + 1).is_one());
        ++hits[report.roots.size()];
      }
    if (m > 1) {
      CHECK(hits[1] > 0);
      CHECK(hits[2] > 0);
    }
  }
}

TEST_CASE("affine_frobenius_roots examples") {
  auto gf8 = make_field(2, 3);
  const Elem one = gf8->one();
  // a = 1, b = 1: A = 1 and the numerator is 1 + 1 + 1 = 1, so case (iii).
  const auto r = affine_frobenius_roots(one, one, 1);
  CHECK(r.kind == RootKind::NoRoot);
  CHECK(r.certificate.starts_with("case (iii)"));
  CHECK(affine_brute(one, one, 1).empty());

  // a = 1 with numerator b^2 + b + b^4 = 0: exactly two roots.
  int many = 0;
  for (const Elem& b : nonzero_elements(*gf8)) {
    if (!affine_frobenius_numerator(one, b, 1).is_zero()) continue;
    const auto report = affine_frobenius_roots(one, b, 1);
    CHECK(report.kind == RootKind::SubfieldMany);
    CHECK(report.roots.size() == 2);
    CHECK(report.roots == affine_brute(one, b, 1));
    ++many;
  }
  CHECK(many > 0);
  CHECK(error_of([&] { affine_frobenius_roots(gf8->zero(), one, 1); }) == ErrorCode::ZeroCoefficient);

  auto gf64 = make_field(2, 6);
  std::mt19937_64 rng(4);
  int case_one = 0;
  while (case_one < 200) {
    const Elem a = gf64->elem(static_cast<Rep>(1 + rng() % 63));
    const Elem b = gf64->elem(static_cast<Rep>(1 + rng() % 63));
    if (pow(a, 21).is_one()) continue;
    const auto report = affine_frobenius_roots(a, b, 2);
    REQUIRE(report.roots.size() <= 1);
    REQUIRE(report.roots == affine_brute(a, b, 2));
    ++case_one;
  }
}

TEST_CASE("affine_frobenius_roots matches brute force with lemma counts") {
  for (unsigned m : {1u, 2u}) {
    auto f = make_field(2, 3 * m);
    const std::uint64_t q = ipow(2, m);
    for (const Elem& a : nonzero_elements(*f))
      for (const Elem& b : nonzero_elements(*f)) {
        const auto report = affine_frobenius_roots(a, b, m);
        REQUIRE(report.roots == affine_brute(a, b, m));
        if (!pow(a, q * q + q + 1).is_one()) REQUIRE(report.roots.size() <= 1);
        if (report.kind == RootKind::SubfieldMany) REQUIRE(report.roots.size() == q);
      }
  }
  auto f = make_field(2, 9);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const Elem a = f->elem(static_cast<Rep>(1 + rng() % 511));
    const Elem b = f->elem(static_cast<Rep>(1 + rng() % 511));
    const auto report = affine_frobenius_roots(a, b, 3);
    for (const Elem& x : report.roots) REQUIRE((pow(x, 8) + a * x + b).is_zero());
    if (i % 100 == 0) REQUIRE(report.roots == affine_brute(a, b, 3));
  }
}

TEST_CASE("linearized_bijective examples") {
  auto gf8 = make_field(2, 3);
  const Elem one = gf8->one();
  CHECK_FALSE(linearized_bijective(one, one, 1));
  CHECK(linearized_kernel(one, one, 1) == 4);

  auto gf64 = make_field(2, 6);
  const Elem a = pow(gf64->generator(), 21);
  CHECK(linearized_bijective(a, gf64->one(), 2));
  CHECK(linearized_bijective(a * a, gf64->one(), 2));
  CHECK_FALSE(linearized_bijective(gf64->one(), gf64->one(), 2));
  CHECK(error_of([&] { linearized_bijective(gf64->zero(), gf64->one(), 2); }) ==
        ErrorCode::ZeroCoefficient);
}

TEST_CASE("linearized_bijective matches kernel enumeration") {
  for (unsigned m : {1u, 2u}) {
    auto f = make_field(2, 3 * m);
    for (const Elem& a : nonzero_elements(*f))
      for (const Elem& b : nonzero_elements(*f))
        REQUIRE(linearized_bijective(a, b, m) == (linearized_kernel(a, b, m) == 1));
  }
  auto f = make_field(2, 9);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const Elem a = f->elem(static_cast<Rep>(1 + rng() % 511));
    const Elem b = f->elem(static_cast<Rep>(1 + rng() % 511));
    REQUIRE(linearized_bijective(a, b, 3) == (linearized_kernel(a, b, 3) == 1));
  }
}
