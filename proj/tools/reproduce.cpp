#include "reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "permpoly/solvers.hpp"

namespace permpoly::app {

namespace {

using Clock = std::chrono::steady_clock;
using i64 = std::int64_t;

struct Instance {
  FamilyId id;
  FieldPtr field;
  ParamMap params;
  bool bijective;
};

struct Context {
  const ReproduceOptions& options;
  std::vector<Instance> instances;
};

VerifyReport verify(Context& ctx, FamilyId id, const FieldPtr& field, const ParamMap& params) {
  auto report = is_permutation(evaluator(id, *field, params), *field, {ctx.options.parallelism});
  ctx.instances.push_back({id, field, resolve_params(id, *field, params), report.is_permutation});
  return report;
}

json record(FamilyId id, const ParamMap& params, const ConditionReport& condition, const VerifyReport* oracle) {
  json r{{"family", to_string(id)},
         {"proposition", family(id).source},
         {"params", params_json(params)},
         {"condition-pass", condition.pass}};
  if (oracle) {
    r["is-permutation"] = oracle->is_permutation;
    r["witness"] = oracle->witness ? to_json(*oracle->witness) : json(nullptr);
  }
  return r;
}

std::string elems_text(const std::vector<Elem>& xs) {
  std::string out;
  for (const Elem& x : xs) out += (out.empty() ? "" : ", ") + x.field().format(x.rep());
  return "{" + out + "}";
}

std::string count_text(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

// 1: x^520 + x^65 + c x over GF(512), c in GF(8)*.
void c1(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 9);
  std::size_t total = 0, good = 0;
  bool shape = true;
  for (const Elem& c : subfield_elements(*f, 3)) {
    if (c.is_zero()) continue;
    const ParamMap p{{"m", i64{3}}, {"c", c}};
    const auto poly = build(FamilyId::F2, *f, p);
    std::vector<BigInt> exps;
    for (const Term& t : poly.terms()) exps.push_back(t.exp);
    shape = shape && exps == std::vector<BigInt>{1, 65, 520};
    const auto cond = check(FamilyId::F2, *f, p);
    const auto v = verify(ctx, FamilyId::F2, f, p);
    ++total;
    good += cond.pass && v.is_permutation;
    r.records.push_back(record(FamilyId::F2, p, cond, &v));
  }
  r.exact = shape && total == 7 && good == 7;
  r.summary = "F2 over GF(512): " + count_text(good, total) + " c in GF(8)* give bijections of x^520+x^65+cx";
}

// 2: c x + x^91 + c^16 x^1456 over GF(256), Tr_1^4(c^17) = 0.
void c2(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 8);
  std::size_t independent = 0;
  for (const Elem& c : nonzero_elements(*f)) independent += rel_trace(pow(c, 17), 1, 4).is_zero();

  std::size_t passing = 0, good = 0;
  std::vector<std::string> bad;
  enumerate(FamilyId::F3, *f, {{"m", i64{4}}}, [&](const EnumerationRow& row) {
    if (!row.condition.pass) return;
    ++passing;
    ParamMap built = row.params;
    if (ctx.options.mutation == "F3-s") built["s"] = std::get<i64>(built.at("s")) + 1;
    const auto v = verify(ctx, FamilyId::F3, f, built);
    good += v.is_permutation;
    if (!v.is_permutation && bad.size() < 3)
      bad.push_back("c=" + format_param(row.params.at("c")) + ": " + witness_text(*v.witness));
    r.records.push_back(record(FamilyId::F3, built, row.condition, &v));
  });
  r.exact = independent == 119 && passing == 119 && good == passing;
  r.summary = "F3 over GF(256): " + std::to_string(passing) + " passing c (independent count " +
              std::to_string(independent) + ", expected 119), " + count_text(good, passing) + " bijections";
  for (const auto& b : bad) r.notes.push_back("F3 non-bijection " + b);
}

// 3: the F4 condition agrees with the oracle for every b.
void c3(Context& ctx, CriterionResult& r) {
  std::size_t total = 0, disagreements = 0, passing = 0;
  std::string per_m;
  for (i64 m : {1, 2}) {
    const auto f = make_field(2, static_cast<unsigned>(2 * m));
    std::size_t m_pass = 0;
    enumerate(FamilyId::F4, *f, {{"m", m}}, [&](const EnumerationRow& row) {
      const auto v = verify(ctx, FamilyId::F4, f, row.params);
      ++total;
      m_pass += row.condition.pass;
      if (row.condition.pass != v.is_permutation) {
        ++disagreements;
        r.notes.push_back("F4 m=" + std::to_string(m) + " b=" + format_param(row.params.at("b")) +
                          " disagrees with the oracle");
      }
      r.records.push_back(record(FamilyId::F4, row.params, row.condition, &v));
    });
    passing += m_pass;
    per_m += (per_m.empty() ? "" : ", ") + ("m=" + std::to_string(m) + ": " + std::to_string(m_pass) + " passing of " +
                                           std::to_string(f->size()));
  }
  r.exact = disagreements == 0 && total == 4 + 16;
  r.summary = "F4 condition vs oracle over GF(4) and GF(16): " + std::to_string(disagreements) +
              " disagreements in " + std::to_string(total) + " b (" + per_m + ")";
}

// 4: x^25 + b x^4 over GF(64): exactly six b satisfy b^9 = 1, b^3 != 1, each a bijection.
void c4(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 6);
  std::vector<Elem> expected, passing, bijective;
  for (const Elem& b : elements(*f))
    if (pow(b, 9).is_one() && !pow(b, 3).is_one()) expected.push_back(b);
  bool one_fails = false;
  enumerate(FamilyId::F5, *f, {{"m", i64{3}}, {"r", i64{4}}, {"i", i64{3}}}, [&](const EnumerationRow& row) {
    const Elem b = std::get<Elem>(row.params.at("b"));
    const auto v = verify(ctx, FamilyId::F5, f, row.params);
    if (row.condition.pass) passing.push_back(b);
    if (v.is_permutation) bijective.push_back(b);
    if (b.is_one()) {
      one_fails = !v.is_permutation;
      r.records.push_back(record(FamilyId::F5, row.params, row.condition, &v));
    } else if (row.condition.pass) {
      r.records.push_back(record(FamilyId::F5, row.params, row.condition, &v));
    }
  });
  const bool covered = std::includes(bijective.begin(), bijective.end(), expected.begin(), expected.end());
  r.exact = expected.size() == 6 && passing == expected && covered && one_fails;
  r.summary = "F5 over GF(64): " + std::to_string(passing.size()) + " b pass the condition " + elems_text(passing) +
              " (b^9 = 1, b^3 != 1 gives " + std::to_string(expected.size()) + "), all bijective: " +
              (covered ? "yes" : "no") + "; b = 1 " + (one_fails ? "fails" : "permutes");
  r.notes.push_back(std::to_string(bijective.size()) +
                    " b in total give bijections; the condition is sufficient, not necessary (b = 0 gives x^25)");
}

// 5: x^4 (x^45 + a x^15 + delta)^17 over GF(256), delta = g.
void c5(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 8);
  std::size_t passing = 0, good = 0, zero_den = 0;
  enumerate(FamilyId::F8, *f, {{"m", i64{4}}, {"r", i64{4}}, {"s", i64{3}}, {"delta", f->generator()}},
            [&](const EnumerationRow& row) {
              if (!row.condition.clauses.back().pass &&
                  std::get<Elem>(row.condition.clauses.back().witness.front().second).is_zero())
                ++zero_den;
              if (!row.condition.pass) return;
              ++passing;
              const auto v = verify(ctx, FamilyId::F8, f, row.params);
              good += v.is_permutation;
              r.records.push_back(record(FamilyId::F8, row.params, row.condition, &v));
            });
  r.exact = passing > 0 && good == passing;
  r.summary = "F8 over GF(256), delta = g: " + count_text(good, passing) + " passing a give bijections (of 256 a)";
  r.notes.push_back(std::to_string(zero_den) + " values of a make a^17+delta^17+1 vanish; the trace clause fails for them");
}

// 6: x^4 (x^136 + a x^17 + delta)^45 over GF(256), delta = g^85.
void c6(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 8);
  const Elem delta = pow(f->generator(), 85);
  std::size_t independent = 0;
  for (const Elem& a : subfield_elements(*f, 4))
    if (!a.is_zero() && rel_trace(pow(a, 3) / delta, 1, 4).is_one()) ++independent;

  std::size_t passing = 0, good = 0;
  enumerate(FamilyId::F9, *f, {{"m", i64{4}}, {"r", i64{4}}, {"s", i64{3}}, {"delta", delta}},
            [&](const EnumerationRow& row) {
              if (!row.condition.pass) return;
              ++passing;
              const auto v = verify(ctx, FamilyId::F9, f, row.params);
              good += v.is_permutation;
              const Elem a = std::get<Elem>(row.params.at("a"));
              if (!v.is_permutation)
                r.notes.push_back("a=" + elem_text(a) + " passes but is not a bijection: " +
                                  witness_text(*v.witness) + "; Tr_1^4(a delta) = " +
                                  rel_trace(a * delta, 1, 4).to_string());
              r.records.push_back(record(FamilyId::F9, row.params, row.condition, &v));
            });
  r.exact = passing == independent && passing > 0 && good == passing;
  r.summary = "F9 over GF(256), delta = g^85: " + count_text(good, passing) +
              " a in GF(16)* with Tr_1^4(a^3/delta) = 1 give bijections";
}

// 7: x^4 (x^56 + a x^7 + 1)^219 over GF(512).
void c7(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 9);
  const std::uint64_t d = 73;
  const auto mu = subgroup(*f, d);
  std::size_t passing = 0, good = 0, subset_good = 0, extra = 0;
  enumerate(FamilyId::F10, *f, {{"m", i64{3}}, {"r", i64{4}}, {"s", i64{3}}, {"b", f->one()}},
            [&](const EnumerationRow& row) {
              const auto v = verify(ctx, FamilyId::F10, f, row.params);
              if (!row.condition.pass) {
                extra += v.is_permutation;
                return;
              }
              ++passing;
              good += v.is_permutation;
              // x^4 (x^8 + a x + 1)^{3 (2^9 - 1)} on mu_73.
              const Elem a = std::get<Elem>(row.params.at("a"));
              const FieldMap g = [&f, a](const Elem& x) {
                const Elem inner = pow(x, 8) + a * x + f->one();
                return pow(x, 4) * pow(inner, 3 * 511);
              };
              subset_good += permutes_subset(g, mu, "mu_73").is_permutation;
              r.records.push_back(record(FamilyId::F10, row.params, row.condition, &v));
            });
  r.exact = passing > 0 && good == passing && subset_good == passing;
  r.summary = "F10 over GF(512): " + count_text(good, passing) + " passing a give bijections; reduced map permutes mu_73 for " +
              count_text(subset_good, passing);
  r.notes.push_back(std::to_string(extra) + " a outside the condition also give bijections (the condition is sufficient)");
}

// 8: F11 over GF(64), b = 1, s = 3, delta = 0.
void c8(Context& ctx, CriterionResult& r) {
  const auto f = make_field(2, 6);
  const std::string_view gcd3[] = {"gcd(3, 2^m-1) = 1"};
  std::vector<Elem> passing;
  std::size_t good = 0;
  bool gcd3_fails = true;
  const ParamMap fixed{{"m", i64{2}}, {"r", i64{4}}, {"s", i64{3}}, {"b", f->one()}, {"delta", f->zero()}};
  enumerate(FamilyId::F11, *f, fixed, [&](const EnumerationRow& row) {
    if (!row.condition.pass_excluding(gcd3)) return;
    passing.push_back(std::get<Elem>(row.params.at("a")));
    gcd3_fails = gcd3_fails && !row.condition.clause(gcd3[0])->pass;
    const auto v = verify(ctx, FamilyId::F11, f, row.params);
    good += v.is_permutation;
    r.records.push_back(record(FamilyId::F11, row.params, row.condition, &v));
  });
  const Elem w = f->generator();
  std::sort(passing.begin(), passing.end(), [](const Elem& a, const Elem& b) {
    return *a.field().log(a.rep()) < *b.field().log(b.rep());
  });
  r.exact = passing == std::vector<Elem>{pow(w, 21), pow(w, 42)} && good == 2;
  r.summary = "F11 over GF(64) (r=4): passing a = " + elems_text(passing) + ", expected {g^21, g^42}; " +
              count_text(good, passing.size()) + " bijections";
  if (gcd3_fails) r.notes.push_back("the gcd(3, 2^m-1) = 1 clause fails for m = 2, as documented");
  for (const Elem& a : passing) {
    ParamMap literal = fixed;
    literal["r"] = i64{6};
    literal["a"] = a;
    const auto v = verify(ctx, FamilyId::F11, f, literal);
    r.notes.push_back("displayed x^6(x^48+x^12+ax)^63 with a=" + f->format(a.rep()) +
                      (v.is_permutation ? " permutes" : " does not permute: " + witness_text(*v.witness)) +
                      " (gcd(6, 63) = 3)");
  }
}

// 9: property suites for F1, F6, F7.
void c9(Context& ctx, CriterionResult& r) {
  std::mt19937_64 rng(9001);
  auto random_elem = [&](const Field& f) { return f.elem(static_cast<Rep>(rng() % f.size())); };
  std::size_t total = 0, good = 0, failed_condition = 0;
  auto run = [&](FamilyId id, const FieldPtr& f, const ParamMap& p) {
    const auto cond = check(id, *f, p);
    if (!cond.pass) {
      ++failed_condition;
      return;
    }
    const auto v = is_permutation(evaluator(id, *f, p), *f, {ctx.options.parallelism});
    ++total;
    good += v.is_permutation;
    if (!v.is_permutation) r.records.push_back(record(id, p, cond, &v));
  };

  std::string counts;
  for (i64 m : {1, 2, 3}) {
    const auto f = make_field(2, static_cast<unsigned>(3 * m));
    std::vector<Elem> deltas;
    if (m <= 2) deltas = elements(*f);
    else
      for (int i = 0; i < 64; ++i) deltas.push_back(random_elem(*f));
    for (const Elem& c : subfield_elements(*f, static_cast<unsigned>(m)))
      if (!c.is_zero())
        for (const Elem& delta : deltas) run(FamilyId::F1, f, {{"m", m}, {"delta", delta}, {"c", c}});
  }
  counts += "F1 " + std::to_string(total);
  const std::size_t after_f1 = total;

  auto trace_family = [&](FamilyId id, i64 q, unsigned n) {
    const ParamMap shape{{"q", q}};
    const auto f = make_family_field(id, shape);
    const unsigned e = field_shape(id, shape).k / n;
    std::vector<Elem> cs;
    for (const Elem& c : subfield_elements(*f, e))
      if (!c.is_zero()) cs.push_back(c);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Elem> coeffs;
      for (int i = 0; i < 6; ++i) coeffs.push_back(random_elem(*f));
      const SparsePoly u = SparsePoly::from_coefficients(*f, coeffs);
      const i64 power = 1 + trial % 3;
      for (int j = 0; j < 20; ++j) {
        const Elem delta = random_elem(*f);
        for (const Elem& c : cs) {
          run(id, f, {{"q", q}, {"case", std::string("i")}, {"u", u}, {"delta", delta}, {"c", c}});
          if (j < 4)
            run(id, f, {{"q", q}, {"case", std::string("ii")}, {"i", power}, {"delta", delta}, {"c", c}});
        }
      }
    }
  };
  for (i64 q : {2, 3, 4}) trace_family(FamilyId::F6, q, 3);
  const std::size_t after_f6 = total;
  for (i64 q : {2, 3}) trace_family(FamilyId::F7, q, 4);
  counts += ", F6 " + std::to_string(after_f6 - after_f1) + ", F7 " + std::to_string(total - after_f6);

  r.exact = good == total && failed_condition == 0 && total > 0;
  r.summary = "F1/F6/F7 property suites: " + count_text(good, total) + " instances bijective (" + counts + ")";
  if (failed_condition) r.notes.push_back(std::to_string(failed_condition) + " generated instances failed their condition");
}

// 10: "f_delta permutes for all delta" iff "h permutes".
void c10(Context& ctx, CriterionResult& r) {
  std::mt19937_64 rng(1010);
  std::size_t trials = 0, counterexamples = 0, h_true = 0;
  std::string per_field;
  for (unsigned n : {3u, 4u}) {
    const auto f = make_field(2, n);
    std::size_t field_trials = 0;
    for (Sign sign : {Sign::Minus, Sign::Plus})
      for (int t = 0; t < 100; ++t) {
        SparsePoly g(*f);
        if (t % 3 == 0) {
          std::vector<Elem> coeffs;
          for (int i = 0; i < 8; ++i) coeffs.push_back(f->elem(static_cast<Rep>(rng() % f->size())));
          g = SparsePoly::from_coefficients(*f, coeffs);
        } else {
          const int terms = 1 + static_cast<int>(rng() % 3);
          for (int i = 0; i < terms; ++i)
            g += SparsePoly::monomial(f->elem(static_cast<Rep>(1 + rng() % (f->size() - 1))),
                                      static_cast<unsigned>(rng() % 8));
        }
        const unsigned k = 1 + static_cast<unsigned>(rng() % (n - 1));
        std::vector<Elem> cs;
        for (const Elem& c : subfield_elements(*f, std::gcd(k, n)))
          if (!c.is_zero()) cs.push_back(c);
        const Elem c = cs[rng() % cs.size()];
        const auto pair = transform_l02(g, c, 1, k, sign);
        bool all = true;
        for (const Elem& delta : elements(*f))
          all = all && is_permutation(pair.f_delta(delta), *f, {ctx.options.parallelism}).is_permutation;
        const bool h = is_permutation(as_map(pair.h), *f).is_permutation;
        ++trials;
        ++field_trials;
        h_true += h;
        if (all != h) {
          ++counterexamples;
          r.records.push_back({{"field", f->describe()},
                               {"g", g.to_string()},
                               {"k", k},
                               {"sign", sign == Sign::Minus ? "minus" : "plus"},
                               {"all-f-delta-permute", all},
                               {"h-permutes", h}});
        }
      }
    per_field += (per_field.empty() ? "" : ", ") + f->describe() + ": " + std::to_string(field_trials);
  }
  r.exact = counterexamples == 0 && trials >= 400;
  r.summary = "F12 transforms: " + std::to_string(counterexamples) + " counterexamples in " + std::to_string(trials) +
              " random g (" + std::to_string(h_true) + " with h a permutation; " + per_field + ")";
}

// 11: solvers against brute-force root enumeration.
void c11(Context&, CriterionResult& r) {
  std::size_t compared = 0, disagreements = 0;
  auto note = [&](const std::string& what) {
    ++disagreements;
    if (r.notes.size() < 10) r.notes.push_back(what);
  };
  for (unsigned k : {3u, 4u, 6u}) {
    const auto f = make_field(2, k);
    const auto all = elements(*f);
    const auto nonzero = nonzero_elements(*f);
    for (const Elem& u : all)
      for (const Elem& v : all) {
        const auto brute = brute_force_roots(*f, [&](const Elem& x) { return (x * x + u * x + v).is_zero(); });
        ++compared;
        if (quad_char2_roots(u, v).roots != brute) note("quad " + f->describe() + " u=" + u.to_string());
      }
    if (k % 2 == 0) {
      const unsigned m = k / 2;
      const std::uint64_t Q = ipow(2, m);
      for (const Elem& a : nonzero)
        for (const Elem& b : nonzero) {
          ++compared;
          const bool hyp = rel_trace(b / (a * a), 1, k).is_zero();
          try {
            const auto report = unit_circle_quad(a, b, m);
            const auto brute = brute_force_roots(
                *f, [&](const Elem& x) { return (x * x + a * x + b).is_zero() && pow(x, Q + 1).is_one(); });
            if (!hyp || report.roots != brute) note("unit circle " + f->describe() + " a=" + a.to_string());
          } catch (const Error& e) {
            if (hyp || e.code() != ErrorCode::HypothesisUnmet) note("unit circle threw " + std::string(e.what()));
          }
        }
    }
    if (k % 3 == 0) {
      const unsigned m = k / 3;
      const std::uint64_t Q = ipow(2, m);
      for (const Elem& a : nonzero)
        for (const Elem& b : nonzero) {
          compared += 2;
          const auto affine = brute_force_roots(*f, [&](const Elem& x) { return (pow(x, Q) + a * x + b).is_zero(); });
          if (affine_frobenius_roots(a, b, m).roots != affine) note("affine " + f->describe() + " a=" + a.to_string());
          const auto kernel = brute_force_roots(
              *f, [&](const Elem& x) { return (a * x + b * pow(x, Q) + pow(x, Q * Q)).is_zero(); });
          if (linearized_bijective(a, b, m) != (kernel.size() == 1))
            note("linearized " + f->describe() + " a=" + a.to_string());
        }
    }
  }
  r.exact = disagreements == 0;
  r.summary = "solvers vs brute force over GF(8), GF(16), GF(64): " + std::to_string(disagreements) +
              " disagreements in " + std::to_string(compared) + " comparisons";
}

// 12: the multiplicative criterion agrees with the direct oracle.
void c12(Context& ctx, CriterionResult& r) {
  std::size_t compared = 0, disagreements = 0, unsplit = 0;
  std::set<std::string> families;
  for (const Instance& inst : ctx.instances) {
    const auto d = zieve_divisor(inst.id, *inst.field, inst.params);
    if (!d) continue;
    const auto split = zieve_split(build(inst.id, *inst.field, inst.params), *d);
    if (!split) {
      ++unsplit;
      continue;
    }
    const auto verdict = zieve_criterion(*split, {ctx.options.parallelism});
    ++compared;
    families.insert(std::string(to_string(inst.id)));
    if (verdict.permutes() != inst.bijective) {
      ++disagreements;
      r.records.push_back({{"family", to_string(inst.id)},
                           {"params", params_json(inst.params)},
                           {"oracle", inst.bijective},
                           {"gcd-ok", verdict.gcd_ok},
                           {"subset", to_json(verdict.subset)}});
    }
  }
  std::string fams;
  for (const auto& f : families) fams += (fams.empty() ? "" : " ") + f;
  r.exact = disagreements == 0 && compared > 0;
  r.summary = "multiplicative criterion vs oracle: " + std::to_string(disagreements) + " disagreements in " +
              std::to_string(compared) + " instances (" + fams + ")";
  if (unsplit) r.notes.push_back(std::to_string(unsplit) + " instances did not split and were skipped");
}

struct Criterion {
  int id;
  const char* title;
  double budget_ms;
  void (*run)(Context&, CriterionResult&);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {1, "Corollary 1 example over GF(512)", 1000, c1},
    {2, "Proposition 2 example over GF(256)", 5000, c2},
    {3, "Proposition 3 condition is exact", 1000, c3},
    {4, "Proposition 4 example over GF(64)", 1000, c4},
    {5, "Proposition 7 example over GF(256)", 10000, c5},
    {6, "Proposition 8 example over GF(256)", 5000, c6},
    {7, "Proposition 9 example over GF(512)", 30000, c7},
    {8, "Proposition 10 example over GF(64)", 1000, c8},
    {9, "Propositions 1, 5, 6 property suites", 60000, c9},
    {10, "Lemma 1/2 equivalence", 30000, c10},
    {11, "solver oracle equivalence", 60000, c11},
    {12, "multiplicative criterion consistency", 60000, c12},
};

CriterionResult run(const Criterion& c, Context& ctx) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  r.budget_ms = c.budget_ms;
  const auto start = Clock::now();
  c.run(ctx, r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<CriterionResult> reproduce(const ReproduceOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  auto selected = [&](int id) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };
  Context ctx{options, {}};
  std::vector<CriterionResult> results;
  for (const Criterion& c : kCriteria) {
    if (c.id == 12 && selected(12))
      for (const Criterion& pre : kCriteria)
        if (pre.id <= 8 && !selected(pre.id)) run(pre, ctx);
    if (!selected(c.id)) continue;
    results.push_back(run(c, ctx));
    if (on_result) on_result(results.back());
  }
  return results;
}

json to_json(const CriterionResult& r) {
  return {{"criterion", r.id},
          {"title", r.title},
          {"pass", r.pass()},
          {"exact", r.exact},
          {"elapsed-ms", std::round(r.elapsed_ms * 1000.0) / 1000.0},
          {"budget-ms", r.budget_ms},
          {"summary", r.summary},
          {"notes", r.notes},
          {"records", r.records}};
}

}  // namespace permpoly::app
