#include "permpoly/oracle.hpp"

#include <algorithm>
#include <thread>

namespace permpoly {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBlock = std::uint64_t{1} << 14;

// images[i] = f(domain(begin + i)) for i < count.
template <typename Domain>
void evaluate_block(const FieldMap& f, const Domain& domain, std::uint64_t begin,
                    std::uint64_t count, std::vector<Elem>& images, unsigned parallelism) {
  images.resize(count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(parallelism == 0 ? 1 : parallelism, count / 256 + 1));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) images[i] = f(domain(begin + i));
    return;
  }
  std::vector<std::jthread> threads;
  const std::uint64_t slice = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * slice, hi = std::min(count, lo + slice);
    threads.emplace_back([&, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i) images[i] = f(domain(begin + i));
    });
  }
}

}  // namespace

VerifyReport is_permutation(const FieldMap& f, const Field& field, VerifyOptions options) {
  const auto start = Clock::now();
  VerifyReport report;
  report.target = "full-field";
  const std::uint64_t q = field.size();
  std::vector<bool> seen(q, false);
  std::vector<Rep> preimage(q, 0);
  std::vector<Elem> images;
  auto domain = [&](std::uint64_t i) { return Elem(field, static_cast<Rep>(i)); };

  for (std::uint64_t begin = 0; begin < q && !report.witness; begin += kBlock) {
    const std::uint64_t count = std::min(kBlock, q - begin);
    evaluate_block(f, domain, begin, count, images, options.parallelism);
    for (std::uint64_t i = 0; i < count; ++i) {
      ++report.evaluations;
      const Elem& y = images[i];
      if (y.field_ptr() != &field) throw Error(ErrorCode::CtxMismatch, "map left its field");
      if (seen[y.rep()]) {
        report.witness = Collision{Elem(field, preimage[y.rep()]), domain(begin + i), y};
        break;
      }
      seen[y.rep()] = true;
      preimage[y.rep()] = static_cast<Rep>(begin + i);
    }
  }
  report.is_permutation = !report.witness;
  report.elapsed = Clock::now() - start;
  return report;
}

VerifyReport permutes_subset(const FieldMap& f, std::span<const Elem> subset,
                             std::string subset_id, VerifyOptions options) {
  const auto start = Clock::now();
  VerifyReport report;
  report.target = std::move(subset_id);
  if (subset.empty()) {
    report.is_permutation = true;
    return report;
  }
  const Field& field = subset.front().field();
  // slot[rep]: 0 = outside the subset, 1 = member not yet hit, 2 = hit.
  std::vector<std::uint8_t> slot(field.size(), 0);
  std::vector<Rep> preimage(field.size(), 0);
  for (const Elem& x : subset) slot[x.rep()] = 1;
  std::vector<Elem> images;
  auto domain = [&](std::uint64_t i) { return subset[i]; };

  for (std::uint64_t begin = 0; begin < subset.size() && !report.witness; begin += kBlock) {
    const std::uint64_t count = std::min<std::uint64_t>(kBlock, subset.size() - begin);
    evaluate_block(f, domain, begin, count, images, options.parallelism);
    for (std::uint64_t i = 0; i < count; ++i) {
      ++report.evaluations;
      const Elem& x = subset[begin + i];
      const Elem& y = images[i];
      if (y.field_ptr() != &field) throw Error(ErrorCode::CtxMismatch, "map left its field");
      if (slot[y.rep()] == 0) {
        report.witness = Escape{x, y};
        break;
      }
      if (slot[y.rep()] == 2) {
        report.witness = Collision{Elem(field, preimage[y.rep()]), x, y};
        break;
      }
      slot[y.rep()] = 2;
      preimage[y.rep()] = x.rep();
    }
  }
  report.is_permutation = !report.witness;
  report.elapsed = Clock::now() - start;
  return report;
}

bool witness_holds(const FieldMap& f, const Witness& witness, std::span<const Elem> subset) {
  if (const auto* c = std::get_if<Collision>(&witness))
    return c->x1 != c->x2 && f(c->x1) == f(c->x2) && f(c->x1) == c->image;
  const auto& e = std::get<Escape>(witness);
  const Elem y = f(e.x);
  if (y != e.image) return false;
  if (subset.empty()) return false;
  const bool in_subset = std::find(subset.begin(), subset.end(), e.x) != subset.end();
  return in_subset && std::find(subset.begin(), subset.end(), y) == subset.end();
}

std::vector<Elem> brute_force_roots(const Field& field, const std::function<bool(const Elem&)>& pred) {
  std::vector<Elem> out;
  for (std::uint64_t r = 0; r < field.size(); ++r) {
    const Elem x(field, static_cast<Rep>(r));
    if (pred(x)) out.push_back(x);
  }
  return out;
}

std::optional<ZieveSplit> zieve_split(const SparsePoly& f, std::uint64_t d) {
  const Field& field = f.field();
  const std::uint64_t n = field.group_order();
  if (d == 0 || n % d != 0)
    throw Error(ErrorCode::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(n));
  if (f.is_zero()) return std::nullopt;
  const std::uint64_t t = n / d;
  const BigInt r = f.terms().front().exp;
  if (r == 0) return std::nullopt;
  std::vector<Term> h_terms;
  for (const Term& term : f.terms()) {
    const BigInt shifted = term.exp - r;
    if (shifted % t != 0) return std::nullopt;
    h_terms.push_back({term.coeff, shifted / t});
  }
  return ZieveSplit{r, SparsePoly(field, std::move(h_terms)), d, t};
}

ZieveVerdict zieve_criterion(const ZieveSplit& split, VerifyOptions options) {
  const Field& field = split.h.field();
  ZieveVerdict verdict;
  verdict.gcd_ok = boost::multiprecision::gcd(split.r, BigInt(split.t)) == 1;
  const auto h = std::make_shared<const CompiledPoly>(split.h);
  // r > 0, so x^r = x^{((r-1) mod n) + 1} on the whole field.
  const auto r = static_cast<std::uint64_t>((split.r - 1) % field.group_order()) + 1;
  const std::uint64_t t = split.t;
  const FieldMap reduced = [h, r, t, &field](const Elem& x) {
    return Elem(field, field.mul(field.pow(x.rep(), r), field.pow((*h)(x.rep()), t)));
  };
  const auto mu = subgroup(field, split.d);
  verdict.subset = permutes_subset(reduced, mu, "mu_" + std::to_string(split.d), options);
  return verdict;
}

}  // namespace permpoly
