#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// binary. Each suite runs a fixed number of cases from a seeded generator and
// reports the first case that broke.

#include <functional>
#include <map>
#include <random>
#include <string>

#include "sptlab/forms.hpp"
#include "sptlab/gamma0.hpp"
#include "sptlab/hecke.hpp"
#include "sptlab/series.hpp"

namespace props {

using namespace sptlab;

inline constexpr int kCases = 50;

struct Outcome {
  int cases = 0;
  int failed = 0;
  std::string first;  // description of the first failing case
  bool ok() const { return failed == 0 && cases > 0; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return range(0, 1) == 1; }

  Series exact(int frac24, Index lo, Index len, long bound = 20) {
    Series::ExactCoeffs c;
    for (Index i = 0; i < len; ++i) c.push_back(Integer(range(-bound, bound)));
    return Series::exact(frac24, lo, std::move(c));
  }
  Series any_exact(Index max_len = 12) {
    return exact(frac(), range(-3, 3), range(1, max_len));
  }
  // Lowest coefficient +-1, so the series is a unit.
  Series unit(int frac24, Index len) {
    Series s = exact(frac24, range(-3, 3), len);
    auto c = s.exact_coeffs();
    c[0] = coin() ? 1 : -1;
    return Series::exact(frac24, s.lo(), std::move(c));
  }
  int frac() {
    static const int tags[] = {0, 0, 1, 23, 12, 5};
    return tags[range(0, 5)];
  }
  Modulus modulus() {
    static const Modulus ms[] = {72, 125, 32760, 15625, 2401};
    return ms[range(0, 4)];
  }

 private:
  std::mt19937_64 rng_;
};

// Coefficientwise reference product over 24ths exponents.
inline std::map<Index, Integer> naive_product(const Series& a, const Series& b) {
  std::map<Index, Integer> out;
  for (Index i = a.lo(); i <= a.valid_to(); ++i)
    for (Index k = b.lo(); k <= b.valid_to(); ++k)
      out[exponent24(i, a.frac24()) + exponent24(k, b.frac24())] += a.coeff(i) * b.coeff(k);
  return out;
}

inline bool agree(const Series& a, const Series& b, Index to) {
  const Index from = std::min(a.lo(), b.lo());
  return !first_mismatch(a, b, from, to);
}

inline bool is_one(const Series& s) {
  if (s.frac24() != 0) return false;
  for (Index n = s.lo(); n <= s.valid_to(); ++n)
    if (s.coeff(n) != (n == 0 ? 1 : 0)) return false;
  return s.valid_to() >= 0;
}

inline Outcome run(std::uint64_t seed, const std::function<std::string(Gen&)>& one_case) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < kCases; ++i) {
    ++o.cases;
    std::string why;
    try {
      why = one_case(g);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (!why.empty()) {
      if (o.failed++ == 0) o.first = "case " + std::to_string(i) + ": " + why;
    }
  }
  return o;
}

// (a+b)c = ac + bc, ab = ba, and the product against a schoolbook oracle.
inline Outcome ring_laws(std::uint64_t seed = 1) {
  return run(seed, [](Gen& g) -> std::string {
    const int f = g.frac();
    const Index lo = g.range(-2, 2);
    Series a = g.exact(f, lo, g.range(1, 12));
    Series b = g.exact(f, lo + g.range(-1, 1), g.range(1, 12));
    Series c = g.any_exact();
    Series lhs = (a + b) * c, rhs = a * c + b * c;
    const Index to = std::min(lhs.valid_to(), rhs.valid_to());
    if (!agree(lhs, rhs, to)) return "distributivity";
    Series ab = a * c, ba = c * a;
    if (ab.valid_to() != ba.valid_to() || !agree(ab, ba, ab.valid_to())) return "commutativity";
    auto ref = naive_product(a, c);
    for (Index n = ab.lo(); n <= ab.valid_to(); ++n) {
      auto it = ref.find(exponent24(n, ab.frac24()));
      const Integer want = it == ref.end() ? Integer(0) : it->second;
      if (ab.coeff(n) != want) return "product differs from the schoolbook oracle";
    }
    return {};
  });
}

// a * invert(a) = invert(a) * a = 1, exact and modular.
inline Outcome inverse_round_trip(std::uint64_t seed = 2) {
  return run(seed, [](Gen& g) -> std::string {
    Series a = g.unit(g.frac(), g.range(1, 15));
    if (g.coin()) a = reduce_mod(a, g.modulus());
    Series ia = invert(a);
    if (!is_one(a * ia) || !is_one(ia * a)) return "a * invert(a) is not 1 " + a.describe();
    if (ia.valid_to() - ia.lo() != a.valid_to() - a.lo()) return "relative precision changed";
    return {};
  });
}

inline Outcome dilate_homomorphism(std::uint64_t seed = 3) {
  return run(seed, [](Gen& g) -> std::string {
    Series a = g.any_exact(), b = g.any_exact();
    const std::int64_t t = g.range(1, 7);
    Series lhs = dilate(a * b, t), rhs = dilate(a, t) * dilate(b, t);
    const Index to = std::min(lhs.valid_to(), rhs.valid_to());
    if (!agree(lhs, rhs, to)) return "dilate(ab) != dilate(a) dilate(b), t=" + std::to_string(t);
    Series s = g.exact(a.frac24(), a.lo(), a.size());
    Series l2 = dilate(a + s, t), r2 = dilate(a, t) + dilate(s, t);
    if (!agree(l2, r2, std::min(l2.valid_to(), r2.valid_to()))) return "dilate is not additive";
    return {};
  });
}

inline Outcome leibniz(std::uint64_t seed = 4) {
  return run(seed, [](Gen& g) -> std::string {
    Series a = g.exact(0, g.range(-3, 3), g.range(1, 12));
    Series b = g.exact(0, g.range(-3, 3), g.range(1, 12));
    Series lhs = qderiv(a * b), rhs = qderiv(a) * b + a * qderiv(b);
    const Index to = std::min(lhs.valid_to(), rhs.valid_to());
    if (!agree(lhs, rhs, to)) return "qderiv(ab) != a' b + a b'";
    return {};
  });
}

// reduce(a o b) = reduce(a) o reduce(b) for +, *, and pow.
inline Outcome reduce_mod_homomorphism(std::uint64_t seed = 5) {
  return run(seed, [](Gen& g) -> std::string {
    const int f = g.frac();
    const Index lo = g.range(-2, 2);
    Series a = g.exact(f, lo, g.range(1, 12), 100000);
    Series b = g.exact(f, lo, g.range(1, 12), 100000);
    const Modulus m = g.modulus();
    // a modular operand may know more (leading terms can vanish mod m), so
    // compare on the shared range
    auto same = [](const Series& x, const Series& y) {
      const Index to = std::min(x.valid_to(), y.valid_to());
      return to >= std::min(x.lo(), y.lo()) && agree(x, y, to);
    };
    if (!same(reduce_mod(a + b, m), reduce_mod(a, m) + reduce_mod(b, m))) return "sum";
    if (!same(reduce_mod(a * b, m), reduce_mod(a, m) * reduce_mod(b, m))) return "product";
    const std::int64_t k = g.range(0, 4);
    if (!same(reduce_mod(pow(a, k), m), pow(reduce_mod(a, m), k))) return "pow";
    return {};
  });
}

// Applying an operation to a truncation never claims more than the full
// input supports.
inline Outcome validity_not_overstated(std::uint64_t seed = 6) {
  return run(seed, [](Gen& g) -> std::string {
    const Index lo = g.range(-3, 3);
    Series full_a = g.unit(0, 40), full_b = g.exact(0, g.range(-3, 3), 40);
    full_a = Series::exact(0, lo, full_a.exact_coeffs());
    Series a = full_a.truncated(lo + g.range(0, 10));
    Series b = full_b.truncated(full_b.lo() + g.range(0, 10));
    const std::int64_t t = g.range(2, 5), k = g.range(-2, 3);
    const std::pair<Series, Series> cases[] = {
        {a * b, full_a * full_b},
        {invert(a), invert(full_a)},
        {pow(a, k), pow(full_a, k)},
        {dilate(a, t), dilate(full_a, t)},
        {qderiv(a), qderiv(full_a)},
        {divide_one_minus_qm(a, t), divide_one_minus_qm(full_a, t)},
    };
    int i = 0;
    for (const auto& [small, big] : cases) {
      if (small.valid_to() > big.valid_to()) return "op " + std::to_string(i) + " extends validity";
      if (!agree(small, big, small.valid_to())) return "op " + std::to_string(i) + " wrong within validity";
      ++i;
    }
    const Index r = g.range(0, t - 1);
    Series es = extract(a, t, r), eb = extract(full_a, t, r);
    if (es.valid_to() > eb.valid_to() || !agree(es, eb, es.valid_to())) return "extract";
    return {};
  });
}

// Random integer combinations of E4^{3n-1} E6 Delta^{s-n} decompose back.
inline Outcome level1_round_trip(std::uint64_t seed = 7) {
  return run(seed, [](Gen& g) -> std::string {
    const Index s = g.range(1, 5), N = 2 * s + g.range(0, 6);
    std::vector<Integer> b;
    Series F = Series::zero(0, N);
    for (Index n = 1; n <= s; ++n) {
      b.emplace_back(g.range(-100000, 100000));
      F = F + scale(level1_basis_element(n, s, N), b.back());
    }
    auto d = decompose_level1(F, s);
    if (d.b != b) return "coordinates differ, s=" + std::to_string(s);
    return {};
  });
}

// Random sum d_a E_{2,t} G_t^a / eta decomposes back to d.
inline Outcome gamma0_round_trip(std::uint64_t seed = 8) {
  return run(seed, [](Gen& g) -> std::string {
    static const int levels[] = {5, 7, 13};
    const int t = levels[g.range(0, 2)];
    const Index s = g.range(1, 2);
    const Index N = t * s + s + g.range(5, 15);
    GPoly K(t);
    std::vector<Integer> d;
    for (Index a = -t * s; a <= s; ++a) {
      d.emplace_back(g.coin() ? g.range(-50, 50) : 0);
      if (d.back() != 0) K.set(a, Rational(d.back()));
    }
    Series F = (e2t(t, N + t * s + 2) * K.evaluate(N + t * s + 2)).truncated(N) * eta_pow(-1, N);
    Gamma0Basis got = decompose_gamma0(F, t, s);
    if (got.d != d) return "coordinates differ, t=" + std::to_string(t);
    return {};
  });
}

}  // namespace props
