#include "sptlab/hecke.hpp"

#include <sstream>

#include "sptlab/forms.hpp"

namespace sptlab {

int chi12(std::int64_t n) {
  switch (mod_floor(n, 12)) {
    case 1:
    case 11: return 1;
    case 5:
    case 7: return -1;
    default: return 0;
  }
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::int64_t ell) {
  if (ell < 3 || !is_prime(ell)) {
    throw std::invalid_argument("legendre: " + std::to_string(ell) + " is not an odd prime");
  }
  const Modulus p = static_cast<Modulus>(ell);
  const Modulus r = reduce(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Index s_of(std::int64_t ell) {
  if (ell < 5 || !is_prime(ell)) {
    throw std::invalid_argument("ell must be a prime >= 5, got " + std::to_string(ell));
  }
  return (ell * ell - 1) / 24;
}

HeckeParams HeckeParams::partition(std::int64_t ell) {
  HeckeParams p;
  p.ell = ell;
  p.s = s_of(ell);
  p.u = Integer(static_cast<long>(ell * ell * ell));
  p.v = Integer(static_cast<long>(ell));
  p.w = 1;
  p.shift = 0;
  p.first = -p.s;
  return p;
}

HeckeParams HeckeParams::weighted(std::int64_t ell) {
  HeckeParams p;
  p.ell = ell;
  p.s = s_of(ell);
  p.u = 1;
  p.v = 1;
  p.w = Integer(static_cast<long>(ell));
  p.shift = -(1 + ell);
  p.first = -p.s;
  return p;
}

HeckeParams HeckeParams::spt(std::int64_t ell) {
  HeckeParams p = weighted(ell);
  p.first = 1;
  return p;
}

Series hecke_combo(const CoeffStream& f, const HeckeParams& params, Index N) {
  const std::int64_t ell = params.ell;
  const Index s = params.s;
  const Index l2 = ell * ell;
  if (f.nmax() < l2 * N - s) {
    throw ValidityError("hecke_combo: source " + to_string(f.kind) + " valid through " +
                        std::to_string(f.nmax()) + ", need " + std::to_string(l2 * N - s));
  }
  const int chi = chi12(ell);
  const Index lo = params.first;
  if (N < lo) return Series::zero(23, N, f.modulus());
  const auto len = static_cast<std::size_t>(N - lo + 1);

  auto middle_weight = [&](Index n) -> std::int64_t {
    return chi * (legendre(1 - 24 * n, ell) + params.shift);
  };
  auto division_index = [&](Index n) -> std::optional<Index> {
    if (mod_floor(n + s, l2) != 0) return std::nullopt;
    return (n + s) / l2;
  };

  if (f.modulus() == 0) {
    std::vector<Integer> g(len);
    for (Index n = lo; n <= N; ++n) {
      Integer val = params.u * f.at(l2 * n - s);
      val += params.v * f.at(n) * static_cast<long>(middle_weight(n));
      if (auto k = division_index(n)) val += params.w * f.at(*k);
      g[static_cast<std::size_t>(n - lo)] = std::move(val);
    }
    return Series::exact(23, lo, std::move(g));
  }
  const Modulus m = f.modulus();
  const Modulus u = reduce(params.u, m), v = reduce(params.v, m), w = reduce(params.w, m);
  std::vector<Modulus> g(len);
  for (Index n = lo; n <= N; ++n) {
    Modulus val = (u * f.residue_at(l2 * n - s)) % m;
    val = (val + (v * reduce(middle_weight(n), m)) % m * f.residue_at(n)) % m;
    if (auto k = division_index(n)) val = (val + w * f.residue_at(*k)) % m;
    g[static_cast<std::size_t>(n - lo)] = val;
  }
  return Series::residues(23, lo, std::move(g), m);
}

// ---------------------------------------------------------------------------
// Integer polynomials

int IntPoly::degree() const {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (sgn(c[i]) != 0) return static_cast<int>(i);
  }
  return -1;
}

std::string IntPoly::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& a = c[static_cast<std::size_t>(i)];
    if (sgn(a) == 0) continue;
    Integer mag = abs(a);
    if (!first) os << (sgn(a) < 0 ? " - " : " + ");
    else if (sgn(a) < 0) os << "-";
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Series IntPoly::evaluate(const Series& x) const {
  const int deg = degree();
  if (deg < 0) return Series::zero(0, x.valid_to(), x.modulus());
  Series acc = Series::monomial(c[static_cast<std::size_t>(deg)], 0, 0,
                                x.valid_to() - std::min<Index>(x.lo(), 0) * deg, x.modulus());
  for (int i = deg - 1; i >= 0; --i) {
    acc = mul(acc, x);
    acc = add(acc, Series::monomial(c[static_cast<std::size_t>(i)], 0, 0, acc.valid_to(),
                                    x.modulus()));
  }
  return acc;
}

namespace {

IntPoly& strip(IntPoly& p) {
  while (!p.c.empty() && sgn(p.c.back()) == 0) p.c.pop_back();
  return p;
}

}  // namespace

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return strip(r);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (std::size_t k = 0; k < b.c.size(); ++k) {
      mpz_addmul(r.c[i + k].get_mpz_t(), a.c[i].get_mpz_t(), b.c[k].get_mpz_t());
    }
  }
  return strip(r);
}

PolySeries mul(const PolySeries& a, const PolySeries& b) {
  const std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
  PolySeries r;
  r.coeffs.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    for (std::size_t i = 0; i <= k; ++i) r.coeffs[k] = r.coeffs[k] + a.coeffs[i] * b.coeffs[k - i];
  }
  return r;
}

PolySeries invert(const PolySeries& a) {
  if (a.coeffs.empty() || a.coeffs[0].degree() != 0 || a.coeffs[0].c[0] != 1) {
    throw NonUnitError("PolySeries invert: constant coefficient must be 1");
  }
  PolySeries r;
  r.coeffs.resize(a.coeffs.size());
  r.coeffs[0] = IntPoly{{1}};
  const IntPoly minus_one{{-1}};
  for (std::size_t k = 1; k < a.coeffs.size(); ++k) {
    IntPoly acc;
    for (std::size_t i = 1; i <= k; ++i) acc = acc + a.coeffs[i] * r.coeffs[k - i];
    r.coeffs[k] = acc * minus_one;
  }
  return r;
}

PolySeries ono_poly_A(Index m_max, Index N) {
  if (m_max < 0) throw std::invalid_argument("ono_poly_A: m_max must be nonnegative");
  if (N < 0) N = m_max;
  if (N < m_max) throw std::invalid_argument("ono_poly_A: N must be >= m_max");
  N = std::max<Index>(N, 1);

  const Series e = euler_product(N);
  const Series front = mul(e, shift(e14_over_delta(N - 1), 1));  // E(q) q E4^2 E6 / Delta
  const Series qj = shift(delta_j(N - 1).j, 1);                   // q j = 1 + 744 q + ...

  auto as_poly_series = [&](const Series& s) {
    PolySeries ps;
    for (Index m = 0; m <= N; ++m) ps.coeffs.push_back(IntPoly{{s.coeff(m)}});
    return ps;
  };
  PolySeries qj_minus_x = as_poly_series(qj);  // q (j - x)
  if (N >= 1) qj_minus_x.coeffs[1] = qj_minus_x.coeffs[1] + IntPoly{{0, -1}};
  PolySeries a = mul(as_poly_series(front), invert(qj_minus_x));
  a.coeffs.resize(static_cast<std::size_t>(m_max + 1));
  return a;
}

IntPoly c_ell(std::int64_t ell) {
  const Index s = s_of(ell);
  IntPoly a = ono_poly_A(s).coeffs.at(static_cast<std::size_t>(s));
  return a + IntPoly{{Integer(static_cast<long>(ell * chi12(ell)))}};
}

// ---------------------------------------------------------------------------
// Level-one identities

namespace {

std::string ell_params(std::int64_t ell, Index N) {
  return "ell=" + std::to_string(ell) + " nmax=" + std::to_string(N);
}

}  // namespace

CongruenceReport verify_zell(std::int64_t ell, Index N, const CoeffStream& p) {
  const Index s = s_of(ell);
  ReportTimer timer("zell", "Z_ell(z) eta(z) = C_ell(j(z))", ell_params(ell, N));
  const Series z = hecke_combo(p, HeckeParams::partition(ell), N);
  const Series lhs = mul(z, eta_pow(1, N + s + 1));
  const Series rhs = c_ell(ell).evaluate(delta_j(N + s + 1).j);
  compare_into(timer.report(), lhs, rhs, -s, N);
  return timer.finish();
}

CongruenceReport verify_zell(std::int64_t ell, Index N) {
  return verify_zell(ell, N, partition_stream(ell * ell * N));
}

CongruenceReport verify_xi(std::int64_t ell, Index N, const CoeffStream& d) {
  const Index s = s_of(ell);
  ReportTimer timer("xi",
                    "ell Xi_ell eta Delta^s = -sum c_n E4^(3n-1) Delta^(s-n) (24n E6 + E4 E2) "
                    "+ chi12(ell) ell (1+ell) E2 Delta^s",
                    ell_params(ell, N));
  const Index M = N + s + 2;
  const Series e2 = eisenstein(2, M), e4 = eisenstein(4, M), e6 = eisenstein(6, M);
  const Series delta = eta_pow(24, M);
  const Series xi = hecke_combo(d, HeckeParams::weighted(ell), N);
  const Series lhs = scale(mul(mul(xi, eta_pow(1, M)), pow(delta, s)), static_cast<long>(ell));

  const IntPoly c = c_ell(ell);
  const Series e4e2 = mul(e4, e2);
  Series rhs = scale(mul(e2, pow(delta, s)), static_cast<long>(chi12(ell) * ell * (1 + ell)));
  for (Index n = 0; n <= s; ++n) {
    const Integer& cn = c.c[static_cast<std::size_t>(n)];
    if (sgn(cn) == 0) continue;
    Series bracket = add(e6, e4e2, 24 * static_cast<long>(n), 1);
    Series term = mul(mul(pow(e4, 3 * n - 1), pow(delta, s - n)), bracket);
    rhs = add(rhs, term, 1, -cn);
  }
  if (auto lead = rhs.leading_index(); lead && *lead < 0) {
    throw std::logic_error("verify_xi: right-hand side has a polar term");
  }
  compare_into(timer.report(), lhs, rhs, 0, N);
  return timer.finish();
}

CongruenceReport verify_xi(std::int64_t ell, Index N) {
  return verify_xi(ell, N, d_stream(partition_stream(ell * ell * N)));
}

Series level1_basis_element(Index n, Index s, Index N, Modulus m) {
  const Index M = N + s + 2;
  const Series e4 = eisenstein(4, M, m), e6 = eisenstein(6, M, m);
  const Series delta = eta_pow(24, M, m);
  return mul(mul(pow(e4, 3 * n - 1), e6), pow(delta, s - n)).truncated(N);
}

Level1Decomposition decompose_level1(const Series& F_in, Index s) {
  if (F_in.frac24() != 0) throw GridMismatch("decompose_level1: F must be on the integer grid");
  if (s < 1) throw std::invalid_argument("decompose_level1: s must be positive");
  const Series F = F_in.trimmed();
  if (F.size() > 0 && F.lo() < 0) {
    throw std::domain_error("decompose_level1: F has a polar term at q^" + std::to_string(F.lo()));
  }
  const Index N = F.valid_to();
  if (N < 2 * s) {
    throw ValidityError("decompose_level1: F must be valid through q^" + std::to_string(2 * s));
  }
  Level1Decomposition out;
  out.s = s;
  out.b.assign(static_cast<std::size_t>(s), 0);
  Series residual = F;
  for (Index k = 0; k < s; ++k) {
    const Index n = s - k;  // basis element with leading term q^k
    Integer b = residual.coeff(k);
    if (F.modulus() != 0 && b > 0) {
      // keep the symmetric representative for readability
      if (2 * b > Integer(static_cast<unsigned long>(F.modulus()))) b -= static_cast<unsigned long>(F.modulus());
    }
    out.b[static_cast<std::size_t>(n - 1)] = b;
    if (sgn(b) != 0) {
      residual = add(residual, level1_basis_element(n, s, N, F.modulus()), 1, -b);
    }
  }
  if (auto lead = residual.leading_index()) {
    throw std::domain_error("decompose_level1: residual nonzero at q^" + std::to_string(*lead) +
                            "; F is not in the span");
  }
  return out;
}

Series a_ell_cleared(std::int64_t ell, Index N, const CoeffStream& a) {
  const Index s = s_of(ell);
  const Series A = hecke_combo(a, HeckeParams::weighted(ell), N - s);
  const Series eta = eta_pow(1, N + 1, a.modulus());
  const Series delta_s = pow(eta_pow(24, N + 2, a.modulus()), s);
  return mul(mul(A, eta), delta_s).truncated(N);
}

CongruenceReport verify_mell_cong(std::int64_t ell, Index N, const CoeffStream& a_mod_ell) {
  const Index s = s_of(ell);
  ReportTimer timer("mell", "A_ell(z) = 0 (mod ell) coefficientwise", ell_params(ell, N));
  const Modulus m = static_cast<Modulus>(ell);
  const CoeffStream a = a_mod_ell.modulus() == m ? a_mod_ell : a_mod_ell.reduced(m);
  const Series A = hecke_combo(a, HeckeParams::weighted(ell), N);
  compare_into(timer.report(), A, Series::zero(23, N, m), -s, N, m);
  return timer.finish();
}

CongruenceReport verify_mell_cong(std::int64_t ell, Index N) {
  const Modulus m = static_cast<Modulus>(ell);
  const Index need = ell * ell * N;
  return verify_mell_cong(ell, N,
                          weighted_streams(partition_stream(need, m), spt_stream(need, m)).a);
}

}  // namespace sptlab
