#pragma once

// Level-t objects for t in {5, 7, 13}: the Hauptmodul G_t, the weight-2
// Eisenstein form E_{2,t}, Phi_t = eta(z)/eta(t^2 z), Laurent polynomials in
// G_t, and the weight-2 analogue of Atkin's construction built from them.

#include <map>
#include <string>
#include <vector>

#include "sptlab/partitions.hpp"
#include "sptlab/report.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

using Rational = mpq_class;

/// Throws unless t is 5, 7 or 13.
void require_level(int t);

/// 24 / (t - 1): the eta exponent of the Hauptmodul.
int hauptmodul_exponent(int t);

/// c with t^c the modulus of the Atkin-type congruences: 6, 4, 2 for t = 5, 7, 13.
int atkin_power(int t);

/// (t^2 - 1) / 24.
Index s_level(int t);

/// G_t = q^{-1} E(q)^e / E(q^t)^e, e = 24/(t-1), valid through q^N.
Series hauptmodul(int t, Index N, Modulus m = 0);

/// E_{2,t} = (t E2(q^t) - E2(q)) / (t - 1).
Series e2t(int t, Index N, Modulus m = 0);

/// Phi_t = q^{-s_t} E(q) / E(q^{t^2}).
Series phi_t(int t, Index N, Modulus m = 0);

/// Finitely supported Laurent polynomial sum k_j G_t^j with rational k_j.
class GPoly {
 public:
  GPoly() = default;
  explicit GPoly(int t) : t_(t) { require_level(t); }
  static GPoly monomial(int t, std::int64_t j, const Rational& k = 1);
  static GPoly constant(int t, const Rational& k) { return monomial(t, 0, k); }

  int level() const { return t_; }
  const std::map<std::int64_t, Rational>& terms() const { return terms_; }
  Rational coeff(std::int64_t j) const;
  void set(std::int64_t j, const Rational& k);
  bool empty() const { return terms_.empty(); }
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;
  bool is_integral() const;

  /// sum k_j G_t^j valid through q^N. Non-integral coefficients are mapped to
  /// residues when m > 0 (denominators must be units) and rejected when exact.
  Series evaluate(Index N, Modulus m = 0) const;

  std::string to_string() const;
  bool operator==(const GPoly&) const = default;

  GPoly& operator+=(const GPoly& other);

 private:
  int t_ = 5;
  std::map<std::int64_t, Rational> terms_;
};

/// K* = K | W_t on G_t-monomials: G^j -> t^{12j/(t-1)} G^{-j}.
GPoly gpoly_fricke(const GPoly& K);

/// beta_t(n): E_{2,t} K / eta = sum beta_t(n) q^{n - 1/24}.
struct BetaStream {
  int t = 5;
  GPoly K;
  Series values;  // grid q^{n - 1/24}, index n

  Integer at(Index n) const { return values.coeff(n); }
};

BetaStream beta_stream(int t, const GPoly& K, Index N, Modulus m = 0);

/// S(z) = E_{2,t}(tz) K*(tz) Phi_t(z)
///        - chi12(t) eta(z) sum (1-24n | t) beta_t(n) q^{n - 1/24},
/// integer grid, through q^N. K must have support in exponents >= 0.
Series s_form(int t, const GPoly& K, Index N);

/// Psi_{t,K} = E_{2,t}(tz) K*(tz) / eta(t^2 z)
///             - chi12(t) sum (1-24n | t) beta_t(n) q^{n - 1/24}
///             - sum beta_t(t^2 n - s_t) q^{n - 1/24},
/// on the q^{n - 1/24} grid through q^N.
Series psi_form(int t, const GPoly& K, Index N);

/// sum_{n} beta_t(t n - s_t) q^{n - t/24}, the image of S under W_t up to sign.
Series fricke_beta_series(const BetaStream& beta, Index N);

/// K = G^{-m} + sum_{j=1}^{-m-1} k_j G^j with beta_t(n) = 0 for m < n < 0.
GPoly atkin_solve_k(int t, Index m);

/// beta_t(n) = 0 whenever (1-24n | t) = -(1-24m | t), for n <= N.
CongruenceReport verify_beta_vanish(int t, Index m, Index N);

/// Coordinates d[a], a_min <= a <= a_max, in the basis E_{2,t} G_t^a.
struct Gamma0Basis {
  int t = 5;
  Index s = 0;                // support is [-t s, s]
  std::vector<Integer> d;     // d[a + t s]

  Index min_a() const { return -static_cast<Index>(t) * s; }
  Index max_a() const { return s; }
  const Integer& at(Index a) const { return d.at(static_cast<std::size_t>(a - min_a())); }
  /// sum_{a >= 1} d[a] G^a, the principal part used to build beta_{t,ell}.
  GPoly positive_part() const;
};

/// Solves Fc = E_{2,t} sum_{a=a_min}^{a_max} c_a G_t^a for an integer-grid
/// series Fc by elimination from the lowest exponent up (E_{2,t} G^a starts
/// at q^{-a} with coefficient 1). Throws std::domain_error when the residual
/// does not vanish through Fc's validity.
std::vector<Integer> solve_hauptmodul(const Series& Fc, int t, Index a_min, Index a_max);

/// F on the q^{n - 1/24} grid with F eta in M_{2+12s}(Gamma0(t)).
Gamma0Basis decompose_gamma0(const Series& F, int t, Index s);

/// E4^2 E6 / Delta = E_{2,t} sum_{j=-t}^{1} a_{j,t} G_t^j.
Gamma0Basis e46d_decompose(int t, Index N = 60);

/// Hauptmodul-level congruences for j and E4^2 E6 / Delta modulo 5^8, 7^4,
/// 13^2 and 5^6, including the (E6/E4) j^a family for 3 <= a <= 8.
std::vector<CongruenceReport> check_lemma_congruences(Index N);

/// Exact decomposition of E4^2 E6 / Delta at t = 5 against the closed form.
CongruenceReport check_e46d_identity(Index N = 60);

/// Identity checks for S(z), its W_t image, and Psi with K = 1 (t = 5, 7).
std::vector<CongruenceReport> check_s_psi_identities(Index N);

/// The K = G^2 + 5G (t = 5) and K = G (t = 7) examples and their vanishing
/// patterns.
std::vector<CongruenceReport> check_beta_examples(Index N);

struct AtkinGamma {
  Modulus gamma = 0;
  Modulus modulus = 0;
  Index first_n = -1;
  CongruenceReport report;
};

/// Finds gamma with ell^3 p(ell^2 n - s) + ell chi12(ell) (1-24n|ell) p(n)
/// + p((n+s)/ell^2) = gamma p(n) (mod t^c) on every n <= N with
/// (1-24n | t) = -1, taking gamma from the first such n where p(n) is a unit.
AtkinGamma atkin_gamma_constant(int t, std::int64_t ell, Index N, const CoeffStream& p_mod);
AtkinGamma atkin_gamma_constant(int t, std::int64_t ell, Index N);

/// beta_{t,ell}: decomposes A_ell in the Gamma0(t) basis (exactly, from an
/// exact a-stream valid through ell^2 (t s + margin)) and returns the
/// coordinates together with E_{2,t} K / eta for K = sum_{a>=1} d_a G^a.
struct AtkinDecomposition {
  Gamma0Basis basis;
  GPoly K;
};
AtkinDecomposition decompose_a_ell(int t, std::int64_t ell, const CoeffStream& a_exact);

/// Minimal exact a-stream length needed by decompose_a_ell.
Index decompose_a_ell_need(int t, std::int64_t ell);

}  // namespace sptlab
