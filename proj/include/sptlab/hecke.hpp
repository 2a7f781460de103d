#pragma once

#include <string>
#include <vector>

#include "sptlab/partitions.hpp"
#include "sptlab/report.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

/// The character mod 12: 1 on n = +-1, -1 on n = +-5, else 0.
int chi12(std::int64_t n);

bool is_prime(std::int64_t n);

/// Legendre symbol (a / ell) for an odd prime ell, by Euler's criterion.
int legendre(std::int64_t a, std::int64_t ell);

/// (ell^2 - 1) / 24 for a prime ell >= 5.
Index s_of(std::int64_t ell);

/// Parameters of the three-term combination
///
///   g(n) = u f(ell^2 n - s) + chi12(ell) ((1-24n | ell) + shift) v f(n)
///          + w f((n + s) / ell^2),
///
/// the last term present only when ell^2 divides n + s.
struct HeckeParams {
  std::int64_t ell = 5;
  Index s = 1;
  Integer u = 1, v = 1, w = 1;
  std::int64_t shift = 0;
  Index first = 0;  // lowest n produced; -s unless the combination starts later

  /// Partition version: (u, v, w, shift) = (ell^3, ell, 1, 0).
  static HeckeParams partition(std::int64_t ell);
  /// Version used for d, a: (1, 1, ell, -(1 + ell)).
  static HeckeParams weighted(std::int64_t ell);
  /// Same weights as `weighted`, summed from n = 1 (the spt combination).
  static HeckeParams spt(std::int64_t ell);
};

/// g(first..N) as a series on the q^{n - 1/24} grid. The source must be valid
/// through ell^2 N - s.
Series hecke_combo(const CoeffStream& f, const HeckeParams& params, Index N);

/// Integer polynomial, coefficients in ascending degree.
struct IntPoly {
  std::vector<Integer> c;

  int degree() const;
  bool operator==(const IntPoly&) const = default;
  std::string to_string(const std::string& var = "x") const;
  /// Horner evaluation at a series; the result is valid as far as x^degree is.
  Series evaluate(const Series& x) const;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

/// Power series in q with coefficients in Z[x], index m holds q^m.
struct PolySeries {
  std::vector<IntPoly> coeffs;
  Index valid_to() const { return static_cast<Index>(coeffs.size()) - 1; }
};

PolySeries mul(const PolySeries& a, const PolySeries& b);
/// Inverse of a series whose constant coefficient is the polynomial 1.
PolySeries invert(const PolySeries& a);

/// A_m(x) for 0 <= m <= m_max, from
///   sum A_m(x) q^m = E(q) (E4^2 E6 / Delta) / (j - x).
PolySeries ono_poly_A(Index m_max, Index N = -1);

/// C_ell(x) = ell chi12(ell) + A_{s_ell}(x).
IntPoly c_ell(std::int64_t ell);

/// Z_ell(z) eta(z) = C_ell(j(z)) coefficientwise through q^N.
CongruenceReport verify_zell(std::int64_t ell, Index N, const CoeffStream& p);
CongruenceReport verify_zell(std::int64_t ell, Index N);

/// ell Xi_ell eta Delta^s = -sum_n c_n E4^{3n-1} Delta^{s-n} (24n E6 + E4 E2)
///                          + chi12(ell) ell (1 + ell) E2 Delta^s, through q^N.
CongruenceReport verify_xi(std::int64_t ell, Index N, const CoeffStream& d);
CongruenceReport verify_xi(std::int64_t ell, Index N);

/// Coordinates b_1..b_s of a form in the span of E4^{3n-1} E6 Delta^{s-n}.
struct Level1Decomposition {
  Index s = 0;
  std::vector<Integer> b;  // b[n - 1] is the coefficient of E4^{3n-1} E6 Delta^{s-n}
  const Integer& at(Index n) const { return b.at(static_cast<std::size_t>(n - 1)); }
};

/// Basis element E4^{3n-1} E6 Delta^{s-n}, valid through index N.
Series level1_basis_element(Index n, Index s, Index N, Modulus m = 0);

/// Solves F = sum b_n E4^{3n-1} E6 Delta^{s-n} by elimination from q^0 up and
/// checks that the residual vanishes through F's validity. Throws
/// std::domain_error when F is not in the span.
Level1Decomposition decompose_level1(const Series& F, Index s);

/// A_ell(z) eta(z) Delta(z)^s as an integer-grid series through q^N.
Series a_ell_cleared(std::int64_t ell, Index N, const CoeffStream& a);

/// Every coefficient of A_ell (n from -s to N) vanishes mod ell.
CongruenceReport verify_mell_cong(std::int64_t ell, Index N, const CoeffStream& a_mod_ell);
CongruenceReport verify_mell_cong(std::int64_t ell, Index N);

}  // namespace sptlab
