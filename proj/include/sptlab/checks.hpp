#pragma once

// Theorem-level congruence sweeps over the spt, p and a streams.

#include <cstdint>
#include <vector>

#include "sptlab/report.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

/// The x in [0, M) with 24 x = 1 (mod M). Throws unless gcd(24, M) = 1.
Modulus inv24(Modulus M);

/// spt(ell^2 n - s) + chi12(ell) (1-24n | ell) spt(n) + ell spt((n + s)/ell^2)
///   = chi12(ell) (1 + ell) spt(n)  (mod M), 1 <= n <= N.
/// M is one of 3, 72, 5, 7, 13 (with ell != M) or 32760 (ell not 5, 7, 13).
/// A passing mod-72 sweep is cross-checked against the mod-3 sweep.
CongruenceReport check_spt_hecke(std::int64_t ell, Modulus M, Index N);

/// spt(ell^2 n - s) = 0 (mod ell) when (1-24n | ell) = 1, 1 <= n <= N.
CongruenceReport check_spt_ell_square(std::int64_t ell, Index N);

/// spt(t^a n + d_a) + sign t spt(t^{a-2} n + d_{a-2}) = 0 (mod t^{e(a)}),
/// 0 <= n <= N, with d_k = inv24(t^k), sign = -1 only for t = 13 and
/// e(a) = 2a-3, floor((3a-2)/2), a-1 for t = 5, 7, 13.
CongruenceReport check_spt_prime_powers(int t, int a, Index N);

/// Modulus exponent e(a) above.
int prime_power_exponent(int t, int a);

/// a(ell^2 n - s) + chi12(ell) (1-24n | ell) a(n) + ell a((n + s)/ell^2)
///   = chi12(ell) (1 + ell) a(n)  (mod t^c) when (1-24n | t) = -1, 0 <= n <= N.
CongruenceReport check_a_atkin(int t, std::int64_t ell, Index N);

/// The (t, ell, n) = (5, 7, 1) instance: the left side is 149077845 and
/// 149077845 = -280 = -8 a(1) (mod 5^6).
CongruenceReport check_a_atkin_instance();

/// Decomposes A_ell over Gamma0(t) exactly and checks: d_a = 0 (mod t^c) for
/// a <= 0; beta_{t,ell}(-s) = -ell; beta_{t,ell}(n) = 0 for -s < n <= -1;
/// A_ell = beta_{t,ell} (mod t^c) for -s <= n <= N. Skipped when the exact
/// a-stream it needs exceeds the exact spt cap.
std::vector<CongruenceReport> check_beta_tell(int t, std::int64_t ell, Index N);

/// b_{1,ell} = 0 (mod 5), b_{1,ell} the first coordinate of A_ell eta Delta^s
/// in the level-1 basis.
CongruenceReport check_b1_mod5(std::int64_t ell);

/// A_0 = 1, A_1 = x - 745, A_2 = x^2 - 1489x + 160511.
CongruenceReport check_ono_polys();

/// spt stream against direct enumeration for n <= N (N <= 45).
CongruenceReport check_spt_oracle(Index N);

}  // namespace sptlab
