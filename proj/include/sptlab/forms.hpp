#pragma once

// Level-one q-expansions. Every builder returns a series valid at least
// through q^N (exactly through N for integer-grid objects).

#include "sptlab/report.hpp"
#include "sptlab/series.hpp"

namespace sptlab {

/// E(q) = prod (1 - q^n), from the pentagonal number theorem.
Series euler_product(Index N, Modulus m = 0);

/// eta(z)^k = q^{k/24} E(q)^k on the grid tagged k mod 24, valid through index N.
Series eta_pow(std::int64_t k, Index N, Modulus m = 0);

/// sigma_k(n) for 1 <= n <= N by a divisor sieve (index 0 holds 0).
std::vector<Integer> divisor_sigma(int k, Index N);

/// E_2, E_4, E_6 (k in {2,4,6}).
Series eisenstein(int k, Index N, Modulus m = 0);

struct DeltaJ {
  Series delta;
  Series j;
};

/// Delta = q E(q)^24 and j = E4^3 / Delta.
DeltaJ delta_j(Index N, Modulus m = 0);

/// E4^2 E6 / Delta = (E6/E4) j.
Series e14_over_delta(Index N, Modulus m = 0);

/// Level-one congruences used for the spt Hecke congruences, plus the
/// j / Delta derivative identities, coefficientwise through q^N.
std::vector<CongruenceReport> check_classical_congruences(Index N);

}  // namespace sptlab
