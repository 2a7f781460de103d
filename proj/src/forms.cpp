#include "sptlab/forms.hpp"

#include <string>

namespace sptlab {

Series euler_product(Index N, Modulus m) {
  if (N < 0) throw std::invalid_argument("euler_product: N must be nonnegative");
  std::vector<Integer> c(static_cast<std::size_t>(N + 1), 0);
  // Generalized pentagonal numbers k(3k-1)/2 for k = 0, 1, -1, 2, -2, ...
  for (Index k = 0; k * (3 * k - 1) / 2 <= N; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(k * (3 * k - 1) / 2)] = sign;
    if (k > 0 && k * (3 * k + 1) / 2 <= N) c[static_cast<std::size_t>(k * (3 * k + 1) / 2)] = sign;
  }
  Series e = Series::exact(0, 0, std::move(c));
  return m == 0 ? e : reduce_mod(e, m);
}

Series eta_pow(std::int64_t k, Index N, Modulus m) {
  const GridPoint lead = split_exponent24(k);
  const Index body_to = std::max<Index>(N - lead.index, 0);
  Series body = pow(euler_product(body_to, m), k);
  return retag(body, lead.frac24, lead.index);
}

std::vector<Integer> divisor_sigma(int k, Index N) {
  std::vector<Integer> sigma(static_cast<std::size_t>(std::max<Index>(N, 0) + 1), 0);
  Integer dk;
  for (Index d = 1; d <= N; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (Index n = d; n <= N; n += d) sigma[static_cast<std::size_t>(n)] += dk;
  }
  return sigma;
}

Series eisenstein(int k, Index N, Modulus m) {
  long c;
  switch (k) {
    case 2: c = -24; break;
    case 4: c = 240; break;
    case 6: c = -504; break;
    default: throw std::invalid_argument("eisenstein: weight must be 2, 4 or 6");
  }
  if (N < 0) throw std::invalid_argument("eisenstein: N must be nonnegative");
  if (m != 0) {
    // Residue sieve: avoids big sigma values when only residues are wanted.
    std::vector<Modulus> sig(static_cast<std::size_t>(N + 1), 0);
    for (Index d = 1; d <= N; ++d) {
      Modulus dk = pow_mod(static_cast<Modulus>(d) % m, static_cast<std::uint64_t>(k - 1), m);
      for (Index n = d; n <= N; n += d) {
        auto& s = sig[static_cast<std::size_t>(n)];
        s = (s + dk) % m;
      }
    }
    const Modulus cm = reduce(static_cast<std::int64_t>(c), m);
    for (auto& s : sig) s = (s * cm) % m;
    sig[0] = 1 % m;
    return Series::residues(0, 0, std::move(sig), m);
  }
  auto sigma = divisor_sigma(k - 1, N);
  for (auto& s : sigma) s *= c;
  sigma[0] = 1;
  return Series::exact(0, 0, std::move(sigma));
}

DeltaJ delta_j(Index N, Modulus m) {
  Series delta = eta_pow(24, N + 2, m);
  Series e4 = eisenstein(4, N + 1, m);
  Series j = mul(pow(e4, 3), invert(delta));
  return {delta.truncated(N), j.truncated(N)};
}

Series e14_over_delta(Index N, Modulus m) {
  Series delta = eta_pow(24, N + 2, m);
  Series e4 = eisenstein(4, N + 1, m);
  Series e6 = eisenstein(6, N + 1, m);
  return mul(mul(pow(e4, 2), e6), invert(delta)).truncated(N);
}

std::vector<CongruenceReport> check_classical_congruences(Index N) {
  if (N < 1) throw std::invalid_argument("check_classical_congruences: N must be >= 1");
  const Index M = N + 2;
  const Series e2 = eisenstein(2, M);
  const Series e4 = eisenstein(4, M);
  const Series e6 = eisenstein(6, M);
  const auto [delta, j] = delta_j(M);
  const Series one = Series::monomial(1, 0, 0, M);
  const std::string params = "nmax=" + std::to_string(N);

  std::vector<CongruenceReport> out;
  auto run = [&](const std::string& name, const std::string& claim, const Series& lhs,
                 const Series& rhs, Modulus modulus) {
    ReportTimer timer("classical:" + name, claim, params);
    compare_into(timer.report(), lhs, rhs, 0, N, modulus);
    out.push_back(timer.finish());
  };

  const Series e4sq = pow(e4, 2);
  run("e4cube-65520", "E4^3 - 720 Delta = 1 (mod 65520)", add(pow(e4, 3), delta, 1, -720), one,
      65520);
  run("e2-65520", "E2 = E4^2 E6 (mod 65520)", e2, mul(e4sq, e6), 65520);
  run("e2-32", "E2 = E4 E6 + 16 Delta (mod 32)", e2, add(mul(e4, e6), delta, 1, 16), 32);
  run("e4sq-32", "E4^2 = 1 (mod 32)", e4sq, one, 32);
  run("e2-27", "E2 = E4^5 + 18 Delta (mod 27)", e2, add(pow(e4, 5), delta, 1, 18), 27);
  run("e6-27", "E6 = E4^6 (mod 27)", e6, pow(e4, 6), 27);
  run("j-delta", "j Delta = E4^3", mul(j, delta), pow(e4, 3), 0);
  run("dlog-delta", "q d/dq Delta = Delta E2", qderiv(delta), mul(delta, e2), 0);
  run("dj-delta", "(q d/dq j) Delta = -E4^2 E6", mul(qderiv(j), delta), scale(mul(e4sq, e6), -1),
      0);
  return out;
}

}  // namespace sptlab
