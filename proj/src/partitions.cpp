#include "sptlab/partitions.hpp"

#include <functional>

#include "sptlab/forms.hpp"

namespace sptlab {

std::string to_string(StreamKind k) {
  switch (k) {
    case StreamKind::p: return "p";
    case StreamKind::spt: return "spt";
    case StreamKind::d: return "d";
    case StreamKind::a: return "a";
  }
  return "?";
}

CoeffStream partition_stream(Index N, Modulus m) {
  if (N < 0) throw std::invalid_argument("partition_stream: N must be nonnegative");
  return {StreamKind::p, invert(euler_product(N, m))};
}

CoeffStream spt_stream(Index N, Modulus m, Index cap) {
  if (N < 0) throw std::invalid_argument("spt_stream: N must be nonnegative");
  if (cap < 0) cap = (m == 0) ? kExactSptCap : kModularSptCap;
  if (N > cap) {
    throw std::length_error("spt_stream: N=" + std::to_string(N) + " exceeds the cap " +
                            std::to_string(cap) + (m == 0 ? " for exact streams" : ""));
  }
  const auto len = static_cast<std::size_t>(N + 1);
  if (m == 0) {
    std::vector<Integer> y(len, 0);
    for (std::size_t k = 1; k < len; ++k) {
      for (std::size_t i = k; i < len; i += k) y[i] += 1;
      for (std::size_t i = k; i < len; ++i) y[i] += y[i - k];
    }
    return {StreamKind::spt, Series::exact(0, 0, std::move(y))};
  }
  std::vector<Modulus> y(len, 0);
  const Modulus one = 1 % m;
  for (std::size_t k = 1; k < len; ++k) {
    for (std::size_t i = k; i < len; i += k) {
      y[i] += one;
      if (y[i] >= m) y[i] -= m;
    }
    for (std::size_t i = k; i < len; ++i) {
      y[i] += y[i - k];
      if (y[i] >= m) y[i] -= m;
    }
  }
  return {StreamKind::spt, Series::residues(0, 0, std::move(y), m)};
}

std::int64_t spt_bruteforce(int n) {
  if (n < 0 || n > 45) throw std::out_of_range("spt_bruteforce: n must lie in [0, 45]");
  std::int64_t total = 0;
  // Parts are generated in nonincreasing order, so the last part placed is the
  // smallest; `run` counts how many copies of it ended the partition.
  std::function<void(int, int, int)> walk = [&](int remaining, int max_part, int run) {
    if (remaining == 0) {
      total += run;
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      walk(remaining - part, part, part == max_part ? run + 1 : 1);
    }
  };
  walk(n, n, 0);
  return total;
}

WeightedStreams weighted_streams(const CoeffStream& p, const CoeffStream& spt) {
  if (p.modulus() != spt.modulus()) throw ModulusMismatch("weighted_streams: modulus mismatch");
  const Index N = std::min(p.nmax(), spt.nmax());
  const Modulus m = p.modulus();
  if (m == 0) {
    std::vector<Integer> d, a;
    d.reserve(static_cast<std::size_t>(N + 1));
    a.reserve(static_cast<std::size_t>(N + 1));
    for (Index n = 0; n <= N; ++n) {
      Integer dn = p.at(n) * (24 * static_cast<long>(n) - 1);
      a.push_back(12 * spt.at(n) + dn);
      d.push_back(std::move(dn));
    }
    return {{StreamKind::d, Series::exact(23, 0, std::move(d))},
            {StreamKind::a, Series::exact(23, 0, std::move(a))}};
  }
  std::vector<Modulus> d, a;
  d.reserve(static_cast<std::size_t>(N + 1));
  a.reserve(static_cast<std::size_t>(N + 1));
  const Modulus twelve = 12 % m;
  for (Index n = 0; n <= N; ++n) {
    Modulus w = reduce(24 * n - 1, m);
    Modulus dn = (w * p.residue_at(n)) % m;
    a.push_back((twelve * spt.residue_at(n) + dn) % m);
    d.push_back(dn);
  }
  return {{StreamKind::d, Series::residues(23, 0, std::move(d), m)},
          {StreamKind::a, Series::residues(23, 0, std::move(a), m)}};
}

CoeffStream d_stream(const CoeffStream& p) {
  return weighted_streams(p, CoeffStream{StreamKind::spt, Series::zero(0, p.nmax(), p.modulus())}).d;
}

WeightedStreams weighted_streams(Index N, Modulus m) {
  return weighted_streams(partition_stream(N, m), spt_stream(N, m));
}

}  // namespace sptlab
