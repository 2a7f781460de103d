#pragma once

#include <cstdint>
#include <string>

#include "sptlab/series.hpp"

namespace sptlab {

enum class StreamKind { p, spt, d, a };

std::string to_string(StreamKind k);

/// An arithmetic function f(0..nmax), exact or mod M. Reads at negative n
/// return 0; reads past nmax throw ValidityError.
///
/// `values` holds f(n) at index n. The grid tag records the generating
/// series the stream belongs to: 0 for the raw p and spt tables, 23 for d and
/// a, whose natural series is sum f(n) q^{n - 1/24}.
struct CoeffStream {
  StreamKind kind = StreamKind::p;
  Series values;

  Index nmax() const { return values.valid_to(); }
  Modulus modulus() const { return values.modulus(); }
  int frac24() const { return values.frac24(); }
  Integer at(Index n) const { return n < 0 ? Integer(0) : values.coeff(n); }
  Modulus residue_at(Index n) const { return n < 0 ? 0 : values.residue(n); }
  CoeffStream truncated(Index n) const { return {kind, values.truncated(n)}; }
  CoeffStream reduced(Modulus m) const { return {kind, reduce_mod(values, m)}; }
};

/// Default size guards for spt streams (the build is quadratic in N).
inline constexpr Index kExactSptCap = 5000;
inline constexpr Index kModularSptCap = 200000;

CoeffStream partition_stream(Index N, Modulus m = 0);

/// spt(0..N) from the smallest-parts generating sum
///     sum_{k>=1} q^k / (1-q^k)^2 * prod_{r>k} 1/(1-q^r),
/// evaluated Horner-style: Y <- (Y + q^k/(1-q^k)) / (1-q^k) for k = 1..N,
/// one O(N) prefix recurrence per step.
CoeffStream spt_stream(Index N, Modulus m = 0, Index cap = -1);

/// Enumerates every partition of n; 0 <= n <= 45.
std::int64_t spt_bruteforce(int n);

struct WeightedStreams {
  CoeffStream d;  // (24n - 1) p(n)
  CoeffStream a;  // 12 spt(n) + (24n - 1) p(n)
};

/// d(n) = (24n - 1) p(n) alone.
CoeffStream d_stream(const CoeffStream& p);

WeightedStreams weighted_streams(const CoeffStream& p, const CoeffStream& spt);
WeightedStreams weighted_streams(Index N, Modulus m = 0);

}  // namespace sptlab
