#include "sptlab/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sptlab {

namespace {

struct ExactRing {
  using Value = Integer;
  using Coeffs = Series::ExactCoeffs;

  Value zero() const { return 0; }
  Value from(const Integer& x) const { return x; }
  bool is_zero(const Value& x) const { return sgn(x) == 0; }
  Value add(const Value& x, const Value& y) const { return x + y; }
  Value mul(const Value& x, const Value& y) const { return x * y; }
  Value neg(const Value& x) const { return -x; }
  std::optional<Value> inverse(const Value& x) const {
    if (x == 1 || x == -1) return x;
    return std::nullopt;
  }
  Value times_index(const Value& x, Index n) const { return x * Integer(static_cast<long>(n)); }
  Series make(int frac24, Index lo, Coeffs c) const { return Series::exact(frac24, lo, std::move(c)); }
};

struct ModRing {
  using Value = Modulus;
  using Coeffs = Series::ResidueCoeffs;
  Modulus m;

  Value zero() const { return 0; }
  Value from(const Integer& x) const { return reduce(x, m); }
  bool is_zero(Value x) const { return x == 0; }
  Value add(Value x, Value y) const {
    Value s = x + y;
    return s >= m ? s - m : s;
  }
  Value mul(Value x, Value y) const { return (x * y) % m; }
  Value neg(Value x) const { return x == 0 ? 0 : m - x; }
  std::optional<Value> inverse(Value x) const { return inverse_mod(x, m); }
  Value times_index(Value x, Index n) const { return mul(x, reduce(static_cast<std::int64_t>(n), m)); }
  Series make(int frac24, Index lo, Coeffs c) const { return Series::residues(frac24, lo, std::move(c), m); }
};

template <class F>
decltype(auto) with_ring(const Series& s, F&& f) {
  if (s.is_exact()) return f(ExactRing{}, s.exact_coeffs());
  return f(ModRing{s.modulus()}, s.residue_coeffs());
}

void require_same_modulus(const Series& a, const Series& b, const char* op) {
  if (a.modulus() != b.modulus()) {
    throw ModulusMismatch(std::string(op) + ": modulus mismatch (" + std::to_string(a.modulus()) +
                          " vs " + std::to_string(b.modulus()) + ")");
  }
}

void check_modulus(Modulus m) {
  if (m < 2 || m >= kMaxModulus) {
    throw std::invalid_argument("modulus must lie in [2, 2^32): " + std::to_string(m));
  }
}

template <class Ring>
std::vector<std::size_t> nonzero_positions(const Ring& ring, const typename Ring::Coeffs& c) {
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!ring.is_zero(c[i])) nz.push_back(i);
  }
  return nz;
}

}  // namespace

Modulus reduce(const Integer& x, Modulus m) {
  return static_cast<Modulus>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(m)));
}

Modulus reduce(std::int64_t x, Modulus m) {
  auto r = x % static_cast<std::int64_t>(m);
  return static_cast<Modulus>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::optional<Modulus> inverse_mod(Modulus a, Modulus m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s, m);
}

Modulus pow_mod(Modulus base, std::uint64_t e, Modulus m) {
  Modulus result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Series

Series Series::exact(int frac24, Index lo, ExactCoeffs coeffs) {
  if (frac24 < 0 || frac24 >= 24) throw std::invalid_argument("frac24 must lie in [0,24)");
  Series s;
  s.frac24_ = frac24;
  s.lo_ = lo;
  s.modulus_ = 0;
  s.data_ = std::move(coeffs);
  return s;
}

Series Series::residues(int frac24, Index lo, ResidueCoeffs coeffs, Modulus m) {
  if (frac24 < 0 || frac24 >= 24) throw std::invalid_argument("frac24 must lie in [0,24)");
  check_modulus(m);
  for (auto& c : coeffs) c %= m;
  Series s;
  s.frac24_ = frac24;
  s.lo_ = lo;
  s.modulus_ = m;
  s.data_ = std::move(coeffs);
  return s;
}

Series Series::zero(int frac24, Index valid_to, Modulus m) {
  if (m == 0) return exact(frac24, valid_to + 1, {});
  return residues(frac24, valid_to + 1, {}, m);
}

Series Series::monomial(const Integer& c, Index index, int frac24, Index valid_to, Modulus m) {
  if (valid_to < index) return zero(frac24, valid_to, m);
  auto len = static_cast<std::size_t>(valid_to - index + 1);
  if (m == 0) {
    ExactCoeffs v(len, 0);
    v[0] = c;
    return exact(frac24, index, std::move(v));
  }
  ResidueCoeffs v(len, 0);
  v[0] = reduce(c, m);
  return residues(frac24, index, std::move(v), m);
}

std::size_t Series::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

const Series::ExactCoeffs& Series::exact_coeffs() const {
  if (!is_exact()) throw std::logic_error("exact_coeffs() on a modular series");
  return std::get<ExactCoeffs>(data_);
}

const Series::ResidueCoeffs& Series::residue_coeffs() const {
  if (is_exact()) throw std::logic_error("residue_coeffs() on an exact series");
  return std::get<ResidueCoeffs>(data_);
}

Integer Series::coeff(Index n) const {
  if (n > valid_to()) {
    throw ValidityError("coefficient index " + std::to_string(n) + " beyond validity of " +
                        describe());
  }
  if (n < lo_) return 0;
  auto i = static_cast<std::size_t>(n - lo_);
  if (is_exact()) return std::get<ExactCoeffs>(data_)[i];
  return Integer(static_cast<unsigned long>(std::get<ResidueCoeffs>(data_)[i]));
}

Modulus Series::residue(Index n) const {
  if (is_exact()) throw std::logic_error("residue() on an exact series");
  if (n > valid_to()) {
    throw ValidityError("coefficient index " + std::to_string(n) + " beyond validity of " +
                        describe());
  }
  if (n < lo_) return 0;
  return std::get<ResidueCoeffs>(data_)[static_cast<std::size_t>(n - lo_)];
}

bool Series::is_zero_at(Index n) const {
  if (is_exact()) return sgn(coeff(n)) == 0;
  return residue(n) == 0;
}

std::optional<Index> Series::leading_index() const {
  return with_ring(*this, [&](const auto& ring, const auto& c) -> std::optional<Index> {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!ring.is_zero(c[i])) return lo_ + static_cast<Index>(i);
    }
    return std::nullopt;
  });
}

Series Series::trimmed() const {
  auto lead = leading_index();
  Index new_lo = lead ? *lead : valid_to() + 1;
  if (new_lo == lo_) return *this;
  return with_ring(*this, [&](const auto& ring, const auto& c) {
    using Coeffs = std::decay_t<decltype(c)>;
    Coeffs out(c.begin() + (new_lo - lo_), c.end());
    return ring.make(frac24_, new_lo, std::move(out));
  });
}

Series Series::truncated(Index new_valid_to) const {
  if (new_valid_to > valid_to()) {
    throw ValidityError("cannot extend validity of " + describe() + " to " +
                        std::to_string(new_valid_to));
  }
  return with_ring(*this, [&](const auto& ring, const auto& c) {
    using Coeffs = std::decay_t<decltype(c)>;
    if (new_valid_to < lo_) return ring.make(frac24_, new_valid_to + 1, Coeffs{});
    Coeffs out(c.begin(), c.begin() + (new_valid_to - lo_ + 1));
    return ring.make(frac24_, lo_, std::move(out));
  });
}

std::string Series::describe() const {
  std::ostringstream os;
  os << "Series(frac24=" << frac24_ << ", lo=" << lo_ << ", valid_to=" << valid_to()
     << ", mod=" << modulus_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Operations

Series add(const Series& a, const Series& b, const Integer& c1, const Integer& c2) {
  if (a.frac24() != b.frac24()) {
    throw GridMismatch("add: grid mismatch (" + std::to_string(a.frac24()) + " vs " +
                       std::to_string(b.frac24()) + ")");
  }
  require_same_modulus(a, b, "add");
  Index vt = std::min(a.valid_to(), b.valid_to());
  Index lo = std::min(a.lo(), b.lo());
  if (lo > vt) return Series::zero(a.frac24(), vt, a.modulus());
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    const Coeffs* cb;
    if constexpr (std::is_same_v<Coeffs, Series::ExactCoeffs>) {
      cb = &b.exact_coeffs();
    } else {
      cb = &b.residue_coeffs();
    }
    auto k1 = ring.from(c1), k2 = ring.from(c2);
    Coeffs out(static_cast<std::size_t>(vt - lo + 1), ring.zero());
    for (Index n = std::max(lo, a.lo()); n <= std::min(vt, a.valid_to()); ++n) {
      auto& o = out[static_cast<std::size_t>(n - lo)];
      o = ring.add(o, ring.mul(k1, ca[static_cast<std::size_t>(n - a.lo())]));
    }
    for (Index n = std::max(lo, b.lo()); n <= std::min(vt, b.valid_to()); ++n) {
      auto& o = out[static_cast<std::size_t>(n - lo)];
      o = ring.add(o, ring.mul(k2, (*cb)[static_cast<std::size_t>(n - b.lo())]));
    }
    return ring.make(a.frac24(), lo, std::move(out));
  });
}

Series scale(const Series& a, const Integer& c) {
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    auto k = ring.from(c);
    Coeffs out;
    out.reserve(ca.size());
    for (const auto& x : ca) out.push_back(ring.mul(k, x));
    return ring.make(a.frac24(), a.lo(), std::move(out));
  });
}

namespace {

template <class Ring>
typename Ring::Coeffs cauchy(const Ring& ring, const typename Ring::Coeffs& x,
                             const typename Ring::Coeffs& y, std::size_t len) {
  // Iterate over the nonzero entries of the sparser factor.
  const auto nzx = nonzero_positions(ring, x);
  const auto nzy = nonzero_positions(ring, y);
  const bool swap = nzy.size() < nzx.size();
  const auto& sparse = swap ? y : x;
  const auto& dense = swap ? x : y;
  const auto& nz = swap ? nzy : nzx;

  typename Ring::Coeffs out(len, ring.zero());
  if constexpr (std::is_same_v<Ring, ExactRing>) {
    for (std::size_t i : nz) {
      if (i >= len) break;
      const mpz_srcptr si = sparse[i].get_mpz_t();
      for (std::size_t k = i; k < len && k - i < dense.size(); ++k) {
        mpz_addmul(out[k].get_mpz_t(), si, dense[k - i].get_mpz_t());
      }
    }
  } else {
    for (std::size_t k = 0; k < len; ++k) {
      unsigned __int128 acc = 0;
      for (std::size_t i : nz) {
        if (i > k) break;
        if (k - i >= dense.size()) continue;
        acc += static_cast<unsigned __int128>(sparse[i]) * dense[k - i];
      }
      out[k] = static_cast<Modulus>(acc % ring.m);
    }
  }
  return out;
}

}  // namespace

Series mul(const Series& a_in, const Series& b_in) {
  require_same_modulus(a_in, b_in, "mul");
  const Series a = a_in.trimmed();
  const Series b = b_in.trimmed();
  const Index rel = std::min(a.valid_to() - a.lo(), b.valid_to() - b.lo());
  const Index e24 = exponent24(a.lo(), a.frac24()) + exponent24(b.lo(), b.frac24());
  const GridPoint lead = split_exponent24(e24);
  if (rel < 0) return Series::zero(lead.frac24, lead.index + rel, a.modulus());
  const auto len = static_cast<std::size_t>(rel + 1);
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    const Coeffs* cb;
    if constexpr (std::is_same_v<Coeffs, Series::ExactCoeffs>) {
      cb = &b.exact_coeffs();
    } else {
      cb = &b.residue_coeffs();
    }
    return ring.make(lead.frac24, lead.index, cauchy(ring, ca, *cb, len));
  });
}

Series invert(const Series& a_in) {
  const Series a = a_in.trimmed();
  if (a.size() == 0) throw NonUnitError("invert: series vanishes to its validity");
  const Index rel = a.valid_to() - a.lo();
  const GridPoint lead = split_exponent24(-exponent24(a.lo(), a.frac24()));
  const auto len = static_cast<std::size_t>(rel + 1);
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    auto u = ring.inverse(ca[0]);
    if (!u) throw NonUnitError("invert: leading coefficient is not a unit");
    const auto nz = nonzero_positions(ring, ca);
    Coeffs out(len, ring.zero());
    out[0] = *u;
    const auto neg_u = ring.neg(*u);
    for (std::size_t k = 1; k < len; ++k) {
      if constexpr (std::is_same_v<Coeffs, Series::ExactCoeffs>) {
        Integer acc = 0;
        for (std::size_t i : nz) {
          if (i == 0) continue;
          if (i > k) break;
          mpz_addmul(acc.get_mpz_t(), ca[i].get_mpz_t(), out[k - i].get_mpz_t());
        }
        out[k] = neg_u * acc;
      } else {
        unsigned __int128 acc = 0;
        for (std::size_t i : nz) {
          if (i == 0) continue;
          if (i > k) break;
          acc += static_cast<unsigned __int128>(ca[i]) * out[k - i];
        }
        out[k] = ring.mul(neg_u, static_cast<Modulus>(acc % ring.m));
      }
    }
    return ring.make(lead.frac24, lead.index, std::move(out));
  });
}

Series pow(const Series& a_in, std::int64_t k) {
  Series base = a_in.trimmed();
  if (k < 0) {
    base = invert(base);
    k = -k;
  }
  if (k == 0) {
    Index rel = std::max<Index>(base.valid_to() - base.lo(), 0);
    return Series::monomial(1, 0, 0, rel, base.modulus());
  }
  std::optional<Series> result;
  while (true) {
    if (k & 1) result = result ? mul(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base);
  }
  return *result;
}

Series dilate(const Series& a, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("dilate: factor must be positive");
  const GridPoint first = split_exponent24(t * exponent24(a.lo(), a.frac24()));
  const GridPoint past = split_exponent24(t * exponent24(a.valid_to() + 1, a.frac24()));
  const Index new_vt = past.index - 1;
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    if (new_vt < first.index) return ring.make(first.frac24, new_vt + 1, Coeffs{});
    Coeffs out(static_cast<std::size_t>(new_vt - first.index + 1), ring.zero());
    for (std::size_t i = 0; i < ca.size(); ++i) {
      Index e = t * exponent24(a.lo() + static_cast<Index>(i), a.frac24());
      out[static_cast<std::size_t>(split_exponent24(e).index - first.index)] = ca[i];
    }
    return ring.make(first.frac24, first.index, std::move(out));
  });
}

Series qderiv(const Series& a) {
  if (a.frac24() != 0) {
    throw GridMismatch("qderiv: fractional grid; dilate by 24 first");
  }
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    Coeffs out;
    out.reserve(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
      out.push_back(ring.times_index(ca[i], a.lo() + static_cast<Index>(i)));
    }
    return ring.make(0, a.lo(), std::move(out));
  });
}

Series extract(const Series& a, std::int64_t stride, std::int64_t residue) {
  if (stride < 1) throw std::invalid_argument("extract: stride must be positive");
  const Index new_lo = -floor_div(residue - a.lo(), stride);  // ceil((lo - r)/stride)
  const Index new_vt = floor_div(a.valid_to() - residue, stride);
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    using Coeffs = std::decay_t<decltype(ca)>;
    if (new_vt < new_lo) return ring.make(a.frac24(), new_vt + 1, Coeffs{});
    Coeffs out;
    out.reserve(static_cast<std::size_t>(new_vt - new_lo + 1));
    for (Index m = new_lo; m <= new_vt; ++m) {
      out.push_back(ca[static_cast<std::size_t>(stride * m + residue - a.lo())]);
    }
    return ring.make(a.frac24(), new_lo, std::move(out));
  });
}

Series reduce_mod(const Series& a, Modulus m) {
  check_modulus(m);
  Series::ResidueCoeffs out;
  out.reserve(a.size());
  if (a.is_exact()) {
    for (const auto& c : a.exact_coeffs()) out.push_back(reduce(c, m));
  } else {
    if (a.modulus() % m != 0) {
      throw ModulusMismatch("reduce_mod: " + std::to_string(m) + " does not divide " +
                            std::to_string(a.modulus()));
    }
    for (auto c : a.residue_coeffs()) out.push_back(c % m);
  }
  return Series::residues(a.frac24(), a.lo(), std::move(out), m);
}

Series shift(const Series& a, Index k) { return retag(a, a.frac24(), k); }

Series retag(const Series& a, int frac24, Index index_shift) {
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    return ring.make(frac24, a.lo() + index_shift, ca);
  });
}

Series divide_one_minus_qm(const Series& a, Index m) {
  if (m < 1) throw std::invalid_argument("divide_one_minus_qm: m must be positive");
  return with_ring(a, [&](const auto& ring, const auto& ca) {
    auto out = ca;
    const auto step = static_cast<std::size_t>(m);
    for (std::size_t i = step; i < out.size(); ++i) out[i] = ring.add(out[i], out[i - step]);
    return ring.make(a.frac24(), a.lo(), std::move(out));
  });
}

std::optional<Index> first_mismatch(const Series& a, const Series& b, Index from, Index to) {
  if (a.frac24() != b.frac24()) throw GridMismatch("first_mismatch: grid mismatch");
  if (a.valid_to() < to || b.valid_to() < to) {
    throw ValidityError("first_mismatch: comparison through " + std::to_string(to) +
                        " exceeds validity of " + a.describe() + " / " + b.describe());
  }
  if (a.is_exact() && b.is_exact()) {
    for (Index n = from; n <= to; ++n) {
      if (a.coeff(n) != b.coeff(n)) return n;
    }
    return std::nullopt;
  }
  Modulus m = a.is_exact() ? b.modulus() : a.modulus();
  if (!a.is_exact() && !b.is_exact() && a.modulus() != b.modulus()) {
    throw ModulusMismatch("first_mismatch: modulus mismatch");
  }
  const Series ra = a.is_exact() ? reduce_mod(a, m) : a;
  const Series rb = b.is_exact() ? reduce_mod(b, m) : b;
  for (Index n = from; n <= to; ++n) {
    if (ra.residue(n) != rb.residue(n)) return n;
  }
  return std::nullopt;
}

}  // namespace sptlab
