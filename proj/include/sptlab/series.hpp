#pragma once

// Truncated Laurent q-series on a 1/24 exponent grid.
//
// A Series stores the coefficients of
//
//     sum_{n = lo}^{valid_to} c(n) q^{n + offset(frac24)/24}
//
// where offset(f) = f for f <= 12 and f - 24 otherwise, so frac24 = 23 is the
// q^{n - 1/24} grid and frac24 = 0 is the ordinary integer grid. Coefficients
// are either exact integers (modulus 0) or residues in [0, M).
//
// Every coefficient at an index <= valid_to is correct; nothing is known past
// valid_to, and reading there throws ValidityError.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace sptlab {

using Integer = mpz_class;
using Index = std::int64_t;
using Modulus = std::uint64_t;

/// Largest modulus accepted for residue arithmetic (products must fit 64 bits).
inline constexpr Modulus kMaxModulus = Modulus{1} << 32;

struct ValidityError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModulusMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonUnitError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Signed offset in 24ths for a grid tag: 0..12 map to themselves, 13..23 to -11..-1.
constexpr int grid_offset(int frac24) { return frac24 > 12 ? frac24 - 24 : frac24; }

/// 24 * exponent of the term at index n on grid frac24.
constexpr Index exponent24(Index n, int frac24) { return 24 * n + grid_offset(frac24); }

/// Floor division and nonnegative remainder for signed operands.
constexpr Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr Index mod_floor(Index a, Index b) { return a - b * floor_div(a, b); }

/// Splits a 24ths exponent into (index, frac24).
struct GridPoint {
  Index index;
  int frac24;
};
constexpr GridPoint split_exponent24(Index e24) {
  int f = static_cast<int>(mod_floor(e24, 24));
  return {(e24 - grid_offset(f)) / 24, f};
}

/// Residue arithmetic helpers for moduli below kMaxModulus.
Modulus reduce(const Integer& x, Modulus m);
Modulus reduce(std::int64_t x, Modulus m);
std::optional<Modulus> inverse_mod(Modulus a, Modulus m);
Modulus pow_mod(Modulus base, std::uint64_t e, Modulus m);

class Series {
 public:
  using ExactCoeffs = std::vector<Integer>;
  using ResidueCoeffs = std::vector<Modulus>;

  /// Empty exact series on the integer grid (nothing known past index -1).
  Series() = default;

  static Series exact(int frac24, Index lo, ExactCoeffs coeffs);
  static Series residues(int frac24, Index lo, ResidueCoeffs coeffs, Modulus m);
  /// Zero through valid_to on the given grid.
  static Series zero(int frac24, Index valid_to, Modulus m = 0);
  /// c * q^{index} on grid frac24, exact (zero elsewhere) through valid_to.
  static Series monomial(const Integer& c, Index index, int frac24, Index valid_to,
                         Modulus m = 0);

  int frac24() const { return frac24_; }
  Index lo() const { return lo_; }
  Index valid_to() const { return lo_ + static_cast<Index>(size()) - 1; }
  Modulus modulus() const { return modulus_; }
  bool is_exact() const { return modulus_ == 0; }
  std::size_t size() const;

  /// Coefficient at integer index n; zero below lo, ValidityError past valid_to.
  Integer coeff(Index n) const;
  /// Residue at index n; requires a modular series.
  Modulus residue(Index n) const;
  bool is_zero_at(Index n) const;

  const ExactCoeffs& exact_coeffs() const;
  const ResidueCoeffs& residue_coeffs() const;

  /// Lowest index with a nonzero coefficient, if any within validity.
  std::optional<Index> leading_index() const;

  /// Same series with leading zeros dropped (lo raised, validity unchanged).
  Series trimmed() const;
  /// Same series forgetting coefficients past new_valid_to (must not extend).
  Series truncated(Index new_valid_to) const;

  std::string describe() const;

 private:
  int frac24_ = 0;
  Index lo_ = 0;
  Modulus modulus_ = 0;
  std::variant<ExactCoeffs, ResidueCoeffs> data_;
};

/// c1*a + c2*b. Grids and moduli must agree.
Series add(const Series& a, const Series& b, const Integer& c1 = 1, const Integer& c2 = 1);
Series scale(const Series& a, const Integer& c);
/// Cauchy product; frac tags add mod 24 with carry into the index.
Series mul(const Series& a, const Series& b);
/// Laurent inverse; the lowest nonzero coefficient must be +-1 (or a unit mod M).
Series invert(const Series& a);
/// a^k by square-and-multiply; negative k goes through invert.
Series pow(const Series& a, std::int64_t k);
/// z -> t z: every exponent e becomes t e.
Series dilate(const Series& a, std::int64_t t);
/// q d/dq; integer grid only.
Series qderiv(const Series& a);
/// new[m] = old[stride*m + residue], frac tag carried unchanged.
Series extract(const Series& a, std::int64_t stride, std::int64_t residue);
/// Coefficients reduced into [0, m). Exact input, or modular input with m | modulus.
Series reduce_mod(const Series& a, Modulus m);
/// Multiplication by q^k (integer k): index shift.
Series shift(const Series& a, Index k);
/// Reinterpret on another grid: index n becomes n + index_shift, tag frac24.
Series retag(const Series& a, int frac24, Index index_shift = 0);
/// a / (1 - q^m) for m >= 1 via the prefix recurrence b[i] = a[i] + b[i-m].
Series divide_one_minus_qm(const Series& a, Index m);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return add(a, b, 1, -1); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

/// Smallest index in [from, to] where a and b disagree. Both series must be
/// valid through `to`; an exact series is compared after reduction when the
/// other operand is modular.
std::optional<Index> first_mismatch(const Series& a, const Series& b, Index from, Index to);

}  // namespace sptlab
