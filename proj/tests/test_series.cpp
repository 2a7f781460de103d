#include <doctest.h>

#include "sptlab/forms.hpp"
#include "sptlab/series.hpp"

using namespace sptlab;

namespace {

Series ints(int frac24, Index lo, std::initializer_list<long> cs) {
  Series::ExactCoeffs v;
  for (long c : cs) v.push_back(Integer(c));
  return Series::exact(frac24, lo, std::move(v));
}

bool all_zero(const Series& s) {
  for (Index n = s.lo(); n <= s.valid_to(); ++n)
    if (s.coeff(n) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("grid helpers") {
  CHECK(grid_offset(0) == 0);
  CHECK(grid_offset(12) == 12);
  CHECK(grid_offset(13) == -11);
  CHECK(grid_offset(23) == -1);
  CHECK(exponent24(1, 23) == 23);
  auto g = split_exponent24(-1);
  CHECK(g.index == 0);
  CHECK(g.frac24 == 23);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 5) == 3);
}

TEST_CASE("series construction and reads") {
  Series s = ints(0, -1, {1, 744, 196884});
  CHECK(s.size() == 3);
  CHECK(s.valid_to() == 1);
  CHECK(s.coeff(-2) == 0);
  CHECK(s.coeff(0) == 744);
  CHECK_THROWS_AS(s.coeff(2), ValidityError);
  CHECK_THROWS_AS(s.truncated(5), ValidityError);

  Series r = Series::residues(0, 0, {3, 4}, 5);
  CHECK(r.residue(1) == 4);
  CHECK(Series::residues(0, 0, {7}, 5).residue(0) == 2);
}

TEST_CASE("series_add examples") {
  Series e4 = eisenstein(4, 30);
  CHECK(all_zero(add(e4, e4, 1, -1)));

  auto [delta, j] = delta_j(60);
  Series lhs = reduce_mod(add(pow(eisenstein(4, 60), 3), delta, 1, -720), 65520);
  CHECK(lhs.residue(0) == 1);
  for (Index n = 1; n <= 60; ++n) CHECK(lhs.residue(n) == 0);

  Series one = Series::monomial(1, 0, 0, 3);
  Series q = Series::monomial(1, 1, 0, 3);
  Series sum = add(one, q, 2, 3);
  CHECK(sum.coeff(0) == 2);
  CHECK(sum.coeff(1) == 3);
  CHECK(sum.coeff(2) == 0);

  CHECK_THROWS_AS(add(one, Series::monomial(1, 0, 1, 3)), GridMismatch);
  CHECK_THROWS_AS(add(reduce_mod(one, 5), reduce_mod(one, 7)), ModulusMismatch);
}

TEST_CASE("series_mul examples") {
  const Index N = 40;
  Series e = euler_product(N);
  Series p = invert(e);
  Series one = e * p;
  CHECK(one.coeff(0) == 1);
  for (Index n = 1; n <= N; ++n) CHECK(one.coeff(n) == 0);

  auto [delta, j] = delta_j(N);
  Series jd = j * delta;
  Series e43 = pow(eisenstein(4, N), 3);
  CHECK(!first_mismatch(jd, e43, 0, N - 1));

  Series a = Series::monomial(1, 0, 23, 5);  // q^{-1/24}
  Series b = Series::monomial(1, 0, 1, 5);   // q^{1/24}
  Series ab = a * b;
  CHECK(ab.frac24() == 0);
  CHECK(ab.coeff(0) == 1);
  CHECK(ab.coeff(1) == 0);
}

TEST_CASE("series_mul carries the fractional tag") {
  // q^{12/24} * q^{12/24} = q
  Series h = Series::monomial(1, 0, 12, 4);
  Series hh = h * h;
  CHECK(hh.frac24() == 0);
  CHECK(hh.leading_index() == 1);
}

TEST_CASE("series_invert examples") {
  Series p = invert(euler_product(10));
  CHECK(p.coeff(4) == 5);

  Series q = Series::monomial(1, 1, 0, 6);
  Series qi = invert(q);
  CHECK(qi.lo() == -1);
  CHECK(qi.coeff(-1) == 1);
  CHECK(qi.coeff(0) == 0);

  auto [delta, j] = delta_j(10);
  Series di = invert(delta);
  CHECK(di.leading_index() == -1);
  CHECK(di.coeff(-1) == 1);

  CHECK_THROWS_AS(invert(ints(0, 0, {2, 1})), NonUnitError);
  CHECK_THROWS_AS(invert(Series::zero(0, 5)), NonUnitError);
}

TEST_CASE("invert keeps relative precision") {
  // (1 - q) known through q^5 gives 1/(1-q) through q^5
  Series a = ints(0, 0, {1, -1, 0, 0, 0, 0});
  Series b = invert(a);
  CHECK(b.valid_to() == 5);
  for (Index n = 0; n <= 5; ++n) CHECK(b.coeff(n) == 1);
}

TEST_CASE("series_pow examples") {
  const Index N = 30;
  Series delta = shift(pow(euler_product(N), 24), 1);
  auto dj = delta_j(N);
  CHECK(!first_mismatch(delta, dj.delta, 1, N));

  Series e = eisenstein(4, 10);
  Series z = pow(e, 0);
  CHECK(z.coeff(0) == 1);
  for (Index n = 1; n <= z.valid_to(); ++n) CHECK(z.coeff(n) == 0);

  // (eta(z)/eta(5z))^6
  Series eta = eta_pow(1, N);
  Series g = pow(eta * invert(dilate(eta, 5)), 6);
  CHECK(g.frac24() == 0);
  CHECK(g.leading_index() == -1);
  CHECK(g.coeff(-1) == 1);
}

TEST_CASE("series_dilate examples") {
  const Index N = 50;
  Series e5 = dilate(euler_product(N), 5);
  Series direct = euler_product(5 * N + 4);
  for (Index n = 0; n <= e5.valid_to(); ++n) {
    CHECK(e5.coeff(n) == (n % 5 == 0 ? direct.coeff(n / 5) : Integer(0)));
  }
  CHECK(e5.valid_to() == 5 * N + 4);

  Series root = Series::monomial(1, 0, 1, 3);
  Series q = dilate(root, 24);
  CHECK(q.frac24() == 0);
  CHECK(q.coeff(1) == 1);
  CHECK(q.coeff(0) == 0);

  Series e2 = eisenstein(2, 20);
  Series t_e2 = scale(dilate(e2, 5), 5);
  CHECK(t_e2.coeff(0) == 5);
  CHECK(t_e2.coeff(5) == -120);
}

TEST_CASE("series_qderiv examples") {
  const Index N = 60;
  auto [delta, j] = delta_j(N + 2);
  Series e2 = eisenstein(2, N + 2);
  CHECK(!first_mismatch(qderiv(delta), delta * e2, 1, N));

  CHECK(all_zero(qderiv(Series::monomial(7, 0, 0, 5))));

  Series e4 = eisenstein(4, N + 2), e6 = eisenstein(6, N + 2);
  Series lhs = qderiv(j) * delta;
  Series rhs = scale(pow(e4, 2) * e6, -1);
  CHECK(!first_mismatch(lhs, rhs, 0, N));

  CHECK_THROWS_AS(qderiv(Series::monomial(1, 0, 23, 5)), GridMismatch);
}

TEST_CASE("series_extract examples") {
  Series s = ints(0, 0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  Series u = extract(s, 5, 0);
  CHECK(u.lo() == 0);
  CHECK(u.valid_to() == 2);
  CHECK(u.coeff(1) == 5);
  CHECK(u.coeff(2) == 10);

  Series id = extract(s, 1, 0);
  CHECK(!first_mismatch(id, s, 0, 10));

  // residue 4 with stride 5 picks indices 5m - 1
  Series t = ints(23, -1, {-1, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  Series v = extract(t, 5, -1);
  CHECK(v.frac24() == 23);
  CHECK(v.coeff(0) == t.coeff(-1));
  CHECK(v.coeff(1) == t.coeff(4));
  CHECK(v.coeff(2) == t.coeff(9));
  CHECK(v.valid_to() == 2);
}

TEST_CASE("series_reduce_mod examples") {
  const Index N = 80;
  auto [delta, j] = delta_j(N);
  Series e4 = eisenstein(4, N);
  Series r = reduce_mod(pow(e4, 3) - scale(delta, 720), 65520);
  Series sq = reduce_mod(pow(e4, 2), 32);
  for (Index n = 0; n <= N; ++n) {
    CHECK(r.residue(n) == (n == 0 ? 1u : 0u));
    CHECK(sq.residue(n) == (n == 0 ? 1u : 0u));
  }
  Series z = reduce_mod(Series::zero(0, 10), 7);
  for (Index n = 0; n <= 10; ++n) CHECK(z.residue(n) == 0);

  Series neg = reduce_mod(ints(0, 0, {-1, -13}), 5);
  CHECK(neg.residue(0) == 4);
  CHECK(neg.residue(1) == 2);

  Series m15 = reduce_mod(ints(0, 0, {14}), 15);
  CHECK(reduce_mod(m15, 5).residue(0) == 4);
  CHECK_THROWS(reduce_mod(m15, 7));
}

TEST_CASE("series_coeff examples") {
  auto [delta, j] = delta_j(5);
  CHECK(j.coeff(1) == 196884);
  CHECK(j.coeff(-2) == 0);
  CHECK(eisenstein(6, 5).coeff(1) == -504);
}

TEST_CASE("divide_one_minus_qm matches inversion") {
  Series a = eisenstein(4, 30);
  Series oneminus = add(Series::monomial(1, 0, 0, 30), Series::monomial(1, 3, 0, 30), 1, -1);
  Series direct = a * invert(oneminus);
  CHECK(!first_mismatch(divide_one_minus_qm(a, 3), direct, 0, 30));
}

TEST_CASE("first_mismatch reports the smallest index") {
  Series a = ints(0, 0, {1, 2, 3, 4});
  Series b = ints(0, 0, {1, 2, 9, 5});
  auto m = first_mismatch(a, b, 0, 3);
  REQUIRE(m);
  CHECK(*m == 2);
  CHECK(first_mismatch(a, reduce_mod(ints(0, 0, {6, 7, 8, 9}), 5), 0, 3) == std::nullopt);
}

TEST_CASE("residue helpers") {
  CHECK(inverse_mod(3, 7) == 5u);
  CHECK(!inverse_mod(5, 10));
  CHECK(pow_mod(5, 6, 1000003) == 15625u);
  CHECK(reduce(Integer(-1), 24) == 23u);
  CHECK(reduce(std::int64_t{-25}, 24) == 23u);
}
