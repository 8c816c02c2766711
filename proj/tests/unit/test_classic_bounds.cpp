#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codebounds/classic_bounds.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/rational.hpp"
#include "oracles.hpp"

using namespace codebounds;

namespace {
const Bits P{768};
Real R(const char* s) { return parse_real(s, P); }
const char* kDelta71 =
    "13763868443250238929521503984833381597731412559044/46065097831342932365531985486767649347321318605709";

// 1 - d log_q(q-1) + d log_q d + (1-d) log_q(1-d) with the series logarithm.
Real gv_oracle(unsigned long q, const Real& d) {
  return 1 - d * oracle::logq(Real(static_cast<long>(q - 1), P), q) + oracle::xlogq(d, q) + oracle::xlogq(1 - d, q);
}
}  // namespace

TEST_CASE("prime powers") {
  for (unsigned long q : {2UL, 3UL, 4UL, 8UL, 9UL, 49UL, 64UL, 2097152UL, 1024UL * 1024 * 1024}) CHECK(is_prime_power(q));
  for (unsigned long q : {0UL, 1UL, 6UL, 10UL, 12UL, 100UL}) CHECK_FALSE(is_prime_power(q));
}

TEST_CASE("ihara_lower built-in values") {
  CHECK(*ihara_lower(64).exact == 7);
  CHECK(ihara_lower(64).kind == IharaKind::square);
  CHECK(*ihara_lower(49).exact == 6);
  const IharaLower cube = ihara_lower(2097152);
  CHECK(cube.kind == IharaKind::cube);
  CHECK(*cube.exact == mpq_class(16383, 65));
  CHECK(cube.value(P).to_fixed(10) == "252.0461538461");
  const IharaLower unknown = ihara_lower(7);
  CHECK_FALSE(unknown.known());
  CHECK_THROWS_AS(unknown.value(P), InputError);
  CHECK_THROWS_AS(ihara_lower(6), InputError);
  CHECK_THROWS_AS(default_profile(32, P), InputError);
  CHECK(default_profile(49, P).gamma == 6);
}

TEST_CASE("ihara_lower on prime squares") {
  for (unsigned long p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    CHECK(*ihara_lower(p * p).exact == static_cast<long>(p) - 1);
  }
}

TEST_CASE("gv endpoints and oracle") {
  for (unsigned long q : {2UL, 3UL, 64UL}) {
    CHECK(gv_bound(q, Real(P)) == 1);
    const Real plotkin(mpq_class(static_cast<long>(q - 1), static_cast<long>(q)), P);
    CHECK(oracle::within_ulps(gv_bound(q, plotkin), Real(P), 4));
    CHECK(abs(gv_bound(q, Real::pow2(-200, P)) - 1) < R("1e-50"));
    CHECK_THROWS_AS(gv_bound(q, plotkin + R("1e-30")), DomainError);
    CHECK_THROWS_AS(gv_bound(q, R("-1e-30")), DomainError);
  }
  const Real v = gv_bound(2, R("0.11"));
  CHECK(oracle::within_ulps(v, gv_oracle(2, R("0.11")), 8));
  CHECK(v.to_fixed(30) == "0.500084041835472004359500405869");
  for (const char* d : {"0.01", "0.3", "0.9"}) CHECK(oracle::within_ulps(gv_bound(64, R(d)), gv_oracle(64, R(d)), 8));
}

TEST_CASE("gv strictly decreasing") {
  Real prev(2L, P);
  for (int i = 1; i < 1000; ++i) {
    const Real d = Real(mpq_class(i, 2000), P);
    const Real v = gv_bound(2, d);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("tvz") {
  CHECK(tvz_bound(Real(P), Real(7L, P)) == R("6/7"));
  const Real d = R(kDelta71);
  const mpq_class exact = mpq_class(6, 7) - RationalInput::parse(kDelta71).value();
  CHECK(oracle::within_ulps(tvz_bound(d, Real(7L, P)), Real(exact, P), 4));
  CHECK(tvz_bound(d, Real(7L, P)).to_fixed(8) == "0.55835116");
  CHECK(tvz_bound(Real(1L, P), Real(2L, P)) == R("-1/2"));
  CHECK_THROWS_AS(tvz_bound(R("0.2"), Real(P)), DomainError);
  CHECK_THROWS_AS(tvz_bound(R("0.2"), R("-1")), DomainError);
}

TEST_CASE("no1") {
  for (unsigned long q : {2UL, 9UL, 64UL, 2097152UL}) {
    for (const char* d : {"0", "0.25", "0.6"}) {
      const Real diff = no1_bound(q, R(d), R("3.5")) - tvz_bound(R(d), R("3.5"));
      const Real expect = oracle::logq(1 + 1 / pow(Real(static_cast<long>(q), P), 3), q);
      CHECK(diff > 0);
      CHECK(oracle::within_ulps(diff, expect, 16));
    }
  }
  const Real v = no1_bound(64, Real(P), Real(7L, P));
  CHECK(oracle::within_ulps(v, R("6/7") + oracle::logq(1 + Real::pow2(-18, P), 64), 8));
  // 1 - 1 - 1 + log_2(9/8)
  CHECK(oracle::within_ulps(no1_bound(2, Real(1L, P), Real(1L, P)), oracle::logq(R("9/8"), 2) - 1, 8));
}

TEST_CASE("IharaProfile validation") {
  CHECK_THROWS_AS(IharaProfile(6, Real(1L, P)), InputError);
  CHECK_THROWS_AS(IharaProfile(4, Real(P)), InputError);
  CHECK_THROWS_AS(IharaProfile(4, Real(1L, P), {{2, R("-0.1")}}), InputError);
  CHECK_THROWS_AS(IharaProfile(4, Real(1L, P), {{0, R("0.1")}}), InputError);
  const IharaProfile p(4, Real(1L, P), {{2, R("0.25")}});
  CHECK(p.gamma_at(1) == 1);
  CHECK(p.gamma_at(2) == R("0.25"));
  CHECK(p.gamma_at(3).is_zero());
  const IharaProfile over(4, Real(1L, P), {{1, R("0.5")}});
  CHECK(over.gamma_at(1) == R("0.5"));
}
