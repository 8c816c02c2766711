#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"
#include "codebounds/rational.hpp"
#include "oracles.hpp"

#include <random>

using namespace codebounds;

namespace {
const Bits P{768};
Real R(const char* s, Bits prec = P) { return parse_real(s, prec); }
}  // namespace

TEST_CASE("logq exact integer powers") {
  CHECK(logq(Real(8L, P), 2) == 3);
  CHECK(logq(Real(64L, P), 64) == 1);
  CHECK(logq(Real(1L, P), 5) == 0);
  CHECK(logq(R("1/64"), 2) == -6);
  CHECK(logq(Real(2097152L, P), 2) == 21);
}

TEST_CASE("logq matches the series oracle") {
  const Real v = logq(Real(3L, P), 2);
  CHECK(oracle::within_ulps(v, oracle::logq(Real(3L, P), 2), 4));
  CHECK(v.to_fixed(16) == "1.5849625007211561");
  for (unsigned long q : {2UL, 3UL, 49UL, 64UL, 2097152UL}) {
    for (const char* x : {"0.3", "7/11", "123.5", "1e-40"}) {
      CHECK(oracle::within_ulps(logq(R(x), q), oracle::logq(R(x), q), 8));
    }
  }
}

TEST_CASE("logq domain") {
  CHECK_THROWS_AS(logq(Real(P), 2), DomainError);
  CHECK_THROWS_AS(logq(Real(-1L, P), 2), DomainError);
  CHECK_THROWS_AS(logq(Real(2L, P), 1), InputError);
}

TEST_CASE("xlogq") {
  CHECK(xlogq(Real(P), 2).is_zero());
  CHECK(xlogq(Real(1L, P), 7).is_zero());
  CHECK(xlogq(R("1/2"), 2) == R("-1/2"));
  CHECK_THROWS_AS(xlogq(R("-0.1"), 2), DomainError);
  CHECK_THROWS_AS(xlogq(R("1.1"), 2), DomainError);
}

TEST_CASE("entropy values") {
  CHECK(entropy_q(Real(P), 64).is_zero());
  CHECK(entropy_q(Real(1L, P), 64).is_zero());
  CHECK(entropy_q(R("1/2"), 2) == 1);
  const Real e = entropy_q(R("1/4"), 2);
  CHECK(oracle::within_ulps(e, oracle::entropy(R("1/4"), 2), 4));
  CHECK(e.to_fixed(16) == "0.8112781244591328");
  CHECK_THROWS_AS(entropy_q(R("1.5"), 2), DomainError);
  CHECK_THROWS_AS(entropy_q(R("-1e-9"), 2), DomainError);
}

TEST_CASE("entropy symmetry and concavity on random points") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const QaryLog lq(7, P);
  for (int i = 0; i < 1000; ++i) {
    const Real x(unit(rng), P);
    CHECK(oracle::within_ulps(lq.entropy(x), lq.entropy(1 - x), 2));
  }
  for (int i = 0; i < 300; ++i) {
    const Real a(unit(rng), P);
    const Real b(unit(rng), P);
    const Real mid = lq.entropy((a + b) / 2);
    const Real chord = (lq.entropy(a) + lq.entropy(b)) / 2;
    CHECK(mid >= chord - 2 * max(abs(chord), Real(1L, P)).ulp());
  }
}

TEST_CASE("Stirling consistency of binomial logs") {
  const Real target = entropy_q(R("1/3"), 2);
  Real previous(1L, P);
  for (long n : {100L, 1000L, 10000L}) {
    const Real lb = logq(Real(oracle::binomial(n, n / 3), P), 2) / n;
    const Real err = abs(lb - target);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < R("0.01"));
}

TEST_CASE("precision degradation stays within half the low precision") {
  const Bits lo{64};
  auto close = [&](const Real& hi, const Real& low) {
    return abs(hi - low.with_precision(P)) <= Real::pow2(-32, P) * max(abs(hi), Real(1L, P));
  };
  CHECK(close(logq(Real(3L, P), 2), logq(Real(3L, lo), 2)));
  CHECK(close(entropy_q(R("1/4"), 2), entropy_q(R("1/4", lo), 2)));
  CHECK(close(entropy_q(R("0.701208"), 64), entropy_q(R("0.701208", lo), 64)));
}

TEST_CASE("RationalInput literals") {
  CHECK(RationalInput::parse("0.1").value() == mpq_class(1, 10));
  CHECK(RationalInput::parse("32766/130").value() == mpq_class(16383, 65));
  CHECK(RationalInput::parse("32766/130").denominator() == 65);
  CHECK(RationalInput::parse("2^21").value() == mpq_class(2097152));
  CHECK(RationalInput::parse("10^-3").value() == mpq_class(1, 1000));
  CHECK(RationalInput::parse("3.41e-16").value() == mpq_class(mpz_class(341), mpz_class("1000000000000000000")));
  CHECK(RationalInput::parse("0.29879169026501515839...").value() ==
        mpq_class(mpz_class("29879169026501515839"), mpz_class("100000000000000000000")));
  CHECK(RationalInput::parse("-6/4").value() == mpq_class(-3, 2));
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "0^-1", "3/x"}) {
    CHECK_THROWS_AS(RationalInput::parse(bad), InputError);
  }
}

TEST_CASE("Real precision contract") {
  CHECK_THROWS_AS(Real(Bits{32}), InputError);
  const Real a(1L, Bits{128});
  const Real b(1L, Bits{256});
  CHECK((a + b).precision() == Bits{128});
  CHECK((b * 3).precision() == Bits{256});
  CHECK(R("1/3").to_fixed(5) == "0.33333");
  CHECK(R("2/3").to_fixed(5) == "0.66666");
  CHECK(R("2/3").to_fixed(5, MPFR_RNDN) == "0.66667");
  CHECK(Real(1L, P) / 3 < Real(1L, P) / 2);
}
