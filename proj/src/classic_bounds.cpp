#include "codebounds/classic_bounds.hpp"

#include "codebounds/entropy.hpp"
#include "codebounds/errors.hpp"

#include <string>

namespace codebounds {

namespace {

// Largest integer r with r^k <= v.
unsigned long integer_root(unsigned long v, unsigned long k) {
  mpz_class r;
  mpz_root(r.get_mpz_t(), mpz_class(v).get_mpz_t(), k);
  return r.get_ui();
}

bool exact_root(unsigned long v, unsigned long k, unsigned long& root) {
  root = integer_root(v, k);
  mpz_class back;
  mpz_ui_pow_ui(back.get_mpz_t(), root, k);
  return back == v;
}

void check_delta_unit(const Real& delta) {
  if (delta < 0 || delta > 1) throw DomainError("delta must lie in [0,1]");
}

void check_gamma(const Real& gamma) {
  if (gamma <= 0) throw DomainError("gamma must be positive");
}

}  // namespace

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool is_prime_power(unsigned long q) {
  if (q < 2) return false;
  unsigned long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

IharaProfile::IharaProfile(unsigned long q_, Real gamma_, std::map<int, Real> gamma_l_)
    : q(q_), gamma(std::move(gamma_)), gamma_l(std::move(gamma_l_)) {
  if (!is_prime_power(q)) throw InputError("q = " + std::to_string(q) + " is not a prime power");
  if (gamma <= 0) throw InputError("gamma must be positive");
  for (const auto& [l, g] : gamma_l) {
    if (l < 1) throw InputError("gamma_l needs a degree l >= 1, got " + std::to_string(l));
    if (g < 0) throw InputError("gamma_" + std::to_string(l) + " must be non-negative");
  }
}

Real IharaProfile::gamma_at(int l) const {
  if (auto it = gamma_l.find(l); it != gamma_l.end()) return it->second;
  return l == 1 ? gamma : Real(gamma.precision());
}

Real IharaLower::value(Bits prec) const {
  if (!exact) throw InputError("no built-in value of A(q): supply gamma explicitly");
  return Real(*exact, prec);
}

IharaLower ihara_lower(unsigned long q) {
  if (!is_prime_power(q)) throw InputError("q = " + std::to_string(q) + " is not a prime power");
  IharaLower out;
  unsigned long r = 0;
  if (exact_root(q, 2, r)) {
    out.kind = IharaKind::square;
    out.exact = mpq_class(static_cast<long>(r) - 1);
  } else if (exact_root(q, 3, r)) {
    out.kind = IharaKind::cube;
    mpq_class v(mpz_class(2) * (mpz_class(r) * r - 1), mpz_class(r) + 2);
    v.canonicalize();
    out.exact = v;
  }
  return out;
}

IharaProfile default_profile(unsigned long q, Bits prec) {
  return IharaProfile(q, ihara_lower(q).value(prec));
}

Real gv_bound(unsigned long q, const Real& delta) {
  if (q < 2) throw InputError("q must be >= 2");
  const Bits prec = delta.precision();
  const Real plotkin(mpq_class(static_cast<long>(q - 1), static_cast<long>(q)), prec);
  if (delta < 0 || delta > plotkin) {
    throw DomainError("gv_bound: delta must lie in (0, (q-1)/q)");
  }
  if (delta.is_zero()) return Real(1L, prec);
  if (delta == plotkin) return Real(prec);
  const QaryLog lq(q, prec);
  return 1 - delta * lq.log(Real(static_cast<long>(q - 1), prec)) + lq.xlog(delta) + lq.xlog(1 - delta);
}

Real tvz_bound(const Real& delta, const Real& gamma) {
  check_gamma(gamma);
  check_delta_unit(delta);
  return 1 - delta - 1 / gamma;
}

Real no1_bound(unsigned long q, const Real& delta, const Real& gamma) {
  const Real base = tvz_bound(delta, gamma);
  const QaryLog lq(q, base.precision());
  const Real q3 = pow(Real(static_cast<long>(q), base.precision()), 3);
  return base + log1p(1 / q3) / lq.ln_q();
}

}  // namespace codebounds
