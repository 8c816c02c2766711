#include "codebounds/rational.hpp"

#include "codebounds/errors.hpp"

#include <cctype>
#include <string>

namespace codebounds {

namespace {

std::string trim(std::string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  for (std::string_view tail : {"...", "…"}) {
    if (s.size() > tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0) {
      s.erase(s.size() - tail.size());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    }
  }
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed integer in '" + std::string(whole) + "'");
  mpz_class v(std::string(s), 10);
  return negative ? mpz_class(-v) : v;
}

mpq_class parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mpz_class ev = parse_integer(s.substr(e + 1), whole);
    if (!ev.fits_slong_p()) throw InputError("exponent out of range in '" + std::string(whole) + "'");
    exp10 = ev.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw InputError("malformed decimal '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw InputError("malformed number '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  mpz_class mant(digits, 10);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class v = exp10 < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
  v.canonicalize();
  return negative ? mpq_class(-v) : v;
}

}  // namespace

RationalInput::RationalInput(mpz_class numerator, mpz_class denominator) {
  if (denominator == 0) throw InputError("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

RationalInput::RationalInput(const mpq_class& value) : value_(value) { value_.canonicalize(); }

RationalInput RationalInput::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw InputError("empty numeric literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_integer(std::string_view(s).substr(0, slash), s);
    mpz_class den = parse_integer(std::string_view(s).substr(slash + 1), s);
    return RationalInput(num, den);
  }
  if (auto caret = s.find('^'); caret != std::string::npos) {
    mpz_class base = parse_integer(std::string_view(s).substr(0, caret), s);
    mpz_class e = parse_integer(std::string_view(s).substr(caret + 1), s);
    if (!e.fits_slong_p() || abs(e) > 100000) throw InputError("exponent out of range in '" + s + "'");
    long k = e.get_si();
    if (base == 0 && k < 0) throw InputError("zero to a negative power in '" + s + "'");
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? RationalInput(mpz_class(1), p) : RationalInput(p, mpz_class(1));
  }
  return RationalInput(parse_decimal(s, s));
}

bool exact_integer_power(const mpq_class& x, unsigned long base, long& k) {
  if (sgn(x) <= 0 || base < 2) return false;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long sign = 1;
  mpz_class target = num;
  if (num == 1 && den != 1) {
    target = den;
    sign = -1;
  } else if (den != 1) {
    return false;
  }
  long count = 0;
  while (target > 1) {
    if (mpz_divisible_ui_p(target.get_mpz_t(), base) == 0) return false;
    target /= base;
    ++count;
  }
  k = sign * count;
  return true;
}

}  // namespace codebounds
