#include "codebounds/vector_index.hpp"

#include "codebounds/errors.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace codebounds {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;
constexpr std::uint64_t kStorageCap = std::uint64_t{1} << 28;

void require_same_shape(const IndexedVector& a, const IndexedVector& b) {
  if (a.q() != b.q() || a.m() != b.m() || a.n() != b.n()) throw InputError("vectors differ in shape");
}

// q^e, or 0 once it exceeds `cap`.
std::uint64_t bounded_power(int q, long e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (long i = 0; i < e; ++i) {
    out *= static_cast<std::uint64_t>(q);
    if (out > cap) return 0;
  }
  return out;
}

std::uint64_t space_size(int q, int m, int n) {
  const std::uint64_t s = bounded_power(q, static_cast<long>(m) * n, kEnumerationCap);
  if (s == 0) throw InputError("q^(mn) exceeds the enumeration cap of 10^7");
  return s;
}

std::vector<long> floors_of(const std::vector<mpq_class>& xs, int n) {
  std::vector<long> out;
  mpq_class total = 0;
  for (const mpq_class& x : xs) {
    if (sgn(x) < 0) throw InputError("x entries must be non-negative");
    total += x;
    mpz_class f;
    mpz_class num = x.get_num() * n;
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    out.push_back(f.get_si());
  }
  if (total > 1) throw InputError("x entries must sum to at most 1");
  return out;
}

mpz_class binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

bool is_small_prime(int q) { return q == 2 || q == 3 || q == 5 || q == 7; }

int mod(long v, int q) { return static_cast<int>(((v % q) + q) % q); }

FqPoly normalized(FqPoly f, int q) {
  for (int& c : f) c = mod(c, q);
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

std::uint64_t code_of(const FqPoly& f, int q) {
  std::uint64_t k = 0;
  for (std::size_t i = f.size(); i-- > 0;) k = k * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(f[i]);
  return k;
}

std::vector<int> zero_multiplicities(const ToyCode& code, const FqPoly& f) {
  std::vector<int> v;
  for (int a : code.eval_points()) v.push_back(root_multiplicity(f, a, code.q()));
  return v;
}

FqPoly checked_word(const ToyCode& code, const FqPoly& f) {
  FqPoly g = normalized(f, code.q());
  if (g.empty()) throw InputError("f must be non-zero");
  if (static_cast<int>(g.size()) - 1 > code.r()) throw InputError("deg f exceeds the code's degree bound");
  return g;
}

template <class Count>
CoveringResult covering_impl(int q, int m, int n, const std::vector<mpq_class>& xs,
                             const std::vector<IndexedVector>& subset, Count&& best_of) {
  for (const IndexedVector& v : subset) {
    if (v.q() != q || v.m() != m || v.n() != n) throw InputError("subset vector has the wrong shape");
  }
  if (static_cast<int>(xs.size()) != m) throw InputError("xs must have m entries");
  const std::uint64_t space = space_size(q, m, n);
  const std::vector<long> floors = floors_of(xs, n);
  const auto [count, code] = best_of(space, floors);

  CoveringResult out{IndexedVector::from_code(q, m, n, code), count, 0};
  const long exact = m_set_count(xs, IndexedVector(q, m, n));
  out.averaging_bound = mpq_class(mpz_class(static_cast<unsigned long>(subset.size())) * exact,
                                  mpz_class(static_cast<unsigned long>(space)));
  out.averaging_bound.canonicalize();
  if (mpq_class(count) < out.averaging_bound) throw std::logic_error("covering translate below the averaging bound");
  return out;
}

long hits(const std::vector<IndexedVector>& subset, const IndexedVector& c, const std::vector<long>& floors) {
  long h = 0;
  for (const IndexedVector& v : subset) {
    if (in_m_set(floors, v - c)) ++h;
  }
  return h;
}

}  // namespace

IndexedVector::IndexedVector(int q, int m, int n) : IndexedVector(q, m, n, std::vector<int>(static_cast<std::size_t>(m * n), 0)) {}

IndexedVector::IndexedVector(int q, int m, int n, std::vector<int> symbols) : q_(q), m_(m), n_(n), symbols_(std::move(symbols)) {
  if (q < 2 || m < 1 || n < 1) throw InputError("IndexedVector needs q >= 2, m >= 1, n >= 1");
  if (symbols_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n)) {
    throw InputError("IndexedVector needs exactly m*n symbols");
  }
  for (int s : symbols_) {
    if (s < 0 || s >= q) throw InputError("symbol outside [0, q)");
  }
}

IndexedVector IndexedVector::from_code(int q, int m, int n, std::uint64_t code) {
  std::vector<int> s(static_cast<std::size_t>(m * n));
  for (int& x : s) {
    x = static_cast<int>(code % static_cast<std::uint64_t>(q));
    code /= static_cast<std::uint64_t>(q);
  }
  return IndexedVector(q, m, n, std::move(s));
}

void IndexedVector::set(int block, int l, int value) {
  if (block < 0 || block >= n_ || l < 1 || l > m_) throw InputError("position out of range");
  if (value < 0 || value >= q_) throw InputError("symbol outside [0, q)");
  symbols_[static_cast<std::size_t>(block * m_ + l - 1)] = value;
}

bool IndexedVector::is_zero() const {
  return std::all_of(symbols_.begin(), symbols_.end(), [](int s) { return s == 0; });
}

IndexedVector operator-(const IndexedVector& a, const IndexedVector& b) {
  require_same_shape(a, b);
  IndexedVector out = a;
  for (std::size_t i = 0; i < out.symbols_.size(); ++i) out.symbols_[i] = mod(a.symbols_[i] - b.symbols_[i], a.q_);
  return out;
}

IndexedVector operator+(const IndexedVector& a, const IndexedVector& b) {
  require_same_shape(a, b);
  IndexedVector out = a;
  for (std::size_t i = 0; i < out.symbols_.size(); ++i) out.symbols_[i] = (a.symbols_[i] + b.symbols_[i]) % a.q_;
  return out;
}

std::vector<std::vector<int>> index_sets(const IndexedVector& v) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(v.m()));
  for (int i = 0; i < v.n(); ++i) {
    for (int l = v.m(); l >= 1; --l) {
      if (v.at(i, l) != 0) {
        sets[static_cast<std::size_t>(l - 1)].push_back(i + 1);
        break;
      }
    }
  }
  return sets;
}

long weighted_index_sum(const IndexedVector& v) {
  long s = 0;
  const auto sets = index_sets(v);
  for (std::size_t l = 0; l < sets.size(); ++l) s += static_cast<long>(l + 2) * static_cast<long>(sets[l].size());
  return s;
}

mpz_class m_set_lower_bound(const std::vector<mpq_class>& xs, int q, int m, int n) {
  if (static_cast<int>(xs.size()) != m) throw InputError("xs must have m entries");
  const std::vector<long> floors = floors_of(xs, n);
  mpz_class out = 1;
  long used = 0;
  for (int l = m; l >= 1; --l) {
    const long k = floors[static_cast<std::size_t>(l - 1)];
    if (used + k > n) return 0;
    mpz_class qm1, ql;
    mpz_ui_pow_ui(qm1.get_mpz_t(), static_cast<unsigned long>(q - 1), static_cast<unsigned long>(k));
    mpz_ui_pow_ui(ql.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>((l - 1) * k));
    out *= binom(n - used, k) * qm1 * ql;
    used += k;
  }
  return out;
}

bool in_m_set(const std::vector<long>& floors, const IndexedVector& v) {
  const auto sets = index_sets(v);
  for (std::size_t l = 0; l < sets.size(); ++l) {
    if (static_cast<long>(sets[l].size()) > floors[l]) return false;
  }
  return true;
}

long m_set_count(const std::vector<mpq_class>& xs, const IndexedVector& c) {
  if (static_cast<int>(xs.size()) != c.m()) throw InputError("xs must have m entries");
  const std::uint64_t space = space_size(c.q(), c.m(), c.n());
  const std::vector<long> floors = floors_of(xs, c.n());
  long count = 0;
  for (std::uint64_t k = 0; k < space; ++k) {
    if (in_m_set(floors, IndexedVector::from_code(c.q(), c.m(), c.n(), k) - c)) ++count;
  }
  return count;
}

bool check_subadditivity(const IndexedVector& a, const IndexedVector& b) {
  require_same_shape(a, b);
  return weighted_index_sum(a - b) <= weighted_index_sum(a) + weighted_index_sum(b);
}

bool check_containments(const IndexedVector& a, const IndexedVector& b) {
  require_same_shape(a, b);
  const auto d = index_sets(a - b);
  const auto sa = index_sets(a);
  const auto sb = index_sets(b);
  const int m = a.m();
  auto has = [](const std::vector<int>& s, int i) { return std::binary_search(s.begin(), s.end(), i); };
  for (int l = 1; l <= m; ++l) {
    for (int i : d[static_cast<std::size_t>(l - 1)]) {
      bool covered = has(sa[static_cast<std::size_t>(l - 1)], i) || has(sb[static_cast<std::size_t>(l - 1)], i);
      for (int nu = l + 1; nu <= m && !covered; ++nu) {
        covered = has(sa[static_cast<std::size_t>(nu - 1)], i) && has(sb[static_cast<std::size_t>(nu - 1)], i);
      }
      if (!covered) return false;
    }
  }
  return true;
}

ToyCode::ToyCode(int q, std::vector<int> eval_points, int m, int r) : q_(q), m_(m), r_(r), points_(std::move(eval_points)) {
  if (!is_small_prime(q)) throw InputError("toy codes need a prime q <= 7");
  if (m < 1) throw InputError("m must be at least 1");
  if (r < 0 || r > 12) throw InputError("degree bound r must be in [0, 12]");
  if (points_.empty() || static_cast<int>(points_.size()) > q) throw InputError("need 1 <= n <= q evaluation points");
  std::vector<int> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 || sorted.back() >= q) {
    throw InputError("evaluation points must be distinct elements of F_q");
  }
  words_ = bounded_power(q, r + 1, kEnumerationCap);
  if (words_ == 0) throw InputError("q^(r+1) exceeds the enumeration cap of 10^7");
  const std::uint64_t per_word = static_cast<std::uint64_t>(m + 1) * points_.size();
  if (words_ * per_word > kStorageCap) throw InputError("toy code storage exceeds 2^28 symbols");
  phi_.assign(words_ * static_cast<std::uint64_t>(m) * points_.size(), 0);
  psi_.assign(words_ * points_.size(), 0);
}

FqPoly ToyCode::poly(std::uint64_t k) const {
  if (k >= words_) throw InputError("word index out of range");
  FqPoly f(static_cast<std::size_t>(r_) + 1);
  for (int& c : f) {
    c = static_cast<int>(k % static_cast<std::uint64_t>(q_));
    k /= static_cast<std::uint64_t>(q_);
  }
  return f;
}

IndexedVector ToyCode::phi_of(const FqPoly& f) const {
  // Hasse derivative D^(l) f(a) = sum_k c_k C(k, l) a^(k-l).
  const int n = this->n();
  std::vector<int> s(static_cast<std::size_t>(m_ * n));
  for (int i = 0; i < n; ++i) {
    for (int l = 1; l <= m_; ++l) {
      const int order = m_ - l;
      long acc = 0;
      for (std::size_t k = static_cast<std::size_t>(order); k < f.size(); ++k) {
        const long b = mod(binom(static_cast<long>(k), order).get_si(), q_);
        long p = 1;
        for (std::size_t e = 0; e < k - static_cast<std::size_t>(order); ++e) p = p * points_[static_cast<std::size_t>(i)] % q_;
        acc = (acc + mod(f[k], q_) * b % q_ * p) % q_;
      }
      s[static_cast<std::size_t>(i * m_ + l - 1)] = static_cast<int>(acc);
    }
  }
  return IndexedVector(q_, m_, n, std::move(s));
}

std::vector<int> ToyCode::psi_of(const FqPoly& f) const {
  std::vector<int> out;
  for (int a : points_) {
    long acc = 0;
    for (std::size_t k = static_cast<std::size_t>(m_); k < f.size(); ++k) {
      const long b = mod(binom(static_cast<long>(k), m_).get_si(), q_);
      long p = 1;
      for (std::size_t e = 0; e < k - static_cast<std::size_t>(m_); ++e) p = p * a % q_;
      acc = (acc + mod(f[k], q_) * b % q_ * p) % q_;
    }
    out.push_back(static_cast<int>(acc));
  }
  return out;
}

void ToyCode::fill(std::uint64_t k) {
  const FqPoly f = poly(k);
  const IndexedVector v = phi_of(f);
  const std::vector<int> w = psi_of(f);
  const std::uint64_t mn = static_cast<std::uint64_t>(m_) * points_.size();
  for (std::uint64_t i = 0; i < mn; ++i) phi_[k * mn + i] = static_cast<std::uint8_t>(v.symbols()[i]);
  for (std::size_t i = 0; i < w.size(); ++i) psi_[k * points_.size() + i] = static_cast<std::uint8_t>(w[i]);
}

IndexedVector ToyCode::phi(std::uint64_t k) const {
  if (k >= words_) throw InputError("word index out of range");
  const std::uint64_t mn = static_cast<std::uint64_t>(m_) * points_.size();
  return IndexedVector(q_, m_, n(), std::vector<int>(phi_.begin() + static_cast<long>(k * mn), phi_.begin() + static_cast<long>((k + 1) * mn)));
}

std::vector<int> ToyCode::psi(std::uint64_t k) const {
  if (k >= words_) throw InputError("word index out of range");
  const std::uint64_t n = points_.size();
  return std::vector<int>(psi_.begin() + static_cast<long>(k * n), psi_.begin() + static_cast<long>((k + 1) * n));
}

namespace {

void check_linearity(const ToyCode& code) {
  std::mt19937_64 rng(code.size());
  std::uniform_int_distribution<std::uint64_t> pick(0, code.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t a = pick(rng);
    const std::uint64_t b = pick(rng);
    FqPoly sum = code.poly(a);
    const FqPoly fb = code.poly(b);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (sum[i] + fb[i]) % code.q();
    const std::uint64_t s = code_of(sum, code.q());
    if (code.phi(s) != code.phi(a) + code.phi(b)) throw std::logic_error("Phi is not additive");
    std::vector<int> w = code.psi(a);
    const std::vector<int> wb = code.psi(b);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (w[i] + wb[i]) % code.q();
    if (code.psi(s) != w) throw std::logic_error("psi is not additive");
  }
}

}  // namespace

ToyCode build_toy_code(int q, const std::vector<int>& eval_points, int m, int r) {
  ToyCode code(q, eval_points, m, r);
  const long words = static_cast<long>(code.words_);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < words; ++k) code.fill(static_cast<std::uint64_t>(k));
  check_linearity(code);
  return code;
}

ToyCode build_toy_code_serial(int q, const std::vector<int>& eval_points, int m, int r) {
  ToyCode code(q, eval_points, m, r);
  for (std::uint64_t k = 0; k < code.words_; ++k) code.fill(k);
  check_linearity(code);
  return code;
}

int root_multiplicity(const FqPoly& f_in, int a, int q) {
  FqPoly f = normalized(f_in, q);
  if (f.empty()) throw InputError("the zero polynomial has no root multiplicity");
  int mult = 0;
  while (f.size() > 1) {
    // Synthetic division by (x - a): quotient coefficients from the top.
    FqPoly quot(f.size() - 1);
    long carry = 0;
    for (std::size_t i = f.size(); i-- > 1;) {
      carry = (carry * a + f[i]) % q;
      quot[i - 1] = static_cast<int>(carry);
    }
    const long rem = (carry * a + f[0]) % q;
    if (rem != 0) break;
    ++mult;
    f = std::move(quot);
  }
  return mult;
}

bool check_zero_divisor_profile(const ToyCode& code, const FqPoly& f_in) {
  const FqPoly f = checked_word(code, f_in);
  const int m = code.m();
  const std::vector<int> v = zero_multiplicities(code, f);
  std::vector<long> j(static_cast<std::size_t>(m) + 1, 0);
  for (int vi : v) {
    if (vi <= m) ++j[static_cast<std::size_t>(m - vi)];
  }
  const IndexedVector alpha = code.phi(code_of(f, code.q()));
  const auto sets = index_sets(alpha);
  long weighted = 0;
  for (int l = 1; l <= m; ++l) {
    if (static_cast<long>(sets[static_cast<std::size_t>(l - 1)].size()) != j[static_cast<std::size_t>(l)]) return false;
    weighted += (l + 1) * j[static_cast<std::size_t>(l)];
  }
  return weighted == weighted_index_sum(alpha);
}

bool check_weight_inequality(const ToyCode& code, const FqPoly& f_in) {
  const FqPoly f = checked_word(code, f_in);
  const int m = code.m();
  long lhs = 0;
  long weighted = 0;
  for (int vi : zero_multiplicities(code, f)) {
    lhs += m + 1 - std::min(m + 1, vi);
    if (vi < m) weighted += m - vi + 1;
  }
  const std::vector<int> w = code.psi(code_of(f, code.q()));
  const long weight = std::count_if(w.begin(), w.end(), [](int s) { return s != 0; });
  return lhs <= weight + weighted;
}

CoveringResult covering_translate(int q, int m, int n, const std::vector<mpq_class>& xs,
                                  const std::vector<IndexedVector>& subset) {
  return covering_impl(q, m, n, xs, subset, [&](std::uint64_t space, const std::vector<long>& floors) {
    long best = -1;
    std::uint64_t best_code = 0;
#pragma omp parallel
    {
      long local = -1;
      std::uint64_t local_code = 0;
#pragma omp for schedule(static) nowait
      for (long k = 0; k < static_cast<long>(space); ++k) {
        const long h = hits(subset, IndexedVector::from_code(q, m, n, static_cast<std::uint64_t>(k)), floors);
        if (h > local) {
          local = h;
          local_code = static_cast<std::uint64_t>(k);
        }
      }
#pragma omp critical
      if (local > best || (local == best && local_code < best_code)) {
        best = local;
        best_code = local_code;
      }
    }
    return std::pair<long, std::uint64_t>{best, best_code};
  });
}

CoveringResult covering_translate_serial(int q, int m, int n, const std::vector<mpq_class>& xs,
                                         const std::vector<IndexedVector>& subset) {
  return covering_impl(q, m, n, xs, subset, [&](std::uint64_t space, const std::vector<long>& floors) {
    long best = -1;
    std::uint64_t best_code = 0;
    for (std::uint64_t k = 0; k < space; ++k) {
      const long h = hits(subset, IndexedVector::from_code(q, m, n, k), floors);
      if (h > best) {
        best = h;
        best_code = k;
      }
    }
    return std::pair<long, std::uint64_t>{best, best_code};
  });
}

nlohmann::json verify_vector_index(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  nlohmann::json report;
  bool ok = true;
  auto record = [&](const char* name, long cases, const nlohmann::json& first_failure) {
    report[name] = {{"cases", cases}, {"first_counterexample", first_failure}};
    if (!first_failure.is_null()) ok = false;
  };
  auto random_vector = [&](int q, int m, int n) {
    std::uniform_int_distribution<int> sym(0, q - 1);
    std::vector<int> s(static_cast<std::size_t>(m * n));
    for (int& x : s) x = sym(rng);
    return IndexedVector(q, m, n, std::move(s));
  };

  // Lemmas on index sets: exhaustive q=2, m=2, n=3, then random q=3, m=3, n=4.
  {
    nlohmann::json fail;
    long cases = 0;
    for (std::uint64_t a = 0; a < 64; ++a) {
      for (std::uint64_t b = 0; b < 64; ++b) {
        const auto va = IndexedVector::from_code(2, 2, 3, a);
        const auto vb = IndexedVector::from_code(2, 2, 3, b);
        ++cases;
        if (fail.is_null() && !(check_subadditivity(va, vb) && check_containments(va, vb))) {
          fail = {{"a", va.symbols()}, {"b", vb.symbols()}};
        }
      }
    }
    for (int i = 0; i < 100000; ++i) {
      const auto va = random_vector(3, 3, 4);
      const auto vb = random_vector(3, 3, 4);
      ++cases;
      if (fail.is_null() && !(check_subadditivity(va, vb) && check_containments(va, vb))) {
        fail = {{"a", va.symbols()}, {"b", vb.symbols()}};
      }
    }
    record("index_set_lemmas", cases, fail);
  }

  // M-set: product bound and translation invariance at q=2, m=2, n=3.
  {
    const std::vector<mpq_class> xs{mpq_class(1, 3), mpq_class(1, 3)};
    const long base = m_set_count(xs, IndexedVector(2, 2, 3));
    nlohmann::json fail;
    if (mpz_class(base) < m_set_lower_bound(xs, 2, 2, 3)) fail = {{"count", base}};
    std::uniform_int_distribution<std::uint64_t> pick(0, 63);
    for (int i = 0; i < 20 && fail.is_null(); ++i) {
      const auto c = IndexedVector::from_code(2, 2, 3, pick(rng));
      const long at_c = m_set_count(xs, c);
      if (at_c != base) fail = {{"c", c.symbols()}, {"count", at_c}, {"count_at_zero", base}};
    }
    record("m_set", 21, fail);
    report["m_set"]["count_at_zero"] = base;
    report["m_set"]["product_bound"] = m_set_lower_bound(xs, 2, 2, 3).get_str();
  }

  // Zero-divisor profile and weight inequality on toy codes.
  {
    nlohmann::json fail;
    long cases = 0;
    const ToyCode small = build_toy_code(2, {0, 1}, 2, 4);
    for (std::uint64_t k = 1; k < small.size(); ++k) {
      ++cases;
      if (fail.is_null() && !check_zero_divisor_profile(small, small.poly(k))) fail = {{"q", 2}, {"f", small.poly(k)}};
    }
    const ToyCode big = build_toy_code(5, {0, 1, 2, 3, 4}, 2, 6);
    std::uniform_int_distribution<std::uint64_t> pick(1, big.size() - 1);
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t k = pick(rng);
      ++cases;
      if (fail.is_null() && !check_zero_divisor_profile(big, big.poly(k))) fail = {{"q", 5}, {"f", big.poly(k)}};
    }
    record("zero_divisor_profile", cases, fail);

    nlohmann::json wfail;
    long wcases = 0;
    const ToyCode tiny = build_toy_code(2, {0, 1}, 1, 3);
    for (std::uint64_t k = 1; k < tiny.size(); ++k) {
      ++wcases;
      if (wfail.is_null() && !check_weight_inequality(tiny, tiny.poly(k))) wfail = {{"q", 2}, {"f", tiny.poly(k)}};
    }
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t k = pick(rng);
      ++wcases;
      if (wfail.is_null() && !check_weight_inequality(big, big.poly(k))) wfail = {{"q", 5}, {"f", big.poly(k)}};
    }
    record("weight_inequality", wcases, wfail);
  }

  // Covering translate over the image of a toy code.
  {
    const ToyCode code = build_toy_code(2, {0, 1}, 3, 2);
    std::vector<IndexedVector> image;
    for (std::uint64_t k = 0; k < code.size(); ++k) image.push_back(code.phi(k));
    const std::vector<mpq_class> xs{mpq_class(1, 2), mpq_class(1, 2), mpq_class(0)};
    nlohmann::json fail;
    try {
      const CoveringResult c = covering_translate(2, 3, 2, xs, image);
      report["covering"] = {{"translate", c.c.symbols()}, {"size", c.size}, {"averaging_bound", c.averaging_bound.get_str()}};
    } catch (const std::logic_error& e) {
      fail = e.what();
    }
    report["covering"]["first_counterexample"] = fail;
    if (!fail.is_null()) ok = false;
  }

  report["model_note"] =
      "toy codes evaluate at n <= q finite places of the rational function field with G supported at infinity";
  report["ok"] = ok;
  return report;
}

}  // namespace codebounds
