#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codebounds/errors.hpp"
#include "codebounds/vector_index.hpp"

#include <algorithm>
#include <random>

using namespace codebounds;

namespace {

// Coefficients of f(a + t) in t, by repeated synthetic division by (x - a).
std::vector<int> taylor(const FqPoly& f, int a, int q) {
  std::vector<int> c(f.begin(), f.end());
  for (int& v : c) v = ((v % q) + q) % q;
  std::vector<int> out;
  while (!c.empty()) {
    std::vector<int> quot(c.size() > 1 ? c.size() - 1 : 0, 0);
    int carry = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      const int v = (c[k] + carry) % q;
      if (k == 0) {
        out.push_back(v);
      } else {
        quot[k - 1] = v;
        carry = v * a % q;
      }
    }
    c = std::move(quot);
  }
  return out;
}

int coeff(const std::vector<int>& c, int k) { return k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : 0; }

// I_l by definition: highest nonzero symbol position in the block.
std::vector<std::vector<int>> oracle_sets(const IndexedVector& v) {
  std::vector<std::vector<int>> s(static_cast<std::size_t>(v.m()));
  for (int i = 0; i < v.n(); ++i) {
    for (int l = v.m(); l >= 1; --l) {
      if (v.at(i, l) != 0) {
        s[static_cast<std::size_t>(l - 1)].push_back(i + 1);
        break;
      }
    }
  }
  return s;
}

long oracle_weighted(const IndexedVector& v) {
  const auto s = oracle_sets(v);
  long w = 0;
  for (std::size_t l = 0; l < s.size(); ++l) w += static_cast<long>(l + 2) * static_cast<long>(s[l].size());
  return w;
}

IndexedVector random_vector(std::mt19937_64& rng, int q, int m, int n) {
  std::uniform_int_distribution<int> sym(0, q - 1);
  std::vector<int> s(static_cast<std::size_t>(m * n));
  for (int& x : s) x = sym(rng);
  return IndexedVector(q, m, n, std::move(s));
}

FqPoly random_poly(std::mt19937_64& rng, int q, int r) {
  std::uniform_int_distribution<int> sym(0, q - 1);
  FqPoly f(static_cast<std::size_t>(r) + 1);
  do {
    for (int& c : f) c = sym(rng);
  } while (std::all_of(f.begin(), f.end(), [](int c) { return c == 0; }));
  return f;
}

std::uint64_t space(int q, int m, int n) {
  std::uint64_t s = 1;
  for (int i = 0; i < m * n; ++i) s *= static_cast<std::uint64_t>(q);
  return s;
}

long brute_m(const std::vector<long>& floors, const IndexedVector& c) {
  long count = 0;
  for (std::uint64_t k = 0; k < space(c.q(), c.m(), c.n()); ++k) {
    const auto s = oracle_sets(IndexedVector::from_code(c.q(), c.m(), c.n(), k) - c);
    bool ok = true;
    for (std::size_t l = 0; l < s.size(); ++l) ok = ok && static_cast<long>(s[l].size()) <= floors[l];
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("index sets") {
  const IndexedVector zero(2, 2, 3);
  for (const auto& s : index_sets(zero)) CHECK(s.empty());
  CHECK(weighted_index_sum(zero) == 0);

  // Blocks (alpha_1, alpha_2): (1,0), (0,1), (1,1).
  const IndexedVector v(2, 2, 3, {1, 0, 0, 1, 1, 1});
  const auto s = index_sets(v);
  CHECK(s[0] == std::vector<int>{1});
  CHECK(s[1] == std::vector<int>{2, 3});
  CHECK(weighted_index_sum(v) == 8);

  const IndexedVector w(3, 1, 4, {0, 2, 1, 0});
  CHECK(index_sets(w)[0] == std::vector<int>{2, 3});
  CHECK(weighted_index_sum(w) == 4);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const IndexedVector r = random_vector(rng, 3, 3, 4);
    const auto got = index_sets(r);
    CHECK(got == oracle_sets(r));
    CHECK(weighted_index_sum(r) == oracle_weighted(r));
    std::vector<int> all;
    for (const auto& part : got) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    std::vector<int> nonzero;
    for (int b = 0; b < 4; ++b) {
      if (r.at(b, 1) || r.at(b, 2) || r.at(b, 3)) nonzero.push_back(b + 1);
    }
    CHECK(all == nonzero);
  }
  CHECK_THROWS_AS(IndexedVector(2, 2, 3, {0, 1}), InputError);
  CHECK_THROWS_AS(IndexedVector(2, 1, 2, {0, 2}), InputError);
}

TEST_CASE("M-set bound and counts") {
  CHECK(m_set_lower_bound({0, 0}, 2, 2, 3) == 1);
  CHECK(m_set_lower_bound({mpq_class(1, 2)}, 2, 1, 2) == 2);
  CHECK_THROWS_AS(m_set_lower_bound({mpq_class(1), mpq_class(1)}, 2, 2, 3), InputError);
  // C(3,1) * 1 * 2 for x_2, then C(2,1) * 1 for x_1.
  CHECK(m_set_lower_bound({mpq_class(1, 3), mpq_class(1, 3)}, 2, 2, 3) == 12);

  const std::vector<mpq_class> xs{mpq_class(1, 3), mpq_class(1, 3)};
  const IndexedVector zero(2, 2, 3);
  const long base = m_set_count(xs, zero);
  CHECK(base == brute_m({1, 1}, zero));
  CHECK(mpz_class(base) >= m_set_lower_bound(xs, 2, 2, 3));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const IndexedVector c = random_vector(rng, 2, 2, 3);
    CHECK(m_set_count(xs, c) == base);
  }
  CHECK(m_set_count({mpq_class(0), mpq_class(0)}, zero) == 1);
}

TEST_CASE("subadditivity and containments") {
  CHECK(check_subadditivity(IndexedVector(2, 2, 3, {1, 1, 0, 1, 1, 0}), IndexedVector(2, 2, 3, {1, 1, 0, 1, 1, 0})));
  const std::uint64_t total = space(2, 2, 3);
  long pairs = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    const IndexedVector va = IndexedVector::from_code(2, 2, 3, a);
    for (std::uint64_t b = 0; b < total; ++b) {
      const IndexedVector vb = IndexedVector::from_code(2, 2, 3, b);
      const bool sub = check_subadditivity(va, vb);
      const bool con = check_containments(va, vb);
      ++pairs;
      if (!sub || !con) {
        CHECK(sub);
        CHECK(con);
      }
      if (oracle_weighted(va - vb) > oracle_weighted(va) + oracle_weighted(vb)) CHECK(false);
    }
  }
  CHECK(pairs == 4096);
  std::mt19937_64 rng(3);
  long bad = 0;
  for (int i = 0; i < 100000; ++i) {
    const IndexedVector a = random_vector(rng, 3, 3, 4);
    const IndexedVector b = random_vector(rng, 3, 3, 4);
    bad += !check_subadditivity(a, b) || !check_containments(a, b);
  }
  CHECK(bad == 0);
  CHECK_THROWS_AS(check_subadditivity(IndexedVector(2, 2, 3), IndexedVector(2, 1, 3)), InputError);
}

TEST_CASE("toy code maps") {
  const ToyCode code = build_toy_code(3, {0, 1, 2}, 1, 2);
  CHECK(code.size() == 27);
  // f = x: value 0 at 0, first Taylor coefficient 1.
  const FqPoly x{0, 1};
  CHECK(code.phi_of(x).at(0, 1) == 0);
  CHECK(code.psi_of(x)[0] == 1);

  const ToyCode c2 = build_toy_code(5, {0, 1, 2, 3, 4}, 3, 4);
  const IndexedVector constant = c2.phi_of({3});
  for (int i = 0; i < 5; ++i) {
    CHECK(constant.at(i, 3) == 3);
    CHECK(constant.at(i, 1) == 0);
  }
  CHECK(index_sets(constant)[2].size() == 5);

  // (x - 2)^4 over F_5 with m = 3: block at 2 is zero and psi vanishes there.
  const FqPoly quartic{1, 3, 4, 2, 1};  // (x-2)^4 = x^4 - 8x^3 + 24x^2 - 32x + 16
  CHECK(root_multiplicity(quartic, 2, 5) == 4);
  const IndexedVector pq = c2.phi_of(quartic);
  for (int l = 1; l <= 3; ++l) CHECK(pq.at(2, l) == 0);
  CHECK(c2.psi_of(quartic)[2] == 0);

  // Stored words, Hasse expansion and the synthetic-division oracle agree.
  for (const ToyCode* tc : {&code, &c2}) {
    for (std::uint64_t k = 0; k < tc->size(); k += 7) {
      const FqPoly f = tc->poly(k);
      CHECK(tc->phi(k) == tc->phi_of(f));
      CHECK(tc->psi(k) == tc->psi_of(f));
      for (int i = 0; i < tc->n(); ++i) {
        const auto t = taylor(f, tc->eval_points()[static_cast<std::size_t>(i)], tc->q());
        for (int l = 1; l <= tc->m(); ++l) CHECK(tc->phi(k).at(i, l) == coeff(t, tc->m() - l));
        CHECK(tc->psi(k)[static_cast<std::size_t>(i)] == coeff(t, tc->m()));
      }
    }
  }

  const ToyCode serial = build_toy_code_serial(5, {0, 1, 2, 3, 4}, 3, 4);
  REQUIRE(serial.size() == c2.size());
  for (std::uint64_t k = 0; k < serial.size(); ++k) {
    if (!(serial.phi(k) == c2.phi(k)) || serial.psi(k) != c2.psi(k)) {
      CHECK(false);
      break;
    }
  }

  // Linearity.
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const FqPoly f = random_poly(rng, 5, 4);
    const FqPoly g = random_poly(rng, 5, 4);
    FqPoly s(5);
    for (std::size_t j = 0; j < 5; ++j) s[j] = (f[j] + g[j]) % 5;
    CHECK(c2.phi_of(s) == c2.phi_of(f) + c2.phi_of(g));
    std::vector<int> ps = c2.psi_of(f);
    const std::vector<int> pg = c2.psi_of(g);
    for (std::size_t j = 0; j < ps.size(); ++j) ps[j] = (ps[j] + pg[j]) % 5;
    CHECK(c2.psi_of(s) == ps);
  }

  CHECK_THROWS_AS(build_toy_code(4, {0, 1}, 1, 2), InputError);
  CHECK_THROWS_AS(build_toy_code(3, {0, 1, 2, 0}, 1, 2), InputError);
  CHECK_THROWS_AS(build_toy_code(2, {0, 1}, 1, 13), InputError);
  CHECK_THROWS_AS(build_toy_code(7, {0, 1}, 1, 9), InputError);
}

TEST_CASE("root multiplicity") {
  CHECK(root_multiplicity({1}, 0, 2) == 0);
  CHECK(root_multiplicity({0, 0, 1}, 0, 3) == 2);
  CHECK(root_multiplicity({1, 0, 1}, 1, 2) == 2);  // x^2 + 1 = (x + 1)^2 over F_2
  CHECK_THROWS_AS(root_multiplicity({0, 0}, 1, 2), InputError);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const FqPoly f = random_poly(rng, 5, 6);
    for (int a = 0; a < 5; ++a) {
      const auto t = taylor(f, a, 5);
      int mult = 0;
      while (coeff(t, mult) == 0) ++mult;
      CHECK(root_multiplicity(f, a, 5) == mult);
    }
  }
}

TEST_CASE("zero divisor profile and weight inequality") {
  const ToyCode small = build_toy_code(2, {0, 1}, 2, 4);
  long checked = 0;
  for (std::uint64_t k = 1; k < small.size(); ++k) {
    CHECK(check_zero_divisor_profile(small, small.poly(k)));
    CHECK(check_weight_inequality(small, small.poly(k)));
    ++checked;
  }
  CHECK(checked == 31);

  const ToyCode m1 = build_toy_code(2, {0, 1}, 1, 3);
  for (std::uint64_t k = 1; k < m1.size(); ++k) CHECK(check_weight_inequality(m1, m1.poly(k)));

  const ToyCode big = build_toy_code(5, {0, 1, 2, 3, 4}, 2, 6);
  std::mt19937_64 rng(6);
  long bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const FqPoly f = random_poly(rng, 5, 6);
    bad += !check_zero_divisor_profile(big, f) || !check_weight_inequality(big, f);
  }
  CHECK(bad == 0);

  // (x - 1)^2 with m = 2: the lone point at 1 is covered by psi.
  const ToyCode c3 = build_toy_code(3, {0, 1, 2}, 2, 3);
  const FqPoly sq{1, 1, 1};  // (x - 1)^2 = x^2 - 2x + 1 = x^2 + x + 1 over F_3
  CHECK(root_multiplicity(sq, 1, 3) == 2);
  CHECK(c3.psi_of(sq)[1] == 1);
  CHECK(check_weight_inequality(c3, sq));
  CHECK_THROWS_AS(check_zero_divisor_profile(c3, {0}), InputError);
  CHECK_THROWS_AS(check_weight_inequality(c3, {0, 0}), InputError);
}

TEST_CASE("covering translate") {
  const std::vector<mpq_class> third{mpq_class(1, 3)};
  std::vector<IndexedVector> all;
  for (std::uint64_t k = 0; k < 8; ++k) all.push_back(IndexedVector::from_code(2, 1, 3, k));
  const CoveringResult full = covering_translate(2, 1, 3, third, all);
  CHECK(full.size == m_set_count(third, IndexedVector(2, 1, 3)));

  const CoveringResult single = covering_translate(2, 1, 3, {mpq_class(0)}, {IndexedVector(2, 1, 3)});
  CHECK(single.c == IndexedVector(2, 1, 3));
  CHECK(single.size == 1);

  // Over F_2 at most two evaluation points exist, so n = 3 uses F_3.
  const ToyCode code = build_toy_code(3, {0, 1, 2}, 1, 1);
  std::vector<IndexedVector> image;
  for (std::uint64_t k = 0; k < code.size(); ++k) image.push_back(code.phi(k));
  const CoveringResult r = covering_translate(3, 1, 3, third, image);
  const CoveringResult rs = covering_translate_serial(3, 1, 3, third, image);
  CHECK(r.c == rs.c);
  CHECK(r.size == rs.size);
  CHECK(mpq_class(r.size) >= r.averaging_bound);
  // Exhaustive oracle over all 27 translates.
  long best = 0;
  for (std::uint64_t k = 0; k < 27; ++k) {
    const IndexedVector c = IndexedVector::from_code(3, 1, 3, k);
    long hits = 0;
    for (const auto& v : image) {
      const auto s = oracle_sets(v - c);
      hits += s[0].size() <= 1;
    }
    best = std::max(best, hits);
  }
  CHECK(r.size == best);
  const long m0 = m_set_count(third, IndexedVector(3, 1, 3));
  CHECK(r.averaging_bound == mpq_class(9 * m0) / 27);

  const ToyCode f2 = build_toy_code(2, {0, 1}, 3, 2);
  std::vector<IndexedVector> f2_image;
  for (std::uint64_t k = 0; k < f2.size(); ++k) f2_image.push_back(f2.phi(k));
  const std::vector<mpq_class> halves{mpq_class(1, 2), mpq_class(1, 2), mpq_class(0)};
  const CoveringResult h = covering_translate(2, 3, 2, halves, f2_image);
  CHECK(mpq_class(h.size) >= h.averaging_bound);
  CHECK(h.averaging_bound == mpq_class(8 * m_set_count(halves, IndexedVector(2, 3, 2))) / 64);
}

TEST_CASE("verification report") {
  const nlohmann::json rep = verify_vector_index(0);
  CHECK(rep["ok"] == true);
}
