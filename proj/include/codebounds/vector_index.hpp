#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <cstdint>
#include <vector>

namespace codebounds {

/// Element of F_q^{mn}: n blocks of m symbols. Symbol l (1-based) of block
/// i (0-based) sits at index i*m + (l-1).
class IndexedVector {
 public:
  IndexedVector(int q, int m, int n);
  IndexedVector(int q, int m, int n, std::vector<int> symbols);
  /// The code-th vector in base q, symbol 0 least significant.
  static IndexedVector from_code(int q, int m, int n, std::uint64_t code);

  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const std::vector<int>& symbols() const { return symbols_; }
  /// alpha_l^{(i)} with i in [0, n) and l in [1, m].
  [[nodiscard]] int at(int block, int l) const { return symbols_[static_cast<std::size_t>(block * m_ + l - 1)]; }
  void set(int block, int l, int value);
  [[nodiscard]] bool is_zero() const;

  friend IndexedVector operator-(const IndexedVector& a, const IndexedVector& b);
  friend IndexedVector operator+(const IndexedVector& a, const IndexedVector& b);
  friend bool operator==(const IndexedVector&, const IndexedVector&) = default;

 private:
  int q_, m_, n_;
  std::vector<int> symbols_;
};

/// sets[l-1] = I_l(v) as sorted 1-based block numbers.
std::vector<std::vector<int>> index_sets(const IndexedVector& v);

/// sum_{l=1}^m (l+1) |I_l(v)|.
long weighted_index_sum(const IndexedVector& v);

/// Exact product-of-binomials lower bound on |M(xs; 0)|; xs has m entries.
mpz_class m_set_lower_bound(const std::vector<mpq_class>& xs, int q, int m, int n);

/// |M(xs; c)| by enumeration of F_q^{mn} (q^{mn} <= 10^7).
long m_set_count(const std::vector<mpq_class>& xs, const IndexedVector& c);

bool in_m_set(const std::vector<long>& floors, const IndexedVector& v);

bool check_subadditivity(const IndexedVector& a, const IndexedVector& b);
bool check_containments(const IndexedVector& a, const IndexedVector& b);

/// Polynomial over F_q, coefficients from the constant term up.
using FqPoly = std::vector<int>;

/// Polynomials of degree <= r over F_q evaluated at distinct points of F_q.
/// Word k is the polynomial whose coefficient vector is k in base q.
class ToyCode {
 public:
  ToyCode(int q, std::vector<int> eval_points, int m, int r);

  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int r() const { return r_; }
  [[nodiscard]] int n() const { return static_cast<int>(points_.size()); }
  [[nodiscard]] const std::vector<int>& eval_points() const { return points_; }
  [[nodiscard]] std::uint64_t size() const { return words_; }

  [[nodiscard]] FqPoly poly(std::uint64_t k) const;
  /// Stored Phi / psi of word k.
  [[nodiscard]] IndexedVector phi(std::uint64_t k) const;
  [[nodiscard]] std::vector<int> psi(std::uint64_t k) const;

  /// Phi / psi of an arbitrary polynomial of degree <= r, from Hasse derivatives.
  [[nodiscard]] IndexedVector phi_of(const FqPoly& f) const;
  [[nodiscard]] std::vector<int> psi_of(const FqPoly& f) const;

 private:
  friend ToyCode build_toy_code(int, const std::vector<int>&, int, int);
  friend ToyCode build_toy_code_serial(int, const std::vector<int>&, int, int);
  void fill(std::uint64_t k);

  int q_, m_, r_;
  std::vector<int> points_;
  std::uint64_t words_ = 0;
  std::vector<std::uint8_t> phi_, psi_;
};

/// Builds and stores all words with OpenMP, then checks additivity of Phi
/// and psi on 100 random pairs. Guards: q prime <= 7, n <= q, r <= 12,
/// q^(r+1) <= 10^7, stored symbols <= 2^28.
ToyCode build_toy_code(int q, const std::vector<int>& eval_points, int m, int r);
ToyCode build_toy_code_serial(int q, const std::vector<int>& eval_points, int m, int r);

/// Multiplicity of the root a in f (f != 0), by repeated synthetic division.
int root_multiplicity(const FqPoly& f, int a, int q);

/// j_l of the zero divisor at the evaluation points equals |I_l(Phi(f))|,
/// and J_m equals the weighted index sum.
bool check_zero_divisor_profile(const ToyCode& code, const FqPoly& f);

/// (m+1)n - deg(truncated zero divisor) <= wt(psi(f)) + J_m.
bool check_weight_inequality(const ToyCode& code, const FqPoly& f);

struct CoveringResult {
  IndexedVector c;
  long size = 0;
  /// |subset| |M(xs;0)| / q^{mn}, with |M(xs;0)| counted exactly.
  mpq_class averaging_bound;
};

/// Translate c maximizing |{v in subset : v - c in M(xs; 0)}| by exhaustive
/// search (OpenMP over c); ties go to the smallest code. Throws
/// std::logic_error if the maximum falls below the averaging bound.
CoveringResult covering_translate(int q, int m, int n, const std::vector<mpq_class>& xs,
                                  const std::vector<IndexedVector>& subset);
CoveringResult covering_translate_serial(int q, int m, int n, const std::vector<mpq_class>& xs,
                                         const std::vector<IndexedVector>& subset);

/// Runs the exhaustive and randomized grids of this module.
nlohmann::json verify_vector_index(std::uint64_t seed);

}  // namespace codebounds
