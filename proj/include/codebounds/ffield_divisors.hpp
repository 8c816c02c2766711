#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace codebounds {

/// A place of the rational function field F_q(x): a monic irreducible
/// polynomial over F_q, or the place at infinity.
struct Place {
  enum class Kind { finite, infinite };
  Kind kind = Kind::finite;
  int degree = 1;
  /// Coefficients from the constant term up; the leading 1 is included.
  /// Empty for the infinite place.
  std::vector<int> poly;

  [[nodiscard]] std::string to_string() const;
};

/// Places of F_q(x) up to a degree cap. Genus 0, class number 1.
///
/// Index order: infinity, then x, x+1, ..., x+(q-1), then the places of
/// degree 2, 3, ... in lexicographic coefficient order. The first n = q+1
/// places are the rational ones.
class FunctionFieldModel {
 public:
  static constexpr int kGenus = 0;
  static constexpr int kClassNumber = 1;

  FunctionFieldModel(int q, int max_degree, std::vector<Place> places);

  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] int max_degree() const { return max_degree_; }
  /// Number of rational places.
  [[nodiscard]] int n() const { return q_ + 1; }
  [[nodiscard]] const std::vector<Place>& places() const { return places_; }
  [[nodiscard]] const Place& place(std::size_t i) const { return places_.at(i); }
  [[nodiscard]] bool is_rational(std::size_t i) const { return i < static_cast<std::size_t>(n()); }
  /// Places of degree d, the infinite place included.
  [[nodiscard]] std::size_t count_of_degree(int d) const;

 private:
  int q_;
  int max_degree_;
  std::vector<Place> places_;
};

/// All places of degree <= max_degree. q must be 2, 3 or 5 and
/// max_degree in [1, 8]; anything else is an InputError.
FunctionFieldModel enumerate_places(int q, int max_degree);

/// (1/d) sum_{e | d} mu(e) q^(d/e): monic irreducibles of degree d.
mpz_class necklace_count(int q, int d);

/// Number of positive divisors of degree d on P^1 over F_q: (q^(d+1)-1)/(q-1).
mpz_class divisor_count(int q, int d);

/// Positive divisor: place index -> multiplicity >= 1.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::map<std::size_t, int> support);

  /// Adds `mult` copies of place i (mult may be zero; negative throws).
  Divisor& add(std::size_t place, int mult);
  [[nodiscard]] int multiplicity(std::size_t place) const;
  [[nodiscard]] const std::map<std::size_t, int>& support() const { return support_; }
  [[nodiscard]] long degree(const FunctionFieldModel& model) const;
  [[nodiscard]] std::string to_string(const FunctionFieldModel& model) const;

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<std::size_t, int> support_;
};

/// Sum over rational places of min(m+1, v_P(D)) P.
Divisor truncated_divisor(const Divisor& d, int m, const FunctionFieldModel& model);

struct JProfile {
  /// j[l] = #{rational P : v_P(D) = m - l}, l = 0..m.
  std::vector<long> j;
  /// sum_{l=1}^m (l+1) j_l.
  long weighted = 0;
};

JProfile j_profile(const Divisor& d, int m, const FunctionFieldModel& model);

/// deg(truncated) + sum_{l=0}^m (l+1) j_l == (m+1) n.
bool degree_identity_check(const Divisor& d, int m, const FunctionFieldModel& model);

/// Membership in V_m(r, s; X_1..X_m); xs has size m.
bool vm_member(const Divisor& d, long r, long s, const std::vector<long>& xs, int m,
               const FunctionFieldModel& model);

/// Every positive divisor of the given degree, in a fixed canonical order.
std::vector<Divisor> enumerate_divisors_serial(const FunctionFieldModel& model, int degree);
/// Same list and order, sharded over the leading places with OpenMP.
std::vector<Divisor> enumerate_divisors_parallel(const FunctionFieldModel& model, int degree);

/// C_{a,b} by enumeration, with supp(truncated D) fixed to three different
/// b-subsets of rational places; throws std::logic_error if they disagree.
long count_exact_support(int a, int b, const FunctionFieldModel& model, std::uint64_t seed = 0);
/// C_{a,b} from place counts: sum_k C(k-1, b-1) N_off(a-k), where N_off
/// counts divisors supported off the rational places. Zero for a < b, b < 0
/// or b > n.
mpz_class exact_support_formula(int a, int b, const FunctionFieldModel& model);

struct CountU {
  mpz_class formula;
  long brute = 0;
  bool nonempty_predicted = false;
};

/// |U(r, t; j_1..j_m)| by the product formula and by enumeration.
CountU count_u(long r, long t, const std::vector<long>& js, int m, const FunctionFieldModel& model);

struct CountVm {
  mpz_class sum_formula;
  long brute = 0;
  /// Every member falls into exactly one indexed piece of the union and the
  /// per-piece counts agree with the formula.
  bool disjoint_union_ok = true;
};

CountVm count_vm(long r, long s, const std::vector<long>& xs, int m, const FunctionFieldModel& model);

struct DivisorGrid {
  int q = 2;
  int m = 1;
  int max_r = 5;
  long max_j = 3;
};

/// Exhaustive count_u / count_vm / emptiness cross-check over the grid.
nlohmann::json verify_divisor_grid(const DivisorGrid& grid);

}  // namespace codebounds
