#pragma once

#include "codebounds/classic_bounds.hpp"
#include "codebounds/psi_solver.hpp"

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace codebounds {

/// Inputs of the rate bound: profile, delta and the x vector (m = xs.size()).
struct BoundProblem {
  BoundProblem(IharaProfile profile, Real delta, std::vector<Real> xs, Bits precision = kDefaultPrecision);

  IharaProfile profile;
  Real delta;
  std::vector<Real> xs;
  Bits precision;

  /// y = 1 - delta - 2 sum (l+1) x_l.
  [[nodiscard]] Real y() const;
};

struct BoundComponents {
  Real tvz;             // 1 - delta - 1/gamma
  Real x_entropy;       // (sum x) log_q(q-1) - sum x log_q x - (1-sum x) log_q(1-sum x)
  Real linear_penalty;  // -sum (l+3) x_l
  Real psi_part;        // Psi / gamma
};

struct BoundResult {
  Real value;
  Real psi;
  BoundComponents components;
  PsiDiagnostics psi_diagnostics;

  [[nodiscard]] nlohmann::json to_json(int digits) const;
};

BoundResult r_general(const BoundProblem& problem);
BoundResult r_lin(const IharaProfile& profile, const Real& delta, Bits precision = kDefaultPrecision);

struct OptimizeResult {
  std::vector<Real> xs;
  BoundResult result;
  BoundResult baseline;  // xs = 0
  int evaluations = 0;
};

/// Heuristic coordinate search over log10(x_l) in [-130, -5] with golden
/// section refinement. Seeded from the worked examples when q matches one.
/// Never returns less than the xs = 0 baseline.
OptimizeResult optimize_x(const IharaProfile& profile, const Real& delta, std::size_t m, int budget,
                          Bits precision = kDefaultPrecision);

/// Starting xs used by optimize_x for this (q, delta, m).
std::vector<Real> optimizer_seed(unsigned long q, const Real& delta, std::size_t m, Bits precision);

/// One cell of a comparison row: a value or the reason it is missing.
struct Cell {
  std::optional<Real> value;
  std::string error;
};

struct TableRow {
  Real delta;
  Cell gv, tvz, no1, r_lin, r_general;
  std::vector<Real> xs;
  std::string best;
};

/// Either explicit xs shared by every row or per-row optimization.
struct XsChoice {
  std::vector<Real> xs;
  bool optimize = false;
  int budget = 0;
  std::size_t m = 1;
};

std::vector<TableRow> compare_table(const IharaProfile& profile, const std::vector<Real>& deltas, const XsChoice& xs,
                                    Bits precision = kDefaultPrecision);
/// Serial reference of compare_table.
std::vector<TableRow> compare_table_serial(const IharaProfile& profile, const std::vector<Real>& deltas,
                                           const XsChoice& xs, Bits precision = kDefaultPrecision);

inline constexpr const char* kCsvHeader = "delta,gv,tvz,no1,r_lin,r_general,best";

/// Decimal string that parses back to exactly the same binary value.
std::string round_trip_decimal(const Real& v);

void write_csv(std::ostream& out, const std::vector<TableRow>& rows, int digits);
nlohmann::json to_json(const TableRow& row, int digits);

}  // namespace codebounds
