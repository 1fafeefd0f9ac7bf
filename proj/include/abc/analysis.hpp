#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace abc {

// Numeric checks of the auxiliary monotonicity propositions and the
// constants, roots and limits quoted alongside the transformations.

enum class PropId { A010, A020, A030, A040, A050 };

std::string to_string(PropId id);
PropId parse_prop_id(const std::string& name);
const std::vector<PropId>& all_prop_ids();

/// f(x, y) over the reals; requires x, y > 0 and x + y >= 2.
double f_real(double x, double y);

/// A010 with shifts (dx, dy); the other ids ignore them.
double prop_value(PropId id, double x, double y, double dx = 0, double dy = 0);

struct Grid {
  double lo = 2.0;
  double hi = 50.0;
  double step = 0.5;
  std::vector<double> shifts{0, 1, 2, 3};     // A010 dx and dy
  std::vector<double> k_values{2, 3, 4, 5, 6, 7, 8, 9, 10};  // A050
  std::vector<double> points() const;
};

struct ScanPoint {
  double x, y, dx, dy;
  std::string what;
};

struct ScanReport {
  std::string id;
  Grid grid;
  long checked = 0;
  std::vector<ScanPoint> violations;
  bool ok() const { return violations.empty(); }
};

/// Sign and step-wise monotonicity checks with margin 1e-12. Throws
/// std::domain_error when the grid leaves x, y >= 2. A010 points with
/// dy >= y are outside the proposition and skipped.
ScanReport monotonicity_scan(PropId id, const Grid& grid = {});

inline constexpr double kMonotoneMargin = 1e-12;

// ---------------------------------------------------------------------------
// Single-variable expressions

struct Expression {
  std::string id;
  std::string description;
  std::function<double(double)> eval;
  std::optional<double> analytic_limit;  // value as the argument grows without bound
};

const std::vector<Expression>& expressions();
/// Throws std::invalid_argument for unknown ids.
const Expression& expression(const std::string& id);

struct SignChange {
  std::string id;
  double lo = 0, hi = 0, step = 0;
  bool found = false;
  double bracket_lo = 0, bracket_hi = 0;  // grid step containing the change
  double root_lo = 0, root_hi = 0;        // after bisection
  double root() const { return 0.5 * (root_lo + root_hi); }
  int changes = 0;                         // sign changes seen on the grid
};

/// Steps over [lo, hi] and refines the first sign change by bisection to
/// width `width`. A missing change is reported with found = false.
SignChange sign_change_scan(const std::string& id, double lo, double hi, double step,
                            double width = 1e-4);

struct LimitResult {
  std::string id;
  double value = 0;
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (argument, value)
};

/// Evaluates at 10^3, 10^4, ... 10^12 until successive values differ by
/// less than `tol`.
LimitResult limit_eval(const std::string& id, double tol = 1e-9);

struct ConstantRecord {
  std::string id;
  double paper_value = 0;
  double computed = 0;
  double abs_error = 0;
  double tolerance = 0;
  std::string expression;
  bool pass = false;
};

std::vector<ConstantRecord> constant_table();
std::string constant_table_csv(const std::vector<ConstantRecord>& rows);

/// Smallest integer d in [lo, hi] with expression(id)(e) < 0 for every
/// integer e in [d, hi]; nullopt if the expression is non-negative at hi.
std::optional<int> negative_from(const std::string& id, int lo, int hi);

}  // namespace abc
