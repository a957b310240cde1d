#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qcert/poly.hpp"

namespace qcert {

/// Thrown when construction coefficients land outside k* \ {-1}.
struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ProjPoint {
  std::array<std::int64_t, 3> c;  // [x : y : z], last nonzero coordinate = 1
  bool operator==(const ProjPoint& o) const { return c == o.c; }
  bool operator<(const ProjPoint& o) const { return c < o.c; }
  std::string str() const;
};

/// A nonzero linear form b*x + c*y + d*z over F_p, also identified with the
/// projective line it cuts out.
class LinearForm {
public:
  LinearForm(PrimeField k, std::array<std::int64_t, 3> coeffs);

  const PrimeField& field() const { return k_; }
  const std::array<std::int64_t, 3>& coeffs() const { return c_; }

  /// Scaled so the first nonzero coefficient is 1; equality of lines.
  std::array<std::int64_t, 3> canonical() const;
  bool same_line(const LinearForm& o) const { return canonical() == o.canonical(); }
  bool proportional(const LinearForm& o) const { return same_line(o); }

  std::int64_t eval(const ProjPoint& pt) const;
  int pivot() const;  // index of the first nonzero coefficient

  std::string str() const;

private:
  PrimeField k_;
  std::array<std::int64_t, 3> c_;
};

ProjPoint normalize_point(const PrimeField& k, std::array<std::int64_t, 3> v);

/// Unique intersection point of two non-proportional lines (cross product of
/// coefficient vectors). Throws "identical lines" on proportional input.
ProjPoint intersect_lines(const LinearForm& a, const LinearForm& b);

/// Homogeneous trivariate form of fixed degree; sparse coefficient map keyed
/// by the (x,y) exponent pair, the z exponent being degree - i - j.
class HomForm {
public:
  HomForm(PrimeField k, int degree);
  static HomForm from_linear(const LinearForm& l);

  const PrimeField& field() const { return k_; }
  int degree() const { return degree_; }
  bool is_zero() const { return a_.empty(); }
  const std::map<std::pair<int, int>, std::int64_t>& terms() const { return a_; }

  void add_term(int i, int j, std::int64_t coeff);
  HomForm operator*(const HomForm& o) const;
  std::int64_t eval(const ProjPoint& pt) const;

private:
  PrimeField k_;
  int degree_;
  std::map<std::pair<int, int>, std::int64_t> a_;
};

/// Deterministic rational parametrization of a line: solve for the pivot
/// variable; the remaining two variables (in x,y,z order) become 1 and t. The
/// point at infinity of the chart is where the first remaining variable
/// vanishes.
class LineChart {
public:
  explicit LineChart(const LinearForm& line);

  const LinearForm& line() const { return line_; }
  /// Restriction of another linear form: a polynomial of degree <= 1 in t.
  /// Identically zero exactly when the form is proportional to the line.
  UniPoly restrict_linear(const LinearForm& f) const;
  UniPoly restrict_form(const HomForm& f) const;
  ProjPoint point_at(std::int64_t t) const;
  ProjPoint point_at_infinity() const;

private:
  LinearForm line_;
  int pivot_, r1_, r2_;
  std::array<UniPoly, 3> coord_;  // coordinate functions of t
};

/// Removes the maximal power of L dividing F, then restricts along the chart.
/// Returns (removed power, dehomogenized restriction != 0). F must be nonzero.
std::pair<int, UniPoly> restrict_to_line(const HomForm& f, const LinearForm& l);

enum class LineRole { AxisX, AxisY, AxisZ, Family1, Family2 };

struct ArrangementLine {
  LineRole role;
  int j;  // 1..8 for family lines, 0 for axes
  LinearForm form;
  std::string label;
};

/// The 19 support lines of the construction: the coordinate axes and
/// l_i + h_j for i in {1,2} and h_j running over all e_x*x + e_y*y + e_z*z
/// with (e_x,e_y,e_z) in {0,1}^3 in lexicographic order (j = 1 is h = 0).
class LineArrangement {
public:
  static LineArrangement build(PrimeField k, std::array<std::int64_t, 3> l1,
                               std::array<std::int64_t, 3> l2);

  const PrimeField& field() const { return k_; }
  const std::vector<ArrangementLine>& lines() const { return lines_; }
  const ArrangementLine& axis(LineRole r) const;
  const ArrangementLine& family_line(int i, int j) const;  // i in {1,2}, j in 1..8
  std::array<std::int64_t, 3> family_coeffs(int i) const { return i == 1 ? l1_ : l2_; }

private:
  LineArrangement(PrimeField k, std::array<std::int64_t, 3> l1, std::array<std::int64_t, 3> l2);
  PrimeField k_;
  std::array<std::int64_t, 3> l1_, l2_;
  std::vector<ArrangementLine> lines_;
};

/// h_j = e_x*x + e_y*y + e_z*z for j in 1..8 (lexicographic bits of j-1).
std::array<std::int64_t, 3> h_form(int j);

/// (i): the 19 lines are pairwise distinct.
bool check_condition_i(const LineArrangement& arr);

/// (ii)/(iii): for all j, j' the triple {axis, l1+h_j, l2+h_j'} has empty
/// intersection. Proportional family lines (or a family line equal to the
/// axis) force false. axis must be AxisX (condition ii) or AxisY (iii).
bool check_condition_ii_iii(const LineArrangement& arr, LineRole axis);

enum class PrimedVariant { II, III };

/// (ii')/(iii'): the two 4-element sets of projective pairs
/// [(c_i+e_y):(d_i+e_z)] (resp. [(b_i+e_x):(d_i+e_z)]) are disjoint. A pair
/// with both entries zero means a family line equals the axis: false.
bool check_condition_primed(const LineArrangement& arr, PrimedVariant v);

} // namespace qcert
