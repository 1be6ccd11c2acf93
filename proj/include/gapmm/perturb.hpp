#pragma once

#include <string>

#include "gapmm/spectral.hpp"

namespace gapmm {

struct PosNegParts {
  SymMatrix positive;  // max(V, 0)
  SymMatrix negative;  // max(-V, 0)
};
PosNegParts split_pos_neg(const SymMatrix& v);

struct DiagOffParts {
  SymMatrix diagonal;      // P+ V P+ + P- V P-
  SymMatrix off_diagonal;  // P+ V P- + P- V P+
};
DiagOffParts split_diag_offdiag(const SymMatrix& v, const SpectralSplit& s);

/// Residuals ||P+ V P+|| and ||P- V P-||.
struct OffDiagonality {
  double upper;
  double lower;
};
OffDiagonality off_diagonality(const SymMatrix& v, const SpectralSplit& s);

enum class BoundKind { operator_bound, form_bound };
enum class Branch { lower, upper };

/// Relative bound of V with respect to A.
/// operator: ||V x|| <= a ||x|| + b ||A x||.
/// form: -a I - b R <= V <= a I + b R with R = A + (|m| - m) I, m = min spec A
/// (lower branch), or R = -A + (m + |m|) I, m = max spec A (upper branch).
/// The form certificate gives |v[x]| <= a_tilde ||x||^2 +- b a[x].
struct RelBound {
  double a = 0.0;
  double b = 0.0;
  BoundKind kind = BoundKind::operator_bound;
  Branch branch = Branch::lower;
  double m = 0.0;
  double a_tilde = 0.0;
  std::string certificate = "sufficient PSD condition";
};

RelBound min_operator_bound_a(const Matrix& v, const SymMatrix& a, double b);
RelBound min_form_bound_a(const SymMatrix& v, const SymMatrix& a, double b, Branch branch = Branch::lower);
/// Smallest a with -a I - b R <= V <= a I + b R.
double sandwich_bound(const SymMatrix& v, const SymMatrix& r, double b);

}  // namespace gapmm
