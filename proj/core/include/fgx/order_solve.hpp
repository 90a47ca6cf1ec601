#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fgx/frame_calculus.hpp"
#include "fgx/rational.hpp"

namespace fgx {

/// Thrown when a forcing term fails the solvability conditions of the
/// order-lambda linear system (for example order-n data with illegal
/// divergence, which shows up as a mixed-slot forcing at order n+1).
class SolvabilityError : public std::runtime_error {
 public:
  SolvabilityError(std::string check, double defect, const std::string& message)
      : std::runtime_error(message), check_(std::move(check)), defect_(defect) {}

  const std::string& check() const { return check_; }
  double defect() const { return defect_; }

 private:
  std::string check_;
  double defect_;
};

struct SolveTolerances {
  double compatibility = 1e-9;
  double scale = 1.0;  // typically the max metric-coefficient sup norm
};

/// Solution of ricci_indicial(n)(lambda) * h = f over the block ansatz
/// h = (0, 0, h3, h4), plus the order-n log coefficient in even dimension.
struct OrderSolveResult {
  SpatialField h3;
  SpatialField h4;
  std::optional<SpatialField> log_h4;  // present iff lambda = n with n even
  double f2_defect = 0.0;
  double kernel_defect = 0.0;          // ||(lambda-2n) f1 + n(lambda-2) f3||
  double row_consistency_defect = 0.0;
};

/// Solve the indicial system at order lambda for a forcing f given in the
/// 4-component splitting. The forcing convention is the stored matrix
/// ricci_indicial(n): the returned h satisfies ricci_indicial(n)(lambda) h = f
/// up to the kernel-compatibility defect.
///
///  - generic lambda: h4 = f4/(lambda(lambda-n)); h3 from row 3
///    (f3/(lambda(lambda-2n))) or row 1 (-f1/(n lambda(lambda-2))), choosing
///    the larger denominator and cross-checking the other row;
///  - lambda = n, n even: h3 = -f1/(n^2(n-2)) with consistency f1 = (n-2) f3;
///    h4 = free_h4 (default 0); log_h4 = f4/n, which corrects the 4-slot via
///    the lambda-derivative of the family;
///  - lambda = n, n odd: f must vanish; h3 = 0; h4 = free_h4.
///
/// Preconditions checked at tolerance compatibility*scale: the mixed slot f2
/// vanishes, and f lies in the kernel of the divergence family,
/// (lambda-2n) f1 + n(lambda-2) f3 = 0. Violations raise SolvabilityError.
/// lambda must be positive; free_h4 is only accepted at lambda = n.
OrderSolveResult solve_order(const Rational& lambda, const Block4Field& f, int n,
                             const std::optional<SpatialField>& free_h4 = std::nullopt,
                             const SolveTolerances& tol = {});

}  // namespace fgx
