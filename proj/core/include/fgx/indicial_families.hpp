#pragma once

#include <vector>

#include "fgx/lambda_matrix.hpp"

namespace fgx {

/// Exact indicial families of the geometric operators at the de Sitter
/// boundary, written in the 4-component splitting
///   (scalar ds^2/s^2 slot, mixed slot, trace slot, trace-free slot).
/// Matrices whose natural normalization carries a global factor 1/2 are
/// stored doubled so that every entry is a polynomial with integer
/// coefficients; the accessors say which convention they use.

/// Linearized Einstein family, stored as 2*I(DRic - Lambda, lambda):
///   [ n(L-2), 0, -nL(L-2), 0 ]
///   [ 0,      0,  0,       0 ]
///   [ -L+2n,  0,  L(L-2n), 0 ]
///   [ 0,      0,  0,       L(L-n) ]
LambdaMatrix ricci_indicial(int n);

/// Formal lambda-derivative of ricci_indicial (i.e. 2 * d/dL I(DRic-Lambda)).
LambdaMatrix ricci_indicial_derivative(int n);

/// Symmetric-gradient family I(delta*, lambda), 4x2.
LambdaMatrix deltastar_indicial();

/// Divergence-of-trace-reversal family, stored as 2*I(deltaG, lambda), 2x4:
///   [ L-2n, 0, n(L-2), 0 ]
///   [ 0, 2(L-(n+1)), 0, 0 ]
LambdaMatrix deltaG_indicial(int n);

/// Building blocks of the gauged operator (natural normalization, no factor 2).
LambdaMatrix wave_indicial(int n);            // tensor wave operator, 4x4
LambdaMatrix curvature_indicial(int n);       // curvature term R_g, 4x4
LambdaMatrix trace_reversal_indicial(int n);  // G_g = id - (1/2) g tr_g, 4x4
LambdaMatrix divergence_indicial(int n);      // delta_g, 2x4
LambdaMatrix gauge_E_indicial(int n);         // E, 2x4
LambdaMatrix gauge_Etilde_indicial();         // E-tilde, 4x2
LambdaMatrix modified_symgrad_indicial();     // delta*-tilde = delta* + E-tilde, 4x2

/// Indicial family of the gauge-fixed linearized Einstein operator,
///   L^2 - nL + [ -4L+2(n+2), 0, 2n(L-2), 0 ;
///                0, -4L+3(n+1), 0, 0 ;
///                -2, 0, 2n, 0 ;
///                0, 0, 0, 0 ].
LambdaMatrix gauged_indicial(int n);

/// Same matrix assembled from the building blocks,
///   box - 2n + 2*Etilde*(delta o G) + 2*R - 2*(delta*-tilde) o E.
/// Equals gauged_indicial(n) identically; exposed so the identity can be
/// checked at the polynomial level.
LambdaMatrix gauged_indicial_assembled(int n);

/// Indicial family of the gauge-propagation operator (-deltaG + E) o delta*,
/// 2x2 diagonal: -1/2 diag((L-2)(L-n), (L+1)(L-(n+1))).
LambdaMatrix gauge_propagation_indicial(int n);

/// Rational roots of a polynomial with multiplicity; throws if the polynomial
/// does not split into rational linear factors.
std::vector<Rational> rational_roots_with_multiplicity(const LambdaPoly& p);

/// Roots of det(gauged_indicial(n)) with multiplicity, sorted ascending.
/// For every n >= 3 this is {0, 2, 2, 3, n, n, n, n+1}.
std::vector<Rational> indicial_roots(int n);

}  // namespace fgx
