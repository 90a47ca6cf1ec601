#pragma once

#include <utility>

#include "fgx/spatial_field.hpp"

namespace fgx {

/// Spectral partial derivative along a coordinate axis (1-based, 1..n).
/// Exact for band-limited fields; resolution-1 axes return zero.
SpatialField partial_derivative(const SpatialField& f, int axis);

/// Internal variant with 0-based axis.
SpatialField partial_derivative0(const SpatialField& f, int axis0);

/// Christoffel symbols Gamma^k_{ij} of a spatial metric in chart coordinates,
/// index order [k][i][j]. Symmetric in (i, j).
SpatialField christoffel(const SpatialMetric& g);

/// Ricci tensor of a spatial metric, from Gamma and its derivatives.
SpatialField ricci(const SpatialMetric& g);

/// Scalar curvature g^{ij} R_ij.
SpatialField scalar_curvature(const SpatialMetric& g);

/// Pointwise trace g^{ij} t_{ij} of a rank-2 field.
SpatialField trace(const SpatialMetric& g, const SpatialField& t);

/// Divergence of a symmetric 2-tensor, with the sign convention
///   (delta_g k)_i = -g^{ab} k_{ia;b},
/// for symmetric rank-2 k.
SpatialField divergence(const SpatialMetric& g, const SpatialField& k);

/// Trace-free part t - (tr_g t / n) g.
SpatialField tracefree_part(const SpatialMetric& g, const SpatialField& t);

/// Constraint residuals of initial data (gamma, k) with cosmological
/// constant Lambda:
///   first:  R_gamma - |k|^2 + (tr k)^2 - 2 Lambda   (scalar)
///   second: delta_gamma k + d tr_gamma k            (one-form)
std::pair<SpatialField, SpatialField> check_constraints(const SpatialMetric& gamma,
                                                        const SpatialField& k, double lambda);

/// |t|^2_g = g^{ia} g^{jb} t_{ij} t_{ab} for rank-2 t.
SpatialField squared_norm(const SpatialMetric& g, const SpatialField& t);

/// Transverse-traceless projection of a symmetric rank-2 field with respect
/// to the flat metric delta, done mode-by-mode in Fourier space. Only valid
/// on flat backgrounds; used to repair the divergence of order-n data.
SpatialField tt_project_flat(const SpatialField& t);

}  // namespace fgx
