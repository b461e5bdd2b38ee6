// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/channel.hpp"
#include "isac/scene.hpp"
#include "isac/types.hpp"

#include <cmath>
#include <vector>

namespace isac {

template <typename Scalar>
using GeometryMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

/// Diagonal of inverse eCRLBs (m^-2).
template <typename Scalar>
using WeightMatrix = Eigen::DiagonalMatrix<Scalar, Eigen::Dynamic>;

// det(H^T W H) threshold after scaling W to unit geometric mean.
inline constexpr double kSingularDet = 1e-10;

/// Unit line-of-sight rows (q_hat - s_n) / |q_hat - s_n|.
/// Throws DegenerateGeometry if q_hat coincides with any anchor.
template <typename Derived>
GeometryMatrix<typename Derived::Scalar> geometry_matrix(
    const Point2<typename Derived::Scalar>& q_hat, const Eigen::MatrixBase<Derived>& anchors) {
    using Scalar = typename Derived::Scalar;
    GeometryMatrix<Scalar> h = (-anchors).rowwise() + q_hat.transpose();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const Scalar norm = h.row(i).norm();
        if (!(norm > Scalar(0))) throw DegenerateGeometry("geometry_matrix: estimate coincides with an anchor");
        h.row(i) /= norm;
    }
    return h;
}

/// Normal matrix H^T W H with W rescaled to unit geometric mean. Returns the scale.
template <typename DerivedH, typename Scalar>
Scalar normalized_normal_matrix(const Eigen::MatrixBase<DerivedH>& h,
                                const VectorX<Scalar>& weights,
                                Eigen::Matrix<Scalar, 2, 2>& normal) {
    using std::exp;
    using std::log;
    Scalar log_sum(0);
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > Scalar(0)) || !std::isfinite(static_cast<double>(weights[i])))
            throw std::invalid_argument("weights must be positive and finite");
        log_sum += log(weights[i]);
    }
    const Scalar gmean = exp(log_sum / Scalar(weights.size()));
    normal = h.transpose() * (weights / gmean).asDiagonal() * h;
    return gmean;
}

/// sqrt(Tr[(H^T W H)^-1]). Throws SingularGeometry when the scale-free determinant
/// falls to kSingularDet or below.
template <typename DerivedH>
typename DerivedH::Scalar wgdop(const Eigen::MatrixBase<DerivedH>& h,
                                const WeightMatrix<typename DerivedH::Scalar>& w) {
    using Scalar = typename DerivedH::Scalar;
    using std::sqrt;
    if (h.rows() != w.rows()) throw std::invalid_argument("wgdop: dimension mismatch");
    Eigen::Matrix<Scalar, 2, 2> normal;
    const Scalar gmean = normalized_normal_matrix(h, VectorX<Scalar>(w.diagonal()), normal);
    if (!(normal.determinant() > Scalar(kSingularDet)))
        throw SingularGeometry("wgdop: singular or near-collinear geometry");
    return sqrt(normal.inverse().trace() / gmean);
}

struct SubsetSelection {
    std::vector<int> members;  // strictly increasing
    double wgdop = 0.0;
    bool feasible = false;
};

/// Exhaustive minimum-WGDOP search over all k-subsets, weights 1/ecrlb(q_hat, s_n).
/// Subsets are visited in lexicographic order; a later subset must beat the incumbent
/// by more than a relative 1e-12 to replace it, so ties resolve to the smallest list.
/// Throws NoFeasibleSubset when every subset is singular or degenerate.
SubsetSelection select_subset(const Point2d& q_hat, const std::vector<Point2d>& positions,
                              const SensingParams& params, int k);

inline SubsetSelection select_subset(const Point2d& q_hat, const Scene& scene,
                                     const SensingParams& params, int k) {
    return select_subset(q_hat, scene.subnet_positions, params, k);
}

/// Reduction used when combining partial searches: lower WGDOP wins, near-ties go to
/// the lexicographically smaller member list.
const SubsetSelection& better_subset(const SubsetSelection& a, const SubsetSelection& b);

}  // namespace isac
