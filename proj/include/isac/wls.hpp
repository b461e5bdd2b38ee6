// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "isac/ranging.hpp"
#include "isac/selection.hpp"
#include "isac/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

namespace isac {

enum class InitMode { GridSearch, CentroidOfSubset, FixedPoint, WarmStart };

std::string_view to_string(InitMode m);

struct WlsConfig {
    double epsilon = 1e-4;  // m
    int max_iters = 50;
    InitMode init_mode = InitMode::GridSearch;
    double grid_step = 1.0;  // m, GridSearch only
    int grid_seeds = 8;      // GridSearch only

    void validate() const;
};

template <typename Scalar>
struct WlsResult {
    Point2<Scalar> estimate = Point2<Scalar>::Zero();
    int iterations = 0;
    bool converged = false;
    Scalar final_step_norm = std::numeric_limits<Scalar>::quiet_NaN();
};

/// Backtracking halvings tried before a Gauss-Newton step is abandoned.
inline constexpr int kMaxHalvings = 8;

/// e_n = d_hat_n - |q - s_n|.
template <typename Derived>
VectorX<typename Derived::Scalar> residuals(const Point2<typename Derived::Scalar>& q,
                                            const Eigen::MatrixBase<Derived>& anchors,
                                            const VectorX<typename Derived::Scalar>& ranges) {
    if (anchors.rows() != ranges.size()) throw std::invalid_argument("residuals: size mismatch");
    return ranges - ((-anchors).rowwise() + q.transpose()).rowwise().norm();
}

/// Weighted sum of squared residuals sum e_n^2 / crlb_n.
template <typename Derived>
typename Derived::Scalar wls_objective(const Point2<typename Derived::Scalar>& q,
                                       const Eigen::MatrixBase<Derived>& anchors,
                                       const VectorX<typename Derived::Scalar>& ranges,
                                       const VectorX<typename Derived::Scalar>& crlbs) {
    return (residuals(q, anchors, ranges).array().square() / crlbs.array()).sum();
}

/// Delta q = (H^T W H)^-1 H^T W e with W = diag(1 / crlb_n).
/// Throws SingularGeometry (rank-deficient normal matrix) or DegenerateGeometry.
template <typename Derived>
Point2<typename Derived::Scalar> gauss_newton_step(const Point2<typename Derived::Scalar>& q,
                                                   const Eigen::MatrixBase<Derived>& anchors,
                                                   const VectorX<typename Derived::Scalar>& ranges,
                                                   const VectorX<typename Derived::Scalar>& crlbs) {
    using Scalar = typename Derived::Scalar;
    const GeometryMatrix<Scalar> h = geometry_matrix(q, anchors);
    const VectorX<Scalar> w = crlbs.cwiseInverse();
    Eigen::Matrix<Scalar, 2, 2> normal;
    const Scalar gmean = normalized_normal_matrix(h, w, normal);
    if (!(normal.determinant() > Scalar(kSingularDet)))
        throw SingularGeometry("gauss_newton_step: singular normal matrix");
    const VectorX<Scalar> e = residuals(q, anchors, ranges);
    const Point2<Scalar> rhs = h.transpose() * (w / gmean).asDiagonal() * e;
    return normal.inverse() * rhs;
}

/// Gauss-Newton from `init` with step-halving backtracking. Stops when the accepted
/// step is at most epsilon (converged), after max_iters, or when no halving decreases
/// the objective or the step is singular (not converged, last iterate returned).
template <typename Derived>
WlsResult<typename Derived::Scalar> solve_wls(const Eigen::MatrixBase<Derived>& anchors,
                                              const VectorX<typename Derived::Scalar>& ranges,
                                              const VectorX<typename Derived::Scalar>& crlbs,
                                              const WlsConfig& cfg,
                                              const Point2<typename Derived::Scalar>& init) {
    using Scalar = typename Derived::Scalar;
    if (anchors.rows() < 3 || ranges.size() != anchors.rows() || crlbs.size() != anchors.rows())
        throw std::invalid_argument("solve_wls: need >= 3 consistent measurements");

    // Weights are rescaled so the smallest CRLB is 1; iterates do not depend on a
    // common scale of the CRLBs.
    const VectorX<Scalar> scaled = crlbs / crlbs.minCoeff();

    WlsResult<Scalar> out;
    out.estimate = init;
    Scalar f = wls_objective(out.estimate, anchors, ranges, scaled);
    for (int it = 1; it <= cfg.max_iters; ++it) {
        out.iterations = it;
        Point2<Scalar> step;
        try {
            step = gauss_newton_step(out.estimate, anchors, ranges, scaled);
        } catch (const SingularGeometry&) {
            return out;
        } catch (const DegenerateGeometry&) {
            return out;
        }
        const Scalar norm = step.norm();
        if (norm <= Scalar(cfg.epsilon)) {
            out.estimate += step;
            out.final_step_norm = norm;
            out.converged = true;
            return out;
        }
        Scalar t(1);
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h, t /= Scalar(2)) {
            const Point2<Scalar> candidate = out.estimate + t * step;
            const Scalar fc = wls_objective(candidate, anchors, ranges, scaled);
            if (fc <= f) {
                out.estimate = candidate;
                f = fc;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.final_step_norm = norm;
            return out;
        }
        out.final_step_norm = t * norm;
        if (out.final_step_norm <= Scalar(cfg.epsilon)) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

/// Local minima of the objective sampled at cell centres over [0, side]^2, lowest first,
/// at most `count` of them. Ties keep scan order.
template <typename Derived>
std::vector<Point2<typename Derived::Scalar>> grid_seeds(const Eigen::MatrixBase<Derived>& anchors,
                                                         const VectorX<typename Derived::Scalar>& ranges,
                                                         const VectorX<typename Derived::Scalar>& crlbs,
                                                         typename Derived::Scalar side,
                                                         typename Derived::Scalar step, int count) {
    using Scalar = typename Derived::Scalar;
    if (!(side > Scalar(0)) || !(step > Scalar(0)) || count < 1)
        throw std::invalid_argument("grid_seeds: side, step and count must be positive");
    const int cells = std::max(1, static_cast<int>(std::ceil(side / step)));
    const Scalar h = side / Scalar(cells);
    const VectorX<Scalar> w = crlbs.cwiseInverse();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> f(cells, cells);
    for (int i = 0; i < cells; ++i) {
        const Scalar x = (Scalar(i) + Scalar(0.5)) * h;
        const auto dx2 = (anchors.col(0).array() - x).square().eval();
        for (int j = 0; j < cells; ++j) {
            const Scalar y = (Scalar(j) + Scalar(0.5)) * h;
            f(i, j) = ((ranges.array() - (dx2 + (anchors.col(1).array() - y).square()).sqrt()).square() *
                       w.array())
                          .sum();
        }
    }
    std::vector<std::pair<Scalar, Point2<Scalar>>> minima;
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            bool local = true;
            for (int di = -1; di <= 1 && local; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, b = j + dj;
                    if ((di || dj) && a >= 0 && b >= 0 && a < cells && b < cells && f(a, b) < f(i, j)) {
                        local = false;
                        break;
                    }
                }
            if (local)
                minima.emplace_back(f(i, j), Point2<Scalar>((Scalar(i) + Scalar(0.5)) * h,
                                                            (Scalar(j) + Scalar(0.5)) * h));
        }
    std::stable_sort(minima.begin(), minima.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<Point2<Scalar>> out;
    for (std::size_t i = 0; i < minima.size() && static_cast<int>(i) < count; ++i)
        out.push_back(minima[i].second);
    return out;
}

/// solve_wls from every start; keeps the estimate inside [0, side]^2 with the lowest
/// objective, or the lowest objective overall if none lands inside. Earlier starts win ties.
template <typename Derived>
WlsResult<typename Derived::Scalar> solve_wls_multistart(
    const Eigen::MatrixBase<Derived>& anchors, const VectorX<typename Derived::Scalar>& ranges,
    const VectorX<typename Derived::Scalar>& crlbs, const WlsConfig& cfg,
    const std::vector<Point2<typename Derived::Scalar>>& starts, typename Derived::Scalar side) {
    using Scalar = typename Derived::Scalar;
    if (starts.empty()) throw std::invalid_argument("solve_wls_multistart: no starting points");
    WlsResult<Scalar> best;
    Scalar best_f = std::numeric_limits<Scalar>::infinity();
    bool best_inside = false;
    for (const auto& start : starts) {
        WlsResult<Scalar> r = solve_wls(anchors, ranges, crlbs, cfg, start);
        const Scalar f = wls_objective(r.estimate, anchors, ranges, crlbs);
        const bool inside =
            (r.estimate.array() >= Scalar(0)).all() && (r.estimate.array() <= side).all();
        if ((inside && !best_inside) || (inside == best_inside && f < best_f)) {
            best = r;
            best_f = f;
            best_inside = inside;
        }
    }
    return best;
}

/// Fuses range measurements taken by the anchors in `anchors` (same row order).
WlsResult<double> solve_wls(const std::vector<RangeMeasurement>& measurements,
                            const PointSet<double>& anchors, const WlsConfig& cfg,
                            const Point2d& init);

}  // namespace isac
