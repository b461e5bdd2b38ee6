// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2d = Point2<double>;

/// K planar points stored one per row.
template <typename Scalar>
using PointSet = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Rows of `positions` picked by `members`, in order.
inline PointSet<double> gather(const std::vector<Point2d>& positions,
                               const std::vector<int>& members) {
    PointSet<double> out(static_cast<Eigen::Index>(members.size()), 2);
    for (std::size_t i = 0; i < members.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = positions.at(members[i]).transpose();
    return out;
}

/// Euclidean distance between two planar points.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
    return (a - b).norm();
}

// Smallest range (m) used wherever a distance enters a d^-4 or d^6 law.
inline constexpr double kMinRange = 1e-3;

class DegenerateGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFeasibleSubset : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Aggregated configuration failure; each entry is "field.path: message".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

}  // namespace isac
