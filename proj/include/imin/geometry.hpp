#ifndef IMIN_GEOMETRY_HPP
#define IMIN_GEOMETRY_HPP

//
// Fermat point (geometric median) of a source plus n geocast-region centers.
//
// Three independent locators share one objective, the total path length
// |source - p| + sum_k |dest_k - p|:
//   minima_fermat_point     exhaustive grid scan (the routing scheme's solver)
//   weiszfeld_fermat_point  iteratively reweighted centroid (verification oracle)
//   torricelli_triangle     classical equilateral-apex construction, 3 anchors only
//

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "imin/errors.hpp"

namespace imin {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point2d = Point2<double>;

template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

template <typename Scalar>
bool is_finite(const Point2<Scalar>& p) {
    return std::isfinite(p.x()) && std::isfinite(p.y());
}

// Which anchors enter the objective and gradient sums. WithSource is the full
// source->point->destinations path; DestinationsOnly sums over the geocast
// regions alone and is kept for comparison runs.
enum class AnchorScope { WithSource, DestinationsOnly };

enum class FermatMethod { GridMinima, Weiszfeld, Torricelli };

inline std::string_view to_string(FermatMethod m) {
    switch (m) {
    case FermatMethod::GridMinima: return "GridMinima";
    case FermatMethod::Weiszfeld: return "Weiszfeld";
    case FermatMethod::Torricelli: return "Torricelli";
    }
    return "?";
}

// Distance below which a candidate is treated as sitting on an anchor.
inline constexpr double kCoincidenceEpsilon = 1e-9;

// Source plus n >= 1 destinations, stored column-wise: column 0 is the source.
template <typename Scalar>
class AnchorSet {
public:
    AnchorSet(const Point2<Scalar>& source, const std::vector<Point2<Scalar>>& destinations)
        : points_(2, static_cast<Eigen::Index>(destinations.size() + 1)) {
        if (destinations.empty())
            throw InvalidArgument("anchor set needs at least one destination");
        points_.col(0) = source;
        for (std::size_t k = 0; k < destinations.size(); ++k)
            points_.col(static_cast<Eigen::Index>(k + 1)) = destinations[k];
        if (!points_.allFinite())
            throw InvalidArgument("anchor coordinates must be finite");
    }

    Point2<Scalar> source() const { return points_.col(0); }
    Point2<Scalar> destination(Eigen::Index k) const { return points_.col(k + 1); }
    Eigen::Index destination_count() const { return points_.cols() - 1; }
    Eigen::Index size() const { return points_.cols(); }

    const PointMatrix<Scalar>& points() const { return points_; }

    auto scoped(AnchorScope scope) const {
        const Eigen::Index first = scope == AnchorScope::WithSource ? 0 : 1;
        return points_.middleCols(first, points_.cols() - first);
    }

private:
    PointMatrix<Scalar> points_;
};

template <typename Scalar>
struct SearchBounds {
    Scalar min_x{}, max_x{}, min_y{}, max_y{};
    Scalar step{1};

    // Bounding box of the anchors, the region the grid scan covers by default.
    static SearchBounds enclosing(const AnchorSet<Scalar>& anchors, Scalar step = Scalar(1)) {
        const auto& pts = anchors.points();
        return {pts.row(0).minCoeff(), pts.row(0).maxCoeff(), pts.row(1).minCoeff(),
                pts.row(1).maxCoeff(), step};
    }

    bool contains(const Point2<Scalar>& p) const {
        return p.x() >= min_x && p.x() <= max_x && p.y() >= min_y && p.y() <= max_y;
    }
};

template <typename Scalar>
struct FermatResult {
    Point2<Scalar> point = Point2<Scalar>::Zero();
    Scalar total_distance{};
    FermatMethod method = FermatMethod::GridMinima;
    // Set by torricelli_triangle when the vertices were collinear.
    bool degenerate = false;
    // Weiszfeld iterations taken; grid points scanned for GridMinima.
    std::size_t iterations = 0;
};

template <typename Scalar>
Point2<Scalar> centroid(const AnchorSet<Scalar>& anchors) {
    return anchors.points().rowwise().mean();
}

// Sum of Euclidean distances from `candidate` to the anchors in `scope`.
template <typename Scalar>
Scalar objective(const AnchorSet<Scalar>& anchors, const Point2<Scalar>& candidate,
                 AnchorScope scope) {
    return (anchors.scoped(scope).colwise() - candidate).colwise().norm().sum();
}

// |source - candidate| + sum_k |destination_k - candidate|.
template <typename Scalar>
Scalar total_path_distance(const AnchorSet<Scalar>& anchors, const Point2<Scalar>& candidate) {
    return objective(anchors, candidate, AnchorScope::WithSource);
}

// Partial derivatives of the distance sum at `candidate`. Both components
// vanish at an interior Fermat point. Throws CoincidentAnchor when the
// candidate sits on an anchor, where the sum is not differentiable.
template <typename Scalar>
Point2<Scalar> gradient_terms(const AnchorSet<Scalar>& anchors, const Point2<Scalar>& candidate,
                              AnchorScope scope = AnchorScope::WithSource) {
    const auto pts = anchors.scoped(scope);
    Point2<Scalar> grad = Point2<Scalar>::Zero();
    for (Eigen::Index k = 0; k < pts.cols(); ++k) {
        const Point2<Scalar> delta = candidate - pts.col(k);
        const Scalar dist = delta.norm();
        if (dist <= Scalar(kCoincidenceEpsilon))
            throw CoincidentAnchor("candidate coincides with anchor " + std::to_string(k));
        grad += delta / dist;
    }
    return grad;
}

// Grid scan over `bounds` at `bounds.step`, returning the first grid point (x
// outer, y inner) of minimum objective. Scan points are min + i*step for every
// i keeping the coordinate within [min, max].
template <typename Scalar>
FermatResult<Scalar> minima_fermat_point(const AnchorSet<Scalar>& anchors,
                                         const SearchBounds<Scalar>& bounds,
                                         AnchorScope scope = AnchorScope::WithSource) {
    if (!(bounds.step > Scalar(0)) || !std::isfinite(bounds.step) || !(bounds.min_x <= bounds.max_x) ||
        !(bounds.min_y <= bounds.max_y))
        throw EmptyGrid("search bounds produce no grid points");
    const auto& pts = anchors.points();
    for (Eigen::Index k = 0; k < pts.cols(); ++k)
        if (!bounds.contains(pts.col(k)))
            throw InvalidArgument("search bounds do not enclose every anchor");

    // Slack keeps an endpoint that is an exact multiple of step from being lost to rounding.
    const auto count = [&](Scalar lo, Scalar hi) {
        return static_cast<long long>(std::floor((hi - lo) / bounds.step * Scalar(1 + 1e-12) + Scalar(1e-9))) + 1;
    };
    const long long nx = count(bounds.min_x, bounds.max_x);
    const long long ny = count(bounds.min_y, bounds.max_y);

    FermatResult<Scalar> best;
    best.method = FermatMethod::GridMinima;
    Scalar best_value = std::numeric_limits<Scalar>::infinity();
    for (long long i = 0; i < nx; ++i) {
        const Scalar x = bounds.min_x + Scalar(i) * bounds.step;
        for (long long j = 0; j < ny; ++j) {
            const Point2<Scalar> p(x, bounds.min_y + Scalar(j) * bounds.step);
            const Scalar value = objective(anchors, p, scope);
            if (value < best_value) {
                best_value = value;
                best.point = p;
            }
        }
    }
    best.iterations = static_cast<std::size_t>(nx * ny);
    best.total_distance = total_path_distance(anchors, best.point);
    return best;
}

namespace detail {

// Sum of unit vectors from anchor column `k` toward every anchor not sitting
// on it, plus the number of anchors that do (including itself).
template <typename Scalar>
std::pair<Point2<Scalar>, Scalar> pull_at_anchor(const PointMatrix<Scalar>& pts, Eigen::Index k) {
    const Point2<Scalar> p = pts.col(k);
    Point2<Scalar> pull = Point2<Scalar>::Zero();
    Scalar multiplicity{0};
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
        const Point2<Scalar> delta = pts.col(j) - p;
        const Scalar dist = delta.norm();
        if (dist <= Scalar(kCoincidenceEpsilon))
            multiplicity += Scalar(1);
        else
            pull += delta / dist;
    }
    return {pull, multiplicity};
}

} // namespace detail

// Weiszfeld iteration x <- (sum a/|x-a|) / (sum 1/|x-a|) started from the
// anchor centroid, stopping once the Weiszfeld or Newton step is shorter
// than `tolerance`. Each iteration moves to the better of the Weiszfeld
// point and a backtracked Newton step. An anchor is returned directly when
// it satisfies the subgradient optimality test |sum of unit vectors to the
// others| <= its multiplicity.
template <typename Scalar>
FermatResult<Scalar> weiszfeld_fermat_point(const AnchorSet<Scalar>& anchors, Scalar tolerance,
                                            std::size_t max_iterations) {
    if (!(tolerance > Scalar(0)))
        throw InvalidArgument("weiszfeld tolerance must be positive");
    if (max_iterations < 1)
        throw InvalidArgument("weiszfeld needs at least one iteration");

    const auto& pts = anchors.points();
    const auto finish = [&](const Point2<Scalar>& p, std::size_t iterations) {
        FermatResult<Scalar> r;
        r.point = p;
        r.total_distance = total_path_distance(anchors, p);
        r.method = FermatMethod::Weiszfeld;
        r.iterations = iterations;
        return r;
    };

    for (Eigen::Index k = 0; k < pts.cols(); ++k) {
        const auto [pull, multiplicity] = detail::pull_at_anchor(pts, k);
        if (pull.norm() <= multiplicity)
            return finish(pts.col(k), 0);
    }

    Point2<Scalar> x = centroid(anchors);
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> dist = (pts.colwise() - x).colwise().norm();
        Eigen::Index nearest = 0;
        if (dist.minCoeff(&nearest) <= Scalar(kCoincidenceEpsilon)) {
            // Landed on a non-optimal anchor: step off it along the descent direction.
            const auto [pull, multiplicity] = detail::pull_at_anchor(pts, nearest);
            x = pts.col(nearest) + Scalar(1e-6) * pull.normalized();
            continue;
        }
        const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w = dist.cwiseInverse();
        const Point2<Scalar> weiszfeld = (pts * w.transpose()) / w.sum();
        const Scalar moved = (weiszfeld - x).norm();

        // Newton candidate on the smooth objective, backtracked until it
        // descends. Plain Weiszfeld crawls when the optimum sits close to an
        // anchor; the Newton step does not.
        Point2<Scalar> next = weiszfeld;
        Scalar next_value = total_path_distance(anchors, weiszfeld);
        Point2<Scalar> grad = Point2<Scalar>::Zero();
        Eigen::Matrix<Scalar, 2, 2> hessian = Eigen::Matrix<Scalar, 2, 2>::Zero();
        for (Eigen::Index k = 0; k < pts.cols(); ++k) {
            const Point2<Scalar> u = (x - pts.col(k)) * w(k);
            grad += u;
            hessian += (Eigen::Matrix<Scalar, 2, 2>::Identity() - u * u.transpose()) * w(k);
        }
        const Point2<Scalar> newton = -hessian.ldlt().solve(grad);
        // Within a few microns of the optimum the objective is flat to
        // rounding, so value comparisons stop being informative. The Newton
        // step is computed from the gradient and stays accurate there.
        if (newton.allFinite() && newton.norm() < tolerance)
            return finish(x + newton, iter);
        if (newton.allFinite()) {
            // Trials shorter than the Weiszfeld step can only win on rounding
            // noise and would stall the iteration.
            for (Scalar scale(1); scale * newton.norm() >= moved; scale /= Scalar(2)) {
                const Point2<Scalar> trial = x + scale * newton;
                const Scalar value = total_path_distance(anchors, trial);
                if (value < next_value) {
                    next = trial;
                    next_value = value;
                    break;
                }
            }
        }
        x = next;
        if (moved < tolerance)
            return finish(x, iter);
    }
    throw NoConvergence("weiszfeld did not converge in " + std::to_string(max_iterations) +
                        " iterations");
}

// Fermat point of triangle abc. A vertex with interior angle >= 120 degrees
// is its own Fermat point; otherwise the point is the intersection of the
// lines from two vertices to the apexes of equilateral triangles erected
// outward on their opposite sides. Collinear vertices yield the middle point
// with `degenerate` set.
template <typename Scalar>
FermatResult<Scalar> torricelli_triangle(const Point2<Scalar>& a, const Point2<Scalar>& b,
                                         const Point2<Scalar>& c) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c))
        throw InvalidArgument("triangle vertices must be finite");
    const Scalar eps(kCoincidenceEpsilon);
    if ((a - b).norm() <= eps || (b - c).norm() <= eps || (a - c).norm() <= eps)
        throw InvalidArgument("triangle vertices must be pairwise distinct");

    const std::vector<Point2<Scalar>> vertices{a, b, c};
    const auto finish = [&](const Point2<Scalar>& p, bool degenerate) {
        const AnchorSet<Scalar> anchors(a, {b, c});
        FermatResult<Scalar> r;
        r.point = p;
        r.total_distance = total_path_distance(anchors, p);
        r.method = FermatMethod::Torricelli;
        r.degenerate = degenerate;
        return r;
    };

    const Point2<Scalar> ab = b - a, ac = c - a;
    const Scalar cross = ab.x() * ac.y() - ab.y() * ac.x();
    const Scalar scale = std::max(ab.squaredNorm(), ac.squaredNorm());
    if (std::abs(cross) <= Scalar(1e-12) * scale) {
        // The middle point is the one not on the longest side.
        const Scalar dab = ab.norm(), dbc = (c - b).norm(), dac = ac.norm();
        if (dab >= dbc && dab >= dac)
            return finish(c, true);
        if (dbc >= dab && dbc >= dac)
            return finish(a, true);
        return finish(b, true);
    }

    for (int k = 0; k < 3; ++k) {
        const Point2<Scalar>& v = vertices[k];
        const Point2<Scalar> u = vertices[(k + 1) % 3] - v;
        const Point2<Scalar> w = vertices[(k + 2) % 3] - v;
        if (u.dot(w) / (u.norm() * w.norm()) <= Scalar(-0.5))
            return finish(v, false);
    }

    // Apex of the equilateral triangle on side pq, on the far side from `opposite`.
    const auto outward_apex = [](const Point2<Scalar>& p, const Point2<Scalar>& q,
                                 const Point2<Scalar>& opposite) {
        const Point2<Scalar> mid = (p + q) / Scalar(2);
        const Point2<Scalar> side = q - p;
        Point2<Scalar> normal(-side.y(), side.x());
        normal *= std::sqrt(Scalar(3)) / Scalar(2);
        if (normal.dot(opposite - mid) > Scalar(0))
            normal = -normal;
        return Point2<Scalar>(mid + normal);
    };
    const Point2<Scalar> apex_a = outward_apex(b, c, a);
    const Point2<Scalar> apex_b = outward_apex(c, a, b);

    // a + t (apex_a - a) = b + s (apex_b - b)
    Eigen::Matrix<Scalar, 2, 2> m;
    m.col(0) = apex_a - a;
    m.col(1) = b - apex_b;
    const Point2<Scalar> ts = m.colPivHouseholderQr().solve(b - a);
    return finish(a + ts(0) * (apex_a - a), false);
}

} // namespace imin

#endif // IMIN_GEOMETRY_HPP
