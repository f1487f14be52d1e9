#pragma once

// Splitting a closed tour with a short diagonal. For any cut arclength x
// there is a chord c(t)c(t + x) parallel to the minimum-width direction of
// the tour's hull, hence no longer than length/pi. Cutting along it and
// closing both arcs with the chord yields two tours of length at most
// x + length/pi and (length - x) + length/pi; applying this recursively
// along a split plan gives the guaranteed ratio g(k).

#include "tspsplit/circle_lb.hpp"
#include "tspsplit/errors.hpp"
#include "tspsplit/geometry.hpp"
#include "tspsplit/tsp_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tspsplit {

/// Smallest t in [0, length) at which f(t) = (c(t + x) - c(t)) . u/|u|
/// vanishes. f is piecewise linear with breakpoints at the vertex
/// arclengths s_i and at s_i - x, so a scan over the breakpoints followed
/// by linear interpolation finds the root exactly up to rounding.
inline double chord_at_arclength(const ClosedTour& tour, double x, Point u)
{
    const double len = tour.length();
    if (!(len > 0.0)) throw DomainError("chord search needs a tour of positive length");
    if (!(x > 0.0 && x < len)) throw DomainError("chord arclength must lie strictly between 0 and the tour length");
    const double u_norm = norm(u);
    if (!(u_norm > 0.0)) throw DomainError("chord search needs a nonzero direction");
    const Point unit = (1.0 / u_norm) * u;

    const auto f = [&](double t) { return dot(tour.point_at(t + x) - tour.point_at(t), unit); };

    std::vector<double> breaks;
    breaks.reserve(2 * tour.size() + 1);
    for (std::size_t i = 0; i < tour.size(); ++i) {
        breaks.push_back(tour.vertex_arclength(i));
        breaks.push_back(tour.wrap(tour.vertex_arclength(i) - x));
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    breaks.push_back(len);

    const double zero_tol = 1e-12 * len;
    const double root_tol = 1e-9 * len;
    double prev_t = breaks.front();
    double prev_f = f(prev_t);
    if (std::abs(prev_f) <= zero_tol) return prev_t;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        const double t = breaks[i];
        const double ft = f(t);
        if (std::abs(ft) <= zero_tol) return tour.wrap(t);
        if ((prev_f < 0.0) != (ft < 0.0)) {
            const double root = prev_t + (t - prev_t) * prev_f / (prev_f - ft);
            if (std::abs(f(root)) <= root_tol) return tour.wrap(root);
        }
        prev_t = t;
        prev_f = ft;
    }
    throw InternalError("no chord with the requested arclength is orthogonal to the given direction");
}

/// Diagonal pq with |C(p, q)| = x, parallel to the min-width direction of
/// the tour's convex hull, so |pq| <= w(hull) <= length/pi.
inline Diagonal short_diagonal(const ClosedTour& tour, double x)
{
    const Width width = min_width(tour);
    const double t = chord_at_arclength(tour, x, width.direction.normal());
    const double t_q = tour.wrap(t + x);
    return {tour.point_at(t), tour.point_at(t_q), t, t_q};
}

/// Sends each point to the first part iff its arclength lies in
/// [t_p, t_q) cyclically. Points at p go first, points at q second.
inline std::pair<std::vector<Point>, std::vector<Point>>
assign_points(const ClosedTour& tour, const Diagonal& diagonal, std::span<const Point> points)
{
    const double len = tour.length();
    const double x = tour.wrap(diagonal.t_q - diagonal.t_p);
    const double on_tour = 1e-9 * len;
    const double snap = 1e-12 * len;

    std::pair<std::vector<Point>, std::vector<Point>> parts;
    for (const Point& pt : points) {
        const auto s = arclength_of(tour, pt, on_tour);
        if (!s) throw DomainError("point does not lie on the tour being split");
        double offset = tour.wrap(*s - diagonal.t_p);
        if (offset >= len - snap) offset = 0.0;
        if (offset < x - snap) {
            parts.first.push_back(pt);
        } else {
            parts.second.push_back(pt);
        }
    }
    return parts;
}

/// Two tours C1 = C(p, q) + qp and C2 = C(q, p) + pq and the points each covers.
struct SplitResult {
    Diagonal diagonal;
    double arclength = 0.0;
    ClosedTour first;
    ClosedTour second;
    std::vector<Point> first_points;
    std::vector<Point> second_points;
};

/// Cuts the tour at arclength fraction * length along a short diagonal.
inline SplitResult split_tour(const ClosedTour& tour, std::span<const Point> points, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("split fraction must lie in (0, 1)");
    if (!(tour.length() > 0.0)) throw DomainError("cannot split a zero-length tour");
    const double x = fraction * tour.length();
    const Diagonal diagonal = short_diagonal(tour, x);
    auto [first_points, second_points] = assign_points(tour, diagonal, points);
    return {
        diagonal,
        x,
        ClosedTour(subcurve(tour, diagonal.t_p, diagonal.t_q).points),
        ClosedTour(subcurve(tour, diagonal.t_q, diagonal.t_p).points),
        std::move(first_points),
        std::move(second_points),
    };
}

/// Split at half the length; each half is at most (1/2 + 1/pi) * length.
inline SplitResult halve_tour(const ClosedTour& tour, std::span<const Point> points)
{
    return split_tour(tour, points, 0.5);
}

inline SplitResult halve_tour(const ClosedTour& tour, const Instance& instance)
{
    return halve_tour(tour, instance.points());
}

/// Cut fraction x that balances (x + 1/pi) * ga against (1 - x + 1/pi) * gb.
/// The balancing root lies in (0, 1) only while the smaller ratio exceeds
/// the larger one divided by 1 + pi; otherwise there is no usable cut.
inline double equalizing_fraction(double ga, double gb)
{
    if (!(ga > 0.0 && ga <= 1.0 && gb > 0.0 && gb <= 1.0)) {
        throw DomainError("ratios must lie in (0, 1]");
    }
    constexpr double inv_pi = std::numbers::inv_pi;
    const double x = gb / (ga + gb) + inv_pi * (gb - ga) / (ga + gb);
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("ratios too unbalanced: no cut fraction in (0, 1) equalizes them");
    }
    return x;
}

/// Ratio reached by splitting at the equalizing fraction and then covering
/// the parts with ratios ga and gb: (1 + 2/pi) * ga * gb / (ga + gb).
inline double combined_ratio(double ga, double gb)
{
    return (1.0 + 2.0 * std::numbers::inv_pi) * ga * gb / (ga + gb);
}

/// How g(k) is reached: k = a + b by one split, or k = a * b by covering
/// each of a parts with b salespeople.
struct Decomposition {
    enum class Kind { trivial, sum, product };

    Kind kind = Kind::trivial;
    std::size_t a = 1;
    std::size_t b = 0;

    std::string label() const
    {
        switch (kind) {
        case Kind::sum: return std::to_string(a) + "+" + std::to_string(b);
        case Kind::product: return std::to_string(a) + "*" + std::to_string(b);
        case Kind::trivial: break;
        }
        return "trivial";
    }
};

/// Node of a split plan. A leaf is one salesperson; an internal node cuts
/// its tour at `fraction` of its length and hands the first arc to `first`.
struct PlanNode {
    std::size_t salespeople = 1;
    double ratio = 1.0;
    double fraction = 0.0;
    std::shared_ptr<const PlanNode> first;
    std::shared_ptr<const PlanNode> second;

    bool is_leaf() const noexcept { return first == nullptr; }
};

using PlanPtr = std::shared_ptr<const PlanNode>;

struct SplitPlan {
    std::size_t k = 1;
    PlanPtr root;
    Decomposition decomposition;

    double ratio() const { return root->ratio; }
};

namespace detail {

struct BoundsTable {
    std::vector<double> ratio;                 // index k; entry 0 unused
    std::vector<Decomposition> decomposition;
};

// g(1) = 1, g(k) = min over a + b = k of combined_ratio(g(a), g(b)). The
// product rule g(a*b) <= g(a) g(b) is evaluated as well; it never beats the
// best sum (a product plan is itself a binary split tree) but ties it for
// a = 2, and a tie is reported as the product.
inline BoundsTable bounds_dp(std::size_t k_max)
{
    BoundsTable table;
    table.ratio.assign(k_max + 1, 1.0);
    table.decomposition.assign(k_max + 1, Decomposition{});
    const auto within = [](double v, double best) { return v <= best + 1e-12 * best; };

    for (std::size_t k = 2; k <= k_max; ++k) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 1; a <= k / 2; ++a) {
            best = std::min(best, combined_ratio(table.ratio[a], table.ratio[k - a]));
        }
        double best_product = std::numeric_limits<double>::infinity();
        for (std::size_t a = 2; a * a <= k; ++a) {
            if (k % a == 0) best_product = std::min(best_product, table.ratio[a] * table.ratio[k / a]);
        }
        best = std::min(best, best_product);
        table.ratio[k] = best;

        Decomposition& dec = table.decomposition[k];
        bool found = false;
        for (std::size_t a = 2; a * a <= k && !found; ++a) {
            if (k % a == 0 && within(table.ratio[a] * table.ratio[k / a], best)) {
                dec = {Decomposition::Kind::product, a, k / a};
                found = true;
            }
        }
        for (std::size_t a = 1; a <= k / 2 && !found; ++a) {
            if (within(combined_ratio(table.ratio[a], table.ratio[k - a]), best)) {
                dec = {Decomposition::Kind::sum, a, k - a};
                found = true;
            }
        }
    }
    return table;
}

inline PlanPtr make_leaf()
{
    return std::make_shared<const PlanNode>();
}

inline PlanPtr make_split(PlanPtr first, PlanPtr second)
{
    PlanNode node;
    node.salespeople = first->salespeople + second->salespeople;
    node.fraction = equalizing_fraction(first->ratio, second->ratio);
    node.ratio = combined_ratio(first->ratio, second->ratio);
    node.first = std::move(first);
    node.second = std::move(second);
    return std::make_shared<const PlanNode>(std::move(node));
}

// Copy of `tree` with every leaf replaced by `leaf`. Scaling both children
// of a node by the same ratio leaves its equalizing fraction unchanged, so
// the copy realizes ratio(tree) * ratio(leaf).
inline PlanPtr graft(const PlanPtr& tree, const PlanPtr& leaf)
{
    if (tree->is_leaf()) return leaf;
    return make_split(graft(tree->first, leaf), graft(tree->second, leaf));
}

inline PlanPtr build_plan(std::size_t k, const BoundsTable& table, std::vector<PlanPtr>& memo)
{
    if (memo[k]) return memo[k];
    const Decomposition& dec = table.decomposition[k];
    PlanPtr node;
    switch (dec.kind) {
    case Decomposition::Kind::trivial: node = make_leaf(); break;
    case Decomposition::Kind::sum:
        node = make_split(build_plan(dec.a, table, memo), build_plan(dec.b, table, memo));
        break;
    case Decomposition::Kind::product:
        node = graft(build_plan(dec.a, table, memo), build_plan(dec.b, table, memo));
        break;
    }
    memo[k] = node;
    return node;
}

} // namespace detail

/// Best recursive split plan for k salespeople; ratio() is the guaranteed g(k).
inline SplitPlan split_plan(std::size_t k)
{
    if (k < 1) throw DomainError("number of salespeople must be at least 1");
    const auto table = detail::bounds_dp(k);
    std::vector<PlanPtr> memo(k + 1);
    return {k, detail::build_plan(k, table, memo), table.decomposition[k]};
}

struct PartitionOptions {
    /// Replace a leaf's inherited tour by its exact optimum when shorter.
    bool reoptimize = false;
};

namespace detail {

inline void split_recursive(const PlanNode& node, const ClosedTour& tour, std::vector<Point> points,
                            const PartitionOptions& options, SolveResult& out)
{
    if (points.empty()) return;
    if (node.is_leaf() || tour.length() == 0.0) {
        ClosedTour block_tour = tour;
        if (options.reoptimize && points.size() <= kMaxExactTspPoints) {
            ClosedTour exact = tsp_exact(points);
            if (exact.length() < block_tour.length()) block_tour = std::move(exact);
        }
        out.value = std::max(out.value, block_tour.length());
        out.tours.push_back(std::move(block_tour));
        out.partition.blocks.push_back(std::move(points));
        return;
    }
    SplitResult split = split_tour(tour, points, node.fraction);
    out.diagonals.push_back(split.diagonal);
    split_recursive(*node.first, split.first, std::move(split.first_points), options, out);
    split_recursive(*node.second, split.second, std::move(split.second_points), options, out);
}

} // namespace detail

/// Partitions the points along `tour` (which must pass through all of them)
/// by recursive short-diagonal splits following split_plan(k). Every block
/// tour is at most g(k) * length. Parts that receive no point are dropped.
inline SolveResult partition_k(const Instance& instance, const ClosedTour& tour, std::size_t k,
                               PartitionOptions options = {})
{
    const SplitPlan plan = split_plan(k);
    const double tol = 1e-9 * std::max(tour.length(), 1.0);
    for (const Point& p : instance.points()) {
        if (!arclength_of(tour, p, tol)) throw DomainError("tour does not pass through every point");
    }
    SolveResult result;
    detail::split_recursive(*plan.root, tour, instance.points(), options, result);
    return result;
}

/// One row of the bounds table for gamma(k).
struct BoundsRow {
    std::size_t k = 1;
    double lower = 1.0;
    double upper = 1.0;
    Decomposition decomposition;
};

inline std::vector<BoundsRow> bounds_table(std::size_t k_max)
{
    if (k_max < 1) throw DomainError("k_max must be at least 1");
    const auto table = detail::bounds_dp(k_max);
    std::vector<PlanPtr> memo(k_max + 1);
    std::vector<BoundsRow> rows;
    for (std::size_t k = 1; k <= k_max; ++k) {
        rows.push_back({k, lb_gamma(k), detail::build_plan(k, table, memo)->ratio, table.decomposition[k]});
    }
    return rows;
}

} // namespace tspsplit
