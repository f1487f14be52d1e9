#pragma once

// Exact desk-scale oracles: optimal tours (Held-Karp), optimal min-max
// k-partitions and the ratio TSP_k(P) / TSP(P).

#include "tspsplit/errors.hpp"
#include "tspsplit/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tspsplit {

inline constexpr std::size_t kMaxExactTspPoints = 18;
inline constexpr std::size_t kMaxPartitionPoints = 13;
inline constexpr std::size_t kMaxSubsetTablePoints = 16;

/// A planar point set. Coincident points are merged on construction,
/// keeping the first occurrence, so all stored points are distinct.
class Instance {
public:
    explicit Instance(std::vector<Point> points)
    {
        if (points.empty()) throw DomainError("instance needs at least one point");
        for (const Point& p : points) {
            if (!is_finite(p)) throw DomainError("instance point is not finite");
            if (std::find(points_.begin(), points_.end(), p) == points_.end()) {
                points_.push_back(p);
            }
        }
    }

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<Point> points_;
};

/// Pairwise-disjoint nonempty blocks covering an instance.
struct Partition {
    std::vector<std::vector<Point>> blocks;
};

/// A min-max cover: one closed tour per block; value is the longest one.
struct SolveResult {
    Partition partition;
    std::vector<ClosedTour> tours;
    double value = 0.0;
    /// Cutting diagonals, for results built by tour splitting.
    std::vector<Diagonal> diagonals;
};

namespace detail {

inline std::vector<double> distance_matrix(std::span<const Point> pts)
{
    const std::size_t n = pts.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i * n + j] = d[j * n + i] = distance(pts[i], pts[j]);
        }
    }
    return d;
}

inline void check_capacity(std::size_t n, std::size_t limit, const char* what)
{
    if (n > limit) {
        throw CapacityError(std::string(what) + ": " + std::to_string(n)
                            + " points exceeds the limit of " + std::to_string(limit));
    }
}

} // namespace detail

/// Optimal closed tour by Held-Karp dynamic programming, O(n^2 2^n).
/// The tour starts at the first point; ties resolve to the smallest index.
inline ClosedTour tsp_exact(std::span<const Point> pts, std::size_t max_points = kMaxExactTspPoints)
{
    const std::size_t n = pts.size();
    if (n == 0) throw DomainError("tsp of an empty point set");
    detail::check_capacity(n, max_points, "exact tsp");
    if (n <= 3) return ClosedTour({pts.begin(), pts.end()});

    const auto d = detail::distance_matrix(pts);
    // Subsets range over points 1..n-1; bit j-1 stands for point j.
    const std::size_t m = n - 1;
    const std::size_t full = (std::size_t{1} << m) - 1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost((full + 1) * m, inf);
    std::vector<std::uint8_t> parent((full + 1) * m, 0);

    for (std::size_t j = 0; j < m; ++j) cost[(std::size_t{1} << j) * m + j] = d[j + 1];
    for (std::size_t set = 1; set <= full; ++set) {
        for (std::size_t j = 0; j < m; ++j) {
            const double base = cost[set * m + j];
            if (base == inf) continue;
            for (std::size_t v = 0; v < m; ++v) {
                const std::size_t bit = std::size_t{1} << v;
                if (set & bit) continue;
                const double c = base + d[(j + 1) * n + v + 1];
                double& slot = cost[(set | bit) * m + v];
                if (c < slot) {
                    slot = c;
                    parent[(set | bit) * m + v] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    double best = inf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double c = cost[full * m + j] + d[j + 1];
        if (c < best) {
            best = c;
            last = j;
        }
    }

    std::vector<Point> order;
    order.reserve(n);
    std::size_t set = full;
    std::size_t j = last;
    while (set != 0) {
        order.push_back(pts[j + 1]);
        const std::size_t prev = parent[set * m + j];
        set &= ~(std::size_t{1} << j);
        j = prev;
    }
    order.push_back(pts[0]);
    std::reverse(order.begin(), order.end());
    return ClosedTour(std::move(order));
}

inline ClosedTour tsp_exact(const Instance& instance, std::size_t max_points = kMaxExactTspPoints)
{
    return tsp_exact(instance.points(), max_points);
}

/// Optimal tour length of every subset, indexed by bitmask over `pts`
/// (entry 0 is unused and zero). Each subset's paths are rooted at its
/// lowest member, so one table pass serves all 2^n subsets.
inline std::vector<double> subset_tour_lengths(std::span<const Point> pts,
                                               std::size_t max_points = kMaxSubsetTablePoints)
{
    const std::size_t n = pts.size();
    detail::check_capacity(n, max_points, "subset tour table");
    const auto d = detail::distance_matrix(pts);
    const std::size_t count = std::size_t{1} << n;
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> path(count * n, inf);
    std::vector<double> tour(count, 0.0);
    for (std::size_t r = 0; r < n; ++r) path[(std::size_t{1} << r) * n + r] = 0.0;

    for (std::size_t set = 1; set < count; ++set) {
        const auto root = static_cast<std::size_t>(std::countr_zero(set));
        double closed = inf;
        for (std::size_t j = root; j < n; ++j) {
            const double base = path[set * n + j];
            if (base == inf) continue;
            closed = std::min(closed, base + d[j * n + root]);
            for (std::size_t v = root + 1; v < n; ++v) {
                const std::size_t bit = std::size_t{1} << v;
                if (set & bit) continue;
                double& slot = path[(set | bit) * n + v];
                slot = std::min(slot, base + d[j * n + v]);
            }
        }
        tour[set] = closed;
    }
    return tour;
}

namespace detail {

// Depth-first walk over restricted-growth strings with labels < k, in
// lexicographic order. A block's tour can only grow as points join it,
// so a partial assignment whose longest block already matches the best
// value is cut off. Only strict improvements replace the incumbent,
// which leaves the lexicographically smallest minimizer in place.
class PartitionSearch {
public:
    PartitionSearch(const std::vector<double>& subset_cost, std::size_t n, std::size_t k)
        : cost_(subset_cost), n_(n), k_(k), masks_(k, 0), labels_(n, 0)
    {
    }

    std::vector<std::size_t> run()
    {
        visit(0, 0, 0.0);
        return best_labels_;
    }

private:
    bool dominated(double value) const
    {
        return has_best_ && value >= best_ - 1e-12 * best_;
    }

    void visit(std::size_t i, std::size_t used, double partial_max)
    {
        if (dominated(partial_max)) return;
        if (i == n_) {
            best_ = partial_max;
            best_labels_ = labels_;
            has_best_ = true;
            return;
        }
        const std::size_t top = std::min(used, k_ - 1);
        for (std::size_t label = 0; label <= top; ++label) {
            masks_[label] |= std::size_t{1} << i;
            labels_[i] = label;
            visit(i + 1, std::max(used, label + 1), std::max(partial_max, cost_[masks_[label]]));
            masks_[label] &= ~(std::size_t{1} << i);
        }
    }

    const std::vector<double>& cost_;
    std::size_t n_;
    std::size_t k_;
    std::vector<std::size_t> masks_;
    std::vector<std::size_t> labels_;
    std::vector<std::size_t> best_labels_;
    double best_ = 0.0;
    bool has_best_ = false;
};

} // namespace detail

/// TSP_k(P): minimum over partitions into at most k blocks of the longest
/// optimal block tour. Ties go to the lexicographically smallest
/// restricted-growth string over the instance order.
inline SolveResult tsp_k_exact(const Instance& instance, std::size_t k,
                               std::size_t max_points = kMaxPartitionPoints)
{
    if (k == 0) throw DomainError("number of salespeople must be at least 1");
    const auto& pts = instance.points();
    const std::size_t n = pts.size();
    detail::check_capacity(n, max_points, "exact k-partition");

    const auto cost = subset_tour_lengths(pts, max_points);
    const auto labels = detail::PartitionSearch(cost, n, k).run();

    SolveResult result;
    const std::size_t blocks = 1 + *std::max_element(labels.begin(), labels.end());
    result.partition.blocks.resize(blocks);
    for (std::size_t i = 0; i < n; ++i) result.partition.blocks[labels[i]].push_back(pts[i]);
    for (const auto& block : result.partition.blocks) {
        result.tours.push_back(tsp_exact(block));
        result.value = std::max(result.value, result.tours.back().length());
    }
    return result;
}

/// gamma(P, k) = TSP_k(P) / TSP(P).
inline double gamma_ratio(const Instance& instance, std::size_t k,
                          std::size_t max_points = kMaxPartitionPoints)
{
    detail::check_capacity(instance.size(), max_points, "exact k-partition");
    const double tsp = tsp_exact(instance).length();
    if (tsp <= 0.0) throw DomainError("ratio undefined: optimal tour has zero length");
    return tsp_k_exact(instance, k, max_points).value / tsp;
}

enum class TourStrategy { exact, inherited };

/// Tour for one block: solved exactly, or taken over from an enclosing tour
/// that must pass through every point of the block.
inline ClosedTour tour_of_subset(std::span<const Point> block, TourStrategy strategy,
                                 const ClosedTour* inherited = nullptr)
{
    if (block.empty()) throw DomainError("tour of an empty block");
    if (strategy == TourStrategy::exact) {
        return tsp_exact(Instance({block.begin(), block.end()}));
    }
    if (inherited == nullptr) throw DomainError("inherited strategy needs a tour");
    const double tol = 1e-9 * std::max(inherited->length(), 1.0);
    for (const Point& p : block) {
        if (!arclength_of(*inherited, p, tol)) {
            throw DomainError("block point does not lie on the inherited tour");
        }
    }
    return *inherited;
}

} // namespace tspsplit
