#pragma once

// Regular circular point sets: closed-form tour lengths of consecutive
// arcs, the lower-bound ratio 1/k + sin(pi/k)/pi, and exhaustive checks
// that consecutive arcs are the cheapest subsets of a given size.

#include "tspsplit/errors.hpp"
#include "tspsplit/geometry.hpp"
#include "tspsplit/tsp_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tspsplit {

inline constexpr std::size_t kMaxCircleVerifyPoints = 12;

/// P_n: n points evenly spaced on the unit circle, p_i at angle 2*pi*i/n
/// for i = 1..n. Indices are 1-based at this interface.
struct CirclePointSet {
    std::size_t n = 0;
    std::vector<Point> points;

    const Point& at(std::size_t i) const { return points.at(i - 1); }
};

inline CirclePointSet circle_points(std::size_t n)
{
    if (n < 2) throw DomainError("circular point set needs n >= 2");
    CirclePointSet set{n, {}};
    set.points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        set.points.push_back({std::cos(angle), std::sin(angle)});
    }
    return set;
}

/// m consecutive points of P_n, starting at p_start (1-based, cyclic).
struct ArcSubset {
    std::size_t n = 0;
    std::size_t start = 1;
    std::size_t size = 0;

    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < size; ++r) out.push_back((start - 1 + r) % n + 1);
        return out;
    }
};

/// Optimal tour length of m consecutive points of P_n:
/// (m - 1) * 2 sin(pi/n) + 2 sin(pi (m - 1)/n).
inline double arc_tsp_length(std::size_t n, std::size_t m)
{
    if (n < 2 || m < 1 || m > n) throw DomainError("arc size must satisfy 1 <= m <= n");
    const double step = std::numbers::pi / static_cast<double>(n);
    return static_cast<double>(m - 1) * 2.0 * std::sin(step)
           + 2.0 * std::sin(step * static_cast<double>(m - 1));
}

/// Lower bound on gamma(k) from balanced arcs of a large circle.
inline double lb_gamma(std::size_t k)
{
    if (k < 1) throw DomainError("k must be at least 1");
    const double kk = static_cast<double>(k);
    return 1.0 / kk + std::sin(std::numbers::pi / kk) / std::numbers::pi;
}

namespace detail {

inline std::vector<std::size_t> mask_to_indices(std::size_t mask, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) out.push_back(i + 1);
    }
    return out;
}

inline std::size_t indices_to_mask(const std::vector<std::size_t>& indices, std::size_t n)
{
    std::size_t mask = 0;
    for (std::size_t i : indices) {
        if (i < 1 || i > n) throw DomainError("circle index out of range 1.." + std::to_string(n));
        const std::size_t bit = std::size_t{1} << (i - 1);
        if (mask & bit) throw DomainError("duplicate circle index " + std::to_string(i));
        mask |= bit;
    }
    return mask;
}

inline std::vector<Point> select(const CirclePointSet& set, const std::vector<std::size_t>& indices)
{
    std::vector<Point> out;
    for (std::size_t i : indices) out.push_back(set.at(i));
    return out;
}

} // namespace detail

struct ArcOptimalityReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t subsets_checked = 0;
    double arc_value = 0.0;         // exact TSP(A_m)
    double closed_form = 0.0;       // arc_tsp_length(n, m)
    double min_value = 0.0;
    double max_value = 0.0;
    std::vector<std::size_t> min_witness;
    std::vector<std::size_t> max_witness;
};

/// Solves every m-subset B of P_n exactly and checks TSP(A_m) <= TSP(B),
/// where A_m = {p_1, ..., p_m}. Throws VerificationError on a counterexample.
inline ArcOptimalityReport verify_arc_optimality(std::size_t n, std::size_t m)
{
    detail::check_capacity(n, kMaxCircleVerifyPoints, "arc optimality check");
    if (n < 2 || m < 1 || m > n) throw DomainError("arc size must satisfy 1 <= m <= n");
    const CirclePointSet set = circle_points(n);
    const auto cost = subset_tour_lengths(set.points);

    ArcOptimalityReport report;
    report.n = n;
    report.m = m;
    const std::size_t arc_mask = (std::size_t{1} << m) - 1;
    report.arc_value = cost[arc_mask];
    report.closed_form = arc_tsp_length(n, m);
    report.min_value = std::numeric_limits<double>::infinity();
    report.max_value = -std::numeric_limits<double>::infinity();

    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
        ++report.subsets_checked;
        const double c = cost[mask];
        if (c < report.min_value) {
            report.min_value = c;
            report.min_witness = detail::mask_to_indices(mask, n);
        }
        if (c > report.max_value) {
            report.max_value = c;
            report.max_witness = detail::mask_to_indices(mask, n);
        }
        if (report.arc_value > c + 1e-9) {
            throw VerificationError("arc of " + std::to_string(m) + " points on P_"
                                    + std::to_string(n) + " is beaten by a non-arc subset");
        }
    }
    return report;
}

struct TransformStep {
    std::vector<std::size_t> subset;  // B', sorted 1-based indices
    double delta = 0.0;               // TSP(B) - TSP(B')
};

/// Closes the gap after p_i: with p_i, p_j in B and p_{i+1..j-1} absent
/// (indices cyclic mod n, gap of at least two), returns
/// B' = B \ {p_j} u {p_{i+1}} and the exact change in tour length.
inline TransformStep transform_step(std::size_t n, const std::vector<std::size_t>& subset,
                                    std::size_t i, std::size_t j)
{
    detail::check_capacity(n, kMaxExactTspPoints, "transform step");
    const CirclePointSet set = circle_points(n);
    const std::size_t mask = detail::indices_to_mask(subset, n);
    const auto has = [&](std::size_t idx) { return (mask >> (idx - 1)) & 1U; };
    if (i < 1 || i > n || j < 1 || j > n || !has(i) || !has(j)) {
        throw DomainError("transform step needs p_i and p_j in the subset");
    }
    const std::size_t gap = (j + n - i) % n;
    if (gap < 2) throw DomainError("transform step needs at least one missing point between p_i and p_j");
    for (std::size_t r = 1; r < gap; ++r) {
        if (has((i - 1 + r) % n + 1)) throw DomainError("points between p_i and p_j must be absent");
    }

    const std::size_t next = i % n + 1;
    const std::size_t moved = (mask & ~(std::size_t{1} << (j - 1))) | (std::size_t{1} << (next - 1));
    TransformStep step;
    step.subset = detail::mask_to_indices(moved, n);
    const double before = tsp_exact(detail::select(set, detail::mask_to_indices(mask, n))).length();
    const double after = tsp_exact(detail::select(set, step.subset)).length();
    step.delta = before - after;
    return step;
}

/// First (i, j) with i < j consecutive members of B and j > i + 1, scanning
/// without wraparound; none exists once B is a run {b, ..., b + m - 1}.
inline std::optional<std::pair<std::size_t, std::size_t>>
next_transform_step(std::size_t n, const std::vector<std::size_t>& subset)
{
    detail::check_capacity(n, 63, "transform step");
    const auto sorted = detail::mask_to_indices(detail::indices_to_mask(subset, n), n);
    for (std::size_t r = 1; r < sorted.size(); ++r) {
        if (sorted[r] > sorted[r - 1] + 1) return std::pair{sorted[r - 1], sorted[r]};
    }
    return std::nullopt;
}

struct TransformReport {
    std::size_t n = 0;
    std::size_t moves_checked = 0;
    double min_delta = 0.0;
};

/// Applies every valid gap-closing move to every subset of P_n and checks
/// that none lengthens the optimal tour. Throws VerificationError otherwise.
inline TransformReport verify_transform_steps(std::size_t n)
{
    detail::check_capacity(n, kMaxCircleVerifyPoints, "transform step check");
    const CirclePointSet set = circle_points(n);
    const auto cost = subset_tour_lengths(set.points);

    TransformReport report;
    report.n = n;
    report.min_delta = std::numeric_limits<double>::infinity();
    const auto bit = [](std::size_t idx0) { return std::size_t{1} << idx0; };
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & bit(i))) continue;
            std::size_t gap = 1;
            while (!(mask & bit((i + gap) % n))) ++gap;
            if (gap < 2) continue;
            const std::size_t j = (i + gap) % n;
            const std::size_t moved = (mask & ~bit(j)) | bit((i + 1) % n);
            const double delta = cost[mask] - cost[moved];
            ++report.moves_checked;
            report.min_delta = std::min(report.min_delta, delta);
            if (delta < -1e-9) {
                throw VerificationError("gap-closing move lengthens the tour on P_" + std::to_string(n));
            }
        }
    }
    return report;
}

/// Ratio of a balanced k-partition of P_n to the full tour. Closed form
/// when k divides n; otherwise solved by the exact partition oracle.
inline double gamma_circle(std::size_t n, std::size_t k)
{
    if (k < 1) throw DomainError("k must be at least 1");
    if (k == 1) return 1.0;
    if (n % k == 0) return arc_tsp_length(n, n / k) / arc_tsp_length(n, n);
    return gamma_ratio(Instance(circle_points(n).points), k);
}

} // namespace tspsplit
