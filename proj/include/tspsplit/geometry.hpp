#pragma once

// Planar primitives: points, closed polygonal tours under their arclength
// parametrization, convex hulls and (directional) widths.

#include "tspsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <ranges>
#include <span>
#include <utility>
#include <vector>

namespace tspsplit {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
};

/// Lexicographic (x, then y) order; used for hulls and deterministic dedup.
constexpr bool lex_less(const Point& a, const Point& b)
{
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

template <typename R>
concept PointRange = std::ranges::forward_range<R>
                     && std::same_as<std::ranges::range_value_t<R>, Point>;

/// An angle in [0, pi) naming the unit vector (cos theta, sin theta).
class Direction {
public:
    constexpr Direction() = default;
    explicit Direction(double theta) : theta_(normalize(theta)) {}

    /// Direction of the (nonzero) vector v, folded into [0, pi).
    static Direction of(Point v) { return Direction(std::atan2(v.y, v.x)); }

    double theta() const noexcept { return theta_; }
    Point unit() const { return {std::cos(theta_), std::sin(theta_)}; }
    /// Unit vector orthogonal to unit(), rotated by +pi/2.
    Point normal() const { return {-std::sin(theta_), std::cos(theta_)}; }

private:
    static double normalize(double theta)
    {
        constexpr double pi = std::numbers::pi;
        double t = std::fmod(theta, pi);
        if (t < 0.0) t += pi;
        if (t >= pi) t -= pi;
        return t;
    }

    double theta_ = 0.0;
};

/// Open polygonal chain, e.g. a subcurve C(p, q) of a closed tour.
struct Chain {
    std::vector<Point> points;

    double length() const
    {
        double sum = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            sum += distance(points[i - 1], points[i]);
        }
        return sum;
    }
};

/// Closed polygonal curve through `vertices()` in stored order, closed by
/// the edge from the last vertex back to the first. One vertex is a point
/// tour of length zero; two vertices form an out-and-back tour.
class ClosedTour {
public:
    explicit ClosedTour(std::vector<Point> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.empty()) {
            throw DomainError("closed tour needs at least one vertex");
        }
        for (const Point& p : vertices_) {
            if (!is_finite(p)) throw DomainError("tour vertex is not finite");
        }
        const std::size_t m = vertices_.size();
        arclength_.resize(m + 1);
        arclength_[0] = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            arclength_[i + 1] = arclength_[i] + distance(vertices_[i], vertices_[(i + 1) % m]);
        }
    }

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    double length() const noexcept { return arclength_.back(); }

    /// Arclength at which vertex i is reached; vertex_arclength(size()) == length().
    double vertex_arclength(std::size_t i) const { return arclength_.at(i); }

    /// Reduces t modulo length() into [0, length()).
    double wrap(double t) const
    {
        const double len = length();
        if (len <= 0.0) throw DomainError("zero-length tour has no parametrization");
        double r = std::fmod(t, len);
        if (r < 0.0) r += len;
        if (r >= len) r -= len;
        return r;
    }

    /// Index of the edge that contains arclength position t (already wrapped).
    std::size_t edge_at(double t) const
    {
        const auto first = arclength_.begin();
        const auto last = first + static_cast<std::ptrdiff_t>(vertices_.size());
        auto it = std::upper_bound(first, last, t);
        return static_cast<std::size_t>(it - first) - 1;
    }

    /// c(t): the point at arclength t from vertices()[0], taken modulo length().
    Point point_at(double t) const
    {
        const double s = wrap(t);
        const std::size_t i = edge_at(s);
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % vertices_.size()];
        const double edge = arclength_[i + 1] - arclength_[i];
        const double u = (s - arclength_[i]) / edge;
        return a + u * (b - a);
    }

private:
    std::vector<Point> vertices_;
    std::vector<double> arclength_;
};

/// Line segment between two points of a tour, with their arclength positions.
struct Diagonal {
    Point p;
    Point q;
    double t_p = 0.0;
    double t_q = 0.0;

    double length() const { return distance(p, q); }
};

inline double tour_length(const ClosedTour& tour) { return tour.length(); }

inline Point point_at(const ClosedTour& tour, double t) { return tour.point_at(t); }

/// C(c(t1), c(t2)): the chain from c(t1) forward to c(t2). Its arclength is
/// (t2 - t1) mod length(); equal parameters give a single-point chain.
inline Chain subcurve(const ClosedTour& tour, double t1, double t2)
{
    const double len = tour.length();
    const double a = tour.wrap(t1);
    const double b = tour.wrap(t2);
    const double span = b >= a ? b - a : b - a + len;

    Chain chain;
    chain.points.push_back(tour.point_at(a));
    if (span <= 0.0) return chain;

    const std::size_t m = tour.size();
    const std::size_t first_edge = tour.edge_at(a);
    const double end = a + span;
    for (std::size_t r = 1; r <= m; ++r) {
        const std::size_t idx = (first_edge + r) % m;
        const double s = tour.vertex_arclength(idx) + (first_edge + r >= m ? len : 0.0);
        if (s >= end) break;
        if (s > a) chain.points.push_back(tour.vertices()[idx]);
    }
    chain.points.push_back(tour.point_at(b));
    return chain;
}

/// Smallest arclength at which `p` lies on the tour, within distance `tol`.
/// Exact vertex matches take precedence over projections onto edges.
inline std::optional<double> arclength_of(const ClosedTour& tour, Point p, double tol)
{
    const auto& v = tour.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == p) return tour.vertex_arclength(i);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % v.size()];
        const double edge = tour.vertex_arclength(i + 1) - tour.vertex_arclength(i);
        double u = 0.0;
        if (edge > 0.0) u = std::clamp(dot(p - a, b - a) / (edge * edge), 0.0, 1.0);
        const Point foot = a + u * (b - a);
        if (distance(foot, p) <= tol) {
            const double s = tour.vertex_arclength(i) + u * edge;
            return s >= tour.length() ? 0.0 : s;
        }
    }
    return std::nullopt;
}

/// Convex hull by monotone chain. Vertices come out counterclockwise,
/// starting from the lexicographically smallest point, with no three
/// consecutive vertices collinear (tolerance 1e-12 of the bounding-box
/// diagonal). Collinear input yields its two extreme points.
template <PointRange R>
std::vector<Point> convex_hull(const R& input)
{
    std::vector<Point> pts(std::ranges::begin(input), std::ranges::end(input));
    if (pts.empty()) throw DomainError("convex hull of an empty set");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    double min_y = pts.front().y;
    double max_y = pts.front().y;
    for (const Point& p : pts) {
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double diag = std::hypot(pts.back().x - pts.front().x, max_y - min_y);
    const double tol = 1e-12 * diag;

    // Pops `a` from o-a-b unless it is a strict left turn, measured as the
    // distance of a from the line o-b.
    const auto not_left = [tol](Point o, Point a, Point b) {
        return cross(a - o, b - o) <= tol * distance(o, b);
    };

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && not_left(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && not_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

/// Extent of the projection onto u_theta: max <u, p> - min <u, p>.
template <PointRange R>
double directional_width(const R& points, Direction dir)
{
    const Point u = dir.unit();
    auto it = std::ranges::begin(points);
    const auto end = std::ranges::end(points);
    if (it == end) throw DomainError("width of an empty set");
    double lo = dot(u, *it);
    double hi = lo;
    for (++it; it != end; ++it) {
        const double d = dot(u, *it);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

inline double directional_width(const ClosedTour& tour, Direction dir)
{
    return directional_width(tour.vertices(), dir);
}

struct Width {
    double width = 0.0;
    Direction direction;
};

/// Minimum directional width. The optimum is attained with one support
/// line flush against a hull edge, so only edge normals are candidates;
/// rotating calipers pair each edge with its farthest vertex in O(h).
template <PointRange R>
Width min_width(const R& points)
{
    const std::vector<Point> hull = convex_hull(points);
    const std::size_t h = hull.size();
    if (h == 1) return {0.0, Direction(0.0)};
    if (h == 2) {
        const Point d = hull[1] - hull[0];
        const Direction dir(std::atan2(d.y, d.x) + std::numbers::pi / 2);
        return {directional_width(hull, dir), dir};
    }

    const auto height = [&](std::size_t edge, std::size_t v) {
        const Point a = hull[edge];
        const Point b = hull[(edge + 1) % h];
        return cross(b - a, hull[v % h] - a) / distance(a, b);
    };

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_edge = 0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t steps = 0; steps < h && height(i, j + 1) >= height(i, j); ++steps) {
            j = (j + 1) % h;
        }
        const double w = height(i, j);
        if (w < best) {
            best = w;
            best_edge = i;
        }
    }
    const Point e = hull[(best_edge + 1) % h] - hull[best_edge];
    const Direction dir(std::atan2(e.x, -e.y));
    return {directional_width(hull, dir), dir};
}

inline Width min_width(const ClosedTour& tour) { return min_width(tour.vertices()); }

inline double perimeter(std::span<const Point> polygon)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        sum += distance(polygon[i], polygon[(i + 1) % polygon.size()]);
    }
    return sum;
}

} // namespace tspsplit
