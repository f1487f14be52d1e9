#include "tspsplit/circle_lb.hpp"
#include "tspsplit/curve_split.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace {

using namespace tspsplit;
using tspsplit::testing::random_points;
using tspsplit::testing::random_simple_polygon;

constexpr double kInvPi = std::numbers::inv_pi;
const double kGamma2 = 0.5 + kInvPi;
const std::vector<Point> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Point> kRectangle{{0, 0}, {2, 0}, {2, 1}, {0, 1}};

double chord_residual(const ClosedTour& tour, double t, double x, Point u)
{
    return dot(tour.point_at(t + x) - tour.point_at(t), (1.0 / norm(u)) * u);
}

bool on_tour(const ClosedTour& tour, Point p)
{
    return arclength_of(tour, p, 1e-9 * std::max(1.0, tour.length())).has_value();
}

TEST(ChordAtArclength, SquareVerticalChord)
{
    const ClosedTour sq(kSquare);
    const double t = chord_at_arclength(sq, 2.0, {1, 0});
    EXPECT_NEAR(chord_residual(sq, t, 2.0, {1, 0}), 0.0, 1e-12);
    EXPECT_NEAR(t, 0.5, 1e-12);  // smallest root
    EXPECT_NEAR(sq.point_at(t).x, 0.5, 1e-12);
    EXPECT_NEAR(sq.point_at(t + 2).y, 1.0, 1e-12);
}

TEST(ChordAtArclength, HalvingChordOfRegularPolygonPassesThroughCentre)
{
    const ClosedTour poly(circle_points(100).points);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Point u{uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5};
        const double x = poly.length() / 2;
        const double t = chord_at_arclength(poly, x, u);
        EXPECT_NEAR(chord_residual(poly, t, x, u), 0.0, 1e-9 * poly.length());
        const Point mid = 0.5 * (poly.point_at(t) + poly.point_at(t + x));
        EXPECT_NEAR(norm(mid), 0.0, 1e-9);
    }
}

TEST(ChordAtArclength, CollinearTourGivesZeroLengthChord)
{
    const ClosedTour seg({{0, 0}, {2, 0}});
    const double t = chord_at_arclength(seg, 2.0, {1, 0});
    EXPECT_NEAR(distance(seg.point_at(t), seg.point_at(t + 2.0)), 0.0, 1e-12);
}

TEST(ChordAtArclength, Preconditions)
{
    const ClosedTour sq(kSquare);
    EXPECT_THROW(chord_at_arclength(sq, 0.0, {1, 0}), DomainError);
    EXPECT_THROW(chord_at_arclength(sq, 4.0, {1, 0}), DomainError);
    EXPECT_THROW(chord_at_arclength(sq, 1.0, {0, 0}), DomainError);
    EXPECT_THROW(chord_at_arclength(ClosedTour({{1, 1}}), 1.0, {1, 0}), DomainError);
}

TEST(ChordAtArclength, RootOnRandomPolygonsAndDirections)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const ClosedTour tour(random_simple_polygon(3 + trial % 15, rng));
        const double x = (0.01 + 0.98 * uniform_unit(rng)) * tour.length();
        const double a = uniform_unit(rng) * 2 * std::numbers::pi;
        const Point u{std::cos(a), std::sin(a)};
        const double t = chord_at_arclength(tour, x, u);
        EXPECT_GE(t, 0.0);
        EXPECT_LT(t, tour.length());
        EXPECT_LE(std::abs(chord_residual(tour, t, x, u)), 1e-9 * tour.length());
    }
}

TEST(ShortDiagonal, RectangleAndSquare)
{
    const ClosedTour rect(kRectangle);
    const Diagonal d = short_diagonal(rect, 3.0);
    EXPECT_NEAR(d.length(), 1.0, 1e-12);
    EXPECT_NEAR(d.p.x, d.q.x, 1e-12);
    EXPECT_LE(d.length(), 6 * kInvPi);

    const Diagonal s = short_diagonal(ClosedTour(kSquare), 2.0);
    EXPECT_NEAR(s.length(), 1.0, 1e-12);
    EXPECT_LE(s.length(), 4 * kInvPi);
}

TEST(ShortDiagonal, NearCircleIsAsymptoticallyTight)
{
    const ClosedTour poly(circle_points(100).points);
    const Diagonal d = short_diagonal(poly, poly.length() / 2);
    EXPECT_LE(d.length(), poly.length() * kInvPi + 1e-12);
    EXPECT_NEAR(d.length(), poly.length() * kInvPi, 2e-3);
    EXPECT_NEAR(d.length(), 2.0, 2e-3);
}

TEST(ShortDiagonal, FuzzedBoundAndArclength)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const ClosedTour tour(random_simple_polygon(3 + trial % 20, rng));
        const double len = tour.length();
        const double x = (1e-3 + (1 - 2e-3) * uniform_unit(rng)) * len;
        const Diagonal d = short_diagonal(tour, x);
        EXPECT_LE(d.length(), len * kInvPi + 1e-9);
        EXPECT_NEAR(tour.wrap(d.t_q - d.t_p), x, 1e-9 * len);
        EXPECT_NEAR(subcurve(tour, d.t_p, d.t_q).length(), x, 1e-9 * len);
        EXPECT_LE(d.length(), min_width(tour).width + 1e-9 * len);
    }
}

TEST(AssignPoints, TieBreakAtDiagonalEnds)
{
    const ClosedTour sq(kSquare);
    const Diagonal d{{0.5, 0}, {0.5, 1}, 0.5, 2.5};
    const std::vector<Point> pts{{0.5, 0}, {0.5, 1}};
    const auto [first, second] = assign_points(sq, d, pts);
    EXPECT_EQ(first, (std::vector<Point>{{0.5, 0}}));
    EXPECT_EQ(second, (std::vector<Point>{{0.5, 1}}));
}

TEST(AssignPoints, SquareHalvingByArcs)
{
    const ClosedTour sq(kSquare);
    const Diagonal d = short_diagonal(sq, 2.0);
    ASSERT_NEAR(d.p.x, 0.5, 1e-12);
    ASSERT_NEAR(d.p.y, 0.0, 1e-12);
    const auto [first, second] = assign_points(sq, d, kSquare);
    EXPECT_EQ(first, (std::vector<Point>{{1, 0}, {1, 1}}));
    EXPECT_EQ(second, (std::vector<Point>{{0, 0}, {0, 1}}));
}

TEST(AssignPoints, RejectsPointOffTour)
{
    const ClosedTour sq(kSquare);
    const Diagonal d = short_diagonal(sq, 2.0);
    EXPECT_THROW(assign_points(sq, d, std::vector<Point>{{0.5, 0.5}}), DomainError);
}

TEST(HalveTour, SquareCorners)
{
    const SplitResult r = halve_tour(ClosedTour(kSquare), Instance(kSquare));
    EXPECT_NEAR(r.first.length(), 3.0, 1e-12);
    EXPECT_NEAR(r.second.length(), 3.0, 1e-12);
    EXPECT_LE(3.0, 4 * kGamma2);
    EXPECT_EQ(r.first_points.size() + r.second_points.size(), 4U);
}

TEST(HalveTour, LargeCircleApproachesPiPlusTwo)
{
    const auto pts = circle_points(1000).points;
    const ClosedTour tour(pts);
    const SplitResult r = halve_tour(tour, pts);
    const double worst = std::max(r.first.length(), r.second.length());
    EXPECT_NEAR(worst, std::numbers::pi + 2, 1e-4);
    EXPECT_LE(worst / tour.length(), kGamma2 + 1e-12);
    EXPECT_GE(worst / tour.length(), kGamma2 - 1e-5);
}

TEST(HalveTour, TwoPointTour)
{
    const std::vector<Point> pts{{0, 0}, {2, 0}};
    const SplitResult r = halve_tour(ClosedTour(pts), pts);
    EXPECT_NEAR(r.diagonal.length(), 0.0, 1e-12);
    EXPECT_NEAR(r.first.length(), 2.0, 1e-12);
    EXPECT_NEAR(r.second.length(), 2.0, 1e-12);
    EXPECT_EQ(r.first_points.size(), 1U);
    EXPECT_EQ(r.second_points.size(), 1U);
}

TEST(HalveTour, FuzzedEqualHalvesWithinBound)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const auto poly = random_simple_polygon(3 + trial % 15, rng);
        const ClosedTour tour(poly);
        const double len = tour.length();
        const SplitResult r = halve_tour(tour, poly);
        EXPECT_NEAR(r.first.length(), r.second.length(), 1e-9 * len);
        EXPECT_LE(r.first.length(), kGamma2 * len + 1e-9);
        EXPECT_LE(r.second.length(), kGamma2 * len + 1e-9);
    }
}

TEST(SplitTour, SplitResultInvariants)
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        const auto poly = random_simple_polygon(3 + trial % 15, rng);
        const ClosedTour tour(poly);
        const double len = tour.length();
        const double fraction = 0.02 + 0.96 * uniform_unit(rng);
        const SplitResult r = split_tour(tour, poly, fraction);
        const double chord = r.diagonal.length();
        EXPECT_NEAR(r.arclength, fraction * len, 1e-12 * len);
        EXPECT_NEAR(r.first.length(), r.arclength + chord, 1e-9 * len);
        EXPECT_NEAR(r.second.length(), len - r.arclength + chord, 1e-9 * len);
        EXPECT_LE(chord, len * kInvPi + 1e-9);
        EXPECT_EQ(r.first_points.size() + r.second_points.size(), poly.size());
        for (const Point& p : r.first_points) EXPECT_TRUE(on_tour(r.first, p));
        for (const Point& p : r.second_points) EXPECT_TRUE(on_tour(r.second, p));
    }
}

TEST(SplitTour, QuarterOfSquareAndThirdOfRectangle)
{
    const SplitResult sq = split_tour(ClosedTour(kSquare), kSquare, 0.25);
    EXPECT_LE(sq.first.length(), 1 + 4 * kInvPi);
    EXPECT_LE(sq.second.length(), 3 + 4 * kInvPi);

    const SplitResult rect = split_tour(ClosedTour(kRectangle), kRectangle, 1.0 / 3);
    EXPECT_NEAR(rect.first.length(), 2 + rect.diagonal.length(), 1e-12);
    EXPECT_LE(rect.diagonal.length(), 6 * kInvPi);
}

TEST(SplitTour, HalfIsHalving)
{
    const ClosedTour rect(kRectangle);
    const SplitResult a = split_tour(rect, kRectangle, 0.5);
    const SplitResult b = halve_tour(rect, kRectangle);
    EXPECT_EQ(a.first.vertices(), b.first.vertices());
    EXPECT_EQ(a.second_points, b.second_points);
}

TEST(SplitTour, RejectsBadFraction)
{
    const ClosedTour sq(kSquare);
    EXPECT_THROW(split_tour(sq, kSquare, 0.0), DomainError);
    EXPECT_THROW(split_tour(sq, kSquare, 1.0), DomainError);
}

TEST(EqualizingFraction, SymmetricAndAgainstBisection)
{
    EXPECT_DOUBLE_EQ(equalizing_fraction(0.7, 0.7), 0.5);

    const double x = equalizing_fraction(1.0, kGamma2);
    const double oracle = tspsplit::testing::bisect(
        [](double t) { return (t + kInvPi) * 1.0 - (1 - t + kInvPi) * (0.5 + kInvPi); }, 0.0, 1.0);
    EXPECT_NEAR(x, oracle, 1e-12);
    EXPECT_NEAR(x, 0.418232, 1e-6);
    EXPECT_NEAR((x + kInvPi) * 1.0, combined_ratio(1.0, kGamma2), 1e-12);
    EXPECT_NEAR(combined_ratio(1.0, kGamma2), 0.736542, 1e-6);
}

TEST(EqualizingFraction, BalancesAndStaysInsideUnitInterval)
{
    // Sampled over all of (0, 1]^2. Where a balancing cut exists it lies
    // strictly inside (0, 1); it exists exactly when min/max > 1/(1 + pi).
    const double threshold = 1.0 / (1.0 + std::numbers::pi);
    std::mt19937_64 rng(23);
    std::size_t balanced = 0;
    std::size_t rejected = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const double ga = 1e-6 + (1 - 1e-6) * uniform_unit(rng);
        const double gb = 1e-6 + (1 - 1e-6) * uniform_unit(rng);
        const double skew = std::min(ga, gb) / std::max(ga, gb);
        if (std::abs(skew - threshold) < 1e-12) continue;
        if (skew < threshold) {
            EXPECT_THROW(equalizing_fraction(ga, gb), DomainError) << ga << ' ' << gb;
            ++rejected;
            continue;
        }
        const double x = equalizing_fraction(ga, gb);
        EXPECT_GT(x, 0.0);
        EXPECT_LT(x, 1.0);
        EXPECT_NEAR((x + kInvPi) * ga, (1 - x + kInvPi) * gb, 1e-12);
        EXPECT_NEAR((x + kInvPi) * ga, combined_ratio(ga, gb), 1e-12);
        ++balanced;
    }
    EXPECT_GT(balanced, 0U);
    EXPECT_GT(rejected, 0U);
    EXPECT_THROW(equalizing_fraction(0.0, 0.5), DomainError);
    EXPECT_THROW(equalizing_fraction(0.5, 1.5), DomainError);
}

TEST(EqualizingFraction, UnbalancedRatiosHaveNoCutInsideTheUnitInterval)
{
    // the unconstrained root for (1, 0.01) is about -0.30
    const double root = 0.01 / 1.01 + kInvPi * (0.01 - 1) / 1.01;
    EXPECT_LT(root, 0.0);
    EXPECT_THROW(equalizing_fraction(1.0, 0.01), DomainError);
    EXPECT_THROW(equalizing_fraction(0.01, 1.0), DomainError);
}

TEST(EqualizingFraction, EveryPairUsedByTheBoundsStaysInside)
{
    for (std::size_t k = 2; k <= 64; ++k) {
        for (std::size_t a = 1; a < k; ++a) {
            const double x = equalizing_fraction(split_plan(a).ratio(), split_plan(k - a).ratio());
            EXPECT_GT(x, 0.0);
            EXPECT_LT(x, 1.0);
        }
    }
}

TEST(SplitPlan, KnownRatios)
{
    EXPECT_EQ(split_plan(1).ratio(), 1.0);
    EXPECT_TRUE(split_plan(1).root->is_leaf());
    EXPECT_NEAR(split_plan(2).ratio(), kGamma2, 1e-15);

    const SplitPlan three = split_plan(3);
    EXPECT_NEAR(three.ratio(), 0.737, 5e-4);
    EXPECT_EQ(three.decomposition.label(), "1+2");

    const SplitPlan ten = split_plan(10);
    EXPECT_NEAR(ten.ratio(), 0.519, 5e-4);
    EXPECT_EQ(ten.decomposition.label(), "2*5");
    EXPECT_NEAR(ten.ratio(), combined_ratio(split_plan(5).ratio(), split_plan(5).ratio()), 1e-12);
}

void check_node(const PlanNode& node)
{
    if (node.is_leaf()) {
        EXPECT_EQ(node.salespeople, 1U);
        EXPECT_EQ(node.ratio, 1.0);
        return;
    }
    check_node(*node.first);
    check_node(*node.second);
    EXPECT_EQ(node.salespeople, node.first->salespeople + node.second->salespeople);
    EXPECT_NEAR((node.fraction + kInvPi) * node.first->ratio, node.ratio, 1e-12);
    EXPECT_NEAR((1 - node.fraction + kInvPi) * node.second->ratio, node.ratio, 1e-12);
}

TEST(SplitPlan, TreeStructureAndMonotoneRatios)
{
    double prev = 1.0;
    for (std::size_t k = 1; k <= 24; ++k) {
        const SplitPlan plan = split_plan(k);
        EXPECT_EQ(plan.root->salespeople, k);
        check_node(*plan.root);
        EXPECT_LE(plan.ratio(), prev + 1e-15);
        prev = plan.ratio();
    }
    for (std::size_t a = 1; a <= 12; ++a) {
        for (std::size_t b = 1; a * b <= 12; ++b) {
            EXPECT_LE(split_plan(a * b).ratio(), split_plan(a).ratio() * split_plan(b).ratio() + 1e-12);
        }
    }
    EXPECT_THROW(split_plan(0), DomainError);
}

TEST(PartitionK, OneSalespersonKeepsTheTour)
{
    const ClosedTour sq(kSquare);
    const SolveResult r = partition_k(Instance(kSquare), sq, 1);
    ASSERT_EQ(r.tours.size(), 1U);
    EXPECT_EQ(r.tours[0].vertices(), sq.vertices());
    EXPECT_EQ(r.value, 4.0);
    EXPECT_TRUE(r.diagonals.empty());
}

TEST(PartitionK, SquareIntoTwo)
{
    const SolveResult r = partition_k(Instance(kSquare), ClosedTour(kSquare), 2);
    EXPECT_NEAR(r.value, 3.0, 1e-12);
    EXPECT_LE(r.value, split_plan(2).ratio() * 4);
    EXPECT_EQ(r.partition.blocks.size(), 2U);
    EXPECT_EQ(r.diagonals.size(), 1U);
}

TEST(PartitionK, ReoptimizeNeverHurts)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst(random_points(9, rng));
        const ClosedTour tour = tsp_exact(inst);
        const double plain = partition_k(inst, tour, 3).value;
        const double better = partition_k(inst, tour, 3, {true}).value;
        EXPECT_LE(better, plain + 1e-12);
    }
}

TEST(PartitionK, FuzzedGuaranteeAndExactPartition)
{
    std::mt19937_64 rng(101);
    for (std::size_t k = 2; k <= 8; ++k) {
        const double g = split_plan(k).ratio();
        for (int trial = 0; trial < 40; ++trial) {
            const auto pts = random_points(4 + trial % 12, rng);
            const Instance inst(pts);
            const ClosedTour tour(inst.points());
            const SolveResult r = partition_k(inst, tour, k);
            EXPECT_LE(r.value, g * tour.length() + 1e-9);
            EXPECT_LE(r.partition.blocks.size(), k);
            std::vector<Point> all;
            for (std::size_t b = 0; b < r.tours.size(); ++b) {
                ASSERT_FALSE(r.partition.blocks[b].empty());
                for (const Point& p : r.partition.blocks[b]) EXPECT_TRUE(on_tour(r.tours[b], p));
                all.insert(all.end(), r.partition.blocks[b].begin(), r.partition.blocks[b].end());
            }
            auto expected = inst.points();
            std::sort(all.begin(), all.end(), lex_less);
            std::sort(expected.begin(), expected.end(), lex_less);
            EXPECT_EQ(all, expected);
        }
    }
}

TEST(PartitionK, OracleDominatesGuaranteedSplit)
{
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst(random_points(5 + trial % 5, rng));
        const ClosedTour tour = tsp_exact(inst);
        for (std::size_t k = 2; k <= 4; ++k) {
            EXPECT_LE(tsp_k_exact(inst, k).value, partition_k(inst, tour, k).value + 1e-9);
        }
    }
}

TEST(PartitionK, RequiresPointsOnTour)
{
    EXPECT_THROW(partition_k(Instance({{0.5, 0.5}}), ClosedTour(kSquare), 2), DomainError);
}

TEST(BoundsTable, Rows)
{
    const auto rows = bounds_table(10);
    ASSERT_EQ(rows.size(), 10U);
    EXPECT_EQ(rows[0].lower, 1.0);
    EXPECT_EQ(rows[0].upper, 1.0);
    EXPECT_EQ(rows[0].decomposition.label(), "trivial");
    EXPECT_NEAR(rows[4].lower, 0.387, 5e-4);
    EXPECT_NEAR(rows[4].upper, 0.634, 5e-4);
    EXPECT_NEAR(rows[7].lower, 0.247, 5e-4);
    EXPECT_NEAR(rows[7].upper, 0.548, 5e-4);
    const char* labels[] = {"1+1", "1+2", "2*2", "2+3", "2*3", "3+4", "2*4", "4+5", "2*5"};
    for (std::size_t i = 1; i < 10; ++i) {
        EXPECT_EQ(rows[i].decomposition.label(), labels[i - 1]) << rows[i].k;
        EXPECT_GT(rows[i].lower, 0.0);
        EXPECT_LE(rows[i].lower, rows[i].upper);
        EXPECT_LE(rows[i].upper, 1.0);
    }
    EXPECT_THROW(bounds_table(0), DomainError);
}

} // namespace
