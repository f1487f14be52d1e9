// Splits the optimal tour of a random instance among k salespeople and
// prints each block next to the guaranteed and the optimal value.
//
//   split_demo [n] [k] [seed]

#include "tspsplit/tspsplit.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv)
{
    using namespace tspsplit;
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10;
    const std::size_t k = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
    const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

    try {
        const Instance instance(uniform_points(n, seed));
        const ClosedTour tour = tsp_exact(instance);
        const SplitPlan plan = split_plan(k);
        const SolveResult split = partition_k(instance, tour, k);

        std::printf("n=%zu k=%zu  TSP=%.6f  g(k)=%.6f (%s)\n", instance.size(), k, tour.length(), plan.ratio(),
                    plan.decomposition.label().c_str());
        for (std::size_t b = 0; b < split.tours.size(); ++b) {
            std::printf("  block %zu: %zu points, tour %.6f\n", b, split.partition.blocks[b].size(),
                        split.tours[b].length());
        }
        std::printf("split value %.6f  <=  bound %.6f\n", split.value, plan.ratio() * tour.length());
        if (instance.size() <= kMaxPartitionPoints) {
            std::printf("optimal TSP_k %.6f\n", tsp_k_exact(instance, k).value);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "split_demo: %s\n", e.what());
        return 1;
    }
    return 0;
}
