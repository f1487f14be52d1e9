// Command-line front end: exact solving, guaranteed splitting, the bounds
// table, circular lower-bound checks, instance generation and plotting.
//
// Exit codes: 0 ok, 2 input error, 3 capacity exceeded, 4 verification failed.

#include "tspsplit/io.hpp"
#include "tspsplit/tspsplit.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace tspsplit;

constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerification = 4;

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) throw ParseError(0, "cannot write '" + out_path + "'");
}

std::string command_echo(int argc, char** argv)
{
    std::string echo;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) echo += ' ';
        echo += i == 0 ? "tspsplit" : argv[i];
    }
    return echo;
}

int run_tsp(const std::string& command, const std::string& input, const std::string& out)
{
    const Instance instance(read_instance_file(input));
    SolveResult result;
    result.partition.blocks.push_back(instance.points());
    result.tours.push_back(tsp_exact(instance));
    result.value = result.tours.front().length();
    ResultDocument doc = make_document(command, instance, result);
    doc.tsp_length = result.value;
    emit(to_json(doc).dump(2) + "\n", out);
    return 0;
}

int run_split(const std::string& command, const std::string& input, std::size_t k,
              const std::string& strategy, bool reoptimize, const std::string& out)
{
    const Instance instance(read_instance_file(input));
    ResultDocument doc;
    if (strategy == "exact") {
        const SolveResult result = tsp_k_exact(instance, k);
        doc = make_document(command, instance, result);
        const double tsp = tsp_exact(instance).length();
        doc.tsp_length = tsp;
        if (tsp > 0.0) doc.ratio = result.value / tsp;
    } else {
        const ClosedTour tour = tsp_exact(instance);
        const SplitPlan plan = split_plan(k);
        const SolveResult result = partition_k(instance, tour, k, {reoptimize});
        doc = make_document(command, instance, result);
        doc.tsp_length = tour.length();
        if (tour.length() > 0.0) doc.ratio = result.value / tour.length();
        doc.guarantee = plan.ratio();
        doc.bound = plan.ratio() * tour.length();
    }
    emit(to_json(doc).dump(2) + "\n", out);
    return 0;
}

int run_bounds(std::size_t k_max, const std::string& out)
{
    std::string csv = "k,lower,upper,decomposition\n";
    for (const BoundsRow& row : bounds_table(k_max)) {
        csv += std::to_string(row.k) + ',' + format_fixed6(row.lower) + ',' + format_fixed6(row.upper) + ','
               + row.decomposition.label() + '\n';
    }
    emit(csv, out);
    return 0;
}

int run_circle(const std::string& command, std::size_t n, std::size_t k, bool verify, const std::string& out)
{
    json doc;
    doc["format"] = "tspsplit-circle/1";
    doc["command"] = command;
    doc["n"] = n;
    doc["k"] = k;
    const double gamma = gamma_circle(n, k);
    doc["gamma_circle"] = gamma;
    doc["gamma_circle_6dp"] = format_fixed6(gamma);
    doc["lb_gamma"] = lb_gamma(k);
    doc["lb_gamma_6dp"] = format_fixed6(lb_gamma(k));
    if (verify) {
        json arcs = json::array();
        for (std::size_t m = 1; m <= n; ++m) {
            const ArcOptimalityReport r = verify_arc_optimality(n, m);
            arcs.push_back({{"m", m},
                            {"subsets", r.subsets_checked},
                            {"arc_value", r.arc_value},
                            {"closed_form", r.closed_form},
                            {"min_value", r.min_value},
                            {"max_value", r.max_value}});
        }
        const TransformReport moves = verify_transform_steps(n);
        doc["verification"] = {{"passed", true},
                               {"arc_optimality", std::move(arcs)},
                               {"transform_moves", moves.moves_checked},
                               {"transform_min_delta", moves.min_delta}};
    }
    emit(doc.dump(2) + "\n", out);
    return 0;
}

int run_gen(std::size_t n, std::uint64_t seed, const std::string& out)
{
    const auto pts = uniform_points(n, seed);
    emit(format_instance(pts, "tspsplit gen n=" + std::to_string(n) + " seed=" + std::to_string(seed)), out);
    return 0;
}

int run_plot(const std::string& input, const std::string& svg_out)
{
    std::ifstream in(input);
    if (!in) throw ParseError(0, "cannot open '" + input + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    emit(render_svg(document_from_json(j)), svg_out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Min-max multi-salesperson tour splitting and exact oracles"};
    app.require_subcommand(1);
    std::string out;

    std::string tsp_input;
    auto* tsp = app.add_subcommand("tsp", "Optimal tour of an instance file");
    tsp->add_option("input", tsp_input, "Instance file (\"x y\" per line)")->required();
    tsp->add_option("--out", out, "Write the result document here instead of stdout");

    std::string split_input;
    std::size_t split_k = 2;
    std::string strategy = "guaranteed";
    bool reoptimize = false;
    auto* split = app.add_subcommand("split", "Partition an instance among k salespeople");
    split->add_option("input", split_input, "Instance file")->required();
    split->add_option("-k,--k", split_k, "Number of salespeople")->check(CLI::PositiveNumber);
    split->add_option("--strategy", strategy, "exact: optimal partition; guaranteed: split the optimal tour")
        ->check(CLI::IsMember({"exact", "guaranteed"}));
    split->add_flag("--reoptimize", reoptimize, "Re-solve each guaranteed block exactly when shorter");
    split->add_option("--out", out, "Write the result document here instead of stdout");

    std::size_t k_max = 10;
    auto* bounds = app.add_subcommand("bounds", "CSV of lower and upper bounds on gamma(k)");
    bounds->add_option("--k-max", k_max, "Largest k")->check(CLI::PositiveNumber);
    bounds->add_option("--out", out, "Write the CSV here instead of stdout");

    std::size_t circle_n = 8;
    std::size_t circle_k = 2;
    bool verify = false;
    auto* circle = app.add_subcommand("circle", "Balanced partitions of the regular circular point set");
    circle->add_option("-n,--n", circle_n, "Number of points on the unit circle")->check(CLI::Range(2, 1 << 20));
    circle->add_option("-k,--k", circle_k, "Number of salespeople")->check(CLI::PositiveNumber);
    circle->add_flag("--verify", verify, "Exhaustively check arc optimality and gap-closing moves");
    circle->add_option("--out", out, "Write the report here instead of stdout");

    std::size_t gen_n = 0;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("gen", "Uniform random instance in the unit square");
    gen->add_option("-n,--n", gen_n, "Number of points")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_option("--out", out, "Write the instance here instead of stdout");

    std::string plot_input;
    std::string svg_out;
    auto* plot = app.add_subcommand("plot", "Draw a result document as SVG");
    plot->add_option("input", plot_input, "Result document (JSON)")->required();
    plot->add_option("--svg", svg_out, "Output SVG file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    const std::string command = command_echo(argc, argv);
    try {
        if (*tsp) return run_tsp(command, tsp_input, out);
        if (*split) return run_split(command, split_input, split_k, strategy, reoptimize, out);
        if (*bounds) return run_bounds(k_max, out);
        if (*circle) return run_circle(command, circle_n, circle_k, verify, out);
        if (*gen) return run_gen(gen_n, seed, out);
        if (*plot) return run_plot(plot_input, svg_out);
    } catch (const CapacityError& e) {
        std::cerr << "tspsplit: capacity exceeded: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const VerificationError& e) {
        std::cerr << "tspsplit: verification failed: " << e.what() << '\n';
        return kExitVerification;
    } catch (const ParseError& e) {
        std::cerr << "tspsplit: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "tspsplit: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "tspsplit: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
