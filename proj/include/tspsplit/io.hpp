#pragma once

// File formats: plain-text instances ("x y" per line, '#' comments), the
// JSON result document emitted by the command-line tool, and SVG drawings
// of result documents.

#include "tspsplit/errors.hpp"
#include "tspsplit/geometry.hpp"
#include "tspsplit/tsp_core.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace tspsplit {

using json = nlohmann::json;

/// Shortest decimal that parses back to exactly `v`.
inline std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Fixed six decimal places, for tables and summaries.
inline std::string format_fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_real(std::string_view token, std::size_t line)
{
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (!token.empty() && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ParseError(line, "not a decimal number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line, "coordinate is not finite");
    return v;
}

} // namespace detail

/// Reads "x y" lines; blank lines and text after '#' are ignored.
inline std::vector<Point> parse_instance(std::istream& in)
{
    std::vector<Point> pts;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text(raw);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = detail::trim(text);
        if (text.empty()) continue;

        std::vector<std::string_view> tokens;
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto start = text.find_first_not_of(" \t", pos);
            if (start == std::string_view::npos) break;
            const auto stop = std::min(text.find_first_of(" \t", start), text.size());
            tokens.push_back(text.substr(start, stop - start));
            pos = stop;
        }
        if (tokens.size() != 2) {
            throw ParseError(line, "expected two coordinates, found " + std::to_string(tokens.size()));
        }
        pts.push_back({detail::parse_real(tokens[0], line), detail::parse_real(tokens[1], line)});
    }
    return pts;
}

inline std::vector<Point> parse_instance(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

inline std::vector<Point> read_instance_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_instance(in);
}

/// One "x y" line per point in shortest round-trip form, after an
/// optional '#' comment line.
inline std::string format_instance(std::span<const Point> pts, std::string_view comment = {})
{
    std::string out;
    if (!comment.empty()) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    for (const Point& p : pts) {
        out += format_number(p.x);
        out += ' ';
        out += format_number(p.y);
        out += '\n';
    }
    return out;
}

struct ResultBlock {
    std::vector<Point> points;
    std::vector<Point> tour;  // closed: the last vertex connects back to the first
    double length = 0.0;
};

/// What the command-line tool reports for a solved or split instance.
struct ResultDocument {
    std::string command;
    std::size_t n = 0;
    Point bbox_min;
    Point bbox_max;
    std::vector<ResultBlock> blocks;
    std::vector<std::pair<Point, Point>> diagonals;
    double value = 0.0;
    std::optional<double> tsp_length;
    std::optional<double> ratio;
    std::optional<double> guarantee;
    std::optional<double> bound;
};

inline constexpr std::string_view kResultFormat = "tspsplit-result/1";

inline ResultDocument make_document(std::string command, const Instance& instance, const SolveResult& result)
{
    ResultDocument doc;
    doc.command = std::move(command);
    doc.n = instance.size();
    doc.bbox_min = doc.bbox_max = instance.points().front();
    for (const Point& p : instance.points()) {
        doc.bbox_min = {std::min(doc.bbox_min.x, p.x), std::min(doc.bbox_min.y, p.y)};
        doc.bbox_max = {std::max(doc.bbox_max.x, p.x), std::max(doc.bbox_max.y, p.y)};
    }
    for (std::size_t i = 0; i < result.tours.size(); ++i) {
        doc.blocks.push_back({result.partition.blocks[i], result.tours[i].vertices(), result.tours[i].length()});
    }
    for (const Diagonal& d : result.diagonals) doc.diagonals.emplace_back(d.p, d.q);
    doc.value = result.value;
    return doc;
}

namespace detail {

inline json point_json(Point p) { return json::array({p.x, p.y}); }

inline json points_json(const std::vector<Point>& pts)
{
    json arr = json::array();
    for (const Point& p : pts) arr.push_back(point_json(p));
    return arr;
}

inline Point point_from(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(0, "malformed point in result document");
    }
    const Point p{j[0].get<double>(), j[1].get<double>()};
    if (!is_finite(p)) throw ParseError(0, "non-finite point in result document");
    return p;
}

inline std::vector<Point> points_from(const json& j)
{
    if (!j.is_array()) throw ParseError(0, "expected a point list in result document");
    std::vector<Point> out;
    for (const auto& e : j) out.push_back(point_from(e));
    return out;
}

inline std::optional<double> optional_number(const json& j, const char* key)
{
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) throw ParseError(0, std::string("field '") + key + "' is not a number");
    return j[key].get<double>();
}

} // namespace detail

inline json to_json(const ResultDocument& doc)
{
    json j;
    j["format"] = kResultFormat;
    j["command"] = doc.command;
    j["instance"] = {{"n", doc.n}, {"bbox", {doc.bbox_min.x, doc.bbox_min.y, doc.bbox_max.x, doc.bbox_max.y}}};
    json blocks = json::array();
    for (const ResultBlock& b : doc.blocks) {
        blocks.push_back({{"points", detail::points_json(b.points)},
                          {"tour", detail::points_json(b.tour)},
                          {"length", b.length}});
    }
    j["blocks"] = std::move(blocks);
    json diagonals = json::array();
    for (const auto& [p, q] : doc.diagonals) diagonals.push_back({detail::point_json(p), detail::point_json(q)});
    j["diagonals"] = std::move(diagonals);
    j["value"] = doc.value;
    const auto put = [&j](const char* key, const std::optional<double>& v) {
        j[key] = v ? json(*v) : json(nullptr);
    };
    put("tsp_length", doc.tsp_length);
    put("ratio", doc.ratio);
    put("guarantee", doc.guarantee);
    put("bound", doc.bound);
    return j;
}

/// Parses and validates a result document: every block has points and a
/// tour, and each reported length matches its vertices to 1e-9.
inline ResultDocument document_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string()
        || j["format"].get<std::string>() != kResultFormat) {
        throw ParseError(0, "not a tspsplit result document");
    }
    ResultDocument doc;
    try {
        doc.command = j.at("command").get<std::string>();
        const json& inst = j.at("instance");
        doc.n = inst.at("n").get<std::size_t>();
        const json& bbox = inst.at("bbox");
        if (!bbox.is_array() || bbox.size() != 4) throw ParseError(0, "malformed bounding box");
        doc.bbox_min = {bbox[0].get<double>(), bbox[1].get<double>()};
        doc.bbox_max = {bbox[2].get<double>(), bbox[3].get<double>()};
        for (const json& b : j.at("blocks")) {
            ResultBlock block{detail::points_from(b.at("points")), detail::points_from(b.at("tour")),
                              b.at("length").get<double>()};
            if (block.points.empty() || block.tour.empty()) throw ParseError(0, "empty block in result document");
            const double recomputed = perimeter(block.tour);
            if (std::abs(recomputed - block.length) > 1e-9 * std::max(1.0, recomputed)) {
                throw ParseError(0, "block length does not match its tour");
            }
            doc.blocks.push_back(std::move(block));
        }
        for (const json& d : j.at("diagonals")) {
            if (!d.is_array() || d.size() != 2) throw ParseError(0, "malformed diagonal");
            doc.diagonals.emplace_back(detail::point_from(d[0]), detail::point_from(d[1]));
        }
        doc.value = j.at("value").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed result document: ") + e.what());
    }
    if (doc.blocks.empty()) throw ParseError(0, "result document has no blocks");
    doc.tsp_length = detail::optional_number(j, "tsp_length");
    doc.ratio = detail::optional_number(j, "ratio");
    doc.guarantee = detail::optional_number(j, "guarantee");
    doc.bound = detail::optional_number(j, "bound");
    return doc;
}

/// Standalone SVG: each block tour as a closed outline in its own colour,
/// cutting diagonals dashed, input points as dots. y points up.
inline std::string render_svg(const ResultDocument& doc, double size = 600.0)
{
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    Point lo = doc.blocks.front().tour.front();
    Point hi = lo;
    const auto grow = [&](Point p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    };
    for (const auto& b : doc.blocks) {
        for (const Point& p : b.tour) grow(p);
        for (const Point& p : b.points) grow(p);
    }
    const double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
    const double margin = 20.0;
    const double scale = (size - 2 * margin) / extent;
    const auto sx = [&](double x) { return format_number(margin + (x - lo.x) * scale); };
    const auto sy = [&](double y) { return format_number(size - margin - (y - lo.y) * scale); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
        svg << "<polygon fill=\"none\" stroke=\"" << palette[i % std::size(palette)]
            << "\" stroke-width=\"2\" points=\"";
        for (const Point& p : doc.blocks[i].tour) svg << sx(p.x) << ',' << sy(p.y) << ' ';
        svg << "\"/>\n";
    }
    for (const auto& [p, q] : doc.diagonals) {
        svg << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.y) << "\" x2=\"" << sx(q.x) << "\" y2=\""
            << sy(q.y) << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (const auto& b : doc.blocks) {
        for (const Point& p : b.points) {
            svg << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"black\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace tspsplit
