#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/polys.hpp"
#include "qseries/transforms.hpp"

namespace qs {

struct SchemeNode {
    std::string name;       // family name, or "AskeyWilson" for the stub
    std::string title;      // display label
    std::string box_series; // DSL of the W series drawn in the node; empty for the stub
    bool stub = false;
};

struct SchemeEdge {
    std::string source;
    std::string target;
    std::string label;                     // e.g. "d→∞"
    std::optional<LimitRule> rule;         // series-level rule on the box; none for stub edges
    std::optional<std::size_t> family_edge;  // index into limit_edges()
};

struct SchemeGraph {
    std::vector<SchemeNode> nodes;
    std::vector<SchemeEdge> edges;
};

const SchemeGraph& scheme_graph();

std::string scheme_dot(const SchemeGraph& g);

struct EdgeReport {
    std::size_t edge = 0;
    std::uint64_t seed = 0;
    std::vector<double> series_errors;  // box W series through limit_transition
    std::vector<double> family_errors;  // family values through limit_edge
    double series_order = 0.0;          // observed decay exponent over the last ladder step
    double family_order = 0.0;
    bool decreasing = false;            // both error sequences nonincreasing on the second half
    bool converged = false;
};

/// Final-error threshold of the convergence check.
inline constexpr double kLimitTol = 1e-6;

/// Ladder 2^lo, ..., 2^hi.
std::vector<Exact> power_ladder(int lo, int hi);

/// Parse "2^10..2^20" or a comma list of rationals; must be strictly increasing.
std::vector<Exact> parse_ladder(const std::string& text);

/// Check every non-stub edge at one generic point drawn from `seed`.
std::vector<EdgeReport> check_scheme(const std::vector<Exact>& ladder, std::uint64_t seed);

}  // namespace qs
