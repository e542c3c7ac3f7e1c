#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace spingw {

struct GraphVertex {
    int genus = 0;
    int cls = 0;  ///< curve class of the component, as a degree (0 for a point target)
    friend auto operator<=>(const GraphVertex &, const GraphVertex &) = default;
};

/// Marked point: a half-edge on `vertex` carrying label 1..n and spin mark.
struct GraphTail {
    int vertex = 0;
    int label = 0;
    int mark = 0;
    friend auto operator<=>(const GraphTail &, const GraphTail &) = default;
};

/// Node: two half-edges, on v1 with mark1 and on v2 with mark2. v1 == v2 is a loop.
struct GraphEdge {
    int v1 = 0;
    int mark1 = 0;
    int v2 = 0;
    int mark2 = 0;
    friend auto operator<=>(const GraphEdge &, const GraphEdge &) = default;
};

/// Dual graph of a spin map. Every half-edge is either a tail or one end of
/// exactly one edge, which the representation enforces structurally.
struct DecoratedGraph {
    int r = 2;
    std::vector<GraphVertex> vertices;
    std::vector<GraphTail> tails;
    std::vector<GraphEdge> edges;

    friend bool operator==(const DecoratedGraph &, const DecoratedGraph &) = default;
};

/// Checks indices, mark ranges 0..r-1, nonnegative genus/class, and that tail
/// labels are exactly 1..n. Throws DomainError naming the first violation.
void validate_structure(const DecoratedGraph &g);

/// Number of half-edges at v; a loop contributes two.
int valence(const DecoratedGraph &g, int v);

/// Component id per vertex, numbered in order of first appearance.
std::vector<int> component_ids(const DecoratedGraph &g);
int component_count(const DecoratedGraph &g);

/// dim H^1(graph) + sum g(v), summed over components.
int genus(const DecoratedGraph &g);

struct StabilityReport {
    bool stable = true;
    std::vector<std::string> diagnostics;
};

/// Edge congruence m+ + m- = r-2 (mod r) on every edge, and 2g(v)-2+n(v) > 0 on
/// every vertex of class 0. Diagnostics name each violated invariant.
StabilityReport is_stable(const DecoratedGraph &g);

/// True when (r-2)(g(v)-1) + sum of marks at v is divisible by r for every vertex,
/// i.e. each vertex carries an integral spin degree.
bool vertices_admissible(const DecoratedGraph &g);

/// Contracts class-zero vertices with 2g(v)-2+n(v) <= 0 until none remain. A
/// removed vertex with two edges has its far ends joined into one edge; one
/// with an edge and a tail hands the tail to its neighbour; one with a single
/// edge simply disappears. Throws DomainError for a component whose classes
/// all push to zero and whose 2g-2+n is not positive.
DecoratedGraph stabilize(const DecoratedGraph &g, const std::function<int(int)> &pushforward);
DecoratedGraph stabilize(const DecoratedGraph &g);

/// D = ((r-2)(g - alpha) + sum of tail marks) / r with alpha components.
int dimension_D(const DecoratedGraph &g);

struct TypeReduction {
    std::vector<int> marks;      ///< m_i in 0..r-1
    std::vector<int> quotients;  ///< a_i with original = a_i * r + m_i
};

TypeReduction reduce_type(std::span<const int> marks, int r);

/// Canonical form under vertex relabeling: the lexicographically smallest
/// encoding over all vertex orders. Two graphs share a key iff isomorphic
/// respecting tail labels, marks, genera and classes.
struct GraphIsoKey {
    std::string text;
    friend auto operator<=>(const GraphIsoKey &, const GraphIsoKey &) = default;
};

DecoratedGraph canonical_form(const DecoratedGraph &g);
GraphIsoKey canonical_key(const DecoratedGraph &g);

struct EnumerationRequest {
    int n = 3;
    int r = 2;
    int max_edges = 0;
    int class_budget = 0;       ///< total class summed over vertices
    std::vector<int> tail_marks;  ///< mark of tail i+1
};

/// All isomorphism classes of connected genus-zero (V,r)-stable graphs with the
/// requested tails, total class, at most max_edges edges, and admissible spin
/// degree at every vertex. Sorted by key. Supports n <= 6, max_edges <= 3.
std::vector<DecoratedGraph> enumerate_genus_zero(const EnumerationRequest &request);

nlohmann::ordered_json graph_to_json(const DecoratedGraph &g);
/// Parses and structurally validates; throws DomainError on malformed input.
DecoratedGraph graph_from_json(const nlohmann::json &j);

} // namespace spingw
