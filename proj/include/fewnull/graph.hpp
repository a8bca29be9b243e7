#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fewnull/support.hpp"

namespace fewnull {

/// Simple labeled graph on vertices {0..n} built from a homogenized support:
/// an edge (i, j) per square-free monomial XiXj and a loop at i per square
/// Xi^2. The loop subgraph (induced on looped vertices) drives the matching
/// number.
struct SupportGraph {
    int vertex_count = 0;                      // n + 1
    std::vector<std::pair<int, int>> edges;    // i < j, sorted
    std::vector<uint8_t> loop;                 // loop[i] != 0 iff Xi^2 present

    bool has_loop(int i) const { return loop[static_cast<size_t>(i)] != 0; }
    std::vector<int> loop_vertices() const;
    /// Edges with loops at both endpoints.
    std::vector<std::pair<int, int>> loop_subgraph_edges() const;
    std::vector<std::vector<int>> adjacency() const;
};

/// Graph of the homogenized support (affine inputs are homogenized first).
SupportGraph build_graph(const Support& s);

/// Pairwise vertex-disjoint edge set of the loop subgraph.
struct Matching {
    std::vector<std::pair<int, int>> edges;
    int64_t size() const { return static_cast<int64_t>(edges.size()); }
};

struct MatchingResult {
    int64_t nu = 0;
    Matching witness;
};

/// Maximum matching of the loop subgraph via the blossom algorithm; loops
/// themselves are never matchable edges, they only select membership.
MatchingResult matching_number(const SupportGraph& g);

/// Counts of the three quadratic-relation subgraphs and of 4-cliques.
/// lambda = (4-cycles) + (triangles counted once per looped apex) +
/// (edges with loops at both ends); clique4 ignores loops.
struct RelationCounts {
    int64_t lambda = 0;
    int64_t clique4 = 0;
    int64_t type1 = 0;  // 4-cycles
    int64_t type2 = 0;  // looped-apex triangles
    int64_t type3 = 0;  // doubly-looped edges
};

RelationCounts count_relations(const SupportGraph& g);

/// |M^2| for a homogeneous support: C(|M|+1, 2) - lambda(G) + clique4(G).
int64_t card_m2(const Support& s);

/// Decision of the matching-number criterion, evaluated with the squared
/// integer inequality (2(|M|-m)+1)^2 <= 1+8*nu so the boundary is exact:
/// it holds iff m >= |M| or the squared form does. nu is computed on the
/// homogenized graph; |M| is the support cardinality.
struct CriterionResult {
    bool holds = false;
    int64_t minimal_m = 0;  // least m >= 1 satisfying the criterion
    int64_t nu = 0;
    int64_t support_size = 0;
};

CriterionResult check_criterion(const Support& s, int64_t m);

/// Largest d >= 0 with (2d+1)^2 <= 1+8*nu, i.e. floor((sqrt(1+8*nu)-1)/2)
/// computed in integers.
int64_t matching_defect(int64_t nu);

}  // namespace fewnull
