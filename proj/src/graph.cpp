#include "fewnull/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fewnull {

std::vector<int> SupportGraph::loop_vertices() const {
    std::vector<int> out;
    for (int i = 0; i < vertex_count; ++i)
        if (loop[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

std::vector<std::pair<int, int>> SupportGraph::loop_subgraph_edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : edges)
        if (has_loop(e.first) && has_loop(e.second)) out.push_back(e);
    return out;
}

std::vector<std::vector<int>> SupportGraph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(vertex_count));
    for (const auto& e : edges) {
        adj[static_cast<size_t>(e.first)].push_back(e.second);
        adj[static_cast<size_t>(e.second)].push_back(e.first);
    }
    return adj;
}

SupportGraph build_graph(const Support& s) {
    Support h = s.homogenized();
    SupportGraph g;
    g.vertex_count = h.n() + 1;
    g.loop.assign(static_cast<size_t>(g.vertex_count), 0);
    for (const auto& m : h.monomials()) {
        if (m.is_square())
            g.loop[static_cast<size_t>(m.var(0))] = 1;
        else
            g.edges.emplace_back(m.var(0), m.var(1));
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace {

// Classic blossom algorithm (Edmonds) over a compacted vertex set. Standard
// O(V*E) search per augmentation; the loop subgraphs seen here are small and
// sparse, so this is comfortably fast.
class Blossom {
public:
    explicit Blossom(const std::vector<std::vector<int>>& adj)
        : n_(static_cast<int>(adj.size())),
          adj_(adj),
          match_(adj.size(), -1),
          parent_(adj.size(), -1),
          base_(adj.size()),
          used_(adj.size(), 0),
          in_blossom_(adj.size(), 0) {}

    std::vector<int> run() {
        // Greedy seed matching cuts down the number of augmentation phases.
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<size_t>(v)] == -1)
                for (int to : adj_[static_cast<size_t>(v)])
                    if (match_[static_cast<size_t>(to)] == -1) {
                        match_[static_cast<size_t>(v)] = to;
                        match_[static_cast<size_t>(to)] = v;
                        break;
                    }
        for (int v = 0; v < n_; ++v)
            if (match_[static_cast<size_t>(v)] == -1) {
                int u = find_path(v);
                if (u != -1) augment(u);
            }
        return match_;
    }

private:
    int lca(int a, int b) {
        std::vector<uint8_t> seen(static_cast<size_t>(n_), 0);
        for (;;) {
            a = base_[static_cast<size_t>(a)];
            seen[static_cast<size_t>(a)] = 1;
            if (match_[static_cast<size_t>(a)] == -1) break;
            a = parent_[static_cast<size_t>(match_[static_cast<size_t>(a)])];
        }
        for (;;) {
            b = base_[static_cast<size_t>(b)];
            if (seen[static_cast<size_t>(b)]) return b;
            b = parent_[static_cast<size_t>(match_[static_cast<size_t>(b)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[static_cast<size_t>(v)] != b) {
            in_blossom_[static_cast<size_t>(base_[static_cast<size_t>(v)])] = 1;
            in_blossom_[static_cast<size_t>(base_[static_cast<size_t>(match_[static_cast<size_t>(v)])])] = 1;
            parent_[static_cast<size_t>(v)] = child;
            child = match_[static_cast<size_t>(v)];
            v = parent_[static_cast<size_t>(match_[static_cast<size_t>(v)])];
        }
    }

    int find_path(int root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (int i = 0; i < n_; ++i) base_[static_cast<size_t>(i)] = i;
        used_[static_cast<size_t>(root)] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj_[static_cast<size_t>(v)]) {
                if (base_[static_cast<size_t>(v)] == base_[static_cast<size_t>(to)] ||
                    match_[static_cast<size_t>(v)] == to)
                    continue;
                if (to == root ||
                    (match_[static_cast<size_t>(to)] != -1 &&
                     parent_[static_cast<size_t>(match_[static_cast<size_t>(to)])] != -1)) {
                    // Odd cycle: contract the blossom at the common base.
                    int cur_base = lca(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n_; ++i)
                        if (in_blossom_[static_cast<size_t>(base_[static_cast<size_t>(i)])]) {
                            base_[static_cast<size_t>(i)] = cur_base;
                            if (!used_[static_cast<size_t>(i)]) {
                                used_[static_cast<size_t>(i)] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[static_cast<size_t>(to)] == -1) {
                    parent_[static_cast<size_t>(to)] = v;
                    if (match_[static_cast<size_t>(to)] == -1) return to;
                    used_[static_cast<size_t>(match_[static_cast<size_t>(to)])] = 1;
                    q.push(match_[static_cast<size_t>(to)]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent_[static_cast<size_t>(v)];
            int next = match_[static_cast<size_t>(pv)];
            match_[static_cast<size_t>(v)] = pv;
            match_[static_cast<size_t>(pv)] = v;
            v = next;
        }
    }

    int n_;
    const std::vector<std::vector<int>>& adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<uint8_t> used_, in_blossom_;
};

}  // namespace

MatchingResult matching_number(const SupportGraph& g) {
    auto lse = g.loop_subgraph_edges();
    MatchingResult res;
    if (lse.empty()) return res;

    // Compact to the vertices actually touching a loop-subgraph edge.
    std::vector<int> verts;
    for (const auto& e : lse) {
        verts.push_back(e.first);
        verts.push_back(e.second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> id(static_cast<size_t>(g.vertex_count), -1);
    for (size_t i = 0; i < verts.size(); ++i) id[static_cast<size_t>(verts[i])] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(verts.size());
    for (const auto& e : lse) {
        adj[static_cast<size_t>(id[static_cast<size_t>(e.first)])].push_back(id[static_cast<size_t>(e.second)]);
        adj[static_cast<size_t>(id[static_cast<size_t>(e.second)])].push_back(id[static_cast<size_t>(e.first)]);
    }

    std::vector<int> match = Blossom(adj).run();
    for (size_t v = 0; v < match.size(); ++v) {
        int w = match[v];
        if (w != -1 && static_cast<int>(v) < w)
            res.witness.edges.emplace_back(verts[v], verts[static_cast<size_t>(w)]);
    }
    std::sort(res.witness.edges.begin(), res.witness.edges.end());
    res.nu = res.witness.size();
    return res;
}

namespace {

// Fixed-width adjacency bitsets for the subgraph counting below.
struct BitAdj {
    int words;
    std::vector<uint64_t> bits;  // vertex-major

    explicit BitAdj(const SupportGraph& g) : words((g.vertex_count + 63) / 64) {
        bits.assign(static_cast<size_t>(g.vertex_count) * static_cast<size_t>(words), 0);
        for (const auto& e : g.edges) {
            set(e.first, e.second);
            set(e.second, e.first);
        }
    }
    void set(int v, int w) {
        bits[static_cast<size_t>(v) * static_cast<size_t>(words) + static_cast<size_t>(w / 64)] |=
            1ull << (w % 64);
    }
    const uint64_t* row(int v) const { return &bits[static_cast<size_t>(v) * static_cast<size_t>(words)]; }
};

int64_t popcount_and(const uint64_t* a, const uint64_t* b, int words) {
    int64_t c = 0;
    for (int w = 0; w < words; ++w) c += __builtin_popcountll(a[w] & b[w]);
    return c;
}

// Popcount of (a & b) restricted to positions strictly above lo.
int64_t popcount_and_above(const uint64_t* a, const uint64_t* b, int words, int lo) {
    int64_t c = 0;
    int w0 = (lo + 1) / 64;
    for (int w = w0; w < words; ++w) {
        uint64_t x = a[w] & b[w];
        if (w == w0 && (lo + 1) % 64 != 0) x &= ~0ull << ((lo + 1) % 64);
        c += __builtin_popcountll(x);
    }
    return c;
}

}  // namespace

RelationCounts count_relations(const SupportGraph& g) {
    RelationCounts rc;
    const int V = g.vertex_count;
    BitAdj adj(g);

    std::vector<uint64_t> loop_bits(static_cast<size_t>(adj.words), 0);
    for (int i = 0; i < V; ++i)
        if (g.has_loop(i)) loop_bits[static_cast<size_t>(i / 64)] |= 1ull << (i % 64);

    // Type 3: edges with loops at both endpoints.
    for (const auto& e : g.edges)
        if (g.has_loop(e.first) && g.has_loop(e.second)) ++rc.type3;

    // Triangles once per i<j<k; each contributes one type-2 subgraph per
    // looped vertex. 4-cliques from triangles with a common neighbor above k.
    std::vector<uint64_t> tri(static_cast<size_t>(adj.words));
    for (const auto& e : g.edges) {
        int i = e.first, j = e.second;
        const uint64_t* ri = adj.row(i);
        const uint64_t* rj = adj.row(j);
        int w0 = (j + 1) / 64;
        for (int w = w0; w < adj.words; ++w) {
            uint64_t x = ri[w] & rj[w];
            if (w == w0 && (j + 1) % 64 != 0) x &= ~0ull << ((j + 1) % 64);
            while (x) {
                int k = w * 64 + __builtin_ctzll(x);
                x &= x - 1;
                rc.type2 += (g.has_loop(i) ? 1 : 0) + (g.has_loop(j) ? 1 : 0) + (g.has_loop(k) ? 1 : 0);
                for (int w2 = 0; w2 < adj.words; ++w2)
                    tri[static_cast<size_t>(w2)] = ri[w2] & rj[w2] & adj.row(k)[w2];
                rc.clique4 += popcount_and_above(tri.data(), tri.data(), adj.words, k);
            }
        }
    }

    // Type 1: each 4-cycle is counted once per diagonal pair, i.e. twice.
    int64_t diag = 0;
    for (int u = 0; u < V; ++u)
        for (int v = u + 1; v < V; ++v) {
            int64_t c = popcount_and(adj.row(u), adj.row(v), adj.words);
            diag += c * (c - 1) / 2;
        }
    rc.type1 = diag / 2;

    rc.lambda = rc.type1 + rc.type2 + rc.type3;
    return rc;
}

int64_t card_m2(const Support& s) {
    if (!s.homogeneous()) throw std::invalid_argument("card_m2: support must be homogeneous");
    RelationCounts rc = count_relations(build_graph(s));
    int64_t m = s.size();
    return m * (m + 1) / 2 - rc.lambda + rc.clique4;
}

int64_t matching_defect(int64_t nu) {
    int64_t d = 0;
    while ((2 * (d + 1) + 1) * (2 * (d + 1) + 1) <= 1 + 8 * nu) ++d;
    return d;
}

CriterionResult check_criterion(const Support& s, int64_t m) {
    if (m < 1) throw std::invalid_argument("check_criterion: m must be >= 1");
    CriterionResult r;
    r.support_size = s.size();
    r.nu = matching_number(build_graph(s)).nu;
    int64_t d = matching_defect(r.nu);
    r.minimal_m = std::max<int64_t>(1, r.support_size - d);
    int64_t t = r.support_size - m;
    r.holds = t <= 0 || (2 * t + 1) * (2 * t + 1) <= 1 + 8 * r.nu;
    return r;
}

}  // namespace fewnull
