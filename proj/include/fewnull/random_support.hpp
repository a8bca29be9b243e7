#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "fewnull/graph.hpp"
#include "fewnull/rng.hpp"
#include "fewnull/support.hpp"

namespace fewnull {

/// Erdos-Renyi style support on X0..Xn: each product XiXj (i < j) appears
/// independently with probability p_edge, each square Xi^2 with q_loop.
struct ErModelParams {
    int n = 0;
    double p_edge = 0;
    double q_loop = 0;
};

/// Uniform support with a fixed census of nonsquares and squares.
/// homogeneous: a nonsquares and b squares over X0..Xn.
/// affine: the constant 1, a nonsquares and b-1 non-constant squares over
/// X1..Xn (so b counts the constant, matching |M| = a + b).
struct UniformModelParams {
    enum class Variant { homogeneous, affine };
    int n = 0;
    int64_t a = 0;
    int64_t b = 0;
    Variant variant = Variant::affine;
};

Support gen_er_support(const ErModelParams& params, Rng& rng);
Support gen_er_support(const ErModelParams& params, uint64_t seed);

Support gen_uniform_support(const UniformModelParams& params, Rng& rng);
Support gen_uniform_support(const UniformModelParams& params, uint64_t seed);

/// Support of the stated size, uniform among subsets of degree-<=2 monomials
/// over X1..Xn that contain the constant 1 (no constraint on squares).
Support gen_unconstrained_support(int n, int64_t size, Rng& rng);

/// Edges of the loop subgraph whose endpoints have no other neighbor inside
/// the loop subgraph.
int64_t count_isolated_edges(const SupportGraph& g);

/// Closed forms for the isolated-edge count in the ER model.
struct IsolatedEdgeStats {
    double mean = 0;
    double variance = 0;
};

IsolatedEdgeStats isolated_edge_stats(int n, double p, double q);

using TailModel = std::variant<ErModelParams, UniformModelParams>;

/// Fraction of draws whose matching number reaches ell; trial t draws from
/// the stream seed ^ Rng::mix(t).
double matching_tail_probability(const TailModel& model, int64_t ell, int64_t trials, uint64_t seed);

}  // namespace fewnull
