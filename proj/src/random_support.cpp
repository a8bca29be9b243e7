#include "fewnull/random_support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <unordered_set>

namespace fewnull {

namespace {

// Indices of an independent-inclusion subset of [0, total), each slot kept
// with probability prob. Geometric skipping for sparse probabilities, direct
// Bernoulli sweep otherwise; both draw the exact product distribution.
std::vector<int64_t> bernoulli_slots(int64_t total, double prob, Rng& rng) {
    std::vector<int64_t> out;
    if (total <= 0 || prob <= 0.0) return out;
    if (prob >= 1.0) {
        out.resize(static_cast<size_t>(total));
        for (int64_t i = 0; i < total; ++i) out[static_cast<size_t>(i)] = i;
        return out;
    }
    if (prob >= 0.05) {
        for (int64_t i = 0; i < total; ++i)
            if (rng.bernoulli(prob)) out.push_back(i);
        return out;
    }
    const double log1m = std::log1p(-prob);
    int64_t pos = 0;
    for (;;) {
        double u = rng.unit_double();
        double skip = std::floor(std::log1p(-u) / log1m);
        if (skip >= static_cast<double>(total)) break;  // also guards inf
        pos += static_cast<int64_t>(skip);
        if (pos >= total) break;
        out.push_back(pos);
        ++pos;
    }
    return out;
}

// Uniform a-subset of [0, N) by Floyd's algorithm, returned sorted.
std::vector<int64_t> sample_subset(int64_t N, int64_t a, Rng& rng) {
    if (a < 0 || a > N) throw std::invalid_argument("sample_subset: size out of range");
    std::unordered_set<int64_t> seen;
    seen.reserve(static_cast<size_t>(a) * 2);
    for (int64_t j = N - a; j < N; ++j) {
        int64_t r = static_cast<int64_t>(rng.below(static_cast<uint64_t>(j) + 1));
        seen.insert(seen.count(r) ? j : r);
    }
    std::vector<int64_t> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Decoder for ascending pair indices: slot L in [0, C(count,2)) maps to the
// L-th pair (i < j) of {base, ..., base+count-1} in lexicographic order.
struct PairDecoder {
    int64_t base, count;
    int64_t row = 0, row_start = 0;

    std::pair<int, int> decode(int64_t idx) {
        while (idx >= row_start + (count - 1 - row)) {
            row_start += count - 1 - row;
            ++row;
        }
        int64_t off = idx - row_start;
        return {static_cast<int>(base + row), static_cast<int>(base + row + 1 + off)};
    }
};

int64_t choose2(int64_t k) { return k * (k - 1) / 2; }

}  // namespace

Support gen_er_support(const ErModelParams& params, Rng& rng) {
    if (params.n < 0 || params.p_edge < 0 || params.p_edge > 1 || params.q_loop < 0 || params.q_loop > 1)
        throw std::invalid_argument("gen_er_support: invalid parameters");
    const int n = params.n;
    std::vector<Monomial> mons;
    PairDecoder dec{0, n + 1};
    for (int64_t idx : bernoulli_slots(choose2(n + 1), params.p_edge, rng)) {
        auto [i, j] = dec.decode(idx);
        mons.push_back(Monomial::product(i, j));
    }
    for (int i = 0; i <= n; ++i)
        if (rng.bernoulli(params.q_loop)) mons.push_back(Monomial::square(i));
    return Support(n, std::move(mons));
}

Support gen_er_support(const ErModelParams& params, uint64_t seed) {
    Rng rng(seed);
    return gen_er_support(params, rng);
}

Support gen_uniform_support(const UniformModelParams& params, Rng& rng) {
    const int n = params.n;
    if (n < 0) throw std::invalid_argument("gen_uniform_support: negative n");
    std::vector<Monomial> mons;
    if (params.variant == UniformModelParams::Variant::homogeneous) {
        int64_t nonsquare_slots = choose2(n + 1);
        if (params.a < 0 || params.a > nonsquare_slots || params.b < 0 || params.b > n + 1)
            throw std::invalid_argument("gen_uniform_support: census out of range");
        PairDecoder dec{0, n + 1};
        for (int64_t idx : sample_subset(nonsquare_slots, params.a, rng)) {
            auto [i, j] = dec.decode(idx);
            mons.push_back(Monomial::product(i, j));
        }
        for (int64_t idx : sample_subset(n + 1, params.b, rng))
            mons.push_back(Monomial::square(static_cast<int>(idx)));
    } else {
        // Affine: constant 1, a nonsquares (linear or products over X1..Xn),
        // b-1 non-constant squares.
        int64_t nonsquare_slots = n + choose2(n);
        if (params.a < 0 || params.a > nonsquare_slots || params.b < 1 || params.b - 1 > n)
            throw std::invalid_argument("gen_uniform_support: census out of range");
        mons.push_back(Monomial::one());
        PairDecoder dec{1, n};
        for (int64_t idx : sample_subset(nonsquare_slots, params.a, rng)) {
            if (idx < n) {
                mons.push_back(Monomial::linear(static_cast<int>(idx) + 1));
            } else {
                auto [i, j] = dec.decode(idx - n);
                mons.push_back(Monomial::product(i, j));
            }
        }
        for (int64_t idx : sample_subset(n, params.b - 1, rng))
            mons.push_back(Monomial::square(static_cast<int>(idx) + 1));
    }
    return Support(n, std::move(mons));
}

Support gen_uniform_support(const UniformModelParams& params, uint64_t seed) {
    Rng rng(seed);
    return gen_uniform_support(params, rng);
}

Support gen_unconstrained_support(int n, int64_t size, Rng& rng) {
    int64_t slots = n + choose2(n) + n;  // linear, products, squares over X1..Xn
    if (size < 1 || size - 1 > slots)
        throw std::invalid_argument("gen_unconstrained_support: size out of range");
    std::vector<Monomial> mons;
    mons.push_back(Monomial::one());
    PairDecoder dec{1, n};
    for (int64_t idx : sample_subset(slots, size - 1, rng)) {
        if (idx < n) {
            mons.push_back(Monomial::linear(static_cast<int>(idx) + 1));
        } else if (idx < n + choose2(n)) {
            auto [i, j] = dec.decode(idx - n);
            mons.push_back(Monomial::product(i, j));
        } else {
            mons.push_back(Monomial::square(static_cast<int>(idx - n - choose2(n)) + 1));
        }
    }
    return Support(n, std::move(mons));
}

int64_t count_isolated_edges(const SupportGraph& g) {
    auto lse = g.loop_subgraph_edges();
    std::vector<int32_t> deg(static_cast<size_t>(g.vertex_count), 0);
    for (const auto& e : lse) {
        ++deg[static_cast<size_t>(e.first)];
        ++deg[static_cast<size_t>(e.second)];
    }
    int64_t isolated = 0;
    for (const auto& e : lse)
        if (deg[static_cast<size_t>(e.first)] == 1 && deg[static_cast<size_t>(e.second)] == 1) ++isolated;
    return isolated;
}

namespace {

// (1-x)^e in the log domain; exact at the boundary cases.
double pow1m(double x, double e) {
    if (e == 0) return 1.0;
    if (x >= 1.0) return 0.0;
    if (x <= 0.0) return 1.0;
    return std::exp(e * std::log1p(-x));
}

}  // namespace

IsolatedEdgeStats isolated_edge_stats(int n, double p, double q) {
    if (p < 0 || p > 1 || q < 0 || q > 1) throw std::invalid_argument("isolated_edge_stats: bad p or q");
    double c2 = static_cast<double>(n + 1) * n / 2.0;
    double c4 = (n >= 3) ? static_cast<double>(n + 1) * n * (n - 1) * (n - 2) / 24.0 : 0.0;
    double mean = c2 * q * q * p * pow1m(q * (1 - (1 - p) * (1 - p)), n - 1);
    double lam = 6.0 * c4 * std::pow(q, 4) * p * p * std::pow(1 - p, 4) *
                 pow1m(q * (1 - std::pow(1 - p, 4)), n - 3);
    IsolatedEdgeStats st;
    st.mean = mean;
    st.variance = mean - mean * mean + lam;
    return st;
}

double matching_tail_probability(const TailModel& model, int64_t ell, int64_t trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("matching_tail_probability: trials must be >= 1");
    int64_t hits = 0;
    for (int64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, static_cast<uint64_t>(t));
        Support s = std::visit(
            [&](const auto& m) {
                if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ErModelParams>)
                    return gen_er_support(m, rng);
                else
                    return gen_uniform_support(m, rng);
            },
            model);
        if (matching_number(build_graph(s)).nu >= ell) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace fewnull
