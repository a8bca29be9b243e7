#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fewnull/poly.hpp"

namespace fewnull {

/// System of n equations in n variables whose support has cardinality n+k+1
/// and contains the constant 1 and every square Xi^2. The ell <= 2k edge
/// variables are those appearing in a square-free nonconstant monomial; the
/// other squares can be eliminated whenever their coefficient block S has
/// full rank, collapsing the 2^n solutions to sign-flip orbits of a
/// constant-size core.
struct AllSquaresSystem {
    FewnomialSystem sys;
    std::vector<int> edge_vars;     // sorted, the ell of them
    std::vector<int> nonedge_vars;  // sorted, n - ell
    int64_t k = 0;

    static AllSquaresSystem from_system(FewnomialSystem s);

    int n() const { return sys.support.n(); }
    int64_t ell() const { return static_cast<int64_t>(edge_vars.size()); }
};

/// Relations Xi^2 = g_i (edge variables only) for each non-edge variable i.
struct SquareRelations {
    std::vector<int> vars;       // aligned with g
    std::vector<SparsePoly> g;
};

/// The ell remaining equations in the edge variables alone. Rank-deficient
/// inputs pad with zero polynomials so there are always exactly ell entries.
struct CoreSystem {
    std::vector<int> vars;
    std::vector<SparsePoly> polys;
};

/// Gaussian elimination of the non-edge squares; throws std::runtime_error
/// when S is rank-deficient.
std::pair<SquareRelations, CoreSystem> reduce_all_squares(const AllSquaresSystem& as);

struct SolveOptions {
    int64_t max_ell = 6;
    uint64_t max_prime = uint64_t{1} << 17;
};

/// All GF(p)-rational common zeros of the core system, as assignments to the
/// core variables in their sorted order; exhaustive over the first ell-1
/// coordinates with the last solved as a univariate quadratic. Solutions in
/// proper extensions are not found. Sorted lexicographically.
std::vector<std::vector<Fp>> solve_core(const CoreSystem& core, const PrimeField& field,
                                        const SolveOptions& opts = {});

/// One core solution with its square values classified; representative is a
/// full solution materialized via square roots when every g_i(a) is a
/// residue (or zero).
struct OrbitPoint {
    std::vector<Fp> core_point;                     // edge variables, sorted order
    std::vector<Fp> square_values;                  // g_i(a), aligned with relations.vars
    std::vector<uint8_t> residue;                   // 1 iff square_values[i] is a residue or 0
    std::optional<std::vector<Fp>> representative;  // values for X1..Xn (index 0 unused)
};

struct OrbitRepresentation {
    SquareRelations relations;
    CoreSystem core;
    std::vector<OrbitPoint> orbits;
};

OrbitRepresentation orbit_representation(const AllSquaresSystem& as, const SolveOptions& opts = {});

/// Coefficients (constant first) of P_mu(T) = prod (T - mu(a)) over the
/// distinct values of mu at the core solutions; P_mu vanishes at mu(x) for
/// every GF(p)-rational solution x of the system. mu must be square-free and
/// supported on edge variables.
std::vector<Fp> eliminant(const AllSquaresSystem& as, const Monomial& mu,
                          const SolveOptions& opts = {});

}  // namespace fewnull
