#include "fewnull/allsquares.hpp"

#include <algorithm>
#include <stdexcept>

#include "fewnull/linalg.hpp"

namespace fewnull {

AllSquaresSystem AllSquaresSystem::from_system(FewnomialSystem s) {
    const int n = s.support.n();
    if (s.m() != n) throw std::invalid_argument("AllSquaresSystem: needs n equations in n variables");
    if (!s.support.contains_constant())
        throw std::invalid_argument("AllSquaresSystem: support must contain the constant 1");
    for (int i = 1; i <= n; ++i)
        if (!s.support.contains(Monomial::square(i)))
            throw std::invalid_argument("AllSquaresSystem: support must contain every square");

    AllSquaresSystem as{std::move(s), {}, {}, 0};
    as.k = as.sys.support.size() - n - 1;
    if (as.k < 0) throw std::invalid_argument("AllSquaresSystem: support smaller than n+1");
    if (n <= 2 * as.k) throw std::invalid_argument("AllSquaresSystem: requires n > 2k");

    std::vector<uint8_t> is_edge(static_cast<size_t>(n) + 1, 0);
    for (const auto& mon : as.sys.support.monomials())
        if (!mon.is_constant() && !mon.is_square())
            for (int t = 0; t < mon.degree(); ++t) is_edge[static_cast<size_t>(mon.var(t))] = 1;
    for (int i = 1; i <= n; ++i)
        (is_edge[static_cast<size_t>(i)] ? as.edge_vars : as.nonedge_vars).push_back(i);
    if (as.ell() > 2 * as.k) throw std::invalid_argument("AllSquaresSystem: more than 2k edge variables");
    return as;
}

std::pair<SquareRelations, CoreSystem> reduce_all_squares(const AllSquaresSystem& as) {
    const PrimeField& field = as.sys.field;
    const Support& sup = as.sys.support;
    const int64_t M = sup.size();
    const int64_t n_nonedge = static_cast<int64_t>(as.nonedge_vars.size());

    // Column order: non-edge squares first (the S block), then the rest in
    // support order, so elimination removes the S block with priority.
    std::vector<int64_t> col_to_sup;
    col_to_sup.reserve(static_cast<size_t>(M));
    std::vector<uint8_t> is_s_col(static_cast<size_t>(M), 0);
    for (int v : as.nonedge_vars) {
        int64_t idx = sup.index_of(Monomial::square(v));
        col_to_sup.push_back(idx);
        is_s_col[static_cast<size_t>(idx)] = 1;
    }
    for (int64_t i = 0; i < M; ++i)
        if (!is_s_col[static_cast<size_t>(i)]) col_to_sup.push_back(i);

    std::vector<std::vector<uint32_t>> rows = as.sys.coefficient_rows();
    std::vector<std::vector<uint32_t>> perm(rows.size(), std::vector<uint32_t>(static_cast<size_t>(M)));
    for (size_t r = 0; r < rows.size(); ++r)
        for (int64_t c = 0; c < M; ++c)
            perm[r][static_cast<size_t>(c)] = rows[r][static_cast<size_t>(col_to_sup[static_cast<size_t>(c)])];

    RrefResult rr = rref(std::move(perm), M, field, false);

    int64_t s_pivots = 0;
    for (int64_t j = 0; j < rr.rank; ++j)
        if (rr.pivot_cols[static_cast<size_t>(j)] < n_nonedge) ++s_pivots;
    if (s_pivots != n_nonedge)
        throw std::runtime_error("reduce_all_squares: the square coefficient block S is rank-deficient");

    SquareRelations rel;
    CoreSystem core;
    core.vars = as.edge_vars;
    for (int64_t j = 0; j < rr.rank; ++j) {
        const auto& row = rr.rows[static_cast<size_t>(j)];
        int64_t pc = rr.pivot_cols[static_cast<size_t>(j)];
        if (pc < n_nonedge) {
            // X_v^2 + (tail) = 0, i.e. X_v^2 = -tail with the tail supported
            // on the non-S columns.
            std::vector<std::pair<Monomial, Fp>> terms;
            for (int64_t c = n_nonedge; c < M; ++c)
                if (row[static_cast<size_t>(c)])
                    terms.emplace_back(sup[col_to_sup[static_cast<size_t>(c)]],
                                       field.neg(Fp{row[static_cast<size_t>(c)]}));
            rel.vars.push_back(as.nonedge_vars[static_cast<size_t>(pc)]);
            rel.g.push_back(SparsePoly::from_terms(std::move(terms), field));
        } else {
            std::vector<std::pair<Monomial, Fp>> terms;
            for (int64_t c = n_nonedge; c < M; ++c)
                if (row[static_cast<size_t>(c)])
                    terms.emplace_back(sup[col_to_sup[static_cast<size_t>(c)]], Fp{row[static_cast<size_t>(c)]});
            core.polys.push_back(SparsePoly::from_terms(std::move(terms), field));
        }
    }
    // Rank-deficient remainders become zero constraints; the core always has
    // exactly ell entries.
    while (static_cast<int64_t>(core.polys.size()) < as.ell()) core.polys.push_back(SparsePoly());
    return {std::move(rel), std::move(core)};
}

namespace {

// Univariate view A*x^2 + B*x + C of a polynomial in the last unassigned
// variable, everything else evaluated at the partial assignment.
struct UniQuad {
    Fp a{0}, b{0}, c{0};
    bool identically_zero() const { return a.v == 0 && b.v == 0 && c.v == 0; }
};

UniQuad specialize(const SparsePoly& poly, const std::vector<Fp>& point, int last,
                   const PrimeField& f) {
    UniQuad q;
    for (const auto& [mon, coef] : poly.terms()) {
        int uses = 0;
        for (int t = 0; t < mon.degree(); ++t)
            if (mon.var(t) == last) ++uses;
        if (uses == 2) {
            q.a = f.add(q.a, coef);
        } else if (uses == 1) {
            Fp v = coef;
            for (int t = 0; t < mon.degree(); ++t)
                if (mon.var(t) != last) v = f.mul(v, point[static_cast<size_t>(mon.var(t))]);
            q.b = f.add(q.b, v);
        } else {
            Fp v = coef;
            for (int t = 0; t < mon.degree(); ++t) v = f.mul(v, point[static_cast<size_t>(mon.var(t))]);
            q.c = f.add(q.c, v);
        }
    }
    return q;
}

// Roots of a*x^2 + b*x + c; all_values set when every x is a root.
struct QuadRoots {
    std::vector<Fp> roots;
    bool all_values = false;
};

QuadRoots quad_roots(const UniQuad& q, const PrimeField& f) {
    QuadRoots out;
    if (q.a.v == 0) {
        if (q.b.v == 0) {
            out.all_values = (q.c.v == 0);
            return out;
        }
        out.roots.push_back(f.neg(f.mul(q.c, f.inv(q.b))));
        return out;
    }
    Fp disc = f.sub(f.mul(q.b, q.b), f.mul(f.from_uint(4), f.mul(q.a, q.c)));
    auto sq = f.sqrt(disc);
    if (!sq) return out;
    Fp inv2a = f.inv(f.mul(f.from_uint(2), q.a));
    out.roots.push_back(f.mul(f.sub(sq->first, q.b), inv2a));
    if (sq->second != sq->first) out.roots.push_back(f.mul(f.sub(sq->second, q.b), inv2a));
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace

std::vector<std::vector<Fp>> solve_core(const CoreSystem& core, const PrimeField& field,
                                        const SolveOptions& opts) {
    const int64_t ell = static_cast<int64_t>(core.vars.size());
    if (ell > opts.max_ell)
        throw std::runtime_error("solve_core: ell exceeds the exhaustive-search cap");
    if (field.modulus() > opts.max_prime)
        throw std::runtime_error("solve_core: prime exceeds the exhaustive-search cap");

    std::vector<std::vector<Fp>> solutions;
    if (ell == 0) {
        bool consistent = true;
        for (const auto& h : core.polys)
            if (!h.is_zero()) consistent = false;
        if (consistent) solutions.push_back({});
        return solutions;
    }

    int max_point_var = core.vars.back();
    std::vector<Fp> point(static_cast<size_t>(max_point_var) + 1, Fp{0});
    const int last = core.vars.back();
    const uint64_t p = field.modulus();

    // Polynomials fully determined once the variable at a given depth is
    // assigned, for early pruning.
    std::vector<std::vector<const SparsePoly*>> by_depth(static_cast<size_t>(ell));
    for (const auto& h : core.polys) {
        int maxv = -1;
        for (const auto& [mon, c] : h.terms())
            for (int t = 0; t < mon.degree(); ++t) maxv = std::max(maxv, mon.var(t));
        if (maxv < 0) continue;  // constants: zero polys skipped, nonzero impossible here
        for (int64_t d = 0; d < ell; ++d)
            if (core.vars[static_cast<size_t>(d)] == maxv) by_depth[static_cast<size_t>(d)].push_back(&h);
    }

    std::vector<Fp> current(static_cast<size_t>(ell));
    auto check_depth = [&](int64_t d) {
        for (const SparsePoly* h : by_depth[static_cast<size_t>(d)])
            if (h->eval(point, field).v != 0) return false;
        return true;
    };

    auto try_last = [&](Fp v) {
        point[static_cast<size_t>(last)] = v;
        for (const auto& h : core.polys)
            if (h.eval(point, field).v != 0) return;
        current[static_cast<size_t>(ell - 1)] = v;
        solutions.push_back(current);
    };

    auto descend = [&](auto&& self, int64_t depth) -> void {
        if (depth == ell - 1) {
            // Solve the last coordinate from the first non-degenerate
            // constraint instead of sweeping the field.
            QuadRoots cand;
            cand.all_values = true;
            for (const auto& h : core.polys) {
                UniQuad q = specialize(h, point, last, field);
                if (q.identically_zero()) continue;
                cand = quad_roots(q, field);
                break;
            }
            if (cand.all_values) {
                for (uint64_t x = 0; x < p; ++x) try_last(Fp{static_cast<uint32_t>(x)});
            } else {
                for (Fp r : cand.roots) try_last(r);
            }
            return;
        }
        int var = core.vars[static_cast<size_t>(depth)];
        for (uint64_t x = 0; x < p; ++x) {
            point[static_cast<size_t>(var)] = Fp{static_cast<uint32_t>(x)};
            current[static_cast<size_t>(depth)] = Fp{static_cast<uint32_t>(x)};
            if (!check_depth(depth)) continue;
            self(self, depth + 1);
        }
    };
    descend(descend, 0);
    std::sort(solutions.begin(), solutions.end(), [](const auto& a, const auto& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i].v != b[i].v) return a[i].v < b[i].v;
        return false;
    });
    return solutions;
}

OrbitRepresentation orbit_representation(const AllSquaresSystem& as, const SolveOptions& opts) {
    OrbitRepresentation rep;
    auto [rel, core] = reduce_all_squares(as);
    rep.relations = std::move(rel);
    rep.core = std::move(core);
    const PrimeField& f = as.sys.field;

    auto cores = solve_core(rep.core, f, opts);
    for (const auto& a : cores) {
        OrbitPoint pt;
        pt.core_point = a;
        std::vector<Fp> point(static_cast<size_t>(as.n()) + 1, Fp{0});
        for (size_t i = 0; i < rep.core.vars.size(); ++i)
            point[static_cast<size_t>(rep.core.vars[i])] = a[i];

        bool materializable = true;
        for (const auto& g : rep.relations.g) {
            Fp val = g.eval(point, f);
            pt.square_values.push_back(val);
            bool res = f.is_residue(val);
            pt.residue.push_back(res ? 1 : 0);
            materializable = materializable && res;
        }
        if (materializable) {
            std::vector<Fp> full = point;
            for (size_t i = 0; i < rep.relations.vars.size(); ++i) {
                auto roots = f.sqrt(pt.square_values[i]);
                full[static_cast<size_t>(rep.relations.vars[i])] = roots->first;
            }
            pt.representative = std::move(full);
        }
        rep.orbits.push_back(std::move(pt));
    }
    return rep;
}

std::vector<Fp> eliminant(const AllSquaresSystem& as, const Monomial& mu, const SolveOptions& opts) {
    if (mu.degree() < 1 || !mu.is_squarefree())
        throw std::invalid_argument("eliminant: mu must be a nonconstant square-free monomial");
    for (int t = 0; t < mu.degree(); ++t)
        if (!std::binary_search(as.edge_vars.begin(), as.edge_vars.end(), mu.var(t)))
            throw std::invalid_argument("eliminant: mu must be supported on edge variables");

    const PrimeField& f = as.sys.field;
    auto [rel, core] = reduce_all_squares(as);
    auto cores = solve_core(core, f, opts);

    std::vector<Fp> values;
    for (const auto& a : cores) {
        std::vector<Fp> point(static_cast<size_t>(as.n()) + 1, Fp{0});
        for (size_t i = 0; i < core.vars.size(); ++i) point[static_cast<size_t>(core.vars[i])] = a[i];
        Fp v = f.one();
        for (int t = 0; t < mu.degree(); ++t) v = f.mul(v, point[static_cast<size_t>(mu.var(t))]);
        values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<Fp> coeffs{f.one()};  // product of (T - v), constant term first
    for (Fp v : values) {
        coeffs.push_back(f.zero());
        for (size_t i = coeffs.size() - 1; i > 0; --i)
            coeffs[i] = f.sub(coeffs[i - 1], f.mul(v, coeffs[i]));
        coeffs[0] = f.mul(f.neg(v), coeffs[0]);
    }
    return coeffs;
}

}  // namespace fewnull
