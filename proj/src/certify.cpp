#include "fewnull/certify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <unordered_map>

#include "fewnull/graph.hpp"
#include "fewnull/linalg.hpp"

namespace fewnull {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Packed order-preserving key of a monomial: degree then the sorted index
// vector, so sorting keys sorts monomials in graded-lex order. Thirteen bits
// per index slot covers n up to 8190.
uint64_t monomial_key(const Monomial& m) {
    uint64_t key = static_cast<uint64_t>(m.degree()) << 52;
    for (int t = 0; t < m.degree(); ++t)
        key |= static_cast<uint64_t>(m.var(t) + 1) << (39 - 13 * t);
    return key;
}

// Pair-product column table of a support: col(a, b) is the id of the
// monomial s[a]*s[b], ids assigned in graded-lex order of the products so
// that pivoting on the smallest column id is pivoting on the smallest
// monomial.
struct SupportProducts {
    int64_t msize = 0;
    int64_t distinct = 0;
    std::vector<uint32_t> table;  // msize * msize

    uint32_t col(int64_t a, int64_t b) const {
        return table[static_cast<size_t>(a * msize + b)];
    }
    int64_t ncols() const { return distinct; }
};

SupportProducts build_products(const Support& s, int64_t m2_cap) {
    const int64_t M = s.size();
    if (M * (M + 1) / 2 > m2_cap)
        throw std::runtime_error("compute_certificate: C(|M|+1,2) = " + std::to_string(M * (M + 1) / 2) +
                                 " exceeds the degree-4 dimension cap " + std::to_string(m2_cap));
    SupportProducts out;
    out.msize = M;
    std::vector<uint64_t> keys(static_cast<size_t>(M * (M + 1) / 2));
    size_t w = 0;
    for (int64_t a = 0; a < M; ++a)
        for (int64_t b = a; b < M; ++b) keys[w++] = monomial_key(s[a].times(s[b]));
    std::vector<uint64_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    out.distinct = static_cast<int64_t>(sorted.size());

    out.table.assign(static_cast<size_t>(M * M), 0);
    w = 0;
    for (int64_t a = 0; a < M; ++a)
        for (int64_t b = a; b < M; ++b) {
            uint32_t id = static_cast<uint32_t>(
                std::lower_bound(sorted.begin(), sorted.end(), keys[w++]) - sorted.begin());
            out.table[static_cast<size_t>(a * M + b)] = id;
            out.table[static_cast<size_t>(b * M + a)] = id;
        }
    return out;
}

// Sparse view of one reduced polynomial: support indices and values.
struct IndexedPoly {
    std::vector<std::pair<uint32_t, uint32_t>> terms;
};

std::vector<IndexedPoly> indexed_rows(const std::vector<std::vector<uint32_t>>& dense) {
    std::vector<IndexedPoly> out(dense.size());
    for (size_t j = 0; j < dense.size(); ++j)
        for (uint32_t a = 0; a < dense[j].size(); ++a)
            if (dense[j][a]) out[j].terms.emplace_back(a, dense[j][a]);
    return out;
}

}  // namespace

FewnomialSystem reduce_system(const FewnomialSystem& sys) {
    RrefResult rr = rref(sys.coefficient_rows(), sys.support.size(), sys.field, false);
    std::vector<SparsePoly> polys;
    polys.reserve(static_cast<size_t>(rr.rank));
    for (const auto& row : rr.rows) polys.push_back(SparsePoly::from_dense(row, sys.support));
    if (polys.empty()) polys.push_back(SparsePoly());  // all-zero input keeps one zero row
    return FewnomialSystem(sys.field, sys.support, std::move(polys));
}

CertifyResult compute_certificate(const FewnomialSystem& sys, const CertifyOptions& opts) {
    if (!sys.support.contains_constant())
        throw std::invalid_argument("compute_certificate: support must contain the constant 1");
    const PrimeField& field = sys.field;
    const uint64_t p = field.modulus();
    const int64_t M = sys.support.size();
    const int64_t m = sys.m();
    CertifyResult res;

    auto t0 = std::chrono::steady_clock::now();
    RrefResult rr = rref(sys.coefficient_rows(), M, field, true);
    res.phase1_ms = ms_since(t0);
    const int64_t r = rr.rank;

    auto t1 = std::chrono::steady_clock::now();
    SupportProducts prod = build_products(sys.support, opts.m2_cap);
    if (r == 0) {  // zero system: certificate iff 1 = 0, never
        res.status = CertifyStatus::not_found;
        res.phase2_ms = ms_since(t1);
        return res;
    }

    std::vector<IndexedPoly> gs = indexed_rows(rr.rows);
    int64_t total_terms = 0;
    for (const auto& g : gs) total_terms += static_cast<int64_t>(g.terms.size());
    SparseMatrix rows;
    rows.entries.reserve(static_cast<size_t>(M * total_terms));
    rows.row_start.reserve(static_cast<size_t>(M * r) + 1);
    rows.row_start.push_back(0);
    std::vector<std::pair<uint32_t, uint32_t>> scratch;
    for (int64_t a = 0; a < M; ++a)
        for (int64_t j = 0; j < r; ++j) {
            scratch.clear();
            for (auto [b, v] : gs[static_cast<size_t>(j)].terms) scratch.emplace_back(prod.col(a, b), v);
            std::sort(scratch.begin(), scratch.end());
            rows.entries.insert(rows.entries.end(), scratch.begin(), scratch.end());
            rows.row_start.push_back(static_cast<uint32_t>(rows.entries.size()));
        }

    SparseElimination elim = sparse_eliminate(std::move(rows), field, true);
    res.product_rank = elim.rank;

    int64_t one_idx = sys.support.index_of(Monomial::one());
    SparseRow target;
    target.entries.emplace_back(prod.col(one_idx, one_idx), 1);
    auto combo = reduce_against(elim, std::move(target), field);
    if (!combo) {
        res.status = CertifyStatus::not_found;
        res.phase2_ms = ms_since(t1);
        return res;
    }

    // Cofactors for the reduced polynomials, one dense row per g_j.
    std::vector<std::vector<uint32_t>> hred(static_cast<size_t>(r));
    std::vector<uint8_t> nonzero(static_cast<size_t>(r), 0);
    for (auto [id, v] : *combo) {
        int64_t a = id / r, j = id % r;
        auto& row = hred[static_cast<size_t>(j)];
        if (row.empty()) row.assign(static_cast<size_t>(M), 0);
        row[static_cast<size_t>(a)] = v;
        nonzero[static_cast<size_t>(j)] = 1;
    }

    // Map back through the phase-1 transform: h_i = sum_j T[j][i] * hred_j.
    const bool fast = p < (1ull << 21);
    std::vector<uint64_t> acc(static_cast<size_t>(M));
    std::vector<std::vector<uint32_t>> hout(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int64_t j = 0; j < r; ++j) {
            if (!nonzero[static_cast<size_t>(j)]) continue;
            uint64_t f = rr.transform[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (!f) continue;
            const uint32_t* hr = hred[static_cast<size_t>(j)].data();
            if (fast) {
                for (int64_t a = 0; a < M; ++a) acc[static_cast<size_t>(a)] += f * hr[a];
            } else {
                for (int64_t a = 0; a < M; ++a)
                    acc[static_cast<size_t>(a)] = (acc[static_cast<size_t>(a)] + f * hr[a]) % p;
            }
        }
        auto& row = hout[static_cast<size_t>(i)];
        row.resize(static_cast<size_t>(M));
        for (int64_t a = 0; a < M; ++a) row[static_cast<size_t>(a)] = static_cast<uint32_t>(acc[static_cast<size_t>(a)] % p);
    }

    res.certificate.cofactors.reserve(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i)
        res.certificate.cofactors.push_back(SparsePoly::from_dense(hout[static_cast<size_t>(i)], sys.support));
    res.status = CertifyStatus::found;
    res.phase2_ms = ms_since(t1);

    if (opts.self_check && !verify_certificate(sys, res.certificate))
        throw std::logic_error("compute_certificate: internal error, certificate failed verification");
    return res;
}

bool verify_certificate(const FewnomialSystem& sys, const Certificate& cert) {
    const PrimeField& field = sys.field;
    const uint64_t p = field.modulus();
    const int64_t m = sys.m();
    if (static_cast<int64_t>(cert.cofactors.size()) != m)
        throw std::invalid_argument("verify_certificate: cofactor count differs from m");

    bool in_support = true;
    for (const auto& h : cert.cofactors)
        for (const auto& t : h.terms())
            if (!sys.support.contains(t.first)) in_support = false;

    if (in_support && p < (1ull << 21)) {
        // No pair of nonconstant monomials multiplies to a constant, so a
        // support without 1 can never reach the constant polynomial.
        if (!sys.support.contains_constant()) return false;
        // G = F^T H accumulated with delayed reduction, then each product
        // monomial collects its G entries; the result must be exactly the
        // constant polynomial 1.
        const int64_t M = sys.support.size();
        SupportProducts prod = build_products(sys.support, int64_t{1} << 25);
        std::vector<std::vector<uint32_t>> F = sys.coefficient_rows();
        std::vector<std::vector<uint32_t>> H;
        H.reserve(static_cast<size_t>(m));
        for (const auto& h : cert.cofactors) H.push_back(h.to_dense(sys.support));

        std::vector<uint64_t> G(static_cast<size_t>(M * M), 0);
        constexpr int64_t kTile = 16;
        for (int64_t a0 = 0; a0 < M; a0 += kTile) {
            int64_t a1 = std::min(M, a0 + kTile);
            for (int64_t i = 0; i < m; ++i) {
                const uint32_t* hrow = H[static_cast<size_t>(i)].data();
                const uint32_t* frow = F[static_cast<size_t>(i)].data();
                for (int64_t a = a0; a < a1; ++a) {
                    uint64_t f = frow[a];
                    if (!f) continue;
                    uint64_t* grow = &G[static_cast<size_t>(a * M)];
                    for (int64_t b = 0; b < M; ++b) grow[b] += f * hrow[b];
                }
            }
        }
        std::vector<uint64_t> colsum(static_cast<size_t>(prod.ncols()), 0);
        for (int64_t a = 0; a < M; ++a)
            for (int64_t b = 0; b < M; ++b)
                colsum[prod.col(a, b)] += G[static_cast<size_t>(a * M + b)] % p;
        uint32_t const_col = prod.col(sys.support.index_of(Monomial::one()),
                                      sys.support.index_of(Monomial::one()));
        for (int64_t c = 0; c < prod.ncols(); ++c) {
            uint64_t want = (static_cast<uint32_t>(c) == const_col) ? 1 : 0;
            if (colsum[static_cast<size_t>(c)] % p != want) return false;
        }
        return true;
    }

    // General path: exact sparse accumulation, any cofactor shape.
    std::unordered_map<Monomial, uint64_t, MonomialHash> acc;
    for (int64_t i = 0; i < m; ++i)
        for (const auto& ta : sys.polys[static_cast<size_t>(i)].terms())
            for (const auto& tb : cert.cofactors[static_cast<size_t>(i)].terms()) {
                uint64_t v = static_cast<uint64_t>(ta.second.v) * tb.second.v % p;
                auto [it, fresh] = acc.emplace(ta.first.times(tb.first), v);
                if (!fresh) it->second = (it->second + v) % p;
            }
    for (const auto& [mon, v] : acc) {
        uint64_t want = mon.is_constant() ? 1 : 0;
        if (v % p != want) return false;
    }
    return acc.count(Monomial::one()) > 0;
}

SquareSpanningForms square_spanning_forms(int64_t t, const PrimeField& field, Rng& rng, int retries) {
    if (t < 1) throw std::invalid_argument("square_spanning_forms: t must be >= 1");
    const uint64_t p = field.modulus();
    SquareSpanningForms out;
    out.t = t;
    const int64_t s = matching_defect(t);  // kept variables; C(s+1,2) <= t
    out.p = t - s;

    if (out.p == 0) {  // t = 1: the squares alone span
        out.base_change.assign(static_cast<size_t>(t), std::vector<uint32_t>(static_cast<size_t>(t), 0));
        for (int64_t i = 0; i < t; ++i) out.base_change[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        return out;
    }

    const int64_t qdim = s * (s + 1) / 2;  // dim of s-variate quadratic forms
    auto pair_index = [&](int64_t u, int64_t v) {  // u <= v < s, lex rank
        return u * s - u * (u - 1) / 2 + (v - u);
    };

    for (int attempt = 0; attempt < retries; ++attempt) {
        // t random linear forms in the first s variables.
        std::vector<std::vector<uint32_t>> L(static_cast<size_t>(t), std::vector<uint32_t>(static_cast<size_t>(s)));
        for (auto& row : L)
            for (auto& c : row) c = static_cast<uint32_t>(rng.below(p));

        // Their squares must span the space of s-variate quadratics.
        std::vector<std::vector<uint32_t>> Q(static_cast<size_t>(t), std::vector<uint32_t>(static_cast<size_t>(qdim), 0));
        for (int64_t i = 0; i < t; ++i)
            for (int64_t u = 0; u < s; ++u) {
                uint64_t au = L[static_cast<size_t>(i)][static_cast<size_t>(u)];
                if (!au) continue;
                auto& qrow = Q[static_cast<size_t>(i)];
                qrow[static_cast<size_t>(pair_index(u, u))] = static_cast<uint32_t>(au * au % p);
                for (int64_t v = u + 1; v < s; ++v) {
                    uint64_t av = L[static_cast<size_t>(i)][static_cast<size_t>(v)];
                    if (av) qrow[static_cast<size_t>(pair_index(u, v))] = static_cast<uint32_t>(2 * au % p * av % p);
                }
            }
        if (rank_of(Q, qdim, field) != qdim) continue;

        // Pick s linearly independent forms to front the permutation.
        std::vector<int64_t> chosen, rest;
        std::vector<std::vector<uint32_t>> basis;
        for (int64_t i = 0; i < t; ++i) {
            auto trial = basis;
            trial.push_back(L[static_cast<size_t>(i)]);
            if (rank_of(trial, s, field) > static_cast<int64_t>(basis.size()) &&
                static_cast<int64_t>(chosen.size()) < s) {
                basis = std::move(trial);
                chosen.push_back(i);
            } else {
                rest.push_back(i);
            }
        }
        if (static_cast<int64_t>(chosen.size()) != s) continue;

        // Change of variables theta(X_i) = ell''_i and its inverse.
        std::vector<int64_t> perm = chosen;
        perm.insert(perm.end(), rest.begin(), rest.end());
        std::vector<std::vector<uint32_t>> theta(static_cast<size_t>(t), std::vector<uint32_t>(static_cast<size_t>(t), 0));
        for (int64_t i = 0; i < t; ++i) {
            const auto& lrow = L[static_cast<size_t>(perm[static_cast<size_t>(i)])];
            if (i < s) {
                for (int64_t u = 0; u < s; ++u) theta[static_cast<size_t>(i)][static_cast<size_t>(u)] = lrow[static_cast<size_t>(u)];
            } else {
                for (int64_t u = 0; u < s; ++u)
                    theta[static_cast<size_t>(i)][static_cast<size_t>(u)] =
                        lrow[static_cast<size_t>(u)] ? static_cast<uint32_t>(p - lrow[static_cast<size_t>(u)]) : 0;
                theta[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            }
        }
        auto theta_inv = invert(theta, field);
        if (!theta_inv) continue;

        std::vector<std::vector<uint32_t>> forms;
        for (int64_t j = 0; j < out.p; ++j) forms.push_back((*theta_inv)[static_cast<size_t>(s + j)]);

        // Authoritative check: degree-2 membership of every monomial in
        // <X_1^2..X_t^2, ell_1..ell_p>, by rank over the t-variate quadratics.
        int64_t full_dim = t * (t + 1) / 2;
        auto tpair = [&](int64_t u, int64_t v) { return u * t - u * (u - 1) / 2 + (v - u); };
        std::vector<std::vector<uint32_t>> memb;
        for (int64_t i = 0; i < t; ++i) {
            std::vector<uint32_t> row(static_cast<size_t>(full_dim), 0);
            row[static_cast<size_t>(tpair(i, i))] = 1;
            memb.push_back(std::move(row));
        }
        for (const auto& form : forms)
            for (int64_t k = 0; k < t; ++k) {
                std::vector<uint32_t> row(static_cast<size_t>(full_dim), 0);
                for (int64_t u = 0; u < t; ++u) {
                    uint64_t c = form[static_cast<size_t>(u)];
                    if (!c) continue;
                    size_t idx = static_cast<size_t>(tpair(std::min(u, k), std::max(u, k)));
                    row[idx] = static_cast<uint32_t>((row[idx] + c) % p);
                }
                memb.push_back(std::move(row));
            }
        if (rank_of(memb, full_dim, field) != full_dim) continue;

        out.base_change = std::move(theta);
        out.forms = std::move(forms);
        return out;
    }
    throw std::runtime_error("square_spanning_forms: retry budget exhausted (field too small?)");
}

FewnomialSystem build_witness_system(const Support& s, const PrimeField& field, Rng& rng) {
    Support h = s.homogenized();
    SupportGraph g = build_graph(h);
    MatchingResult mr = matching_number(g);

    std::vector<uint8_t> matched(static_cast<size_t>(g.vertex_count), 0);
    for (const auto& e : mr.witness.edges) {
        matched[static_cast<size_t>(e.first)] = 1;
        matched[static_cast<size_t>(e.second)] = 1;
    }

    std::vector<SparsePoly> polys;
    for (const auto& mon : h.monomials())
        if (!mon.is_square()) polys.push_back(SparsePoly::monomial(mon, field.one()));
    for (const auto& mon : h.monomials())
        if (mon.is_square() && !matched[static_cast<size_t>(mon.var(0))])
            polys.push_back(SparsePoly::monomial(mon, field.one()));
    for (const auto& e : mr.witness.edges)
        polys.push_back(SparsePoly::from_terms({{Monomial::square(e.first), field.one()},
                                                {Monomial::square(e.second), field.neg(field.one())}},
                                               field));
    if (mr.nu >= 1) {
        SquareSpanningForms ssf = square_spanning_forms(mr.nu, field, rng);
        for (const auto& form : ssf.forms) {
            std::vector<std::pair<Monomial, Fp>> terms;
            for (int64_t u = 0; u < mr.nu; ++u)
                if (form[static_cast<size_t>(u)])
                    terms.emplace_back(Monomial::square(mr.witness.edges[static_cast<size_t>(u)].first),
                                       Fp{form[static_cast<size_t>(u)]});
            polys.push_back(SparsePoly::from_terms(std::move(terms), field));
        }
    }
    return FewnomialSystem(field, h, std::move(polys));
}

int64_t product_span_rank(const FewnomialSystem& sys, int64_t m2_cap) {
    SupportProducts prod = build_products(sys.support, m2_cap);
    const int64_t M = sys.support.size();
    SparseMatrix rows;
    rows.row_start.push_back(0);
    SparseRow row;
    for (int64_t a = 0; a < M; ++a)
        for (const auto& f : sys.polys) {
            row.entries.clear();
            for (const auto& tm : f.terms())
                row.entries.emplace_back(prod.col(a, sys.support.index_of(tm.first)), tm.second.v);
            row.sort_entries();
            rows.append_row(row);
        }
    return sparse_eliminate(std::move(rows), sys.field, false).rank;
}

}  // namespace fewnull
