#include "fewnull/linalg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fewnull {

namespace {

// Accumulating k products below p^2 each in a uint64 is safe while k*p^2
// stays under 2^64; 64 is fine for p < 2^26, exotic larger primes fall back
// to tiny blocks.
int block_size_for(uint64_t p) { return p < (1ull << 26) ? 64 : 2; }

// Barrett reduction for x < 2^63.
struct Reducer {
    uint64_t p;
    uint64_t mult;  // floor((2^64 - 1) / p)

    explicit Reducer(uint64_t prime) : p(prime) { mult = ~uint64_t{0} / prime; }
    uint32_t reduce(uint64_t x) const {
        uint64_t q = static_cast<uint64_t>((static_cast<__uint128_t>(x) * mult) >> 64);
        uint64_t r = x - q * p;
        while (r >= p) r -= p;
        return static_cast<uint32_t>(r);
    }
};

}  // namespace

RrefResult rref(std::vector<std::vector<uint32_t>> rows, int64_t cols, const PrimeField& field,
                bool track_transform) {
    const uint64_t p = field.modulus();
    const Reducer red(p);
    const int64_t m = static_cast<int64_t>(rows.size());
    const int64_t width = cols + (track_transform ? m : 0);
    const int B = block_size_for(p);

    RrefResult out;
    if (m == 0) return out;
    for (auto& r : rows) {
        if (static_cast<int64_t>(r.size()) != cols) throw std::invalid_argument("rref: ragged input");
        if (track_transform) r.resize(static_cast<size_t>(width), 0);
    }
    // Transform part starts as the identity; ext[r] bounds its nonzero extent
    // so early panels skip the untouched tail.
    std::vector<int64_t> ext(static_cast<size_t>(m), 0);
    if (track_transform)
        for (int64_t i = 0; i < m; ++i) {
            rows[static_cast<size_t>(i)][static_cast<size_t>(cols + i)] = 1;
            ext[static_cast<size_t>(i)] = cols + i + 1;
        }

    std::vector<uint64_t> scratch(static_cast<size_t>(width));
    std::vector<int64_t> pivot_cols;
    std::vector<int64_t> panel_bounds;  // forward panel boundaries, for the back pass

    // row := row - sum_t f_t * panel_t over [lo1,hi1) and the transform part.
    auto apply_panel = [&](std::vector<uint32_t>& row, int64_t& row_ext,
                           const std::vector<int64_t>& panel, const std::vector<uint32_t>& fneg,
                           int64_t lo) {
        int64_t hi1 = std::min<int64_t>(cols, width);
        int64_t panel_ext = lo;
        if (track_transform)
            for (int64_t t : panel) panel_ext = std::max(panel_ext, ext[static_cast<size_t>(t)]);
        int64_t hi2 = track_transform ? std::max(row_ext, panel_ext) : cols;
        for (int64_t j = lo; j < hi1; ++j) scratch[static_cast<size_t>(j)] = row[static_cast<size_t>(j)];
        for (int64_t j = cols; j < hi2; ++j) scratch[static_cast<size_t>(j)] = row[static_cast<size_t>(j)];
        for (size_t t = 0; t < panel.size(); ++t) {
            const uint32_t f = fneg[t];
            if (!f) continue;
            const uint32_t* pr = rows[static_cast<size_t>(panel[t])].data();
            uint64_t* sc = scratch.data();
            for (int64_t j = lo; j < hi1; ++j) sc[j] += static_cast<uint64_t>(f) * pr[j];
            for (int64_t j = cols; j < hi2; ++j) sc[j] += static_cast<uint64_t>(f) * pr[j];
        }
        for (int64_t j = lo; j < hi1; ++j) row[static_cast<size_t>(j)] = red.reduce(scratch[static_cast<size_t>(j)]);
        for (int64_t j = cols; j < hi2; ++j) row[static_cast<size_t>(j)] = red.reduce(scratch[static_cast<size_t>(j)]);
        if (track_transform) row_ext = hi2;
    };

    std::vector<int64_t> panel;       // pivot row indices of the open panel
    std::vector<uint32_t> fneg;       // scratch multipliers
    int64_t rank = 0;
    int64_t col = 0;

    while (col < cols && rank + static_cast<int64_t>(panel.size()) < m) {
        // Scan for a pivot in this column among untouched rows; panel rows are
        // mutually clean, so the correction multiplier is the stored entry at
        // each panel pivot column.
        int64_t next_row = rank + static_cast<int64_t>(panel.size());
        int64_t found = -1;
        uint32_t found_val = 0;
        for (int64_t r = next_row; r < m; ++r) {
            uint64_t acc = rows[static_cast<size_t>(r)][static_cast<size_t>(col)];
            for (size_t t = 0; t < panel.size(); ++t) {
                uint32_t f = rows[static_cast<size_t>(r)][static_cast<size_t>(pivot_cols[rank + t])];
                if (f)
                    acc += static_cast<uint64_t>(p - f) *
                           rows[static_cast<size_t>(panel[t])][static_cast<size_t>(col)];
            }
            uint32_t v = red.reduce(acc);
            if (v) {
                found = r;
                found_val = v;
                break;
            }
        }
        if (found >= 0) {
            std::swap(rows[static_cast<size_t>(found)], rows[static_cast<size_t>(next_row)]);
            std::swap(ext[static_cast<size_t>(found)], ext[static_cast<size_t>(next_row)]);
            pivot_cols.push_back(col);
            // Materialize the new pivot row against the open panel, scale its
            // pivot to 1, then clean the panel rows against it.
            auto& nr = rows[static_cast<size_t>(next_row)];
            if (!panel.empty()) {
                fneg.clear();
                for (size_t t = 0; t < panel.size(); ++t) {
                    uint32_t f = nr[static_cast<size_t>(pivot_cols[rank + t])];
                    fneg.push_back(f ? static_cast<uint32_t>(p) - f : 0);
                }
                apply_panel(nr, ext[static_cast<size_t>(next_row)], panel, fneg,
                            pivot_cols[static_cast<size_t>(rank)]);
            }
            uint64_t inv = field.inv(Fp{found_val}).v;
            {
                int64_t hi2 = track_transform ? ext[static_cast<size_t>(next_row)] : cols;
                for (int64_t j = col; j < cols; ++j)
                    nr[static_cast<size_t>(j)] = red.reduce(nr[static_cast<size_t>(j)] * inv);
                for (int64_t j = cols; j < hi2; ++j)
                    nr[static_cast<size_t>(j)] = red.reduce(nr[static_cast<size_t>(j)] * inv);
            }
            for (int64_t t : panel) {
                auto& pr = rows[static_cast<size_t>(t)];
                uint32_t f = pr[static_cast<size_t>(col)];
                if (!f) continue;
                std::vector<int64_t> single{next_row};
                std::vector<uint32_t> fn{static_cast<uint32_t>(p) - f};
                apply_panel(pr, ext[static_cast<size_t>(t)], single, fn, col);
            }
            panel.push_back(next_row);
        }
        ++col;

        if (static_cast<int64_t>(panel.size()) == B || ((col >= cols || rank + static_cast<int64_t>(panel.size()) >= m) && !panel.empty())) {
            int64_t lo = pivot_cols[static_cast<size_t>(rank)];
            for (int64_t r = rank + static_cast<int64_t>(panel.size()); r < m; ++r) {
                fneg.clear();
                bool any = false;
                for (size_t t = 0; t < panel.size(); ++t) {
                    uint32_t f = rows[static_cast<size_t>(r)][static_cast<size_t>(pivot_cols[rank + t])];
                    fneg.push_back(f ? static_cast<uint32_t>(p) - f : 0);
                    any = any || f;
                }
                if (any) apply_panel(rows[static_cast<size_t>(r)], ext[static_cast<size_t>(r)], panel, fneg, lo);
            }
            panel_bounds.push_back(rank);
            rank += static_cast<int64_t>(panel.size());
            panel.clear();
        }
    }
    panel_bounds.push_back(rank);  // sentinel end

    // Back pass: clear entries above every pivot, one forward panel at a time
    // from the last; panel rows are mutually clean and, by the processing
    // order, already clean against all later pivots.
    for (int64_t pi = static_cast<int64_t>(panel_bounds.size()) - 2; pi >= 0; --pi) {
        int64_t lo_row = panel_bounds[static_cast<size_t>(pi)];
        int64_t hi_row = panel_bounds[static_cast<size_t>(pi + 1)];
        if (lo_row >= hi_row || lo_row == 0) continue;
        std::vector<int64_t> prows;
        for (int64_t t = lo_row; t < hi_row; ++t) prows.push_back(t);
        int64_t lo_col = pivot_cols[static_cast<size_t>(lo_row)];
        for (int64_t r = 0; r < lo_row; ++r) {
            fneg.clear();
            bool any = false;
            for (int64_t t = lo_row; t < hi_row; ++t) {
                uint32_t f = rows[static_cast<size_t>(r)][static_cast<size_t>(pivot_cols[static_cast<size_t>(t)])];
                fneg.push_back(f ? static_cast<uint32_t>(p) - f : 0);
                any = any || f;
            }
            if (any) apply_panel(rows[static_cast<size_t>(r)], ext[static_cast<size_t>(r)], prows, fneg, lo_col);
        }
    }

    out.rank = rank;
    out.pivot_cols = std::move(pivot_cols);
    out.rows.reserve(static_cast<size_t>(rank));
    if (track_transform) out.transform.reserve(static_cast<size_t>(rank));
    for (int64_t i = 0; i < rank; ++i) {
        auto& r = rows[static_cast<size_t>(i)];
        out.rows.emplace_back(r.begin(), r.begin() + cols);
        if (track_transform) out.transform.emplace_back(r.begin() + cols, r.end());
    }
    return out;
}

int64_t rank_of(std::vector<std::vector<uint32_t>> rows, int64_t cols, const PrimeField& field) {
    return rref(std::move(rows), cols, field, false).rank;
}

std::optional<std::vector<std::vector<uint32_t>>> invert(const std::vector<std::vector<uint32_t>>& m,
                                                         const PrimeField& field) {
    int64_t n = static_cast<int64_t>(m.size());
    RrefResult r = rref(m, n, field, true);
    if (r.rank < n) return std::nullopt;
    return r.transform;  // RREF of a full-rank square matrix is I, so T = M^-1
}

uint32_t SparseRow::value_at(uint32_t col) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, uint32_t c) { return e.first < c; });
    if (it == entries.end() || it->first != col) return 0;
    return it->second;
}

void SparseRow::sort_entries() { std::sort(entries.begin(), entries.end()); }

void SparseMatrix::append_row(const SparseRow& row) {
    if (row_start.empty()) row_start.push_back(0);
    entries.insert(entries.end(), row.entries.begin(), row.entries.end());
    row_start.push_back(static_cast<uint32_t>(entries.size()));
}

SparseMatrix SparseMatrix::from_rows(const std::vector<SparseRow>& rows) {
    SparseMatrix m;
    m.row_start.push_back(0);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

namespace {

using Entry = std::pair<uint32_t, uint32_t>;

// out = a + c * b over sorted (index, value) spans; zero results dropped.
// on_change reports columns whose presence flipped (+1 added, -1 removed).
template <typename F>
void merge_addmul_span(const Entry* a, size_t alen, uint64_t c, const Entry* b, size_t blen,
                       const PrimeField& field, std::vector<Entry>& out, F&& on_change) {
    const uint64_t p = field.modulus();
    out.clear();
    out.reserve(alen + blen);
    size_t i = 0, j = 0;
    while (i < alen || j < blen) {
        if (j >= blen || (i < alen && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= alen || b[j].first < a[i].first) {
            uint32_t v = static_cast<uint32_t>(c * b[j].second % p);
            if (v) {
                out.emplace_back(b[j].first, v);
                on_change(b[j].first, +1);
            }
            ++j;
        } else {
            uint32_t v = static_cast<uint32_t>((a[i].second + c * b[j].second) % p);
            if (v)
                out.emplace_back(a[i].first, v);
            else
                on_change(a[i].first, -1);
            ++i;
            ++j;
        }
    }
}

template <typename F>
std::vector<Entry> merge_addmul(const std::vector<Entry>& a, uint64_t c, const std::vector<Entry>& b,
                                const PrimeField& field, F&& on_change) {
    std::vector<Entry> out;
    merge_addmul_span(a.data(), a.size(), c, b.data(), b.size(), field, out, on_change);
    return out;
}

}  // namespace

SparseElimination sparse_eliminate(SparseMatrix matrix, const PrimeField& field,
                                   bool track_provenance) {
    const uint64_t p = field.modulus();
    SparseElimination out;
    const uint32_t nrows = static_cast<uint32_t>(matrix.rows());
    using Entries = std::vector<std::pair<uint32_t, uint32_t>>;

    uint32_t ncols = 0;
    for (auto& e : matrix.entries) ncols = std::max(ncols, e.first + 1);

    // Rows and provenance stay in the arena (resp. implicit identity) until a
    // row op touches them; the cascade of singleton columns then costs no
    // allocation at all.
    std::vector<int32_t> mod_of(nrows, -1);
    std::vector<Entries> mod_rows;
    std::vector<int32_t> prov_of(nrows, -1);
    std::vector<Entries> mod_prov;

    auto row_view = [&](uint32_t i) -> std::pair<const std::pair<uint32_t, uint32_t>*, size_t> {
        if (mod_of[i] >= 0) {
            const auto& v = mod_rows[static_cast<size_t>(mod_of[i])];
            return {v.data(), v.size()};
        }
        return {matrix.entries.data() + matrix.row_start[i],
                static_cast<size_t>(matrix.row_start[i + 1] - matrix.row_start[i])};
    };
    auto row_nnz = [&](uint32_t i) { return row_view(i).second; };
    auto value_at = [&](uint32_t i, uint32_t c) -> uint32_t {
        auto [ptr, len] = row_view(i);
        auto* it = std::lower_bound(ptr, ptr + len, c,
                                    [](const auto& e, uint32_t cc) { return e.first < cc; });
        if (it == ptr + len || it->first != c) return 0;
        return it->second;
    };

    // Column census: active-row count, xor of their ids (a singleton column
    // then knows its unique row for free), and a CSR index of initial row
    // ids; fill-in lands in per-column overflow vectors which stay
    // unallocated until a row op actually touches the column.
    std::vector<uint32_t> col_count(ncols, 0);
    std::vector<uint32_t> col_xor(ncols, 0);
    std::vector<uint32_t> csr_start(ncols + 1, 0);
    std::vector<uint32_t> csr_rows(matrix.entries.size());
    std::vector<std::vector<uint32_t>> extra(ncols);
    std::vector<uint8_t> active(nrows, 1);
    for (const auto& e : matrix.entries) ++csr_start[e.first + 1];
    for (uint32_t c = 0; c < ncols; ++c) csr_start[c + 1] += csr_start[c];
    {
        std::vector<uint32_t> cursor(csr_start.begin(), csr_start.end() - 1);
        for (uint32_t i = 0; i < nrows; ++i)
            for (uint32_t e = matrix.row_start[i]; e < matrix.row_start[i + 1]; ++e) {
                uint32_t c = matrix.entries[e].first;
                ++col_count[c];
                col_xor[c] ^= i;
                csr_rows[cursor[c]++] = i;
            }
    }
    for (uint32_t i = 0; i < nrows; ++i)
        if (matrix.row_start[i + 1] == matrix.row_start[i]) active[i] = 0;

    // Singleton columns retire their row with zero fill and drain first;
    // larger columns go through a lazy min-heap of (count, col) snapshots.
    // Columns above the threshold cannot win the min-count race while any
    // smaller column exists, so their pushes are suppressed; a rescan
    // reinstates them once the heap runs dry, keeping the pivot sequence
    // identical to the unsuppressed rule.
    constexpr uint32_t kHeapThresh = 64;
    std::vector<uint32_t> singles;
    std::priority_queue<uint64_t, std::vector<uint64_t>, std::greater<uint64_t>> heap;
    auto note_col = [&](uint32_t c) {
        if (col_count[c] == 1)
            singles.push_back(c);
        else if (col_count[c] >= 2 && col_count[c] <= kHeapThresh)
            heap.push((static_cast<uint64_t>(col_count[c]) << 32) | c);
    };
    for (uint32_t c = 0; c < ncols; ++c) note_col(c);

    auto noop = [](uint32_t, int) {};
    std::vector<uint32_t> candidates;
    Entries merge_scratch, prov_scratch;
    for (;;) {
        uint32_t c = 0;
        candidates.clear();
        bool single = false;
        while (!singles.empty()) {
            uint32_t sc = singles.back();
            singles.pop_back();
            if (col_count[sc] != 1) continue;
            c = sc;
            candidates.push_back(col_xor[sc]);
            single = true;
            break;
        }
        if (!single) {
            uint32_t cnt = 0;
            while (cnt == 0) {
                while (!heap.empty()) {
                    uint64_t top = heap.top();
                    heap.pop();
                    uint32_t hc = static_cast<uint32_t>(top);
                    uint32_t hcnt = static_cast<uint32_t>(top >> 32);
                    if (col_count[hc] != hcnt || hcnt < 2) continue;
                    c = hc;
                    cnt = hcnt;
                    break;
                }
                if (cnt) break;
                // heap dry: reinstate every surviving column, suppressed ones
                // included, and retry once; truly done when none remain
                bool any = false;
                for (uint32_t sc = 0; sc < ncols; ++sc) {
                    if (col_count[sc] == 1) {
                        singles.push_back(sc);
                        any = true;
                    } else if (col_count[sc] >= 2) {
                        heap.push((static_cast<uint64_t>(col_count[sc]) << 32) | sc);
                        any = true;
                    }
                }
                if (!any) break;
                if (!singles.empty()) break;  // let the singles drain first
            }
            if (cnt == 0 && singles.empty() && heap.empty()) break;
            if (cnt == 0) continue;  // fresh singles or reinstated heap entries
            for (uint32_t e = csr_start[c]; e < csr_start[c + 1]; ++e) {
                uint32_t id = csr_rows[e];
                if (active[id] && value_at(id, c)) candidates.push_back(id);
            }
            auto& lst = extra[c];
            size_t w = 0;
            for (size_t i = 0; i < lst.size(); ++i)
                if (active[lst[i]] && value_at(lst[i], c)) {
                    lst[w++] = lst[i];
                    candidates.push_back(lst[i]);
                }
            lst.resize(w);
        }
        uint32_t pick = candidates[0];
        for (uint32_t id : candidates)
            if (row_nnz(id) < row_nnz(pick) || (row_nnz(id) == row_nnz(pick) && id < pick)) pick = id;

        auto materialize_prov = [&](uint32_t i) -> Entries& {
            if (prov_of[i] < 0) {
                prov_of[i] = static_cast<int32_t>(mod_prov.size());
                mod_prov.push_back({{i, 1}});
            }
            return mod_prov[static_cast<size_t>(prov_of[i])];
        };

        uint64_t pivot_inv = field.inv(Fp{value_at(pick, c)}).v;
        auto [pivot_ptr, pivot_len] = row_view(pick);
        Entries pivot_entries(pivot_ptr, pivot_ptr + pivot_len);
        Entries pivot_prov;
        if (track_provenance)
            pivot_prov = prov_of[pick] >= 0 ? mod_prov[static_cast<size_t>(prov_of[pick])]
                                            : Entries{{pick, 1}};
        for (uint32_t id : candidates) {
            if (id == pick) continue;
            uint64_t factor = static_cast<uint64_t>(value_at(id, c)) * pivot_inv % p;
            uint64_t neg = factor ? p - factor : 0;
            auto changed = [&](uint32_t cc, int delta) {
                if (delta > 0) {
                    ++col_count[cc];
                    extra[cc].push_back(id);
                } else {
                    --col_count[cc];
                }
                col_xor[cc] ^= id;
                note_col(cc);
            };
            auto [qptr, qlen] = row_view(id);
            merge_addmul_span(qptr, qlen, neg, pivot_entries.data(), pivot_entries.size(), field,
                              merge_scratch, changed);
            if (mod_of[id] < 0) {
                mod_of[id] = static_cast<int32_t>(mod_rows.size());
                mod_rows.emplace_back();
            }
            mod_rows[static_cast<size_t>(mod_of[id])].swap(merge_scratch);
            if (track_provenance) {
                Entries& qp = materialize_prov(id);
                merge_addmul_span(qp.data(), qp.size(), neg, pivot_prov.data(), pivot_prov.size(),
                                  field, prov_scratch, noop);
                qp.swap(prov_scratch);
            }
            if (mod_rows[static_cast<size_t>(mod_of[id])].empty()) active[id] = 0;
        }

        // Retire the pivot row.
        active[pick] = 0;
        for (const auto& e : pivot_entries) {
            --col_count[e.first];
            col_xor[e.first] ^= pick;
            note_col(e.first);
        }
        SparseElimination::PivotRow pr;
        pr.pivot_col = c;
        pr.row.entries = std::move(pivot_entries);
        if (track_provenance) pr.provenance = std::move(pivot_prov);
        out.pivots.push_back(std::move(pr));
    }

    out.rank = static_cast<int64_t>(out.pivots.size());
    return out;
}

std::optional<std::vector<std::pair<uint32_t, uint32_t>>> reduce_against(
    const SparseElimination& elim, SparseRow target, const PrimeField& field) {
    const uint64_t p = field.modulus();
    auto noop = [](uint32_t, int) {};
    std::vector<std::pair<uint32_t, uint32_t>> comb;
    for (const auto& piv : elim.pivots) {
        if (target.entries.empty()) break;
        uint32_t v = target.value_at(piv.pivot_col);
        if (!v) continue;
        uint64_t gamma = static_cast<uint64_t>(v) * field.inv(Fp{piv.row.value_at(piv.pivot_col)}).v % p;
        target.entries = merge_addmul(target.entries, p - gamma, piv.row.entries, field, noop);
        comb = merge_addmul(comb, gamma, piv.provenance, field, noop);
    }
    if (!target.entries.empty()) return std::nullopt;
    return comb;
}

}  // namespace fewnull
