#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fewnull/gf.hpp"

namespace fewnull {

/// Reduced row echelon form over GF(p).
///
/// rows: the nonzero reduced rows (pivot entries 1, pivot columns cleared
/// elsewhere), in pivot-column order. transform: when tracked, row j of the
/// output equals sum_i transform[j][i] * input_row_i.
struct RrefResult {
    std::vector<std::vector<uint32_t>> rows;
    std::vector<std::vector<uint32_t>> transform;
    std::vector<int64_t> pivot_cols;
    int64_t rank = 0;
};

/// Blocked Gauss-Jordan with delayed modular reduction. Deterministic pivot
/// rule: columns left to right, first row with a nonzero entry.
RrefResult rref(std::vector<std::vector<uint32_t>> rows, int64_t cols, const PrimeField& field,
                bool track_transform);

int64_t rank_of(std::vector<std::vector<uint32_t>> rows, int64_t cols, const PrimeField& field);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<std::vector<std::vector<uint32_t>>> invert(const std::vector<std::vector<uint32_t>>& m,
                                                         const PrimeField& field);

/// Sparse row: sorted (column, value) pairs, values canonical and nonzero.
struct SparseRow {
    std::vector<std::pair<uint32_t, uint32_t>> entries;

    bool empty() const { return entries.empty(); }
    uint32_t value_at(uint32_t col) const;
    void sort_entries();
};

/// Row-major sparse matrix in one flat arena; entries sorted by column
/// within each row.
struct SparseMatrix {
    std::vector<std::pair<uint32_t, uint32_t>> entries;
    std::vector<uint32_t> row_start;  // size rows()+1

    int64_t rows() const { return row_start.empty() ? 0 : static_cast<int64_t>(row_start.size()) - 1; }
    void append_row(const SparseRow& row);
    static SparseMatrix from_rows(const std::vector<SparseRow>& rows);
};

/// Sparse Gaussian elimination with a Markowitz-style pivot rule: pick the
/// column with the fewest active rows (ties by column index, i.e. by the
/// graded-lex order the caller encodes in column ids), then within it the
/// shortest row (ties by row index). Columns with a single active row retire
/// for free, which is what keeps the structured degree-4 matrices near-linear.
///
/// Pivot rows are stored in creation order; a retired pivot row never
/// contains the pivot column of any earlier pivot, so reducing a vector
/// against them in creation order is exact.
struct SparseElimination {
    struct PivotRow {
        uint32_t pivot_col = 0;
        SparseRow row;
        // Expression of the row as a combination of original rows (row id,
        // coefficient); tracked only when requested.
        std::vector<std::pair<uint32_t, uint32_t>> provenance;
    };
    std::vector<PivotRow> pivots;
    int64_t rank = 0;
};

SparseElimination sparse_eliminate(SparseMatrix matrix, const PrimeField& field,
                                   bool track_provenance);

/// Expresses target as a combination of the original rows of the elimination,
/// or nullopt when target is outside the row space. Requires provenance.
std::optional<std::vector<std::pair<uint32_t, uint32_t>>> reduce_against(
    const SparseElimination& elim, SparseRow target, const PrimeField& field);

}  // namespace fewnull
