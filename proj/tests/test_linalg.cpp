#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fewnull/linalg.hpp"
#include "fewnull/rng.hpp"

using namespace fewnull;

namespace {

std::vector<std::vector<uint32_t>> random_matrix(int64_t m, int64_t cols, const PrimeField& f, Rng& rng) {
    std::vector<std::vector<uint32_t>> rows(static_cast<size_t>(m),
                                            std::vector<uint32_t>(static_cast<size_t>(cols)));
    for (auto& r : rows)
        for (auto& v : r) v = static_cast<uint32_t>(rng.below(f.modulus()));
    return rows;
}

// Plain one-pivot-at-a-time Gauss-Jordan as the oracle.
std::vector<std::vector<uint32_t>> naive_rref(std::vector<std::vector<uint32_t>> rows, int64_t cols,
                                              const PrimeField& f) {
    size_t rank = 0;
    for (int64_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][static_cast<size_t>(c)] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        uint64_t inv = f.inv(Fp{rows[rank][static_cast<size_t>(c)]}).v;
        for (auto& v : rows[rank]) v = static_cast<uint32_t>(v * inv % f.modulus());
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][static_cast<size_t>(c)] == 0) continue;
            uint64_t factor = f.modulus() - rows[r][static_cast<size_t>(c)];
            for (int64_t j = 0; j < cols; ++j)
                rows[r][static_cast<size_t>(j)] = static_cast<uint32_t>(
                    (rows[r][static_cast<size_t>(j)] + factor * rows[rank][static_cast<size_t>(j)]) %
                    f.modulus());
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

}  // namespace

TEST_CASE("rref matches a naive implementation on random matrices") {
    Rng rng(31337);
    for (uint64_t p : {7ull, 65521ull}) {
        PrimeField f(p);
        for (int it = 0; it < 60; ++it) {
            int64_t m = 1 + static_cast<int64_t>(rng.below(12));
            int64_t cols = 1 + static_cast<int64_t>(rng.below(12));
            auto a = random_matrix(m, cols, f, rng);
            auto want = naive_rref(a, cols, f);
            RrefResult got = rref(a, cols, f, false);
            CHECK(got.rank == static_cast<int64_t>(want.size()));
            CHECK(got.rows == want);
        }
    }
}

TEST_CASE("rref handles rank-deficient and structured inputs") {
    PrimeField f(65521);
    Rng rng(9);
    for (int it = 0; it < 40; ++it) {
        // duplicate and scaled rows force rank deficiency
        int64_t cols = 6;
        auto a = random_matrix(3, cols, f, rng);
        auto dup = a[0];
        for (auto& v : dup) v = static_cast<uint32_t>(uint64_t{v} * 7 % f.modulus());
        a.push_back(dup);
        a.push_back(std::vector<uint32_t>(static_cast<size_t>(cols), 0));
        auto want = naive_rref(a, cols, f);
        RrefResult got = rref(a, cols, f, false);
        CHECK(got.rows == want);
        CHECK(got.rank <= 3);
    }
}

TEST_CASE("rref transform reproduces the reduced rows") {
    Rng rng(5);
    PrimeField f(101);
    for (int it = 0; it < 50; ++it) {
        int64_t m = 1 + static_cast<int64_t>(rng.below(10));
        int64_t cols = 1 + static_cast<int64_t>(rng.below(10));
        auto a = random_matrix(m, cols, f, rng);
        RrefResult got = rref(a, cols, f, true);
        REQUIRE(static_cast<int64_t>(got.transform.size()) == got.rank);
        for (int64_t j = 0; j < got.rank; ++j) {
            for (int64_t c = 0; c < cols; ++c) {
                uint64_t acc = 0;
                for (int64_t i = 0; i < m; ++i)
                    acc += static_cast<uint64_t>(got.transform[static_cast<size_t>(j)][static_cast<size_t>(i)]) *
                           a[static_cast<size_t>(i)][static_cast<size_t>(c)] % f.modulus();
                CHECK(acc % f.modulus() == got.rows[static_cast<size_t>(j)][static_cast<size_t>(c)]);
            }
        }
    }
}

TEST_CASE("rref exercises multiple panels") {
    // wide enough to cross the 64-pivot panel boundary several times
    Rng rng(777);
    PrimeField f(65521);
    int64_t m = 150, cols = 160;
    auto a = random_matrix(m, cols, f, rng);
    RrefResult got = rref(a, cols, f, true);
    auto want = naive_rref(a, cols, f);
    CHECK(got.rank == static_cast<int64_t>(want.size()));
    CHECK(got.rows == want);
    for (int64_t j = 0; j < got.rank; j += 37) {
        for (int64_t c = 0; c < cols; c += 13) {
            uint64_t acc = 0;
            for (int64_t i = 0; i < m; ++i)
                acc += static_cast<uint64_t>(got.transform[static_cast<size_t>(j)][static_cast<size_t>(i)]) *
                       a[static_cast<size_t>(i)][static_cast<size_t>(c)] % f.modulus();
            CHECK(acc % f.modulus() == got.rows[static_cast<size_t>(j)][static_cast<size_t>(c)]);
        }
    }
}

TEST_CASE("matrix inverse") {
    PrimeField f(65521);
    Rng rng(123);
    for (int it = 0; it < 30; ++it) {
        int64_t n = 1 + static_cast<int64_t>(rng.below(8));
        auto a = random_matrix(n, n, f, rng);
        auto inv = invert(a, f);
        if (rank_of(a, n, f) < n) {
            CHECK(!inv.has_value());
            continue;
        }
        REQUIRE(inv.has_value());
        for (int64_t i = 0; i < n; ++i)
            for (int64_t j = 0; j < n; ++j) {
                uint64_t acc = 0;
                for (int64_t t = 0; t < n; ++t)
                    acc += static_cast<uint64_t>((*inv)[static_cast<size_t>(i)][static_cast<size_t>(t)]) *
                           a[static_cast<size_t>(t)][static_cast<size_t>(j)] % f.modulus();
                CHECK(acc % f.modulus() == (i == j ? 1u : 0u));
            }
    }
    std::vector<std::vector<uint32_t>> singular{{1, 2}, {2, 4}};
    CHECK(!invert(singular, f).has_value());
}

TEST_CASE("sparse elimination rank agrees with dense rank") {
    Rng rng(4242);
    PrimeField f(65521);
    for (int it = 0; it < 60; ++it) {
        int64_t m = 1 + static_cast<int64_t>(rng.below(14));
        int64_t cols = 1 + static_cast<int64_t>(rng.below(14));
        std::vector<SparseRow> sparse(static_cast<size_t>(m));
        std::vector<std::vector<uint32_t>> dense(static_cast<size_t>(m),
                                                 std::vector<uint32_t>(static_cast<size_t>(cols), 0));
        for (int64_t i = 0; i < m; ++i)
            for (int64_t c = 0; c < cols; ++c)
                if (rng.bernoulli(0.3)) {
                    uint32_t v = 1 + static_cast<uint32_t>(rng.below(f.modulus() - 1));
                    dense[static_cast<size_t>(i)][static_cast<size_t>(c)] = v;
                    sparse[static_cast<size_t>(i)].entries.emplace_back(static_cast<uint32_t>(c), v);
                }
        SparseElimination elim = sparse_eliminate(SparseMatrix::from_rows(sparse), f, false);
        CHECK(elim.rank == rank_of(dense, cols, f));
    }
}

TEST_CASE("reduce_against expresses vectors in the row space with exact combinations") {
    Rng rng(99);
    PrimeField f(101);
    for (int it = 0; it < 80; ++it) {
        int64_t m = 2 + static_cast<int64_t>(rng.below(8));
        int64_t cols = 2 + static_cast<int64_t>(rng.below(10));
        std::vector<SparseRow> rows(static_cast<size_t>(m));
        std::vector<std::vector<uint32_t>> dense(static_cast<size_t>(m),
                                                 std::vector<uint32_t>(static_cast<size_t>(cols), 0));
        for (int64_t i = 0; i < m; ++i)
            for (int64_t c = 0; c < cols; ++c)
                if (rng.bernoulli(0.4)) {
                    uint32_t v = 1 + static_cast<uint32_t>(rng.below(100));
                    dense[static_cast<size_t>(i)][static_cast<size_t>(c)] = v;
                    rows[static_cast<size_t>(i)].entries.emplace_back(static_cast<uint32_t>(c), v);
                }
        // target = a known combination of the rows
        std::vector<uint32_t> weights(static_cast<size_t>(m));
        std::vector<uint32_t> tdense(static_cast<size_t>(cols), 0);
        for (int64_t i = 0; i < m; ++i) {
            weights[static_cast<size_t>(i)] = static_cast<uint32_t>(rng.below(101));
            for (int64_t c = 0; c < cols; ++c)
                tdense[static_cast<size_t>(c)] = static_cast<uint32_t>(
                    (tdense[static_cast<size_t>(c)] +
                     uint64_t{weights[static_cast<size_t>(i)]} * dense[static_cast<size_t>(i)][static_cast<size_t>(c)]) %
                    101);
        }
        SparseRow target;
        for (int64_t c = 0; c < cols; ++c)
            if (tdense[static_cast<size_t>(c)]) target.entries.emplace_back(static_cast<uint32_t>(c), tdense[static_cast<size_t>(c)]);

        SparseElimination elim = sparse_eliminate(SparseMatrix::from_rows(rows), f, true);
        auto combo = reduce_against(elim, target, f);
        REQUIRE(combo.has_value());
        // the combination must reproduce the target exactly
        std::vector<uint32_t> back(static_cast<size_t>(cols), 0);
        for (auto [id, w] : *combo)
            for (int64_t c = 0; c < cols; ++c)
                back[static_cast<size_t>(c)] = static_cast<uint32_t>(
                    (back[static_cast<size_t>(c)] + uint64_t{w} * dense[id][static_cast<size_t>(c)]) % 101);
        CHECK(back == tdense);
    }
}

TEST_CASE("reduce_against rejects vectors outside the row space") {
    PrimeField f(7);
    std::vector<SparseRow> rows(1);
    rows[0].entries = {{0, 1}, {1, 1}};  // span{(1,1)}
    SparseElimination elim = sparse_eliminate(SparseMatrix::from_rows(rows), f, true);
    SparseRow target;
    target.entries = {{0, 1}};  // e_0 not in span
    CHECK(!reduce_against(elim, target, f).has_value());
    SparseRow inside;
    inside.entries = {{0, 3}, {1, 3}};
    CHECK(reduce_against(elim, inside, f).has_value());
}
