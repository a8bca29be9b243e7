#pragma once

#include <cstdint>
#include <vector>

#include "fewnull/poly.hpp"
#include "fewnull/rng.hpp"

namespace fewnull {

struct CertifyOptions {
    // Guard on the number of degree-4 columns (pair products of the support);
    // the conservative upper bound C(|M|+1,2) is checked before any quadratic
    // work is attempted.
    int64_t m2_cap = int64_t{1} << 25;
    // Re-verify the returned certificate in-process; a failure here would be
    // an internal error, not a property of the input.
    bool self_check = true;
};

enum class CertifyStatus { found, not_found };

struct CertifyResult {
    CertifyStatus status = CertifyStatus::not_found;
    Certificate certificate;   // meaningful when status == found
    int64_t product_rank = 0;  // rank of span{mu * f_i}, for diagnostics
    double phase1_ms = 0;      // quadratic reduction
    double phase2_ms = 0;      // degree-4 matrix build, elimination, extraction

    bool found() const { return status == CertifyStatus::found; }
};

/// Searches for cofactors h_1..h_m in the span of the support with
/// sum f_i h_i = 1. Two phases: row-reduce the quadratic system (tracking the
/// change of basis), then eliminate the sparse degree-4 matrix of all
/// products mu * g_j and express the constant in its row space. not_found
/// means exactly that the constant is outside span{mu * f_i}; it does not
/// mean the system is consistent.
///
/// The support must contain the constant 1 (dehomogenize first if needed).
CertifyResult compute_certificate(const FewnomialSystem& sys, const CertifyOptions& opts = {});

/// Exact check of the polynomial identity sum f_i h_i = 1 over GF(p).
bool verify_certificate(const FewnomialSystem& sys, const Certificate& cert);

/// Row-echelon basis of the span of the input polynomials, over the same
/// support. With m = n and |M| = n+k+1 the reduced polynomials generically
/// carry at most k+2 terms, which is what keeps phase 2 sparse.
FewnomialSystem reduce_system(const FewnomialSystem& sys);

/// Linear forms from the square-spanning construction: t forms ell''_1..ell''_t
/// giving an invertible change of variables, and p = t - floor((sqrt(1+8t)-1)/2)
/// forms ell_1..ell_p such that <X_1^2,...,X_t^2, ell_1,...,ell_p> contains
/// every monomial of degree 2.
struct SquareSpanningForms {
    int64_t t = 0;
    int64_t p = 0;
    std::vector<std::vector<uint32_t>> base_change;  // t x t, rows = ell''_i
    std::vector<std::vector<uint32_t>> forms;        // p x t, rows = ell_j
};

/// Randomized construction with rank verification on each draw; throws
/// std::runtime_error when the retry budget is exhausted (only plausible over
/// tiny fields).
SquareSpanningForms square_spanning_forms(int64_t t, const PrimeField& field, Rng& rng,
                                          int retries = 8);

/// The explicit inconsistent system attached to a support: the square-free
/// monomials of M^h, the squares off the maximum matching, the differences
/// X_a^2 - X_b^2 along matching edges, and the square-spanning forms in the
/// matched squares. |M| - floor((sqrt(1+8nu)-1)/2) polynomials over M^h whose
/// products mu * f_i span all of span((M^h)^2).
FewnomialSystem build_witness_system(const Support& s, const PrimeField& field, Rng& rng);

/// Rank of span{mu * f_i : mu in M, i <= m} inside the pair-product space.
int64_t product_span_rank(const FewnomialSystem& sys, int64_t m2_cap = int64_t{1} << 25);

}  // namespace fewnull
