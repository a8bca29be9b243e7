#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fewnull/gf.hpp"
#include "fewnull/support.hpp"

namespace fewnull {

/// Polynomial as sorted (monomial, coefficient) terms, coefficients nonzero
/// and canonical. System polynomials stay inside their declared support;
/// products reach degree 4.
class SparsePoly {
public:
    SparsePoly() = default;

    static SparsePoly monomial(const Monomial& m, Fp c);
    static SparsePoly constant(Fp c);
    /// Collects terms, merging duplicates and dropping zeros.
    static SparsePoly from_terms(std::vector<std::pair<Monomial, Fp>> terms, const PrimeField& f);
    static SparsePoly from_dense(const std::vector<uint32_t>& coeffs, const Support& s);

    const std::vector<std::pair<Monomial, Fp>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first.is_constant() && terms_[0].second.v == 1;
    }
    int64_t term_count() const { return static_cast<int64_t>(terms_.size()); }
    Fp coeff(const Monomial& m) const;

    std::vector<uint32_t> to_dense(const Support& s) const;  // throws if a term is outside s

    SparsePoly plus(const SparsePoly& o, const PrimeField& f) const;
    SparsePoly scaled(Fp c, const PrimeField& f) const;
    SparsePoly times(const SparsePoly& o, const PrimeField& f) const;

    /// Evaluates at a point given as values for X0..Xn (index 0 included).
    Fp eval(const std::vector<Fp>& point, const PrimeField& f) const;

    SparsePoly homogenized() const;
    SparsePoly dehomogenized() const;

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

private:
    std::vector<std::pair<Monomial, Fp>> terms_;
};

/// System (f_1, ..., f_m) of polynomials sharing a support over GF(p).
struct FewnomialSystem {
    PrimeField field;
    Support support;
    std::vector<SparsePoly> polys;

    FewnomialSystem(PrimeField fld, Support sup, std::vector<SparsePoly> ps);

    int64_t m() const { return static_cast<int64_t>(polys.size()); }

    /// m x |M| coefficient matrix in support order.
    std::vector<std::vector<uint32_t>> coefficient_rows() const;

    FewnomialSystem dehomogenized() const;
};

/// Cofactors h_1..h_m over the system support with sum f_i h_i = 1.
struct Certificate {
    std::vector<SparsePoly> cofactors;
};

/// Random polynomial system over a support, every coefficient uniform in K.
class Rng;
FewnomialSystem random_system(const Support& s, const PrimeField& f, int64_t m, Rng& rng);

}  // namespace fewnull
