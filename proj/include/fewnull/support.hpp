#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fewnull {

/// Monomial in variables X0..Xn, canonical as the sorted multiset of variable
/// indices. Supports hold monomials of degree <= 2; products of two support
/// monomials reach degree 4, which is the hard upper bound here.
///
/// Index 0 is reserved for the homogenization variable: affine supports live
/// on X1..Xn and only homogeneous (degree-exactly-2) sets may mention X0.
class Monomial {
public:
    static constexpr int kMaxDegree = 4;

    Monomial() : deg_(0) { vars_.fill(-1); }

    static Monomial one() { return Monomial(); }
    static Monomial linear(int i) {
        Monomial m;
        m.push(i);
        return m;
    }
    static Monomial square(int i) {
        Monomial m;
        m.push(i);
        m.push(i);
        return m;
    }
    static Monomial product(int i, int j) {
        Monomial m;
        m.push(i);
        m.push(j);
        m.canonicalize();
        return m;
    }

    int degree() const { return deg_; }
    bool is_constant() const { return deg_ == 0; }
    bool is_square() const { return deg_ == 2 && vars_[0] == vars_[1]; }
    bool is_squarefree() const;
    /// Variable index at slot t (0 <= t < degree), ascending with multiplicity.
    int var(int t) const { return vars_[static_cast<size_t>(t)]; }
    int max_var() const { return deg_ == 0 ? -1 : vars_[static_cast<size_t>(deg_ - 1)]; }
    bool uses_var(int i) const;

    /// Product of two monomials; total degree must stay <= 4.
    Monomial times(const Monomial& o) const;

    /// Multiplies by X0^(2-deg); requires degree <= 2 and no X0 present.
    Monomial homogenized() const;
    /// Substitutes X0 := 1.
    Monomial dehomogenized() const;

    /// Graded order: by total degree, then lexicographic on the sorted index
    /// vector. Deterministic and total.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return a.vars_ < b.vars_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.deg_ == b.deg_ && a.vars_ == b.vars_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    size_t hash() const {
        size_t h = static_cast<size_t>(deg_);
        for (int t = 0; t < deg_; ++t)
            h = h * 0x9e3779b97f4a7c15ull + static_cast<size_t>(vars_[static_cast<size_t>(t)] + 1);
        return h;
    }

    /// Token form: "1", "xi", "xi^2", "xi*xj" for degree <= 2; higher degrees
    /// expand as "xi*xj*..." (diagnostics only).
    std::string str() const;

private:
    void push(int i);
    void canonicalize();

    std::array<int32_t, 4> vars_;
    int32_t deg_;
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Finite set of monomials of degree <= 2 over X1..Xn (affine, usually
/// containing the constant 1) or of degree exactly 2 over X0..Xn
/// (homogeneous). Stored sorted so that iteration order, and hence every
/// elimination pivot downstream, is deterministic.
class Support {
public:
    Support(int n, std::vector<Monomial> monomials);

    int n() const { return n_; }
    int64_t size() const { return static_cast<int64_t>(mons_.size()); }
    const Monomial& operator[](int64_t i) const { return mons_[static_cast<size_t>(i)]; }
    const std::vector<Monomial>& monomials() const { return mons_; }

    bool contains(const Monomial& m) const;
    /// Index in the sorted order, or -1 when absent.
    int64_t index_of(const Monomial& m) const;
    bool contains_constant() const { return !mons_.empty() && mons_.front().is_constant(); }

    /// True when every monomial has degree exactly 2.
    bool homogeneous() const;

    /// The homogenized support {X0^(2-deg(mu)) mu}; same cardinality.
    Support homogenized() const;
    /// Substitutes X0 := 1; requires a homogeneous support.
    Support dehomogenized() const;

    friend bool operator==(const Support& a, const Support& b) {
        return a.n_ == b.n_ && a.mons_ == b.mons_;
    }

private:
    int n_;
    std::vector<Monomial> mons_;
};

}  // namespace fewnull
