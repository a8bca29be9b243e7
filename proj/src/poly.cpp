#include "fewnull/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "fewnull/rng.hpp"

namespace fewnull {

SparsePoly SparsePoly::monomial(const Monomial& m, Fp c) {
    SparsePoly p;
    if (c.v) p.terms_.emplace_back(m, c);
    return p;
}

SparsePoly SparsePoly::constant(Fp c) { return monomial(Monomial::one(), c); }

SparsePoly SparsePoly::from_terms(std::vector<std::pair<Monomial, Fp>> terms, const PrimeField& f) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparsePoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first)
            p.terms_.back().second = f.add(p.terms_.back().second, t.second);
        else
            p.terms_.push_back(t);
    }
    p.terms_.erase(std::remove_if(p.terms_.begin(), p.terms_.end(),
                                  [](const auto& t) { return t.second.v == 0; }),
                   p.terms_.end());
    return p;
}

SparsePoly SparsePoly::from_dense(const std::vector<uint32_t>& coeffs, const Support& s) {
    if (static_cast<int64_t>(coeffs.size()) != s.size())
        throw std::invalid_argument("SparsePoly::from_dense: size mismatch");
    SparsePoly p;
    for (int64_t i = 0; i < s.size(); ++i)
        if (coeffs[static_cast<size_t>(i)]) p.terms_.emplace_back(s[i], Fp{coeffs[static_cast<size_t>(i)]});
    return p;
}

Fp SparsePoly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const Monomial& mm) { return t.first < mm; });
    if (it == terms_.end() || !(it->first == m)) return Fp{0};
    return it->second;
}

std::vector<uint32_t> SparsePoly::to_dense(const Support& s) const {
    std::vector<uint32_t> out(static_cast<size_t>(s.size()), 0);
    for (const auto& t : terms_) {
        int64_t idx = s.index_of(t.first);
        if (idx < 0) throw std::invalid_argument("SparsePoly::to_dense: term outside support: " + t.first.str());
        out[static_cast<size_t>(idx)] = t.second.v;
    }
    return out;
}

SparsePoly SparsePoly::plus(const SparsePoly& o, const PrimeField& f) const {
    SparsePoly out;
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j >= o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.terms_.push_back(terms_[i++]);
        } else if (i >= terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Fp v = f.add(terms_[i].second, o.terms_[j].second);
            if (v.v) out.terms_.emplace_back(terms_[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

SparsePoly SparsePoly::scaled(Fp c, const PrimeField& f) const {
    SparsePoly out;
    if (c.v == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.emplace_back(t.first, f.mul(t.second, c));
    return out;
}

SparsePoly SparsePoly::times(const SparsePoly& o, const PrimeField& f) const {
    std::vector<std::pair<Monomial, Fp>> terms;
    terms.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) terms.emplace_back(a.first.times(b.first), f.mul(a.second, b.second));
    return from_terms(std::move(terms), f);
}

Fp SparsePoly::eval(const std::vector<Fp>& point, const PrimeField& f) const {
    Fp acc{0};
    for (const auto& t : terms_) {
        Fp v = t.second;
        for (int s = 0; s < t.first.degree(); ++s) v = f.mul(v, point[static_cast<size_t>(t.first.var(s))]);
        acc = f.add(acc, v);
    }
    return acc;
}

SparsePoly SparsePoly::homogenized() const {
    SparsePoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.emplace_back(t.first.homogenized(), t.second);
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

SparsePoly SparsePoly::dehomogenized() const {
    SparsePoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.emplace_back(t.first.dehomogenized(), t.second);
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

FewnomialSystem::FewnomialSystem(PrimeField fld, Support sup, std::vector<SparsePoly> ps)
    : field(fld), support(std::move(sup)), polys(std::move(ps)) {
    if (polys.empty()) throw std::invalid_argument("FewnomialSystem: needs at least one polynomial");
    for (const auto& f : polys)
        for (const auto& t : f.terms()) {
            if (!support.contains(t.first))
                throw std::invalid_argument("FewnomialSystem: term outside support: " + t.first.str());
            if (t.second.v >= field.modulus())
                throw std::invalid_argument("FewnomialSystem: non-canonical coefficient");
        }
}

std::vector<std::vector<uint32_t>> FewnomialSystem::coefficient_rows() const {
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(polys.size());
    for (const auto& f : polys) rows.push_back(f.to_dense(support));
    return rows;
}

FewnomialSystem FewnomialSystem::dehomogenized() const {
    std::vector<SparsePoly> ps;
    ps.reserve(polys.size());
    for (const auto& f : polys) ps.push_back(f.dehomogenized());
    return FewnomialSystem(field, support.dehomogenized(), std::move(ps));
}

FewnomialSystem random_system(const Support& s, const PrimeField& f, int64_t m, Rng& rng) {
    std::vector<SparsePoly> polys;
    polys.reserve(static_cast<size_t>(m));
    std::vector<uint32_t> coeffs(static_cast<size_t>(s.size()));
    for (int64_t i = 0; i < m; ++i) {
        for (auto& c : coeffs) c = static_cast<uint32_t>(rng.below(f.modulus()));
        polys.push_back(SparsePoly::from_dense(coeffs, s));
    }
    return FewnomialSystem(f, s, std::move(polys));
}

}  // namespace fewnull
