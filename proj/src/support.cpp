#include "fewnull/support.hpp"

#include <algorithm>
#include <stdexcept>

namespace fewnull {

bool Monomial::is_squarefree() const {
    for (int t = 0; t + 1 < deg_; ++t)
        if (vars_[static_cast<size_t>(t)] == vars_[static_cast<size_t>(t + 1)]) return false;
    return true;
}

bool Monomial::uses_var(int i) const {
    for (int t = 0; t < deg_; ++t)
        if (vars_[static_cast<size_t>(t)] == i) return true;
    return false;
}

void Monomial::push(int i) {
    if (i < 0) throw std::invalid_argument("Monomial: negative variable index");
    if (deg_ >= kMaxDegree) throw std::invalid_argument("Monomial: degree above 4");
    vars_[static_cast<size_t>(deg_++)] = i;
}

void Monomial::canonicalize() {
    std::sort(vars_.begin(), vars_.begin() + deg_);
}

Monomial Monomial::times(const Monomial& o) const {
    if (deg_ + o.deg_ > kMaxDegree) throw std::invalid_argument("Monomial::times: degree above 4");
    Monomial r;
    int a = 0, b = 0;
    while (a < deg_ || b < o.deg_) {
        if (b >= o.deg_ || (a < deg_ && vars_[static_cast<size_t>(a)] <= o.vars_[static_cast<size_t>(b)]))
            r.push(vars_[static_cast<size_t>(a++)]);
        else
            r.push(o.vars_[static_cast<size_t>(b++)]);
    }
    return r;
}

Monomial Monomial::homogenized() const {
    if (deg_ > 2) throw std::invalid_argument("Monomial::homogenized: degree above 2");
    if (uses_var(0)) throw std::invalid_argument("Monomial::homogenized: X0 already present");
    Monomial r;
    for (int t = deg_; t < 2; ++t) r.push(0);
    for (int t = 0; t < deg_; ++t) r.push(vars_[static_cast<size_t>(t)]);
    return r;
}

Monomial Monomial::dehomogenized() const {
    Monomial r;
    for (int t = 0; t < deg_; ++t)
        if (vars_[static_cast<size_t>(t)] != 0) r.push(vars_[static_cast<size_t>(t)]);
    return r;
}

std::string Monomial::str() const {
    if (deg_ == 0) return "1";
    std::string s;
    for (int t = 0; t < deg_;) {
        int i = vars_[static_cast<size_t>(t)];
        int mult = 1;
        while (t + mult < deg_ && vars_[static_cast<size_t>(t + mult)] == i) ++mult;
        if (!s.empty()) s += '*';
        s += 'x';
        s += std::to_string(i);
        if (mult == 2)
            s += "^2";
        else
            for (int r = 1; r < mult; ++r) (s += "*x") += std::to_string(i);
        t += mult;
    }
    return s;
}

Support::Support(int n, std::vector<Monomial> monomials) : n_(n), mons_(std::move(monomials)) {
    if (n < 0) throw std::invalid_argument("Support: negative variable count");
    std::sort(mons_.begin(), mons_.end());
    for (size_t i = 0; i + 1 < mons_.size(); ++i)
        if (mons_[i] == mons_[i + 1]) throw std::invalid_argument("Support: duplicate monomial " + mons_[i].str());
    bool uses_x0 = false;
    for (const auto& m : mons_) {
        if (m.degree() > 2) throw std::invalid_argument("Support: monomial of degree above 2: " + m.str());
        if (m.max_var() > n) throw std::invalid_argument("Support: variable index above n in " + m.str());
        if (m.uses_var(0)) uses_x0 = true;
    }
    if (uses_x0 && !homogeneous())
        throw std::invalid_argument("Support: X0 is reserved for homogeneous supports");
}

bool Support::contains(const Monomial& m) const {
    return std::binary_search(mons_.begin(), mons_.end(), m);
}

int64_t Support::index_of(const Monomial& m) const {
    auto it = std::lower_bound(mons_.begin(), mons_.end(), m);
    if (it == mons_.end() || !(*it == m)) return -1;
    return it - mons_.begin();
}

bool Support::homogeneous() const {
    for (const auto& m : mons_)
        if (m.degree() != 2) return false;
    return true;
}

Support Support::homogenized() const {
    if (homogeneous()) return *this;
    std::vector<Monomial> out;
    out.reserve(mons_.size());
    for (const auto& m : mons_) out.push_back(m.homogenized());
    return Support(n_, std::move(out));
}

Support Support::dehomogenized() const {
    if (!homogeneous()) throw std::invalid_argument("Support::dehomogenized: support is not homogeneous");
    std::vector<Monomial> out;
    out.reserve(mons_.size());
    for (const auto& m : mons_) out.push_back(m.dehomogenized());
    return Support(n_, std::move(out));
}

}  // namespace fewnull
