#include "fewnull/gf.hpp"

#include <stdexcept>

namespace fewnull {

namespace {

uint64_t pow_mod(uint64_t base, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) r = r * base % m;  // operands < 2^31, product < 2^62
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; the base set below is exact for all 64-bit
// inputs, so in particular for p < 2^31.
bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

PrimeField::PrimeField(uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0 || p >= (1ull << 31) || !is_prime(p))
        throw std::invalid_argument("PrimeField: modulus must be an odd prime in [3, 2^31)");
}

Fp PrimeField::from_int(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(p_);
    if (r < 0) r += static_cast<int64_t>(p_);
    return Fp{static_cast<uint32_t>(r)};
}

Fp PrimeField::pow(Fp a, uint64_t e) const {
    return Fp{static_cast<uint32_t>(pow_mod(a.v, e, p_))};
}

Fp PrimeField::inv(Fp a) const {
    if (a.v == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return pow(a, p_ - 2);
}

bool PrimeField::is_residue(Fp a) const {
    if (a.v == 0) return true;
    return pow(a, (p_ - 1) / 2).v == 1;
}

std::optional<std::pair<Fp, Fp>> PrimeField::sqrt(Fp a) const {
    if (a.v == 0) return std::make_pair(Fp{0}, Fp{0});
    if (!is_residue(a)) return std::nullopt;

    uint32_t r;
    if (p_ % 4 == 3) {
        r = pow(a, (p_ + 1) / 4).v;
    } else {
        // Tonelli-Shanks. p - 1 = q * 2^s with q odd.
        uint64_t q = p_ - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        // Smallest non-residue as the auxiliary element; deterministic.
        Fp z{2};
        while (is_residue(z)) ++z.v;

        Fp c = pow(z, q);
        Fp t = pow(a, q);
        Fp x = pow(a, (q + 1) / 2);
        int m = s;
        while (t.v != 1) {
            Fp t2 = t;
            int i = 0;
            while (t2.v != 1) {
                t2 = mul(t2, t2);
                ++i;
            }
            Fp b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
            x = mul(x, b);
            c = mul(b, b);
            t = mul(t, c);
            m = i;
        }
        r = x.v;
    }
    uint32_t other = static_cast<uint32_t>(p_) - r;
    if (r > other) std::swap(r, other);
    return std::make_pair(Fp{r}, Fp{other});
}

}  // namespace fewnull
