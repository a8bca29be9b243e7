#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace fewnull {

/// Element of GF(p), stored as the canonical residue in [0, p).
struct Fp {
    uint32_t v = 0;
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
    friend bool operator<(Fp a, Fp b) { return a.v < b.v; }
};

/// Arithmetic context for GF(p), p an odd prime below 2^31.
///
/// All operations return canonical residues. The context is immutable and
/// values are plain structs, so everything is safe to share across threads.
class PrimeField {
public:
    static constexpr uint64_t kDefaultPrime = 65521;

    /// Validates that p is an odd prime in [3, 2^31). Throws std::invalid_argument.
    explicit PrimeField(uint64_t p = kDefaultPrime);

    uint64_t modulus() const { return p_; }

    Fp zero() const { return Fp{0}; }
    Fp one() const { return Fp{1}; }
    Fp from_uint(uint64_t x) const { return Fp{static_cast<uint32_t>(x % p_)}; }
    Fp from_int(int64_t x) const;

    Fp add(Fp a, Fp b) const {
        uint32_t s = a.v + b.v;  // p < 2^31, no overflow
        if (s >= p_) s -= static_cast<uint32_t>(p_);
        return Fp{s};
    }
    Fp sub(Fp a, Fp b) const {
        return Fp{a.v >= b.v ? a.v - b.v : a.v + static_cast<uint32_t>(p_) - b.v};
    }
    Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : static_cast<uint32_t>(p_) - a.v}; }
    Fp mul(Fp a, Fp b) const {
        return Fp{static_cast<uint32_t>(static_cast<uint64_t>(a.v) * b.v % p_)};
    }
    Fp pow(Fp a, uint64_t e) const;

    /// Multiplicative inverse; throws std::domain_error for a = 0.
    Fp inv(Fp a) const;

    /// Square roots of a as the pair {r, p-r} with r <= p-r, or nullopt when a
    /// is a quadratic non-residue. sqrt(0) yields {0, 0}.
    std::optional<std::pair<Fp, Fp>> sqrt(Fp a) const;

    /// True for 0 and quadratic residues.
    bool is_residue(Fp a) const;

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.p_ != b.p_; }

private:
    uint64_t p_;
};

}  // namespace fewnull
