#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fewnull/gf.hpp"
#include "fewnull/rng.hpp"

using namespace fewnull;

TEST_CASE("field construction validates the modulus") {
    CHECK_NOTHROW(PrimeField{});
    CHECK(PrimeField{}.modulus() == 65521);
    CHECK_NOTHROW(PrimeField{3});
    CHECK_NOTHROW(PrimeField{101});
    CHECK_THROWS_AS(PrimeField{2}, std::invalid_argument);
    CHECK_THROWS_AS(PrimeField{1}, std::invalid_argument);
    CHECK_THROWS_AS(PrimeField{9}, std::invalid_argument);
    CHECK_THROWS_AS(PrimeField{65520}, std::invalid_argument);
    CHECK_THROWS_AS(PrimeField{uint64_t{1} << 33}, std::invalid_argument);
}

TEST_CASE("basic arithmetic") {
    PrimeField f(65521);
    CHECK(f.add(Fp{65520}, Fp{1}).v == 0);
    CHECK(f.inv(Fp{1}).v == 1);
    PrimeField f7(7);
    CHECK(f7.mul(Fp{3}, Fp{5}).v == 1);
    CHECK(f7.neg(Fp{0}).v == 0);
    CHECK(f7.sub(Fp{2}, Fp{5}).v == 4);
    CHECK(f7.from_int(-9).v == 5);
}

TEST_CASE("inverse against exhaustive check mod 7") {
    PrimeField f(7);
    CHECK(f.inv(Fp{3}).v == 5);
    for (uint32_t a = 1; a < 7; ++a) {
        uint32_t found = 0;
        for (uint32_t b = 1; b < 7; ++b)
            if (a * b % 7 == 1) found = b;
        CHECK(f.inv(Fp{a}).v == found);
    }
    CHECK_THROWS_AS(f.inv(Fp{0}), std::domain_error);
}

TEST_CASE("field axioms on random triples") {
    for (uint64_t p : {7ull, 101ull, 65521ull, 2147483647ull}) {
        PrimeField f(p);
        Rng rng(42 + p);
        for (int i = 0; i < 200; ++i) {
            Fp a = f.from_uint(rng.next_u64());
            Fp b = f.from_uint(rng.next_u64());
            Fp c = f.from_uint(rng.next_u64());
            CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)).v == 0);
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
            if (a.v) CHECK(f.mul(a, f.inv(a)).v == 1);
        }
    }
}

TEST_CASE("square roots mod 7") {
    PrimeField f(7);
    auto r2 = f.sqrt(Fp{2});
    REQUIRE(r2.has_value());
    CHECK(r2->first.v == 3);
    CHECK(r2->second.v == 4);
    auto r0 = f.sqrt(Fp{0});
    REQUIRE(r0.has_value());
    CHECK(r0->first.v == 0);
    CHECK(r0->second.v == 0);
    CHECK(!f.sqrt(Fp{3}).has_value());  // squares mod 7 are {0,1,2,4}
}

TEST_CASE("square root roundtrip and residue census for small primes") {
    for (uint64_t p : {3ull, 5ull, 7ull, 13ull, 17ull, 41ull, 97ull, 101ull}) {
        PrimeField f(p);
        int64_t residues = 0;
        for (uint32_t a = 0; a < p; ++a) {
            auto r = f.sqrt(Fp{a});
            if (a == 0) {
                REQUIRE(r.has_value());
                CHECK(r->first.v == 0);
                continue;
            }
            if (r) {
                ++residues;
                CHECK(f.mul(r->first, r->first).v == a);
                CHECK(f.mul(r->second, r->second).v == a);
                CHECK(f.add(r->first, r->second).v == 0);
                CHECK(r->first.v <= r->second.v);
            }
            CHECK(r.has_value() == f.is_residue(Fp{a}));
        }
        CHECK(residues == static_cast<int64_t>((p - 1) / 2));
    }
}

TEST_CASE("square roots for the default prime and a 2-adic heavy prime") {
    // 65521 = 2^4 * 4095 + 1 and 786433 = 2^18 * 3 + 1 both exercise the
    // Tonelli-Shanks loop rather than the p % 4 == 3 shortcut.
    for (uint64_t p : {65521ull, 786433ull}) {
        PrimeField f(p);
        Rng rng(7);
        for (int i = 0; i < 300; ++i) {
            Fp a = f.from_uint(rng.next_u64());
            Fp sq = f.mul(a, a);
            auto r = f.sqrt(sq);
            REQUIRE(r.has_value());
            CHECK(f.mul(r->first, r->first) == sq);
        }
    }
}

TEST_CASE("rng streams are reproducible and splitting separates trials") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng t0 = Rng::for_trial(9, 0), t1 = Rng::for_trial(9, 1);
    CHECK(t0.next_u64() != t1.next_u64());
    std::set<uint64_t> firsts;
    for (uint64_t t = 0; t < 64; ++t) firsts.insert(Rng::for_trial(5, t).next_u64());
    CHECK(firsts.size() == 64);
    Rng c(99);
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = c.below(10);
        CHECK(x < 10);
        double d = c.unit_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
}
