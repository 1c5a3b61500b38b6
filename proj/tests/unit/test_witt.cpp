/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"
#include "frobsplit/sampling.hpp"
#include "frobsplit/witt.hpp"

using namespace frobsplit;

namespace {

ZPoly var(std::size_t i) { return ZPoly::variable(i); }

// Interleaved layout of the structural polynomials.
ZPoly X(std::size_t j) { return var(2 * j); }
ZPoly Y(std::size_t j) { return var(2 * j + 1); }

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

WittVector random_witt(PolySampler& s, std::size_t n, std::size_t terms, std::uint64_t deg) {
    std::vector<FpPoly> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(s.poly(terms, deg));
    return WittVector(std::move(comps));
}

// Sizes that keep the integer ghost computations small for larger p and n.
std::size_t sample_terms(std::uint32_t p, std::size_t n) { return p >= 5 && n >= 3 ? 2 : 3; }
std::uint64_t sample_degree(std::uint32_t p, std::size_t n) { return p >= 5 && n >= 3 ? 1 : 2; }

WnModPClass cls(WittVector w) { return {std::move(w), false}; }

}  // namespace

TEST_CASE("structural polynomials for p = 2") {
    const auto& t = structural_polys(2, 2);
    CHECK(t.sum[0] == X(0) + Y(0));
    CHECK(t.sum[1] == X(1) + Y(1) - X(0) * Y(0));
    CHECK(t.product[0] == X(0) * Y(0));
    CHECK(t.product[1] == pow(X(0), 2) * Y(1) + X(1) * pow(Y(0), 2) + (X(1) * Y(1)).scaled(2));
    CHECK(t.negation[1] == -var(1) - pow(var(0), 2));
}

TEST_CASE("second addition polynomial for odd p") {
    for (unsigned p : {3u, 5u}) {
        ZPoly expected = X(1) + Y(1);
        for (unsigned i = 1; i < p; ++i) {
            mpz_class c = binomial(p, i) / p;
            expected -= (pow(X(0), i) * pow(Y(0), p - i)).scaled(c);
        }
        CHECK(structural_polys(p, 2).sum[1] == expected);
        // Odd p: negation is componentwise.
        CHECK(structural_polys(p, 3).negation[2] == -var(2));
    }
}

TEST_CASE("structural polynomial bounds") {
    CHECK_THROWS_AS(structural_polys(4, 2), InputError);
    CHECK_THROWS_AS(structural_polys(2, 5), InputError);
    CHECK_THROWS_AS(structural_polys(13, 4), BoundError);
}

TEST_CASE("identities and Teichmuller multiplicativity") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 17 * p);
        for (std::size_t n = 1; n <= 3; ++n) {
            for (int i = 0; i < 20; ++i) {
                auto a = random_witt(s, n, sample_terms(p, n), sample_degree(p, n));
                CHECK(witt_add(a, WittVector::zero(r, n)) == a);
                CHECK(witt_mul(a, WittVector::one(r, n)) == a);
                CHECK(witt_sub(a, a).is_zero());
                auto u = s.poly(3, 2), v = s.poly(3, 2);
                CHECK(witt_mul(WittVector::teichmuller(u, n), WittVector::teichmuller(v, n)) ==
                      WittVector::teichmuller(u * v, n));
            }
        }
    }
}

TEST_CASE("ring operations agree with ghost components") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 31 * p);
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto terms = sample_terms(p, n);
            const auto deg = sample_degree(p, n);
            for (int i = 0; i < 100; ++i) {
                auto a = random_witt(s, n, terms, deg), b = random_witt(s, n, terms, deg),
                     c = random_witt(s, n, terms, deg);
                auto sum = witt_add(a, b), prod = witt_mul(a, b);
                CHECK(ghost_confirms_sum(a, b, sum));
                CHECK(ghost_confirms_product(a, b, prod));
                CHECK(ghost_confirms_negation(a, witt_neg(a)));
                CHECK(witt_add(sum, c) == witt_add(a, witt_add(b, c)));
                CHECK(witt_mul(prod, c) == witt_mul(a, witt_mul(b, c)));
                CHECK(witt_mul(sum, c) == witt_add(witt_mul(a, c), witt_mul(b, c)));
                CHECK(sum == witt_add(b, a));
            }
        }
    }
}

TEST_CASE("a wrong result is rejected by the ghost oracle") {
    auto r = make_ring(3, {"x"});
    auto a = WittVector({parse_poly("x", r), parse_poly("1", r)});
    auto b = WittVector({parse_poly("x^2", r), parse_poly("x", r)});
    auto sum = witt_add(a, b);
    auto broken = WittVector({sum[0], sum[1] + FpPoly::constant(r, 1)});
    CHECK(ghost_confirms_sum(a, b, sum));
    CHECK_FALSE(ghost_confirms_sum(a, b, broken));
}

TEST_CASE("componentwise Frobenius matches the ghost-defined Frobenius") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 41 * p);
        for (std::size_t n = 2; n <= 3; ++n)
            for (int i = 0; i < 100; ++i) {
                auto a = random_witt(s, n, sample_terms(p, n), sample_degree(p, n));
                CHECK(GhostLift(a).frobenius().reduce(r) == frobenius_W(a));
            }
        auto u = s.poly(3, 2);
        CHECK(frobenius_W(WittVector::teichmuller(u, 3)) == WittVector::teichmuller(pow(u, p), 2));
    }
}

TEST_CASE("FV = VF = p") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 5 * p);
        for (std::size_t n = 2; n <= 3; ++n)
            for (int i = 0; i < 50; ++i) {
                auto a = random_witt(s, n, 3, 2);
                CHECK(frobenius_W(verschiebung(a)) == mul_by_p(a));
                CHECK(verschiebung(frobenius_W(a)) == mul_by_p(a));
            }
        CHECK(verschiebung(WittVector::zero(r, 2)).is_zero());
    }
}

TEST_CASE("multiplication by p equals repeated addition") {
    auto r2 = make_ring(2, {"x", "y"});
    auto xy = WittVector({parse_poly("x", r2), parse_poly("y", r2)});
    CHECK(mul_by_p(xy) == WittVector({FpPoly(r2), parse_poly("x^2", r2)}));
    CHECK(witt_add(xy, xy) == mul_by_p(xy));

    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 71 * p);
        for (std::size_t n = 1; n <= 3; ++n)
            for (int i = 0; i < 30; ++i) {
                auto a = random_witt(s, n, sample_terms(p, n), sample_degree(p, n));
                auto acc = a;
                for (std::uint32_t k = 1; k < p; ++k) acc = witt_add(acc, a);
                CHECK(acc == mul_by_p(a));
            }
        auto u = s.poly(3, 2);
        CHECK(mul_by_p(WittVector::teichmuller(u, 3)) ==
              WittVector({FpPoly(r), pow(u, p), FpPoly(r)}));
        CHECK(mul_by_p(WittVector::zero(r, 3)).is_zero());
    }
}

TEST_CASE("classes modulo p") {
    auto r = make_ring(2, {"x"});
    auto zero = cls(WittVector::zero(r, 2));
    CHECK(class_equal(cls(WittVector({FpPoly(r), parse_poly("x^2", r)})), zero));
    CHECK_FALSE(class_equal(cls(WittVector({FpPoly(r), parse_poly("x", r)})), zero));

    auto c = canonical_form(cls(WittVector({parse_poly("x", r), parse_poly("x^2 + x", r)})));
    CHECK(c.canonical);
    CHECK(c.representative == WittVector({parse_poly("x", r), parse_poly("x", r)}));
    CHECK(class_equal(c, cls(WittVector({parse_poly("x", r), parse_poly("x^2 + x", r)}))));

    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto rp = make_ring(p, {"x", "y"});
        PolySampler s(rp, 3 * p);
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 2 + i % 2;
            auto a = cls(random_witt(s, n, 4, 2 * p));
            auto once = canonical_form(a);
            CHECK(canonical_form(once).representative == once.representative);
            CHECK(class_equal(once, a));
            for (std::size_t k = 1; k < n; ++k)
                for (const auto& t : once.representative[k].terms()) CHECK_FALSE(t.mono.all_divisible_by(p));
        }
    }
}

TEST_CASE("restriction and section") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 13 * p);
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 2 + i % 2;
            auto u = s.poly(3, 2), v = s.poly(3, 2);
            auto su = section_s(u, n), sv = section_s(v, n);
            CHECK(class_equal(cls(witt_mul(su.representative, sv.representative)), section_s(u * v, n)));
            CHECK(class_equal(cls(witt_add(su.representative, sv.representative)), section_s(u + v, n)));
            CHECK(restriction_r(su) == pow(u, p));
        }
        CHECK(section_s(FpPoly::constant(r, 1), 2).representative == WittVector::one(r, 2));
        // F mod p equals s after r.
        for (int i = 0; i < 30; ++i) {
            auto a = random_witt(s, 3, 3, 2);
            CHECK(class_equal(cls(frobenius_W(a)), section_s(a[0], 2)));
        }
    }
}

TEST_CASE("module basis shape") {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::size_t d = 1; d <= 2; ++d) {
            std::vector<std::string> names{"x", "y"};
            names.resize(d);
            auto r = make_ring(p, names);
            for (std::size_t n = 1; n <= 3; ++n) {
                WnModPModuleBasis basis(r, n);
                auto entries = basis.entries();
                std::uint64_t expect = 1;
                for (std::size_t k = 0; k < n * d; ++k) expect *= p;
                CHECK(entries.size() == expect);
                CHECK(basis.cardinality() == expect);
            }
        }
    }
    auto r = make_ring(2, {"x", "y"});
    WnModPModuleBasis basis(r, 2);
    CHECK(basis.grade(BasisKey{1, Monomial{3, 0}}) == Grade::make(3, 4));
    CHECK(basis.entries_of_grade(Grade::make(1, 1)).size() == 3);  // [xy], V[x^3 y], V[x y^3]
    CHECK_FALSE(basis.contains(BasisKey{1, Monomial{2, 0}}));
    CHECK(basis.contains(BasisKey{1, Monomial{3, 2}}));
}

TEST_CASE("module action on basis entries") {
    for (std::uint32_t p : {2u, 3u}) {
        auto r = make_ring(p, {"x", "y"});
        WnModPModuleBasis basis(r, 3);
        PolySampler s(r, 61 * p);
        for (const auto& k : basis.entries()) {
            if (s.uniform(0, 9)) continue;
            auto c = s.poly(2, 2);
            std::uint64_t q = 1;
            for (std::size_t i = 0; i <= k.level; ++i) q *= p;
            std::vector<FpPoly> comps(3, FpPoly(r));
            comps[k.level] = pow(c, q).times_monomial(k.exponent);
            CHECK(module_action(c, basis.element(k)) == WittVector(comps));
        }
    }
}

TEST_CASE("express in basis") {
    auto r1 = make_ring(2, {"x"});
    WnModPModuleBasis b1(r1, 1);
    auto coeffs = express_in_basis(cls(WittVector({parse_poly("x^2", r1)})), b1);
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs.begin()->first == BasisKey{0, Monomial{0}});
    CHECK(coeffs.begin()->second == parse_poly("x", r1));

    WnModPModuleBasis b2(r1, 2);
    auto vx = b2.element(BasisKey{1, Monomial{1}});
    auto c2 = express_in_basis(cls(vx), b2);
    REQUIRE(c2.size() == 1);
    CHECK(c2.begin()->first == BasisKey{1, Monomial{1}});
    CHECK(c2.begin()->second == FpPoly::constant(r1, 1));

    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::size_t d = 1; d <= 2; ++d) {
            std::vector<std::string> names{"x", "y"};
            names.resize(d);
            auto r = make_ring(p, names);
            PolySampler s(r, 97 * p + d);
            for (int i = 0; i < 50; ++i) {
                const std::size_t n = 1 + i % 3;
                if (p == 5 && n == 3 && d == 2) continue;
                WnModPModuleBasis basis(r, n);
                auto a = cls(random_witt(s, n, 3, 2 * p));
                auto ex = express_in_basis(a, basis);
                for (const auto& [k, c] : ex) CHECK(basis.contains(k));
                CHECK(class_equal(recompose(ex, basis), a));
            }
        }
    }
}

TEST_CASE("Witt vectors over a hypersurface ring") {
    auto r = make_ring(2, {"x", "y", "z"});
    auto f = parse_poly("y^2*z + y*z^2 + x^3", r);
    auto q = std::make_shared<const HypersurfaceRing>(f);
    PolySampler s(r, 8);
    for (int i = 0; i < 30; ++i) {
        std::vector<FpPoly> ca, cb;
        for (int k = 0; k < 2; ++k) {
            ca.push_back(s.homogeneous(3 * (k + 1), 3));
            cb.push_back(s.homogeneous(3 * (k + 1), 3));
        }
        WittVector a(ca), b(cb), aq(ca, q), bq(cb, q);
        auto sum = witt_add(aq, bq), prod = witt_mul(aq, bq);
        CHECK(sum == WittVector(witt_add(a, b).components(), q));
        CHECK(prod == WittVector(witt_mul(a, b).components(), q));
    }
    // x^6 + y^4 z^2 reduces to (y z^2)^2.
    auto w = WittVector({FpPoly(r), parse_poly("x^6 + y^4*z^2", r)}, q);
    CHECK(class_equal(cls(w), cls(WittVector::zero(r, 2, q))));
    auto nonsq = WittVector({FpPoly(r), parse_poly("x*y*z", r)}, q);
    CHECK_FALSE(class_equal(cls(nonsq), cls(WittVector::zero(r, 2, q))));
    CHECK_THROWS_AS(canonical_form(cls(w)), InputError);
}

TEST_CASE("dump format and mismatches") {
    auto r = make_ring(2, {"x", "y"});
    auto a = WittVector({parse_poly("x", r), parse_poly("x*y + 1", r)});
    CHECK(a.dump() == "(x; x*y + 1) @ p=2, n=2");
    CHECK_THROWS_AS(witt_add(a, WittVector::zero(r, 3)), InputError);
    CHECK_THROWS_AS(witt_add(a, WittVector::zero(make_ring(3, {"x", "y"}), 2)), InputError);
    CHECK_THROWS_AS(WittVector({}), InputError);
}
