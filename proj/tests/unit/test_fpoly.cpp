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
#include "frobsplit/fpoly.hpp"
#include "frobsplit/sampling.hpp"

using namespace frobsplit;

namespace {

// Oracle: coefficient of `target` in a*b by enumerating ordered term pairs.
std::uint32_t product_coefficient(const FpPoly& a, const FpPoly& b, const Monomial& target) {
    std::uint64_t acc = 0;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            if (ta.mono * tb.mono == target) acc += ta.coeff * tb.coeff;
    return static_cast<std::uint32_t>(acc % a.p());
}

}  // namespace

TEST_CASE("prime field validation") {
    CHECK_THROWS_AS(PrimeField(4), InputError);
    CHECK_THROWS_AS(PrimeField(17), InputError);
    PrimeField k(7);
    CHECK(k.mul(k.inv(3), 3) == 1);
    CHECK(k.pow(3, 6) == 1);
}

TEST_CASE("freshman's dream and identity power") {
    auto r2 = make_ring(2, {"x", "y"});
    auto x = FpPoly::variable(r2, 0), y = FpPoly::variable(r2, 1);
    CHECK(pow(x + y, 2) == x * x + y * y);
    CHECK(pow(x + y, 0) == FpPoly::constant(r2, 1));
    CHECK(pow(FpPoly(r2), 0) == FpPoly::constant(r2, 1));
}

TEST_CASE("coefficient of x^2y^2 in (x^2+y^2+z^2)^2 over F_3") {
    auto r = make_ring(3, {"x", "y", "z"});
    auto f = parse_poly("x^2+y^2+z^2", r);
    Monomial target{2, 2, 0};
    CHECK(product_coefficient(f, f, target) == 2);
    CHECK(pow(f, 2).coefficient(target) == 2);
}

TEST_CASE("frobenius") {
    auto r2 = make_ring(2, {"x", "y"});
    CHECK(frobenius(parse_poly("x + y", r2)) == parse_poly("x^2 + y^2", r2));
    auto r3 = make_ring(3, {"x"});
    CHECK(frobenius(parse_poly("2x", r3)) == parse_poly("2x^3", r3));

    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 11 + p);
        for (int i = 0; i < 100; ++i) {
            auto f = s.poly(4, 3), g = s.poly(4, 3);
            CHECK(frobenius(f * g) == frobenius(f) * frobenius(g));
            CHECK(frobenius(f) == pow(f, p));
        }
    }
}

TEST_CASE("pth_root") {
    auto r2 = make_ring(2, {"x", "y"});
    auto root = pth_root(parse_poly("x^2*y^4", r2));
    REQUIRE(root);
    CHECK(*root == parse_poly("x*y^2", r2));
    CHECK_FALSE(pth_root(parse_poly("x^3", r2)));

    auto r5 = make_ring(5, {"x", "y"});
    PolySampler s(r5, 3);
    for (int i = 0; i < 100; ++i) {
        auto f = s.poly(5, 4);
        auto back = pth_root(frobenius(f));
        REQUIRE(back);
        CHECK(*back == f);
    }
}

TEST_CASE("p-basis decomposition") {
    auto r2 = make_ring(2, {"x", "y"});
    auto parts = p_basis_decompose(parse_poly("x^3 + x*y", r2));
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(Monomial{1, 0}) == parse_poly("x", r2));
    CHECK(parts.at(Monomial{1, 1}) == parse_poly("1", r2));

    auto sq = p_basis_decompose(parse_poly("x^2", r2));
    REQUIRE(sq.size() == 1);
    CHECK(sq.at(Monomial{0, 0}) == parse_poly("x", r2));

    for (std::uint32_t p : {2u, 3u, 7u}) {
        auto r = make_ring(p, {"x", "y"});
        PolySampler s(r, 100 + p);
        for (int i = 0; i < 100; ++i) {
            auto f = s.poly(6, 3 * p);
            CHECK(p_basis_recompose(r, p_basis_decompose(f), p) == f);
            CHECK(p_basis_recompose(r, p_basis_decompose(f, p * p), p * p) == f);
        }
    }
}

TEST_CASE("reduction modulo a hypersurface equation") {
    auto r = make_ring(5, {"x", "y"});
    auto f = parse_poly("x^3 + y", r);
    HypersurfaceRing ring(f);
    CHECK(reduce_mod_f(parse_poly("x^3", r), ring) == parse_poly("4y", r));
    CHECK(reduce_mod_f(f, ring).is_zero());

    auto r3 = make_ring(3, {"x", "y", "z"});
    HypersurfaceRing cubic(parse_poly("y^2*z - x^3 + x*z^2", r3));
    PolySampler s(r3, 9);
    for (int i = 0; i < 100; ++i) {
        auto a = s.poly(4, 3), rem = s.poly(5, 5);
        auto lhs = cubic.reduce(a * cubic.equation() + rem);
        CHECK(lhs == cubic.reduce(rem));
        CHECK(cubic.reduce(lhs) == lhs);
    }
}

TEST_CASE("ring axioms on random triples") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        auto r = make_ring(p, {"x", "y", "z"});
        PolySampler s(r, 7 * p);
        for (int i = 0; i < 200; ++i) {
            auto a = s.poly(4, 3), b = s.poly(4, 3), c = s.poly(4, 3);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a - a == FpPoly(r));
            CHECK(pow(a + b, p) == pow(a, p) + pow(b, p));
        }
    }
}

TEST_CASE("parallel and serial product kernels agree") {
    auto r = make_ring(7, {"x", "y", "z"});
    PolySampler s(r, 5);
    auto a = s.dense_homogeneous(14), b = s.dense_homogeneous(13);
    CHECK(mul_parallel(a, b) == mul_serial(a, b));
}

TEST_CASE("parser and printer round-trip") {
    auto r = make_ring(2, {"x", "y", "z"});
    auto f = parse_poly("y^2*z + y*z^2 + x^3", r);
    CHECK(f.to_string() == "x^3 + y^2*z + y*z^2");
    CHECK(parse_poly(f.to_string(), r) == f);
    CHECK(parse_poly("3 x y", r) == parse_poly("x*y", r));
    CHECK(parse_poly("(x+y)^2", r) == parse_poly("x^2 + y^2", r));
    CHECK(parse_poly("-x", make_ring(5, {"x"})).to_string() == "4*x");
    CHECK_THROWS_AS(parse_poly("x + w", r), InputError);
    CHECK_THROWS_AS(parse_poly("x + ", r), InputError);
    CHECK_THROWS_AS(parse_poly("x^", r), InputError);
    CHECK((collect_variables("y^2*z + x3 + 2*x") == std::vector<std::string>{"x", "x3", "y", "z"}));

    auto r7 = make_ring(7, {"u", "v"});
    PolySampler s(r7, 1);
    for (int i = 0; i < 50; ++i) {
        auto g = s.poly(6, 5);
        CHECK(parse_poly(g.to_string(), r7) == g);
    }
}

TEST_CASE("ambient mismatch") {
    auto a = FpPoly::variable(make_ring(2, {"x"}), 0);
    auto b = FpPoly::variable(make_ring(3, {"x"}), 0);
    CHECK_THROWS_AS(a + b, InputError);
    CHECK_THROWS_AS(a * b, InputError);
}

TEST_CASE("exact division and substitution") {
    auto r = make_ring(3, {"x", "y"});
    auto f = parse_poly("x^2 + y^2", r);
    auto g = parse_poly("x + 2y", r);
    auto q = divide_exact(f * g, g);
    REQUIRE(q);
    CHECK(*q == f);
    CHECK_FALSE(divide_exact(f + FpPoly::constant(r, 1), g));

    std::vector<FpPoly> vals{parse_poly("x + y", r), parse_poly("y", r)};
    CHECK(substitute(parse_poly("x^3", r), vals) == parse_poly("x^3 + y^3", r));
}

TEST_CASE("p-th roots inside a graded hypersurface ring") {
    auto r = make_ring(2, {"x", "y", "z"});
    HypersurfaceRing ring(parse_poly("y^2*z + y*z^2 + x^3", r));
    // x^6 = (x^3)^2 and x^3 = y^2 z + y z^2 in the quotient.
    auto root = ring.pth_root(parse_poly("y^4*z^2 + y^2*z^4", r));
    REQUIRE(root);
    CHECK(ring.reduce(pow(*root, 2)) == ring.reduce(parse_poly("x^6", r)));
    CHECK_FALSE(ring.pth_root(parse_poly("x*y", r)));
    PolySampler s(r, 4);
    for (int i = 0; i < 30; ++i) {
        auto h = s.homogeneous(2, 3);
        auto rt = ring.pth_root(ring.reduce(pow(h, 2)));
        REQUIRE(rt);
        CHECK(ring.reduce(pow(*rt, 2)) == ring.reduce(pow(h, 2)));
    }
}
