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

#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "frobsplit/qrsp.hpp"

using namespace frobsplit;

namespace {

PresentationPtr line(std::uint32_t p) { return make_presentation(p, 2, {"x"}, {0}); }
PresentationPtr plane(std::uint32_t p) { return make_presentation(p, 2, {"x", "y"}, {0, 1}); }

PerfPoly var(const PresentationPtr& pres, std::size_t j, std::uint32_t num, std::uint32_t den = 1) {
    return PerfPoly::variable(pres, j, num * (pres->denominator() / den));
}
PerfPoly one(const PresentationPtr& pres) { return PerfPoly::constant(pres, 1); }
PDElement pd(const PresentationPtr& pres, std::uint32_t a, std::uint32_t b = 0) {
    return PDElement::monomial(pres, {a, b});
}
PDElement lift(const PerfPoly& c) { return PDElement::from_coefficient(c); }

// Random element of P with small fractional exponents; `in_ideal` multiplies
// each term by a generator.
PerfPoly random_element(const PresentationPtr& pres, std::mt19937_64& rng, bool in_ideal) {
    std::uniform_int_distribution<std::uint32_t> num(0, 2 * pres->denominator() - 1);
    std::uniform_int_distribution<std::uint32_t> coeff(1, pres->p() - 1);
    std::uniform_int_distribution<std::size_t> gen(0, pres->codimension() - 1);
    PerfPoly out(pres);
    for (int t = 0; t < 3; ++t) {
        FractionalMonomial m;
        for (std::size_t j = 0; j < pres->nvars(); ++j) m[j] = num(rng);
        auto term = PerfPoly::monomial(pres, m, coeff(rng));
        if (in_ideal) term = term * PerfPoly::generator(pres, gen(rng));
        out += term;
    }
    return out;
}

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("fractional monomials respect the declared precision") {
    auto pres = line(2);
    CHECK(pres->denominator() == 4);
    auto half = var(pres, 0, 1, 2);
    CHECK(half.to_string() == "x^(1/2)");
    CHECK(half * half == var(pres, 0, 1));
    CHECK(half.frobenius() == var(pres, 0, 1));
    CHECK(var(pres, 0, 1).frobenius_inverse() == half);
    // x^(1/4) has no square root at precision 2.
    auto quarter = var(pres, 0, 1, 4);
    CHECK(half.frobenius_inverse() == quarter);
    CHECK_THROWS_AS(quarter.frobenius_inverse(), BoundError);
    CHECK_THROWS_AS(make_presentation(2, 7, {"x"}, {0}), InputError);
    CHECK_THROWS_AS(make_presentation(2, 2, {"x"}, {1}), InputError);
    CHECK_THROWS_AS(make_presentation(2, 2, {"x", "y", "z"}, {0, 1, 2}), InputError);
}

TEST_CASE("frobenius is bijective on P within precision") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto pres = plane(p);
        std::mt19937_64 rng(p);
        for (int s = 0; s < 10; ++s) {
            auto a = random_element(pres, rng, false);
            CHECK(a.frobenius().frobenius_inverse() == a);
            CHECK(a.frobenius() == a.pow(p));
        }
    }
}

TEST_CASE("binomials mod p agree with exact binomials") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (unsigned n = 0; n <= 40; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                mpz_class b;
                mpz_bin_uiui(b.get_mpz_t(), n, k);
                CHECK(binomial_mod_p(n, k, p) == mpz_fdiv_ui(b.get_mpz_t(), p));
            }
}

TEST_CASE("divided power law on generators") {
    auto p2 = line(2);
    CHECK(pd_mul(pd(p2, 1), pd(p2, 1)).is_zero());
    CHECK(pd_mul(pd(p2, 1), pd(p2, 1)) == pd(p2, 2).scaled(2));

    auto p3 = line(3);
    CHECK(pd_mul(pd(p3, 1), pd(p3, 1)) == pd(p3, 2).scaled(2));
    CHECK(pd_mul(pd(p3, 2), pd(p3, 3)) == pd(p3, 5));
    CHECK(pd_mul(pd(p3, 2), pd(p3, 3)) == pd(p3, 5).scaled(10));

    // f^p = p! f^{[p]} = 0.
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto pres = line(p);
        CHECK(lift(PerfPoly::generator(pres, 0).pow(p)).is_zero());
        CHECK_FALSE(pd(pres, p).is_zero());
        for (std::uint32_t a = 0; a <= 2 * p; ++a)
            for (std::uint32_t b = 0; a + b < 4 * p; ++b) {
                mpz_class c;
                mpz_bin_uiui(c.get_mpz_t(), a + b, a);
                CHECK(pd_mul(pd(pres, a), pd(pres, b)) ==
                      pd(pres, a + b).scaled(static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), p))));
            }
    }
}

TEST_CASE("divided powers of ideal elements satisfy the PD axioms") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto pres = plane(p);
        std::mt19937_64 rng(100 + p);
        for (int s = 0; s < 5; ++s) {
            auto a = random_element(pres, rng, true);
            auto b = random_element(pres, rng, true);
            auto r = random_element(pres, rng, false);
            // l! u^{[l]} = u^l.
            for (std::uint32_t l = 0; l < p; ++l)
                CHECK(divided_power(a, l).scaled(static_cast<std::uint32_t>(factorial(l) % p)) == lift(a.pow(l)));
            for (std::uint32_t l = 0; l <= 2 * p; ++l) {
                // (a + b)^{[l]} = sum_i a^{[l-i]} b^{[i]}.
                PDElement sum(pres);
                for (std::uint32_t i = 0; i <= l; ++i) sum += pd_mul(divided_power(a, l - i), divided_power(b, i));
                CHECK(divided_power(a + b, l) == sum);
                // (r f)^{[l]} = r^l f^{[l]}.
                auto f = PerfPoly::generator(pres, 1);
                CHECK(divided_power(r * f, l) == pd(pres, 0, l).times(r.pow(l)));
                // u^{[a]} u^{[b]} = binom(a+b, a) u^{[a+b]}.
                CHECK(pd_mul(divided_power(a, l), divided_power(a, 1)) ==
                      divided_power(a, l + 1).scaled(binomial_mod_p(l + 1, 1, p)));
            }
        }
    }
}

TEST_CASE("(ab)^[2] = a^2 b^[2]") {
    auto pres = plane(3);
    std::mt19937_64 rng(7);
    for (int s = 0; s < 10; ++s) {
        auto a = random_element(pres, rng, true);
        auto b = random_element(pres, rng, true);
        CHECK(divided_power(a * b, 2) == divided_power(b, 2).times(a.pow(2)));
    }
}

TEST_CASE("divided powers need an element of I") {
    auto pres = line(3);
    CHECK_THROWS_AS(divided_power(one(pres), 1), InputError);
    CHECK_THROWS_AS(divided_power(var(pres, 0, 1, 3), 1), InputError);
    CHECK_THROWS_AS(pd(pres, 3 * 4), BoundError);
    CHECK_THROWS_AS(pd_mul(pd(pres, 3), pd(pres, 9)), BoundError);
    // binom(12, 6) = 0 mod 3, so this product vanishes below the cap check.
    CHECK(pd_mul(pd(pres, 6), pd(pres, 6)).is_zero());
}

TEST_CASE("conjugate filtration generators") {
    auto pres = line(2);
    auto fil0 = conj_filtration_basis(pres, 0);
    CHECK(fil0 == std::vector<PDIndex>{{0, 0}, {1, 0}});
    auto fil1 = conj_filtration_basis(pres, 1);
    CHECK(fil1 == std::vector<PDIndex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK_THROWS_AS(conj_filtration_basis(pres, 4), BoundError);

    for (auto pr : {line(3), plane(2), plane(3)}) {
        for (std::size_t n = 0; n < 3; ++n) {
            auto small = conj_filtration_basis(pr, n);
            auto big = conj_filtration_basis(pr, n + 1);
            CHECK(small.size() < big.size());
            for (const auto& l : small) CHECK(std::find(big.begin(), big.end(), l) != big.end());
            for (const auto& l : small) CHECK(pd(pr, l[0], l[1]).level() <= n);
        }
    }
    // Two generators at p = 2: sum l < 2 gives 1, x^[1], y^[1].
    CHECK(conj_filtration_basis(plane(2), 0).size() == 3);
}

TEST_CASE("reduction modulo I D") {
    for (std::uint32_t p : {2u, 3u}) {
        auto pres = line(p);
        auto x = PerfPoly::generator(pres, 0);
        CHECK(frobenius_pullback_quotient(pd(pres, 2).times(x)).is_zero());
        CHECK(frobenius_pullback_quotient(pd(pres, 1).times(x)).is_zero());
        CHECK(frobenius_pullback_quotient(pd(pres, 1)).is_zero());
        CHECK_FALSE(frobenius_pullback_quotient(pd(pres, p)).is_zero());
        // x^(1/p) is not in I, so it survives.
        CHECK_FALSE(frobenius_pullback_quotient(pd(pres, p).times(var(pres, 0, 1, p))).is_zero());
    }
}

TEST_CASE("graded pieces map on small elements") {
    auto p2 = line(2);
    auto g1 = GammaElement::monomial(p2, {1, 0});
    CHECK(graded_piece_map(g1) == pd(p2, 2));
    CHECK(graded_piece_map(GammaElement::monomial(p2, {0, 0})) == lift(one(p2)));

    auto p3 = line(3);
    CHECK(graded_piece_map(GammaElement::monomial(p3, {1, 0})) == pd(p3, 3).scaled(2));
    // Coefficients act through r~^p.
    auto r = var(p3, 0, 1, 3);
    CHECK(graded_piece_map(GammaElement::monomial(p3, {1, 0}).times(r)) == pd(p3, 3).scaled(2).times(var(p3, 0, 1)));
    auto mixed = GammaElement::monomial(p3, {1, 0});
    mixed += GammaElement::monomial(p3, {0, 0});
    CHECK_THROWS_AS(graded_piece_map(mixed), InputError);
}

TEST_CASE("splitting map on small elements") {
    auto p2 = line(2);
    CHECK(splitting_s(GammaElement::monomial(p2, {1, 0})) == pd(p2, 2));
    CHECK(splitting_s(GammaElement::monomial(p2, {0, 0})) == lift(one(p2)));

    // (x + x^2)^[2] = x^[2] + x x^2 + x^2 x^[2], and modulo I D only x^[2] stays.
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto pres = line(p);
        auto x = PerfPoly::generator(pres, 0);
        auto moved = x + x.pow(2);
        CHECK(divided_power(moved, 2) == pd(pres, 2) + lift(x.pow(3)) + pd(pres, 2).times(x.pow(2)));
        CHECK(frobenius_pullback_quotient(divided_power(moved, 2)) == frobenius_pullback_quotient(pd(pres, 2)));
        std::vector<PerfPoly> lifts{moved};
        for (std::uint32_t l = 0; l <= 3; ++l) {
            auto g = GammaElement::monomial(pres, {l, 0});
            CHECK(splitting_s(g, lifts) == splitting_s(g));
            CHECK(splitting_s(g) == pd(pres, p * l).scaled(l % 2 == 0 ? 1 : p - 1));
        }
    }
    auto p3 = line(3);
    std::vector<PerfPoly> bad{PerfPoly::generator(p3, 0) + var(p3, 0, 3, 2)};
    CHECK_THROWS_AS(splitting_s(GammaElement::monomial(p3, {1, 0}), bad), InputError);
    CHECK_THROWS_AS(splitting_s(GammaElement::monomial(p3, {4, 0})), BoundError);
}

TEST_CASE("gamma algebra products") {
    auto pres = plane(3);
    auto a = GammaElement::monomial(pres, {1, 0});
    auto b = GammaElement::monomial(pres, {0, 1});
    CHECK(gamma_mul(a, a) == GammaElement::monomial(pres, {2, 0}).times(PerfPoly::constant(pres, 2)));
    CHECK(gamma_mul(gamma_mul(a, a), a).is_zero());
    CHECK(gamma_mul(a, b) == GammaElement::monomial(pres, {1, 1}));
    CHECK(gamma_mul(a, b).weight() == 2);
    // Coefficients live in R = P/I.
    CHECK(a.times(PerfPoly::generator(pres, 0)).is_zero());
}

TEST_CASE("filtered isomorphism on small presentations") {
    SUBCASE("one generator") {
        for (std::uint32_t p : {2u, 3u}) {
            auto rep = verify_filtered_iso(line(p), 3);
            CHECK(rep.ok());
            REQUIRE(rep.levels.size() == 4);
            for (const auto& lv : rep.levels) {
                CHECK(lv.gamma_rank == 1);
                CHECK(lv.graded_rank == 1);
                CHECK(lv.bijective());
            }
            CHECK(rep.multiplicative);
            CHECK(rep.lift_independent);
            CHECK(rep.perturbations == 20);
        }
    }
    SUBCASE("two generators") {
        auto rep = verify_filtered_iso(plane(2), 2);
        CHECK(rep.ok());
        REQUIRE(rep.levels.size() == 3);
        for (const auto& lv : rep.levels) {
            CHECK(lv.gamma_rank == lv.n + 1);
            CHECK(lv.graded_rank == lv.n + 1);
            CHECK(lv.image_rank == lv.n + 1);
        }
    }
    SUBCASE("extra variable outside the ideal") {
        auto pres = make_presentation(3, 1, {"x", "y"}, {0});
        CHECK(verify_filtered_iso(pres, 2, 5).ok());
    }
    SUBCASE("level zero is the identity") {
        auto rep = verify_filtered_iso(line(5), 0);
        CHECK(rep.ok());
        CHECK(rep.levels.size() == 1);
        CHECK(rep.levels[0].image_rank == 1);
    }
    CHECK_THROWS_AS(verify_filtered_iso(line(2), 4), BoundError);
}

TEST_CASE("sign identity for (pk)! / (p^k k!)") {
    CHECK(factorial(10) / (25 * 2) == 72576);
    CHECK(72576 % 5 == 1);
    auto rep = sign_identity_check(30);
    CHECK(rep.ok());
    CHECK(rep.rows.size() == 4 * 30);
    for (const auto& row : rep.rows) {
        if (row.p == 2 && row.k == 1) CHECK(row.value == 1);
        if (row.p == 3 && row.k == 1) CHECK(row.value == 2);
        if (row.p == 5 && row.k == 2) CHECK(row.value == 1);
    }
    CHECK_THROWS_AS(sign_identity_check(31), InputError);
}
