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

#include <cmath>

#include "doctest.h"
#include "frobsplit/sampling.hpp"
#include "frobsplit/splitting.hpp"

using namespace frobsplit;

namespace {

RingPtr plane(std::uint32_t p) { return make_ring(p, {"x", "y", "z"}); }

HypersurfacePtr cone(const FpPoly& f) { return std::make_shared<const HypersurfaceRing>(f); }

// Oracle: affine cone points over F_p divided by p - 1, evaluating term by term.
std::uint64_t projective_count(const FpPoly& f) {
    const auto p = f.p();
    std::uint64_t zeros = 0;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c) {
                if (!a && !b && !c) continue;
                std::uint64_t v = 0;
                std::uint32_t pt[3] = {a, b, c};
                for (const auto& t : f.terms()) {
                    std::uint64_t term = t.coeff;
                    for (int i = 0; i < 3; ++i)
                        for (std::uint32_t k = 0; k < t.mono[i]; ++k) term = term * pt[i] % p;
                    v += term;
                }
                if (v % p == 0) ++zeros;
            }
    return zeros / (p - 1);
}

FpPoly random_smooth_cubic(PolySampler& s) {
    while (true) {
        auto f = s.dense_homogeneous(3);
        if (!f.is_zero() && is_smooth_hypersurface(f)) return f;
    }
}

// Random invertible linear substitution.
std::vector<FpPoly> random_change(PolySampler& s) {
    const auto& r = s.ring();
    while (true) {
        std::vector<FpPoly> v;
        linalg::FpMatrix m(r->p(), 3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            FpPoly form(r);
            for (std::size_t j = 0; j < 3; ++j) {
                m.at(i, j) = s.coefficient();
                form += FpPoly::variable(r, j).scaled(m.at(i, j));
            }
            v.push_back(form);
        }
        if (linalg::rank(m) == 3) return v;
    }
}

const char* kOrdinary2 = "y^2*z + x*y*z + x^3 + z^3";
const char* kSupersingular2 = "y^2*z + y*z^2 + x^3";
const char* kOrdinary3 = "y^2*z - x^3 - x^2*z - z^3";
const char* kSupersingular3 = "y^2*z - x^3 + x*z^2";

}  // namespace

TEST_CASE("coefficient criterion examples") {
    CHECK(cy_coefficient_criterion(parse_poly(kSupersingular2, plane(2))) == 0);
    CHECK(cy_coefficient_criterion(parse_poly(kOrdinary2, plane(2))) == 1);
    auto fermat = parse_poly("x^3 + y^3 + z^3", plane(3));
    CHECK(cy_coefficient_criterion(fermat) == 0);
    const auto square = pow(fermat, 2);
    for (const auto& t : square.terms()) CHECK(t.mono.all_divisible_by(3));
    CHECK_THROWS_AS(cy_coefficient_criterion(parse_poly("x^2 + y^2 + z^2", plane(3))), InputError);
    CHECK_THROWS_AS(cy_coefficient_criterion(parse_poly("x^3 + y", plane(3))), InputError);
}

TEST_CASE("Fedder membership") {
    auto r = make_ring(2, {"x"});
    CHECK(fedder_membership(parse_poly("x", r)));
    CHECK_FALSE(fedder_membership(parse_poly("x^2", r)));
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PolySampler s(plane(p), 300 + p);
        for (int i = 0; i < 20; ++i) {
            auto f = s.dense_homogeneous(3);
            if (f.is_zero()) continue;
            CHECK(fedder_membership(f) == (cy_coefficient_criterion(f) != 0));
        }
    }
}

TEST_CASE("quadric sections") {
    auto q3 = quadric_sigma(2, 3);
    CHECK(q3.f == parse_poly("x0^2 + x1^2 + x2^2", q3.f.ring()));
    CHECK(pow(q3.f, 2).coefficient(Monomial{2, 2, 0}) == 2);
    CHECK(q3.coefficient_in_sigma == 2);
    CHECK(q3.central_binomial == 2u);
    CHECK(q3.f_power_divides_sigma);
    CHECK(q3.smooth);

    auto q2 = quadric_sigma(3, 2);
    CHECK(q2.f == parse_poly("x0*x1 + x2*x3", q2.f.ring()));
    CHECK(q2.sigma == parse_poly("(x0*x1 + x2*x3)*x0*x1", q2.f.ring()));
    CHECK(q2.coefficient_in_sigma == 1);
    CHECK(q2.coefficient_in_f_power == 0);

    CHECK(quadric_sigma(2, 5).central_binomial == 1u);
    CHECK(quadric_sigma(2, 2).f == parse_poly("x0^2 + x1*x2", quadric_sigma(2, 2).f.ring()));

    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::size_t n = 2; n <= 4; ++n) {
            auto rep = quadric_sigma(n, p);
            CHECK(rep.sigma_degree == (p - 1) * (n + 1));
            CHECK(rep.f_power_divides_sigma);
            CHECK(rep.coefficient_in_sigma != 0);
            CHECK(rep.smooth);
            if (p != 2) CHECK(rep.coefficient_in_sigma == *rep.central_binomial);
        }
    CHECK_THROWS_AS(quadric_sigma(1, 3), InputError);
}

TEST_CASE("extension fields") {
    for (auto [p, k] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{5u, 2u}, std::pair{7u, 1u}}) {
        ExtensionField F(p, k);
        CHECK(F.size() == static_cast<std::uint32_t>(std::pow(p, k)));
        std::mt19937_64 rng(p * 10 + k);
        for (int i = 0; i < 200; ++i) {
            std::uint32_t a = rng() % F.size(), b = rng() % F.size(), c = rng() % F.size();
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.pow(a, F.size()) == a);
            // Frobenius is additive.
            CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
        }
    }
}

TEST_CASE("singular points") {
    auto r = plane(3);
    CHECK(find_singular_point(parse_poly("y^2*z - x^3", r), 1));
    CHECK_FALSE(is_smooth_hypersurface(parse_poly("x*y*z", r)));
    CHECK(is_smooth_hypersurface(parse_poly(kSupersingular3, r)));
    // A line meeting a conic in two points conjugate over F_4.
    auto r2 = plane(2);
    auto pair = parse_poly("z*(x^2 + x*y + y^2 + z^2)", r2);
    CHECK_FALSE(find_singular_point(pair, 1));
    auto sp = find_singular_point(pair, 2);
    REQUIRE(sp);
    CHECK(sp->extension_degree == 2);
    CHECK_FALSE(is_smooth_hypersurface(pair));
    CHECK_THROWS_AS(count_points_elliptic(parse_poly("y^2*z - x^3", r)), InputError);
}

TEST_CASE("point counts") {
    auto e2 = parse_poly(kSupersingular2, plane(2));
    auto c = count_points_elliptic(e2);
    CHECK(c.points == 3);
    CHECK(c.a_p == 0);
    CHECK(c.supersingular);

    auto e3 = parse_poly("y^2*z - x^3 - x*z^2 - z^3", plane(3));
    auto c3 = count_points_elliptic(e3);
    CHECK(c3.points >= 1);
    CHECK(c3.points <= 7);
    CHECK(c3.points == projective_count(e3));

    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        PolySampler s(plane(p), 900 + p);
        auto f = random_smooth_cubic(s);
        auto base = count_points_elliptic(f).points;
        CHECK(base == projective_count(f));
        for (int i = 0; i < 20; ++i) {
            auto g = substitute(f, random_change(s));
            CHECK(count_points_elliptic(g).points == base);
        }
    }
}

TEST_CASE("Hasse invariant agrees with point counting") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PolySampler s(plane(p), 40 + p);
        for (int i = 0; i < 10; ++i) {
            auto f = random_smooth_cubic(s);
            CHECK((cy_coefficient_criterion(f) != 0) == !count_points_elliptic(f).supersingular);
        }
    }
}

TEST_CASE("search on a polynomial ring") {
    auto r = make_ring(2, {"x"});
    auto res = graded_splitting_search(cone(FpPoly(r)), 1, 1);
    REQUIRE(res.feasible);
    CHECK(res.required_degree == 0);
    CHECK(verify_witness(*res.witness).ok());
    CHECK(res.witness->apply(WittVector({parse_poly("x^2", r)})) == parse_poly("x", r));
    CHECK(res.witness->apply(WittVector({parse_poly("x", r)})).is_zero());
}

TEST_CASE("search on elliptic curves") {
    auto ord = cone(parse_poly(kOrdinary2, plane(2)));
    auto ss = cone(parse_poly(kSupersingular2, plane(2)));
    CHECK(graded_splitting_search(ord, 1, 3).feasible);
    CHECK_FALSE(graded_splitting_search(ss, 1, 3).feasible);
    auto two = graded_splitting_search(ss, 2, 3);
    REQUIRE(two.feasible);
    CHECK(verify_witness(*two.witness).ok());
    CHECK_THROWS_AS(graded_splitting_search(ss, 2, 2), BoundError);
    CHECK_THROWS_AS(graded_splitting_search(ss, 4, 3), InputError);
}

TEST_CASE("a corrupted witness fails verification") {
    auto ss = cone(parse_poly(kSupersingular2, plane(2)));
    auto res = graded_splitting_search(ss, 2, 3);
    REQUIRE(res.feasible);
    auto values = res.witness->values();
    values.insert_or_assign(BasisKey{0, Monomial{}}, FpPoly(ss->ambient()));
    SplittingCandidate broken(ss, 2, 3, values);
    auto check = verify_witness(broken, 10);
    CHECK_FALSE(check.retracts_section);
}

TEST_CASE("n = 1 search agrees with Fedder membership") {
    for (std::uint32_t p : {2u, 3u}) {
        PolySampler s(plane(p), 77 + p);
        for (int i = 0; i < 8; ++i) {
            auto f = random_smooth_cubic(s);
            CHECK(graded_splitting_search(cone(f), 1, 3).feasible == fedder_membership(f));
        }
    }
}

TEST_CASE("tau after the section is multiplication by tau([1])") {
    const std::pair<std::uint32_t, std::size_t> cases[] = {{2, 1}, {2, 2}, {3, 2}};
    for (auto [p, n] : cases) {
        auto ring = cone(parse_poly(p == 2 ? kSupersingular2 : kOrdinary3, plane(p)));
        auto sys = build_splitting_system(ring, n, 3);
        linalg::SparseEliminator el(p, sys.unknowns.size());
        for (const auto& row : sys.relations) el.add_row(row, 0);
        std::mt19937_64 rng(5 * p + n);
        PolySampler s(ring->ambient(), 11 * p + n);
        for (int i = 0; i < 100; ++i) {
            auto x = el.solve(&rng);
            REQUIRE(x);
            auto tau = candidate_from_vector(sys, *x);
            auto r = s.homogeneous(s.uniform(0, 2), 3);
            auto unit = tau.apply(WittVector::one(ring->ambient(), n));
            CHECK(tau.apply(section_s(r, n).representative) == ring->reduce(r * unit));
        }
    }
}

TEST_CASE("quasi-F-split heights") {
    struct Case {
        std::uint32_t p;
        const char* f;
        std::size_t height;
    };
    for (const auto& c : {Case{2, kOrdinary2, 1}, Case{2, kSupersingular2, 2}, Case{3, kOrdinary3, 1},
                          Case{3, kSupersingular3, 2}}) {
        auto f = parse_poly(c.f, plane(c.p));
        auto expect_ss = count_points_elliptic(f).supersingular;
        CHECK(expect_ss == (c.height == 2));
        auto rep = quasi_f_split_height(cone(f), 3, 3);
        REQUIRE(rep.height);
        CHECK(*rep.height == c.height);
        REQUIRE(rep.witness_check);
        CHECK(rep.witness_check->ok());
        CHECK(rep.monotone == true);
    }
    CHECK_THROWS_AS(quasi_f_split_height(cone(parse_poly("y^2*z - x^3", plane(3))), 2, 3), InputError);
}
