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

#ifndef FROBSPLIT_SPLITTING_HPP
#define FROBSPLIT_SPLITTING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frobsplit/fpoly.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/witt.hpp"

namespace frobsplit {

// ---------------------------------------------------------------------------
// Coefficient criteria

/// Coefficient of (x_0...x_n)^{p-1} in f^{p-1}; f homogeneous with degree
/// equal to the number of variables.
std::uint32_t cy_coefficient_criterion(const FpPoly& f);

/// Some monomial of f^{p-1} has every exponent at most p-1.
bool fedder_membership(const FpPoly& f);

struct QuadricReport {
    std::uint32_t p = 0;
    std::size_t n = 0;
    FpPoly f;
    FpPoly sigma;
    std::uint64_t sigma_degree = 0;
    bool f_power_divides_sigma = false;
    /// Coefficient of (x_0...x_n)^{p-1} in sigma.
    std::uint32_t coefficient_in_sigma = 0;
    /// Coefficient of the same monomial in f^{p-1}.
    std::uint32_t coefficient_in_f_power = 0;
    /// binom(p-1, (p-1)/2) mod p for odd p.
    std::optional<std::uint32_t> central_binomial;
    bool smooth = false;
};

/// Standard smooth quadric in x_0..x_n together with its splitting section.
QuadricReport quadric_sigma(std::size_t n, std::uint32_t p);

// ---------------------------------------------------------------------------
// Points and singularities

/// GF(p^k) for small p^k, elements encoded as base-p digit strings.
class ExtensionField {
   public:
    ExtensionField(std::uint32_t p, unsigned k);

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint32_t size() const { return q_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    /// Value of f at a point with coordinates in this field.
    std::uint32_t evaluate(const FpPoly& f, std::span<const std::uint32_t> point) const;

   private:
    std::uint32_t p_;
    unsigned k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

struct SingularPoint {
    unsigned extension_degree = 1;
    std::vector<std::uint32_t> coords;
};

/// Projective point over GF(p^k), k <= max_extension, where f and all its
/// partial derivatives vanish. BoundError if the search space is too large.
std::optional<SingularPoint> find_singular_point(const FpPoly& f, unsigned max_extension);

/// Jacobian check with an extension bound that is complete for quadrics
/// (singular loci are rational linear spaces) and plane cubics (singular
/// points live over fields of degree at most 3).
bool is_smooth_hypersurface(const FpPoly& f);

struct EllipticPointCount {
    std::uint64_t points = 0;
    std::int64_t a_p = 0;
    bool supersingular = false;
};

/// Projective F_p-points of a smooth plane cubic; InputError if f is not a
/// smooth ternary cubic.
EllipticPointCount count_points_elliptic(const FpPoly& f);

// ---------------------------------------------------------------------------
// Graded search for splittings of O -> F_* W_n(O)/p

/// Linear system whose solutions are the degree-0 module maps
/// tau: F_* W_n(S)/p -> S with S = R/(f). Columns are the coordinates of
/// tau(b) on the standard monomials of S, for basis entries b of integral
/// degree; rows come from the relations V^i([f x^e]).
struct SplittingSystem {
    struct Unknown {
        BasisKey key;
        Monomial mono;
    };

    HypersurfacePtr ring;
    std::size_t n = 1;
    std::uint64_t degree_bound = 0;
    /// Largest degree of a relation generator of integral degree.
    std::uint64_t required_degree = 0;
    WnModPModuleBasis basis;
    std::vector<Unknown> unknowns;
    /// Homogeneous equations on the unknowns (right-hand side zero).
    std::vector<linalg::SparseEliminator::Row> relations;
    std::size_t relation_generators = 0;
    /// Column of the constant term of tau([1]).
    std::size_t unit_column = 0;
};

/// BoundError when `degree_bound` is below the largest generator degree.
SplittingSystem build_splitting_system(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound);

class SplittingCandidate {
   public:
    SplittingCandidate(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound,
                       std::map<BasisKey, FpPoly> values);

    const HypersurfacePtr& ring() const { return ring_; }
    std::size_t length() const { return n_; }
    std::uint64_t degree_bound() const { return degree_bound_; }
    const WnModPModuleBasis& basis() const { return basis_; }
    /// Nonzero values tau(b) on basis entries.
    const std::map<BasisKey, FpPoly>& values() const { return values_; }

    /// tau of a Witt vector with components read as polynomials; the result
    /// is in normal form modulo f.
    FpPoly apply(const WittVector& w) const;

   private:
    HypersurfacePtr ring_;
    std::size_t n_;
    std::uint64_t degree_bound_;
    WnModPModuleBasis basis_;
    std::map<BasisKey, FpPoly> values_;
};

SplittingCandidate candidate_from_vector(const SplittingSystem& sys, std::span<const std::uint32_t> x);

struct SearchResult {
    bool feasible = false;
    std::optional<SplittingCandidate> witness;
    std::size_t n = 1;
    std::uint64_t degree_bound = 0;
    std::uint64_t required_degree = 0;
    std::size_t unknowns = 0;
    std::size_t constraints = 0;
};

SearchResult graded_splitting_search(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound);

struct WitnessCheck {
    bool kills_relations = false;
    bool linear = false;
    bool retracts_section = false;
    bool kills_ideal = false;
    std::size_t checks = 0;
    bool ok() const { return kills_relations && linear && retracts_section && kills_ideal; }
};

/// Post-hoc check of a witness by direct Witt computation: tau vanishes on
/// every multiple r * V^i([f x^e]) up to the degree bound, tau(r * b) =
/// r tau(b) for random r, tau(s(r)) = r, and tau kills random elements of
/// W_n(fR).
WitnessCheck verify_witness(const SplittingCandidate& tau, std::size_t random_samples = 50,
                            std::uint64_t seed = 20240607);

struct HeightReport {
    /// Least n with a verified witness, if one exists up to n_max.
    std::optional<std::size_t> height;
    std::size_t n_max = 0;
    std::uint64_t degree_bound = 0;
    std::optional<SplittingCandidate> witness;
    std::optional<WitnessCheck> witness_check;
    std::vector<SearchResult> searches;
    /// Search at height + 1 was also feasible (only checked when
    /// height + 1 <= kMaxSearchLength).
    std::optional<bool> monotone;
};

inline constexpr std::size_t kMaxSearchLength = 3;

/// Least n <= n_max admitting a graded splitting of O -> F_* W_n(O)/p.
/// Singular equations are rejected with InputError.
HeightReport quasi_f_split_height(HypersurfacePtr ring, std::size_t n_max, std::uint64_t degree_bound,
                                  bool check_monotone = true);

}  // namespace frobsplit

#endif
