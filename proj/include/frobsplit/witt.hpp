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

#ifndef FROBSPLIT_WITT_HPP
#define FROBSPLIT_WITT_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "frobsplit/fpoly.hpp"
#include "frobsplit/zpoly.hpp"

namespace frobsplit {

inline constexpr std::size_t kMaxWittLength = 4;

/// Universal addition, multiplication and negation polynomials for W_n over
/// the integers. In `sum` and `product` variable 2j is X_j and 2j+1 is Y_j;
/// `negation` uses variable j for X_j.
struct StructuralPolys {
    std::uint32_t p;
    std::size_t n;
    std::vector<ZPoly> sum;
    std::vector<ZPoly> product;
    std::vector<ZPoly> negation;
};

/// Computed once per (p, n) from the ghost equations and cached.
const StructuralPolys& structural_polys(std::uint32_t p, std::size_t n);

/// Length-n Witt vector over F_p[x] or over a hypersurface quotient of it.
/// Over a quotient every component is kept in normal form.
class WittVector {
   public:
    WittVector(std::vector<FpPoly> components, HypersurfacePtr quotient = nullptr);

    static WittVector zero(RingPtr ring, std::size_t n, HypersurfacePtr quotient = nullptr);
    static WittVector one(RingPtr ring, std::size_t n, HypersurfacePtr quotient = nullptr);
    /// [r] = (r, 0, ..., 0).
    static WittVector teichmuller(const FpPoly& r, std::size_t n, HypersurfacePtr quotient = nullptr);

    std::size_t length() const { return comps_.size(); }
    std::uint32_t p() const { return comps_.front().p(); }
    const RingPtr& ring() const { return comps_.front().ring(); }
    const HypersurfacePtr& quotient() const { return quotient_; }
    bool over_quotient() const { return quotient_ && quotient_->is_quotient(); }

    const FpPoly& operator[](std::size_t i) const { return comps_[i]; }
    const std::vector<FpPoly>& components() const { return comps_; }
    bool is_zero() const;

    /// `(a_0; a_1; ...) @ p=.., n=..`
    std::string dump() const;

    /// Same ambient (ring and quotient) and same length.
    bool compatible(const WittVector& o) const;

    friend bool operator==(const WittVector& a, const WittVector& b);

   private:
    std::vector<FpPoly> comps_;
    HypersurfacePtr quotient_;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);
/// Sum of a non-empty family, added pairwise.
WittVector witt_sum(std::span<const WittVector> terms);

/// (0, a_0, ..., a_{n-1}); the length grows by one.
WittVector verschiebung(const WittVector& a);
/// (0, a_0, ..., a_{n-2}); the length is kept.
WittVector verschiebung_truncated(const WittVector& a);
/// (a_0^p, ..., a_{n-2}^p); the length drops by one.
WittVector frobenius_W(const WittVector& a);
/// (0, a_0^p, ..., a_{n-2}^p).
WittVector mul_by_p(const WittVector& a);
WittVector truncate(const WittVector& a, std::size_t m);

/// Element of W_n(R)/p.
struct WnModPClass {
    WittVector representative;
    bool canonical = false;
};

/// Clears the part of each component a_1, ..., a_{n-1} whose monomials are
/// all p-th powers. Polynomial ambient only.
WnModPClass canonical_form(const WnModPClass& a);
bool class_equal(const WnModPClass& a, const WnModPClass& b);

/// Component a_0.
FpPoly restriction_r(const WnModPClass& a);
/// Class of [r^p].
WnModPClass section_s(const FpPoly& r, std::size_t n, HypersurfacePtr quotient = nullptr);

/// r acting through the section: r * w = [r^p] w.
WittVector module_action(const FpPoly& r, const WittVector& w);

/// Non-negative rational degree num/den, kept reduced.
struct Grade {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Grade make(std::uint64_t num, std::uint64_t den);
    bool is_integral() const { return den == 1; }
    std::string to_string() const;
    friend bool operator==(const Grade&, const Grade&) = default;
    friend std::strong_ordering operator<=>(const Grade& a, const Grade& b);
};

/// Entry V^level([x^exponent]) of the module basis.
struct BasisKey {
    std::size_t level = 0;
    Monomial exponent;

    friend bool operator==(const BasisKey&, const BasisKey&) = default;
    friend bool operator<(const BasisKey& a, const BasisKey& b);
};

using BasisCoefficients = std::map<BasisKey, FpPoly>;

/// Basis of W_n(R)/p as an R-module for R = F_p[x_1..x_d]: V^0([x^e]) with
/// e in {0..p-1}^d and V^i([x^e]) with e in {0..p^{i+1}-1}^d not all
/// divisible by p. Entries are produced on demand.
class WnModPModuleBasis {
   public:
    WnModPModuleBasis(RingPtr ring, std::size_t n);

    const RingPtr& ring() const { return ring_; }
    std::size_t length() const { return n_; }
    std::size_t dimension() const { return ring_->nvars(); }
    /// p^{nd}.
    std::uint64_t cardinality() const;

    bool contains(const BasisKey& k) const;
    Grade grade(const BasisKey& k) const;
    WittVector element(const BasisKey& k) const;

    /// All entries; BoundError when there are more than `limit`.
    std::vector<BasisKey> entries(std::uint64_t limit = 1u << 20) const;
    /// Entries of the given degree.
    std::vector<BasisKey> entries_of_grade(Grade g) const;

   private:
    RingPtr ring_;
    std::size_t n_;
};

/// Coefficients c_k in R with a = sum_k c_k * b_k in W_n(R)/p.
BasisCoefficients express_in_basis(const WnModPClass& a, const WnModPModuleBasis& basis);
WnModPClass recompose(const BasisCoefficients& coeffs, const WnModPModuleBasis& basis);

/// Integer lift of a Witt vector (components with coefficients in [0, p)),
/// used to check identities through ghost components.
class GhostLift {
   public:
    explicit GhostLift(const WittVector& a);
    explicit GhostLift(std::vector<ZPoly> components, std::uint32_t p);

    const std::vector<ZPoly>& components() const { return comps_; }
    /// w_k = sum_{j<=k} p^j X_j^{p^{k-j}}, exact.
    ZPoly ghost(std::size_t k) const;
    std::vector<ZPoly> ghost_vector() const;

    /// The Witt vector whose ghost components are (w_1, w_2, ...), computed
    /// over the integers; length drops by one.
    GhostLift frobenius() const;

    /// Reduction of the components mod p.
    WittVector reduce(const RingPtr& ring) const;

   private:
    std::vector<ZPoly> comps_;
    std::uint32_t p_;
};

/// w_k(lhs) == w_k(rhs) mod p^{k+1} for every k.
bool ghost_congruent(const std::vector<ZPoly>& lhs, const std::vector<ZPoly>& rhs, std::uint32_t p);

/// Checks the result of an operation against ghost components of the inputs.
bool ghost_confirms_sum(const WittVector& a, const WittVector& b, const WittVector& result);
bool ghost_confirms_product(const WittVector& a, const WittVector& b, const WittVector& result);
bool ghost_confirms_negation(const WittVector& a, const WittVector& result);

}  // namespace frobsplit

#endif
