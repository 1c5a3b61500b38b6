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

#ifndef FROBSPLIT_DERHAM_HPP
#define FROBSPLIT_DERHAM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/fpoly.hpp"
#include "frobsplit/splitting.hpp"
#include "frobsplit/witt.hpp"

namespace frobsplit {

// Forms on a polynomial chart F_p[x_0..x_{d-1}]. A subset T of the variables
// is a bitmask; dx_T is dx_{t_1} ^ ... ^ dx_{t_i} with t_1 < ... < t_i.
//
// Grading: x^a dx_T has multidegree a + 1_T and total degree |a| + |T|. The
// differential preserves the multidegree, so every cohomology computation
// below splits into small blocks, one per multidegree.

using Multidegree = Monomial;

class DifferentialForm {
   public:
    DifferentialForm(RingPtr ring, unsigned degree);

    /// a as a 0-form.
    static DifferentialForm function(const FpPoly& a);
    /// a dx_T.
    static DifferentialForm basic(const FpPoly& a, std::uint32_t mask);
    static DifferentialForm dx(const RingPtr& ring, std::size_t j);

    const RingPtr& ring() const { return ring_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint32_t, FpPoly>& terms() const& { return terms_; }
    const std::map<std::uint32_t, FpPoly>& terms() const&& = delete;
    FpPoly coefficient(std::uint32_t mask) const;
    /// Largest total degree of a term; -1 for the zero form.
    std::int64_t total_degree() const;

    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator-=(const DifferentialForm& o);
    DifferentialForm operator-() const;
    DifferentialForm scaled(std::uint32_t c) const;

    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
    friend DifferentialForm operator*(const FpPoly& a, const DifferentialForm& w);
    friend bool operator==(const DifferentialForm&, const DifferentialForm&);

    /// Coefficients grouped by multidegree: M -> (T -> coefficient of x^{M-1_T} dx_T).
    std::map<Multidegree, std::map<std::uint32_t, std::uint32_t>, GrlexLess> by_multidegree() const;

    std::string to_string() const;

   private:
    void check_compatible(const DifferentialForm& o) const;
    void add_term(std::uint32_t mask, const FpPoly& a);

    RingPtr ring_;
    unsigned degree_;
    std::map<std::uint32_t, FpPoly> terms_;
};

DifferentialForm d(const DifferentialForm& w);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

bool is_closed(const DifferentialForm& w);
/// w = d(xi) for some xi; decided block by block.
bool is_exact(const DifferentialForm& w);

/// Monomial forms x^a dx_T of degree i with |a| + |T| = total.
std::vector<DifferentialForm> monomial_forms(const RingPtr& ring, unsigned i, std::uint64_t total);

/// a dx_T -> a^p prod_{j in T} x_j^{p-1} dx_T, extended additively.
DifferentialForm cartier_inverse(const DifferentialForm& eta);

/// Inverse of cartier_inverse on cohomology: writes each block of w as a
/// combination of cohomology basis classes plus an exact form and returns
/// the coefficients. InputError if w is not closed.
DifferentialForm cartier(const DifferentialForm& w);

/// Classes x^{pa} prod_{j in T} x_j^{p-1} dx_j spanning H^i(F_* Omega) in a
/// multidegree; the span is empty unless every entry of M is divisible by p.
class GradedCohomologyBasis {
   public:
    explicit GradedCohomologyBasis(RingPtr ring);

    const RingPtr& ring() const { return ring_; }

    std::vector<DifferentialForm> classes(unsigned i, const Multidegree& m) const;
    /// dim ker d - dim im d in the block, from ranks of the differential.
    std::size_t cohomology_dimension(unsigned i, const Multidegree& m) const;
    /// Classes are closed, independent modulo exact forms, and as many as
    /// the cohomology dimension.
    bool verify(unsigned i, const Multidegree& m) const;

   private:
    RingPtr ring_;
};

/// F~(x_j) = x_j^p + p g~_j; only the reductions g_j matter.
struct FrobeniusLift {
    RingPtr ring;
    std::vector<FpPoly> corrections;

    static FrobeniusLift canonical(const RingPtr& ring);
    /// zeta(dx_j) = x_j^{p-1} dx_j + d(g_j).
    DifferentialForm zeta(std::size_t j) const;
};

/// a dx_{j_1} ^ ... ^ dx_{j_i} -> a^p zeta(dx_{j_1}) ^ ... ^ zeta(dx_{j_i}).
DifferentialForm lift_zeta(const FrobeniusLift& lift, const DifferentialForm& eta);

/// Some u of degree i, built from monomial forms of total degree at most
/// `source_cap`, with w - lift_zeta(u) exact; nullopt if none exists.
std::optional<DifferentialForm> lift_preimage(const FrobeniusLift& lift, const DifferentialForm& w,
                                              std::uint64_t source_cap);

struct BidegreeReport {
    unsigned i = 0;
    /// Total degree of the target forms.
    std::uint64_t t = 0;
    std::size_t source_dim = 0;
    std::size_t cohomology_dim = 0;
    std::size_t image_rank = 0;
    bool cocycles = true;
    bool induces_cartier = true;
    bool bijective() const { return source_dim == cohomology_dim && image_rank == source_dim; }
};

struct TotalSplittingReport {
    std::uint32_t p = 0;
    std::size_t nvars = 0;
    std::uint64_t degree_cap = 0;
    std::vector<BidegreeReport> bidegrees;
    bool basis_verified = true;
    bool ok() const;
};

/// Checks that sum_i Lambda^i zeta is a quasi-isomorphism onto F_* Omega in
/// every bidegree with target total degree <= degree_cap.
TotalSplittingReport verify_total_splitting(const FrobeniusLift& lift, std::uint64_t degree_cap);

struct CompositeDegree {
    unsigned i = 0;
    std::size_t classes = 0;
    /// Outputs equal to the Cartier image of the input class.
    std::size_t matches = 0;
    std::size_t zeros = 0;
};

struct CompositeReport {
    std::uint64_t degree_cap = 0;
    std::uint32_t unit_value = 0;
    std::vector<CompositeDegree> degrees;
    bool induces_cartier() const;
    bool induces_cartier_in(unsigned i) const;
};

/// F_*Omega -> F_*O (x) F_*Omega -> F_*O (x) (+) Omega^i[-i] -> (+) Omega^i[-i]:
/// extend scalars along F, invert the scalar extension of lift_zeta on
/// cohomology, contract with tau (x) id. Applied to randomised
/// representatives of every cohomology class up to the cap.
/// InputError if tau does not pass verify_witness.
CompositeReport fsplit_composite(const SplittingCandidate& tau, const FrobeniusLift& lift,
                                 std::uint64_t degree_cap, std::uint64_t seed = 20240607);
/// The same composite without checking tau (negative controls).
CompositeReport composite_on_cohomology(const SplittingCandidate& tau, const FrobeniusLift& lift,
                                        std::uint64_t degree_cap, std::uint64_t seed = 20240607);
/// tau with the value on [1] removed, so tau(1) = 0.
SplittingCandidate drop_unit(const SplittingCandidate& tau);

struct BaseChangeRow {
    unsigned i = 0;
    /// Degree p * grade(b) + total degree, in units of the grading of R.
    Grade degree;
    std::size_t complex_rank = 0;
    std::size_t forms_rank = 0;
    std::size_t image_rank = 0;
};

struct BaseChangeReport {
    std::uint32_t p = 0;
    std::size_t n = 0;
    std::size_t nvars = 0;
    std::uint64_t degree_cap = 0;
    std::uint64_t basis_cardinality = 0;
    std::vector<BaseChangeRow> rows;
    std::size_t linearity_samples = 0;
    bool module_linear = true;
    bool ok() const;
};

/// Ranks of H^i(F_* W_n(R)/p (x) F_* Omega) against F_* W_n(R)/p (x) Omega^i,
/// degree by degree, plus the image of the scalar extension of lift_zeta
/// (canonical lift) and its linearity over W_n(R)/p.
BaseChangeReport witt_basechange_check(const RingPtr& ring, std::size_t n, std::uint64_t degree_cap,
                                       std::uint64_t seed = 20240607);

}  // namespace frobsplit

#endif
