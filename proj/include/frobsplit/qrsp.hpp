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

#ifndef FROBSPLIT_QRSP_HPP
#define FROBSPLIT_QRSP_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobsplit/errors.hpp"
#include "frobsplit/fpoly.hpp"

namespace frobsplit {

inline constexpr std::size_t kMaxPerfectVars = 4;
inline constexpr std::size_t kMaxRegularGenerators = 2;
inline constexpr unsigned kMaxPrecision = 6;
inline constexpr std::size_t kDefaultLevelCap = 3;

/// x^alpha with alpha in (1/p^m) N^d, stored as numerators over p^m.
class FractionalMonomial {
   public:
    using Numerators = std::array<std::uint32_t, kMaxPerfectVars>;

    FractionalMonomial() = default;
    explicit FractionalMonomial(const Numerators& n) : num_(n) {}

    std::uint32_t operator[](std::size_t j) const { return num_[j]; }
    std::uint32_t& operator[](std::size_t j) { return num_[j]; }
    const Numerators& numerators() const { return num_; }

    FractionalMonomial operator*(const FractionalMonomial& o) const;
    FractionalMonomial pow(std::uint64_t e) const;

    friend auto operator<=>(const FractionalMonomial&, const FractionalMonomial&) = default;

   private:
    Numerators num_{};
};

/// P = perfection of F_p[x_1..x_d] at precision m, with the ideal I generated
/// by the coordinate variables listed in `generators` (a regular sequence).
class PerfectPresentation {
   public:
    PerfectPresentation(std::uint32_t p, unsigned precision, std::vector<std::string> vars,
                        std::vector<std::size_t> generators, std::size_t level_cap = kDefaultLevelCap);

    std::uint32_t p() const { return field_.p(); }
    const PrimeField& field() const { return field_; }
    unsigned precision() const { return precision_; }
    /// p^m.
    std::uint32_t denominator() const { return den_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::size_t>& generators() const { return gens_; }
    std::size_t codimension() const { return gens_.size(); }
    std::size_t level_cap() const { return level_cap_; }

    friend bool operator==(const PerfectPresentation& a, const PerfectPresentation& b) {
        return a.field_ == b.field_ && a.precision_ == b.precision_ && a.vars_ == b.vars_ && a.gens_ == b.gens_ &&
               a.level_cap_ == b.level_cap_;
    }

   private:
    PrimeField field_;
    unsigned precision_;
    std::uint32_t den_;
    std::vector<std::string> vars_;
    std::vector<std::size_t> gens_;
    std::size_t level_cap_;
};

using PresentationPtr = std::shared_ptr<const PerfectPresentation>;

PresentationPtr make_presentation(std::uint32_t p, unsigned precision, std::vector<std::string> vars,
                                  std::vector<std::size_t> generators, std::size_t level_cap = kDefaultLevelCap);

/// Element of P.
class PerfPoly {
   public:
    using Terms = std::map<FractionalMonomial, std::uint32_t>;

    explicit PerfPoly(PresentationPtr pres);

    static PerfPoly constant(PresentationPtr pres, std::int64_t c);
    /// x_j^{numerator / p^m}.
    static PerfPoly variable(PresentationPtr pres, std::size_t j, std::uint32_t numerator);
    static PerfPoly monomial(PresentationPtr pres, const FractionalMonomial& m, std::uint32_t c = 1);
    /// The k-th generator f_k of I.
    static PerfPoly generator(PresentationPtr pres, std::size_t k);

    const PresentationPtr& presentation() const { return pres_; }
    const Terms& terms() const& { return terms_; }
    const Terms& terms() const&& = delete;
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of the monomial 1.
    std::uint32_t constant_term() const;
    bool is_constant() const;

    PerfPoly& operator+=(const PerfPoly& o);
    PerfPoly& operator-=(const PerfPoly& o);
    PerfPoly operator-() const;
    PerfPoly scaled(std::uint32_t c) const;
    friend PerfPoly operator+(PerfPoly a, const PerfPoly& b) { return a += b; }
    friend PerfPoly operator-(PerfPoly a, const PerfPoly& b) { return a -= b; }
    friend PerfPoly operator*(const PerfPoly& a, const PerfPoly& b);
    friend bool operator==(const PerfPoly& a, const PerfPoly& b);

    PerfPoly pow(std::uint64_t e) const;
    /// Exponents times p.
    PerfPoly frobenius() const;
    /// Exponents divided by p; BoundError when that needs more precision.
    PerfPoly frobenius_inverse() const;

    /// Every monomial lies in I^k (k = 1: in I).
    bool in_ideal_power(std::size_t k) const;
    /// Normal form modulo (f_1^p, ..., f_c^p).
    PerfPoly mod_generator_powers() const;
    /// Normal form modulo I.
    PerfPoly mod_ideal() const;

    std::string to_string() const;

   private:
    void add_term(const FractionalMonomial& m, std::uint32_t c);

    PresentationPtr pres_;
    Terms terms_;
};

/// Exponents l_j of prod_j f_j^{[l_j]}.
using PDIndex = std::array<std::uint32_t, kMaxRegularGenerators>;

/// Element of the divided power envelope D_I(P). Stored in the canonical form
/// sum_k c_k prod_j f_j^{[p k_j]} with c_k reduced modulo (f_1^p, ..., f_c^p);
/// the level of a term is |k|.
class PDElement {
   public:
    explicit PDElement(PresentationPtr pres);

    static PDElement from_coefficient(const PerfPoly& c);
    /// prod_j f_j^{[l_j]}; BoundError above the level cap.
    static PDElement monomial(PresentationPtr pres, const PDIndex& l);

    const PresentationPtr& presentation() const { return pres_; }
    const std::map<PDIndex, PerfPoly>& terms() const& { return terms_; }
    const std::map<PDIndex, PerfPoly>& terms() const&& = delete;
    bool is_zero() const { return terms_.empty(); }
    /// Largest |k| among the terms; 0 for the zero element.
    std::size_t level() const;
    /// Terms of level exactly n.
    PDElement graded_part(std::size_t n) const;

    PDElement& operator+=(const PDElement& o);
    PDElement& operator-=(const PDElement& o);
    PDElement operator-() const;
    PDElement scaled(std::uint32_t c) const;
    PDElement times(const PerfPoly& c) const;
    friend PDElement operator+(PDElement a, const PDElement& b) { return a += b; }
    friend PDElement operator-(PDElement a, const PDElement& b) { return a -= b; }
    friend bool operator==(const PDElement& a, const PDElement& b);

    std::string to_string() const;

   private:
    void add_term(const PDIndex& k, const PerfPoly& c);

    PresentationPtr pres_;
    std::map<PDIndex, PerfPoly> terms_;
};

/// binom(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// f^{[a]} f^{[b]} = binom(a + b, a) f^{[a+b]}, extended bilinearly.
/// BoundError when the product passes the level cap.
PDElement pd_mul(const PDElement& a, const PDElement& b);

/// u^{[l]} for u in I, from t^{[l]} = w^l f_j^{[l]} on each term t = w f_j and
/// (a + b)^{[l]} = sum_i a^{[l-i]} b^{[i]}. InputError if u is not in I.
PDElement divided_power(const PerfPoly& u, std::uint64_t l);

/// Class in D / (I D) = phi_R^* D: coefficients reduced modulo I.
PDElement frobenius_pullback_quotient(const PDElement& u);

/// PD monomials prod_j f_j^{[l_j]} with sum l_j < (n+1) p; they span Fil_n
/// over P. BoundError when n passes the level cap.
std::vector<PDIndex> conj_filtration_basis(const PresentationPtr& pres, std::size_t n);

/// Element of the free divided power algebra on I/I^2 (basis: classes of the
/// generators), or of its base change along phi_R. Coefficients are in R = P/I.
class GammaElement {
   public:
    explicit GammaElement(PresentationPtr pres);

    static GammaElement monomial(PresentationPtr pres, const PDIndex& l);

    const PresentationPtr& presentation() const { return pres_; }
    const std::map<PDIndex, PerfPoly>& terms() const& { return terms_; }
    const std::map<PDIndex, PerfPoly>& terms() const&& = delete;
    bool is_zero() const { return terms_.empty(); }
    /// Weight if all terms share one.
    std::optional<std::size_t> weight() const;

    GammaElement& operator+=(const GammaElement& o);
    GammaElement times(const PerfPoly& c) const;
    friend bool operator==(const GammaElement& a, const GammaElement& b);

    std::string to_string() const;

   private:
    PresentationPtr pres_;
    std::map<PDIndex, PerfPoly> terms_;
};

GammaElement gamma_mul(const GammaElement& a, const GammaElement& b);

/// r a^{[l]} -> (-1)^{|l|} r~^p prod_j a~_j^{[p l_j]}, taken in gr_n of the
/// conjugate filtration. `lifts` replace the generators as lifts of their
/// classes (each must differ from its generator by an element of I^2).
PDElement graded_piece_map(const GammaElement& g, std::span<const PerfPoly> lifts = {});

/// a^{[l]} (x) r -> (-1)^{|l|} r~ prod_j a~_j^{[p l_j]} modulo I D.
PDElement splitting_s(const GammaElement& g, std::span<const PerfPoly> lifts = {});

struct LevelReport {
    std::size_t n = 0;
    /// Rank of phi^* Gamma^n (I/I^2).
    std::size_t gamma_rank = 0;
    /// Rank of gr_n of phi^* Fil, from the PD monomials of Fil_n.
    std::size_t graded_rank = 0;
    bool filtered = true;
    bool matches_graded = true;
    std::size_t image_rank = 0;
    bool bijective() const { return gamma_rank == graded_rank && image_rank == gamma_rank; }
};

struct FilteredIsoReport {
    std::uint32_t p = 0;
    std::size_t nvars = 0;
    std::size_t codimension = 0;
    std::size_t n_max = 0;
    std::vector<LevelReport> levels;
    std::size_t multiplicative_samples = 0;
    bool multiplicative = true;
    std::size_t perturbations = 0;
    bool lift_independent = true;
    bool ok() const;
};

FilteredIsoReport verify_filtered_iso(const PresentationPtr& pres, std::size_t n_max, std::size_t perturbations = 20,
                                      std::uint64_t seed = 20240607);

struct SignIdentityRow {
    std::uint32_t p = 0;
    unsigned k = 0;
    /// (pk)! / (p^k k!) mod p.
    std::uint32_t value = 0;
    /// (-1)^k mod p.
    std::uint32_t expected = 0;
};

struct SignIdentityReport {
    unsigned k_max = 0;
    std::vector<SignIdentityRow> rows;
    std::size_t failures = 0;
    bool ok() const { return failures == 0 && !rows.empty(); }
};

/// Exact integer check for p in {2, 3, 5, 7} and 1 <= k <= k_max <= 30.
SignIdentityReport sign_identity_check(unsigned k_max);

}  // namespace frobsplit

#endif
