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

#ifndef FROBSPLIT_FPOLY_HPP
#define FROBSPLIT_FPOLY_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frobsplit/errors.hpp"

namespace frobsplit {

inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::uint32_t kMaxPrime = 13;

/// Arithmetic in F_p for a supported prime 2 <= p <= 13.
class PrimeField {
   public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t a) const {
        auto r = a % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p_; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

   private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

/// Exponent vector; unused trailing slots stay zero.
class Monomial {
   public:
    using Exponents = std::array<std::uint32_t, kMaxVars>;

    Monomial() = default;
    explicit Monomial(const Exponents& e) : exps_(e) {}
    Monomial(std::initializer_list<std::uint32_t> e);

    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    const Exponents& exponents() const { return exps_; }

    std::uint64_t degree() const;
    bool is_one() const { return degree() == 0; }
    bool divides(const Monomial& other) const;
    bool all_divisible_by(std::uint64_t q) const;

    Monomial operator*(const Monomial& other) const;
    /// Precondition: `other.divides(*this)`.
    Monomial operator/(const Monomial& other) const;
    Monomial scaled(std::uint64_t k) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::size_t hash() const;

   private:
    Exponents exps_{};
};

/// Graded lexicographic comparison with x_0 > x_1 > ... .
std::strong_ordering grlex(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Strict weak order for ordered containers; smaller in grlex comes first.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex(a, b) < 0; }
};

/// Ambient polynomial ring F_p[vars].
class PolyRing {
   public:
    PolyRing(std::uint32_t p, std::vector<std::string> vars);

    const PrimeField& field() const { return field_; }
    std::uint32_t p() const { return field_.p(); }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const PolyRing& a, const PolyRing& b) {
        return a.field_ == b.field_ && a.vars_ == b.vars_;
    }

   private:
    PrimeField field_;
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::uint32_t p, std::vector<std::string> vars);

/// Sparse polynomial over F_p. Terms are kept sorted by descending grlex
/// order with no zero coefficients, so equality is syntactic.
class FpPoly {
   public:
    struct Term {
        Monomial mono;
        std::uint32_t coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit FpPoly(RingPtr ring);
    FpPoly(RingPtr ring, std::vector<Term> terms);

    static FpPoly constant(RingPtr ring, std::int64_t c);
    static FpPoly variable(RingPtr ring, std::size_t i);
    static FpPoly monomial(RingPtr ring, const Monomial& m, std::uint32_t c = 1);

    const RingPtr& ring() const { return ring_; }
    std::uint32_t p() const { return ring_->p(); }
    std::size_t nvars() const { return ring_->nvars(); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::span<const Term> terms() const& { return terms_; }
    // A span into a temporary would dangle.
    std::span<const Term> terms() const&& = delete;
    const Term& leading_term() const { return terms_.front(); }

    /// Total degree; -1 for the zero polynomial.
    std::int64_t degree() const;
    bool is_homogeneous() const;
    std::uint32_t coefficient(const Monomial& m) const;
    /// The part of total degree `deg`.
    FpPoly homogeneous_part(std::uint64_t deg) const;

    FpPoly& operator+=(const FpPoly& o);
    FpPoly& operator-=(const FpPoly& o);
    FpPoly& operator*=(const FpPoly& o);
    FpPoly operator-() const;
    FpPoly scaled(std::uint32_t c) const;
    FpPoly times_monomial(const Monomial& m, std::uint32_t c = 1) const;

    friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
    friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b);

    std::string to_string() const;

   private:
    void check_same_ring(const FpPoly& o) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// OpenMP product kernel (falls back to the serial kernel on small inputs).
FpPoly mul_parallel(const FpPoly& a, const FpPoly& b);
/// Reference product kernel, single-threaded.
FpPoly mul_serial(const FpPoly& a, const FpPoly& b);

/// Binary exponentiation in base p: f^e = prod_i F^i(f^{e_i}).
FpPoly pow(const FpPoly& f, std::uint64_t e);

/// f^p, computed by scaling every exponent by p.
FpPoly frobenius(const FpPoly& f);

/// g with g^p = f when every exponent of f is divisible by p.
std::optional<FpPoly> pth_root(const FpPoly& f);

/// Unique family {g_e} with f = sum_e g_e^q x^e, e in {0,...,q-1}^d, where q
/// is a power of p (q = p gives the p-basis of F_*R).
std::map<Monomial, FpPoly, GrlexLess> p_basis_decompose(const FpPoly& f, std::uint64_t q);
std::map<Monomial, FpPoly, GrlexLess> p_basis_decompose(const FpPoly& f);
FpPoly p_basis_recompose(const RingPtr& ring, const std::map<Monomial, FpPoly, GrlexLess>& parts,
                         std::uint64_t q);

FpPoly derivative(const FpPoly& f, std::size_t var);

/// Substitute values[i] (all in one target ring) for variable i of f.
FpPoly substitute(const FpPoly& f, std::span<const FpPoly> values);

/// Exact quotient g / h, or nullopt if h does not divide g.
std::optional<FpPoly> divide_exact(const FpPoly& g, const FpPoly& h);

/// Every monomial in `nvars` variables of total degree `deg`, descending grlex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t deg);

/// Polynomial text grammar: identifiers, integers (reduced mod p), `+`, `-`,
/// optional `*`, `^` with non-negative integer exponents, parentheses.
FpPoly parse_poly(std::string_view text, const RingPtr& ring);

/// Identifiers appearing in a polynomial string, sorted and deduplicated.
std::vector<std::string> collect_variables(std::string_view text);

/// k[x_1..x_d]/(f) with f fixed; f = 0 means no quotient. Representatives are
/// normal forms under single-polynomial division by f in grlex order.
class HypersurfaceRing {
   public:
    explicit HypersurfaceRing(FpPoly f);
    HypersurfaceRing(RingPtr ambient, FpPoly f);

    const RingPtr& ambient() const { return ambient_; }
    const FpPoly& equation() const { return f_; }
    std::uint32_t p() const { return ambient_->p(); }
    bool is_quotient() const { return !f_.is_zero(); }
    bool is_graded() const { return f_.is_homogeneous(); }

    FpPoly reduce(const FpPoly& g) const;
    /// Monomials of degree `deg` not divisible by the leading monomial of f.
    std::vector<Monomial> standard_monomials(std::uint64_t deg) const;
    /// h with h^p = g in the quotient, decided by linear algebra over F_p on
    /// normal forms of p-th powers of monomials of bounded degree.
    std::optional<FpPoly> pth_root(const FpPoly& g) const;

   private:
    RingPtr ambient_;
    FpPoly f_;
};

using HypersurfacePtr = std::shared_ptr<const HypersurfaceRing>;

FpPoly reduce_mod_f(const FpPoly& g, const HypersurfaceRing& ring);

}  // namespace frobsplit

#endif
