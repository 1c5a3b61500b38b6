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

#include "frobsplit/qrsp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "frobsplit/linalg.hpp"

namespace frobsplit {

namespace {

std::uint32_t checked_add(std::uint64_t a, std::uint64_t b) {
    const auto s = a + b;
    if (s > std::numeric_limits<std::uint32_t>::max()) throw BoundError("fractional exponent overflow");
    return static_cast<std::uint32_t>(s);
}

void require_same(const PresentationPtr& a, const PresentationPtr& b) {
    if (a != b && !(*a == *b)) throw InputError("elements live over different presentations");
}

std::size_t weight(const PDIndex& l) { return std::accumulate(l.begin(), l.end(), std::size_t{0}); }

std::string exponent_string(std::uint32_t num, std::uint32_t den) {
    const auto g = std::gcd(num, den);
    if (den / g == 1) return std::to_string(num / g);
    return "(" + std::to_string(num / g) + "/" + std::to_string(den / g) + ")";
}

// All l in N^c with |l| = n.
std::vector<PDIndex> indices_of_weight(std::size_t c, std::size_t n) {
    std::vector<PDIndex> out;
    if (c == 1) {
        out.push_back({static_cast<std::uint32_t>(n), 0});
    } else {
        for (std::size_t a = n + 1; a-- > 0;) out.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(n - a)});
    }
    return out;
}

}  // namespace

FractionalMonomial FractionalMonomial::operator*(const FractionalMonomial& o) const {
    FractionalMonomial r;
    for (std::size_t j = 0; j < kMaxPerfectVars; ++j) r.num_[j] = checked_add(num_[j], o.num_[j]);
    return r;
}

FractionalMonomial FractionalMonomial::pow(std::uint64_t e) const {
    FractionalMonomial r;
    for (std::size_t j = 0; j < kMaxPerfectVars; ++j) {
        const auto v = static_cast<std::uint64_t>(num_[j]) * e;
        if (e != 0 && v / e != num_[j]) throw BoundError("fractional exponent overflow");
        r.num_[j] = checked_add(v, 0);
    }
    return r;
}

PerfectPresentation::PerfectPresentation(std::uint32_t p, unsigned precision, std::vector<std::string> vars,
                                         std::vector<std::size_t> generators, std::size_t level_cap)
    : field_(p), precision_(precision), den_(1), vars_(std::move(vars)), gens_(std::move(generators)),
      level_cap_(level_cap) {
    if (precision_ > kMaxPrecision) throw InputError("precision above " + std::to_string(kMaxPrecision));
    for (unsigned i = 0; i < precision_; ++i) {
        if (den_ > (1u << 20) / p) throw InputError("p^precision too large");
        den_ *= p;
    }
    if (vars_.empty() || vars_.size() > kMaxPerfectVars)
        throw InputError("perfect presentation needs 1.." + std::to_string(kMaxPerfectVars) + " variables");
    if (gens_.empty() || gens_.size() > kMaxRegularGenerators)
        throw InputError("regular sequence needs 1.." + std::to_string(kMaxRegularGenerators) + " generators");
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (gens_[k] >= vars_.size()) throw InputError("generator index out of range");
        for (std::size_t l = 0; l < k; ++l)
            if (gens_[l] == gens_[k]) throw InputError("repeated generator");
    }
    if (level_cap_ > 8) throw InputError("filtration cap above 8");
}

PresentationPtr make_presentation(std::uint32_t p, unsigned precision, std::vector<std::string> vars,
                                  std::vector<std::size_t> generators, std::size_t level_cap) {
    return std::make_shared<const PerfectPresentation>(p, precision, std::move(vars), std::move(generators),
                                                       level_cap);
}

// ---------------------------------------------------------------------------
// PerfPoly

PerfPoly::PerfPoly(PresentationPtr pres) : pres_(std::move(pres)) {
    if (!pres_) throw InputError("null presentation");
}

PerfPoly PerfPoly::constant(PresentationPtr pres, std::int64_t c) {
    PerfPoly r(std::move(pres));
    r.add_term(FractionalMonomial{}, r.pres_->field().reduce(c));
    return r;
}

PerfPoly PerfPoly::variable(PresentationPtr pres, std::size_t j, std::uint32_t numerator) {
    if (j >= pres->nvars()) throw InputError("variable index out of range");
    FractionalMonomial m;
    m[j] = numerator;
    return monomial(std::move(pres), m);
}

PerfPoly PerfPoly::monomial(PresentationPtr pres, const FractionalMonomial& m, std::uint32_t c) {
    PerfPoly r(std::move(pres));
    for (std::size_t j = r.pres_->nvars(); j < kMaxPerfectVars; ++j)
        if (m[j] != 0) throw InputError("monomial uses an undeclared variable");
    r.add_term(m, r.pres_->field().reduce(c));
    return r;
}

PerfPoly PerfPoly::generator(PresentationPtr pres, std::size_t k) {
    if (k >= pres->codimension()) throw InputError("generator index out of range");
    const auto j = pres->generators()[k];
    const auto den = pres->denominator();
    return variable(std::move(pres), j, den);
}

void PerfPoly::add_term(const FractionalMonomial& m, std::uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = pres_->field().add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

std::uint32_t PerfPoly::constant_term() const {
    const auto it = terms_.find(FractionalMonomial{});
    return it == terms_.end() ? 0 : it->second;
}

bool PerfPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && constant_term() != 0); }

PerfPoly& PerfPoly::operator+=(const PerfPoly& o) {
    require_same(pres_, o.pres_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PerfPoly& PerfPoly::operator-=(const PerfPoly& o) {
    require_same(pres_, o.pres_);
    for (const auto& [m, c] : o.terms_) add_term(m, pres_->field().neg(c));
    return *this;
}

PerfPoly PerfPoly::operator-() const { return scaled(pres_->p() - 1); }

PerfPoly PerfPoly::scaled(std::uint32_t c) const {
    PerfPoly r(pres_);
    c %= pres_->p();
    if (c == 0) return r;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, pres_->field().mul(a, c));
    return r;
}

PerfPoly operator*(const PerfPoly& a, const PerfPoly& b) {
    require_same(a.pres_, b.pres_);
    PerfPoly r(a.pres_);
    const auto& f = a.pres_->field();
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, f.mul(ca, cb));
    return r;
}

bool operator==(const PerfPoly& a, const PerfPoly& b) {
    return (a.pres_ == b.pres_ || *a.pres_ == *b.pres_) && a.terms_ == b.terms_;
}

PerfPoly PerfPoly::pow(std::uint64_t e) const {
    auto result = constant(pres_, 1);
    auto base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

PerfPoly PerfPoly::frobenius() const {
    PerfPoly r(pres_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.pow(pres_->p()), c);
    return r;
}

PerfPoly PerfPoly::frobenius_inverse() const {
    PerfPoly r(pres_);
    const auto p = pres_->p();
    for (const auto& [m, c] : terms_) {
        FractionalMonomial q;
        for (std::size_t j = 0; j < kMaxPerfectVars; ++j) {
            if (m[j] % p != 0)
                throw BoundError("p-th root needs more than precision " + std::to_string(pres_->precision()));
            q[j] = m[j] / p;
        }
        r.terms_.emplace(q, c);
    }
    return r;
}

bool PerfPoly::in_ideal_power(std::size_t k) const {
    const auto den = pres_->denominator();
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
        std::size_t order = 0;
        for (auto j : pres_->generators()) order += t.first[j] / den;
        return order >= k;
    });
}

PerfPoly PerfPoly::mod_generator_powers() const {
    PerfPoly r(pres_);
    const auto bound = static_cast<std::uint64_t>(pres_->p()) * pres_->denominator();
    for (const auto& [m, c] : terms_) {
        const auto& g = pres_->generators();
        if (std::none_of(g.begin(), g.end(), [&](auto j) { return m[j] >= bound; })) r.terms_.emplace(m, c);
    }
    return r;
}

PerfPoly PerfPoly::mod_ideal() const {
    PerfPoly r(pres_);
    const auto den = pres_->denominator();
    for (const auto& [m, c] : terms_) {
        const auto& g = pres_->generators();
        if (std::none_of(g.begin(), g.end(), [&](auto j) { return m[j] >= den; })) r.terms_.emplace(m, c);
    }
    return r;
}

std::string PerfPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) out << " + ";
        first = false;
        bool wrote = false;
        if (c != 1 || m == FractionalMonomial{}) {
            out << c;
            wrote = true;
        }
        for (std::size_t j = 0; j < pres_->nvars(); ++j) {
            if (m[j] == 0) continue;
            if (wrote) out << "*";
            out << pres_->vars()[j];
            if (m[j] != pres_->denominator()) out << "^" << exponent_string(m[j], pres_->denominator());
            wrote = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Divided powers

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    const PrimeField f(p);
    std::uint32_t r = 1;
    while (n > 0 || k > 0) {
        const auto ni = static_cast<std::uint32_t>(n % p);
        const auto ki = static_cast<std::uint32_t>(k % p);
        if (ki > ni) return 0;
        std::uint32_t num = 1, den = 1;
        for (std::uint32_t i = 0; i < ki; ++i) {
            num = f.mul(num, ni - i);
            den = f.mul(den, i + 1);
        }
        r = f.mul(r, f.mul(num, f.inv(den)));
        n /= p;
        k /= p;
    }
    return r;
}

PDElement::PDElement(PresentationPtr pres) : pres_(std::move(pres)) {
    if (!pres_) throw InputError("null presentation");
}

PDElement PDElement::from_coefficient(const PerfPoly& c) {
    PDElement r(c.presentation());
    r.add_term(PDIndex{}, c);
    return r;
}

PDElement PDElement::monomial(PresentationPtr pres, const PDIndex& l) {
    // f^{[r + pk]} = f^{[r]} f^{[pk]} (Lucas) and f^{[r]} = f^r / r! for r < p.
    const auto p = pres->p();
    const auto& f = pres->field();
    PDIndex k{};
    FractionalMonomial m;
    std::uint32_t den = 1;
    for (std::size_t j = 0; j < kMaxRegularGenerators; ++j) {
        if (l[j] == 0) continue;
        if (j >= pres->codimension()) throw InputError("PD index uses an undeclared generator");
        const auto r = l[j] % p;
        k[j] = l[j] / p;
        m[pres->generators()[j]] = r * pres->denominator();
        for (std::uint32_t i = 2; i <= r; ++i) den = f.mul(den, i);
    }
    if (weight(k) > pres->level_cap())
        throw BoundError("PD monomial above filtration cap " + std::to_string(pres->level_cap()));
    PDElement out(pres);
    out.add_term(k, PerfPoly::monomial(pres, m, f.inv(den)));
    return out;
}

void PDElement::add_term(const PDIndex& k, const PerfPoly& c) {
    auto reduced = c.mod_generator_powers();
    if (reduced.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, std::move(reduced));
        return;
    }
    it->second += reduced;
    if (it->second.is_zero()) terms_.erase(it);
}

std::size_t PDElement::level() const {
    std::size_t best = 0;
    for (const auto& [k, c] : terms_) best = std::max(best, weight(k));
    return best;
}

PDElement PDElement::graded_part(std::size_t n) const {
    PDElement r(pres_);
    for (const auto& [k, c] : terms_)
        if (weight(k) == n) r.terms_.emplace(k, c);
    return r;
}

PDElement& PDElement::operator+=(const PDElement& o) {
    require_same(pres_, o.pres_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

PDElement& PDElement::operator-=(const PDElement& o) {
    require_same(pres_, o.pres_);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

PDElement PDElement::operator-() const { return scaled(pres_->p() - 1); }

PDElement PDElement::scaled(std::uint32_t c) const {
    PDElement r(pres_);
    for (const auto& [k, a] : terms_) r.add_term(k, a.scaled(c));
    return r;
}

PDElement PDElement::times(const PerfPoly& c) const {
    require_same(pres_, c.presentation());
    PDElement r(pres_);
    for (const auto& [k, a] : terms_) r.add_term(k, a * c);
    return r;
}

bool operator==(const PDElement& a, const PDElement& b) {
    return (a.pres_ == b.pres_ || *a.pres_ == *b.pres_) && a.terms_ == b.terms_;
}

std::string PDElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    const auto p = pres_->p();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        if (!first) out << " + ";
        first = false;
        out << "(" << c.to_string() << ")";
        for (std::size_t j = 0; j < pres_->codimension(); ++j)
            if (k[j] != 0) out << "*" << pres_->vars()[pres_->generators()[j]] << "^[" << p * k[j] << "]";
    }
    return out.str();
}

PDElement pd_mul(const PDElement& a, const PDElement& b) {
    const auto& pres = a.presentation();
    require_same(pres, b.presentation());
    const auto p = pres->p();
    const auto& f = pres->field();
    PDElement r(pres);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            PDIndex k{};
            std::uint32_t factor = 1;
            for (std::size_t j = 0; j < kMaxRegularGenerators; ++j) {
                k[j] = ka[j] + kb[j];
                factor = f.mul(factor, binomial_mod_p(std::uint64_t{p} * k[j], std::uint64_t{p} * ka[j], p));
            }
            if (factor == 0) continue;
            if (weight(k) > pres->level_cap())
                throw BoundError("product above filtration cap " + std::to_string(pres->level_cap()));
            r += PDElement::monomial(pres, {k[0] * p, k[1] * p}).times((ca * cb).scaled(factor));
        }
    }
    return r;
}

PDElement divided_power(const PerfPoly& u, std::uint64_t l) {
    const auto& pres = u.presentation();
    if (!u.in_ideal_power(1)) throw InputError("divided powers are only defined on I");
    const auto den = pres->denominator();
    // powers[i] = (partial sum)^{[i]}.
    std::vector<PDElement> powers(l + 1, PDElement(pres));
    powers[0] = PDElement::from_coefficient(PerfPoly::constant(pres, 1));
    for (const auto& [m, c] : u.terms()) {
        std::size_t g = 0;
        while (m[pres->generators()[g]] < den) ++g;
        auto wm = m;
        wm[pres->generators()[g]] -= den;
        const auto w = PerfPoly::monomial(pres, wm, c);
        std::vector<PDElement> term_powers;
        term_powers.reserve(l + 1);
        for (std::uint64_t i = 0; i <= l; ++i) {
            PDIndex idx{};
            idx[g] = static_cast<std::uint32_t>(i);
            term_powers.push_back(PDElement::monomial(pres, idx).times(w.pow(i)));
        }
        std::vector<PDElement> next(l + 1, PDElement(pres));
        for (std::uint64_t target = 0; target <= l; ++target)
            for (std::uint64_t i = 0; i <= target; ++i) next[target] += pd_mul(powers[target - i], term_powers[i]);
        powers = std::move(next);
    }
    return powers[l];
}

PDElement frobenius_pullback_quotient(const PDElement& u) {
    const auto& pres = u.presentation();
    PDElement r(pres);
    for (const auto& [k, c] : u.terms())
        r += PDElement::monomial(pres, {k[0] * pres->p(), k[1] * pres->p()}).times(c.mod_ideal());
    return r;
}

std::vector<PDIndex> conj_filtration_basis(const PresentationPtr& pres, std::size_t n) {
    if (n > pres->level_cap())
        throw BoundError("filtration level " + std::to_string(n) + " above cap " + std::to_string(pres->level_cap()));
    const std::size_t bound = (n + 1) * pres->p();
    std::vector<PDIndex> out;
    for (std::size_t total = 0; total < bound; ++total)
        for (const auto& l : indices_of_weight(pres->codimension(), total)) out.push_back(l);
    return out;
}

// ---------------------------------------------------------------------------
// Gamma side

GammaElement::GammaElement(PresentationPtr pres) : pres_(std::move(pres)) {
    if (!pres_) throw InputError("null presentation");
}

GammaElement GammaElement::monomial(PresentationPtr pres, const PDIndex& l) {
    for (std::size_t j = pres->codimension(); j < kMaxRegularGenerators; ++j)
        if (l[j] != 0) throw InputError("Gamma index uses an undeclared generator");
    GammaElement r(pres);
    r.terms_.emplace(l, PerfPoly::constant(pres, 1));
    return r;
}

std::optional<std::size_t> GammaElement::weight() const {
    std::optional<std::size_t> w;
    for (const auto& [l, c] : terms_) {
        const auto lw = frobsplit::weight(l);
        if (w && *w != lw) return std::nullopt;
        w = lw;
    }
    return w;
}

GammaElement& GammaElement::operator+=(const GammaElement& o) {
    require_same(pres_, o.pres_);
    for (const auto& [l, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(l, c.mod_ideal());
        if (!inserted) it->second += c.mod_ideal();
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

GammaElement GammaElement::times(const PerfPoly& c) const {
    GammaElement r(pres_);
    for (const auto& [l, a] : terms_) {
        auto v = (a * c).mod_ideal();
        if (!v.is_zero()) r.terms_.emplace(l, std::move(v));
    }
    return r;
}

bool operator==(const GammaElement& a, const GammaElement& b) {
    return (a.pres_ == b.pres_ || *a.pres_ == *b.pres_) && a.terms_ == b.terms_;
}

std::string GammaElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [l, c] = *it;
        if (!first) out << " + ";
        first = false;
        out << "(" << c.to_string() << ")";
        for (std::size_t j = 0; j < pres_->codimension(); ++j)
            if (l[j] != 0) out << "*" << pres_->vars()[pres_->generators()[j]] << "bar^[" << l[j] << "]";
    }
    return out.str();
}

GammaElement gamma_mul(const GammaElement& a, const GammaElement& b) {
    const auto& pres = a.presentation();
    require_same(pres, b.presentation());
    const auto p = pres->p();
    GammaElement r(pres);
    for (const auto& [la, ca] : a.terms()) {
        for (const auto& [lb, cb] : b.terms()) {
            PDIndex l{};
            std::uint32_t factor = 1;
            for (std::size_t j = 0; j < kMaxRegularGenerators; ++j) {
                l[j] = la[j] + lb[j];
                factor = pres->field().mul(factor, binomial_mod_p(l[j], la[j], p));
            }
            if (factor == 0) continue;
            r += GammaElement::monomial(pres, l).times((ca * cb).scaled(factor));
        }
    }
    return r;
}

namespace {

std::vector<PerfPoly> checked_lifts(const PresentationPtr& pres, std::span<const PerfPoly> lifts) {
    std::vector<PerfPoly> out;
    for (std::size_t k = 0; k < pres->codimension(); ++k) out.push_back(PerfPoly::generator(pres, k));
    if (lifts.empty()) return out;
    if (lifts.size() != pres->codimension()) throw InputError("one lift per generator expected");
    for (std::size_t k = 0; k < lifts.size(); ++k) {
        require_same(pres, lifts[k].presentation());
        if (!(lifts[k] - out[k]).in_ideal_power(2))
            throw InputError("lift of generator " + std::to_string(k) + " differs from it outside I^2");
        out[k] = lifts[k];
    }
    return out;
}

// (-1)^{|l|} prod_j a~_j^{[p l_j]}.
PDElement signed_lifted_power(const PresentationPtr& pres, const PDIndex& l, const std::vector<PerfPoly>& lifts,
                              bool default_lifts) {
    const auto p = pres->p();
    if (weight(l) > pres->level_cap())
        throw BoundError("Gamma weight above filtration cap " + std::to_string(pres->level_cap()));
    PDElement out(pres);
    if (default_lifts) {
        out = PDElement::monomial(pres, {l[0] * p, l[1] * p});
    } else {
        out = PDElement::from_coefficient(PerfPoly::constant(pres, 1));
        for (std::size_t j = 0; j < pres->codimension(); ++j)
            if (l[j] != 0) out = pd_mul(out, divided_power(lifts[j], std::uint64_t{p} * l[j]));
    }
    return weight(l) % 2 == 1 ? -out : out;
}

}  // namespace

PDElement graded_piece_map(const GammaElement& g, std::span<const PerfPoly> lifts) {
    const auto& pres = g.presentation();
    const auto all = checked_lifts(pres, lifts);
    PDElement out(pres);
    if (g.is_zero()) return out;
    const auto n = g.weight();
    if (!n) throw InputError("graded_piece_map needs an element of a single weight");
    for (const auto& [l, r] : g.terms())
        out += signed_lifted_power(pres, l, all, lifts.empty()).times(r.frobenius());
    return out.graded_part(*n);
}

PDElement splitting_s(const GammaElement& g, std::span<const PerfPoly> lifts) {
    const auto& pres = g.presentation();
    const auto all = checked_lifts(pres, lifts);
    PDElement out(pres);
    for (const auto& [l, r] : g.terms()) out += signed_lifted_power(pres, l, all, lifts.empty()).times(r);
    return frobenius_pullback_quotient(out);
}

// ---------------------------------------------------------------------------
// Verification

bool FilteredIsoReport::ok() const {
    if (levels.empty()) return false;
    for (const auto& lv : levels)
        if (!lv.filtered || !lv.matches_graded || !lv.bijective()) return false;
    return multiplicative && lift_independent;
}

namespace {

class RandomElements {
   public:
    RandomElements(PresentationPtr pres, std::uint64_t seed) : pres_(std::move(pres)), rng_(seed) {}

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }

    // Monomial with generator exponents below `gen_bound` (in units of 1) and
    // other exponents below 2.
    FractionalMonomial monomial(std::uint32_t gen_bound) {
        FractionalMonomial m;
        const auto den = pres_->denominator();
        const auto& g = pres_->generators();
        for (std::size_t j = 0; j < pres_->nvars(); ++j) {
            const bool is_gen = std::find(g.begin(), g.end(), j) != g.end();
            const auto bound = (is_gen ? gen_bound : 2u) * den;
            m[j] = bound == 0 ? 0 : static_cast<std::uint32_t>(uniform(0, bound - 1));
        }
        return m;
    }

    // Random element of R, as a lift with generator exponents below 1.
    PerfPoly ring_element() {
        PerfPoly r(pres_);
        const auto n = uniform(1, 3);
        for (std::uint64_t i = 0; i < n; ++i)
            r += PerfPoly::monomial(pres_, monomial(1), static_cast<std::uint32_t>(uniform(1, pres_->p() - 1)));
        return r;
    }

    // Random element of I^2: sums of w f_a f_b.
    PerfPoly ideal_square_element() {
        PerfPoly r(pres_);
        const auto c = pres_->codimension();
        const auto n = uniform(1, 3);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto a = PerfPoly::generator(pres_, uniform(0, c - 1));
            const auto b = PerfPoly::generator(pres_, uniform(0, c - 1));
            r += PerfPoly::monomial(pres_, monomial(1), static_cast<std::uint32_t>(uniform(1, pres_->p() - 1))) * a *
                 b;
        }
        return r;
    }

    GammaElement gamma(std::size_t w) {
        GammaElement g(pres_);
        for (const auto& l : indices_of_weight(pres_->codimension(), w))
            if (uniform(0, 3) != 0) g += GammaElement::monomial(pres_, l).times(ring_element());
        return g;
    }

   private:
    PresentationPtr pres_;
    std::mt19937_64 rng_;
};

}  // namespace

FilteredIsoReport verify_filtered_iso(const PresentationPtr& pres, std::size_t n_max, std::size_t perturbations,
                                      std::uint64_t seed) {
    if (n_max > pres->level_cap())
        throw BoundError("n_max " + std::to_string(n_max) + " above filtration cap " +
                         std::to_string(pres->level_cap()));
    FilteredIsoReport report;
    report.p = pres->p();
    report.nvars = pres->nvars();
    report.codimension = pres->codimension();
    report.n_max = n_max;
    const auto c = pres->codimension();

    for (std::size_t n = 0; n <= n_max; ++n) {
        LevelReport lv;
        lv.n = n;
        const auto gamma_basis = indices_of_weight(c, n);
        lv.gamma_rank = gamma_basis.size();

        // Level-n classes of the PD monomials spanning Fil_n, modulo I D.
        std::set<PDIndex> graded;
        for (const auto& l : conj_filtration_basis(pres, n)) {
            const auto q = frobenius_pullback_quotient(PDElement::monomial(pres, l)).graded_part(n);
            for (const auto& [k, coeff] : q.terms()) graded.insert(k);
        }
        lv.graded_rank = graded.size();
        const std::vector<PDIndex> rows(graded.begin(), graded.end());

        linalg::FpMatrix image(pres->p(), rows.size(), gamma_basis.size());
        bool constant_entries = true;
        for (std::size_t col = 0; col < gamma_basis.size(); ++col) {
            const auto g = GammaElement::monomial(pres, gamma_basis[col]);
            const auto v = splitting_s(g);
            if (v.level() > n) lv.filtered = false;
            const auto top = v.graded_part(n);
            if (!(top == frobenius_pullback_quotient(graded_piece_map(g)))) lv.matches_graded = false;
            for (const auto& [k, coeff] : top.terms()) {
                const auto it = std::lower_bound(rows.begin(), rows.end(), k);
                if (it == rows.end() || *it != k) {
                    lv.matches_graded = false;
                    continue;
                }
                if (!coeff.is_constant()) constant_entries = false;
                image.at(static_cast<std::size_t>(it - rows.begin()), col) = coeff.constant_term();
            }
        }
        lv.image_rank = constant_entries && rows.size() > 0 && !gamma_basis.empty() ? linalg::rank(image) : 0;
        report.levels.push_back(lv);
    }

    RandomElements rnd(pres, seed);
    report.multiplicative_samples = 20;
    for (std::size_t s = 0; s < report.multiplicative_samples; ++s) {
        const auto a = rnd.uniform(0, n_max);
        const auto b = rnd.uniform(0, n_max - a);
        const auto ga = rnd.gamma(a);
        const auto gb = rnd.gamma(b);
        const auto lhs = splitting_s(gamma_mul(ga, gb));
        const auto rhs = frobenius_pullback_quotient(pd_mul(splitting_s(ga), splitting_s(gb)));
        if (!(lhs == rhs)) report.multiplicative = false;
    }

    report.perturbations = perturbations;
    std::vector<GammaElement> basis;
    for (std::size_t n = 0; n <= n_max; ++n)
        for (const auto& l : indices_of_weight(c, n)) basis.push_back(GammaElement::monomial(pres, l));
    for (std::size_t t = 0; t < perturbations && report.lift_independent; ++t) {
        std::vector<PerfPoly> lifts;
        for (std::size_t k = 0; k < c; ++k) lifts.push_back(PerfPoly::generator(pres, k) + rnd.ideal_square_element());
        for (const auto& g : basis) {
            if (!(splitting_s(g, lifts) == splitting_s(g)) || !(graded_piece_map(g, lifts) == graded_piece_map(g))) {
                report.lift_independent = false;
                break;
            }
        }
    }
    return report;
}

SignIdentityReport sign_identity_check(unsigned k_max) {
    if (k_max == 0 || k_max > 30) throw InputError("k_max must be in 1..30");
    SignIdentityReport report;
    report.k_max = k_max;
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (unsigned k = 1; k <= k_max; ++k) {
            mpz_class num, kf, pk;
            mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(p) * k);
            mpz_fac_ui(kf.get_mpz_t(), k);
            mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
            const mpz_class den = pk * kf;
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
                throw InternalError("(pk)! not divisible by p^k k!");
            const mpz_class q = num / den;
            SignIdentityRow row;
            row.p = p;
            row.k = k;
            row.value = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_mpz_t(), p));
            row.expected = k % 2 == 0 ? 1 % p : p - 1;
            if (row.value != row.expected) ++report.failures;
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace frobsplit
