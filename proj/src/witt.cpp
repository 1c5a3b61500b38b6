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

#include "frobsplit/witt.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace frobsplit {

namespace {

// Largest p^{n-1} for which the universal polynomials are built.
constexpr std::uint64_t kMaxTopExponent = 169;

using ModPTerms = std::vector<std::pair<Monomial, std::uint32_t>>;

struct Tables {
    StructuralPolys exact;
    std::vector<ModPTerms> sum, product, negation;
};

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

mpz_class zpow(std::uint32_t p, std::size_t k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

// w_k for the variables var(0), var(1), ...
template <class Var>
ZPoly ghost_component(std::uint32_t p, std::size_t k, Var var) {
    ZPoly w;
    for (std::size_t j = 0; j <= k; ++j) w += pow(var(j), ipow(p, k - j)).scaled(zpow(p, j));
    return w;
}

// Solve w_k(Z) = target_k for the components of Z, one position at a time.
std::vector<ZPoly> solve_ghost(std::uint32_t p, const std::vector<ZPoly>& targets) {
    std::vector<ZPoly> z;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        ZPoly rest = targets[k];
        for (std::size_t j = 0; j < k; ++j) rest -= pow(z[j], ipow(p, k - j)).scaled(zpow(p, j));
        z.push_back(rest.divided_exactly(zpow(p, k)));
    }
    return z;
}

ModPTerms reduce_terms(const ZPoly& f, std::uint32_t p) {
    ModPTerms out;
    const mpz_class pp = p;
    for (const auto& [m, c] : f.terms()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
        if (r != 0) out.emplace_back(m, static_cast<std::uint32_t>(r.get_ui()));
    }
    return out;
}

std::unique_ptr<Tables> build_tables(std::uint32_t p, std::size_t n) {
    auto t = std::make_unique<Tables>();
    t->exact.p = p;
    t->exact.n = n;
    auto x = [](std::size_t j) { return ZPoly::variable(2 * j); };
    auto y = [](std::size_t j) { return ZPoly::variable(2 * j + 1); };
    auto plain = [](std::size_t j) { return ZPoly::variable(j); };
    std::vector<ZPoly> sum_targets, prod_targets, neg_targets;
    for (std::size_t k = 0; k < n; ++k) {
        auto wx = ghost_component(p, k, x);
        auto wy = ghost_component(p, k, y);
        sum_targets.push_back(wx + wy);
        prod_targets.push_back(wx * wy);
        neg_targets.push_back(-ghost_component(p, k, plain));
    }
    t->exact.sum = solve_ghost(p, sum_targets);
    t->exact.product = solve_ghost(p, prod_targets);
    t->exact.negation = solve_ghost(p, neg_targets);
    for (std::size_t k = 0; k < n; ++k) {
        t->sum.push_back(reduce_terms(t->exact.sum[k], p));
        t->product.push_back(reduce_terms(t->exact.product[k], p));
        t->negation.push_back(reduce_terms(t->exact.negation[k], p));
    }
    return t;
}

const Tables& tables(std::uint32_t p, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<Tables>> cache;
    if (!is_prime(p) || p > kMaxPrime) throw InputError("unsupported prime " + std::to_string(p));
    if (n < 1 || n > kMaxWittLength) throw InputError("Witt length must be between 1 and 4");
    if (ipow(p, n - 1) > kMaxTopExponent)
        throw BoundError("Witt length " + std::to_string(n) + " is too large for p=" + std::to_string(p));
    std::lock_guard lock(mu);
    auto& slot = cache[{p, n}];
    if (!slot) slot = build_tables(p, n);
    return *slot;
}

// Powers of the input components, shared by all output positions.
class PowerCache {
   public:
    PowerCache(std::vector<const FpPoly*> inputs, const HypersurfaceRing* quotient)
        : inputs_(std::move(inputs)), quotient_(quotient), cache_(inputs_.size()) {}

    bool is_zero(std::size_t var) const { return inputs_[var]->is_zero(); }

    const FpPoly& power(std::size_t var, std::uint64_t e) {
        auto& slot = cache_[var];
        auto it = slot.find(e);
        if (it != slot.end()) return it->second;
        auto value = e == 1 ? *inputs_[var] : pow(*inputs_[var], e);
        if (quotient_) value = quotient_->reduce(value);
        return slot.emplace(e, std::move(value)).first->second;
    }

   private:
    std::vector<const FpPoly*> inputs_;
    const HypersurfaceRing* quotient_;
    std::vector<std::unordered_map<std::uint64_t, FpPoly>> cache_;
};

FpPoly evaluate(const ModPTerms& terms, PowerCache& cache, const RingPtr& ring) {
    FpPoly out(ring);
    for (const auto& [mono, c] : terms) {
        bool vanishes = false;
        for (std::size_t v = 0; v < kMaxVars && !vanishes; ++v)
            if (mono[v] && cache.is_zero(v)) vanishes = true;
        if (vanishes) continue;
        FpPoly term = FpPoly::constant(ring, c);
        for (std::size_t v = 0; v < kMaxVars; ++v)
            if (mono[v]) term = term * cache.power(v, mono[v]);
        out += term;
    }
    return out;
}

bool same_quotient(const HypersurfacePtr& a, const HypersurfacePtr& b) {
    bool qa = a && a->is_quotient(), qb = b && b->is_quotient();
    if (qa != qb) return false;
    return !qa || a == b || a->equation() == b->equation();
}

void require_compatible(const WittVector& a, const WittVector& b) {
    if (!a.compatible(b)) throw InputError("Witt vectors differ in length or ambient ring");
}

WittVector binary_op(const WittVector& a, const WittVector& b, bool multiply) {
    require_compatible(a, b);
    const auto n = a.length();
    const auto& t = tables(a.p(), n);
    std::vector<const FpPoly*> inputs;
    for (std::size_t j = 0; j < n; ++j) {
        inputs.push_back(&a[j]);
        inputs.push_back(&b[j]);
    }
    PowerCache cache(std::move(inputs), a.over_quotient() ? a.quotient().get() : nullptr);
    const auto& polys = multiply ? t.product : t.sum;
    std::vector<FpPoly> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(evaluate(polys[k], cache, a.ring()));
    return WittVector(std::move(out), a.quotient());
}

WittVector single_component(const FpPoly& value, std::size_t pos, std::size_t n, HypersurfacePtr quotient) {
    std::vector<FpPoly> comps(n, FpPoly(value.ring()));
    comps[pos] = value;
    return WittVector(std::move(comps), std::move(quotient));
}

bool is_pth_power(const FpPoly& g, const WittVector& owner) {
    if (g.is_zero()) return true;
    if (owner.over_quotient()) return owner.quotient()->pth_root(g).has_value();
    return pth_root(g).has_value();
}

FpPoly pure_pth_power_part(const FpPoly& g) {
    std::vector<FpPoly::Term> keep;
    for (const auto& t : g.terms())
        if (t.mono.all_divisible_by(g.p())) keep.push_back(t);
    return FpPoly(g.ring(), std::move(keep));
}

}  // namespace

const StructuralPolys& structural_polys(std::uint32_t p, std::size_t n) { return tables(p, n).exact; }

// ---------------------------------------------------------------------------

WittVector::WittVector(std::vector<FpPoly> components, HypersurfacePtr quotient)
    : comps_(std::move(components)), quotient_(std::move(quotient)) {
    if (comps_.empty() || comps_.size() > kMaxWittLength)
        throw InputError("Witt length must be between 1 and 4");
    for (const auto& c : comps_)
        if (!(*c.ring() == *comps_.front().ring())) throw InputError("Witt components live in different rings");
    if (quotient_ && !(*quotient_->ambient() == *ring())) throw InputError("quotient ring does not match components");
    if (over_quotient())
        for (auto& c : comps_) c = quotient_->reduce(c);
}

WittVector WittVector::zero(RingPtr ring, std::size_t n, HypersurfacePtr quotient) {
    return WittVector(std::vector<FpPoly>(n, FpPoly(std::move(ring))), std::move(quotient));
}

WittVector WittVector::one(RingPtr ring, std::size_t n, HypersurfacePtr quotient) {
    return teichmuller(FpPoly::constant(std::move(ring), 1), n, std::move(quotient));
}

WittVector WittVector::teichmuller(const FpPoly& r, std::size_t n, HypersurfacePtr quotient) {
    return single_component(r, 0, n, std::move(quotient));
}

bool WittVector::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

std::string WittVector::dump() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < comps_.size(); ++i) os << (i ? "; " : "") << comps_[i].to_string();
    os << ") @ p=" << p() << ", n=" << length();
    return os.str();
}

bool WittVector::compatible(const WittVector& o) const {
    return length() == o.length() && *ring() == *o.ring() && same_quotient(quotient_, o.quotient_);
}

bool operator==(const WittVector& a, const WittVector& b) { return a.compatible(b) && a.comps_ == b.comps_; }

WittVector witt_add(const WittVector& a, const WittVector& b) { return binary_op(a, b, false); }

WittVector witt_mul(const WittVector& a, const WittVector& b) { return binary_op(a, b, true); }

WittVector witt_neg(const WittVector& a) {
    const auto n = a.length();
    const auto& t = tables(a.p(), n);
    std::vector<const FpPoly*> inputs;
    for (std::size_t j = 0; j < n; ++j) inputs.push_back(&a[j]);
    PowerCache cache(std::move(inputs), a.over_quotient() ? a.quotient().get() : nullptr);
    std::vector<FpPoly> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(evaluate(t.negation[k], cache, a.ring()));
    return WittVector(std::move(out), a.quotient());
}

WittVector witt_sub(const WittVector& a, const WittVector& b) { return witt_add(a, witt_neg(b)); }

WittVector witt_sum(std::span<const WittVector> terms) {
    if (terms.empty()) throw InternalError("witt_sum of an empty family");
    std::vector<WittVector> layer(terms.begin(), terms.end());
    while (layer.size() > 1) {
        std::vector<WittVector> next;
        for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(witt_add(layer[i], layer[i + 1]));
        if (layer.size() % 2) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer.front();
}

WittVector verschiebung(const WittVector& a) {
    std::vector<FpPoly> comps{FpPoly(a.ring())};
    comps.insert(comps.end(), a.components().begin(), a.components().end());
    return WittVector(std::move(comps), a.quotient());
}

WittVector verschiebung_truncated(const WittVector& a) {
    std::vector<FpPoly> comps{FpPoly(a.ring())};
    comps.insert(comps.end(), a.components().begin(), a.components().end() - 1);
    return WittVector(std::move(comps), a.quotient());
}

WittVector frobenius_W(const WittVector& a) {
    if (a.length() < 2) throw InputError("frobenius_W needs length at least 2");
    std::vector<FpPoly> comps;
    for (std::size_t i = 0; i + 1 < a.length(); ++i) comps.push_back(frobenius(a[i]));
    return WittVector(std::move(comps), a.quotient());
}

WittVector mul_by_p(const WittVector& a) {
    std::vector<FpPoly> comps{FpPoly(a.ring())};
    for (std::size_t i = 0; i + 1 < a.length(); ++i) comps.push_back(frobenius(a[i]));
    return WittVector(std::move(comps), a.quotient());
}

WittVector truncate(const WittVector& a, std::size_t m) {
    if (m < 1 || m > a.length()) throw InputError("truncate: bad target length");
    return WittVector(std::vector<FpPoly>(a.components().begin(), a.components().begin() + m), a.quotient());
}

// ---------------------------------------------------------------------------

WnModPClass canonical_form(const WnModPClass& a) {
    if (a.representative.over_quotient()) throw InputError("canonical_form needs a polynomial ambient");
    auto cur = a.representative;
    for (std::size_t i = 1; i < cur.length(); ++i) {
        auto pure = pure_pth_power_part(cur[i]);
        if (pure.is_zero()) continue;
        // V^i[b^p] = p V^{i-1}[b], so removing it keeps the class.
        cur = witt_sub(cur, single_component(pure, i, cur.length(), cur.quotient()));
    }
    return {std::move(cur), true};
}

bool class_equal(const WnModPClass& a, const WnModPClass& b) {
    auto d = witt_sub(a.representative, b.representative);
    if (!d[0].is_zero()) return false;
    for (std::size_t i = 1; i < d.length(); ++i)
        if (!is_pth_power(d[i], d)) return false;
    return true;
}

FpPoly restriction_r(const WnModPClass& a) { return a.representative[0]; }

WnModPClass section_s(const FpPoly& r, std::size_t n, HypersurfacePtr quotient) {
    return {WittVector::teichmuller(frobenius(r), n, std::move(quotient)), false};
}

WittVector module_action(const FpPoly& r, const WittVector& w) {
    return witt_mul(WittVector::teichmuller(frobenius(r), w.length(), w.quotient()), w);
}

// ---------------------------------------------------------------------------

Grade Grade::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw InternalError("grade with zero denominator");
    auto g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

std::string Grade::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Grade& a, const Grade& b) {
    unsigned __int128 l = static_cast<unsigned __int128>(a.num) * b.den;
    unsigned __int128 r = static_cast<unsigned __int128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool operator<(const BasisKey& a, const BasisKey& b) {
    if (a.level != b.level) return a.level < b.level;
    return grlex(a.exponent, b.exponent) < 0;
}

WnModPModuleBasis::WnModPModuleBasis(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n) {
    if (n < 1 || n > kMaxWittLength) throw InputError("Witt length must be between 1 and 4");
}

std::uint64_t WnModPModuleBasis::cardinality() const { return ipow(ring_->p(), n_ * dimension()); }

bool WnModPModuleBasis::contains(const BasisKey& k) const {
    if (k.level >= n_) return false;
    const auto q = ipow(ring_->p(), k.level + 1);
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (i >= dimension() && k.exponent[i]) return false;
        if (k.exponent[i] >= q) return false;
    }
    return k.level == 0 || !k.exponent.all_divisible_by(ring_->p());
}

Grade WnModPModuleBasis::grade(const BasisKey& k) const {
    return Grade::make(k.exponent.degree(), ipow(ring_->p(), k.level + 1));
}

WittVector WnModPModuleBasis::element(const BasisKey& k) const {
    if (!contains(k)) throw InputError("not a basis entry");
    return single_component(FpPoly::monomial(ring_, k.exponent), k.level, n_, nullptr);
}

std::vector<BasisKey> WnModPModuleBasis::entries(std::uint64_t limit) const {
    if (cardinality() > limit) throw BoundError("module basis has too many entries to list");
    std::vector<BasisKey> out;
    const auto d = dimension();
    for (std::size_t level = 0; level < n_; ++level) {
        const auto q = ipow(ring_->p(), level + 1);
        Monomial e;
        // Odometer over {0..q-1}^d.
        while (true) {
            BasisKey k{level, e};
            if (contains(k)) out.push_back(k);
            std::size_t i = 0;
            while (i < d && ++e[i] == q) e[i++] = 0;
            if (i == d) break;
        }
    }
    return out;
}

std::vector<BasisKey> WnModPModuleBasis::entries_of_grade(Grade g) const {
    std::vector<BasisKey> out;
    for (std::size_t level = 0; level < n_; ++level) {
        const auto q = ipow(ring_->p(), level + 1);
        if ((g.num * q) % g.den) continue;
        for (const auto& m : monomials_of_degree(dimension(), g.num * q / g.den)) {
            BasisKey k{level, m};
            if (contains(k)) out.push_back(k);
        }
    }
    return out;
}

BasisCoefficients express_in_basis(const WnModPClass& a, const WnModPModuleBasis& basis) {
    const auto& w = a.representative;
    if (w.over_quotient()) throw InputError("express_in_basis needs a polynomial ambient");
    if (w.length() != basis.length() || !(*w.ring() == *basis.ring()))
        throw InputError("class and basis have different length or ring");
    const auto n = w.length();
    const auto p = w.p();
    BasisCoefficients out;
    auto cur = w;
    for (std::size_t level = 0; level < n; ++level) {
        if (cur[level].is_zero()) continue;
        const auto q = ipow(p, level + 1);
        std::vector<WittVector> pieces;
        for (const auto& [e, h] : p_basis_decompose(cur[level], q)) {
            pieces.push_back(WittVector::teichmuller(pow(h, q).times_monomial(e), n - level));
            if (level == 0 || !e.all_divisible_by(p)) out.emplace(BasisKey{level, e}, h);
        }
        auto layer = witt_sum(pieces);
        for (std::size_t i = 0; i < level; ++i) layer = verschiebung(layer);
        cur = witt_sub(cur, layer);
        if (!cur[level].is_zero()) throw InternalError("express_in_basis: layer did not clear");
    }
    if (!cur.is_zero()) throw InternalError("express_in_basis: remainder is not zero");
    return out;
}

WnModPClass recompose(const BasisCoefficients& coeffs, const WnModPModuleBasis& basis) {
    std::vector<WittVector> parts;
    for (const auto& [k, c] : coeffs)
        if (!c.is_zero()) parts.push_back(module_action(c, basis.element(k)));
    if (parts.empty()) return {WittVector::zero(basis.ring(), basis.length()), false};
    return {witt_sum(parts), false};
}

// ---------------------------------------------------------------------------

GhostLift::GhostLift(const WittVector& a) : p_(a.p()) {
    for (const auto& c : a.components()) comps_.push_back(ZPoly::lift(c));
}

GhostLift::GhostLift(std::vector<ZPoly> components, std::uint32_t p) : comps_(std::move(components)), p_(p) {}

ZPoly GhostLift::ghost(std::size_t k) const {
    if (k >= comps_.size()) throw InputError("ghost index out of range");
    return ghost_component(p_, k, [this](std::size_t j) { return comps_[j]; });
}

std::vector<ZPoly> GhostLift::ghost_vector() const {
    std::vector<ZPoly> out;
    for (std::size_t k = 0; k < comps_.size(); ++k) out.push_back(ghost(k));
    return out;
}

GhostLift GhostLift::frobenius() const {
    if (comps_.size() < 2) throw InputError("ghost Frobenius needs length at least 2");
    std::vector<ZPoly> targets;
    for (std::size_t k = 1; k < comps_.size(); ++k) targets.push_back(ghost(k));
    return GhostLift(solve_ghost(p_, targets), p_);
}

WittVector GhostLift::reduce(const RingPtr& ring) const {
    std::vector<FpPoly> comps;
    for (const auto& c : comps_) comps.push_back(c.reduce(ring));
    return WittVector(std::move(comps));
}

bool ghost_congruent(const std::vector<ZPoly>& lhs, const std::vector<ZPoly>& rhs, std::uint32_t p) {
    if (lhs.size() != rhs.size()) return false;
    for (std::size_t k = 0; k < lhs.size(); ++k)
        if (!(lhs[k] - rhs[k]).divisible_by(zpow(p, k + 1))) return false;
    return true;
}

namespace {

void require_polynomial(const WittVector& a) {
    if (a.over_quotient()) throw InputError("ghost checks need a polynomial ambient");
}

}  // namespace

bool ghost_confirms_sum(const WittVector& a, const WittVector& b, const WittVector& result) {
    require_polynomial(a);
    auto ga = GhostLift(a).ghost_vector(), gb = GhostLift(b).ghost_vector();
    for (std::size_t k = 0; k < ga.size(); ++k) ga[k] += gb[k];
    return ghost_congruent(GhostLift(result).ghost_vector(), ga, a.p());
}

bool ghost_confirms_product(const WittVector& a, const WittVector& b, const WittVector& result) {
    require_polynomial(a);
    auto ga = GhostLift(a).ghost_vector(), gb = GhostLift(b).ghost_vector();
    for (std::size_t k = 0; k < ga.size(); ++k) ga[k] = ga[k] * gb[k];
    return ghost_congruent(GhostLift(result).ghost_vector(), ga, a.p());
}

bool ghost_confirms_negation(const WittVector& a, const WittVector& result) {
    require_polynomial(a);
    auto ga = GhostLift(a).ghost_vector();
    for (auto& g : ga) g = -g;
    return ghost_congruent(GhostLift(result).ghost_vector(), ga, a.p());
}

}  // namespace frobsplit
