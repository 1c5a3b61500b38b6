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

#include "frobsplit/fpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frobsplit/linalg.hpp"

namespace frobsplit {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p > kMaxPrime)
        throw InputError("unsupported prime " + std::to_string(p) + " (need a prime 2 <= p <= 13)");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw InternalError("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::initializer_list<std::uint32_t> e) {
    if (e.size() > kMaxVars) throw InputError("too many variables");
    std::copy(e.begin(), e.end(), exps_.begin());
}

std::uint64_t Monomial::degree() const {
    std::uint64_t s = 0;
    for (auto e : exps_) s += e;
    return s;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

bool Monomial::all_divisible_by(std::uint64_t q) const {
    for (auto e : exps_)
        if (e % q) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] + other.exps_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] - other.exps_[i];
    return r;
}

Monomial Monomial::scaled(std::uint64_t k) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = static_cast<std::uint32_t>(exps_[i] * k);
    return r;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing(std::uint32_t p, std::vector<std::string> vars) : field_(p), vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars) throw InputError("at most 8 variables are supported");
    std::set<std::string> seen(vars_.begin(), vars_.end());
    if (seen.size() != vars_.size()) throw InputError("duplicate variable name");
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

RingPtr make_ring(std::uint32_t p, std::vector<std::string> vars) {
    return std::make_shared<const PolyRing>(p, std::move(vars));
}

// ---------------------------------------------------------------- FpPoly

namespace {

using Accumulator = std::unordered_map<Monomial, std::uint32_t, MonomialHash>;

std::vector<FpPoly::Term> sorted_terms(Accumulator&& acc) {
    std::vector<FpPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c) terms.push_back({m, c});
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return grlex(a.mono, b.mono) > 0; });
    return terms;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

}  // namespace

FpPoly::FpPoly(RingPtr ring) : ring_(std::move(ring)) {}

FpPoly::FpPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
    Accumulator acc;
    const auto& k = ring_->field();
    for (const auto& t : terms) {
        for (std::size_t i = ring_->nvars(); i < kMaxVars; ++i)
            if (t.mono[i]) throw InputError("monomial uses a variable outside the ring");
        auto& slot = acc[t.mono];
        slot = k.add(slot, t.coeff % k.p());
    }
    terms_ = sorted_terms(std::move(acc));
}

FpPoly FpPoly::constant(RingPtr ring, std::int64_t c) {
    auto v = ring->field().reduce(c);
    FpPoly r(std::move(ring));
    if (v) r.terms_.push_back({Monomial{}, v});
    return r;
}

FpPoly FpPoly::variable(RingPtr ring, std::size_t i) {
    if (i >= ring->nvars()) throw InputError("variable index out of range");
    Monomial m;
    m[i] = 1;
    return monomial(std::move(ring), m, 1);
}

FpPoly FpPoly::monomial(RingPtr ring, const Monomial& m, std::uint32_t c) {
    FpPoly r(std::move(ring));
    c %= r.p();
    if (c) r.terms_.push_back({m, c});
    return r;
}

std::int64_t FpPoly::degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(t.mono.degree()));
    return d;
}

bool FpPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    auto d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.degree() == d; });
}

std::uint32_t FpPoly::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return grlex(t.mono, key) > 0; });
    return (it != terms_.end() && it->mono == m) ? it->coeff : 0;
}

FpPoly FpPoly::homogeneous_part(std::uint64_t deg) const {
    FpPoly r(ring_);
    for (const auto& t : terms_)
        if (t.mono.degree() == deg) r.terms_.push_back(t);
    return r;
}

void FpPoly::check_same_ring(const FpPoly& o) const {
    if (!same_ring(ring_, o.ring_)) throw InputError("ambient ring mismatch");
}

FpPoly& FpPoly::operator+=(const FpPoly& o) {
    check_same_ring(o);
    const auto& k = ring_->field();
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && grlex(terms_[i].mono, o.terms_[j].mono) > 0)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || grlex(terms_[i].mono, o.terms_[j].mono) < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            auto c = k.add(terms_[i].coeff, o.terms_[j].coeff);
            if (c) out.push_back({terms_[i].mono, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& o) { return *this += -o; }

FpPoly& FpPoly::operator*=(const FpPoly& o) { return *this = *this * o; }

FpPoly FpPoly::operator-() const { return scaled(p() - 1); }

FpPoly FpPoly::scaled(std::uint32_t c) const {
    c %= p();
    FpPoly r(ring_);
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, ring_->field().mul(t.coeff, c)});
    return r;
}

FpPoly FpPoly::times_monomial(const Monomial& m, std::uint32_t c) const {
    c %= p();
    FpPoly r(ring_);
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves grlex order.
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, ring_->field().mul(t.coeff, c)});
    return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) { return mul_parallel(a, b); }

bool operator==(const FpPoly& a, const FpPoly& b) { return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_; }

std::string FpPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool wrote = false;
        if (t.coeff != 1 || t.mono.is_one()) {
            os << t.coeff;
            wrote = true;
        }
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (!t.mono[i]) continue;
            if (wrote) os << '*';
            os << ring_->vars()[i];
            if (t.mono[i] > 1) os << '^' << t.mono[i];
            wrote = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- products

FpPoly mul_serial(const FpPoly& a, const FpPoly& b) {
    if (!same_ring(a.ring(), b.ring())) throw InputError("ambient ring mismatch");
    const auto& k = a.ring()->field();
    Accumulator acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            auto& slot = acc[ta.mono * tb.mono];
            slot = (slot + ta.coeff * tb.coeff) % k.p();
        }
    std::vector<FpPoly::Term> terms = sorted_terms(std::move(acc));
    return FpPoly(a.ring(), std::move(terms));
}

FpPoly mul_parallel(const FpPoly& a, const FpPoly& b) {
    constexpr std::size_t kParallelWork = 1 << 14;
    if (a.size() * b.size() < kParallelWork) return mul_serial(a, b);
    if (!same_ring(a.ring(), b.ring())) throw InputError("ambient ring mismatch");
    const std::uint32_t p = a.p();
    const auto at = a.terms();
    const auto bt = b.terms();
    Accumulator merged;
#pragma omp parallel
    {
        Accumulator local;
#pragma omp for schedule(static)
        for (std::size_t i = 0; i < at.size(); ++i)
            for (const auto& tb : bt) {
                auto& slot = local[at[i].mono * tb.mono];
                slot = (slot + at[i].coeff * tb.coeff) % p;
            }
#pragma omp critical(frobsplit_mul_merge)
        for (auto& [m, c] : local) {
            auto& slot = merged[m];
            slot = (slot + c) % p;
        }
    }
    return FpPoly(a.ring(), sorted_terms(std::move(merged)));
}

FpPoly frobenius(const FpPoly& f) {
    const auto p = f.p();
    std::vector<FpPoly::Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) terms.push_back({t.mono.scaled(p), t.coeff});
    return FpPoly(f.ring(), std::move(terms));
}

FpPoly pow(const FpPoly& f, std::uint64_t e) {
    const auto p = f.p();
    FpPoly result = FpPoly::constant(f.ring(), 1);
    FpPoly base = f;
    while (e) {
        auto digit = e % p;
        if (digit) {
            FpPoly piece = FpPoly::constant(f.ring(), 1);
            for (std::uint64_t i = 0; i < digit; ++i) piece = piece * base;
            result = result * piece;
        }
        e /= p;
        if (e) base = frobenius(base);
    }
    return result;
}

std::optional<FpPoly> pth_root(const FpPoly& f) {
    const auto p = f.p();
    std::vector<FpPoly::Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        if (!t.mono.all_divisible_by(p)) return std::nullopt;
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = t.mono[i] / p;
        terms.push_back({m, t.coeff});
    }
    return FpPoly(f.ring(), std::move(terms));
}

std::map<Monomial, FpPoly, GrlexLess> p_basis_decompose(const FpPoly& f, std::uint64_t q) {
    std::map<Monomial, std::vector<FpPoly::Term>, GrlexLess> buckets;
    for (const auto& t : f.terms()) {
        Monomial rem, quo;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            rem[i] = static_cast<std::uint32_t>(t.mono[i] % q);
            quo[i] = static_cast<std::uint32_t>(t.mono[i] / q);
        }
        // Coefficients are fixed by Frobenius on F_p, so c x^{q*quo} = (c x^quo)^q.
        buckets[rem].push_back({quo, t.coeff});
    }
    std::map<Monomial, FpPoly, GrlexLess> out;
    for (auto& [e, terms] : buckets) out.emplace(e, FpPoly(f.ring(), std::move(terms)));
    return out;
}

std::map<Monomial, FpPoly, GrlexLess> p_basis_decompose(const FpPoly& f) { return p_basis_decompose(f, f.p()); }

FpPoly p_basis_recompose(const RingPtr& ring, const std::map<Monomial, FpPoly, GrlexLess>& parts, std::uint64_t q) {
    FpPoly out(ring);
    for (const auto& [e, g] : parts) out += pow(g, q).times_monomial(e);
    return out;
}

FpPoly derivative(const FpPoly& f, std::size_t var) {
    std::vector<FpPoly::Term> terms;
    for (const auto& t : f.terms()) {
        auto e = t.mono[var];
        if (e % f.p() == 0) continue;
        Monomial m = t.mono;
        m[var] -= 1;
        terms.push_back({m, f.ring()->field().mul(t.coeff, e % f.p())});
    }
    return FpPoly(f.ring(), std::move(terms));
}

FpPoly substitute(const FpPoly& f, std::span<const FpPoly> values) {
    if (values.size() < f.nvars()) throw InputError("substitute: not enough values");
    if (values.empty()) {
        throw InputError("substitute: no target ring");
    }
    const auto& target = values.front().ring();
    // Power cache per variable.
    std::vector<std::map<std::uint32_t, FpPoly>> cache(f.nvars());
    auto power = [&](std::size_t i, std::uint32_t e) -> const FpPoly& {
        auto it = cache[i].find(e);
        if (it != cache[i].end()) return it->second;
        return cache[i].emplace(e, pow(values[i], e)).first->second;
    };
    FpPoly out(target);
    for (const auto& t : f.terms()) {
        FpPoly term = FpPoly::constant(target, t.coeff);
        for (std::size_t i = 0; i < f.nvars() && !term.is_zero(); ++i)
            if (t.mono[i]) term = term * power(i, t.mono[i]);
        out += term;
    }
    return out;
}

std::optional<FpPoly> divide_exact(const FpPoly& g, const FpPoly& h) {
    if (h.is_zero()) throw InputError("division by zero polynomial");
    const auto& k = g.ring()->field();
    const auto& lead = h.leading_term();
    const auto lead_inv = k.inv(lead.coeff);
    FpPoly rem = g;
    FpPoly quo(g.ring());
    while (!rem.is_zero()) {
        const auto& t = rem.leading_term();
        if (!lead.mono.divides(t.mono)) return std::nullopt;
        auto m = t.mono / lead.mono;
        auto c = k.mul(t.coeff, lead_inv);
        quo += FpPoly::monomial(g.ring(), m, c);
        rem -= h.times_monomial(m, c);
    }
    return quo;
}

namespace {

void enumerate_degree(std::size_t nvars, std::uint64_t deg, std::size_t pos, Monomial& cur,
                      std::vector<Monomial>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = static_cast<std::uint32_t>(deg);
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (std::uint64_t e = deg + 1; e-- > 0;) {
        cur[pos] = static_cast<std::uint32_t>(e);
        enumerate_degree(nvars, deg - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t deg) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (deg == 0) out.emplace_back();
        return out;
    }
    Monomial cur;
    enumerate_degree(nvars, deg, 0, cur, out);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
   public:
    Parser(std::string_view text, const RingPtr& ring) : s_(text), ring_(ring) {}

    FpPoly parse() {
        auto r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_factor() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
    }

    FpPoly expr() {
        FpPoly acc(ring_);
        bool negate = false;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            negate = true;
        }
        for (;;) {
            auto t = term();
            acc += negate ? -t : t;
            if (peek('+')) {
                ++pos_;
                negate = false;
            } else if (peek('-')) {
                ++pos_;
                negate = true;
            } else {
                break;
            }
        }
        return acc;
    }

    FpPoly term() {
        FpPoly acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    FpPoly factor() {
        FpPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected a non-negative integer exponent");
            std::uint64_t e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
                if (e > (1u << 20)) fail("exponent too large");
            }
            base = pow(base, e);
        }
        return base;
    }

    FpPoly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = (v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0')) % ring_->p();
            return FpPoly::constant(ring_, static_cast<std::int64_t>(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            auto name = s_.substr(start, pos_ - start);
            auto idx = ring_->index_of(name);
            if (!idx) throw InputError("unknown variable '" + std::string(name) + "'");
            return FpPoly::variable(ring_, *idx);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

FpPoly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

std::vector<std::string> collect_variables(std::string_view text) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
            names.emplace(text.substr(start, i - start));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        } else {
            ++i;
        }
    }
    return {names.begin(), names.end()};
}

// ---------------------------------------------------------------- quotients

HypersurfaceRing::HypersurfaceRing(FpPoly f) : ambient_(f.ring()), f_(std::move(f)) {}

HypersurfaceRing::HypersurfaceRing(RingPtr ambient, FpPoly f) : ambient_(std::move(ambient)), f_(std::move(f)) {
    if (!same_ring(ambient_, f_.ring())) throw InputError("equation does not live in the ambient ring");
}

FpPoly HypersurfaceRing::reduce(const FpPoly& g) const {
    if (!same_ring(ambient_, g.ring())) throw InputError("ambient ring mismatch");
    if (f_.is_zero() || g.is_zero()) return g;
    const auto& k = ambient_->field();
    const auto& lead = f_.leading_term();
    const auto lead_inv = k.inv(lead.coeff);
    // Work from the largest term down; each step only introduces smaller terms.
    std::map<Monomial, std::uint32_t, GrlexLess> work;
    for (const auto& t : g.terms()) work.emplace(t.mono, t.coeff);
    std::vector<FpPoly::Term> done;
    while (!work.empty()) {
        auto it = std::prev(work.end());
        auto [m, c] = *it;
        work.erase(it);
        if (!lead.mono.divides(m)) {
            done.push_back({m, c});
            continue;
        }
        auto q = m / lead.mono;
        auto scale = k.mul(c, lead_inv);
        for (const auto& t : f_.terms().subspan(1)) {
            auto mm = t.mono * q;
            auto& slot = work[mm];
            slot = k.sub(slot, k.mul(scale, t.coeff));
            if (!slot) work.erase(mm);
        }
    }
    return FpPoly(ambient_, std::move(done));
}

std::vector<Monomial> HypersurfaceRing::standard_monomials(std::uint64_t deg) const {
    auto all = monomials_of_degree(ambient_->nvars(), deg);
    if (f_.is_zero()) return all;
    std::vector<Monomial> out;
    for (const auto& m : all)
        if (!f_.leading_term().mono.divides(m)) out.push_back(m);
    return out;
}

std::optional<FpPoly> HypersurfaceRing::pth_root(const FpPoly& g) const {
    const auto p = ambient_->p();
    auto target = reduce(g);
    if (target.is_zero()) return FpPoly(ambient_);
    if (!f_.is_zero() && !f_.is_homogeneous()) {
        // Bound the root degree by the degree of the tested element.
        std::vector<Monomial> candidates;
        for (std::uint64_t d = 0; d <= static_cast<std::uint64_t>(target.degree()); ++d)
            for (const auto& m : monomials_of_degree(ambient_->nvars(), d)) candidates.push_back(m);
        std::vector<FpPoly> images;
        std::set<Monomial, GrlexLess> support(GrlexLess{});
        for (const auto& t : target.terms()) support.insert(t.mono);
        for (const auto& m : candidates) {
            images.push_back(reduce(FpPoly::monomial(ambient_, m.scaled(p))));
            for (const auto& t : images.back().terms()) support.insert(t.mono);
        }
        std::vector<Monomial> rows(support.begin(), support.end());
        auto a = linalg::columns_from_polys(p, rows, images);
        std::vector<FpPoly> tv{target};
        auto b = linalg::columns_from_polys(p, rows, tv);
        std::vector<std::uint32_t> rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = b.at(r, 0);
        auto x = linalg::solve(a, rhs);
        if (!x) return std::nullopt;
        FpPoly root(ambient_);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if ((*x)[i]) root += FpPoly::monomial(ambient_, candidates[i], (*x)[i]);
        return root;
    }
    // Graded case: each homogeneous part of degree k*p must be the p-th power
    // of a form of degree k.
    FpPoly root(ambient_);
    std::set<std::uint64_t> degrees;
    for (const auto& t : target.terms()) degrees.insert(t.mono.degree());
    for (auto deg : degrees) {
        if (deg % p) return std::nullopt;
        auto part = target.homogeneous_part(deg);
        auto candidates = monomials_of_degree(ambient_->nvars(), deg / p);
        std::vector<FpPoly> images;
        for (const auto& m : candidates) images.push_back(reduce(FpPoly::monomial(ambient_, m.scaled(p))));
        auto rows = standard_monomials(deg);
        auto a = linalg::columns_from_polys(p, rows, images);
        std::vector<FpPoly> tv{part};
        auto b = linalg::columns_from_polys(p, rows, tv);
        std::vector<std::uint32_t> rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = b.at(r, 0);
        auto x = linalg::solve(a, rhs);
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if ((*x)[i]) root += FpPoly::monomial(ambient_, candidates[i], (*x)[i]);
    }
    return root;
}

FpPoly reduce_mod_f(const FpPoly& g, const HypersurfaceRing& ring) { return ring.reduce(g); }

}  // namespace frobsplit
