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

#include "frobsplit/zpoly.hpp"

#include <sstream>
#include <unordered_map>

namespace frobsplit {

ZPoly ZPoly::constant(const mpz_class& c) {
    ZPoly r;
    if (c != 0) r.terms_.emplace(Monomial{}, c);
    return r;
}

ZPoly ZPoly::variable(std::size_t i) {
    if (i >= kMaxVars) throw InternalError("ZPoly::variable: index out of range");
    Monomial m;
    m[i] = 1;
    ZPoly r;
    r.terms_.emplace(m, 1);
    return r;
}

ZPoly ZPoly::lift(const FpPoly& f) {
    ZPoly r;
    for (const auto& t : f.terms()) r.terms_.emplace(t.mono, t.coeff);
    return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(m, c);
        if (fresh) continue;
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) { return *this += -o; }

ZPoly ZPoly::operator-() const { return scaled(-1); }

ZPoly ZPoly::scaled(const mpz_class& c) const {
    ZPoly r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
    return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    ZPoly r;
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.emplace(m, std::move(c));
    return r;
}

ZPoly ZPoly::divided_exactly(const mpz_class& d) const {
    ZPoly r;
    for (const auto& [m, c] : terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw InternalError("integer polynomial division is not exact");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        r.terms_.emplace_hint(r.terms_.end(), m, std::move(q));
    }
    return r;
}

bool ZPoly::divisible_by(const mpz_class& m) const {
    for (const auto& [mono, c] : terms_)
        if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) return false;
    return true;
}

FpPoly ZPoly::reduce(const RingPtr& ring) const {
    std::vector<FpPoly::Term> out;
    const mpz_class p = ring->p();
    for (const auto& [m, c] : terms_) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        if (r != 0) out.push_back({m, static_cast<std::uint32_t>(r.get_ui())});
    }
    return FpPoly(ring, std::move(out));
}

std::string ZPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpz_class mag = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        bool wrote = false;
        if (mag != 1 || m.is_one()) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (!m[i]) continue;
            if (wrote) os << '*';
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (m[i] > 1) os << '^' << m[i];
            wrote = true;
        }
    }
    return os.str();
}

ZPoly pow(const ZPoly& f, std::uint64_t e) {
    ZPoly result = ZPoly::constant(1);
    ZPoly base = f;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

}  // namespace frobsplit
