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

#include "frobsplit/derham.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <tuple>

#include "frobsplit/linalg.hpp"
#include "frobsplit/sampling.hpp"

namespace frobsplit {

namespace {

using linalg::FpMatrix;

unsigned popcount(std::uint32_t m) { return static_cast<unsigned>(std::popcount(m)); }

bool odd_below(std::uint32_t mask, std::size_t j) { return popcount(mask & ((1u << j) - 1)) % 2 == 1; }

// dx_S ^ dx_T = (-1)^{#{(s, t) : s > t}} dx_{S u T}.
bool odd_shuffle(std::uint32_t s, std::uint32_t t) {
    unsigned inversions = 0;
    for (std::size_t j = 0; j < kMaxVars; ++j)
        if ((t >> j) & 1) inversions += popcount(s >> (j + 1));
    return inversions % 2 == 1;
}

Monomial indicator(std::uint32_t mask) {
    Monomial m;
    for (std::size_t j = 0; j < kMaxVars; ++j) m[j] = (mask >> j) & 1;
    return m;
}

std::size_t rank_of(const FpMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : linalg::rank(m); }

// Forms of one multidegree M: x^{M-1_T} dx_T for T inside the support of M.
class Block {
   public:
    Block(const Multidegree& m, std::size_t nvars, std::uint32_t p) : m_(m), nvars_(nvars), p_(p) {
        for (std::size_t j = 0; j < nvars; ++j)
            if (m[j] > 0) support_ |= 1u << j;
    }

    std::vector<std::uint32_t> masks(unsigned i) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t t = 0; t < (1u << nvars_); ++t)
            if ((t & ~support_) == 0 && popcount(t) == i) out.push_back(t);
        return out;
    }

    /// d: Omega^i_M -> Omega^{i+1}_M.
    FpMatrix differential(unsigned i) const {
        auto cols = masks(i);
        auto rows = masks(i + 1);
        FpMatrix out(p_, rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t j = 0; j < nvars_; ++j) {
                if (!((support_ >> j) & 1) || ((cols[c] >> j) & 1)) continue;
                std::uint32_t v = m_[j] % p_;
                if (!v) continue;
                if (odd_below(cols[c], j)) v = p_ - v;
                auto r = std::find(rows.begin(), rows.end(), cols[c] | (1u << j)) - rows.begin();
                out.at(static_cast<std::size_t>(r), c) = v;
            }
        }
        return out;
    }

    std::vector<std::uint32_t> coords(unsigned i, const std::map<std::uint32_t, std::uint32_t>& terms) const {
        auto ms = masks(i);
        std::vector<std::uint32_t> v(ms.size(), 0);
        for (const auto& [t, c] : terms) {
            auto it = std::find(ms.begin(), ms.end(), t);
            if (it == ms.end()) throw InternalError("form term outside its multidegree block");
            v[static_cast<std::size_t>(it - ms.begin())] = c;
        }
        return v;
    }

    bool exact(unsigned i, std::span<const std::uint32_t> v) const {
        bool zero = std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
        if (zero) return true;
        if (i == 0) return false;
        auto dm = differential(i - 1);
        if (dm.cols() == 0) return false;
        return linalg::solve(dm, v).has_value();
    }

    std::size_t cohomology_dimension(unsigned i) const {
        auto dim = masks(i).size();
        auto out_rank = rank_of(differential(i));
        auto in_rank = i == 0 ? 0 : rank_of(differential(i - 1));
        return dim - out_rank - in_rank;
    }

   private:
    Multidegree m_;
    std::size_t nvars_;
    std::uint32_t p_;
    std::uint32_t support_ = 0;
};

Block block_of(const RingPtr& ring, const Multidegree& m) { return Block(m, ring->nvars(), ring->p()); }

// eta with cartier_inverse(eta) the cohomology basis classes of the block.
std::vector<DifferentialForm> class_sources(const RingPtr& ring, unsigned i, const Multidegree& m) {
    const auto p = ring->p();
    std::vector<DifferentialForm> out;
    if (!m.all_divisible_by(p)) return out;
    Monomial base;
    for (std::size_t j = 0; j < ring->nvars(); ++j) base[j] = m[j] / p;
    for (auto t : block_of(ring, m).masks(i))
        out.push_back(DifferentialForm::basic(FpPoly::monomial(ring, base / indicator(t)), t));
    return out;
}

void run_guarded(std::size_t count, const auto& body) {
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < count; ++k) {
        try {
            body(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

// ---------------------------------------------------------------------------
// DifferentialForm

DifferentialForm::DifferentialForm(RingPtr ring, unsigned degree) : ring_(std::move(ring)), degree_(degree) {}

DifferentialForm DifferentialForm::function(const FpPoly& a) { return basic(a, 0); }

DifferentialForm DifferentialForm::basic(const FpPoly& a, std::uint32_t mask) {
    if (mask >> a.nvars()) throw InputError("dx index outside the ambient variables");
    DifferentialForm w(a.ring(), popcount(mask));
    w.add_term(mask, a);
    return w;
}

DifferentialForm DifferentialForm::dx(const RingPtr& ring, std::size_t j) {
    return basic(FpPoly::constant(ring, 1), 1u << j);
}

FpPoly DifferentialForm::coefficient(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? FpPoly(ring_) : it->second;
}

std::int64_t DifferentialForm::total_degree() const {
    std::int64_t out = -1;
    for (const auto& [t, a] : terms_) out = std::max<std::int64_t>(out, a.degree() + popcount(t));
    return out;
}

void DifferentialForm::check_compatible(const DifferentialForm& o) const {
    if (!(*ring_ == *o.ring_)) throw InputError("forms over different rings");
    if (degree_ != o.degree_) throw InputError("forms of different degrees");
}

void DifferentialForm::add_term(std::uint32_t mask, const FpPoly& a) {
    if (a.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero()) terms_.erase(it);
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
    check_compatible(o);
    for (const auto& [t, a] : o.terms_) add_term(t, a);
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) { return *this += -o; }

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm out(ring_, degree_);
    for (const auto& [t, a] : terms_) out.terms_.emplace(t, -a);
    return out;
}

DifferentialForm DifferentialForm::scaled(std::uint32_t c) const {
    DifferentialForm out(ring_, degree_);
    for (const auto& [t, a] : terms_) out.add_term(t, a.scaled(c));
    return out;
}

DifferentialForm operator*(const FpPoly& a, const DifferentialForm& w) {
    if (!(*a.ring() == *w.ring())) throw InputError("function and form over different rings");
    DifferentialForm out(w.ring(), w.degree());
    for (const auto& [t, b] : w.terms()) out.add_term(t, a * b);
    return out;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return *a.ring_ == *b.ring_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::map<Multidegree, std::map<std::uint32_t, std::uint32_t>, GrlexLess> DifferentialForm::by_multidegree() const {
    std::map<Multidegree, std::map<std::uint32_t, std::uint32_t>, GrlexLess> out;
    for (const auto& [t, a] : terms_) {
        auto shift = indicator(t);
        for (const auto& term : a.terms()) out[term.mono * shift][t] = term.coeff;
    }
    return out;
}

std::string DifferentialForm::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [t, a] : terms_) {
        if (!out.empty()) out += " + ";
        if (t == 0) {
            out += a.to_string();
            continue;
        }
        std::string dxs;
        for (std::size_t j = 0; j < ring_->nvars(); ++j) {
            if (!((t >> j) & 1)) continue;
            if (!dxs.empty()) dxs += "^";
            dxs += "d" + ring_->vars()[j];
        }
        auto c = a.to_string();
        out += c == "1" ? dxs : "(" + c + ")*" + dxs;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calculus

DifferentialForm d(const DifferentialForm& w) {
    DifferentialForm out(w.ring(), w.degree() + 1);
    for (const auto& [t, a] : w.terms()) {
        for (std::size_t j = 0; j < w.ring()->nvars(); ++j) {
            if ((t >> j) & 1) continue;
            auto da = derivative(a, j);
            if (da.is_zero()) continue;
            if (odd_below(t, j)) da = -da;
            out += DifferentialForm::basic(da, t | (1u << j));
        }
    }
    return out;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    if (!(*a.ring() == *b.ring())) throw InputError("forms over different rings");
    DifferentialForm out(a.ring(), a.degree() + b.degree());
    for (const auto& [s, f] : a.terms()) {
        for (const auto& [t, g] : b.terms()) {
            if (s & t) continue;
            auto c = f * g;
            if (odd_shuffle(s, t)) c = -c;
            out += DifferentialForm::basic(c, s | t);
        }
    }
    return out;
}

bool is_closed(const DifferentialForm& w) { return d(w).is_zero(); }

bool is_exact(const DifferentialForm& w) {
    for (const auto& [m, terms] : w.by_multidegree()) {
        auto b = block_of(w.ring(), m);
        if (!b.exact(w.degree(), b.coords(w.degree(), terms))) return false;
    }
    return true;
}

std::vector<DifferentialForm> monomial_forms(const RingPtr& ring, unsigned i, std::uint64_t total) {
    std::vector<DifferentialForm> out;
    if (total < i) return out;
    const auto monos = monomials_of_degree(ring->nvars(), total - i);
    for (std::uint32_t t = 0; t < (1u << ring->nvars()); ++t) {
        if (popcount(t) != i) continue;
        for (const auto& m : monos) out.push_back(DifferentialForm::basic(FpPoly::monomial(ring, m), t));
    }
    return out;
}

DifferentialForm cartier_inverse(const DifferentialForm& eta) {
    const auto p = eta.ring()->p();
    DifferentialForm out(eta.ring(), eta.degree());
    for (const auto& [t, a] : eta.terms())
        out += DifferentialForm::basic(frobenius(a).times_monomial(indicator(t).scaled(p - 1)), t);
    return out;
}

DifferentialForm cartier(const DifferentialForm& w) {
    if (!is_closed(w)) throw InputError("the Cartier operator needs a closed form");
    const auto& ring = w.ring();
    const unsigned i = w.degree();
    GradedCohomologyBasis basis(ring);
    DifferentialForm out(ring, i);
    for (const auto& [m, terms] : w.by_multidegree()) {
        auto b = block_of(ring, m);
        auto v = b.coords(i, terms);
        auto sources = class_sources(ring, i, m);
        auto dm = i == 0 ? FpMatrix(ring->p(), v.size(), 0) : b.differential(i - 1);
        FpMatrix a(ring->p(), v.size(), sources.size() + dm.cols());
        for (std::size_t k = 0; k < sources.size(); ++k) {
            auto cls = cartier_inverse(sources[k]).by_multidegree();
            auto col = b.coords(i, cls.at(m));
            for (std::size_t r = 0; r < v.size(); ++r) a.at(r, k) = col[r];
        }
        for (std::size_t r = 0; r < v.size(); ++r)
            for (std::size_t c = 0; c < dm.cols(); ++c) a.at(r, sources.size() + c) = dm.at(r, c);
        auto x = linalg::solve(a, v);
        if (!x) throw InternalError("closed form outside cohomology basis plus exact forms");
        for (std::size_t k = 0; k < sources.size(); ++k)
            if ((*x)[k]) out += sources[k].scaled((*x)[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology basis

GradedCohomologyBasis::GradedCohomologyBasis(RingPtr ring) : ring_(std::move(ring)) {}

std::vector<DifferentialForm> GradedCohomologyBasis::classes(unsigned i, const Multidegree& m) const {
    std::vector<DifferentialForm> out;
    for (const auto& eta : class_sources(ring_, i, m)) out.push_back(cartier_inverse(eta));
    return out;
}

std::size_t GradedCohomologyBasis::cohomology_dimension(unsigned i, const Multidegree& m) const {
    return block_of(ring_, m).cohomology_dimension(i);
}

bool GradedCohomologyBasis::verify(unsigned i, const Multidegree& m) const {
    auto cls = classes(i, m);
    if (cls.size() != cohomology_dimension(i, m)) return false;
    if (cls.empty()) return true;
    auto b = block_of(ring_, m);
    const auto rows = b.masks(i).size();
    auto dm = i == 0 ? FpMatrix(ring_->p(), rows, 0) : b.differential(i - 1);
    FpMatrix a(ring_->p(), rows, cls.size() + dm.cols());
    for (std::size_t k = 0; k < cls.size(); ++k) {
        if (!is_closed(cls[k])) return false;
        auto parts = cls[k].by_multidegree();
        if (parts.size() != 1 || !(parts.begin()->first == m)) return false;
        auto col = b.coords(i, parts.begin()->second);
        for (std::size_t r = 0; r < rows; ++r) a.at(r, k) = col[r];
    }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < dm.cols(); ++c) a.at(r, cls.size() + c) = dm.at(r, c);
    return rank_of(a) - rank_of(dm) == cls.size();
}

// ---------------------------------------------------------------------------
// Frobenius lifts

FrobeniusLift FrobeniusLift::canonical(const RingPtr& ring) {
    return FrobeniusLift{ring, std::vector<FpPoly>(ring->nvars(), FpPoly(ring))};
}

DifferentialForm FrobeniusLift::zeta(std::size_t j) const {
    if (corrections.size() != ring->nvars()) throw InputError("lift needs one correction per variable");
    auto xj = FpPoly::variable(ring, j);
    return DifferentialForm::basic(pow(xj, ring->p() - 1), 1u << j) + d(DifferentialForm::function(corrections[j]));
}

DifferentialForm lift_zeta(const FrobeniusLift& lift, const DifferentialForm& eta) {
    if (!(*lift.ring == *eta.ring())) throw InputError("lift and form over different rings");
    std::vector<DifferentialForm> zetas;
    for (std::size_t j = 0; j < lift.ring->nvars(); ++j) zetas.push_back(lift.zeta(j));
    DifferentialForm out(eta.ring(), eta.degree());
    for (const auto& [t, a] : eta.terms()) {
        auto w = DifferentialForm::function(frobenius(a));
        for (std::size_t j = 0; j < lift.ring->nvars(); ++j)
            if ((t >> j) & 1) w = wedge(w, zetas[j]);
        out += w;
    }
    return out;
}

std::optional<DifferentialForm> lift_preimage(const FrobeniusLift& lift, const DifferentialForm& w,
                                              std::uint64_t source_cap) {
    const auto& ring = w.ring();
    const unsigned i = w.degree();
    using Coords = std::map<Multidegree, std::map<std::uint32_t, std::uint32_t>, GrlexLess>;

    std::vector<DifferentialForm> sources;
    for (std::uint64_t s = 0; s <= source_cap; ++s)
        for (auto& f : monomial_forms(ring, i, s)) sources.push_back(std::move(f));
    std::vector<Coords> images;
    for (const auto& f : sources) images.push_back(lift_zeta(lift, f).by_multidegree());
    auto target = w.by_multidegree();

    std::map<Multidegree, std::map<std::uint32_t, linalg::SparseEliminator::Row>, GrlexLess> rows;
    auto touch = [&](const Coords& c) {
        for (const auto& [m, terms] : c)
            for (const auto& [t, v] : terms) rows[m][t];
    };
    touch(target);
    for (const auto& img : images) touch(img);

    for (std::size_t k = 0; k < images.size(); ++k)
        for (const auto& [m, terms] : images[k])
            for (const auto& [t, v] : terms) rows[m][t].emplace_back(static_cast<std::uint32_t>(k), v);

    std::size_t col = sources.size();
    if (i > 0) {
        for (auto& [m, block_rows] : rows) {
            auto b = block_of(ring, m);
            auto targets = b.masks(i);
            auto dm = b.differential(i - 1);
            for (std::size_t c = 0; c < dm.cols(); ++c, ++col)
                for (std::size_t r = 0; r < dm.rows(); ++r)
                    if (dm.at(r, c)) block_rows[targets[r]].emplace_back(static_cast<std::uint32_t>(col), dm.at(r, c));
        }
    }

    linalg::SparseEliminator el(ring->p(), col);
    for (auto& [m, block_rows] : rows) {
        for (auto& [t, row] : block_rows) {
            std::uint32_t rhs = 0;
            if (auto it = target.find(m); it != target.end())
                if (auto jt = it->second.find(t); jt != it->second.end()) rhs = jt->second;
            el.add_row(std::move(row), rhs);
        }
    }
    auto x = el.solve();
    if (!x) return std::nullopt;
    DifferentialForm out(ring, i);
    for (std::size_t k = 0; k < sources.size(); ++k)
        if ((*x)[k]) out += sources[k].scaled((*x)[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Total splitting

bool TotalSplittingReport::ok() const {
    if (!basis_verified) return false;
    return std::all_of(bidegrees.begin(), bidegrees.end(),
                       [](const auto& b) { return b.bijective() && b.cocycles && b.induces_cartier; });
}

TotalSplittingReport verify_total_splitting(const FrobeniusLift& lift, std::uint64_t degree_cap) {
    const auto& ring = lift.ring;
    const auto p = ring->p();
    const auto nvars = ring->nvars();
    if (nvars > 3) throw InputError("total splitting check supports at most 3 variables");
    if (degree_cap < p) throw BoundError("degree cap " + std::to_string(degree_cap) + " is below p");
    if (lift.corrections.size() != nvars) throw InputError("lift needs one correction per variable");

    TotalSplittingReport rep;
    rep.p = p;
    rep.nvars = nvars;
    rep.degree_cap = degree_cap;
    for (unsigned i = 0; i <= nvars; ++i)
        for (std::uint64_t t = 0; t <= degree_cap; ++t) rep.bidegrees.push_back(BidegreeReport{i, t});

    std::vector<char> verified(rep.bidegrees.size(), 1);
    GradedCohomologyBasis basis(ring);
    run_guarded(rep.bidegrees.size(), [&](std::size_t k) {
        auto& b = rep.bidegrees[k];
        for (const auto& m : monomials_of_degree(nvars, b.t)) {
            b.cohomology_dim += basis.cohomology_dimension(b.i, m);
            if (!basis.verify(b.i, m)) verified[k] = 0;
        }
        if (b.t % p != 0) return;
        auto sources = monomial_forms(ring, b.i, b.t / p);
        b.source_dim = sources.size();
        std::map<std::pair<std::uint32_t, Monomial::Exponents>, std::size_t> index;
        std::vector<DifferentialForm> classes;
        for (const auto& eta : sources) {
            auto phi = lift_zeta(lift, eta);
            if (!is_closed(phi)) {
                b.cocycles = false;
                b.induces_cartier = false;
                continue;
            }
            auto c = cartier(phi);
            if (!(c == eta)) b.induces_cartier = false;
            for (const auto& [t, a] : c.terms())
                for (const auto& term : a.terms()) index.try_emplace({t, term.mono.exponents()}, index.size());
            classes.push_back(std::move(c));
        }
        FpMatrix mat(p, index.size(), classes.size());
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (const auto& [t, a] : classes[c].terms())
                for (const auto& term : a.terms()) mat.at(index.at({t, term.mono.exponents()}), c) = term.coeff;
        b.image_rank = rank_of(mat);
    });
    rep.basis_verified = std::all_of(verified.begin(), verified.end(), [](char v) { return v != 0; });
    return rep;
}

// ---------------------------------------------------------------------------
// Composite through an F-splitting

namespace {

// F_*O (x) F_*Omega^i over R^(1), free on x^e (x) - with e in {0..p-1}^d.
using ScalarExtended = std::map<Monomial, DifferentialForm, GrlexLess>;

ScalarExtended extend_scalars(const DifferentialForm& w) {
    ScalarExtended out;
    out.emplace(Monomial{}, w);
    return out;
}

std::optional<ScalarExtended> invert_on_cohomology(const FrobeniusLift& lift, const ScalarExtended& x,
                                                   std::uint64_t source_cap) {
    ScalarExtended out;
    for (const auto& [e, w] : x) {
        auto u = lift_preimage(lift, w, source_cap);
        if (!u) return std::nullopt;
        out.emplace(e, std::move(*u));
    }
    return out;
}

DifferentialForm contract(const std::map<Monomial, FpPoly, GrlexLess>& tau_on_box, const ScalarExtended& x,
                          const RingPtr& ring, unsigned degree) {
    DifferentialForm out(ring, degree);
    for (const auto& [e, u] : x) out += tau_on_box.at(e) * u;
    return out;
}

std::vector<Monomial> box(std::size_t nvars, std::uint32_t p) {
    std::vector<Monomial> out{Monomial{}};
    for (std::size_t j = 0; j < nvars; ++j) {
        std::vector<Monomial> next;
        for (const auto& m : out) {
            for (std::uint32_t a = 0; a < p; ++a) {
                auto n = m;
                n[j] = a;
                next.push_back(n);
            }
        }
        out = std::move(next);
    }
    return out;
}

void check_tau(const SplittingCandidate& tau, const FrobeniusLift& lift) {
    if (tau.ring()->is_quotient() || !(*tau.ring()->ambient() == *lift.ring))
        throw InputError("splitting and lift must live on the same polynomial ring");
    if (tau.length() != 1) throw InputError("the composite needs a splitting of F_*O (length 1)");
}

}  // namespace

bool CompositeReport::induces_cartier() const {
    return !degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [](const auto& g) {
               return g.classes > 0 && g.matches == g.classes;
           });
}

bool CompositeReport::induces_cartier_in(unsigned i) const {
    for (const auto& g : degrees)
        if (g.i == i) return g.classes > 0 && g.matches == g.classes;
    return false;
}

CompositeReport composite_on_cohomology(const SplittingCandidate& tau, const FrobeniusLift& lift,
                                        std::uint64_t degree_cap, std::uint64_t seed) {
    check_tau(tau, lift);
    const auto& ring = lift.ring;
    const auto p = ring->p();
    if (degree_cap < p) throw BoundError("degree cap " + std::to_string(degree_cap) + " is below p");

    std::map<Monomial, FpPoly, GrlexLess> tau_on_box;
    for (const auto& e : box(ring->nvars(), p))
        tau_on_box.insert_or_assign(e, tau.apply(WittVector::teichmuller(FpPoly::monomial(ring, e), 1)));

    CompositeReport rep;
    rep.degree_cap = degree_cap;
    rep.unit_value = tau_on_box.at(Monomial{}).coefficient(Monomial{});
    PolySampler sampler(ring, seed);
    const auto source_cap = degree_cap / p;
    for (unsigned i = 0; i <= ring->nvars(); ++i) {
        CompositeDegree g;
        g.i = i;
        for (std::uint64_t s = 0; s <= source_cap; ++s) {
            for (const auto& eta : monomial_forms(ring, i, s)) {
                // A non-canonical representative of the class C^{-1}(eta).
                auto beta = cartier_inverse(eta);
                if (i > 0) {
                    DifferentialForm xi(ring, i - 1);
                    for (const auto& f : monomial_forms(ring, i - 1, i - 1))
                        xi += sampler.poly(3, p * s) * f;
                    beta += d(xi);
                }
                auto inverted = invert_on_cohomology(lift, extend_scalars(beta), source_cap);
                ++g.classes;
                if (!inverted) continue;
                auto out = contract(tau_on_box, *inverted, ring, i);
                if (out == eta) ++g.matches;
                if (out.is_zero()) ++g.zeros;
            }
        }
        rep.degrees.push_back(g);
    }
    return rep;
}

CompositeReport fsplit_composite(const SplittingCandidate& tau, const FrobeniusLift& lift,
                                 std::uint64_t degree_cap, std::uint64_t seed) {
    check_tau(tau, lift);
    if (!verify_witness(tau).ok()) throw InputError("tau is not a verified splitting");
    return composite_on_cohomology(tau, lift, degree_cap, seed);
}

SplittingCandidate drop_unit(const SplittingCandidate& tau) {
    auto values = tau.values();
    values.erase(BasisKey{0, Monomial{}});
    return SplittingCandidate(tau.ring(), tau.length(), tau.degree_bound(), std::move(values));
}

// ---------------------------------------------------------------------------
// Base change along F_* W_n(O)/p

bool BaseChangeReport::ok() const {
    if (!module_linear || rows.empty()) return false;
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) {
        return r.complex_rank == r.forms_rank && r.image_rank == r.forms_rank;
    });
}

BaseChangeReport witt_basechange_check(const RingPtr& ring, std::size_t n, std::uint64_t degree_cap,
                                       std::uint64_t seed) {
    const auto p = ring->p();
    const auto nvars = ring->nvars();
    if (nvars > 2) throw InputError("base change check supports at most 2 variables");
    if (n < 1 || n > 2) throw InputError("base change check supports Witt length 1 or 2");
    if (degree_cap < p) throw BoundError("degree cap " + std::to_string(degree_cap) + " is below p");

    WnModPModuleBasis basis(ring, n);
    const auto entries = basis.entries();
    const auto lift = FrobeniusLift::canonical(ring);

    BaseChangeReport rep;
    rep.p = p;
    rep.n = n;
    rep.nvars = nvars;
    rep.degree_cap = degree_cap;
    rep.basis_cardinality = basis.cardinality();

    // dim H^i(F_*Omega) in total degree t.
    std::vector<std::vector<std::size_t>> h(nvars + 1, std::vector<std::size_t>(degree_cap + 1, 0));
    GradedCohomologyBasis cohomology(ring);
    for (unsigned i = 0; i <= nvars; ++i)
        for (std::uint64_t t = 0; t <= degree_cap; ++t)
            for (const auto& m : monomials_of_degree(nvars, t)) h[i][t] += cohomology.cohomology_dimension(i, m);

    auto shifted = [&](const BasisKey& k, std::uint64_t t) {
        auto g = basis.grade(k);
        return Grade::make(p * g.num + t * g.den, g.den);
    };
    auto within = [&](const Grade& g) { return g.num <= degree_cap * g.den; };

    std::map<std::pair<unsigned, Grade>, BaseChangeRow> rows;
    auto row = [&](unsigned i, const Grade& g) -> BaseChangeRow& {
        auto [it, fresh] = rows.try_emplace({i, g});
        if (fresh) {
            it->second.i = i;
            it->second.degree = g;
        }
        return it->second;
    };

    // Images b (x) lift_zeta(eta), grouped by row; coordinates of their
    // classes are (entry, dx mask, monomial).
    using Coord = std::tuple<std::size_t, std::uint32_t, Monomial::Exponents>;
    std::map<std::pair<unsigned, Grade>, std::vector<std::map<Coord, std::uint32_t>>> images;

    for (std::size_t k = 0; k < entries.size(); ++k) {
        for (unsigned i = 0; i <= nvars; ++i) {
            for (std::uint64_t t = 0; t <= degree_cap; ++t) {
                auto g = shifted(entries[k], t);
                if (!within(g)) break;
                if (h[i][t]) row(i, g).complex_rank += h[i][t];
                if (t % p != 0) continue;
                for (const auto& eta : monomial_forms(ring, i, t / p)) {
                    ++row(i, g).forms_rank;
                    std::map<Coord, std::uint32_t> col;
                    const auto cls = cartier(lift_zeta(lift, eta));
                    for (const auto& [mask, a] : cls.terms())
                        for (const auto& term : a.terms()) col[{k, mask, term.mono.exponents()}] = term.coeff;
                    images[{i, g}].push_back(std::move(col));
                }
            }
        }
    }

    for (auto& [key, cols] : images) {
        std::map<Coord, std::size_t> index;
        for (const auto& c : cols)
            for (const auto& [coord, v] : c) index.try_emplace(coord, index.size());
        FpMatrix mat(p, index.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [coord, v] : cols[c]) mat.at(index.at(coord), c) = v;
        row(key.first, key.second).image_rank = rank_of(mat);
    }
    for (auto& [key, r] : rows) rep.rows.push_back(r);

    // m . (b (x) Phi(eta)) = sum_b' b' (x) c_b'^p Phi(eta) must equal the image
    // of sum_b' b' (x) c_b' eta.
    PolySampler sampler(ring, seed);
    constexpr std::size_t kSamples = 20;
    for (std::size_t s = 0; s < kSamples; ++s) {
        std::vector<FpPoly> comps;
        for (std::size_t j = 0; j < n; ++j) comps.push_back(sampler.poly(3, 2));
        WittVector m(std::move(comps));
        const auto& k = entries[sampler.uniform(0, entries.size() - 1)];
        auto i = static_cast<unsigned>(sampler.uniform(0, nvars));
        auto forms = monomial_forms(ring, i, i + sampler.uniform(0, 1));
        const auto& eta = forms[sampler.uniform(0, forms.size() - 1)];

        WnModPClass product{witt_mul(m, basis.element(k)), false};
        auto coeffs = express_in_basis(product, basis);
        bool ok = class_equal(recompose(coeffs, basis), product);
        auto phi = lift_zeta(lift, eta);
        for (const auto& [key, c] : coeffs) ok = ok && (frobenius(c) * phi == lift_zeta(lift, c * eta));
        ++rep.linearity_samples;
        rep.module_linear = rep.module_linear && ok;
    }
    return rep;
}

}  // namespace frobsplit
