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

#include "frobsplit/splitting.hpp"

#include <unordered_map>

#include "frobsplit/sampling.hpp"

namespace frobsplit {

namespace {

// Largest projective point set enumerated by the singularity search.
constexpr std::uint64_t kMaxPoints = 20'000'000;

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Monomial all_equal(std::size_t nvars, std::uint32_t e) {
    Monomial m;
    for (std::size_t i = 0; i < nvars; ++i) m[i] = e;
    return m;
}

std::vector<std::string> indexed_names(std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace

std::uint32_t cy_coefficient_criterion(const FpPoly& f) {
    if (f.is_zero() || !f.is_homogeneous()) throw InputError("criterion needs a nonzero homogeneous polynomial");
    if (static_cast<std::size_t>(f.degree()) != f.nvars())
        throw InputError("degree " + std::to_string(f.degree()) + " does not match " + std::to_string(f.nvars()) +
                         " variables");
    return pow(f, f.p() - 1).coefficient(all_equal(f.nvars(), f.p() - 1));
}

bool fedder_membership(const FpPoly& f) {
    const auto p = f.p();
    const auto power = pow(f, p - 1);
    for (const auto& t : power.terms()) {
        bool small = true;
        for (std::size_t i = 0; i < f.nvars(); ++i) small = small && t.mono[i] <= p - 1;
        if (small) return true;
    }
    return false;
}

QuadricReport quadric_sigma(std::size_t n, std::uint32_t p) {
    if (n < 2) throw InputError("quadric needs n >= 2");
    if (n + 1 > kMaxVars) throw InputError("too many variables");
    auto ring = make_ring(p, indexed_names(n + 1));
    auto x = [&](std::size_t i) { return FpPoly::variable(ring, i); };
    FpPoly f(ring), sigma(ring);
    if (p != 2) {
        for (std::size_t i = 0; i <= n; ++i) f += x(i) * x(i);
        Monomial tail;
        for (std::size_t i = 2; i <= n; ++i) tail[i] = p - 1;
        sigma = pow(f, p - 1).times_monomial(tail);
    } else {
        std::size_t start = 0;
        if (n % 2 == 0) {
            f += x(0) * x(0);
            start = 1;
        }
        for (std::size_t i = start; i + 1 <= n; i += 2) f += x(i) * x(i + 1);
        Monomial head;
        for (std::size_t i = 0; i + 2 <= n; ++i) head[i] = 1;
        sigma = f.times_monomial(head);
    }
    auto target = all_equal(n + 1, p - 1);
    auto f_power = pow(f, p - 1);
    std::optional<std::uint32_t> central;
    if (p != 2) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), p - 1, (p - 1) / 2);
        central = static_cast<std::uint32_t>(mpz_class(b % p).get_ui());
    }
    return QuadricReport{
        .p = p,
        .n = n,
        .f = f,
        .sigma = sigma,
        .sigma_degree = static_cast<std::uint64_t>(sigma.degree()),
        .f_power_divides_sigma = divide_exact(sigma, f_power).has_value(),
        .coefficient_in_sigma = sigma.coefficient(target),
        .coefficient_in_f_power = f_power.coefficient(target),
        .central_binomial = central,
        .smooth = is_smooth_hypersurface(f),
    };
}

// ---------------------------------------------------------------------------

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t a, std::uint32_t p, unsigned k) {
    Digits d(k);
    for (unsigned i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint32_t a = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
    return a;
}

// Product of a and b modulo the monic polynomial `modulus` (degree k).
Digits mul_mod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
    const auto k = a.size();
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t deg = 2 * k - 1; deg >= k; --deg) {
        auto c = prod[deg];
        if (!c) continue;
        prod[deg] = 0;
        for (std::size_t i = 0; i < k; ++i) prod[deg - k + i] = (prod[deg - k + i] + (p - c) * modulus[i]) % p;
    }
    Digits out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

// Monic polynomial of degree k <= 3 without roots in F_p, hence irreducible.
Digits irreducible_modulus(std::uint32_t p, unsigned k) {
    const auto count = ipow(p, k);
    for (std::uint64_t code = 0; code < count; ++code) {
        auto low = to_digits(static_cast<std::uint32_t>(code), p, k);
        bool has_root = false;
        for (std::uint32_t t = 0; t < p && !has_root; ++t) {
            std::uint64_t v = 1;  // leading coefficient
            for (unsigned i = k; i-- > 0;) v = (v * t + low[i]) % p;
            has_root = v == 0;
        }
        if (!has_root) return low;
    }
    throw InternalError("no irreducible polynomial found");
}

}  // namespace

ExtensionField::ExtensionField(std::uint32_t p, unsigned k) : p_(p), k_(k), q_(static_cast<std::uint32_t>(ipow(p, k))) {
    if (!is_prime(p)) throw InputError("ExtensionField needs a prime");
    if (k < 1 || k > 3) throw InputError("ExtensionField supports degrees 1 to 3");
    Digits modulus = k == 1 ? Digits{0} : irreducible_modulus(p, k);
    auto multiply = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        if (k == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
        return from_digits(mul_mod(to_digits(a, p, k), to_digits(b, p, k), modulus, p), p);
    };
    for (std::uint32_t g = 2; g < q_ + 1; ++g) {
        auto gen = g == q_ ? 1 : g;
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        std::uint32_t cur = 1;
        bool primitive = true;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (i > 0 && cur == 1) {
                primitive = false;
                break;
            }
            exp_[i] = cur;
            log_[cur] = i;
            cur = multiply(cur, gen);
        }
        if (primitive && cur == 1) return;
    }
    throw InternalError("no primitive element found");
}

std::uint32_t ExtensionField::add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a + b) % p_;
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i, a /= p_, b /= p_, scale *= p_) out += ((a % p_ + b % p_) % p_) * scale;
    return out;
}

std::uint32_t ExtensionField::mul(std::uint32_t a, std::uint32_t b) const {
    if (!a || !b) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

std::uint32_t ExtensionField::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (!a) return 0;
    return exp_[(log_[a] * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t ExtensionField::evaluate(const FpPoly& f, std::span<const std::uint32_t> point) const {
    std::uint32_t acc = 0;
    for (const auto& t : f.terms()) {
        std::uint64_t log_sum = log_[t.coeff];
        bool zero = false;
        for (std::size_t i = 0; i < f.nvars() && !zero; ++i) {
            if (!t.mono[i]) continue;
            if (!point[i]) zero = true;
            else log_sum += std::uint64_t{log_[point[i]]} * t.mono[i];
        }
        if (!zero) acc = add(acc, exp_[log_sum % (q_ - 1)]);
    }
    return acc;
}

std::optional<SingularPoint> find_singular_point(const FpPoly& f, unsigned max_extension) {
    const auto m = f.nvars();
    if (f.is_zero()) return SingularPoint{1, std::vector<std::uint32_t>(m, 0)};
    std::vector<FpPoly> equations{f};
    for (std::size_t i = 0; i < m; ++i) equations.push_back(derivative(f, i));
    for (unsigned k = 1; k <= max_extension; ++k) {
        ExtensionField field(f.p(), k);
        const std::uint64_t q = field.size();
        if ((ipow(q, m) - 1) / (q - 1) > kMaxPoints) throw BoundError("singularity search space too large");
        std::vector<std::uint32_t> pt(m);
        for (std::size_t lead = 0; lead < m; ++lead) {
            std::fill(pt.begin(), pt.end(), 0);
            pt[lead] = 1;
            while (true) {
                bool singular = true;
                for (const auto& g : equations)
                    if (field.evaluate(g, pt)) {
                        singular = false;
                        break;
                    }
                if (singular) return SingularPoint{k, pt};
                std::size_t i = lead + 1;
                while (i < m && ++pt[i] == q) pt[i++] = 0;
                if (i >= m) break;
            }
        }
    }
    return std::nullopt;
}

bool is_smooth_hypersurface(const FpPoly& f) {
    if (f.is_zero()) return false;
    unsigned ext = f.degree() <= 2 ? 1 : 3;
    // Outside quadrics and plane cubics the search is only a bounded check.
    while (ext > 1) {
        const auto q = ipow(f.p(), ext);
        if ((ipow(q, f.nvars()) - 1) / (q - 1) <= kMaxPoints) break;
        --ext;
    }
    return !find_singular_point(f, ext).has_value();
}

EllipticPointCount count_points_elliptic(const FpPoly& f) {
    if (f.nvars() != 3 || !f.is_homogeneous() || f.degree() != 3) throw InputError("expected a ternary cubic form");
    if (find_singular_point(f, 3)) throw InputError("cubic is singular");
    ExtensionField field(f.p(), 1);
    const auto p = f.p();
    std::uint64_t count = 0;
    std::vector<std::uint32_t> pt(3);
    for (std::size_t lead = 0; lead < 3; ++lead) {
        std::fill(pt.begin(), pt.end(), 0);
        pt[lead] = 1;
        while (true) {
            if (!field.evaluate(f, pt)) ++count;
            std::size_t i = lead + 1;
            while (i < 3 && ++pt[i] == p) pt[i++] = 0;
            if (i >= 3) break;
        }
    }
    EllipticPointCount out;
    out.points = count;
    out.a_p = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(count);
    out.supersingular = ((out.a_p % static_cast<std::int64_t>(p)) + p) % p == 0;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RelationGenerator {
    WittVector value;
    Grade grade;
};

// V^i([f x^e]) for 0 <= i < n and e in {0..p^{i+1}-1}^d.
std::vector<RelationGenerator> relation_generators(const HypersurfaceRing& ring, std::size_t n, bool integral_only) {
    std::vector<RelationGenerator> out;
    if (!ring.is_quotient()) return out;
    const auto& f = ring.equation();
    const auto& r = ring.ambient();
    const auto d = r->nvars();
    const auto deg_f = static_cast<std::uint64_t>(f.degree());
    for (std::size_t level = 0; level < n; ++level) {
        const auto q = ipow(r->p(), level + 1);
        for (std::uint64_t t = 0; t <= d * (q - 1); ++t) {
            if (integral_only && (t + deg_f) % q) continue;
            for (const auto& e : monomials_of_degree(d, t)) {
                bool inside = true;
                for (std::size_t i = 0; i < d; ++i) inside = inside && e[i] < q;
                if (!inside) continue;
                std::vector<FpPoly> comps(n, FpPoly(r));
                comps[level] = f.times_monomial(e);
                out.push_back({WittVector(std::move(comps)), Grade::make(t + deg_f, q)});
            }
        }
    }
    return out;
}

void require_searchable(const HypersurfaceRing& ring, std::size_t n) {
    if (ring.is_quotient() && !ring.is_graded()) throw InputError("search needs a homogeneous equation");
    if (n < 1 || n > kMaxSearchLength) throw InputError("search supports Witt lengths 1 to 3");
}

}  // namespace

SplittingSystem build_splitting_system(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound) {
    require_searchable(*ring, n);
    const auto& r = ring->ambient();
    const auto d = r->nvars();
    SplittingSystem sys{.ring = ring,
                        .n = n,
                        .degree_bound = degree_bound,
                        .required_degree = 0,
                        .basis = WnModPModuleBasis(r, n),
                        .unknowns = {},
                        .relations = {},
                        .relation_generators = 0,
                        .unit_column = 0};

    std::map<BasisKey, std::unordered_map<Monomial, std::uint32_t, MonomialHash>> column;
    for (std::uint64_t g = 0; g < d; ++g) {
        auto monos = ring->standard_monomials(g);
        for (const auto& k : sys.basis.entries_of_grade(Grade::make(g, 1))) {
            auto& slot = column[k];
            for (const auto& m : monos) {
                slot.emplace(m, static_cast<std::uint32_t>(sys.unknowns.size()));
                sys.unknowns.push_back({k, m});
            }
        }
    }
    sys.unit_column = column.at(BasisKey{0, Monomial{}}).at(Monomial{});

    auto generators = relation_generators(*ring, n, true);
    sys.relation_generators = generators.size();
    for (const auto& gen : generators) sys.required_degree = std::max(sys.required_degree, gen.grade.num);
    if (degree_bound < sys.required_degree)
        throw BoundError("degree bound " + std::to_string(degree_bound) + " is below the generator degree " +
                         std::to_string(sys.required_degree));

    for (const auto& gen : generators) {
        auto coeffs = express_in_basis(WnModPClass{gen.value, false}, sys.basis);
        std::map<Monomial, linalg::SparseEliminator::Row, GrlexLess> rows;
        for (const auto& [k, c] : coeffs) {
            if (!sys.basis.grade(k).is_integral()) throw InternalError("integral relation meets a fractional entry");
            auto it = column.find(k);
            if (it == column.end()) throw InternalError("relation uses an entry without unknowns");
            for (const auto& [m, col] : it->second) {
                const auto image = ring->reduce(c.times_monomial(m));
                for (const auto& t : image.terms()) rows[t.mono].emplace_back(col, t.coeff);
            }
        }
        for (auto& [m, row] : rows) sys.relations.push_back(std::move(row));
    }
    return sys;
}

SplittingCandidate::SplittingCandidate(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound,
                                       std::map<BasisKey, FpPoly> values)
    : ring_(std::move(ring)), n_(n), degree_bound_(degree_bound), basis_(ring_->ambient(), n), values_(std::move(values)) {}

FpPoly SplittingCandidate::apply(const WittVector& w) const {
    WittVector lifted(w.components());
    FpPoly acc(ring_->ambient());
    for (const auto& [k, c] : express_in_basis(WnModPClass{lifted, false}, basis_)) {
        auto it = values_.find(k);
        if (it != values_.end()) acc += c * it->second;
    }
    return ring_->reduce(acc);
}

SplittingCandidate candidate_from_vector(const SplittingSystem& sys, std::span<const std::uint32_t> x) {
    std::map<BasisKey, FpPoly> values;
    const auto& r = sys.ring->ambient();
    for (std::size_t i = 0; i < sys.unknowns.size(); ++i) {
        if (!x[i]) continue;
        const auto& u = sys.unknowns[i];
        auto [it, fresh] = values.try_emplace(u.key, r);
        it->second += FpPoly::monomial(r, u.mono, x[i]);
    }
    return SplittingCandidate(sys.ring, sys.n, sys.degree_bound, std::move(values));
}

SearchResult graded_splitting_search(HypersurfacePtr ring, std::size_t n, std::uint64_t degree_bound) {
    auto sys = build_splitting_system(ring, n, degree_bound);
    linalg::SparseEliminator el(ring->p(), sys.unknowns.size());
    for (const auto& row : sys.relations) el.add_row(row, 0);
    el.add_row({{static_cast<std::uint32_t>(sys.unit_column), 1}}, 1);
    SearchResult out;
    out.n = n;
    out.degree_bound = degree_bound;
    out.required_degree = sys.required_degree;
    out.unknowns = sys.unknowns.size();
    out.constraints = sys.relations.size() + 1;
    if (auto x = el.solve()) {
        out.feasible = true;
        out.witness = candidate_from_vector(sys, *x);
    }
    return out;
}

WitnessCheck verify_witness(const SplittingCandidate& tau, std::size_t random_samples, std::uint64_t seed) {
    const auto& ring = *tau.ring();
    const auto& r = ring.ambient();
    const auto n = tau.length();
    const auto d = r->nvars();
    PolySampler s(r, seed);
    WitnessCheck out;
    auto random_form = [&]() { return s.homogeneous(s.uniform(0, 2), 3); };

    out.kills_relations = true;
    for (const auto& gen : relation_generators(ring, n, false)) {
        if (!gen.grade.is_integral()) {
            ++out.checks;
            out.kills_relations = out.kills_relations && tau.apply(gen.value).is_zero();
            continue;
        }
        for (std::uint64_t extra = 0; gen.grade.num + extra <= tau.degree_bound(); ++extra)
            for (const auto& m : monomials_of_degree(d, extra)) {
                ++out.checks;
                auto w = module_action(FpPoly::monomial(r, m), gen.value);
                if (!tau.apply(w).is_zero()) out.kills_relations = false;
            }
    }

    out.linear = true;
    std::vector<BasisKey> entries;
    for (std::uint64_t g = 0; g < d && g <= tau.degree_bound(); ++g)
        for (const auto& k : tau.basis().entries_of_grade(Grade::make(g, 1))) entries.push_back(k);
    for (std::size_t i = 0; i < random_samples; ++i) {
        auto c = random_form();
        for (const auto& k : entries) {
            ++out.checks;
            auto lhs = tau.apply(module_action(c, tau.basis().element(k)));
            auto it = tau.values().find(k);
            auto rhs = it == tau.values().end() ? FpPoly(r) : ring.reduce(c * it->second);
            if (!(lhs == rhs)) out.linear = false;
        }
    }

    out.retracts_section = true;
    for (std::size_t i = 0; i < random_samples; ++i) {
        auto c = random_form();
        ++out.checks;
        if (!(tau.apply(section_s(c, n).representative) == ring.reduce(c))) out.retracts_section = false;
    }

    out.kills_ideal = true;
    for (std::size_t i = 0; i < random_samples && ring.is_quotient(); ++i) {
        std::vector<FpPoly> comps;
        for (std::size_t k = 0; k < n; ++k) comps.push_back(ring.equation() * random_form());
        ++out.checks;
        if (!tau.apply(WittVector(std::move(comps))).is_zero()) out.kills_ideal = false;
    }
    return out;
}

HeightReport quasi_f_split_height(HypersurfacePtr ring, std::size_t n_max, std::uint64_t degree_bound,
                                  bool check_monotone) {
    if (n_max < 1 || n_max > kMaxSearchLength) throw InputError("n_max must be between 1 and 3");
    if (ring->is_quotient() && !is_smooth_hypersurface(ring->equation()))
        throw InputError("equation defines a singular hypersurface");
    HeightReport out;
    out.n_max = n_max;
    out.degree_bound = degree_bound;
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto res = graded_splitting_search(ring, n, degree_bound);
        out.searches.push_back(res);
        if (!res.feasible) continue;
        out.height = n;
        out.witness = res.witness;
        out.witness_check = verify_witness(*res.witness);
        if (check_monotone && n + 1 <= kMaxSearchLength) {
            auto next = graded_splitting_search(ring, n + 1, degree_bound);
            out.monotone = next.feasible;
        }
        break;
    }
    return out;
}

}  // namespace frobsplit
