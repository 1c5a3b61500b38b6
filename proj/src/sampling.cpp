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

#include "frobsplit/sampling.hpp"

namespace frobsplit {

std::uint64_t PolySampler::uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
}

std::uint32_t PolySampler::coefficient(bool nonzero) {
    auto p = ring_->p();
    return static_cast<std::uint32_t>(nonzero ? uniform(1, p - 1) : uniform(0, p - 1));
}

Monomial PolySampler::monomial(std::uint64_t max_degree) {
    auto deg = uniform(0, max_degree);
    auto all = monomials_of_degree(ring_->nvars(), deg);
    return all[uniform(0, all.size() - 1)];
}

FpPoly PolySampler::poly(std::size_t max_terms, std::uint64_t max_degree) {
    auto n = uniform(0, max_terms);
    std::vector<FpPoly::Term> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back({monomial(max_degree), coefficient(true)});
    return FpPoly(ring_, std::move(terms));
}

FpPoly PolySampler::homogeneous(std::uint64_t degree, std::size_t max_terms) {
    auto all = monomials_of_degree(ring_->nvars(), degree);
    auto n = uniform(1, max_terms);
    std::vector<FpPoly::Term> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back({all[uniform(0, all.size() - 1)], coefficient(true)});
    return FpPoly(ring_, std::move(terms));
}

FpPoly PolySampler::dense_homogeneous(std::uint64_t degree) {
    std::vector<FpPoly::Term> terms;
    for (const auto& m : monomials_of_degree(ring_->nvars(), degree)) terms.push_back({m, coefficient()});
    return FpPoly(ring_, std::move(terms));
}

}  // namespace frobsplit
