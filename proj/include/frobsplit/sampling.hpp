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

#ifndef FROBSPLIT_SAMPLING_HPP
#define FROBSPLIT_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "frobsplit/fpoly.hpp"

namespace frobsplit {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Seeded generator of random polynomials for property checks.
class PolySampler {
   public:
    PolySampler(RingPtr ring, std::uint64_t seed = kDefaultSeed) : ring_(std::move(ring)), rng_(seed) {}

    const RingPtr& ring() const { return ring_; }
    std::mt19937_64& engine() { return rng_; }

    std::uint32_t coefficient(bool nonzero = false);
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    /// Up to `max_terms` terms of total degree <= `max_degree`.
    FpPoly poly(std::size_t max_terms, std::uint64_t max_degree);
    /// Up to `max_terms` terms, all of total degree `degree`.
    FpPoly homogeneous(std::uint64_t degree, std::size_t max_terms);
    /// Every monomial of the given degree with a random coefficient.
    FpPoly dense_homogeneous(std::uint64_t degree);
    Monomial monomial(std::uint64_t max_degree);

   private:
    RingPtr ring_;
    std::mt19937_64 rng_;
};

}  // namespace frobsplit

#endif
