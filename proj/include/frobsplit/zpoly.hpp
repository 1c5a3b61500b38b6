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

#ifndef FROBSPLIT_ZPOLY_HPP
#define FROBSPLIT_ZPOLY_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "frobsplit/fpoly.hpp"

namespace frobsplit {

/// Sparse polynomial with arbitrary-precision integer coefficients in up to
/// kMaxVars variables. No ring object is attached; variables are positions.
class ZPoly {
   public:
    using TermMap = std::map<Monomial, mpz_class, GrlexLess>;

    ZPoly() = default;

    static ZPoly constant(const mpz_class& c);
    static ZPoly variable(std::size_t i);
    /// Integer lift of f with coefficients in [0, p).
    static ZPoly lift(const FpPoly& f);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator-=(const ZPoly& o);
    ZPoly operator-() const;
    ZPoly scaled(const mpz_class& c) const;

    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    friend bool operator==(const ZPoly&, const ZPoly&) = default;

    /// Exact division of every coefficient; throws InternalError otherwise.
    ZPoly divided_exactly(const mpz_class& d) const;
    /// True when every coefficient is divisible by m.
    bool divisible_by(const mpz_class& m) const;

    /// Coefficients reduced into [0, p) and loaded into `ring`.
    FpPoly reduce(const RingPtr& ring) const;

    std::string to_string(const std::vector<std::string>& names) const;

   private:
    TermMap terms_;
};

ZPoly pow(const ZPoly& f, std::uint64_t e);

}  // namespace frobsplit

#endif
