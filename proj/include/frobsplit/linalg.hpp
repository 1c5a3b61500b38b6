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

#ifndef FROBSPLIT_LINALG_HPP
#define FROBSPLIT_LINALG_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <span>
#include <vector>

#include "frobsplit/fpoly.hpp"

namespace frobsplit::linalg {

// Dense matrices over F_p. Every cohomology, splitting and module computation
// in the library bottoms out in these routines.

class FpMatrix {
   public:
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::uint32_t prime() const { return field_.p(); }
    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// Append a column (used to build augmented systems).
    FpMatrix with_column(std::span<const std::uint32_t> column) const;

    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

   private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> data_;
};

struct Echelon {
    FpMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Reduced row echelon form; row elimination is parallelised with OpenMP.
Echelon rref(FpMatrix m);
/// Single-threaded reference for `rref`.
Echelon rref_serial(FpMatrix m);

std::size_t rank(const FpMatrix& m);

/// Some x with A x = b, or nullopt if inconsistent.
std::optional<std::vector<std::uint32_t>> solve(const FpMatrix& a, std::span<const std::uint32_t> b);

/// Basis of {x : A x = 0}.
std::vector<std::vector<std::uint32_t>> nullspace(const FpMatrix& a);

/// Incremental row echelon form for sparse systems A x = b. Rows are added
/// one at a time and reduced against the stored pivots.
class SparseEliminator {
   public:
    using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (column, value), sorted

    SparseEliminator(std::uint32_t p, std::size_t cols);

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rank_; }
    bool consistent() const { return consistent_; }

    /// Adds the equation row . x = rhs. Entries need not be sorted or reduced.
    void add_row(Row row, std::uint32_t rhs);

    /// A solution; free variables are zero, or uniform random when `rng` is
    /// given. nullopt if the system is inconsistent.
    std::optional<std::vector<std::uint32_t>> solve(std::mt19937_64* rng = nullptr) const;

   private:
    PrimeField field_;
    std::size_t cols_;
    std::size_t rank_ = 0;
    bool consistent_ = true;
    // pivots_[c] has leading column c; the right-hand side sits in column cols_.
    std::vector<Row> pivots_;
};

/// Build the matrix whose columns are the coordinate vectors of `columns`
/// with respect to `basis` (monomials). Monomials outside `basis` make the
/// function throw InternalError.
FpMatrix columns_from_polys(std::uint32_t p, std::span<const Monomial> basis,
                            std::span<const FpPoly> columns);

}  // namespace frobsplit::linalg

#endif
