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

#include "frobsplit/linalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace frobsplit::linalg {

FpMatrix FpMatrix::with_column(std::span<const std::uint32_t> column) const {
    if (column.size() != rows_) throw InternalError("with_column: length mismatch");
    FpMatrix out(prime(), rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::copy(row(r).begin(), row(r).end(), out.row(r).begin());
        out.at(r, cols_) = column[r] % prime();
    }
    return out;
}

namespace {

// Shared pivot search; returns false when the column has no pivot.
bool find_pivot(FpMatrix& m, std::size_t col, std::size_t start, std::size_t& pivot_row) {
    for (std::size_t r = start; r < m.rows(); ++r)
        if (m.at(r, col)) {
            pivot_row = r;
            return true;
        }
    return false;
}

void normalize_pivot(FpMatrix& m, std::size_t r, std::size_t col) {
    const auto& k = m.field();
    auto inv = k.inv(m.at(r, col));
    for (auto& v : m.row(r)) v = k.mul(v, inv);
}

void eliminate_row(FpMatrix& m, std::size_t target, std::size_t pivot, std::size_t col) {
    const auto p = m.prime();
    auto factor = m.at(target, col);
    if (!factor) return;
    auto dst = m.row(target);
    auto src = m.row(pivot);
    const auto neg = p - factor;
    for (std::size_t c = col; c < m.cols(); ++c) dst[c] = (dst[c] + neg * src[c]) % p;
}

}  // namespace

Echelon rref_serial(FpMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr;
        if (!find_pivot(m, col, row, pr)) continue;
        if (pr != row) std::swap_ranges(m.row(pr).begin(), m.row(pr).end(), m.row(row).begin());
        normalize_pivot(m, row, col);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row) eliminate_row(m, r, row, col);
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

Echelon rref(FpMatrix m) {
    constexpr std::size_t kParallelCells = 1 << 15;
    if (m.rows() * m.cols() < kParallelCells) return rref_serial(std::move(m));
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const auto nrows = static_cast<std::ptrdiff_t>(m.rows());
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr;
        if (!find_pivot(m, col, row, pr)) continue;
        if (pr != row) std::swap_ranges(m.row(pr).begin(), m.row(pr).end(), m.row(row).begin());
        normalize_pivot(m, row, col);
        const auto pivot = row;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < nrows; ++r)
            if (static_cast<std::size_t>(r) != pivot) eliminate_row(m, static_cast<std::size_t>(r), pivot, col);
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

std::optional<std::vector<std::uint32_t>> solve(const FpMatrix& a, std::span<const std::uint32_t> b) {
    auto e = rref(a.with_column(b));
    std::vector<std::uint32_t> x(a.cols(), 0);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        auto col = e.pivot_cols[i];
        if (col == a.cols()) return std::nullopt;
        x[col] = e.reduced.at(i, a.cols());
    }
    return x;
}

std::vector<std::vector<std::uint32_t>> nullspace(const FpMatrix& a) {
    auto e = rref(a);
    const auto p = a.prime();
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint32_t> v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
            auto val = e.reduced.at(i, free);
            v[e.pivot_cols[i]] = val ? p - val : 0;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

SparseEliminator::SparseEliminator(std::uint32_t p, std::size_t cols) : field_(p), cols_(cols), pivots_(cols) {}

namespace {

using Row = SparseEliminator::Row;

Row normalized(Row row, const PrimeField& k) {
    std::sort(row.begin(), row.end());
    Row out;
    for (const auto& [c, v] : row) {
        auto val = v % k.p();
        if (!out.empty() && out.back().first == c)
            out.back().second = k.add(out.back().second, val);
        else
            out.emplace_back(c, val);
        if (out.back().second == 0) out.pop_back();
    }
    return out;
}

// a - factor * b, both sorted.
Row axpy(const Row& a, std::uint32_t factor, const Row& b, const PrimeField& k) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, k.neg(k.mul(factor, b[j].second)));
            ++j;
        } else {
            auto v = k.sub(a[i].second, k.mul(factor, b[j].second));
            if (v) out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void SparseEliminator::add_row(Row row, std::uint32_t rhs) {
    for (const auto& e : row)
        if (e.first >= cols_) throw InternalError("SparseEliminator: column out of range");
    row.emplace_back(static_cast<std::uint32_t>(cols_), rhs);
    row = normalized(std::move(row), field_);
    while (!row.empty()) {
        auto c = row.front().first;
        if (c == cols_) {
            consistent_ = false;
            return;
        }
        if (pivots_[c].empty()) {
            auto inv = field_.inv(row.front().second);
            for (auto& e : row) e.second = field_.mul(e.second, inv);
            pivots_[c] = std::move(row);
            ++rank_;
            return;
        }
        row = axpy(row, row.front().second, pivots_[c], field_);
    }
}

std::optional<std::vector<std::uint32_t>> SparseEliminator::solve(std::mt19937_64* rng) const {
    if (!consistent_) return std::nullopt;
    std::vector<std::uint32_t> x(cols_, 0);
    for (std::size_t c = cols_; c-- > 0;) {
        const auto& row = pivots_[c];
        if (row.empty()) {
            if (rng) x[c] = static_cast<std::uint32_t>((*rng)() % field_.p());
            continue;
        }
        std::uint32_t v = 0;
        for (const auto& [col, val] : row) {
            if (col == c) continue;
            if (col == cols_)
                v = field_.add(v, val);
            else
                v = field_.sub(v, field_.mul(val, x[col]));
        }
        x[c] = v;
    }
    return x;
}

FpMatrix columns_from_polys(std::uint32_t p, std::span<const Monomial> basis, std::span<const FpPoly> columns) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    FpMatrix m(p, basis.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& t : columns[c].terms()) {
            auto it = index.find(t.mono);
            if (it == index.end()) throw InternalError("columns_from_polys: monomial outside the basis");
            m.at(it->second, c) = t.coeff;
        }
    return m;
}

}  // namespace frobsplit::linalg
