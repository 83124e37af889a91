#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "strata/polynomial.hpp"

namespace strata {

using SparseRow = std::vector<std::pair<std::uint32_t, Integer>>;
using RationalRow = std::vector<std::pair<std::uint32_t, Rational>>;
using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

/// Scales a rational row to a primitive integer row (content 1, positive lead).
SparseRow primitive_row(const RationalRow& row);
void make_primitive(SparseRow& row);

/// Row echelon over ℤ built incrementally by fraction-free elimination.
/// Each stored row has a distinct leading column.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t columns);

    /// Adds a row; returns true if it was independent of the stored rows.
    bool insert(SparseRow row);
    /// True iff `row` lies in the span of the stored rows.
    bool contains(SparseRow row) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t columns() const { return pivot_.size(); }
    bool full() const { return rank() == columns(); }

private:
    void reduce(SparseRow& row) const;

    std::vector<SparseRow> rows_;
    std::vector<std::int32_t> pivot_;
};

/// Same elimination over ℤ/p for a word-size prime.
class ModularEchelon {
public:
    ModularEchelon(std::size_t columns, std::uint64_t prime);

    bool insert(ModRow row);
    std::size_t rank() const { return rows_.size(); }
    std::uint64_t prime() const { return p_; }

private:
    std::vector<ModRow> rows_;
    std::vector<std::int32_t> pivot_;
    std::uint64_t p_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
/// A prime in [2^61, 2^62) drawn from a generator seeded by `seed`.
std::uint64_t random_prime62(std::uint64_t seed);

/// Reduces an integer row mod p; returns false if a denominator vanishes.
ModRow reduce_mod(const SparseRow& row, std::uint64_t p);

struct RankStats {
    std::size_t rows = 0;
    std::size_t columns = 0;
    std::size_t modular_rank = 0;
    bool short_circuit = false;
};

/// Exact rank over ℚ. A modular pass runs first; if it already reaches
/// min(rows, columns) the exact pass is skipped.
std::size_t exact_rank(const std::vector<SparseRow>& rows, std::size_t columns, RankStats* stats = nullptr);

} // namespace strata
