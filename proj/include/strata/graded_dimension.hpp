#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "strata/ideals.hpp"
#include "strata/sparse_rank.hpp"

namespace strata {

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest slice (in columns) the engine will build.
inline constexpr std::size_t kDefaultColumnCeiling = 2'000'000;

enum class Method { recursion, rank };
std::string_view to_string(Method m);
Method parse_method(std::string_view s);

/// Quotient dimensions indexed by cohomological degree.
struct BettiVector {
    Family family;
    int ell = 0;
    std::vector<std::uint64_t> dims;
    Method method = Method::rank;
    std::optional<int> truncated_at;
    bool clamped = false;

    /// Complex vectors drop the (zero) odd degrees; real vectors are returned as is.
    std::vector<std::uint64_t> display_dims() const;
    bool operator==(const BettiVector& other) const { return family == other.family && ell == other.ell && dims == other.dims; }
};

/// Cohomological top degree: 2(ell - 3) for complex, 2 ell - 3 for real.
int top_degree(Family family, int ell);
/// Smallest ell the family supports (3 complex, 2 real).
int min_ell(Family family);

struct DegreeSlice {
    int degree = 0;
    std::vector<Monomial> columns;
    std::vector<RationalRow> rows;
};

/// Every generator times every monomial of complementary degree.
DegreeSlice ideal_slice(const IdealPresentation& pres, int d, std::size_t column_ceiling = kDefaultColumnCeiling);

/// Exact rank over ℚ of the slice rows.
std::size_t slice_rank(const DegreeSlice& slice);

/// Degree-d ideal component in reduced form, answering span queries.
///
/// Monomials divisible by a single-term generator lie in the ideal, so only the
/// remaining (standard) monomials are materialized as columns. The column
/// ceiling bounds the number of standard monomials.
class SliceEngine {
public:
    SliceEngine(const IdealPresentation& pres, int d, std::size_t column_ceiling = kDefaultColumnCeiling);

    int degree() const { return degree_; }
    /// Number of monomials of this degree.
    std::size_t columns() const { return total_columns_; }
    std::size_t standard_columns() const { return columns_.size(); }
    /// Dimension of the ideal in this degree.
    std::size_t rank() const { return total_columns_ - columns_.size() + echelon_.rank(); }
    std::size_t quotient_dim() const { return columns() - rank(); }

    bool contains(const Polynomial& p) const;
    /// Rank of the ideal slice together with `extra` (all of this degree).
    std::size_t rank_with(const std::vector<Polynomial>& extra) const;

private:
    SparseRow project(const Polynomial& p) const;

    int degree_;
    AlphabetPtr alphabet_;
    std::size_t total_columns_ = 0;
    std::vector<Monomial> columns_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
    IntegerEchelon echelon_{0};
};

/// Lazily built per-degree engines for one presentation.
class IdealOracle {
public:
    explicit IdealOracle(IdealPresentation pres, std::size_t column_ceiling = kDefaultColumnCeiling);

    const IdealPresentation& presentation() const { return pres_; }
    const SliceEngine& slice(int d);
    /// Homogeneous membership; zero is always contained.
    bool contains(const Polynomial& p);

private:
    IdealPresentation pres_;
    std::size_t ceiling_;
    std::map<int, std::unique_ptr<SliceEngine>> engines_;
};

/// Shared oracle for the standard presentation on `ground`.
std::shared_ptr<IdealOracle> standard_oracle(Family family, const GroundSet& ground);

/// Throws std::invalid_argument on inhomogeneous input or an alphabet mismatch.
bool ideal_contains(const IdealPresentation& pres, const Polynomial& p);

/// dims[d] = #monomials(d) - rank(slice d) for d <= min(dmax, top degree).
BettiVector quotient_dims(Family family, int ell, std::optional<int> dmax = std::nullopt,
                          std::size_t column_ceiling = kDefaultColumnCeiling);

} // namespace strata
