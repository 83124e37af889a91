#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/partitions.hpp"

namespace strata {

enum class Family { complex, real };

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

/// Kinds are listed in the total order used for generators of equal degree.
enum class GeneratorKind { real_e = 0, complex_d = 1, real_d = 2 };

/// One boundary class. Partitions are stored canonically (min in J).
struct GeneratorId {
    GeneratorKind kind = GeneratorKind::complex_d;
    Subset i = 0;
    Subset j = 0;
    Subset k = 0;

    static GeneratorId complex_d(PartitionPair p) { return {GeneratorKind::complex_d, 0, p.j, p.k}; }
    static GeneratorId real_e(PartitionPair p) { return {GeneratorKind::real_e, 0, p.j, p.k}; }
    static GeneratorId real_d(TriplePartition t) { return {GeneratorKind::real_d, t.i, t.j, t.k}; }

    int degree() const { return kind == GeneratorKind::real_e ? 1 : 2; }
    PartitionPair pair() const { return {j, k}; }
    TriplePartition triple() const { return {i, j, k}; }

    /// E{J|K}, D{J|K} or D{I;J|K}.
    std::string name(const GroundSet& ground) const;

    bool operator==(const GeneratorId&) const = default;
    std::strong_ordering operator<=>(const GeneratorId& other) const;
};

/// Generators of the complex (D_{J,K}) or real (ℝE_{J,K}, ℝD_{I;J,K})
/// presentation on `ground`, sorted by the GeneratorId order.
std::vector<GeneratorId> enumerate_generators(Family family, const GroundSet& ground);

/// Indexed generator list of one polynomial ring.
class Alphabet {
public:
    Alphabet(Family family, GroundSet ground);

    Family family() const { return family_; }
    const GroundSet& ground() const { return ground_; }
    std::size_t size() const { return gens_.size(); }
    const GeneratorId& operator[](std::size_t index) const { return gens_[index]; }
    const std::vector<GeneratorId>& generators() const { return gens_; }
    int degree(std::size_t index) const { return gens_[index].degree(); }

    std::optional<std::size_t> find(const GeneratorId& g) const;
    /// Throws std::out_of_range if `g` is not a generator of this ring.
    std::size_t index_of(const GeneratorId& g) const;

    std::string name(std::size_t index) const { return gens_[index].name(ground_); }
    /// Inverse of name(); throws std::invalid_argument.
    std::size_t parse_name(std::string_view text) const;

    bool operator==(const Alphabet& other) const {
        return family_ == other.family_ && ground_ == other.ground_;
    }

private:
    Family family_;
    GroundSet ground_;
    std::vector<GeneratorId> gens_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Shared alphabet for (family, ground); repeated calls return the same object.
AlphabetPtr make_alphabet(Family family, const GroundSet& ground);

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace strata
