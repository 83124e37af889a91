#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/// A subset of marks, encoded by order key: bit k-1 is set iff the mark with
/// order key k belongs to the subset. Integer marks are their own keys, so
/// subsets of different ground sets agree on integer labels.
using Subset = std::uint64_t;

inline constexpr int kMaxMarks = 62;

class InvalidPartition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int popcount(Subset s) { return std::popcount(s); }
inline Subset lowest_bit(Subset s) { return s & (~s + 1); }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline Subset key_bit(int key) { return Subset{1} << (key - 1); }

/// Ordered set of marks: integers, optionally plus the node marker "nd".
/// The node is ordered as the smallest positive integer not among the
/// integer labels.
class GroundSet {
public:
    GroundSet() = default;

    /// [n] = {1, ..., n}
    static GroundSet standard(int n);

    /// The integer labels given by `integers`, without a node.
    static GroundSet of(Subset integers);

    /// {nd} ⊔ integers
    static GroundSet with_node(Subset integers);

    Subset mask() const { return mask_; }
    int size() const { return popcount(mask_); }
    bool has_node() const { return node_key_.has_value(); }

    /// Key of the node marker; throws if the set carries no node.
    int node_key() const;
    Subset node_bit() const { return node_key_ ? key_bit(*node_key_) : Subset{0}; }
    Subset integer_mask() const { return mask_ & ~node_bit(); }

    bool contains(Subset s) const { return is_subset(s, mask_); }

    /// Order keys of the marks, ascending.
    std::vector<int> keys() const;

    /// "n" for the node, the decimal label otherwise.
    std::string label(int key) const;

    /// True when every label renders as a single character.
    bool compact_labels() const;

    /// Renders a subset as concatenated labels (or comma-separated when
    /// some label has several digits).
    std::string render(Subset s) const;

    /// Parses the output of render(); throws std::invalid_argument.
    Subset parse(const std::string& text) const;

    bool operator==(const GroundSet&) const = default;

private:
    Subset mask_ = 0;
    std::optional<int> node_key_;
};

/// Order key of the smallest positive integer absent from `integers`.
int smallest_absent_key(Subset integers);

} // namespace strata
