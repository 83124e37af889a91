#pragma once

#include <compare>
#include <vector>

#include "strata/ground_set.hpp"

namespace strata {

/// Unordered splitting {J, K} of J ∪ K. Canonical form keeps min(J ∪ K) in J.
struct PartitionPair {
    Subset j = 0;
    Subset k = 0;

    Subset ground() const { return j | k; }
    bool is_canonical() const { return (j & k) == 0 && (ground() == 0 || (lowest_bit(ground()) & j)); }

    auto operator<=>(const PartitionPair&) const = default;
};

/// (I, {J, K}) with I ⊔ J ⊔ K the ground set.
struct TriplePartition {
    Subset i = 0;
    Subset j = 0;
    Subset k = 0;

    Subset ground() const { return i | j | k; }
    PartitionPair pair() const { return {j, k}; }

    auto operator<=>(const TriplePartition&) const = default;
};

/// Builds {A, B} with min(A ∪ B) in the J slot. Throws InvalidPartition
/// unless A ⊔ B is exactly the ground set.
PartitionPair canonical_pair(const GroundSet& ground, Subset a, Subset b);

/// Canonical form of {a, b} without a ground-set check (a, b disjoint).
PartitionPair canonical(Subset a, Subset b);

/// (I, {A, B}) canonicalized; throws InvalidPartition on overlap, an
/// incomplete cover, or |I| outside [1, |ground| - 2].
TriplePartition canonical_triple(const GroundSet& ground, Subset i, Subset a, Subset b);

/// Sign of {J, K} with `designated` playing J: +1 iff min(J ∪ K) ∈ designated.
int epsilon(const PartitionPair& p, Subset designated);

/// ε for an explicitly ordered pair (J, K); J ∪ K must be nonempty.
int epsilon(Subset j, Subset k);

bool preceq(const PartitionPair& p, const PartitionPair& q);
bool parallel(const PartitionPair& p, const PartitionPair& q);

/// Crossing relation on a common ground set: all four intersections nonempty.
bool notcap_pair(const PartitionPair& p, const PartitionPair& q);

/// {J,K} ∥ {J',K'} and J ∪ K ⊄ I'.
bool notcap_triple(const TriplePartition& t, const TriplePartition& u);

/// All canonical pairs of `ground`, ordered by J mask; includes {ground, ∅}.
std::vector<PartitionPair> all_pairs(Subset ground);

/// Canonical pairs with 2 <= |J|, |K|.
std::vector<PartitionPair> bullet_pairs(Subset ground);

/// Canonical triples with 1 <= |I| <= |ground| - 2, ordered by (I, J).
std::vector<TriplePartition> bullet_triples(Subset ground);

} // namespace strata
