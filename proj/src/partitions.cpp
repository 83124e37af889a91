#include "strata/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata {

namespace {

// Visits the submasks of `mask` in increasing numeric order.
template <typename Fn>
void for_each_submask(Subset mask, Fn&& fn) {
    Subset sub = 0;
    do {
        fn(sub);
        sub = (sub - mask) & mask;
    } while (sub != 0);
}

} // namespace

PartitionPair canonical(Subset a, Subset b) {
    Subset all = a | b;
    if (all != 0 && !(lowest_bit(all) & a)) {
        return {b, a};
    }
    return {a, b};
}

PartitionPair canonical_pair(const GroundSet& ground, Subset a, Subset b) {
    if ((a & b) != 0) {
        throw InvalidPartition("parts overlap");
    }
    if ((a | b) != ground.mask()) {
        throw InvalidPartition("parts do not cover the ground set");
    }
    return canonical(a, b);
}

TriplePartition canonical_triple(const GroundSet& ground, Subset i, Subset a, Subset b) {
    if ((i & a) || (i & b) || (a & b)) {
        throw InvalidPartition("parts overlap");
    }
    if ((i | a | b) != ground.mask()) {
        throw InvalidPartition("parts do not cover the ground set");
    }
    int n = popcount(i);
    if (n < 1 || n > ground.size() - 2) {
        throw InvalidPartition("|I| outside [1, |ground| - 2]");
    }
    PartitionPair p = canonical(a, b);
    return {i, p.j, p.k};
}

int epsilon(Subset j, Subset k) {
    Subset all = j | k;
    if (all == 0) {
        throw std::invalid_argument("epsilon of an empty pair");
    }
    return (lowest_bit(all) & j) ? 1 : -1;
}

int epsilon(const PartitionPair& p, Subset designated) {
    if (designated == p.j) {
        return epsilon(p.j, p.k);
    }
    if (designated == p.k) {
        return epsilon(p.k, p.j);
    }
    throw std::invalid_argument("designated subset is not a part of the pair");
}

bool preceq(const PartitionPair& p, const PartitionPair& q) {
    return (is_subset(p.j, q.j) && is_subset(p.k, q.k)) ||
           (is_subset(p.j, q.k) && is_subset(p.k, q.j));
}

bool parallel(const PartitionPair& p, const PartitionPair& q) {
    return !preceq(p, q) && !preceq(q, p);
}

bool notcap_pair(const PartitionPair& p, const PartitionPair& q) {
    if (p.ground() != q.ground()) {
        throw std::invalid_argument("notcap_pair: ground sets differ");
    }
    return !is_subset(p.j, q.j) && !is_subset(p.j, q.k) && !is_subset(q.j, p.j) &&
           !is_subset(q.k, p.j);
}

bool notcap_triple(const TriplePartition& t, const TriplePartition& u) {
    if (t.ground() != u.ground()) {
        throw std::invalid_argument("notcap_triple: ground sets differ");
    }
    return parallel(t.pair(), u.pair()) && !is_subset(t.j | t.k, u.i);
}

std::vector<PartitionPair> all_pairs(Subset ground) {
    std::vector<PartitionPair> out;
    if (ground == 0) {
        out.push_back({0, 0});
        return out;
    }
    Subset low = lowest_bit(ground);
    Subset rest = ground & ~low;
    for_each_submask(rest, [&](Subset sub) { out.push_back({sub | low, rest & ~sub}); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartitionPair> bullet_pairs(Subset ground) {
    std::vector<PartitionPair> out;
    for (const auto& p : all_pairs(ground)) {
        if (popcount(p.j) >= 2 && popcount(p.k) >= 2) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<TriplePartition> bullet_triples(Subset ground) {
    std::vector<TriplePartition> out;
    int n = popcount(ground);
    for_each_submask(ground, [&](Subset i) {
        int m = popcount(i);
        if (m < 1 || m > n - 2) {
            return;
        }
        for (const auto& p : all_pairs(ground & ~i)) {
            out.push_back({i, p.j, p.k});
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace strata
