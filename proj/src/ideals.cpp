#include "strata/ideals.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace strata {

namespace {

constexpr std::string_view kTagNames[] = {"e1a", "e1b", "e1c", "e2", "e2a", "e2b"};

Subset mark(const GroundSet& ground, int key) {
    if (key < 1 || key > kMaxMarks || !(ground.mask() & key_bit(key))) {
        throw std::invalid_argument("mark " + std::to_string(key) + " not in ground set");
    }
    return key_bit(key);
}

Polynomial var(const AlphabetPtr& alpha, const GeneratorId& g) {
    return Polynomial::variable(alpha, g);
}

// Which side of {j, k} holds `bits` entirely; 0 if neither.
Subset side_of(const PartitionPair& p, Subset bits) {
    if (is_subset(bits, p.j)) {
        return p.j;
    }
    if (is_subset(bits, p.k)) {
        return p.k;
    }
    return 0;
}

Polynomial e2_sum(const AlphabetPtr& alpha, Subset a, Subset b, Subset c, Subset d) {
    Polynomial out(alpha);
    for (const auto& g : alpha->generators()) {
        PartitionPair p = g.pair();
        Subset s = side_of(p, a | b);
        if (s && is_subset(c | d, p.ground() & ~s)) {
            out += var(alpha, g);
        }
        s = side_of(p, a | c);
        if (s && is_subset(b | d, p.ground() & ~s)) {
            out -= var(alpha, g);
        }
    }
    return out;
}

Polynomial e2b_sum(const AlphabetPtr& alpha, Subset a, Subset b, Subset c) {
    Polynomial out(alpha);
    for (const auto& g : alpha->generators()) {
        if (g.kind != GeneratorKind::real_d) {
            continue;
        }
        PartitionPair p = g.pair();
        if (Subset s = side_of(p, a | b); s && (g.i & c)) {
            out += epsilon(p, s) * var(alpha, g);
        }
        if (Subset s = side_of(p, a | c); s && (g.i & b)) {
            out -= epsilon(p, s) * var(alpha, g);
        }
        if (Subset s = side_of(p, b); s && (g.i & a) && is_subset(c, p.ground() & ~s)) {
            out -= epsilon(p, s) * var(alpha, g);
        }
    }
    return out;
}

std::vector<std::uint64_t> pair_indices(const PartitionPair& p, const PartitionPair& q) {
    return {p.j, p.k, q.j, q.k};
}

} // namespace

std::string_view to_string(RelationTag tag) {
    return kTagNames[static_cast<int>(tag)];
}

RelationTag parse_tag(std::string_view s) {
    for (int t = 0; t < 6; ++t) {
        if (kTagNames[t] == s) {
            return static_cast<RelationTag>(t);
        }
    }
    throw std::invalid_argument("unknown relation tag '" + std::string(s) + "'");
}

std::size_t IdealPresentation::count(RelationTag tag) const {
    return static_cast<std::size_t>(std::count_if(generators.begin(), generators.end(),
                                                  [&](const IdealGenerator& g) { return g.tag == tag; }));
}

Polynomial complex_e2_element(const GroundSet& ground, int a, int b, int c, int d) {
    auto alpha = make_alphabet(Family::complex, ground);
    return e2_sum(alpha, mark(ground, a), mark(ground, b), mark(ground, c), mark(ground, d));
}

Polynomial real_e2b_element(const GroundSet& ground, int a, int b, int c) {
    if (a == b || a == c || b == c) {
        throw std::invalid_argument("e2b needs distinct marks");
    }
    auto alpha = make_alphabet(Family::real, ground);
    return e2b_sum(alpha, mark(ground, a), mark(ground, b), mark(ground, c));
}

Polynomial real_e2b2_element(int ell, int a, int b, int c) {
    GroundSet ground = GroundSet::standard(ell);
    if (ell < 2 || a == b || a == c) {
        throw std::invalid_argument("e2b2 needs l >= 2, a != b and a != c");
    }
    Subset ba = mark(ground, a), bb = mark(ground, b), bc = mark(ground, c);
    auto alpha = make_alphabet(Family::real, ground);
    Polynomial out(alpha);
    for (const auto& g : alpha->generators()) {
        if (g.kind != GeneratorKind::real_d) {
            continue;
        }
        PartitionPair p = g.pair();
        Subset s = side_of(p, ba);
        if (!s) {
            continue;
        }
        bool b_in_i = (g.i & bb) != 0;
        bool c_in_i = (g.i & bc) != 0;
        if (!b_in_i && c_in_i) {
            out += epsilon(p, s) * var(alpha, g);
        } else if (b_in_i && !c_in_i) {
            out -= epsilon(p, s) * var(alpha, g);
        }
    }
    return out;
}

IdealPresentation complex_ideal(const GroundSet& ground) {
    if (ground.size() < 3) {
        throw std::invalid_argument("complex ideal needs at least 3 marks");
    }
    auto alpha = make_alphabet(Family::complex, ground);
    IdealPresentation pres{Family::complex, ground, alpha, {}};
    const auto& gens = alpha->generators();
    for (std::size_t x = 0; x < gens.size(); ++x) {
        for (std::size_t y = x + 1; y < gens.size(); ++y) {
            if (notcap_pair(gens[x].pair(), gens[y].pair())) {
                pres.generators.push_back({RelationTag::e1a, pair_indices(gens[x].pair(), gens[y].pair()),
                                           var(alpha, gens[x]) * var(alpha, gens[y])});
            }
        }
    }
    std::vector<int> keys = ground.keys();
    std::set<Polynomial::Terms> seen;
    for (int a : keys) {
        for (int b : keys) {
            for (int c : keys) {
                for (int d : keys) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) {
                        continue;
                    }
                    Polynomial p = e2_sum(alpha, key_bit(a), key_bit(b), key_bit(c), key_bit(d));
                    if (p.is_zero() || !seen.insert(p.terms()).second) {
                        continue;
                    }
                    pres.generators.push_back({RelationTag::e2,
                                               {std::uint64_t(a), std::uint64_t(b), std::uint64_t(c),
                                                std::uint64_t(d)},
                                               std::move(p)});
                }
            }
        }
    }
    return pres;
}

IdealPresentation complex_ideal(int ell) {
    if (ell < 3) {
        throw std::invalid_argument("complex ideal needs l >= 3");
    }
    return complex_ideal(GroundSet::standard(ell));
}

IdealPresentation real_ideal(const GroundSet& ground) {
    if (ground.size() < 2) {
        throw std::invalid_argument("real ideal needs at least 2 marks");
    }
    auto alpha = make_alphabet(Family::real, ground);
    IdealPresentation pres{Family::real, ground, alpha, {}};
    std::vector<GeneratorId> es, ds;
    for (const auto& g : alpha->generators()) {
        (g.kind == GeneratorKind::real_e ? es : ds).push_back(g);
    }
    for (std::size_t x = 0; x < es.size(); ++x) {
        for (std::size_t y = x; y < es.size(); ++y) {
            pres.generators.push_back(
                {RelationTag::e1a, pair_indices(es[x].pair(), es[y].pair()), var(alpha, es[x]) * var(alpha, es[y])});
        }
    }
    for (const auto& e : es) {
        for (const auto& d : ds) {
            if (!preceq(d.pair(), e.pair())) {
                pres.generators.push_back(
                    {RelationTag::e1b, {e.j, e.k, d.i, d.j, d.k}, var(alpha, e) * var(alpha, d)});
            }
        }
    }
    for (std::size_t x = 0; x < ds.size(); ++x) {
        for (std::size_t y = x + 1; y < ds.size(); ++y) {
            if (notcap_triple(ds[x].triple(), ds[y].triple())) {
                pres.generators.push_back({RelationTag::e1c,
                                           {ds[x].i, ds[x].j, ds[x].k, ds[y].i, ds[y].j, ds[y].k},
                                           var(alpha, ds[x]) * var(alpha, ds[y])});
            }
        }
    }
    Polynomial sum(alpha);
    for (const auto& e : es) {
        sum += var(alpha, e);
    }
    pres.generators.push_back({RelationTag::e2a, {}, std::move(sum)});
    std::vector<int> keys = ground.keys();
    for (int a : keys) {
        for (int b : keys) {
            for (int c : keys) {
                if (a == b || a == c || b == c) {
                    continue;
                }
                Polynomial p = e2b_sum(alpha, key_bit(a), key_bit(b), key_bit(c));
                if (p.is_zero()) {
                    continue;
                }
                pres.generators.push_back(
                    {RelationTag::e2b, {std::uint64_t(a), std::uint64_t(b), std::uint64_t(c)}, std::move(p)});
            }
        }
    }
    return pres;
}

IdealPresentation real_ideal(int ell) {
    if (ell < 2) {
        throw std::invalid_argument("real ideal needs l >= 2");
    }
    return real_ideal(GroundSet::standard(ell));
}

IdealPresentation make_ideal(Family family, const GroundSet& ground) {
    return family == Family::complex ? complex_ideal(ground) : real_ideal(ground);
}

IdealPresentation make_ideal(Family family, int ell) {
    return family == Family::complex ? complex_ideal(ell) : real_ideal(ell);
}

Polynomial rebuild_generator(Family family, const GroundSet& ground, RelationTag tag,
                             const std::vector<std::uint64_t>& ix) {
    auto alpha = make_alphabet(family, ground);
    auto need = [&](std::size_t n) {
        if (ix.size() != n) {
            throw std::invalid_argument("wrong index count for " + std::string(to_string(tag)));
        }
    };
    auto pair_var = [&](std::uint64_t j, std::uint64_t k) {
        PartitionPair p{j, k};
        return var(alpha, family == Family::complex ? GeneratorId::complex_d(p) : GeneratorId::real_e(p));
    };
    auto triple_var = [&](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
        return var(alpha, GeneratorId::real_d({i, j, k}));
    };
    switch (tag) {
    case RelationTag::e1a:
        need(4);
        return pair_var(ix[0], ix[1]) * pair_var(ix[2], ix[3]);
    case RelationTag::e1b:
        need(5);
        return pair_var(ix[0], ix[1]) * triple_var(ix[2], ix[3], ix[4]);
    case RelationTag::e1c:
        need(6);
        return triple_var(ix[0], ix[1], ix[2]) * triple_var(ix[3], ix[4], ix[5]);
    case RelationTag::e2:
        need(4);
        return complex_e2_element(ground, int(ix[0]), int(ix[1]), int(ix[2]), int(ix[3]));
    case RelationTag::e2a: {
        need(0);
        Polynomial sum(alpha);
        for (const auto& g : alpha->generators()) {
            if (g.kind == GeneratorKind::real_e) {
                sum += var(alpha, g);
            }
        }
        return sum;
    }
    case RelationTag::e2b:
        need(3);
        return real_e2b_element(ground, int(ix[0]), int(ix[1]), int(ix[2]));
    }
    throw std::invalid_argument("bad tag");
}

nlohmann::ordered_json to_json(const IdealPresentation& pres) {
    nlohmann::ordered_json doc;
    doc["family"] = std::string(to_string(pres.family));
    doc["ell"] = pres.ground.integer_mask() == GroundSet::standard(pres.ground.size()).mask() && !pres.ground.has_node()
                     ? nlohmann::ordered_json(pres.ground.size())
                     : nlohmann::ordered_json(nullptr);
    doc["ground_mask"] = pres.ground.integer_mask();
    doc["node"] = pres.ground.has_node();
    auto& names = doc["alphabet"] = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < pres.alphabet->size(); ++v) {
        names.push_back(pres.alphabet->name(v));
    }
    auto& gens = doc["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : pres.generators) {
        gens.push_back({{"tag", std::string(to_string(g.tag))}, {"indices", g.indices}, {"poly", g.poly.render()}});
    }
    return doc;
}

IdealPresentation presentation_from_json(const nlohmann::ordered_json& doc) {
    Family family = parse_family(doc.at("family").get<std::string>());
    auto mask = doc.at("ground_mask").get<Subset>();
    GroundSet ground = doc.at("node").get<bool>() ? GroundSet::with_node(mask) : GroundSet::of(mask);
    auto alpha = make_alphabet(family, ground);
    const auto& names = doc.at("alphabet");
    if (names.size() != alpha->size()) {
        throw std::invalid_argument("alphabet size mismatch");
    }
    for (std::size_t v = 0; v < names.size(); ++v) {
        if (names[v].get<std::string>() != alpha->name(v)) {
            throw std::invalid_argument("alphabet order mismatch at " + std::to_string(v));
        }
    }
    IdealPresentation pres{family, ground, alpha, {}};
    for (const auto& g : doc.at("generators")) {
        pres.generators.push_back({parse_tag(g.at("tag").get<std::string>()),
                                   g.at("indices").get<std::vector<std::uint64_t>>(),
                                   Polynomial::parse(alpha, g.at("poly").get<std::string>())});
    }
    return pres;
}

std::string render_presentation(const IdealPresentation& pres) {
    std::string out = "alphabet:";
    for (std::size_t v = 0; v < pres.alphabet->size(); ++v) {
        out += ' ' + pres.alphabet->name(v);
    }
    out += '\n';
    for (const auto& g : pres.generators) {
        out += std::string(to_string(g.tag)) + ": " + g.poly.render() + '\n';
    }
    return out;
}

} // namespace strata
