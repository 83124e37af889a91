#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "strata/graded_dimension.hpp"

using namespace strata;

namespace {

int expected_degree(Family f, RelationTag t) {
    switch (t) {
    case RelationTag::e1a:
        return f == Family::complex ? 4 : 2;
    case RelationTag::e1b:
        return 3;
    case RelationTag::e1c:
        return 4;
    case RelationTag::e2a:
        return 1;
    default:
        return 2;
    }
}

Subset permute(Subset s, const std::vector<int>& sigma) {
    Subset out = 0;
    for (std::size_t k = 1; k < sigma.size(); ++k) {
        if (s & key_bit(static_cast<int>(k))) {
            out |= key_bit(sigma[k]);
        }
    }
    return out;
}

// Relabels marks by sigma (1-based; sigma[0] unused). Real D classes pick up
// the orientation twist ε_{J,K}·ε_{σJ,σK}.
Polynomial relabel(const Polynomial& p, const std::vector<int>& sigma) {
    const auto& a = p.alphabet();
    std::vector<Polynomial> images;
    for (const auto& g : a->generators()) {
        Subset i = permute(g.i, sigma), j = permute(g.j, sigma), k = permute(g.k, sigma);
        PartitionPair c = canonical(j, k);
        int sign = 1;
        GeneratorId h;
        switch (g.kind) {
        case GeneratorKind::complex_d:
            h = GeneratorId::complex_d(c);
            break;
        case GeneratorKind::real_e:
            h = GeneratorId::real_e(c);
            break;
        case GeneratorKind::real_d:
            h = GeneratorId::real_d({i, c.j, c.k});
            sign = epsilon(g.j, g.k) * epsilon(j, k);
            break;
        }
        images.push_back(Rational(sign) * Polynomial::variable(a, h));
    }
    Polynomial out(a);
    for (const auto& [m, c] : p.terms()) {
        Polynomial t(a, c);
        for (const auto& [v, e] : m.factors()) {
            for (std::uint32_t r = 0; r < e; ++r) {
                t = t * images[v];
            }
        }
        out += t;
    }
    return out;
}

Polynomial sign_normalized(Polynomial p) {
    if (!p.is_zero() && p.terms().begin()->second < 0) {
        p = -p;
    }
    return p;
}

std::set<std::string> normalized_set(const IdealPresentation& pres) {
    std::set<std::string> out;
    for (const auto& g : pres.generators) {
        out.insert(sign_normalized(g.poly).render());
    }
    return out;
}

std::size_t linear_rank(const std::vector<Polynomial>& polys, const Alphabet& a) {
    IntegerEchelon ech(a.size());
    for (const auto& p : polys) {
        RationalRow row;
        for (const auto& [m, c] : p.terms()) {
            REQUIRE(m.factors().size() == 1);
            row.emplace_back(m.factors().front().first, c);
        }
        ech.insert(primitive_row(row));
    }
    return ech.rank();
}

// Set-based counts of the monomial relations, independent of the library's predicates.
struct Counts {
    std::size_t e1a = 0, e1b = 0, e1c = 0;
};

Counts oracle_real_counts(int n) {
    std::vector<std::pair<Subset, Subset>> pairs;
    for (Subset a = 0; a < (Subset{1} << n); ++a) {
        if (a & 1) {
            pairs.push_back({a, ((Subset{1} << n) - 1) & ~a});
        }
    }
    std::vector<std::array<Subset, 3>> triples;
    for (const auto& g : enumerate_generators(Family::real, GroundSet::standard(n))) {
        if (g.kind == GeneratorKind::real_d) {
            triples.push_back({g.i, g.j, g.k});
        }
    }
    auto sub = [](Subset x, Subset y) { return (x & ~y) == 0; };
    auto nest = [&](Subset j, Subset k, Subset j2, Subset k2) {
        return (sub(j, j2) && sub(k, k2)) || (sub(j, k2) && sub(k, j2));
    };
    Counts c;
    c.e1a = pairs.size() * (pairs.size() + 1) / 2;
    for (const auto& [j, k] : pairs) {
        for (const auto& t : triples) {
            c.e1b += nest(t[1], t[2], j, k) ? 0 : 1;
        }
    }
    for (std::size_t x = 0; x < triples.size(); ++x) {
        for (std::size_t y = x + 1; y < triples.size(); ++y) {
            const auto& t = triples[x];
            const auto& u = triples[y];
            bool par = !nest(t[1], t[2], u[1], u[2]) && !nest(u[1], u[2], t[1], t[2]);
            c.e1c += par && !sub(t[1] | t[2], u[0]) ? 1 : 0;
        }
    }
    return c;
}

} // namespace

TEST_CASE("complex ideal at small l") {
    CHECK(complex_ideal(3).generators.empty());
    CHECK_THROWS_AS(complex_ideal(2), std::invalid_argument);
    IdealPresentation p = complex_ideal(4);
    CHECK(p.count(RelationTag::e1a) == 3);
    auto a = p.alphabet;
    Polynomial d1 = Polynomial::variable(a, a->parse_name("D{12|34}"));
    Polynomial d2 = Polynomial::variable(a, a->parse_name("D{13|24}"));
    Polynomial d3 = Polynomial::variable(a, a->parse_name("D{14|23}"));
    std::set<std::string> e2;
    for (const auto& g : p.generators) {
        if (g.tag == RelationTag::e2) {
            e2.insert(g.poly.render());
        }
    }
    CHECK(e2.count((d1 - d2).render()) == 1);
    CHECK(e2.count((d1 - d3).render()) == 1);
    CHECK(e2.count((d2 - d3).render()) == 1);
    CHECK(linear_rank(std::vector<Polynomial>{d1 - d2, d1 - d3, d2 - d3}, *a) == 2);
    CHECK(ideal_contains(p, d1 * d1));
    CHECK_FALSE(ideal_contains(p, d1));
}

TEST_CASE("degenerate quadruples do not collapse degree two") {
    // A repeated mark leaves one of the two sums empty, which is not a relation.
    GroundSet g = GroundSet::standard(4);
    Polynomial degenerate = complex_e2_element(g, 1, 2, 1, 3);
    CHECK_FALSE(degenerate.is_zero());
    CHECK_FALSE(ideal_contains(complex_ideal(4), degenerate));
    CHECK(complex_e2_element(g, 1, 2, 3, 1).is_zero());
}

TEST_CASE("e2 relations match a direct enumeration") {
    for (int n = 4; n <= 6; ++n) {
        IdealPresentation p = complex_ideal(n);
        const auto& a = *p.alphabet;
        // Coefficient vectors over the class list, built from set membership.
        std::set<std::vector<int>> want;
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                for (int z = 1; z <= n; ++z)
                    for (int w = 1; w <= n; ++w) {
                        std::set<int> s{x, y, z, w};
                        if (s.size() != 4) {
                            continue;
                        }
                        std::vector<int> v(a.size(), 0);
                        for (std::size_t i = 0; i < a.size(); ++i) {
                            Subset j = a[i].j, k = a[i].k;
                            auto in = [](Subset part, int m) { return (part >> (m - 1)) & 1; };
                            auto together = [&](int m1, int m2, int m3, int m4) {
                                return (in(j, m1) && in(j, m2) && in(k, m3) && in(k, m4)) ||
                                       (in(k, m1) && in(k, m2) && in(j, m3) && in(j, m4));
                            };
                            v[i] = (together(x, y, z, w) ? 1 : 0) - (together(x, z, y, w) ? 1 : 0);
                        }
                        if (std::any_of(v.begin(), v.end(), [](int c) { return c != 0; })) {
                            want.insert(v);
                        }
                    }
        std::set<std::vector<int>> got;
        for (const auto& g : p.generators) {
            if (g.tag != RelationTag::e2) {
                continue;
            }
            std::vector<int> v(a.size(), 0);
            for (const auto& [m, c] : g.poly.terms()) {
                v[m.factors().front().first] = static_cast<int>(c.get_num().get_si());
            }
            got.insert(v);
        }
        CHECK(p.count(RelationTag::e2) == got.size());
        CHECK(got == want);
    }
}

TEST_CASE("real ideal at l = 2 and 3") {
    IdealPresentation p2 = real_ideal(2);
    CHECK(p2.alphabet->size() == 2);
    CHECK(p2.count(RelationTag::e1a) == 3);
    CHECK(p2.count(RelationTag::e2a) == 1);
    CHECK(p2.generators.size() == 4);
    CHECK_THROWS_AS(real_ideal(1), std::invalid_argument);

    IdealPresentation p3 = real_ideal(3);
    Counts want = oracle_real_counts(3);
    CHECK(want.e1a == 10);
    CHECK(p3.count(RelationTag::e1a) == want.e1a);
    CHECK(p3.count(RelationTag::e1b) == want.e1b);
    CHECK(p3.count(RelationTag::e1c) == want.e1c);
    CHECK(p3.count(RelationTag::e2a) == 1);
    CHECK(p3.count(RelationTag::e2b) == 6);

    std::vector<Polynomial> e2b;
    for (const auto& g : p3.generators) {
        if (g.tag == RelationTag::e2b) {
            e2b.push_back(g.poly);
        }
    }
    CHECK(linear_rank(e2b, *p3.alphabet) == 3);

    auto a = p3.alphabet;
    CHECK(real_e2b_element(GroundSet::standard(3), 1, 2, 3) ==
          Polynomial::parse(a, "D{3;12|} - D{2;13|} - D{1;2|3}"));
    CHECK_THROWS_AS(real_e2b_element(GroundSet::standard(3), 1, 1, 3), std::invalid_argument);
}

TEST_CASE("monomial relation counts match the oracle for l = 4, 5") {
    for (int n = 4; n <= 5; ++n) {
        IdealPresentation p = real_ideal(n);
        Counts want = oracle_real_counts(n);
        CHECK(p.count(RelationTag::e1a) == want.e1a);
        CHECK(p.count(RelationTag::e1b) == want.e1b);
        CHECK(p.count(RelationTag::e1c) == want.e1c);
    }
}

TEST_CASE("four-loop element") {
    auto a = make_alphabet(Family::real, GroundSet::standard(3));
    CHECK(real_e2b2_element(3, 1, 2, 3) == Polynomial::parse(a, "D{3;12|} + D{3;1|2} - D{2;13|} - D{2;1|3}"));
    CHECK(real_e2b2_element(2, 1, 2, 2).is_zero());
    CHECK_THROWS_AS(real_e2b2_element(3, 1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(real_e2b2_element(3, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(real_e2b2_element(3, 1, 2, 4), std::invalid_argument);
    CHECK(real_e2b2_element(3, 1, 2, 3).homogeneous_degree() == 2);
}

TEST_CASE("generators are homogeneous of the documented degree and rebuild exactly") {
    for (Family f : {Family::complex, Family::real}) {
        for (int n = min_ell(f); n <= 5; ++n) {
            IdealPresentation p = make_ideal(f, n);
            for (const auto& g : p.generators) {
                REQUIRE(g.poly.homogeneous_degree().has_value());
                CHECK(*g.poly.homogeneous_degree() == expected_degree(f, g.tag));
                CHECK(rebuild_generator(f, p.ground, g.tag, g.indices) == g.poly);
            }
        }
    }
    CHECK_THROWS_AS(rebuild_generator(Family::real, GroundSet::standard(3), RelationTag::e2b, {1, 2}),
                    std::invalid_argument);
}

TEST_CASE("JSON round trip") {
    for (Family f : {Family::complex, Family::real}) {
        IdealPresentation p = make_ideal(f, 4);
        auto doc = to_json(p);
        IdealPresentation q = presentation_from_json(nlohmann::ordered_json::parse(doc.dump()));
        REQUIRE(q.generators.size() == p.generators.size());
        for (std::size_t i = 0; i < p.generators.size(); ++i) {
            CHECK(q.generators[i].tag == p.generators[i].tag);
            CHECK(q.generators[i].indices == p.generators[i].indices);
            CHECK(q.generators[i].poly == p.generators[i].poly);
        }
        CHECK(to_json(q).dump() == doc.dump());
    }
    IdealPresentation sub = complex_ideal(GroundSet::with_node(key_bit(3) | key_bit(4) | key_bit(5)));
    IdealPresentation back = presentation_from_json(to_json(sub));
    CHECK(back.ground == sub.ground);
    CHECK(back.generators.size() == sub.generators.size());
}

TEST_CASE("relabeling marks permutes the generator set") {
    for (Family f : {Family::complex, Family::real}) {
        for (int n = std::max(min_ell(f), 3); n <= 5; ++n) {
            IdealPresentation p = make_ideal(f, n);
            auto base = normalized_set(p);
            std::vector<int> sigma(static_cast<std::size_t>(n) + 1);
            std::iota(sigma.begin(), sigma.end(), 0);
            int tried = 0;
            while (std::next_permutation(sigma.begin() + 1, sigma.end()) && tried < 12) {
                ++tried;
                std::set<std::string> moved;
                for (const auto& g : p.generators) {
                    moved.insert(sign_normalized(relabel(g.poly, sigma)).render());
                }
                CHECK(moved == base);
            }
        }
    }
}

TEST_CASE("e2b relabels to the relabeled index exactly") {
    GroundSet g = GroundSet::standard(4);
    std::vector<int> sigma{0, 3, 1, 4, 2};
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c) {
                if (a == b || a == c || b == c) {
                    continue;
                }
                CHECK(relabel(real_e2b_element(g, a, b, c), sigma) ==
                      real_e2b_element(g, sigma[a], sigma[b], sigma[c]));
            }
}

TEST_CASE("e2 relations are generated by those through a fixed mark") {
    for (int n = 5; n <= 5; ++n) {
        GroundSet g = GroundSet::standard(n);
        std::vector<int> m(static_cast<std::size_t>(n));
        std::iota(m.begin(), m.end(), 1);
        do {
            int s0 = m[0], a = m[1], b = m[2], c = m[3], d = m[4];
            CHECK(complex_e2_element(g, a, b, c, d) ==
                  complex_e2_element(g, s0, a, d, c) - complex_e2_element(g, s0, a, d, b));
        } while (std::next_permutation(m.begin(), m.end()));
    }
}

TEST_CASE("e2b relations recombine through a fixed mark") {
    for (int n = 4; n <= 4; ++n) {
        GroundSet g = GroundSet::standard(n);
        std::vector<int> m{1, 2, 3, 4};
        do {
            int s0 = m[0], a = m[1], b = m[2], c = m[3];
            CHECK(real_e2b_element(g, a, b, c) == real_e2b_element(g, s0, b, c) + real_e2b_element(g, b, a, s0) -
                                                       real_e2b_element(g, c, a, s0));
        } while (std::next_permutation(m.begin(), m.end()));
    }
}

TEST_CASE("the six-variable presentation at l = 3 has the same Hilbert function") {
    // x_i = E{i|rest}, y_i = D{i;rest|}; the remaining classes are set to zero.
    auto a = make_alphabet(Family::real, GroundSet::standard(3));
    auto v = [&](const char* name) { return Polynomial::variable(a, a->parse_name(name)); };
    std::vector<Polynomial> x{v("E{1|23}"), v("E{2|13}"), v("E{3|12}")};
    std::vector<Polynomial> y{v("D{1;23|}"), v("D{2;13|}"), v("D{3;12|}")};
    IdealPresentation paper{Family::real, GroundSet::standard(3), a, {}};
    auto add = [&](RelationTag t, Polynomial p) { paper.generators.push_back({t, {}, std::move(p)}); };
    for (const char* extra : {"E{123|}", "D{1;2|3}", "D{2;1|3}", "D{3;1|2}"}) {
        add(RelationTag::e2a, v(extra));
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            add(RelationTag::e1a, x[i] * x[j]);
            add(RelationTag::e1c, y[i] * y[j]);
        }
        for (int j = 0; j < 3; ++j) {
            if (i != j) {
                add(RelationTag::e1b, x[i] * y[j]);
            }
        }
    }
    add(RelationTag::e2b, x[0] * y[0] - x[1] * y[1]);
    add(RelationTag::e2b, x[0] * y[0] - x[2] * y[2]);
    std::vector<std::uint64_t> dims;
    for (int d = 0; d <= 3; ++d) {
        dims.push_back(SliceEngine(paper, d).quotient_dim());
    }
    CHECK(dims == std::vector<std::uint64_t>{1, 3, 3, 1});
    CHECK(quotient_dims(Family::real, 3).dims == dims);
}
