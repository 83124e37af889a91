#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "strata/transfer.hpp"

using namespace strata;

namespace {

Polynomial random_poly(const AlphabetPtr& a, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 3);
    std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(a->size() - 1));
    std::uniform_int_distribution<int> nfac(0, 2);
    std::uniform_int_distribution<int> coeff(-4, 4);
    Polynomial p(a);
    for (int t = nterms(rng); t > 0; --t) {
        std::vector<Monomial::Factor> f;
        for (int k = nfac(rng); k > 0; --k) {
            f.emplace_back(var(rng), 1);
        }
        p.add_term(Monomial(f, *a), coeff(rng));
    }
    return p;
}

AlphabetPtr level(Family f, int ell) {
    return make_alphabet(f, GroundSet::standard(ell));
}

PhiInput input(Family f, int ell) {
    PhiInput in;
    in.family = f;
    in.ell = ell;
    return in;
}

Polynomial var(const AlphabetPtr& a, const char* name) {
    return Polynomial::variable(a, a->parse_name(name));
}

} // namespace

TEST_CASE("F is a ring homomorphism") {
    std::mt19937_64 rng(314);
    int cases = 0;
    for (auto [f, ell] : {std::pair{Family::complex, 5}, std::pair{Family::real, 3}, std::pair{Family::real, 4}}) {
        auto a = level(f, ell);
        CHECK(F_map(f, ell, Polynomial(a, 1)) == Polynomial(level(f, ell + 1), 1));
        CHECK(F_map(f, ell, Polynomial(a)).is_zero());
        for (int trial = 0; trial < 200; ++trial, ++cases) {
            Polynomial p = random_poly(a, rng);
            Polynomial q = random_poly(a, rng);
            CHECK(F_map(f, ell, p * q) == F_map(f, ell, p) * F_map(f, ell, q));
            CHECK(F_map(f, ell, p + q) == F_map(f, ell, p) + F_map(f, ell, q));
            CHECK(F_map(f, ell, Rational(3, 2) * p) == Rational(3, 2) * F_map(f, ell, p));
        }
    }
    CHECK(cases >= 500);
    CHECK_THROWS_AS(F_map(Family::real, 4, Polynomial::variable(level(Family::real, 3), 0)), std::invalid_argument);
}

TEST_CASE("generator lifts") {
    auto lifts = lifted_generators(Family::complex, 4);
    REQUIRE(lifts.size() == 3);
    auto a5 = level(Family::complex, 5);
    CHECK(F_map(Family::complex, 4, var(level(Family::complex, 4), "D{12|34}")) ==
          var(a5, "D{125|34}") + var(a5, "D{12|345}"));
    auto r4 = level(Family::real, 4);
    CHECK(F_map(Family::real, 3, var(level(Family::real, 3), "D{1;2|3}")) ==
          var(r4, "D{14;2|3}") + var(r4, "D{1;24|3}") + var(r4, "D{1;2|34}"));
    CHECK(F_map(Family::real, 3, var(level(Family::real, 3), "E{123|}")) == var(r4, "E{1234|}") + var(r4, "E{123|4}"));
    for (const auto& lg : lifted_generators(Family::real, 4)) {
        CHECK(lg.images.size() == (lg.source.kind == GeneratorKind::real_e ? 2u : 3u));
    }
}

TEST_CASE("linear relations lift to the same relations") {
    for (int ell = 4; ell <= 6; ++ell) {
        GroundSet g = GroundSet::standard(ell), h = GroundSet::standard(ell + 1);
        for (int a = 1; a <= ell; ++a)
            for (int b = 1; b <= ell; ++b)
                for (int c = 1; c <= ell; ++c)
                    for (int d = 1; d <= ell; ++d) {
                        if (a == b || a == c || a == d || b == c || b == d || c == d) {
                            continue;
                        }
                        CHECK(F_map(Family::complex, ell, complex_e2_element(g, a, b, c, d)) ==
                              complex_e2_element(h, a, b, c, d));
                    }
    }
    for (int ell = 3; ell <= 5; ++ell) {
        GroundSet g = GroundSet::standard(ell), h = GroundSet::standard(ell + 1);
        for (int a = 1; a <= ell; ++a)
            for (int b = 1; b <= ell; ++b)
                for (int c = 1; c <= ell; ++c) {
                    if (a == b || a == c || b == c) {
                        continue;
                    }
                    CHECK(F_map(Family::real, ell, real_e2b_element(g, a, b, c)) == real_e2b_element(h, a, b, c));
                }
        auto sum_e = [](int n) {
            for (const auto& gen : real_ideal(n).generators) {
                if (gen.tag == RelationTag::e2a) {
                    return gen.poly;
                }
            }
            FAIL("no e2a generator");
            return Polynomial(nullptr);
        };
        CHECK(F_map(Family::real, ell, sum_e(ell)) == sum_e(ell + 1));
    }
}

TEST_CASE("distinguished classes") {
    auto c5 = level(Family::complex, 5);
    GroundSet g4 = GroundSet::standard(4);
    PartitionPair p = canonical(g4.parse("12"), g4.parse("34"));
    CHECK(c5->name(c5->index_of(complex_D0(4, p))) == "D{12|345}");
    CHECK(c5->name(c5->index_of(complex_special(4))) == "D{15|234}");
    auto r4 = level(Family::real, 4);
    GroundSet g3 = GroundSet::standard(3);
    PartitionPair q = canonical(g3.parse("1"), g3.parse("23"));
    CHECK(r4->name(r4->index_of(real_E0(3, q))) == "D{4;1|23}");
    CHECK(r4->name(r4->index_of(real_Eminus(3, q))) == "E{1|234}");
    CHECK(r4->name(r4->index_of(real_special(3))) == "D{23;14|}");
    TriplePartition t{g3.parse("1"), g3.parse("2"), g3.parse("3")};
    CHECK(r4->name(r4->index_of(real_D0(3, t))) == "D{1;24|3}");
    CHECK(r4->name(r4->index_of(real_Dminus(3, t))) == "D{1;2|34}");
    TriplePartition u{g3.parse("2"), g3.parse("1"), g3.parse("3")};
    CHECK(r4->name(r4->index_of(real_D0(3, u))) == "D{24;1|3}");
}

TEST_CASE("subcurve maps on examples") {
    GroundSet g5 = GroundSet::standard(5);
    PartitionPair p = canonical(g5.parse("12"), g5.parse("345"));
    GroundSet k_side = side_ground(p, Side::K);
    auto ka = make_alphabet(Family::complex, k_side);
    auto c5 = level(Family::complex, 5);
    CHECK(FJK_complex(5, p, Side::K, var(ka, "D{n3|45}")) == var(c5, "D{123|45}"));
    CHECK(FJK_complex(5, p, Side::K, var(ka, "D{n4|35}")) == var(c5, "D{124|35}"));
    GroundSet j_side = side_ground(p, Side::J);
    CHECK(j_side.size() == 3);
    auto ja = make_alphabet(Family::complex, j_side);
    CHECK(ja->size() == 0);
    TensorElement t;
    t.terms.emplace_back(Polynomial(ja, 2), var(ka, "D{n3|45}"));
    CHECK(FJK_complex(5, p, t) == Rational(2) * var(c5, "D{123|45}"));

    GroundSet g3 = GroundSet::standard(3);
    auto r3 = level(Family::real, 3);
    TriplePartition wide{g3.parse("1"), g3.parse("23"), 0};
    auto la = make_alphabet(Family::real, triple_left_ground(wide));
    CHECK(FIJK_real_left(3, wide, var(la, "E{n|1}")) == var(r3, "E{1|23}"));
    TriplePartition split{g3.parse("1"), g3.parse("2"), g3.parse("3")};
    auto lb = make_alphabet(Family::real, triple_left_ground(split));
    CHECK(FIJK_real_left(3, split, var(lb, "E{n|1}")) == var(r3, "E{13|2}"));
    CHECK(FIJK_real_left(3, split, var(lb, "E{n1|}")) == var(r3, "E{12|3}"));

    // Every class of the complex ring on {nd} ⊔ [ell] maps to ±1 times a single D.
    for (int ell = 2; ell <= 5; ++ell) {
        GroundSet whole = GroundSet::with_node(GroundSet::standard(ell).mask());
        auto wa = make_alphabet(Family::complex, whole);
        for (const auto& pp : all_pairs(GroundSet::standard(ell).mask())) {
            for (std::size_t v = 0; v < wa->size(); ++v) {
                Polynomial img = FJK_real(ell, pp, Polynomial::variable(wa, v));
                REQUIRE(img.terms().size() == 1);
                const auto& [m, c] = *img.terms().begin();
                CHECK(m.degree() == 2);
                CHECK((c == 1 || c == -1));
            }
        }
    }
}

TEST_CASE("phi on simple inputs") {
    PhiInput empty = input(Family::complex, 4);
    CHECK(phi(empty).is_zero());
    PhiInput one = input(Family::real, 3);
    one.kappa = Polynomial(level(Family::real, 3), 1);
    CHECK(phi(one) == Polynomial(level(Family::real, 4), 1));
    PhiInput special = input(Family::complex, 4);
    special.kappa0 = Polynomial(level(Family::complex, 4), 1);
    auto c5 = level(Family::complex, 5);
    CHECK(phi(special) == Polynomial::variable(c5, complex_special(4)));

    PhiInput bad = input(Family::complex, 4);
    bad.pair_components.emplace(PartitionPair{key_bit(1), key_bit(2)},
                                std::pair{Polynomial(nullptr), Polynomial(nullptr)});
    CHECK_THROWS_AS(phi(bad), std::invalid_argument);
    PhiInput narrow = input(Family::complex, 4);
    GroundSet g4 = GroundSet::standard(4);
    narrow.pair_tensors.emplace(canonical(g4.parse("1"), g4.parse("234")), TensorElement{});
    CHECK_THROWS_AS(phi(narrow), std::invalid_argument);
}

TEST_CASE("phi is linear in each component") {
    GroundSet g4 = GroundSet::standard(4);
    auto r4 = level(Family::real, 4);
    PartitionPair p = canonical(g4.parse("1"), g4.parse("23"));
    auto whole = make_alphabet(Family::complex, GroundSet::with_node(GroundSet::standard(3).mask()));
    Polynomial x = var(whole, "D{12|3n}");
    PhiInput a = input(Family::real, 3);
    a.pair_components.emplace(p, std::pair{x, Polynomial(whole)});
    PhiInput b = a;
    b.pair_components.at(p).first = Rational(2) * x;
    CHECK(phi(b) == Rational(2) * phi(a));
    CHECK(phi(a) == Polynomial::variable(r4, real_E0(3, p)) * F_map(Family::real, 3, FJK_real(3, p, x)));
    CHECK(phi(a).homogeneous_degree() == 4);
}

TEST_CASE("transport of generators") {
    for (int ell = 3; ell <= 5; ++ell) {
        VerificationReport r = verify_F_transport(Family::complex, ell);
        CHECK(r.passed());
        CHECK(r.entries.size() == complex_ideal(ell).generators.size());
    }
    for (int ell = 2; ell <= 4; ++ell) {
        VerificationReport r = verify_F_transport(Family::real, ell);
        CHECK(r.passed());
        CHECK(r.entries.size() == real_ideal(ell).generators.size());
    }
}

TEST_CASE("well-definedness reports") {
    VerificationReport c4 = verify_phi_well_defined(Family::complex, 4);
    CHECK(c4.passed());
    CHECK(c4.entries.size() > 0);
    VerificationReport r2 = verify_phi_well_defined(Family::real, 2);
    CHECK(r2.passed());
    VerificationReport r3 = verify_phi_well_defined(Family::real, 3);
    CHECK(r3.passed());
    auto doc = r3.to_json();
    CHECK(doc["family"] == "real");
    CHECK(doc["ell"] == 3);
    CHECK(doc["entries"].size() == r3.entries.size());
    const auto& e = doc["entries"][0];
    CHECK(e.contains("check"));
    CHECK(e.contains("indices"));
    CHECK(e["witness"].contains("slice_rank"));
    CHECK(e["witness"].contains("slice_columns"));
    CHECK(verify_phi_well_defined(Family::complex, 5).passed());
    VerificationReport r4 = verify_phi_well_defined(Family::real, 4);
    CHECK(r4.complete);
    CHECK(r4.passed());
}

TEST_CASE("surjectivity in every degree") {
    for (int ell = 3; ell <= 5; ++ell) {
        for (int d = 0; d <= top_degree(Family::complex, ell + 1); ++d) {
            CAPTURE(ell);
            CAPTURE(d);
            CHECK(verify_phi_surjective(Family::complex, ell, d));
        }
    }
    for (int ell = 2; ell <= 4; ++ell) {
        for (int d = 0; d <= top_degree(Family::real, ell + 1); ++d) {
            CAPTURE(ell);
            CAPTURE(d);
            CheckEntry detail;
            CHECK(verify_phi_surjective(Family::real, ell, d, &detail));
            CHECK(detail.rank == detail.columns);
        }
    }
    CHECK_THROWS_AS(verify_phi_surjective(Family::real, 3, 6), std::invalid_argument);
}

TEST_CASE("controls: the checks can fail") {
    // F and the special class alone do not reach degree 2 at five marks.
    auto c4 = level(Family::complex, 4);
    auto c5 = level(Family::complex, 5);
    SliceEngine slice(complex_ideal(5), 2);
    std::vector<Polynomial> partial;
    for (const auto& m : monomials_of_degree(*c4, 2)) {
        partial.push_back(F_map(Family::complex, 4, Polynomial::monomial(c4, m)));
    }
    partial.push_back(Polynomial::variable(c5, complex_special(4)));
    CHECK(slice.rank_with(partial) < slice.columns());

    // A lift that drops the second image breaks transport of the linear relations.
    std::vector<Polynomial> one_sided;
    for (const auto& lg : lifted_generators(Family::complex, 4)) {
        one_sided.push_back(Polynomial::variable(c5, lg.images.front().first));
    }
    bool escaped = false;
    for (const auto& g : complex_ideal(4).generators) {
        escaped = escaped || !ideal_contains(complex_ideal(5), substitute(g.poly, c5, one_sided));
    }
    CHECK(escaped);

    // Dropping the signs of the real subcurve map sends some relation outside the ideal.
    int ell = 3;
    auto r3 = level(Family::real, ell);
    auto r4 = level(Family::real, ell + 1);
    GroundSet whole = GroundSet::with_node(GroundSet::standard(ell).mask());
    auto wa = make_alphabet(Family::complex, whole);
    IdealPresentation target = real_ideal(ell + 1);
    bool unsigned_escaped = false;
    for (const auto& p : all_pairs(GroundSet::standard(ell).mask())) {
        std::vector<Polynomial> unsigned_images;
        for (std::size_t v = 0; v < wa->size(); ++v) {
            Polynomial img = FJK_real(ell, p, Polynomial::variable(wa, v));
            Polynomial flat(r3);
            for (const auto& [m, c] : img.terms()) {
                flat.add_term(m, abs(c));
            }
            unsigned_images.push_back(flat);
        }
        Polynomial e0 = Polynomial::variable(r4, real_E0(ell, p));
        for (const auto& g : complex_ideal(whole).generators) {
            CHECK(ideal_contains(target, e0 * F_map(Family::real, ell, FJK_real(ell, p, g.poly))));
            Polynomial flat = e0 * F_map(Family::real, ell, substitute(g.poly, r3, unsigned_images));
            unsigned_escaped = unsigned_escaped || !ideal_contains(target, flat);
        }
    }
    CHECK(unsigned_escaped);
}
