#include "strata/transfer.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace strata {

namespace {

Subset new_mark(int ell) {
    return key_bit(ell + 1);
}

AlphabetPtr level_alphabet(Family family, int ell) {
    return make_alphabet(family, GroundSet::standard(ell));
}

void check_source(const Polynomial& p, const AlphabetPtr& expected, const char* what) {
    if (!same_alphabet(p.alphabet(), expected)) {
        throw std::invalid_argument(std::string(what) + ": polynomial over the wrong alphabet");
    }
}

void check_ell(Family family, int ell) {
    if (ell < min_ell(family) || ell + 1 > kMaxMarks) {
        throw std::invalid_argument("transfer level out of range");
    }
}

// The part of `p` containing `bit`, and the other part.
std::pair<Subset, Subset> designate(const PartitionPair& p, Subset bit) {
    return (p.j & bit) ? std::pair{p.j, p.k} : std::pair{p.k, p.j};
}

std::vector<Polynomial> images_of(const AlphabetPtr& source, const AlphabetPtr& target,
                                  const std::function<Polynomial(const GeneratorId&)>& fn) {
    std::vector<Polynomial> out;
    out.reserve(source->size());
    for (const auto& g : source->generators()) {
        Polynomial img = fn(g);
        check_source(img, target, "generator image");
        out.push_back(std::move(img));
    }
    return out;
}

std::string render_indices(const IdealGenerator& g, const GroundSet& ground) {
    std::string out;
    bool marks = g.tag == RelationTag::e2 || g.tag == RelationTag::e2b;
    for (auto x : g.indices) {
        if (!out.empty()) {
            out += ' ';
        }
        out += marks ? ground.label(static_cast<int>(x)) : ground.render(x);
    }
    return std::string(to_string(g.tag)) + (out.empty() ? "" : " " + out);
}

} // namespace

std::vector<LiftedGenerator> lifted_generators(Family family, int ell) {
    check_ell(family, ell);
    auto source = level_alphabet(family, ell);
    Subset n = new_mark(ell);
    std::vector<LiftedGenerator> out;
    for (const auto& g : source->generators()) {
        LiftedGenerator lg{g, {}};
        switch (g.kind) {
        case GeneratorKind::complex_d:
            lg.images = {{GeneratorId::complex_d(canonical(g.j | n, g.k)), 1},
                         {GeneratorId::complex_d(canonical(g.j, g.k | n)), 1}};
            break;
        case GeneratorKind::real_e:
            lg.images = {{GeneratorId::real_e(canonical(g.j | n, g.k)), 1},
                         {GeneratorId::real_e(canonical(g.j, g.k | n)), 1}};
            break;
        case GeneratorKind::real_d: {
            PartitionPair a = canonical(g.j | n, g.k);
            PartitionPair b = canonical(g.j, g.k | n);
            lg.images = {{GeneratorId::real_d({g.i | n, g.j, g.k}), 1},
                         {GeneratorId::real_d({g.i, a.j, a.k}), 1},
                         {GeneratorId::real_d({g.i, b.j, b.k}), 1}};
            break;
        }
        }
        out.push_back(std::move(lg));
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const AlphabetPtr& target, const std::vector<Polynomial>& images) {
    Polynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term(target, c);
        for (const auto& [v, e] : m.factors()) {
            for (std::uint32_t r = 0; r < e; ++r) {
                term = term * images.at(v);
            }
        }
        out += term;
    }
    return out;
}

Polynomial F_map(Family family, int ell, const Polynomial& p) {
    check_ell(family, ell);
    check_source(p, level_alphabet(family, ell), "F");
    using Key = std::pair<int, int>;
    static std::mutex mutex;
    static std::map<Key, std::vector<Polynomial>> cache;
    auto target = level_alphabet(family, ell + 1);
    const std::vector<Polynomial>* images = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& slot = cache[{static_cast<int>(family), ell}];
        if (slot.empty() && p.alphabet()->size() > 0) {
            for (const auto& lg : lifted_generators(family, ell)) {
                Polynomial img(target);
                for (const auto& [g, s] : lg.images) {
                    img += Rational(s) * Polynomial::variable(target, g);
                }
                slot.push_back(std::move(img));
            }
        }
        images = &slot;
    }
    return substitute(p, target, *images);
}

GeneratorId complex_D0(int ell, const PartitionPair& p) {
    return GeneratorId::complex_d(canonical(p.j, p.k | new_mark(ell)));
}

GeneratorId complex_special(int ell) {
    Subset all = GroundSet::standard(ell).mask();
    return GeneratorId::complex_d(canonical(key_bit(1) | new_mark(ell), all & ~key_bit(1)));
}

GeneratorId real_E0(int ell, const PartitionPair& p) {
    PartitionPair c = canonical(p.j, p.k);
    return GeneratorId::real_d({new_mark(ell), c.j, c.k});
}

GeneratorId real_Eminus(int ell, const PartitionPair& p) {
    return GeneratorId::real_e(canonical(p.j, p.k | new_mark(ell)));
}

GeneratorId real_D0(int ell, const TriplePartition& t) {
    Subset n = new_mark(ell);
    if (t.i & key_bit(1)) {
        PartitionPair c = canonical(t.j | n, t.k);
        return GeneratorId::real_d({t.i, c.j, c.k});
    }
    PartitionPair c = canonical(t.j, t.k);
    return GeneratorId::real_d({t.i | n, c.j, c.k});
}

GeneratorId real_Dminus(int ell, const TriplePartition& t) {
    PartitionPair c = canonical(t.j, t.k | new_mark(ell));
    return GeneratorId::real_d({t.i, c.j, c.k});
}

GeneratorId real_special(int ell) {
    Subset all = GroundSet::standard(ell).mask();
    return GeneratorId::real_d({all & ~key_bit(1), key_bit(1) | new_mark(ell), 0});
}

GroundSet side_ground(const PartitionPair& p, Side side) {
    return GroundSet::with_node(side == Side::J ? p.j : p.k);
}

Polynomial FJK_complex(int ell, const PartitionPair& p, Side side, const Polynomial& q) {
    GroundSet ground = side_ground(p, side);
    auto source = make_alphabet(Family::complex, ground);
    check_source(q, source, "F_JK");
    auto target = level_alphabet(Family::complex, ell);
    Subset fill = side == Side::J ? p.k : p.j;
    Subset nd = ground.node_bit();
    auto images = images_of(source, target, [&](const GeneratorId& g) {
        auto [with, without] = designate(g.pair(), nd);
        return Polynomial::variable(target, GeneratorId::complex_d(canonical(fill | (with & ~nd), without)));
    });
    return substitute(q, target, images);
}

Polynomial FJK_complex(int ell, const PartitionPair& p, const TensorElement& t) {
    auto target = level_alphabet(Family::complex, ell);
    Polynomial out(target);
    for (const auto& [left, right] : t.terms) {
        out += FJK_complex(ell, p, Side::J, left) * FJK_complex(ell, p, Side::K, right);
    }
    return out;
}

Polynomial FJK_real(int ell, const PartitionPair& p, const Polynomial& q) {
    GroundSet ground = GroundSet::with_node(GroundSet::standard(ell).mask());
    auto source = make_alphabet(Family::complex, ground);
    check_source(q, source, "F_JK");
    auto target = level_alphabet(Family::real, ell);
    PartitionPair c = canonical(p.j, p.k);
    int sign = popcount(c.k) % 2 == 0 ? 1 : -1;
    Subset nd = ground.node_bit();
    auto images = images_of(source, target, [&](const GeneratorId& g) {
        auto [with, without] = designate(g.pair(), nd);
        Subset a = c.j & without;
        Subset b = c.k & without;
        PartitionPair d = canonical(a, b);
        return Rational(sign * epsilon(a, b)) *
               Polynomial::variable(target, GeneratorId::real_d({with & ~nd, d.j, d.k}));
    });
    return substitute(q, target, images);
}

GroundSet triple_left_ground(const TriplePartition& t) {
    return GroundSet::with_node(t.i);
}

GroundSet triple_right_ground(const TriplePartition& t) {
    return GroundSet::with_node(t.j | t.k);
}

Polynomial FIJK_real_left(int ell, const TriplePartition& t, const Polynomial& q) {
    GroundSet ground = triple_left_ground(t);
    auto source = make_alphabet(Family::real, ground);
    check_source(q, source, "F_IJK");
    auto target = level_alphabet(Family::real, ell);
    Subset nd = ground.node_bit();
    auto images = images_of(source, target, [&](const GeneratorId& g) {
        if (g.kind == GeneratorKind::real_e) {
            auto [with, without] = designate(g.pair(), nd);
            return Polynomial::variable(target, GeneratorId::real_e(canonical(t.j | (with & ~nd), t.k | without)));
        }
        if (g.i & nd) {
            return Polynomial::variable(target, GeneratorId::real_d({(g.i & ~nd) | t.j | t.k, g.j, g.k}));
        }
        auto [with, without] = designate(g.pair(), nd);
        PartitionPair d = canonical(t.j | (with & ~nd), t.k | without);
        return Polynomial::variable(target, GeneratorId::real_d({g.i, d.j, d.k}));
    });
    return substitute(q, target, images);
}

Polynomial FIJK_real_right(int ell, const TriplePartition& t, const Polynomial& q) {
    GroundSet ground = triple_right_ground(t);
    auto source = make_alphabet(Family::complex, ground);
    check_source(q, source, "F_IJK");
    auto target = level_alphabet(Family::real, ell);
    PartitionPair c = canonical(t.j, t.k);
    int sign = popcount(c.k) % 2 == 0 ? 1 : -1;
    Subset nd = ground.node_bit();
    auto images = images_of(source, target, [&](const GeneratorId& g) {
        auto [with, without] = designate(g.pair(), nd);
        Subset a = c.j & without;
        Subset b = c.k & without;
        PartitionPair d = canonical(a, b);
        return Rational(sign * epsilon(a, b)) *
               Polynomial::variable(target, GeneratorId::real_d({t.i | (with & ~nd), d.j, d.k}));
    });
    return substitute(q, target, images);
}

Polynomial FIJK_real(int ell, const TriplePartition& t, const TensorElement& x) {
    auto target = level_alphabet(Family::real, ell);
    Polynomial out(target);
    for (const auto& [left, right] : x.terms) {
        out += FIJK_real_left(ell, t, left) * FIJK_real_right(ell, t, right);
    }
    return out;
}

Polynomial phi(const PhiInput& in) {
    check_ell(in.family, in.ell);
    int ell = in.ell;
    auto target = level_alphabet(in.family, ell + 1);
    auto var = [&](const GeneratorId& g) { return Polynomial::variable(target, g); };
    auto F = [&](const Polynomial& p) { return F_map(in.family, ell, p); };
    Polynomial out(target);
    if (in.kappa0) {
        out += var(in.family == Family::complex ? complex_special(ell) : real_special(ell)) * F(*in.kappa0);
    }
    if (in.kappa) {
        out += F(*in.kappa);
    }
    if (in.family == Family::complex) {
        if (!in.pair_components.empty() || !in.triple_components.empty()) {
            throw std::invalid_argument("real components in a complex input");
        }
        for (const auto& [p, t] : in.pair_tensors) {
            if (popcount(p.j) < 2 || popcount(p.k) < 2 || p.ground() != GroundSet::standard(ell).mask()) {
                throw std::invalid_argument("tensor component indexed by a non-bullet pair");
            }
            out += var(complex_D0(ell, p)) * F(FJK_complex(ell, p, t));
        }
        return out;
    }
    if (!in.pair_tensors.empty()) {
        throw std::invalid_argument("complex components in a real input");
    }
    for (const auto& [p, k] : in.pair_components) {
        out += var(real_E0(ell, p)) * F(FJK_real(ell, p, k.first));
        out += var(real_Eminus(ell, p)) * F(FJK_real(ell, p, k.second));
    }
    for (const auto& [t, k] : in.triple_components) {
        out += var(real_D0(ell, t)) * F(FIJK_real(ell, t, k.first));
        out += var(real_Dminus(ell, t)) * F(FIJK_real(ell, t, k.second));
    }
    return out;
}

bool VerificationReport::passed() const {
    return complete && failures() == 0;
}

std::size_t VerificationReport::failures() const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        n += e.pass ? 0 : 1;
    }
    return n;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["family"] = std::string(to_string(family));
    doc["ell"] = ell;
    doc["complete"] = complete;
    auto& list = doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        list.push_back({{"check", e.check},
                        {"indices", e.indices},
                        {"degree", e.degree},
                        {"pass", e.pass},
                        {"witness", {{"slice_rank", e.rank}, {"slice_columns", e.columns}}}});
    }
    return doc;
}

namespace {

struct Checker {
    VerificationReport& report;
    IdealOracle& oracle;
    int bound;

    void operator()(const std::string& check, const std::string& indices, const Polynomial& image) {
        CheckEntry e{check, indices, 0, true, 0, 0};
        if (!image.is_zero()) {
            auto d = image.homogeneous_degree();
            if (!d) {
                e.pass = false;
                report.entries.push_back(e);
                return;
            }
            e.degree = *d;
            if (*d > bound) {
                return;
            }
            try {
                const SliceEngine& s = oracle.slice(*d);
                e.pass = s.contains(image);
                e.rank = s.rank();
                e.columns = s.columns();
            } catch (const ResourceLimit&) {
                report.complete = false;
                return;
            }
        }
        report.entries.push_back(e);
    }
};

// Products g·m for each monomial m of the other ring with deg(g) + deg(m) <= limit.
template <typename Fn>
void with_multipliers(const Alphabet& other, int base_degree, int limit, Fn&& fn) {
    for (int d = 0; base_degree + d <= limit; ++d) {
        for (const auto& m : monomials_of_degree(other, d)) {
            fn(m);
        }
    }
}

} // namespace

VerificationReport verify_F_transport(Family family, int ell) {
    check_ell(family, ell);
    VerificationReport report{family, ell, {}, true};
    auto oracle = standard_oracle(family, GroundSet::standard(ell + 1));
    Checker check{report, *oracle, top_degree(family, ell + 1)};
    // Transport of generators is checked at every degree, including above the top.
    check.bound = 1 << 20;
    IdealPresentation pres = make_ideal(family, ell);
    for (const auto& g : pres.generators) {
        check("F", render_indices(g, pres.ground), F_map(family, ell, g.poly));
    }
    return report;
}

VerificationReport verify_phi_well_defined(Family family, int ell, std::optional<int> degree_bound) {
    check_ell(family, ell);
    VerificationReport report{family, ell, {}, true};
    auto oracle = standard_oracle(family, GroundSet::standard(ell + 1));
    int bound = degree_bound.value_or(top_degree(family, ell + 1));
    Checker check{report, *oracle, bound};
    auto target = level_alphabet(family, ell + 1);
    auto var = [&](const GeneratorId& g) { return Polynomial::variable(target, g); };
    auto F = [&](const Polynomial& p) { return F_map(family, ell, p); };

    IdealPresentation pres = make_ideal(family, ell);
    Polynomial special = var(family == Family::complex ? complex_special(ell) : real_special(ell));
    for (const auto& g : pres.generators) {
        std::string ix = render_indices(g, pres.ground);
        Polynomial img = F(g.poly);
        check("kappa", ix, img);
        check("kappa0", ix, special * img);
    }

    if (family == Family::complex) {
        for (const auto& p : bullet_pairs(GroundSet::standard(ell).mask())) {
            Polynomial d0 = var(complex_D0(ell, p));
            for (Side side : {Side::J, Side::K}) {
                GroundSet own = side_ground(p, side);
                GroundSet other = side_ground(p, side == Side::J ? Side::K : Side::J);
                auto other_alpha = make_alphabet(Family::complex, other);
                IdealPresentation sub = complex_ideal(own);
                for (const auto& g : sub.generators) {
                    std::string ix = pres.ground.render(p.j) + "|" + pres.ground.render(p.k) + " " +
                                     render_indices(g, own);
                    with_multipliers(*other_alpha, 2 + *g.poly.homogeneous_degree(), bound, [&](const Monomial& m) {
                        Polynomial mp = Polynomial::monomial(other_alpha, m);
                        TensorElement t;
                        if (side == Side::J) {
                            t.terms.emplace_back(g.poly, mp);
                        } else {
                            t.terms.emplace_back(mp, g.poly);
                        }
                        check(side == Side::J ? "pair-left" : "pair-right", ix + " * " + m.render(*other_alpha),
                              d0 * F(FJK_complex(ell, p, t)));
                    });
                }
            }
        }
        return report;
    }

    IdealPresentation whole = complex_ideal(GroundSet::with_node(GroundSet::standard(ell).mask()));
    for (const auto& p : all_pairs(GroundSet::standard(ell).mask())) {
        Polynomial e0 = var(real_E0(ell, p));
        Polynomial em = var(real_Eminus(ell, p));
        std::string head = pres.ground.render(p.j) + "|" + pres.ground.render(p.k) + " ";
        for (const auto& g : whole.generators) {
            Polynomial img = F(FJK_real(ell, p, g.poly));
            std::string ix = head + render_indices(g, whole.ground);
            check("pair-E0", ix, e0 * img);
            check("pair-E-", ix, em * img);
        }
    }
    for (const auto& t : bullet_triples(GroundSet::standard(ell).mask())) {
        Polynomial d0 = var(real_D0(ell, t));
        Polynomial dm = var(real_Dminus(ell, t));
        GroundSet lg = triple_left_ground(t);
        GroundSet rg = triple_right_ground(t);
        auto la = make_alphabet(Family::real, lg);
        auto ra = make_alphabet(Family::complex, rg);
        std::string head = pres.ground.render(t.i) + ";" + pres.ground.render(t.j) + "|" + pres.ground.render(t.k) + " ";
        auto emit = [&](const char* name, const std::string& ix, const TensorElement& x) {
            Polynomial img = F(FIJK_real(ell, t, x));
            check(std::string(name) + "-D0", ix, d0 * img);
            check(std::string(name) + "-D-", ix, dm * img);
        };
        for (const auto& g : real_ideal(lg).generators) {
            with_multipliers(*ra, 2 + *g.poly.homogeneous_degree(), bound, [&](const Monomial& m) {
                TensorElement x;
                x.terms.emplace_back(g.poly, Polynomial::monomial(ra, m));
                emit("triple-left", head + render_indices(g, lg) + " * " + m.render(*ra), x);
            });
        }
        if (rg.size() >= 3) {
            for (const auto& g : complex_ideal(rg).generators) {
                with_multipliers(*la, 2 + *g.poly.homogeneous_degree(), bound, [&](const Monomial& m) {
                    TensorElement x;
                    x.terms.emplace_back(Polynomial::monomial(la, m), g.poly);
                    emit("triple-right", head + render_indices(g, rg) + " * " + m.render(*la), x);
                });
            }
        }
    }
    return report;
}

bool verify_phi_surjective(Family family, int ell, int d, CheckEntry* detail) {
    check_ell(family, ell);
    if (d < 0 || d > top_degree(family, ell + 1)) {
        throw std::invalid_argument("degree outside [0, top degree]");
    }
    auto oracle = standard_oracle(family, GroundSet::standard(ell + 1));
    const SliceEngine& slice = oracle->slice(d);
    auto target = level_alphabet(family, ell + 1);
    auto source = level_alphabet(family, ell);
    auto var = [&](const GeneratorId& g) { return Polynomial::variable(target, g); };
    auto F = [&](const Polynomial& p) { return F_map(family, ell, p); };
    auto monos = [](const AlphabetPtr& a, int deg) {
        return deg < 0 ? std::vector<Monomial>{} : monomials_of_degree(*a, deg);
    };
    std::vector<Polynomial> images;
    for (const auto& m : monos(source, d)) {
        images.push_back(F(Polynomial::monomial(source, m)));
    }
    Polynomial special = var(family == Family::complex ? complex_special(ell) : real_special(ell));
    for (const auto& m : monos(source, d - 2)) {
        images.push_back(special * F(Polynomial::monomial(source, m)));
    }
    // Products of left and right monomials with total degree `deg`.
    auto tensor_basis = [&](const AlphabetPtr& la, const AlphabetPtr& ra, int deg) {
        std::vector<TensorElement> out;
        for (int dl = 0; dl <= deg; ++dl) {
            auto rs = monos(ra, deg - dl);
            for (const auto& ml : monos(la, dl)) {
                for (const auto& mr : rs) {
                    TensorElement x;
                    x.terms.emplace_back(Polynomial::monomial(la, ml), Polynomial::monomial(ra, mr));
                    out.push_back(std::move(x));
                }
            }
        }
        return out;
    };
    Subset all = GroundSet::standard(ell).mask();
    if (family == Family::complex) {
        for (const auto& p : bullet_pairs(all)) {
            auto la = make_alphabet(Family::complex, side_ground(p, Side::J));
            auto ra = make_alphabet(Family::complex, side_ground(p, Side::K));
            Polynomial d0 = var(complex_D0(ell, p));
            for (const auto& x : tensor_basis(la, ra, d - 2)) {
                images.push_back(d0 * F(FJK_complex(ell, p, x)));
            }
        }
    } else {
        auto whole = make_alphabet(Family::complex, GroundSet::with_node(all));
        for (const auto& p : all_pairs(all)) {
            for (const auto& m : monos(whole, d - 2)) {
                images.push_back(var(real_E0(ell, p)) * F(FJK_real(ell, p, Polynomial::monomial(whole, m))));
            }
            for (const auto& m : monos(whole, d - 1)) {
                images.push_back(var(real_Eminus(ell, p)) * F(FJK_real(ell, p, Polynomial::monomial(whole, m))));
            }
        }
        for (const auto& t : bullet_triples(all)) {
            auto la = make_alphabet(Family::real, triple_left_ground(t));
            auto ra = make_alphabet(Family::complex, triple_right_ground(t));
            for (const auto& x : tensor_basis(la, ra, d - 2)) {
                Polynomial img = F(FIJK_real(ell, t, x));
                images.push_back(var(real_D0(ell, t)) * img);
                images.push_back(var(real_Dminus(ell, t)) * img);
            }
        }
    }
    std::erase_if(images, [](const Polynomial& p) { return p.is_zero(); });
    std::size_t rank = slice.rank_with(images);
    if (detail) {
        *detail = {"surjective", std::to_string(ell) + "->" + std::to_string(ell + 1), d, rank == slice.columns(),
                   rank, slice.columns()};
    }
    return rank == slice.columns();
}

} // namespace strata
