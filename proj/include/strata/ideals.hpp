#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "strata/polynomial.hpp"

namespace strata {

enum class RelationTag { e1a, e1b, e1c, e2, e2a, e2b };

std::string_view to_string(RelationTag tag);
RelationTag parse_tag(std::string_view s);

/// One ideal generator with the index data that produced it.
///
/// Index layout by tag:
///   e1a   j, k, j', k'            (two pairs, E or D by family)
///   e1b   j, k, i', j', k'        (E pair, D triple)
///   e1c   i, j, k, i', j', k'     (two D triples)
///   e2    a, b, c, d              (mark keys)
///   e2a   (empty)
///   e2b   a, b, c                 (mark keys)
struct IdealGenerator {
    RelationTag tag;
    std::vector<std::uint64_t> indices;
    Polynomial poly;
};

struct IdealPresentation {
    Family family;
    GroundSet ground;
    AlphabetPtr alphabet;
    std::vector<IdealGenerator> generators;

    std::size_t count(RelationTag tag) const;
};

/// Generators of the complex boundary ideal on `ground` (|ground| >= 3).
IdealPresentation complex_ideal(const GroundSet& ground);
IdealPresentation complex_ideal(int ell);

/// Generators of the real boundary ideal on `ground` (|ground| >= 2).
IdealPresentation real_ideal(const GroundSet& ground);
IdealPresentation real_ideal(int ell);

IdealPresentation make_ideal(Family family, const GroundSet& ground);
IdealPresentation make_ideal(Family family, int ell);

/// Σ_{ab|cd} D − Σ_{ac|bd} D over the complex alphabet of `ground`.
Polynomial complex_e2_element(const GroundSet& ground, int a, int b, int c, int d);

/// Signed three-sum over D{I;J|K} for distinct marks a, b, c.
Polynomial real_e2b_element(const GroundSet& ground, int a, int b, int c);

/// The four-loop element: Σ_{a∈J, b∉I, c∈I} εD − Σ_{a∈J, b∈I, c∉I} εD.
/// Requires a != b, a != c, all in [ell]; zero when ell = 2.
Polynomial real_e2b2_element(int ell, int a, int b, int c);

/// Recomputes a generator polynomial from its tag and index data.
Polynomial rebuild_generator(Family family, const GroundSet& ground, RelationTag tag,
                             const std::vector<std::uint64_t>& indices);

/// {"family", "ell", "ground", "alphabet": [names], "generators": [{"tag", "indices", "poly"}]}.
nlohmann::ordered_json to_json(const IdealPresentation& pres);
IdealPresentation presentation_from_json(const nlohmann::ordered_json& doc);

/// Human listing: alphabet line followed by one "tag: poly" line per generator.
std::string render_presentation(const IdealPresentation& pres);

} // namespace strata
