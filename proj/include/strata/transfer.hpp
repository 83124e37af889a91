#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strata/graded_dimension.hpp"

namespace strata {

/// Image of one level-ell generator under F, as ±1 combinations at level ell+1.
struct LiftedGenerator {
    GeneratorId source;
    std::vector<std::pair<GeneratorId, int>> images;
};

/// Generator images of F for the family at level ell, in alphabet order.
std::vector<LiftedGenerator> lifted_generators(Family family, int ell);

/// Ring homomorphism R(ell) -> R(ell+1) extending lifted_generators.
Polynomial F_map(Family family, int ell, const Polynomial& p);

/// Extends generator images multiplicatively; images[v] is the image of variable v.
Polynomial substitute(const Polynomial& p, const AlphabetPtr& target, const std::vector<Polynomial>& images);

// Distinguished level-(ell+1) classes used by the transfer.
GeneratorId complex_D0(int ell, const PartitionPair& p);        // D_{J, K ∪ {ell+1}}
GeneratorId complex_special(int ell);                            // D_{{1, ell+1}, [ell] - {1}}
GeneratorId real_E0(int ell, const PartitionPair& p);           // D_{{ell+1}; J, K}
GeneratorId real_Eminus(int ell, const PartitionPair& p);       // E_{J, K ∪ {ell+1}}
GeneratorId real_D0(int ell, const TriplePartition& t);
GeneratorId real_Dminus(int ell, const TriplePartition& t);     // D_{I; J, K ∪ {ell+1}}
GeneratorId real_special(int ell);                               // D_{[ell] - {1}; {1, ell+1}, ∅}

/// Which factor of a complex tensor summand: the ring on {nd} ⊔ J or on {nd} ⊔ K.
enum class Side { J, K };

GroundSet side_ground(const PartitionPair& p, Side side);
/// Substitutes nd by the opposite part; result over the complex level-ell alphabet.
Polynomial FJK_complex(int ell, const PartitionPair& p, Side side, const Polynomial& q);

/// Finite sum of left ⊗ right products.
struct TensorElement {
    std::vector<std::pair<Polynomial, Polynomial>> terms;
};

/// Product of the two one-sided maps, summed over tensor terms.
Polynomial FJK_complex(int ell, const PartitionPair& p, const TensorElement& t);

/// Complex ring on {nd} ⊔ [ell] -> real level-ell ring (signed substitution).
Polynomial FJK_real(int ell, const PartitionPair& p, const Polynomial& q);

GroundSet triple_left_ground(const TriplePartition& t);   // {nd} ⊔ I, real
GroundSet triple_right_ground(const TriplePartition& t);  // {nd} ⊔ (J ∪ K), complex
/// First-factor map from the real ring on {nd} ⊔ I.
Polynomial FIJK_real_left(int ell, const TriplePartition& t, const Polynomial& q);
/// Signed second-factor map from the complex ring on {nd} ⊔ (J ∪ K).
Polynomial FIJK_real_right(int ell, const TriplePartition& t, const Polynomial& q);
Polynomial FIJK_real(int ell, const TriplePartition& t, const TensorElement& x);

/// Absent map entries are zero.
struct PhiInput {
    Family family = Family::complex;
    int ell = 0;
    std::optional<Polynomial> kappa0;
    std::optional<Polynomial> kappa;
    std::map<PartitionPair, TensorElement> pair_tensors;                              // complex
    std::map<PartitionPair, std::pair<Polynomial, Polynomial>> pair_components;       // real (κ, κ')
    std::map<TriplePartition, std::pair<TensorElement, TensorElement>> triple_components;  // real (κ, κ')
};

Polynomial phi(const PhiInput& input);

struct CheckEntry {
    std::string check;
    std::string indices;
    int degree = 0;
    bool pass = false;
    std::size_t rank = 0;
    std::size_t columns = 0;
};

struct VerificationReport {
    Family family = Family::complex;
    int ell = 0;
    std::vector<CheckEntry> entries;
    bool complete = true;

    bool passed() const;
    std::size_t failures() const;
    nlohmann::ordered_json to_json() const;
};

/// F(ℐ) ⊂ ℐ' generator by generator.
VerificationReport verify_F_transport(Family family, int ell);

/// Every domain-ideal generator (times monomials of the complementary factor,
/// up to `degree_bound` in the target) maps into the level-(ell+1) ideal.
VerificationReport verify_phi_well_defined(Family family, int ell, std::optional<int> degree_bound = std::nullopt);

/// Images of the domain together with the target ideal span degree d at ell+1.
bool verify_phi_surjective(Family family, int ell, int d, CheckEntry* detail = nullptr);

} // namespace strata
