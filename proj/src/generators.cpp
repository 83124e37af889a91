#include "strata/generators.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace strata {

std::string_view to_string(Family f) {
    return f == Family::complex ? "complex" : "real";
}

Family parse_family(std::string_view s) {
    if (s == "complex") {
        return Family::complex;
    }
    if (s == "real") {
        return Family::real;
    }
    throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

std::string GeneratorId::name(const GroundSet& ground) const {
    switch (kind) {
    case GeneratorKind::real_e:
        return "E{" + ground.render(j) + "|" + ground.render(k) + "}";
    case GeneratorKind::complex_d:
        return "D{" + ground.render(j) + "|" + ground.render(k) + "}";
    case GeneratorKind::real_d:
        return "D{" + ground.render(i) + ";" + ground.render(j) + "|" + ground.render(k) + "}";
    }
    return {};
}

std::strong_ordering GeneratorId::operator<=>(const GeneratorId& other) const {
    return std::tuple(degree(), static_cast<int>(kind), i, j, k) <=>
           std::tuple(other.degree(), static_cast<int>(other.kind), other.i, other.j, other.k);
}

std::vector<GeneratorId> enumerate_generators(Family family, const GroundSet& ground) {
    std::vector<GeneratorId> out;
    if (family == Family::complex) {
        if (ground.size() < 3) {
            throw std::invalid_argument("complex presentation needs at least 3 marks");
        }
        for (const auto& p : bullet_pairs(ground.mask())) {
            out.push_back(GeneratorId::complex_d(p));
        }
    } else {
        if (ground.size() < 2) {
            throw std::invalid_argument("real presentation needs at least 2 marks");
        }
        for (const auto& p : all_pairs(ground.mask())) {
            out.push_back(GeneratorId::real_e(p));
        }
        for (const auto& t : bullet_triples(ground.mask())) {
            out.push_back(GeneratorId::real_d(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Alphabet::Alphabet(Family family, GroundSet ground)
    : family_(family), ground_(std::move(ground)), gens_(enumerate_generators(family_, ground_)) {}

std::optional<std::size_t> Alphabet::find(const GeneratorId& g) const {
    auto it = std::lower_bound(gens_.begin(), gens_.end(), g);
    if (it == gens_.end() || *it != g) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - gens_.begin());
}

std::size_t Alphabet::index_of(const GeneratorId& g) const {
    if (auto idx = find(g)) {
        return *idx;
    }
    throw std::out_of_range("generator " + g.name(ground_) + " not in alphabet");
}

std::size_t Alphabet::parse_name(std::string_view text) const {
    auto fail = [&]() -> std::size_t {
        throw std::invalid_argument("malformed generator name '" + std::string(text) + "'");
    };
    if (text.size() < 4 || text[1] != '{' || text.back() != '}') {
        return fail();
    }
    std::string body(text.substr(2, text.size() - 3));
    auto bar = body.find('|');
    if (bar == std::string::npos) {
        return fail();
    }
    std::string left = body.substr(0, bar);
    Subset k = ground_.parse(body.substr(bar + 1));
    GeneratorId g;
    if (text[0] == 'E' && family_ == Family::real) {
        g = GeneratorId::real_e(canonical(ground_.parse(left), k));
    } else if (text[0] == 'D' && family_ == Family::complex) {
        g = GeneratorId::complex_d(canonical(ground_.parse(left), k));
    } else if (text[0] == 'D' && family_ == Family::real) {
        auto semi = left.find(';');
        if (semi == std::string::npos) {
            return fail();
        }
        PartitionPair p = canonical(ground_.parse(left.substr(semi + 1)), k);
        g = GeneratorId::real_d({ground_.parse(left.substr(0, semi)), p.j, p.k});
    } else {
        return fail();
    }
    if (auto idx = find(g)) {
        return *idx;
    }
    return fail();
}

AlphabetPtr make_alphabet(Family family, const GroundSet& ground) {
    using Key = std::tuple<int, Subset, Subset>;
    static std::mutex mutex;
    static std::map<Key, AlphabetPtr> cache;
    Key key{static_cast<int>(family), ground.mask(), ground.node_bit()};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    auto ptr = std::make_shared<const Alphabet>(family, ground);
    cache.emplace(key, ptr);
    return ptr;
}

} // namespace strata
