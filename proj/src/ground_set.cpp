#include "strata/ground_set.hpp"

#include <sstream>

namespace strata {

int smallest_absent_key(Subset integers) {
    return std::countr_one(integers) + 1;
}

GroundSet GroundSet::standard(int n) {
    if (n < 0 || n > kMaxMarks) {
        throw std::invalid_argument("ground set size out of range: " + std::to_string(n));
    }
    GroundSet g;
    g.mask_ = n == 0 ? 0 : (~Subset{0} >> (64 - n));
    return g;
}

GroundSet GroundSet::of(Subset integers) {
    if (integers >> kMaxMarks) {
        throw std::invalid_argument("mark exceeds supported range");
    }
    GroundSet g;
    g.mask_ = integers;
    return g;
}

GroundSet GroundSet::with_node(Subset integers) {
    GroundSet g = of(integers);
    int key = smallest_absent_key(integers);
    if (key > kMaxMarks) {
        throw std::invalid_argument("node key exceeds supported range");
    }
    g.node_key_ = key;
    g.mask_ |= key_bit(key);
    return g;
}

int GroundSet::node_key() const {
    if (!node_key_) {
        throw std::logic_error("ground set has no node marker");
    }
    return *node_key_;
}

std::vector<int> GroundSet::keys() const {
    std::vector<int> out;
    for (Subset s = mask_; s; s &= s - 1) {
        out.push_back(std::countr_zero(s) + 1);
    }
    return out;
}

std::string GroundSet::label(int key) const {
    if (node_key_ && *node_key_ == key) {
        return "n";
    }
    return std::to_string(key);
}

bool GroundSet::compact_labels() const {
    Subset integers = integer_mask();
    return integers == 0 || (64 - std::countl_zero(integers)) <= 9;
}

std::string GroundSet::render(Subset s) const {
    std::string out;
    bool compact = compact_labels();
    bool first = true;
    for (Subset t = s; t; t &= t - 1) {
        int key = std::countr_zero(t) + 1;
        if (!compact && !first) {
            out += ',';
        }
        out += label(key);
        first = false;
    }
    return out;
}

Subset GroundSet::parse(const std::string& text) const {
    Subset out = 0;
    auto add = [&](const std::string& token) {
        if (token == "n") {
            out |= node_bit();
            if (!node_key_) {
                throw std::invalid_argument("node label in a ground set without node");
            }
            return;
        }
        std::size_t used = 0;
        int key = std::stoi(token, &used);
        if (used != token.size() || key < 1 || key > kMaxMarks || !(mask_ & key_bit(key)) ||
            (node_key_ && *node_key_ == key)) {
            throw std::invalid_argument("unknown label '" + token + "'");
        }
        out |= key_bit(key);
    };
    if (text.empty()) {
        return 0;
    }
    if (compact_labels()) {
        for (char c : text) {
            add(std::string(1, c));
        }
    } else {
        std::stringstream ss(text);
        std::string token;
        while (std::getline(ss, token, ',')) {
            add(token);
        }
    }
    return out;
}

} // namespace strata
