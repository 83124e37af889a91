#include "strata/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace strata {

Monomial::Monomial(std::vector<Factor> factors, const Alphabet& alphabet) {
    std::sort(factors.begin(), factors.end());
    for (const auto& [var, exp] : factors) {
        if (var >= alphabet.size()) {
            throw std::out_of_range("monomial variable outside alphabet");
        }
        if (exp == 0) {
            continue;
        }
        if (!factors_.empty() && factors_.back().first == var) {
            factors_.back().second += exp;
        } else {
            factors_.emplace_back(var, exp);
        }
        degree_ += static_cast<int>(exp) * alphabet.degree(var);
    }
}

Monomial Monomial::variable(const Alphabet& alphabet, std::size_t index) {
    return Monomial({{static_cast<std::uint32_t>(index), 1}}, alphabet);
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{var, 0});
    return it != factors_.end() && it->first == var ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.degree_ = degree_ + other.degree_;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) {
        return a.degree_ < b.degree_;
    }
    auto x = a.factors_.begin();
    auto y = b.factors_.begin();
    for (; x != a.factors_.end() && y != b.factors_.end(); ++x, ++y) {
        if (x->first != y->first) {
            return x->first < y->first;
        }
        if (x->second != y->second) {
            return x->second > y->second;
        }
    }
    return x != a.factors_.end() && y == b.factors_.end();
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& [var, exp] : factors_) {
        h = (h ^ var) * 1099511628211ULL;
        h = (h ^ exp) * 1099511628211ULL;
    }
    return h;
}

std::string Monomial::render(const Alphabet& alphabet) const {
    if (factors_.empty()) {
        return "1";
    }
    std::string out;
    for (const auto& [var, exp] : factors_) {
        if (!out.empty()) {
            out += '*';
        }
        out += alphabet.name(var);
        if (exp > 1) {
            out += '^' + std::to_string(exp);
        }
    }
    return out;
}

Polynomial::Polynomial(AlphabetPtr alphabet, const Rational& constant) : alphabet_(std::move(alphabet)) {
    add_term(Monomial{}, constant);
}

Polynomial Polynomial::variable(AlphabetPtr alphabet, std::size_t index) {
    Monomial m = Monomial::variable(*alphabet, index);
    return monomial(std::move(alphabet), std::move(m));
}

Polynomial Polynomial::variable(AlphabetPtr alphabet, const GeneratorId& g) {
    std::size_t index = alphabet->index_of(g);
    return variable(std::move(alphabet), index);
}

Polynomial Polynomial::monomial(AlphabetPtr alphabet, Monomial m, Rational c) {
    Polynomial p(std::move(alphabet));
    p.add_term(m, c);
    return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) {
        if (m.degree() != d) {
            return std::nullopt;
        }
    }
    return d;
}

bool Polynomial::is_homogeneous() const {
    return terms_.empty() || homogeneous_degree().has_value();
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) {
        return;
    }
    Rational value = c;
    value.canonicalize();
    auto [it, inserted] = terms_.try_emplace(m, std::move(value));
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

void Polynomial::check_alphabet(const Polynomial& other) const {
    if (!same_alphabet(alphabet_, other.alphabet_)) {
        throw std::invalid_argument("polynomials over different alphabets");
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_alphabet(other);
    for (const auto& [m, c] : other.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_alphabet(other);
    for (const auto& [m, c] : other.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    Rational factor = c;
    factor.canonicalize();
    for (auto& [m, v] : terms_) {
        v *= factor;
    }
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [m, v] : out.terms_) {
        v = -v;
    }
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_alphabet(b);
    Polynomial out(a.alphabet_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            out.add_term(ma * mb, ca * cb);
        }
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
    return same_alphabet(alphabet_, other.alphabet_) && terms_ == other.terms_;
}

std::string Polynomial::render() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (m.is_one()) {
            out += mag.get_str();
        } else {
            if (mag != 1) {
                out += mag.get_str() + "*";
            }
            out += m.render(*alphabet_);
        }
    }
    return out;
}

Polynomial Polynomial::parse(AlphabetPtr alphabet, const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
    };
    Polynomial out(alphabet);
    std::string s = text;
    std::size_t pos = 0;
    auto skip_spaces = [&] {
        while (pos < s.size() && s[pos] == ' ') {
            ++pos;
        }
    };
    skip_spaces();
    if (s.substr(pos) == "0") {
        return out;
    }
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        skip_spaces();
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        skip_spaces();
        std::size_t end = s.find(' ', pos);
        std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        if (term.empty()) {
            fail("empty term");
        }
        Rational coeff = 1;
        std::vector<Monomial::Factor> factors;
        std::size_t start = 0;
        bool leading = true;
        while (start <= term.size()) {
            std::size_t star = term.find('*', start);
            std::string piece = term.substr(start, star == std::string::npos ? std::string::npos : star - start);
            if (piece.empty()) {
                fail("empty factor");
            }
            if (leading && (std::isdigit(static_cast<unsigned char>(piece[0])) != 0)) {
                try {
                    coeff = Rational(piece);
                    coeff.canonicalize();
                } catch (const std::exception&) {
                    fail("bad coefficient");
                }
            } else {
                std::uint32_t exp = 1;
                auto caret = piece.rfind('^');
                if (caret != std::string::npos && caret > piece.rfind('}')) {
                    exp = static_cast<std::uint32_t>(std::stoul(piece.substr(caret + 1)));
                    piece = piece.substr(0, caret);
                }
                factors.emplace_back(static_cast<std::uint32_t>(alphabet->parse_name(piece)), exp);
            }
            leading = false;
            if (star == std::string::npos) {
                break;
            }
            start = star + 1;
        }
        out.add_term(Monomial(std::move(factors), *alphabet), coeff * sign);
        first = false;
        skip_spaces();
    }
    return out;
}

std::vector<Monomial> monomials_of_degree(const Alphabet& alphabet, int d) {
    if (d < 0) {
        throw std::invalid_argument("negative degree");
    }
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> current;
    std::size_t n = alphabet.size();
    std::function<void(std::size_t, int)> rec = [&](std::size_t var, int remaining) {
        if (remaining == 0) {
            out.emplace_back(current, alphabet);
            return;
        }
        if (var == n) {
            return;
        }
        int w = alphabet.degree(var);
        rec(var + 1, remaining);
        for (std::uint32_t e = 1; static_cast<int>(e) * w <= remaining; ++e) {
            current.emplace_back(static_cast<std::uint32_t>(var), e);
            rec(var + 1, remaining - static_cast<int>(e) * w);
            current.pop_back();
        }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    return out;
}

Integer monomial_count(const Alphabet& alphabet, int d) {
    if (d < 0) {
        return 0;
    }
    std::vector<Integer> coeff(static_cast<std::size_t>(d) + 1, 0);
    coeff[0] = 1;
    for (std::size_t g = 0; g < alphabet.size(); ++g) {
        int w = alphabet.degree(g);
        for (int t = w; t <= d; ++t) {
            coeff[t] += coeff[t - w];
        }
    }
    return coeff[d];
}

} // namespace strata
