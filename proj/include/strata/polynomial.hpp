#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/generators.hpp"

namespace strata {

using Rational = mpq_class;
using Integer = mpz_class;

/// Product of generator powers, stored as (index, exponent) sorted by index.
class Monomial {
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    /// Builds from arbitrary factors; merges repeats and drops zero exponents.
    Monomial(std::vector<Factor> factors, const Alphabet& alphabet);

    static Monomial variable(const Alphabet& alphabet, std::size_t index);

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const { return degree_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t exponent(std::uint32_t var) const;

    Monomial operator*(const Monomial& other) const;

    /// Graded lexicographic: lower degree first; within a degree, the larger
    /// exponent on the earliest differing generator comes first.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    std::size_t hash() const;
    std::string render(const Alphabet& alphabet) const;

private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse polynomial with exact rational coefficients over a fixed alphabet.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit Polynomial(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
    Polynomial(AlphabetPtr alphabet, const Rational& constant);

    static Polynomial variable(AlphabetPtr alphabet, std::size_t index);
    static Polynomial variable(AlphabetPtr alphabet, const GeneratorId& g);
    static Polynomial monomial(AlphabetPtr alphabet, Monomial m, Rational c = 1);

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;

    /// Degree shared by every term; nullopt for zero or mixed-degree input.
    std::optional<int> homogeneous_degree() const;
    bool is_homogeneous() const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    bool operator==(const Polynomial& other) const;

    /// "2*D{12|34} - E{1|2}^2"; zero renders as "0".
    std::string render() const;
    /// Inverse of render(); throws std::invalid_argument.
    static Polynomial parse(AlphabetPtr alphabet, const std::string& text);

private:
    void check_alphabet(const Polynomial& other) const;

    AlphabetPtr alphabet_;
    Terms terms_;
};

/// All monomials of weighted degree d, sorted by the Monomial order.
std::vector<Monomial> monomials_of_degree(const Alphabet& alphabet, int d);

/// Coefficient of t^d in Π_g (1 - t^{deg g})^{-1}.
Integer monomial_count(const Alphabet& alphabet, int d);

} // namespace strata
