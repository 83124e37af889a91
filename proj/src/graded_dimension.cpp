#include "strata/graded_dimension.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace strata {

namespace {

void check_ceiling(const Alphabet& alphabet, int d, std::size_t ceiling) {
    Integer n = monomial_count(alphabet, d);
    if (n > Integer(std::to_string(ceiling))) {
        throw ResourceLimit("degree " + std::to_string(d) + " slice has " + n.get_str() +
                            " columns, above the ceiling of " + std::to_string(ceiling));
    }
}

std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_columns(const std::vector<Monomial>& cols) {
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    index.reserve(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        index.emplace(cols[c], static_cast<std::uint32_t>(c));
    }
    return index;
}

// Calls fn(row) for every generator-times-monomial row of degree d.
template <typename Fn>
void for_each_row(const IdealPresentation& pres, int d,
                  const std::unordered_map<Monomial, std::uint32_t, MonomialHash>& index, Fn&& fn) {
    std::map<int, std::vector<Monomial>> multipliers;
    RationalRow row;
    for (const auto& g : pres.generators) {
        auto gd = g.poly.homogeneous_degree();
        if (!gd || *gd > d) {
            continue;
        }
        auto it = multipliers.find(d - *gd);
        if (it == multipliers.end()) {
            it = multipliers.emplace(d - *gd, monomials_of_degree(*pres.alphabet, d - *gd)).first;
        }
        for (const auto& m : it->second) {
            row.clear();
            for (const auto& [t, c] : g.poly.terms()) {
                row.emplace_back(index.at(t * m), c);
            }
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            fn(row);
        }
    }
}

// Enumerates monomials not divisible by any single-term generator.
class StandardMonomials {
public:
    explicit StandardMonomials(const IdealPresentation& pres)
        : pres_(pres), alphabet_(*pres.alphabet), blockers_(alphabet_.size()), exps_(alphabet_.size(), 0) {
        for (const auto& g : pres.generators) {
            if (g.poly.terms().size() != 1) {
                continue;
            }
            const Monomial& m = g.poly.terms().begin()->first;
            for (const auto& [v, e] : m.factors()) {
                blockers_[v].push_back(m.factors());
            }
        }
    }

    std::vector<Monomial> of_degree(int d, std::size_t ceiling) {
        std::vector<Monomial> out;
        std::vector<Monomial::Factor> current;
        walk(0, d, current, out, ceiling, d);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Multi-term generators of degree <= d with their nonstandard terms
    // dropped, thinned to a linearly independent set in each degree.
    std::vector<Polynomial> reduced_generators(int d, std::size_t ceiling) {
        std::map<int, std::vector<const Polynomial*>> by_degree;
        for (const auto& g : pres_.generators) {
            auto gd = g.poly.homogeneous_degree();
            if (gd && *gd <= d && g.poly.terms().size() > 1) {
                by_degree[*gd].push_back(&g.poly);
            }
        }
        std::vector<Polynomial> out;
        for (const auto& [gd, polys] : by_degree) {
            auto cols = of_degree(gd, ceiling);
            auto index = index_columns(cols);
            IntegerEchelon basis(cols.size());
            for (const Polynomial* p : polys) {
                Polynomial kept(pres_.alphabet);
                RationalRow row;
                for (const auto& [m, c] : p->terms()) {
                    if (auto col = index.find(m); col != index.end()) {
                        kept.add_term(m, c);
                        row.emplace_back(col->second, c);
                    }
                }
                if (row.empty()) {
                    continue;
                }
                std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                if (basis.insert(primitive_row(row))) {
                    out.push_back(std::move(kept));
                }
            }
        }
        return out;
    }

private:
    bool blocked(std::uint32_t v) const {
        for (const auto& f : blockers_[v]) {
            bool divides = true;
            for (const auto& [u, e] : f) {
                if (exps_[u] < e) {
                    divides = false;
                    break;
                }
            }
            if (divides) {
                return true;
            }
        }
        return false;
    }

    void walk(std::uint32_t from, int remaining, std::vector<Monomial::Factor>& current, std::vector<Monomial>& out,
              std::size_t ceiling, int d) {
        if (remaining == 0) {
            if (out.size() >= ceiling) {
                throw ResourceLimit("degree " + std::to_string(d) + " slice has more than " +
                                    std::to_string(ceiling) + " standard monomials");
            }
            out.emplace_back(current, alphabet_);
            return;
        }
        for (std::uint32_t v = from; v < alphabet_.size(); ++v) {
            int w = alphabet_.degree(v);
            if (w > remaining) {
                continue;
            }
            ++exps_[v];
            bool extend = !current.empty() && current.back().first == v;
            if (extend) {
                ++current.back().second;
            } else {
                current.emplace_back(v, 1);
            }
            if (!blocked(v)) {
                walk(v, remaining - w, current, out, ceiling, d);
            }
            if (extend) {
                --current.back().second;
            } else {
                current.pop_back();
            }
            --exps_[v];
        }
    }

    const IdealPresentation& pres_;
    const Alphabet& alphabet_;
    std::vector<std::vector<std::vector<Monomial::Factor>>> blockers_;
    std::vector<std::uint32_t> exps_;
};

} // namespace

std::string_view to_string(Method m) {
    return m == Method::rank ? "rank" : "recursion";
}

Method parse_method(std::string_view s) {
    if (s == "rank") {
        return Method::rank;
    }
    if (s == "recursion") {
        return Method::recursion;
    }
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

std::vector<std::uint64_t> BettiVector::display_dims() const {
    if (family == Family::real) {
        return dims;
    }
    std::vector<std::uint64_t> out;
    for (std::size_t d = 0; d < dims.size(); d += 2) {
        out.push_back(dims[d]);
    }
    return out;
}

int top_degree(Family family, int ell) {
    return family == Family::complex ? 2 * (ell - 3) : 2 * ell - 3;
}

int min_ell(Family family) {
    return family == Family::complex ? 3 : 2;
}

DegreeSlice ideal_slice(const IdealPresentation& pres, int d, std::size_t column_ceiling) {
    if (d < 0) {
        throw std::invalid_argument("negative degree");
    }
    check_ceiling(*pres.alphabet, d, column_ceiling);
    DegreeSlice slice;
    slice.degree = d;
    slice.columns = monomials_of_degree(*pres.alphabet, d);
    auto index = index_columns(slice.columns);
    for_each_row(pres, d, index, [&](const RationalRow& row) { slice.rows.push_back(row); });
    return slice;
}

std::size_t slice_rank(const DegreeSlice& slice) {
    std::size_t n = slice.columns.size();
    std::vector<bool> killed(n, false);
    std::size_t killed_count = 0;
    for (const auto& row : slice.rows) {
        if (row.size() == 1 && !killed[row.front().first]) {
            killed[row.front().first] = true;
            ++killed_count;
        }
    }
    std::vector<std::uint32_t> remap(n, 0);
    std::uint32_t next = 0;
    for (std::size_t c = 0; c < n; ++c) {
        remap[c] = killed[c] ? 0 : next++;
    }
    std::vector<SparseRow> rest;
    for (const auto& row : slice.rows) {
        RationalRow projected;
        for (const auto& [c, v] : row) {
            if (!killed[c]) {
                projected.emplace_back(remap[c], v);
            }
        }
        if (!projected.empty()) {
            rest.push_back(primitive_row(projected));
        }
    }
    return killed_count + exact_rank(rest, next);
}

SliceEngine::SliceEngine(const IdealPresentation& pres, int d, std::size_t column_ceiling)
    : degree_(d), alphabet_(pres.alphabet) {
    if (d < 0) {
        throw std::invalid_argument("negative degree");
    }
    Integer total = monomial_count(*alphabet_, d);
    if (!total.fits_ulong_p()) {
        throw ResourceLimit("degree " + std::to_string(d) + " has " + total.get_str() + " monomials");
    }
    total_columns_ = total.get_ui();
    StandardMonomials standard(pres);
    columns_ = standard.of_degree(d, column_ceiling);
    index_ = index_columns(columns_);
    echelon_ = IntegerEchelon(columns_.size());
    std::map<int, std::vector<Monomial>> multipliers;
    RationalRow row;
    for (const auto& g : standard.reduced_generators(d, column_ceiling)) {
        int gd = *g.homogeneous_degree();
        auto it = multipliers.find(d - gd);
        if (it == multipliers.end()) {
            it = multipliers.emplace(d - gd, standard.of_degree(d - gd, column_ceiling)).first;
        }
        for (const auto& m : it->second) {
            if (echelon_.full()) {
                return;
            }
            row.clear();
            for (const auto& [t, c] : g.terms()) {
                auto col = index_.find(t * m);
                if (col != index_.end()) {
                    row.emplace_back(col->second, c);
                }
            }
            if (!row.empty()) {
                std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                echelon_.insert(primitive_row(row));
            }
        }
    }
}

SparseRow SliceEngine::project(const Polynomial& p) const {
    if (!same_alphabet(p.alphabet(), alphabet_)) {
        throw std::invalid_argument("polynomial over a different alphabet");
    }
    RationalRow row;
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() != degree_) {
            throw std::invalid_argument("polynomial degree differs from slice degree");
        }
        auto col = index_.find(m);
        if (col != index_.end()) {
            row.emplace_back(col->second, c);
        }
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return primitive_row(row);
}

bool SliceEngine::contains(const Polynomial& p) const {
    return echelon_.contains(project(p));
}

std::size_t SliceEngine::rank_with(const std::vector<Polynomial>& extra) const {
    IntegerEchelon ech = echelon_;
    for (const auto& p : extra) {
        if (ech.full()) {
            break;
        }
        ech.insert(project(p));
    }
    return total_columns_ - columns_.size() + ech.rank();
}

IdealOracle::IdealOracle(IdealPresentation pres, std::size_t column_ceiling)
    : pres_(std::move(pres)), ceiling_(column_ceiling) {}

const SliceEngine& IdealOracle::slice(int d) {
    auto it = engines_.find(d);
    if (it == engines_.end()) {
        it = engines_.emplace(d, std::make_unique<SliceEngine>(pres_, d, ceiling_)).first;
    }
    return *it->second;
}

bool IdealOracle::contains(const Polynomial& p) {
    if (!same_alphabet(p.alphabet(), pres_.alphabet)) {
        throw std::invalid_argument("polynomial over a different alphabet");
    }
    if (p.is_zero()) {
        return true;
    }
    auto d = p.homogeneous_degree();
    if (!d) {
        throw std::invalid_argument("ideal membership needs a homogeneous polynomial");
    }
    return slice(*d).contains(p);
}

std::shared_ptr<IdealOracle> standard_oracle(Family family, const GroundSet& ground) {
    using Key = std::tuple<int, Subset, Subset>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<IdealOracle>> cache;
    Key key{static_cast<int>(family), ground.mask(), ground.node_bit()};
    std::lock_guard lock(mutex);
    auto& slot = cache[key];
    if (!slot) {
        slot = std::make_shared<IdealOracle>(make_ideal(family, ground));
    }
    return slot;
}

bool ideal_contains(const IdealPresentation& pres, const Polynomial& p) {
    IdealOracle oracle(pres);
    return oracle.contains(p);
}

BettiVector quotient_dims(Family family, int ell, std::optional<int> dmax, std::size_t column_ceiling) {
    if (ell < min_ell(family) || ell > kMaxMarks - 1) {
        throw std::invalid_argument("l out of range for " + std::string(to_string(family)));
    }
    int top = top_degree(family, ell);
    BettiVector out{family, ell, {}, Method::rank, std::nullopt, false};
    int last = top;
    if (dmax) {
        if (*dmax < 0) {
            throw std::invalid_argument("negative degree bound");
        }
        if (*dmax > top) {
            out.clamped = true;
        } else if (*dmax < top) {
            last = *dmax;
            out.truncated_at = *dmax;
        }
    }
    IdealPresentation pres = make_ideal(family, ell);
    for (int d = 0; d <= last; ++d) {
        if (family == Family::complex && d % 2 == 1) {
            out.dims.push_back(0);
            continue;
        }
        SliceEngine engine(pres, d, column_ceiling);
        out.dims.push_back(engine.quotient_dim());
    }
    return out;
}

} // namespace strata
