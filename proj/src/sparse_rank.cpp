#include "strata/sparse_rank.hpp"

#include <random>
#include <stdexcept>

namespace strata {

namespace {

// a·v − b·w, both sorted by column.
SparseRow combine(const SparseRow& v, const Integer& a, const SparseRow& w, const Integer& b) {
    SparseRow out;
    out.reserve(v.size() + w.size());
    auto x = v.begin();
    auto y = w.begin();
    while (x != v.end() || y != w.end()) {
        if (y == w.end() || (x != v.end() && x->first < y->first)) {
            out.emplace_back(x->first, a * x->second);
            ++x;
        } else if (x == v.end() || y->first < x->first) {
            out.emplace_back(y->first, -b * y->second);
            ++y;
        } else {
            Integer c = a * x->second - b * y->second;
            if (c != 0) {
                out.emplace_back(x->first, std::move(c));
            }
            ++x;
            ++y;
        }
    }
    return out;
}

} // namespace

void make_primitive(SparseRow& row) {
    if (row.empty()) {
        return;
    }
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    if (row.front().second < 0) {
        g = -g;
    }
    if (g != 1) {
        for (auto& [c, v] : row) {
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        }
    }
}

SparseRow primitive_row(const RationalRow& row) {
    Integer l = 1;
    for (const auto& [c, v] : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    SparseRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        if (v != 0) {
            out.emplace_back(c, Integer(v.get_num() * (l / v.get_den())));
        }
    }
    make_primitive(out);
    return out;
}

IntegerEchelon::IntegerEchelon(std::size_t columns) : pivot_(columns, -1) {}

void IntegerEchelon::reduce(SparseRow& row) const {
    while (!row.empty()) {
        std::int32_t p = pivot_[row.front().first];
        if (p < 0) {
            return;
        }
        const SparseRow& piv = rows_[static_cast<std::size_t>(p)];
        Integer g;
        mpz_gcd(g.get_mpz_t(), piv.front().second.get_mpz_t(), row.front().second.get_mpz_t());
        Integer a = piv.front().second / g;
        Integer b = row.front().second / g;
        row = combine(row, a, piv, b);
        make_primitive(row);
    }
}

bool IntegerEchelon::insert(SparseRow row) {
    if (full()) {
        return false;
    }
    reduce(row);
    if (row.empty()) {
        return false;
    }
    pivot_[row.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

bool IntegerEchelon::contains(SparseRow row) const {
    reduce(row);
    return row.empty();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all 64-bit n.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

std::uint64_t random_prime62(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 61, (std::uint64_t{1} << 62) - 1);
    for (;;) {
        std::uint64_t n = dist(rng) | 1;
        if (is_prime_u64(n)) {
            return n;
        }
    }
}

ModRow reduce_mod(const SparseRow& row, std::uint64_t p) {
    ModRow out;
    out.reserve(row.size());
    Integer pz;
    mpz_set_ui(pz.get_mpz_t(), 0);
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    Integer r;
    for (const auto& [c, v] : row) {
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
        std::uint64_t x = 0;
        mpz_export(&x, nullptr, 1, sizeof(x), 0, 0, r.get_mpz_t());
        if (x != 0) {
            out.emplace_back(c, x);
        }
    }
    return out;
}

ModularEchelon::ModularEchelon(std::size_t columns, std::uint64_t prime) : pivot_(columns, -1), p_(prime) {}

bool ModularEchelon::insert(ModRow row) {
    ModRow tmp;
    while (!row.empty()) {
        std::int32_t pi = pivot_[row.front().first];
        if (pi < 0) {
            break;
        }
        const ModRow& piv = rows_[static_cast<std::size_t>(pi)];
        std::uint64_t f = row.front().second;  // pivot rows have lead 1
        tmp.clear();
        auto x = row.begin();
        auto y = piv.begin();
        while (x != row.end() || y != piv.end()) {
            if (y == piv.end() || (x != row.end() && x->first < y->first)) {
                tmp.push_back(*x++);
            } else if (x == row.end() || y->first < x->first) {
                tmp.emplace_back(y->first, p_ - mulmod(f, y->second, p_));
                ++y;
            } else {
                std::uint64_t s = mulmod(f, y->second, p_);
                std::uint64_t v = x->second >= s ? x->second - s : x->second + (p_ - s);
                if (v != 0) {
                    tmp.emplace_back(x->first, v);
                }
                ++x;
                ++y;
            }
        }
        row.swap(tmp);
    }
    if (row.empty()) {
        return false;
    }
    std::uint64_t inv = powmod(row.front().second, p_ - 2, p_);
    for (auto& [c, v] : row) {
        v = mulmod(v, inv, p_);
    }
    pivot_[row.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

std::size_t exact_rank(const std::vector<SparseRow>& rows, std::size_t columns, RankStats* stats) {
    static const std::uint64_t prime = random_prime62(0x5eed5eedULL);
    std::size_t bound = std::min(rows.size(), columns);
    ModularEchelon mod(columns, prime);
    for (const auto& r : rows) {
        if (mod.rank() == bound) {
            break;
        }
        mod.insert(reduce_mod(r, prime));
    }
    if (stats) {
        *stats = {rows.size(), columns, mod.rank(), mod.rank() == bound};
    }
    if (mod.rank() == bound) {
        return bound;
    }
    IntegerEchelon ech(columns);
    for (const auto& r : rows) {
        if (ech.full()) {
            break;
        }
        ech.insert(r);
    }
    return ech.rank();
}

} // namespace strata
