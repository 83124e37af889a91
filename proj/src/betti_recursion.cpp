#include "strata/betti_recursion.hpp"

#include <stdexcept>

namespace strata {

namespace {

Integer at(const std::vector<Integer>& v, int p) {
    return p >= 0 && p < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(p)] : Integer(0);
}

Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Σ_q a^q b^(p-2-q)
Integer convolve(const std::vector<Integer>& a, const std::vector<Integer>& b, int p) {
    Integer s = 0;
    for (int q = 0; q <= p - 2; ++q) {
        s += at(a, q) * at(b, p - 2 - q);
    }
    return s;
}

std::vector<std::uint64_t> to_u64(const std::vector<Integer>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& x : v) {
        if (x < 0 || !x.fits_ulong_p()) {
            throw std::overflow_error("Betti number does not fit in 64 bits: " + x.get_str());
        }
        out.push_back(x.get_ui());
    }
    return out;
}

} // namespace

std::vector<std::vector<Integer>> complex_betti_table(int ell) {
    if (ell < 3) {
        throw std::invalid_argument("complex recursion needs l >= 3");
    }
    std::vector<std::vector<Integer>> h(static_cast<std::size_t>(ell) + 1);
    h[3] = {1};
    for (int l = 3; l < ell; ++l) {
        int top = 2 * (l + 1 - 3);
        std::vector<Integer> next(static_cast<std::size_t>(top) + 1);
        for (int p = 0; p <= top; ++p) {
            Integer twice = 0;
            for (int j = 2; j <= l - 2; ++j) {
                twice += binomial(l, j) * convolve(h[j + 1], h[l - j + 1], p);
            }
            if (mpz_odd_p(twice.get_mpz_t())) {
                throw std::logic_error("complex recursion produced a half-integer");
            }
            next[p] = at(h[l], p) + at(h[l], p - 2) + twice / 2;
        }
        h[l + 1] = std::move(next);
    }
    return h;
}

std::vector<std::vector<Integer>> real_betti_table(int ell) {
    if (ell < 2) {
        throw std::invalid_argument("real recursion needs l >= 2");
    }
    auto hc = complex_betti_table(std::max(ell, 3));
    std::vector<std::vector<Integer>> h(static_cast<std::size_t>(ell) + 1);
    h[2] = {1, 1};
    for (int l = 2; l < ell; ++l) {
        int top = 2 * (l + 1) - 3;
        std::vector<Integer> next(static_cast<std::size_t>(top) + 1);
        Integer pow2 = 1;
        mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(l - 1));
        for (int p = 0; p <= top; ++p) {
            Integer v = at(h[l], p) + at(h[l], p - 2) + pow2 * (at(hc[l + 1], p - 1) + at(hc[l + 1], p - 2));
            for (int i = 1; i <= l - 2; ++i) {
                Integer w = binomial(l, i);
                mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(l - i));
                v += w * convolve(h[i + 1], hc[l - i + 1], p);
            }
            next[p] = v;
        }
        h[l + 1] = std::move(next);
    }
    return h;
}

BettiVector complex_betti(int ell) {
    auto table = complex_betti_table(ell);
    return {Family::complex, ell, to_u64(table[ell]), Method::recursion, std::nullopt, false};
}

BettiVector real_betti(int ell) {
    auto table = real_betti_table(ell);
    return {Family::real, ell, to_u64(table[ell]), Method::recursion, std::nullopt, false};
}

std::uint64_t real_h1_closed_form(int ell) {
    if (ell < 2 || ell > 64) {
        throw std::invalid_argument("l out of range");
    }
    return (std::uint64_t{1} << (ell - 1)) - 1;
}

} // namespace strata
