#pragma once

#include <cstdint>
#include <vector>

#include "strata/graded_dimension.hpp"

namespace strata {

/// Complex Betti numbers from the recursion, by cohomological degree (ell >= 3).
BettiVector complex_betti(int ell);

/// Real Betti numbers from the recursion (ell >= 2).
BettiVector real_betti(int ell);

/// Exact versions of the same tables, levels 0..ell (lower levels empty).
std::vector<std::vector<Integer>> complex_betti_table(int ell);
std::vector<std::vector<Integer>> real_betti_table(int ell);

/// 2^(ell-1) - 1.
std::uint64_t real_h1_closed_form(int ell);

} // namespace strata
