#pragma once

#include "submodgap/rational.hpp"

#include <vector>

namespace submodgap {

struct BoundSequence {
    std::vector<Rat> t;        // optimum level costs t_j
    std::vector<Rat> o;        // per-path cost formula o_j (facility location)
    std::vector<Rat> f_lower;  // derived lower bounds on the path values f_j
};

// t_j = (2/3) 2^j + (1/3) 2^{-j} for j = 0..k; equals the D_j spanning tree cost.
std::vector<Rat> steiner_t_sequence(int k);

// 2^{-k} [ sum_{j=1..k} 2^{k-j} (t_j - t_{j-1}) + 2^k t_0 ]: the minimal f_k
// permitted by the chain of level inequalities. Cross-checked against direct
// recurrence unrolling (g_l = t_l + g_{l-1} + ... + g_0) in tests.
Rat estimating_lower_bound(const std::vector<Rat>& t, int k);

// k/3 - (1 - 4^{-k})/9 + 1; asserted equal to estimating_lower_bound over the
// Steiner t-sequence.
Rat steiner_closed_form(int k);

// o_j = 2/alpha + 1/(1-alpha) (constant), t_j = 2^{j+1}/alpha + (2^{j+1}-1)/(1-alpha),
// and f_lower via the same chain engine.
BoundSequence ufl_sequences(int d, const Rat& alpha);

// ((d+2)/alpha + (d+1)/(1-alpha)) / (2/alpha + (d+1)/(1-alpha)); the numerator
// is asserted equal to estimating_lower_bound over the UFL t-sequence.
// Tends to (d+2)/2 as alpha -> 0.
Rat ufl_gap_bound(int d, const Rat& alpha);

} // namespace submodgap
