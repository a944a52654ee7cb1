#pragma once

#include "submodgap/instances.hpp"
#include "submodgap/rational.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace submodgap {

// A set function tabulated over all subsets of a small ground set.
// values[mask] is the value on the subset whose members are the bit
// positions of mask; labels maps bit positions to instance vertex ids.
struct SetFunction {
    int n = 0;
    std::vector<Rat> values;   // size 1 << n
    std::vector<int> labels;

    const Rat& at(std::uint32_t mask) const { return values[mask]; }
    std::uint32_t full_mask() const { return (n == 32) ? ~0u : ((1u << n) - 1); }

    // Bit position of a vertex id, or -1. Labels need not be unique
    // (multiset copies); this returns the first position.
    int position_of(int vertex) const;
    void validate() const;
};

struct SubmodularityWitness {
    bool holds = true;
    // When !holds: f(base|1<<i) + f(base|1<<j) < f(base|1<<i|1<<j) + f(base).
    std::uint32_t base = 0;
    int i = -1;
    int j = -1;
};

inline constexpr int kMaxGround = 24;

// Evaluates the oracle on every subset mask. |labels| <= 24.
SetFunction tabulate(const std::function<Rat(std::uint32_t)>& oracle,
                     std::vector<int> labels);

// Local diminishing-returns check over all (A, i < j), equivalent to the
// pairwise union/intersection inequality (property-tested equivalence).
SubmodularityWitness is_submodular(const SetFunction& f);

// Direct quantification over all pairs (A, B); O(4^n), used as the oracle
// in equivalence tests.
bool is_submodular_pairwise(const SetFunction& f);

// f(S + v) - f(S); v is a bit position, throws PreconditionError if v is in S.
Rat marginal(const SetFunction& f, std::uint32_t set, int v);

// Average of f over the orbit of each subset under the group generated by
// the given position permutations. Output is invariant under each generator
// and remains submodular whenever f is.
SetFunction symmetrize(const SetFunction& f, const std::vector<std::vector<int>>& perms);

// Translates vertex permutations (e.g. instance automorphisms) to ground
// position permutations via labels. Throws PreconditionError if a
// permutation does not stabilize the labelled ground set.
std::vector<std::vector<int>> to_position_perms(
    const std::vector<std::vector<int>>& vertex_perms,
    const std::vector<int>& labels);

struct RecursionChainRow {
    int j = 0;
    Rat f_level;     // f(D_j) resp. f(H_j)
    Rat f_path;      // f(P_j), all paths agree when the pre-condition holds
    Rat rhs;         // f(level j-1) + 2^j (f_j - f_{j-1}); equals f_level at j = 0
    bool holds = true;
    bool paths_uniform = true;
};

struct RecursionChainReport {
    std::vector<RecursionChainRow> rows;
    bool all_hold = true;
};

// Evaluates the level-vs-path chain inequality for j = 0..k. f's labels
// must cover V(D_k) resp. V(H_k).
RecursionChainReport check_recursion_chain(const SetFunction& f,
                                           const DiamondInstance& inst, int k);
RecursionChainReport check_recursion_chain(const SetFunction& f,
                                           const HstInstance& inst, int k);

} // namespace submodgap
