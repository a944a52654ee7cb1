#pragma once

#include "submodgap/setfn.hpp"

#include <cstdint>

namespace submodgap {

enum class GapStatus { optimal, infeasible, size_limit, unstable };
enum class GapMode { automatic, exact, floating };

struct GapLpResult {
    GapStatus status = GapStatus::size_limit;
    bool exact_arithmetic = false;
    Rat lambda;            // exact optimum (exact path) or rational image of the float optimum
    double lambda_double = 0.0;
    SetFunction g;         // certifying submodular envelope
    // Max violation of g >= c, g <= lambda c and the local submodularity
    // inequalities, evaluated in exact arithmetic on the returned (g, lambda).
    double residual = 0.0;
    long pivots = 0;
};

// Minimizes lambda over {g, lambda} subject to c <= g <= lambda c and all
// local submodularity inequalities. Subsets with c(S) = 0 force g(S) = 0.
// Mode automatic: exact rationals for n <= 10, doubles for 10 < n <= 14.
// canonical_g additionally minimizes sum g(S) at the optimal lambda
// (deterministic certificate); defaults on for the exact path.
GapLpResult submodularity_gap(const SetFunction& c, GapMode mode = GapMode::automatic,
                              bool canonical_g = true);

// Exact check: g submodular and c <= g <= lambda c pointwise.
bool verify_envelope(const SetFunction& c, const SetFunction& g, const Rat& lambda);

// Tolerance variant for float-path certificates: every inequality allowed
// to be violated by at most eps.
bool verify_envelope_within(const SetFunction& c, const SetFunction& g, double lambda,
                            double eps);

// max over c(S) > 0 of g(S)/c(S). Pre: g >= c pointwise and g(S) = 0
// wherever c(S) = 0.
Rat envelope_ratio(const SetFunction& c, const SetFunction& g);

} // namespace submodgap
