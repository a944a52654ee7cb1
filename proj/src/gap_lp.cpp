#include "submodgap/gap_lp.hpp"

#include "submodgap/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace submodgap {

namespace {

// Column layout: one u(S) = g(S) - c(S) per nonempty subset with c(S) > 0
// (c(S) = 0 forces g(S) = 0), plus mu = lambda - 1 as the last column.
struct LpLayout {
    std::vector<int> var_of;  // mask -> column or -1
    std::vector<std::uint32_t> mask_of;
    int mu = 0;
    int rows = 0;
    int bound_rows = 0;
};

LpLayout make_layout(const SetFunction& c) {
    LpLayout lay;
    const std::uint32_t count = 1u << c.n;
    lay.var_of.assign(count, -1);
    for (std::uint32_t mask = 1; mask < count; ++mask)
        if (c.values[mask] > 0) {
            lay.var_of[mask] = static_cast<int>(lay.mask_of.size());
            lay.mask_of.push_back(mask);
        }
    lay.mu = static_cast<int>(lay.mask_of.size());
    lay.bound_rows = static_cast<int>(lay.mask_of.size());
    long long submod_rows = 0;
    if (c.n >= 2) submod_rows = static_cast<long long>(c.n) * (c.n - 1) / 2 * (1u << (c.n - 2));
    lay.rows = lay.bound_rows + static_cast<int>(submod_rows);
    return lay;
}

template <class T>
T conv(const Rat& r);
template <>
double conv<double>(const Rat& r) {
    return rat_double(r);
}
template <>
Rat conv<Rat>(const Rat& r) {
    return r;
}

// Fills rows: u(S) <= c(S) mu, then for every (i < j, A) the local
// submodularity inequality rewritten over u with the c-violation on the rhs.
// When mu_cap is set, mu is fixed below mu* and the objective becomes
// min sum u(S) (the deterministic-certificate tie break); otherwise the
// objective is max -mu.
template <class T>
DenseSimplex<T> build_lp(const SetFunction& c, const LpLayout& lay,
                         const T* mu_cap) {
    const int cols = lay.mu + 1;
    const int rows = lay.rows + (mu_cap ? 1 : 0);
    DenseSimplex<T> lp(rows, cols);
    for (int k = 0; k < lay.bound_rows; ++k) {
        lp.set_a(k, k, T(1));
        lp.set_a(k, lay.mu, T(-conv<T>(c.values[lay.mask_of[k]])));
    }
    int row = lay.bound_rows;
    const std::uint32_t count = 1u << c.n;
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) {
            const std::uint32_t bi = 1u << i, bj = 1u << j;
            for (std::uint32_t base = 0; base < count; ++base) {
                if (base & (bi | bj)) continue;
                auto add = [&](std::uint32_t mask, int sign) {
                    int var = lay.var_of[mask];
                    if (var >= 0) lp.add_a(row, var, T(sign));
                };
                add(base, +1);
                add(base | bi | bj, +1);
                add(base | bi, -1);
                add(base | bj, -1);
                Rat rhs = c.values[base | bi] + c.values[base | bj] -
                          c.values[base | bi | bj] - c.values[base];
                lp.set_b(row, conv<T>(rhs));
                ++row;
            }
        }
    if (mu_cap) {
        lp.set_a(row, lay.mu, T(1));
        lp.set_b(row, *mu_cap);
        for (int k = 0; k < lay.bound_rows; ++k) lp.set_c(k, T(-1));
    } else {
        lp.set_c(lay.mu, T(-1));
    }
    return lp;
}

Rat rat_from_double(double x) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

// Best rational approximation with bounded denominator (continued fractions).
Rat rationalize(double x, long max_den, double tol) {
    if (!std::isfinite(x)) return rat_from_double(0.0);
    Rat exact = rat_from_double(x);
    double rem = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(rem);
        if (fl > 1e17 || fl < -1e17) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::fabs(approx - x) <= tol) return rat(p1, q1);
        double frac = rem - fl;
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    return exact;
}

// Exact maximum violation of the sandwich and submodularity constraints.
Rat exact_residual(const SetFunction& c, const SetFunction& g, const Rat& lambda) {
    Rat worst(0);
    const std::uint32_t count = 1u << c.n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        worst = std::max(worst, Rat(c.values[mask] - g.values[mask]));
        worst = std::max(worst, Rat(g.values[mask] - lambda * c.values[mask]));
    }
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) {
            const std::uint32_t bi = 1u << i, bj = 1u << j;
            for (std::uint32_t base = 0; base < count; ++base) {
                if (base & (bi | bj)) continue;
                Rat lhs = g.values[base | bi | bj] + g.values[base] -
                          g.values[base | bi] - g.values[base | bj];
                worst = std::max(worst, lhs);
            }
        }
    return worst;
}

template <class T>
GapLpResult solve_gap(const SetFunction& c, bool canonical_g) {
    LpLayout lay = make_layout(c);
    GapLpResult res;
    res.exact_arithmetic = std::is_same_v<T, Rat>;
    DenseSimplex<T> lp = build_lp<T>(c, lay, nullptr);
    if (res.exact_arithmetic) lp.set_bland_always(true);
    LpStatus status = lp.solve_dual();
    res.pivots = lp.pivots();
    if (status == LpStatus::infeasible) {
        res.status = GapStatus::infeasible;
        return res;
    }
    if (status != LpStatus::optimal) {
        res.status = GapStatus::unstable;
        return res;
    }
    T mu = T(0) - lp.objective();  // objective was max -mu
    std::vector<T> x = lp.solution();
    if (canonical_g) {
        DenseSimplex<T> lp2 = build_lp<T>(c, lay, &mu);
        if (res.exact_arithmetic) lp2.set_bland_always(true);
        if (lp2.solve_dual() == LpStatus::optimal) {
            x = lp2.solution();
            res.pivots += lp2.pivots();
        }
    }

    res.status = GapStatus::optimal;
    res.g.n = c.n;
    res.g.labels = c.labels;
    res.g.values.assign(size_t{1} << c.n, Rat(0));
    if constexpr (std::is_same_v<T, Rat>) {
        res.lambda = Rat(1) + mu;
        res.lambda_double = rat_double(res.lambda);
        for (int k = 0; k < lay.bound_rows; ++k)
            res.g.values[lay.mask_of[k]] = c.values[lay.mask_of[k]] + x[k];
        res.residual = 0.0;
    } else {
        res.lambda_double = 1.0 + mu;
        // A posteriori rounding: try a small-denominator rational image of
        // the float solution and keep it if it is exactly feasible.
        SetFunction rounded = res.g;
        Rat lambda_rounded = rationalize(res.lambda_double, 1'000'000, 1e-7);
        for (int k = 0; k < lay.bound_rows; ++k) {
            const std::uint32_t mask = lay.mask_of[k];
            rounded.values[mask] = c.values[mask] + rationalize(x[k], 1'000'000, 1e-7);
        }
        if (verify_envelope(c, rounded, lambda_rounded)) {
            res.g = rounded;
            res.lambda = lambda_rounded;
            res.residual = 0.0;
        } else {
            res.lambda = rat_from_double(res.lambda_double);
            for (int k = 0; k < lay.bound_rows; ++k) {
                const std::uint32_t mask = lay.mask_of[k];
                res.g.values[mask] = c.values[mask] + rat_from_double(x[k]);
            }
            res.residual = rat_double(exact_residual(c, res.g, res.lambda));
        }
    }
    return res;
}

} // namespace

GapLpResult submodularity_gap(const SetFunction& c, GapMode mode, bool canonical_g) {
    c.validate();
    if (c.values[0] != 0) throw PreconditionError("gap lp requires c(empty) = 0");
    for (const Rat& v : c.values)
        if (v < 0) throw PreconditionError("gap lp requires c >= 0");
    if (c.n > 14) {
        GapLpResult res;
        res.status = GapStatus::size_limit;
        return res;
    }
    if (mode == GapMode::automatic) mode = c.n <= 10 ? GapMode::exact : GapMode::floating;
    return mode == GapMode::exact ? solve_gap<Rat>(c, canonical_g)
                                  : solve_gap<double>(c, canonical_g);
}

bool verify_envelope(const SetFunction& c, const SetFunction& g, const Rat& lambda) {
    if (c.n != g.n) throw PreconditionError("verify_envelope: ground size mismatch");
    const std::uint32_t count = 1u << c.n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        if (g.values[mask] < c.values[mask]) return false;
        if (g.values[mask] > lambda * c.values[mask]) return false;
    }
    return is_submodular(g).holds;
}

bool verify_envelope_within(const SetFunction& c, const SetFunction& g, double lambda,
                            double eps) {
    if (c.n != g.n) throw PreconditionError("verify_envelope: ground size mismatch");
    const std::uint32_t count = 1u << c.n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        double cv = rat_double(c.values[mask]);
        double gv = rat_double(g.values[mask]);
        if (gv < cv - eps) return false;
        if (gv > lambda * cv + eps) return false;
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            const std::uint32_t bi = 1u << i, bj = 1u << j;
            for (std::uint32_t base = 0; base < count; ++base) {
                if (base & (bi | bj)) continue;
                double lhs = rat_double(g.values[base | bi]) + rat_double(g.values[base | bj]);
                double rhs = rat_double(g.values[base | bi | bj]) + rat_double(g.values[base]);
                if (lhs < rhs - eps) return false;
            }
        }
    return true;
}

Rat envelope_ratio(const SetFunction& c, const SetFunction& g) {
    if (c.n != g.n) throw PreconditionError("envelope_ratio: ground size mismatch");
    const std::uint32_t count = 1u << c.n;
    Rat best(1);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        if (g.values[mask] < c.values[mask])
            throw PreconditionError("envelope_ratio: g does not dominate c");
        if (c.values[mask] == 0) {
            if (g.values[mask] != 0)
                throw PreconditionError("envelope_ratio: g nonzero where c vanishes");
            continue;
        }
        best = std::max(best, Rat(g.values[mask] / c.values[mask]));
    }
    return best;
}

} // namespace submodgap
