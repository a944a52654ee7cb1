#pragma once

#include "submodgap/rational.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace submodgap {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

template <class T>
struct LpTraits;

template <>
struct LpTraits<double> {
    static double eps() { return 1e-9; }
    static double abs(double x) { return std::fabs(x); }
};

template <>
struct LpTraits<Rat> {
    static Rat eps() { return Rat(0); }
    static Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
};

// Dense two-phase tableau simplex for
//     max c'x  subject to  Ax <= b, x >= 0.
// Works over doubles (1e-9 feasibility tolerance, Dantzig pricing with a
// permanent switch to Bland's rule after a degeneracy stall) and over exact
// rationals (zero tolerance, Bland's rule throughout).
template <class T>
class DenseSimplex {
public:
    DenseSimplex(int rows, int cols)
        : m_(rows), n_(cols), stride_(cols + 2),
          d_(static_cast<size_t>(rows + 2) * (cols + 2)),
          basic_(rows), nonbasic_(cols + 1) {
        for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
        nonbasic_[n_] = -1;  // artificial
        at(m_ + 1, n_) = T(1);
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            at(i, n_) = T(-1);
        }
    }

    void set_a(int i, int j, const T& v) { at(i, j) = v; }
    void add_a(int i, int j, const T& v) { at(i, j) += v; }
    void set_b(int i, const T& v) { at(i, n_ + 1) = v; }
    void set_c(int j, const T& v) { at(m_, j) = -v; }

    void set_bland_always(bool b) { bland_ = b; }
    void set_iteration_limit(long lim) { iter_limit_ = lim; }

    long pivots() const { return pivots_; }
    const T& objective() const { return at(m_, n_ + 1); }

    // x values of the original columns at the final basis.
    std::vector<T> solution() const {
        std::vector<T> x(n_, T(0));
        for (int i = 0; i < m_; ++i)
            if (basic_[i] >= 0 && basic_[i] < n_) x[basic_[i]] = at(i, n_ + 1);
        return x;
    }

    LpStatus solve() {
        const T eps = LpTraits<T>::eps();
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
        if (at(r, n_ + 1) < -eps) {
            pivot(r, n_);
            LpStatus s1 = run_phase(2);
            if (s1 == LpStatus::iteration_limit) return s1;
            if (s1 == LpStatus::unbounded || at(m_ + 1, n_ + 1) < -eps)
                return LpStatus::infeasible;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                // Drive the artificial variable out of the basis.
                int s = -1;
                for (int j = 0; j <= n_; ++j) {
                    if (LpTraits<T>::abs(at(i, j)) <= eps) continue;
                    if (s == -1 || std::pair<const T&, int>(at(i, j), nonbasic_[j]) <
                                       std::pair<const T&, int>(at(i, s), nonbasic_[s]))
                        s = j;
                }
                if (s >= 0) pivot(i, s);
            }
        }
        return run_phase(1);
    }

    // Dual simplex from the all-slack basis. Requires every objective
    // coefficient <= 0 (the slack basis is then dual feasible), which holds
    // for the gap programs; no feasibility phase is needed.
    LpStatus solve_dual() {
        const T eps = LpTraits<T>::eps();
        for (int j = 0; j < n_; ++j)
            if (at(m_, j) < -eps) return LpStatus::unbounded;  // not dual feasible
        long stall = 0;
        T last_obj = at(m_, n_ + 1);
        for (;;) {
            if (pivots_ > iter_limit_) return LpStatus::iteration_limit;
            int r = -1;
            if (bland_) {
                for (int i = 0; i < m_; ++i)
                    if (at(i, n_ + 1) < -eps && (r == -1 || basic_[i] < basic_[r])) r = i;
            } else {
                for (int i = 0; i < m_; ++i)
                    if (at(i, n_ + 1) < -eps && (r == -1 || at(i, n_ + 1) < at(r, n_ + 1)))
                        r = i;
            }
            if (r == -1) return LpStatus::optimal;
            // Entering column: min |reduced cost / pivot| over negative
            // entries of row r keeps the objective row nonnegative.
            int s = -1;
            for (int j = 0; j < n_; ++j) {
                if (nonbasic_[j] < 0) continue;
                if (at(r, j) >= -eps) continue;
                if (s == -1) {
                    s = j;
                    continue;
                }
                T lhs = at(m_, j) * at(r, s);
                T rhs = at(m_, s) * at(r, j);
                // Both pivots negative: lhs/rhs flip under division.
                if (lhs > rhs || (lhs == rhs && nonbasic_[j] < nonbasic_[s])) s = j;
            }
            if (s == -1) return LpStatus::infeasible;
            pivot(r, s);
            if (!bland_) {
                if (at(m_, n_ + 1) < last_obj) {
                    last_obj = at(m_, n_ + 1);
                    stall = 0;
                } else if (++stall > stall_limit_) {
                    bland_ = true;
                    stall = 0;
                }
            }
        }
    }

private:
    T& at(int i, int j) { return d_[static_cast<size_t>(i) * stride_ + j]; }
    const T& at(int i, int j) const { return d_[static_cast<size_t>(i) * stride_ + j]; }

    void pivot(int r, int s) {
        ++pivots_;
        const T eps = LpTraits<T>::eps();
        T* a = &d_[static_cast<size_t>(r) * stride_];
        T inv = T(1) / a[s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            T* b = &d_[static_cast<size_t>(i) * stride_];
            if (LpTraits<T>::abs(b[s]) <= eps) continue;
            T inv2 = b[s] * inv;
            for (int j = 0; j < n_ + 2; ++j) b[j] -= a[j] * inv2;
            b[s] = a[s] * inv2;
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) a[j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) at(i, s) *= -inv;
        a[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    // phase = 1: optimize the real objective (row m_), artificial excluded.
    // phase = 2: feasibility objective (row m_ + 1).
    LpStatus run_phase(int phase) {
        const T eps = LpTraits<T>::eps();
        const int x = m_ + phase - 1;
        long stall = 0;
        T last_obj = at(x, n_ + 1);
        for (;;) {
            if (pivots_ > iter_limit_) return LpStatus::iteration_limit;
            int s = -1;
            if (bland_) {
                for (int j = 0; j <= n_; ++j) {
                    if (nonbasic_[j] == -phase) continue;
                    if (at(x, j) < -eps &&
                        (s == -1 || nonbasic_[j] < nonbasic_[s]))
                        s = j;
                }
                if (s == -1) return LpStatus::optimal;
            } else {
                for (int j = 0; j <= n_; ++j) {
                    if (nonbasic_[j] == -phase) continue;
                    if (s == -1 || std::pair<const T&, int>(at(x, j), nonbasic_[j]) <
                                       std::pair<const T&, int>(at(x, s), nonbasic_[s]))
                        s = j;
                }
                if (at(x, s) >= -eps) return LpStatus::optimal;
            }
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (at(i, s) <= eps) continue;
                if (r == -1) {
                    r = i;
                    continue;
                }
                T lhs = at(i, n_ + 1) * at(r, s);
                T rhs = at(r, n_ + 1) * at(i, s);
                if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
            }
            if (r == -1) return LpStatus::unbounded;
            pivot(r, s);
            if (!bland_) {
                // Degeneracy stall guard: fall back to Bland permanently.
                if (at(x, n_ + 1) > last_obj) {
                    last_obj = at(x, n_ + 1);
                    stall = 0;
                } else if (++stall > stall_limit_) {
                    bland_ = true;
                    stall = 0;
                }
            }
        }
    }

    int m_, n_, stride_;
    std::vector<T> d_;
    std::vector<int> basic_, nonbasic_;
    bool bland_ = false;
    long pivots_ = 0;
    long iter_limit_ = 2'000'000;
    long stall_limit_ = 512;
};

} // namespace submodgap
