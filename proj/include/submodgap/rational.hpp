#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace submodgap {

// Every length, cost and bound value in this project is an exact rational.
// mpq_class keeps values canonical (lowest terms) through arithmetic, so
// equality assertions downstream are plain comparisons.
using Rat = mpq_class;

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// p/q in canonical form. mpq_class(p, q) alone does not reduce.
inline Rat rat(long p, long q = 1) {
    if (q == 0) throw PreconditionError("rational with zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

// 2^e for any integer e.
inline Rat pow2(int e) {
    Rat one(1);
    Rat r;
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), one.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), one.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

// Parses "p", "-p" or "p/q".
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw PreconditionError("bad rational literal: '" + s + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw PreconditionError("rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

// Lowest terms; "p/q", or plain "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline bool rat_is_integer(const Rat& r) {
    return mpz_cmp_ui(mpq_denref(r.get_mpq_t()), 1) == 0;
}

} // namespace submodgap
