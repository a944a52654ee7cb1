#include "submodgap/bounds.hpp"

namespace submodgap {

std::vector<Rat> steiner_t_sequence(int k) {
    if (k < 0) throw PreconditionError("negative sequence length");
    std::vector<Rat> t;
    t.reserve(k + 1);
    for (int j = 0; j <= k; ++j) t.push_back(rat(2, 3) * pow2(j) + rat(1, 3) * pow2(-j));
    return t;
}

Rat estimating_lower_bound(const std::vector<Rat>& t, int k) {
    if (k < 0 || t.size() < static_cast<size_t>(k) + 1)
        throw PreconditionError("t-sequence too short");
    Rat sum = pow2(k) * t[0];
    for (int j = 1; j <= k; ++j) sum += pow2(k - j) * (t[j] - t[j - 1]);
    return Rat(sum / pow2(k));
}

Rat steiner_closed_form(int k) {
    Rat value = rat(k, 3) - (Rat(1) - pow2(-2 * k)) / 9 + 1;
    if (value != estimating_lower_bound(steiner_t_sequence(k), k))
        throw InvariantError("steiner closed form disagrees with the chain bound");
    return value;
}

BoundSequence ufl_sequences(int d, const Rat& alpha) {
    if (!(alpha > 0) || !(alpha < 1)) throw PreconditionError("alpha must lie in (0, 1)");
    if (d < 0) throw PreconditionError("negative depth");
    BoundSequence seq;
    const Rat inv_a = Rat(1) / alpha;
    const Rat inv_b = Rat(1) / (Rat(1) - alpha);
    for (int j = 0; j <= d; ++j) {
        seq.t.push_back(pow2(j + 1) * inv_a + (pow2(j + 1) - 1) * inv_b);
        seq.o.push_back(Rat(2) * inv_a + inv_b);
    }
    for (int j = 1; j <= d; ++j)
        if (seq.t[j] - seq.t[j - 1] != pow2(j) * (inv_a + inv_b))
            throw InvariantError("ufl t-difference identity violated");
    for (int j = 0; j <= d; ++j) seq.f_lower.push_back(estimating_lower_bound(seq.t, j));
    return seq;
}

Rat ufl_gap_bound(int d, const Rat& alpha) {
    if (!(alpha > 0) || !(alpha < 1)) throw PreconditionError("alpha must lie in (0, 1)");
    if (d < 0) throw PreconditionError("negative depth");
    const Rat inv_a = Rat(1) / alpha;
    const Rat inv_b = Rat(1) / (Rat(1) - alpha);
    Rat f_lower = Rat(d + 2) * inv_a + Rat(d + 1) * inv_b;
    BoundSequence seq = ufl_sequences(d, alpha);
    if (f_lower != seq.f_lower[d])
        throw InvariantError("ufl lower bound disagrees with the chain bound");
    return Rat(f_lower / (Rat(2) * inv_a + Rat(d + 1) * inv_b));
}

} // namespace submodgap
