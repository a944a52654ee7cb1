#include "submodgap/setfn.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace submodgap {

int SetFunction::position_of(int vertex) const {
    for (int p = 0; p < n; ++p)
        if (labels[p] == vertex) return p;
    return -1;
}

void SetFunction::validate() const {
    if (n < 0 || n > kMaxGround) throw InvariantError("ground size out of range");
    if (values.size() != (size_t{1} << n)) throw InvariantError("value table size mismatch");
    if (labels.size() != static_cast<size_t>(n)) throw InvariantError("label count mismatch");
}

SetFunction tabulate(const std::function<Rat(std::uint32_t)>& oracle,
                     std::vector<int> labels) {
    if (labels.size() > kMaxGround) throw SizeLimitError("ground set larger than 24");
    SetFunction f;
    f.n = static_cast<int>(labels.size());
    f.labels = std::move(labels);
    f.values.resize(size_t{1} << f.n);
    for (std::uint32_t mask = 0; mask < (1u << f.n); ++mask) f.values[mask] = oracle(mask);
    return f;
}

SubmodularityWitness is_submodular(const SetFunction& f) {
    const std::uint32_t full = f.full_mask();
    for (std::uint32_t base = 0; base <= full; ++base) {
        for (int i = 0; i < f.n; ++i) {
            if (base & (1u << i)) continue;
            const Rat& fi = f.values[base | (1u << i)];
            for (int j = i + 1; j < f.n; ++j) {
                if (base & (1u << j)) continue;
                // f(A+i) + f(A+j) >= f(A+i+j) + f(A)
                if (fi + f.values[base | (1u << j)] <
                    f.values[base | (1u << i) | (1u << j)] + f.values[base])
                    return {false, base, i, j};
            }
        }
        if (base == full) break;  // avoid wrap at n = 32 (never hit, n <= 24)
    }
    return {};
}

bool is_submodular_pairwise(const SetFunction& f) {
    const std::uint32_t count = 1u << f.n;
    for (std::uint32_t a = 0; a < count; ++a)
        for (std::uint32_t b = a; b < count; ++b)
            if (f.values[a] + f.values[b] < f.values[a | b] + f.values[a & b]) return false;
    return true;
}

Rat marginal(const SetFunction& f, std::uint32_t set, int v) {
    if (v < 0 || v >= f.n) throw PreconditionError("marginal element out of range");
    if (set & (1u << v)) throw PreconditionError("marginal element already in the set");
    if (set > f.full_mask()) throw PreconditionError("subset mask out of range");
    return f.values[set | (1u << v)] - f.values[set];
}

namespace {

std::uint32_t apply_perm(const std::vector<int>& perm, std::uint32_t mask) {
    std::uint32_t out = 0;
    for (size_t p = 0; p < perm.size(); ++p)
        if (mask & (1u << p)) out |= 1u << perm[p];
    return out;
}

} // namespace

SetFunction symmetrize(const SetFunction& f, const std::vector<std::vector<int>>& perms) {
    for (const auto& perm : perms) {
        if (perm.size() != static_cast<size_t>(f.n))
            throw PreconditionError("permutation size mismatch");
        std::vector<char> seen(f.n, 0);
        for (int p : perm) {
            if (p < 0 || p >= f.n || seen[p]) throw PreconditionError("not a permutation");
            seen[p] = 1;
        }
    }
    SetFunction out = f;
    const std::uint32_t count = 1u << f.n;
    std::vector<std::uint32_t> orbit;
    std::vector<char> in_orbit(count, 0);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        // Orbit closure under the generated group; the orbit average equals
        // the group average by orbit-stabilizer.
        orbit.assign(1, mask);
        in_orbit[mask] = 1;
        Rat sum = f.values[mask];
        for (size_t head = 0; head < orbit.size(); ++head)
            for (const auto& perm : perms) {
                std::uint32_t image = apply_perm(perm, orbit[head]);
                if (!in_orbit[image]) {
                    in_orbit[image] = 1;
                    orbit.push_back(image);
                    sum += f.values[image];
                }
            }
        out.values[mask] = sum / Rat(static_cast<long>(orbit.size()));
        for (std::uint32_t m : orbit) in_orbit[m] = 0;
    }
    return out;
}

std::vector<std::vector<int>> to_position_perms(
    const std::vector<std::vector<int>>& vertex_perms, const std::vector<int>& labels) {
    std::unordered_map<int, int> pos;
    for (size_t p = 0; p < labels.size(); ++p) {
        if (pos.count(labels[p]))
            throw PreconditionError("duplicate labels cannot host vertex permutations");
        pos[labels[p]] = static_cast<int>(p);
    }
    std::vector<std::vector<int>> out;
    out.reserve(vertex_perms.size());
    for (const auto& vp : vertex_perms) {
        std::vector<int> pp(labels.size());
        for (size_t p = 0; p < labels.size(); ++p) {
            int v = labels[p];
            if (v < 0 || v >= static_cast<int>(vp.size()))
                throw PreconditionError("permutation does not cover the ground set");
            auto it = pos.find(vp[v]);
            if (it == pos.end())
                throw PreconditionError("permutation does not stabilize the ground set");
            pp[p] = it->second;
        }
        out.push_back(std::move(pp));
    }
    return out;
}

namespace {

RecursionChainReport chain_report(const SetFunction& f,
                                  const std::vector<std::uint32_t>& level_masks,
                                  const std::vector<std::vector<std::uint32_t>>& path_masks,
                                  int k) {
    RecursionChainReport report;
    for (int j = 0; j <= k; ++j) {
        RecursionChainRow row;
        row.j = j;
        row.f_level = f.values[level_masks[j]];
        row.f_path = f.values[path_masks[j][0]];
        for (const auto& mask : path_masks[j])
            if (f.values[mask] != row.f_path) row.paths_uniform = false;
        if (j == 0) {
            row.rhs = row.f_level;
            row.holds = true;
        } else {
            const Rat& prev_level = f.values[level_masks[j - 1]];
            const Rat& prev_path = f.values[path_masks[j - 1][0]];
            row.rhs = prev_level + pow2(j) * (row.f_path - prev_path);
            row.holds = row.f_level <= row.rhs;
        }
        report.all_hold = report.all_hold && row.holds && row.paths_uniform;
        report.rows.push_back(std::move(row));
    }
    return report;
}

// Rooted tabulations leave the root out of the ground set (its presence is
// implicit in every value), so it may be absent from the labels.
std::uint32_t mask_of_vertices(const SetFunction& f, const std::vector<int>& vertices,
                               const char* what, int implicit_root) {
    std::unordered_map<int, int> pos;
    for (int p = 0; p < f.n; ++p) pos[f.labels[p]] = p;
    std::uint32_t mask = 0;
    for (int v : vertices) {
        auto it = pos.find(v);
        if (it == pos.end()) {
            if (v == implicit_root) continue;
            throw PreconditionError(std::string("ground set does not cover ") + what);
        }
        mask |= 1u << it->second;
    }
    return mask;
}

} // namespace

RecursionChainReport check_recursion_chain(const SetFunction& f, const DiamondInstance& inst,
                                           int k) {
    if (k < 0 || k > inst.depth) throw std::out_of_range("chain level exceeds instance depth");
    std::vector<std::uint32_t> level_masks;
    std::vector<std::vector<std::uint32_t>> path_masks;
    for (int j = 0; j <= k; ++j) {
        std::vector<int> level_vertices;
        for (int v = 0; v < inst.graph.vertex_count; ++v)
            if (inst.level_of[v] <= j) level_vertices.push_back(v);
        level_masks.push_back(
            mask_of_vertices(f, level_vertices, "the diamond level set", inst.root));
        std::vector<std::uint32_t> masks;
        for (const auto& path : enumerate_sr_paths(inst, j))
            masks.push_back(mask_of_vertices(f, path, "an SR-path", inst.root));
        path_masks.push_back(std::move(masks));
    }
    return chain_report(f, level_masks, path_masks, k);
}

RecursionChainReport check_recursion_chain(const SetFunction& f, const HstInstance& inst,
                                           int k) {
    if (k < 0 || k > inst.depth) throw std::out_of_range("chain level exceeds instance depth");
    std::vector<std::uint32_t> level_masks;
    std::vector<std::vector<std::uint32_t>> path_masks;
    for (int j = 0; j <= k; ++j) {
        std::vector<int> level_vertices;
        for (int v = 0; v < inst.tree.vertex_count; ++v)
            if (inst.depth_of[v] <= j) level_vertices.push_back(v);
        level_masks.push_back(mask_of_vertices(f, level_vertices, "the hst level set", 0));
        std::vector<std::uint32_t> masks;
        for (const auto& path : rooted_paths_hst(inst, j))
            masks.push_back(mask_of_vertices(f, path, "a rooted path", 0));
        path_masks.push_back(std::move(masks));
    }
    return chain_report(f, level_masks, path_masks, k);
}

} // namespace submodgap
