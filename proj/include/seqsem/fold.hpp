#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "seqsem/energy.hpp"
#include "seqsem/log_weight.hpp"
#include "seqsem/structure.hpp"

namespace seqsem {

struct FoldOptions {
    /// Largest total number of unpaired bases in a bulge or interior loop.
    int max_interior = 30;
};

struct FoldResult {
    SecondaryStructure structure;
    Energy energy;
};

struct SeqPartition {
    double log_q_sigma = 0;
};

namespace detail {

/// Square (n+2)^2 table addressed by 1-based (i, j).
template <class T>
class Triangle {
public:
    Triangle(int n, T fill) : n_(n), data_(static_cast<std::size_t>(n + 2) * static_cast<std::size_t>(n + 2), fill) {}
    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 2) + static_cast<std::size_t>(j)]; }
    const T& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 2) + static_cast<std::size_t>(j)];
    }

private:
    int n_;
    std::vector<T> data_;
};

/// Minimization key: energy first, then number of arcs. Both parts are
/// additive, so the composite key is too.
using FoldKey = std::int64_t;
inline constexpr FoldKey kArcScale = 4096;
inline constexpr FoldKey kInfKey = std::numeric_limits<FoldKey>::max() / 4;

inline FoldKey fold_key(Energy e, int arcs) {
    return e.is_infinite() ? kInfKey : static_cast<FoldKey>(e.dcal()) * kArcScale + arcs;
}
inline FoldKey key_add(FoldKey a, FoldKey b) { return (a >= kInfKey || b >= kInfKey) ? kInfKey : a + b; }
inline FoldKey key_add(FoldKey a, FoldKey b, FoldKey c) { return key_add(key_add(a, b), c); }

inline bool can_pair(const Sequence& s, int i, int j) {
    return j - i >= kMinArcSpan && admissible(at(s, i), at(s, j));
}

}  // namespace detail

/// Zuker-style minimum free energy folding under the same loop energies as
/// the sequence-side partition function (no dangles, no coaxial stacking).
///
/// Ties: among minimum-energy structures the one with fewer arcs wins; any
/// remaining tie goes to the first candidate in traceback order (exterior:
/// last position unpaired before paired; pairs: hairpin, then interior
/// loops by increasing left gap and decreasing inner right end, then multi).
inline FoldResult mfe_fold(const EnergyParams& p, const Sequence& seq, FoldOptions opt = {}) {
    using namespace detail;
    const int n = static_cast<int>(seq.size());
    if (n < 1) throw std::invalid_argument("cannot fold an empty sequence");
    if (n >= kArcScale) throw std::invalid_argument("sequence too long to fold");
    Triangle<FoldKey> C(n, kInfKey), M(n, kInfKey), M1(n, kInfKey);
    const FoldKey closing_multi = fold_key(Energy::from_dcal(p.multi_alpha + p.multi_beta), 1);
    auto unpaired = [&](int u) { return fold_key(Energy::from_dcal(u * p.multi_gamma), 0); };
    auto branch = [&](int trailing) { return fold_key(Energy::from_dcal(p.multi_beta + trailing * p.multi_gamma), 0); };

    for (int len = kMinArcSpan + 1; len <= n; ++len) {
        for (int i = 1; i + len - 1 <= n; ++i) {
            const int j = i + len - 1;
            if (can_pair(seq, i, j)) {
                FoldKey best = fold_key(hairpin_energy(p, seq, i, j), 1);
                for (int r = i + 1; r - i - 1 <= opt.max_interior && r + kMinArcSpan < j; ++r) {
                    for (int s = j - 1; s - r >= kMinArcSpan; --s) {
                        const int gaps = (r - i - 1) + (j - s - 1);
                        if (gaps > opt.max_interior) break;
                        if (C(r, s) >= kInfKey) continue;
                        best = std::min(best, key_add(fold_key(two_pair_loop_energy(p, seq, i, j, r, s), 1), C(r, s)));
                    }
                }
                for (int u = i + 6; u + kMinArcSpan <= j - 1; ++u)
                    best = std::min(best, key_add(closing_multi, M(i + 1, u - 1), M1(u, j - 1)));
                C(i, j) = best;
            }
            FoldKey m1 = kInfKey;
            for (int l = i + kMinArcSpan; l <= j; ++l) m1 = std::min(m1, key_add(C(i, l), branch(j - l)));
            M1(i, j) = m1;
            FoldKey m = kInfKey;
            for (int u = i; u + kMinArcSpan <= j; ++u) {
                const FoldKey prefix = u > i ? std::min(unpaired(u - i), M(i, u - 1)) : unpaired(0);
                m = std::min(m, key_add(prefix, M1(u, j)));
            }
            M(i, j) = m;
        }
    }

    std::vector<FoldKey> F(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) {
        FoldKey best = F[static_cast<std::size_t>(j - 1)];
        for (int k = 1; k + kMinArcSpan <= j; ++k)
            best = std::min(best, key_add(F[static_cast<std::size_t>(k - 1)], C(k, j)));
        F[static_cast<std::size_t>(j)] = best;
    }

    // Traceback: (kind, i, j) with kind 0 = exterior prefix [1,j], 1 = C, 2 = M, 3 = M1.
    std::vector<Arc> arcs;
    std::vector<std::tuple<int, int, int>> todo{{0, 1, n}};
    while (!todo.empty()) {
        auto [kind, i, j] = todo.back();
        todo.pop_back();
        if (kind == 0) {
            if (j <= 0) continue;
            const FoldKey target = F[static_cast<std::size_t>(j)];
            if (target == F[static_cast<std::size_t>(j - 1)]) {
                todo.emplace_back(0, 1, j - 1);
                continue;
            }
            for (int k = 1; k + kMinArcSpan <= j; ++k)
                if (key_add(F[static_cast<std::size_t>(k - 1)], C(k, j)) == target) {
                    todo.emplace_back(0, 1, k - 1);
                    todo.emplace_back(1, k, j);
                    break;
                }
        } else if (kind == 1) {
            arcs.push_back({i, j});
            const FoldKey target = C(i, j);
            if (fold_key(hairpin_energy(p, seq, i, j), 1) == target) continue;
            bool done = false;
            for (int r = i + 1; !done && r - i - 1 <= opt.max_interior && r + kMinArcSpan < j; ++r) {
                for (int s = j - 1; s - r >= kMinArcSpan; --s) {
                    if ((r - i - 1) + (j - s - 1) > opt.max_interior) break;
                    if (C(r, s) >= kInfKey) continue;
                    if (key_add(fold_key(two_pair_loop_energy(p, seq, i, j, r, s), 1), C(r, s)) == target) {
                        todo.emplace_back(1, r, s);
                        done = true;
                        break;
                    }
                }
            }
            for (int u = i + 6; !done && u + kMinArcSpan <= j - 1; ++u)
                if (key_add(closing_multi, M(i + 1, u - 1), M1(u, j - 1)) == target) {
                    todo.emplace_back(2, i + 1, u - 1);
                    todo.emplace_back(3, u, j - 1);
                    done = true;
                }
            if (!done) throw std::logic_error("mfe traceback failed");
        } else if (kind == 3) {
            const FoldKey target = M1(i, j);
            for (int l = i + kMinArcSpan; l <= j; ++l)
                if (key_add(C(i, l), branch(j - l)) == target) {
                    todo.emplace_back(1, i, l);
                    break;
                }
        } else {
            const FoldKey target = M(i, j);
            for (int u = i; u + kMinArcSpan <= j; ++u) {
                if (key_add(unpaired(u - i), M1(u, j)) == target) {
                    todo.emplace_back(3, u, j);
                    break;
                }
                if (u > i && key_add(M(i, u - 1), M1(u, j)) == target) {
                    todo.emplace_back(2, i, u - 1);
                    todo.emplace_back(3, u, j);
                    break;
                }
            }
        }
    }

    FoldResult out{SecondaryStructure(n, std::move(arcs)), Energy::from_dcal(0)};
    out.energy = structure_energy(p, seq, out.structure);
    return out;
}

/// log Q(sigma): sum over all structures of exp(-E/RT), with the mfe
/// recursion's decomposition (each structure counted once).
inline SeqPartition mccaskill_partition(const EnergyParams& p, const Sequence& seq, FoldOptions opt = {}) {
    using detail::can_pair;
    using detail::Triangle;
    const int n = static_cast<int>(seq.size());
    if (n < 1) throw std::invalid_argument("empty sequence");
    const double rt = p.rt();
    auto bl = [rt](int dcal) { return -(dcal / 100.0) / rt; };
    Triangle<double> Qb(n, kLogZero), QM(n, kLogZero), QM1(n, kLogZero);
    const double closing_multi = bl(p.multi_alpha + p.multi_beta);

    for (int len = kMinArcSpan + 1; len <= n; ++len) {
        for (int i = 1; i + len - 1 <= n; ++i) {
            const int j = i + len - 1;
            if (can_pair(seq, i, j)) {
                LogSum acc;
                acc.add(boltzmann_log(hairpin_energy(p, seq, i, j), rt));
                for (int r = i + 1; r - i - 1 <= opt.max_interior && r + kMinArcSpan < j; ++r) {
                    for (int s = j - 1; s - r >= kMinArcSpan; --s) {
                        if ((r - i - 1) + (j - s - 1) > opt.max_interior) break;
                        if (Qb(r, s) == kLogZero) continue;
                        acc.add(boltzmann_log(two_pair_loop_energy(p, seq, i, j, r, s), rt) + Qb(r, s));
                    }
                }
                for (int u = i + 6; u + kMinArcSpan <= j - 1; ++u)
                    if (QM(i + 1, u - 1) != kLogZero && QM1(u, j - 1) != kLogZero)
                        acc.add(closing_multi + QM(i + 1, u - 1) + QM1(u, j - 1));
                Qb(i, j) = acc.value();
            }
            LogSum m1;
            for (int l = i + kMinArcSpan; l <= j; ++l)
                if (Qb(i, l) != kLogZero) m1.add(Qb(i, l) + bl(p.multi_beta + (j - l) * p.multi_gamma));
            QM1(i, j) = m1.value();
            LogSum m;
            for (int u = i; u + kMinArcSpan <= j; ++u) {
                if (QM1(u, j) == kLogZero) continue;
                double prefix = bl((u - i) * p.multi_gamma);
                if (u > i) prefix = log_add(prefix, QM(i, u - 1));
                m.add(prefix + QM1(u, j));
            }
            QM(i, j) = m.value();
        }
    }

    std::vector<double> Z(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        LogSum acc;
        acc.add(Z[static_cast<std::size_t>(j - 1)]);
        for (int k = 1; k + kMinArcSpan <= j; ++k)
            if (Qb(k, j) != kLogZero) acc.add(Z[static_cast<std::size_t>(k - 1)] + Qb(k, j));
        Z[static_cast<std::size_t>(j)] = acc.value();
    }
    return {Z[static_cast<std::size_t>(n)]};
}

inline bool refolds_to(const EnergyParams& p, const Sequence& seq, const SecondaryStructure& s, FoldOptions opt = {}) {
    if (static_cast<int>(seq.size()) != s.size()) throw std::invalid_argument("sequence and structure lengths differ");
    return mfe_fold(p, seq, opt).structure == s;
}

}  // namespace seqsem
