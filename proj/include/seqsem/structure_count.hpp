#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <utility>
#include <vector>

#include "seqsem/random.hpp"
#include "seqsem/structure.hpp"

namespace seqsem {

using BigInt = boost::multiprecision::cpp_int;

/// Counts secondary structures with j - i > 3 on every prefix length, and
/// unranks them uniformly.
///
/// count[m] = count[m-1] + sum_{j=5..m} count[j-2] * count[m-j]
/// (position 1 unpaired, or paired with j enclosing j-2 positions).
class StructureCounter {
public:
    explicit StructureCounter(int n) : counts_(static_cast<std::size_t>(std::max(n, 0)) + 1) {
        for (int m = 0; m <= n; ++m) {
            BigInt c = m <= kMinArcSpan ? BigInt(1) : count(m - 1);
            for (int j = kMinArcSpan + 1; j <= m; ++j) c += count(j - 2) * count(m - j);
            counts_[static_cast<std::size_t>(m)] = std::move(c);
        }
    }

    int max_length() const noexcept { return static_cast<int>(counts_.size()) - 1; }
    const BigInt& count(int m) const { return counts_[static_cast<std::size_t>(m)]; }

    /// Structure of rank `rank` in [0, count(n)). Ranks list "position
    /// unpaired" first, then pairings (1,j) by increasing j, inner rank
    /// major over outer rank.
    SecondaryStructure unrank(int n, BigInt rank) const {
        std::vector<Arc> arcs;
        // (offset, length, rank) work items.
        std::vector<std::tuple<int, int, BigInt>> work;
        work.emplace_back(0, n, std::move(rank));
        while (!work.empty()) {
            auto [offset, len, r] = std::move(work.back());
            work.pop_back();
            while (len > kMinArcSpan) {
                if (r < count(len - 1)) {
                    ++offset;
                    --len;
                    continue;
                }
                r -= count(len - 1);
                bool placed = false;
                for (int j = kMinArcSpan + 1; j <= len; ++j) {
                    const BigInt block = count(j - 2) * count(len - j);
                    if (r < block) {
                        const BigInt& outer = count(len - j);
                        arcs.push_back({offset + 1, offset + j});
                        work.emplace_back(offset + 1, j - 2, BigInt(r / outer));
                        r %= outer;
                        offset += j;
                        len -= j;
                        placed = true;
                        break;
                    }
                    r -= block;
                }
                if (!placed) throw std::out_of_range("structure rank out of range");
            }
        }
        return SecondaryStructure(n, std::move(arcs));
    }

    SecondaryStructure sample(int n, Rng& rng) const {
        boost::random::uniform_int_distribution<BigInt> pick(BigInt(0), count(n) - 1);
        return unrank(n, pick(rng));
    }

private:
    std::vector<BigInt> counts_;
};

inline BigInt count_structures(int n) {
    if (n < 0) return BigInt(0);
    return StructureCounter(n).count(n);
}

/// Uniform over all valid structures of length n.
inline SecondaryStructure sample_uniform_structure(int n, Rng& rng) {
    return StructureCounter(n).sample(n, rng);
}

}  // namespace seqsem
