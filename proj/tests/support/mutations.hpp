#pragma once

// Fault injection into sorter outcomes for verifier tests.

#include <algorithm>
#include <string>
#include <vector>

#include "dss/sorters.hpp"

namespace mutation {

inline dss::StringSet replace(const dss::StringSet& s, std::size_t i, const std::string& value) {
    auto v = s.to_vector();
    v[i] = value;
    return dss::StringSet::from(v);
}

/// Swaps the last string of the first non-empty PE with the first string of
/// the next non-empty PE whose first string differs. LCP arrays are
/// recomputed so only the order is wrong.
inline bool boundary_swap(std::vector<dss::SortOutcome>& out) {
    for (std::size_t a = 0; a < out.size(); ++a) {
        if (out[a].strings.empty()) continue;
        for (std::size_t b = a + 1; b < out.size(); ++b) {
            if (out[b].strings.empty()) continue;
            const std::size_t ia = out[a].strings.size() - 1;
            const std::string sa(out[a].strings[ia]), sb(out[b].strings[0]);
            if (sa == sb) break;
            out[a].strings = replace(out[a].strings, ia, sb);
            out[b].strings = replace(out[b].strings, 0, sa);
            std::swap(out[a].origins[ia], out[b].origins[0]);
            out[a].lcps = dss::compute_lcp_array(out[a].strings);
            out[b].lcps = dss::compute_lcp_array(out[b].strings);
            return true;
        }
    }
    return false;
}

/// Increments one interior LCP entry.
inline bool corrupt_lcp(std::vector<dss::SortOutcome>& out) {
    for (auto& o : out)
        if (o.lcps.size() > 1) {
            o.lcps[o.lcps.size() / 2] += 1;
            return true;
        }
    return false;
}

/// Cuts one output string to one character less than its distinguishing
/// prefix length, taken from the global input by brute force.
inline bool truncate_prefix(std::vector<dss::SortOutcome>& out, const std::vector<dss::StringSet>& input) {
    std::vector<std::string> all;
    for (const auto& pe : input)
        for (auto& x : pe.to_vector()) all.push_back(x);
    std::sort(all.begin(), all.end());
    auto lcp = [](const std::string& a, const std::string& b) {
        std::size_t h = 0;
        while (h < a.size() && h < b.size() && a[h] == b[h]) ++h;
        return h;
    };
    const auto origins = dss::input_origins(out);
    for (std::size_t r = 0; r < out.size(); ++r)
        for (std::size_t i = 0; i < out[r].strings.size(); ++i) {
            const std::string full(input[origins[r][i].pe][origins[r][i].index]);
            const auto it = std::lower_bound(all.begin(), all.end(), full);
            std::size_t best = 0;
            if (it != all.begin()) best = std::max(best, lcp(*std::prev(it), full));
            if (std::next(it) != all.end()) best = std::max(best, lcp(*std::next(it), full));
            const std::size_t dpre = std::min(best + 1, full.size());
            if (dpre < 2) continue;
            out[r].strings = replace(out[r].strings, i, full.substr(0, dpre - 1));
            out[r].lcps = dss::compute_lcp_array(out[r].strings);
            return true;
        }
    return false;
}

}  // namespace mutation
