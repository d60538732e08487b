#include "dss/partition.hpp"

#include <algorithm>

#include "dss/hquick.hpp"
#include "dss/tagged.hpp"
#include "dss/wire.hpp"

namespace dss {

namespace {

constexpr Tag kSplitterTag = user_tag(20);

// unsigned-byte lexicographic a <= b
bool less_equal(std::string_view a, std::string_view b) {
    return compare_tagged(a, {}, b, {}) <= 0;
}

}  // namespace

std::vector<std::size_t> string_sample_ranks(std::size_t n, std::size_t v) {
    std::vector<std::size_t> ranks;
    if (n == 0) return ranks;
    for (std::size_t j = 1; j <= v; ++j) {
        const std::size_t q = j * n / (v + 1);
        const std::size_t r = std::min(q == 0 ? 0 : q - 1, n - 1);
        if (ranks.empty() || ranks.back() != r) ranks.push_back(r);
    }
    return ranks;
}

StringSet sample_string_based(const StringSet& sorted, std::size_t v) {
    return sorted.gather(string_sample_ranks(sorted.size(), v));
}

std::vector<std::size_t> char_sample_indices(const StringSet& sorted, std::size_t v,
                                             const std::vector<std::size_t>* weights) {
    std::vector<std::size_t> picks;
    const std::size_t n = sorted.size();
    if (n == 0) return picks;
    std::vector<std::size_t> start(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        start[i] = total;
        total += weights ? (*weights)[i] : sorted.length(i);
    }
    for (std::size_t j = 1; j <= v; ++j) {
        const std::size_t q = j * total / (v + 1);
        const std::size_t rank = q == 0 ? 0 : q - 1;
        auto it = std::lower_bound(start.begin(), start.end(), rank);
        std::size_t k = it == start.end() ? n - 1 : static_cast<std::size_t>(it - start.begin());
        if (picks.empty() || picks.back() != k) picks.push_back(k);
    }
    return picks;
}

StringSet sample_char_based(const StringSet& sorted, std::size_t v, const std::vector<std::size_t>* weights) {
    return sorted.gather(char_sample_indices(sorted, v, weights));
}

StringSet draw_sample(const StringSet& sorted, const SamplingConfig& cfg, int p,
                      const std::vector<std::size_t>* weights) {
    switch (cfg.mode) {
    case SamplingMode::string_based: return sample_string_based(sorted, cfg.v);
    case SamplingMode::char_based: return sample_char_based(sorted, cfg.v, weights);
    case SamplingMode::fk_deterministic:
        return sample_string_based(sorted, static_cast<std::size_t>(std::max(p - 1, 1)));
    }
    return {};
}

std::vector<std::size_t> splitter_ranks(std::size_t m, int p) {
    std::vector<std::size_t> ranks;
    if (m == 0 || p < 2) return ranks;
    const auto pp = static_cast<std::size_t>(p);
    for (std::size_t i = 1; i < pp; ++i) {
        if (m >= pp - 1) {
            const std::size_t q = i * m / pp;
            ranks.push_back(q == 0 ? 0 : q - 1);
        } else {
            ranks.push_back(std::min(i, m) - 1);
        }
    }
    return ranks;
}

StringSet select_splitters(Communicator& comm, const StringSet& local_sample, const SamplingConfig& cfg) {
    const int p = comm.size();
    if (p == 1) return {};
    TaggedStrings tagged;
    for (std::size_t i = 0; i < local_sample.size(); ++i)
        tagged.push_back(local_sample[i], Origin{static_cast<std::uint32_t>(comm.rank()), i});

    StringSet splitters;
    if (cfg.sorter == SplitterSorter::centralized) {
        Bytes mine;
        serialize_tagged(tagged, 0, tagged.size(), mine);
        auto blocks = comm.gather(0, std::move(mine));
        Bytes encoded;
        if (comm.rank() == 0) {
            TaggedStrings all;
            for (const auto& b : blocks) deserialize_tagged(b, all);
            sort_tagged(all);
            const auto ranks = splitter_ranks(all.size(), p);
            ByteWriter w(encoded);
            for (auto r : ranks) w.str(all.strings[r]);
        }
        encoded = comm.broadcast(0, std::move(encoded));
        ByteReader r(encoded);
        while (!r.done()) splitters.push_back(r.str());
    } else {
        HquickOptions hq;
        hq.seed = cfg.seed;
        const HquickResult sorted = hquick_sort(comm, std::move(tagged), hq);
        const std::uint64_t mine = sorted.data.size();
        const std::uint64_t m = comm.allreduce(mine, [](std::uint64_t a, std::uint64_t b) { return a + b; });
        const std::uint64_t offset = comm.prefix_sum(mine);
        const auto ranks = splitter_ranks(m, p);
        Bytes picks;
        ByteWriter w(picks);
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (ranks[i] >= offset && ranks[i] < offset + mine) {
                w.varint(i);
                w.str(sorted.data.strings[ranks[i] - offset]);
            }
        }
        const auto all = comm.allgather(std::move(picks));
        std::vector<std::string> chosen(ranks.size());
        for (const auto& b : all) {
            ByteReader r(b);
            while (!r.done()) {
                const std::uint64_t i = r.varint();
                chosen.at(i) = std::string(r.str());
            }
        }
        for (const auto& s : chosen) splitters.push_back(s);
    }
    while (splitters.size() < static_cast<std::size_t>(p - 1)) splitters.push_back("");
    return splitters;
}

std::vector<std::size_t> compute_buckets(const StringSet& sorted, const StringSet& splitters) {
    const std::size_t n = sorted.size();
    std::vector<std::size_t> bounds;
    bounds.reserve(splitters.size() + 2);
    bounds.push_back(0);
    for (std::size_t i = 0; i < splitters.size(); ++i) {
        const std::string_view f = splitters[i];
        std::size_t lo = bounds.back(), hi = n;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (less_equal(sorted[mid], f)) lo = mid + 1;
            else hi = mid;
        }
        bounds.push_back(lo);
    }
    bounds.push_back(n);
    return bounds;
}

}  // namespace dss
