#include "dss/hquick.hpp"

#include <algorithm>
#include <bit>

#include "dss/random.hpp"
#include "dss/wire.hpp"

namespace dss {

namespace {

constexpr Tag kSummaryTag = user_tag(10);
constexpr Tag kSplitTag = user_tag(11);

struct SummaryPoint {
    std::string chars;
    Origin origin;
    std::uint64_t weight;
};

using Summary = std::vector<SummaryPoint>;

bool point_less(const SummaryPoint& a, const SummaryPoint& b) {
    return compare_tagged(a.chars, a.origin, b.chars, b.origin) < 0;
}

// Cuts a tagged-sorted weighted sequence into `points` groups of about equal
// weight; each group is represented by the item holding its weighted middle.
Summary compress(const Summary& items, std::size_t points) {
    std::uint64_t total = 0;
    for (const auto& it : items) total += it.weight;
    if (items.size() <= points) return items;
    Summary out;
    std::size_t i = 0;
    std::uint64_t before = 0;  // weight of items[0..i)
    for (std::size_t g = 0; g < points; ++g) {
        const std::uint64_t hi = total * (g + 1) / points;
        const std::uint64_t mid = (total * g / points + hi) / 2;
        std::uint64_t weight = 0;
        std::size_t rep = items.size();
        while (i < items.size() && before < hi) {
            if (rep == items.size() && before + items[i].weight > mid) rep = i;
            weight += items[i].weight;
            before += items[i].weight;
            ++i;
        }
        if (weight == 0) continue;
        if (rep == items.size()) rep = i - 1;
        out.push_back({items[rep].chars, items[rep].origin, weight});
    }
    return out;
}

Summary local_summary(const TaggedStrings& sorted, std::size_t points) {
    Summary items;
    const std::size_t n = sorted.size();
    const std::size_t k = std::min(points, n);
    for (std::size_t g = 0; g < k; ++g) {
        const std::size_t b = g * n / k, e = (g + 1) * n / k;
        const std::size_t mid = b + (e - b - 1) / 2;
        items.push_back({std::string(sorted.strings[mid]), sorted.origins[mid], e - b});
    }
    return items;
}

Bytes encode_summary(const Summary& s) {
    Bytes out;
    ByteWriter w(out);
    w.varint(s.size());
    for (const auto& pt : s) {
        w.varint(pt.weight);
        w.varint(pt.origin.pe);
        w.varint(pt.origin.index);
        w.str(pt.chars);
    }
    return out;
}

Summary decode_summary(const Bytes& b) {
    ByteReader r(b);
    Summary s(r.varint());
    for (auto& pt : s) {
        pt.weight = r.varint();
        pt.origin.pe = static_cast<std::uint32_t>(r.varint());
        pt.origin.index = r.varint();
        pt.chars = std::string(r.str());
    }
    return s;
}

std::optional<TaggedString> pivot_of_sorted(Communicator& comm, int dims, const TaggedStrings& sorted,
                                            std::size_t points) {
    Summary summary = local_summary(sorted, points);
    for (int j = 0; j < dims; ++j) {
        const int partner = comm.rank() ^ (1 << j);
        Summary other = decode_summary(comm.sendrecv(partner, kSummaryTag, encode_summary(summary)));
        Summary merged;
        merged.reserve(summary.size() + other.size());
        std::merge(summary.begin(), summary.end(), other.begin(), other.end(), std::back_inserter(merged),
                   point_less);
        summary = compress(merged, points);
    }
    std::uint64_t total = 0;
    for (const auto& pt : summary) total += pt.weight;
    if (total == 0) return std::nullopt;
    const std::uint64_t half = (total + 1) / 2;
    std::uint64_t acc = 0;
    for (const auto& pt : summary) {
        acc += pt.weight;
        if (acc >= half) return TaggedString{pt.chars, pt.origin};
    }
    return TaggedString{summary.back().chars, summary.back().origin};
}

struct LoadStat {
    std::uint64_t sum;
    std::uint64_t max;
};

void check_load(Communicator& comm, const HypercubeConfig& cube, std::size_t local, const HquickOptions& opt,
                int level) {
    const LoadStat s = comm.allreduce(LoadStat{local, local}, [](LoadStat a, LoadStat b) {
        return LoadStat{a.sum + b.sum, std::max(a.max, b.max)};
    });
    const double avg = static_cast<double>(s.sum) / cube.active;
    const double limit = std::max(opt.imbalance_factor * avg, static_cast<double>(opt.imbalance_floor));
    if (static_cast<double>(s.max) > limit)
        throw LoadImbalanceError("hypercube quicksort level " + std::to_string(level) + ": a PE holds " +
                                 std::to_string(s.max) + " strings, average " + std::to_string(avg));
}

}  // namespace

HypercubeConfig HypercubeConfig::for_world(int p) {
    HypercubeConfig c;
    c.dimension = std::bit_width(static_cast<unsigned>(p)) - 1;
    c.active = 1 << c.dimension;
    return c;
}

TaggedStrings random_scatter(Communicator& comm, const TaggedStrings& local, std::uint64_t seed) {
    const HypercubeConfig cube = HypercubeConfig::for_world(comm.size());
    Rng rng(pe_seed(seed, static_cast<std::uint64_t>(comm.rank())));
    std::vector<std::vector<std::size_t>> targets(static_cast<std::size_t>(comm.size()));
    for (std::size_t i = 0; i < local.size(); ++i)
        targets[uniform_below(rng, static_cast<std::uint64_t>(cube.active))].push_back(i);

    std::vector<Bytes> sends(static_cast<std::size_t>(comm.size()));
    for (std::size_t d = 0; d < sends.size(); ++d) {
        TaggedStrings part;
        for (auto i : targets[d]) part.push_back(local.strings[i], local.origins[i]);
        serialize_tagged(part, 0, part.size(), sends[d]);
    }
    auto received = comm.alltoallv(std::move(sends));
    TaggedStrings out;
    for (const auto& b : received) deserialize_tagged(b, out);
    return out;
}

std::optional<TaggedString> select_pivot(Communicator& comm, int dims, const TaggedStrings& local,
                                         std::size_t summary_points) {
    TaggedStrings sorted = local;
    sort_tagged(sorted);
    return pivot_of_sorted(comm, dims, sorted, summary_points);
}

HquickResult hquick_sort(Communicator& comm, TaggedStrings local, const HquickOptions& options) {
    const HypercubeConfig cube = HypercubeConfig::for_world(comm.size());
    const bool active = cube.is_active(comm.rank());
    HquickResult result;
    result.dimension = cube.dimension;

    TaggedStrings data;
    {
        std::optional<Communicator::PhaseScope> scope;
        if (options.label_phases) scope.emplace(comm, "scatter");
        data = random_scatter(comm, local, options.seed);
    }
    std::optional<Communicator::PhaseScope> scope;
    if (options.label_phases) scope.emplace(comm, "hquick");
    if (active) sort_tagged(data);

    for (int k = cube.dimension - 1; k >= 0; --k) {
        if (active) {
            const auto pivot = pivot_of_sorted(comm, k + 1, data, options.summary_points);
            // first index that sorts after the pivot
            std::size_t cut = data.size();
            if (pivot) {
                std::size_t lo = 0, hi = data.size();
                while (lo < hi) {
                    const std::size_t mid = (lo + hi) / 2;
                    if (compare_tagged(data.strings[mid], data.origins[mid], pivot->chars, pivot->origin) <= 0)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                cut = lo;
            }
            const bool low = ((comm.rank() >> k) & 1) == 0;
            const int partner = comm.rank() ^ (1 << k);
            Bytes out;
            if (low) serialize_tagged(data, cut, data.size(), out);
            else serialize_tagged(data, 0, cut, out);
            TaggedStrings incoming;
            deserialize_tagged(comm.sendrecv(partner, kSplitTag, std::move(out)), incoming);

            TaggedStrings kept;
            const std::size_t b = low ? 0 : cut, e = low ? cut : data.size();
            kept.strings = data.strings.slice(b, e);
            kept.origins.assign(data.origins.begin() + static_cast<std::ptrdiff_t>(b),
                                data.origins.begin() + static_cast<std::ptrdiff_t>(e));
            data = low ? merge_tagged(kept, incoming) : merge_tagged(incoming, kept);
        }
        check_load(comm, cube, active ? data.size() : 0, options, cube.dimension - k);
    }

    result.lcps = sort_tagged(data);
    result.data = std::move(data);
    return result;
}

}  // namespace dss
