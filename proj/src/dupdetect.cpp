#include "dss/dupdetect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "dss/golomb.hpp"
#include "dss/wire.hpp"

namespace dss {

namespace {

using u128 = unsigned __int128;

std::uint64_t range_start(int d, int p) {
    return static_cast<std::uint64_t>(((static_cast<u128>(d) << 64) + static_cast<u128>(p) - 1) /
                                      static_cast<u128>(p));
}

long double range_length(int d, int p) {
    const u128 hi = d + 1 == p ? (u128{1} << 64) : static_cast<u128>(range_start(d + 1, p));
    return static_cast<long double>(hi - range_start(d, p));
}

void encode_stream(const std::vector<std::uint64_t>& sorted, int dest, int p, bool golomb, Bytes& out) {
    if (sorted.empty()) return;
    ByteWriter w(out);
    if (!golomb) {
        for (auto v : sorted) w.u64(v);
        return;
    }
    const std::uint64_t base = range_start(dest, p);
    std::vector<std::uint64_t> rel(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) rel[i] = sorted[i] - base;
    const GolombStream s = golomb_encode(rel, rice_parameter(range_length(dest, p), rel.size()));
    w.varint(s.bit_count);
    w.varint(static_cast<std::uint64_t>(std::countr_zero(s.M)));
    w.bytes(s.data.data(), s.data.size());
}

std::vector<std::uint64_t> decode_stream(const Bytes& in, int me, int p, bool golomb) {
    std::vector<std::uint64_t> out;
    if (in.empty()) return out;
    ByteReader r(in);
    if (!golomb) {
        if (in.size() % 8 != 0) throw DecodeError(0, "fingerprint stream is not a multiple of 8 bytes");
        while (!r.done()) out.push_back(r.u64());
        return out;
    }
    GolombStream s;
    s.bit_count = r.varint();
    const std::uint64_t log_m = r.varint();
    if (log_m > 63) throw DecodeError(r.position(), "Rice parameter out of range");
    s.M = std::uint64_t{1} << log_m;
    const std::size_t nbytes = static_cast<std::size_t>((s.bit_count + 7) / 8);
    const std::uint8_t* data = r.take(nbytes);
    s.data.assign(data, data + nbytes);
    if (!r.done()) throw DecodeError(r.position(), "trailing bytes after fingerprint stream");
    out = golomb_decode(s);
    const std::uint64_t base = range_start(me, p);
    for (auto& v : out) v += base;
    return out;
}

Bytes pack_flags(const std::vector<bool>& flags) {
    Bytes out((flags.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    return out;
}

}  // namespace

std::uint64_t fingerprint_prefix(std::string_view s, std::size_t len, std::uint64_t seed) {
    // MurmurHash64A; the byte beyond a string_view is its terminator
    const std::uint64_t m = 0xc6a4a7935bd1e995ULL;
    const int r = 47;
    std::uint64_t h = seed ^ (len * m);
    auto byte_at = [&](std::size_t i) -> std::uint64_t {
        return i < s.size() ? static_cast<unsigned char>(s[i]) : 0;
    };
    const std::size_t blocks = len / 8;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t k = 0;
        if ((b + 1) * 8 <= s.size()) {
            std::memcpy(&k, s.data() + b * 8, 8);
            if constexpr (std::endian::native == std::endian::big) k = __builtin_bswap64(k);
        } else {
            for (int i = 0; i < 8; ++i) k |= byte_at(b * 8 + static_cast<std::size_t>(i)) << (8 * i);
        }
        k *= m;
        k ^= k >> r;
        k *= m;
        h ^= k;
        h *= m;
    }
    const std::size_t tail = blocks * 8;
    switch (len & 7) {
    case 7: h ^= byte_at(tail + 6) << 48; [[fallthrough]];
    case 6: h ^= byte_at(tail + 5) << 40; [[fallthrough]];
    case 5: h ^= byte_at(tail + 4) << 32; [[fallthrough]];
    case 4: h ^= byte_at(tail + 3) << 24; [[fallthrough]];
    case 3: h ^= byte_at(tail + 2) << 16; [[fallthrough]];
    case 2: h ^= byte_at(tail + 1) << 8; [[fallthrough]];
    case 1:
        h ^= byte_at(tail);
        h *= m;
    }
    h ^= h >> r;
    h *= m;
    h ^= h >> r;
    return h;
}

int fingerprint_owner(std::uint64_t value, int p) {
    return static_cast<int>((static_cast<u128>(value) * static_cast<u128>(p)) >> 64);
}

std::vector<bool> detect_duplicates(Communicator& comm, const std::vector<std::uint64_t>& values, bool golomb,
                                    DupDetectStats* stats) {
    const int p = comm.size();
    const auto pp = static_cast<std::size_t>(p);

    // submission order per destination: ascending value, then input position
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    std::vector<std::vector<std::size_t>> routed(pp);
    for (auto i : order) routed[static_cast<std::size_t>(fingerprint_owner(values[i], p))].push_back(i);

    std::vector<Bytes> sends(pp);
    for (std::size_t d = 0; d < pp; ++d) {
        std::vector<std::uint64_t> stream;
        stream.reserve(routed[d].size());
        for (auto i : routed[d]) stream.push_back(values[i]);
        encode_stream(stream, static_cast<int>(d), p, golomb, sends[d]);
        if (stats) stats->payload_bits += 8 * sends[d].size();
    }
    const auto received = comm.alltoallv(std::move(sends));

    std::vector<std::vector<std::uint64_t>> streams(pp);
    std::vector<std::uint64_t> all;
    for (std::size_t s = 0; s < pp; ++s) {
        streams[s] = decode_stream(received[s], comm.rank(), p, golomb);
        all.insert(all.end(), streams[s].begin(), streams[s].end());
    }
    std::sort(all.begin(), all.end());
    auto occurs_once = [&](std::uint64_t v) {
        const auto range = std::equal_range(all.begin(), all.end(), v);
        return range.second - range.first == 1;
    };

    std::vector<Bytes> replies(pp);
    for (std::size_t s = 0; s < pp; ++s) {
        std::vector<bool> flags(streams[s].size());
        for (std::size_t k = 0; k < flags.size(); ++k) flags[k] = occurs_once(streams[s][k]);
        replies[s] = pack_flags(flags);
        if (stats) stats->payload_bits += 8 * replies[s].size();
    }
    const auto answers = comm.alltoallv(std::move(replies));

    std::vector<bool> unique(values.size(), false);
    for (std::size_t d = 0; d < pp; ++d) {
        const auto& ids = routed[d];
        if (answers[d].size() != (ids.size() + 7) / 8)
            throw DecodeError(0, "reply from PE " + std::to_string(d) + " has the wrong length");
        for (std::size_t k = 0; k < ids.size(); ++k) unique[ids[k]] = (answers[d][k / 8] >> (k % 8)) & 1;
    }
    return unique;
}

std::vector<std::size_t> doubling_grid(int p, std::size_t sigma, double epsilon, std::size_t limit) {
    if (epsilon <= 0) throw std::invalid_argument("doubling_grid: epsilon must be positive");
    if (sigma < 2) throw std::invalid_argument("doubling_grid: alphabet needs at least two symbols");
    const double l0d = std::ceil(std::log2(static_cast<double>(p)) / std::log2(static_cast<double>(sigma)));
    const std::size_t l0 = std::max<std::size_t>(1, static_cast<std::size_t>(l0d));
    std::vector<std::size_t> grid;
    double factor = 1.0;
    while (true) {
        const double raw = std::ceil(static_cast<double>(l0) * factor - 1e-9);
        const std::size_t len = static_cast<std::size_t>(raw);
        if (grid.empty() || len > grid.back()) {
            grid.push_back(len);
            if (len > limit) break;
        }
        factor *= 1.0 + epsilon;
    }
    return grid;
}

PrefixBound approximate_dprefix(Communicator& comm, const StringSet& sorted, const LcpArray& lcps,
                                const PrefixDoublingConfig& cfg) {
    const std::size_t n = sorted.size();
    const std::uint64_t local_max = sorted.max_length();
    const std::uint64_t max_len =
        comm.allreduce(local_max, [](std::uint64_t a, std::uint64_t b) { return std::max(a, b); });
    const auto grid = doubling_grid(comm.size(), cfg.sigma, cfg.epsilon, static_cast<std::size_t>(max_len));

    PrefixBound out;
    out.depth.assign(n, 0);
    out.length.assign(n, 0);
    out.round.assign(n, 0);
    out.capped.assign(n, false);
    std::vector<bool> resolved(n, false);
    std::size_t open = n;

    for (std::uint32_t k = 0;; ++k) {
        if (k >= grid.size()) throw std::logic_error("approximate_dprefix: grid exhausted");
        const std::size_t ell = grid[k];
        for (std::size_t i = 0; i < n; ++i) {
            if (!resolved[i] && ell > sorted.length(i)) {
                resolved[i] = true;
                out.depth[i] = ell;
                out.length[i] = sorted.length(i);
                out.round[i] = k;
                out.capped[i] = true;
                --open;
            }
        }
        // groups of consecutive open strings sharing their ell-prefix
        std::vector<std::uint64_t> fps;
        std::vector<std::size_t> group_begin, group_size;
        for (std::size_t i = 0; i < n;) {
            if (resolved[i]) {
                ++i;
                continue;
            }
            std::size_t j = i + 1;
            while (j < n && !resolved[j] && lcps[j] >= ell) ++j;
            group_begin.push_back(i);
            group_size.push_back(j - i);
            fps.push_back(fingerprint_prefix(sorted[i], ell, cfg.seed));
            i = j;
        }
        const auto unique = detect_duplicates(comm, fps, cfg.golomb);
        for (std::size_t g = 0; g < fps.size(); ++g) {
            if (group_size[g] != 1 || !unique[g]) continue;
            const std::size_t i = group_begin[g];
            resolved[i] = true;
            out.depth[i] = ell;
            out.length[i] = ell;
            out.round[i] = k;
            --open;
        }
        const std::uint64_t remaining =
            comm.allreduce(static_cast<std::uint64_t>(open), [](std::uint64_t a, std::uint64_t b) { return a + b; });
        if (remaining == 0) {
            out.rounds = k + 1;
            break;
        }
    }
    return out;
}

}  // namespace dss
