#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dss/comm.hpp"
#include "dss/string_set.hpp"

namespace dss {

/// 64-bit MurmurHash64A of the first `len` bytes of s; len may be |s|+1 to
/// include the terminator.
std::uint64_t fingerprint_prefix(std::string_view s, std::size_t len, std::uint64_t seed);

/// PE responsible for a fingerprint: the 64-bit value range is split into p
/// equal intervals.
int fingerprint_owner(std::uint64_t value, int p);

struct DupDetectStats {
    /// Bits of fingerprint and reply payload produced by this PE.
    std::uint64_t payload_bits = 0;
};

/// flags[i] is true iff values[i] occurs exactly once across all PEs'
/// submissions. Streams are sorted per destination; with `golomb` they are
/// Rice coded relative to the destination's range start, otherwise sent as
/// raw 64-bit words. Replies are one bit per received value.
std::vector<bool> detect_duplicates(Communicator& comm, const std::vector<std::uint64_t>& values, bool golomb,
                                    DupDetectStats* stats = nullptr);

struct PrefixDoublingConfig {
    double epsilon = 1.0;
    std::size_t sigma = 256;
    std::uint64_t seed = 0x5eed;
    bool golomb = false;
};

/// ceil(l0 * (1+eps)^k) for k = 0, 1, ... with repeats removed, where
/// l0 = max(1, ceil(log2 p / log2 sigma)). Generates values up to `limit`
/// plus the first one beyond it.
std::vector<std::size_t> doubling_grid(int p, std::size_t sigma, double epsilon, std::size_t limit);

/// Per-string outcome of prefix doubling.
struct PrefixBound {
    /// Grid length at which the string was resolved.
    std::vector<std::size_t> depth;
    /// Characters to keep: depth, or |s| when capped.
    std::vector<std::size_t> length;
    /// Zero-based doubling round that resolved the string.
    std::vector<std::uint32_t> round;
    /// The grid length overran |s|; the whole string is needed.
    std::vector<bool> capped;
    /// Rounds executed (identical on every PE).
    std::uint32_t rounds = 0;
};

/// Approximates distinguishing prefix lengths of a distributed sorted set.
/// In each round the unresolved strings are cut to the current length.
/// Locally consecutive strings with equal cut prefixes form one group and
/// submit one fingerprint; a group is resolved when it has one member and
/// its fingerprint is globally unique. A string whose length is below the
/// current length is resolved as capped. Collective.
PrefixBound approximate_dprefix(Communicator& comm, const StringSet& sorted, const LcpArray& lcps,
                                const PrefixDoublingConfig& cfg);

}  // namespace dss
