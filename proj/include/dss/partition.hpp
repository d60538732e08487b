#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dss/comm.hpp"
#include "dss/string_set.hpp"

namespace dss {

enum class SamplingMode { string_based, char_based, fk_deterministic };
enum class SplitterSorter { hquick, centralized };

struct SamplingConfig {
    SamplingMode mode = SamplingMode::string_based;
    /// Samples per PE. The deterministic baseline always uses p-1.
    std::size_t v = 1;
    SplitterSorter sorter = SplitterSorter::hquick;
    std::uint64_t seed = 1;
};

/// Ranks floor(j*n/(v+1))-1 for j = 1..v, clamped to [0, n) with repeated
/// ranks removed.
std::vector<std::size_t> string_sample_ranks(std::size_t n, std::size_t v);

StringSet sample_string_based(const StringSet& sorted, std::size_t v);

/// For character ranks floor(j*N/(v+1))-1 over the concatenated weights
/// (string lengths unless `weights` is given; terminators are not counted),
/// picks the first string starting at or after that rank, or the last string
/// when none does. Consecutive equal picks collapse.
std::vector<std::size_t> char_sample_indices(const StringSet& sorted, std::size_t v,
                                             const std::vector<std::size_t>* weights = nullptr);

StringSet sample_char_based(const StringSet& sorted, std::size_t v,
                            const std::vector<std::size_t>* weights = nullptr);

/// Local sample according to the configured mode.
StringSet draw_sample(const StringSet& sorted, const SamplingConfig& cfg, int p,
                      const std::vector<std::size_t>* weights = nullptr);

/// Splitter positions in a sorted global sample of size m: floor(i*m/p)-1
/// for i = 1..p-1, clamped at 0. With m < p-1, splitter i is sample
/// min(i, m)-1 so the largest sample repeats. Empty when m = 0.
std::vector<std::size_t> splitter_ranks(std::size_t m, int p);

/// Sorts the union of all local samples and returns the same p-1 splitters
/// on every PE. With no samples at all, every splitter is the empty string.
StringSet select_splitters(Communicator& comm, const StringSet& local_sample, const SamplingConfig& cfg);

/// p+1 boundaries: bucket i is [b[i], b[i+1]) and holds the strings s with
/// f_i < s <= f_{i+1}.
std::vector<std::size_t> compute_buckets(const StringSet& sorted, const StringSet& splitters);

}  // namespace dss
