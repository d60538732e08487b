#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dss/comm.hpp"
#include "dss/dupdetect.hpp"
#include "dss/exchange.hpp"
#include "dss/hquick.hpp"
#include "dss/partition.hpp"
#include "dss/string_set.hpp"

namespace dss {

enum class Algorithm { hquick, ms_simple, ms, pdms, pdms_golomb, fk_baseline };

std::string to_string(Algorithm a);
/// Accepts hquick, ms-simple, ms, pdms, pdms-golomb, fk-baseline.
Algorithm parse_algorithm(std::string_view name);

enum class OutputMode { full_strings, prefixes_only };

/// Phase labels used by the drivers.
namespace phase {
inline constexpr const char* local_sort = "local-sort";
inline constexpr const char* dupdetect = "dupdetect";
inline constexpr const char* sample = "sample";
inline constexpr const char* splitter_sort = "splitter-sort";
inline constexpr const char* exchange = "exchange";
inline constexpr const char* merge = "merge";
inline constexpr const char* scatter = "scatter";
inline constexpr const char* hquick = "hquick";
}  // namespace phase

/// Intermediate artifacts of one PE, kept on request.
struct SortTrace {
    StringSet local_sorted;
    LcpArray local_lcps;
    std::optional<PrefixBound> prefix_bound;
    /// Locally sorted strings cut to their prefix bounds (PDMS only).
    StringSet truncated;
    LcpArray truncated_lcps;
    StringSet sample;
    StringSet splitters;
    std::vector<std::size_t> bucket_bounds;
    /// Records sent to each PE.
    std::vector<std::vector<WireRecord>> sent;
    std::vector<ReceivedRun> received;
};

struct SortOutcome {
    StringSet strings;
    LcpArray lcps;
    /// Origin of each output string. For the merge-based sorters the index is
    /// the position in the sender's locally sorted array (see local_order);
    /// for hquick it is the input index.
    std::vector<Origin> origins;
    OutputMode mode = OutputMode::full_strings;
    /// local_order[k] is the input index of this PE's k-th locally sorted
    /// string. Empty when origins already carry input indices.
    std::vector<std::size_t> local_order;
    /// Aligned with the locally sorted order (PDMS only).
    std::optional<PrefixBound> prefix_bound;
    /// Doubling rounds (PDMS) or hypercube dimension (hquick); 0 otherwise.
    std::uint32_t rounds = 0;
    std::optional<SortTrace> trace;
};

struct MsConfig {
    bool compression = true;
    SamplingConfig sampling;
    bool keep_trace = false;
};

struct PdmsConfig {
    PrefixDoublingConfig doubling;
    SamplingConfig sampling;
    bool keep_trace = false;
};

/// Local sort, regular sampling, splitter selection, bucket exchange and
/// multiway merge. Without compression the received runs carry no LCPs and
/// are merged by a plain loser tree.
SortOutcome ms_sort(Communicator& comm, const StringSet& local, const MsConfig& cfg);

/// MS on prefixes: after the local sort every string is cut to its
/// approximate distinguishing prefix, and only the prefixes are sampled,
/// exchanged and merged.
SortOutcome pdms_sort(Communicator& comm, const StringSet& local, const PdmsConfig& cfg);

/// Hypercube quicksort over the active PEs.
SortOutcome hquick_driver(Communicator& comm, const StringSet& local, const HquickOptions& options = {});

struct SorterConfig {
    Algorithm algorithm = Algorithm::ms;
    SamplingMode sampling = SamplingMode::string_based;
    /// Samples per PE; 0 means p.
    std::size_t oversampling = 0;
    double epsilon = 1.0;
    std::size_t sigma = 256;
    std::uint64_t seed = 1;
    bool keep_trace = false;
};

SortOutcome run_sorter(Communicator& comm, const StringSet& local, const SorterConfig& cfg);

/// Replaces the sorted-position origins of merge-based outcomes by input
/// indices using every PE's local_order.
std::vector<std::vector<Origin>> input_origins(const std::vector<SortOutcome>& outcomes);

}  // namespace dss
