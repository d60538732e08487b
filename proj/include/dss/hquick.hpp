#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dss/comm.hpp"
#include "dss/tagged.hpp"

namespace dss {

/// Hypercube of the first 2^d PEs, d = floor(log2 p).
struct HypercubeConfig {
    int dimension = 0;
    int active = 1;

    static HypercubeConfig for_world(int p);
    bool is_active(int rank) const { return rank < active; }
};

struct TaggedString {
    std::string chars;
    Origin origin;
};

struct HquickOptions {
    std::uint64_t seed = 1;
    /// Number of points in the quantile summaries used for pivot selection.
    std::size_t summary_points = 16;
    /// The run aborts when a PE holds more than
    /// max(imbalance_factor * average, imbalance_floor) strings after a split.
    double imbalance_factor = 8.0;
    std::size_t imbalance_floor = 64;
    /// Label communication with the phases "scatter" and "hquick".
    bool label_phases = false;
};

struct HquickResult {
    TaggedStrings data;
    LcpArray lcps;
    int dimension = 0;
};

class LoadImbalanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sends every string to a uniformly random active PE drawn from the stream
/// Rng(pe_seed(seed, rank)), one uniform_below(2^d) per string in input
/// order. Received strings are ordered by source rank, then source order.
TaggedStrings random_scatter(Communicator& comm, const TaggedStrings& local, std::uint64_t seed);

/// Pivot for the subcube of active PEs that agree on all rank bits at and
/// above `dims`. Each PE summarises its local strings by weighted quantiles;
/// summaries are combined pairwise along the subcube dimensions and the
/// weighted median of the result is returned on every member. Empty
/// subcubes yield nullopt.
std::optional<TaggedString> select_pivot(Communicator& comm, int dims, const TaggedStrings& local,
                                         std::size_t summary_points = 16);

/// Distributed quicksort on the hypercube. The outputs of the active PEs in
/// rank order form the sorted sequence by (string, origin); inactive PEs end
/// with nothing.
HquickResult hquick_sort(Communicator& comm, TaggedStrings local, const HquickOptions& options = {});

}  // namespace dss
