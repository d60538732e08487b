#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dss/string_set.hpp"

namespace dss {

/// One sorted input sequence of a multiway merge.
struct SortedRun {
    const StringSet* strings = nullptr;
    const LcpArray* lcps = nullptr;
};

/// Position of a merged string in its input run.
struct RunPosition {
    std::size_t run = 0;
    std::size_t index = 0;
};

struct MergeResult {
    StringSet strings;
    LcpArray lcps;
    std::vector<RunPosition> sources;
    /// Character comparisons performed by the tournament.
    std::size_t char_comparisons = 0;
};

struct MergeOptions {
    /// Check every run for sortedness and LCP consistency before merging.
    bool validate = false;
    /// When false, runs carry no usable LCP information: games compare from
    /// the first character and the output LCP array is computed afterwards.
    bool lcp_aware = true;
};

class MergeValidationError : public std::invalid_argument {
public:
    MergeValidationError(std::size_t run, std::size_t index, const std::string& what);
    std::size_t run() const { return run_; }
    std::size_t index() const { return index_; }

private:
    std::size_t run_;
    std::size_t index_;
};

/// K-way LCP loser tree.
///
/// Internal nodes keep the losing run and its LCP with the string that beat
/// it. Along the winner's leaf-to-root path every stored LCP is relative to
/// the winner, so replaying a game after output needs character comparisons
/// only when both LCPs tie. With m output strings and ΔL the total growth of
/// LCP entries from input runs to output,
///   char_comparisons <= m * ceil(log2 K) + ΔL.
/// Equal strings leave in run-index order.
class LcpLoserTree {
public:
    LcpLoserTree(const std::vector<SortedRun>& runs, bool lcp_aware = true);

    bool done() const { return remaining_ == 0; }
    /// Emits the next string. `lcp` receives its LCP with the previous output.
    RunPosition pop(std::size_t& lcp);
    std::size_t char_comparisons() const { return comparisons_; }
    std::size_t leaves() const { return leaves_; }

private:
    struct Node {
        std::size_t run;
        std::size_t lcp;
    };

    bool exhausted(std::size_t run) const;
    const unsigned char* current(std::size_t run) const;
    // Plays run a (carrying lcp ha) against the loser stored at `node`; the
    // winner and its lcp come back in a / ha.
    void play(Node& node, std::size_t& a, std::size_t& ha);

    std::vector<SortedRun> runs_;
    std::vector<std::size_t> cursor_;
    std::vector<Node> nodes_;
    std::size_t leaves_ = 1;
    std::size_t winner_ = 0;
    std::size_t winner_lcp_ = 0;
    std::size_t remaining_ = 0;
    std::size_t comparisons_ = 0;
    bool lcp_aware_ = true;
};

MergeResult multiway_merge(const std::vector<SortedRun>& runs, const MergeOptions& options = {});

}  // namespace dss
