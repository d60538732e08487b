#include "dss/lcp_merge.hpp"

#include <algorithm>
#include <string>

namespace dss {

MergeValidationError::MergeValidationError(std::size_t run, std::size_t index, const std::string& what)
    : std::invalid_argument("run " + std::to_string(run) + ", index " + std::to_string(index) + ": " +
                            what),
      run_(run), index_(index) {}

LcpLoserTree::LcpLoserTree(const std::vector<SortedRun>& runs, bool lcp_aware)
    : runs_(runs), cursor_(runs.size(), 0), lcp_aware_(lcp_aware) {
    while (leaves_ < runs_.size()) leaves_ *= 2;
    nodes_.assign(leaves_, Node{0, 0});
    for (const auto& r : runs_) remaining_ += r.strings->size();

    // Bottom-up tournament; every candidate starts with LCP 0 against the
    // empty reference string.
    std::vector<std::size_t> winners(2 * leaves_);
    for (std::size_t pos = leaves_; pos < 2 * leaves_; ++pos) winners[pos] = pos - leaves_;
    for (std::size_t pos = leaves_ - 1; pos >= 1; --pos) {
        std::size_t a = winners[2 * pos];
        std::size_t ha = 0;
        nodes_[pos] = Node{winners[2 * pos + 1], 0};
        play(nodes_[pos], a, ha);
        winners[pos] = a;
    }
    winner_ = leaves_ == 1 ? 0 : winners[1];
    winner_lcp_ = 0;
}

bool LcpLoserTree::exhausted(std::size_t run) const {
    return run >= runs_.size() || cursor_[run] >= runs_[run].strings->size();
}

const unsigned char* LcpLoserTree::current(std::size_t run) const {
    return runs_[run].strings->c_str(cursor_[run]);
}

void LcpLoserTree::play(Node& node, std::size_t& a, std::size_t& ha) {
    const std::size_t b = node.run;
    const std::size_t hb = node.lcp;
    if (exhausted(b)) return;
    if (exhausted(a)) {
        node = Node{a, ha};
        a = b;
        ha = hb;
        return;
    }
    if (lcp_aware_) {
        if (ha > hb) return;
        if (ha < hb) {
            node = Node{a, ha};
            a = b;
            ha = hb;
            return;
        }
    }
    const unsigned char* sa = current(a);
    const unsigned char* sb = current(b);
    std::size_t h = lcp_aware_ ? ha : 0;
    while (true) {
        ++comparisons_;
        if (sa[h] != sb[h] || sa[h] == 0) break;
        ++h;
    }
    const bool b_wins = sb[h] < sa[h] || (sb[h] == sa[h] && b < a);
    if (b_wins) {
        node = Node{a, h};
        a = b;
        // b keeps its LCP with the reference string
        ha = hb;
    } else {
        node = Node{b, h};
    }
}

RunPosition LcpLoserTree::pop(std::size_t& lcp) {
    const std::size_t w = winner_;
    lcp = winner_lcp_;
    const RunPosition out{w, cursor_[w]};
    const std::size_t prev_len = runs_[w].strings->length(cursor_[w]);
    ++cursor_[w];
    --remaining_;

    std::size_t a = w;
    std::size_t ha = 0;
    if (!exhausted(w) && lcp_aware_) {
        ha = (*runs_[w].lcps)[cursor_[w]];
        if (ha > prev_len || ha > runs_[w].strings->length(cursor_[w]))
            throw MergeValidationError(w, cursor_[w], "LCP entry exceeds string length");
    }
    for (std::size_t pos = (leaves_ + w) / 2; pos >= 1; pos /= 2) play(nodes_[pos], a, ha);
    winner_ = a;
    winner_lcp_ = ha;
    return out;
}

namespace {

void validate_run(const SortedRun& run, std::size_t r) {
    const StringSet& s = *run.strings;
    const LcpArray& l = *run.lcps;
    if (l.size() != s.size()) throw MergeValidationError(r, 0, "LCP array size mismatch");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < s[i - 1]) throw MergeValidationError(r, i, "run is not sorted");
        if (l[i] != compute_lcp(s[i - 1], s[i])) throw MergeValidationError(r, i, "inconsistent LCP entry");
    }
}

}  // namespace

MergeResult multiway_merge(const std::vector<SortedRun>& runs, const MergeOptions& options) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
        if (options.validate) validate_run(runs[r], r);
        else if (options.lcp_aware && runs[r].lcps->size() != runs[r].strings->size())
            throw MergeValidationError(r, 0, "LCP array size mismatch");
    }

    MergeResult out;
    std::size_t total = 0, chars = 0;
    for (const auto& r : runs) {
        total += r.strings->size();
        chars += r.strings->char_count();
    }
    out.strings.reserve(total, chars);
    out.lcps.reserve(total);
    out.sources.reserve(total);
    if (total == 0) return out;

    LcpLoserTree tree(runs, options.lcp_aware);
    while (!tree.done()) {
        std::size_t lcp = 0;
        const RunPosition src = tree.pop(lcp);
        const StringSet& s = *runs[src.run].strings;
        out.strings.push_back_unchecked(s[src.index].data(), s.length(src.index));
        out.lcps.push_back(lcp);
        out.sources.push_back(src);
    }
    out.lcps[0] = 0;
    if (!options.lcp_aware) out.lcps = compute_lcp_array(out.strings);
    out.char_comparisons = tree.char_comparisons();
    return out;
}

}  // namespace dss
