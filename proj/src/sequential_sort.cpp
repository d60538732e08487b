#include "dss/sequential_sort.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace dss {

namespace {

struct Item {
    const unsigned char* str;
    std::size_t index;
};

struct Range {
    std::size_t begin;
    std::size_t end;
    std::size_t depth;
};

// All strings inside a Range share their first `depth` characters, and the
// LCP entry at `begin` (with the element before the range) is already final.
class LcpSorter {
public:
    LcpSorter(std::vector<Item>& items, LcpArray& lcps, const SortOptions& options)
        : items_(items), lcps_(lcps), options_(options), shadow_(items.size()),
          keys_(items.size()) {}

    void run() {
        if (items_.size() > 1) radix_sort({0, items_.size(), 0});
        if (options_.stats) options_.stats->char_inspections += inspections_;
    }

private:
    unsigned char at(const Item& item, std::size_t depth) {
        ++inspections_;
        return item.str[depth];
    }

    // Returns the LCP of a and b starting the scan at `from`; `less` is set
    // when a sorts strictly before b.
    std::size_t compare(const Item& a, const Item& b, std::size_t from, bool& less) {
        std::size_t h = from;
        while (true) {
            const unsigned char ca = at(a, h);
            const unsigned char cb = at(b, h);
            if (ca != cb) {
                less = ca < cb;
                return h;
            }
            if (ca == 0) {
                less = false;
                return h;
            }
            ++h;
        }
    }

    void radix_sort(Range root) {
        std::vector<Range> stack{root};
        while (!stack.empty()) {
            const Range r = stack.back();
            stack.pop_back();
            const std::size_t n = r.end - r.begin;
            if (n < std::max<std::size_t>(options_.alphabet_size, 2)) {
                multikey_quicksort(r);
                continue;
            }

            std::array<std::size_t, 256> count{};
            for (std::size_t i = r.begin; i < r.end; ++i) {
                keys_[i] = at(items_[i], r.depth);
                ++count[keys_[i]];
            }
            std::array<std::size_t, 256> pos{};
            std::size_t sum = r.begin;
            for (std::size_t c = 0; c < 256; ++c) {
                pos[c] = sum;
                sum += count[c];
            }
            for (std::size_t i = r.begin; i < r.end; ++i) shadow_[pos[keys_[i]]++] = items_[i];
            std::copy(shadow_.begin() + r.begin, shadow_.begin() + r.end, items_.begin() + r.begin);

            // Finished strings in bucket 0 are all equal.
            for (std::size_t i = r.begin + 1; i < r.begin + count[0]; ++i) lcps_[i] = r.depth;

            std::size_t start = r.begin;
            for (std::size_t c = 0; c < 256; ++c) {
                if (count[c] == 0) continue;
                if (start != r.begin) lcps_[start] = r.depth;
                if (c != 0 && count[c] > 1) stack.push_back({start, start + count[c], r.depth + 1});
                start += count[c];
            }
        }
    }

    void multikey_quicksort(Range root) {
        std::vector<Range> stack{root};
        while (!stack.empty()) {
            const Range r = stack.back();
            stack.pop_back();
            const std::size_t n = r.end - r.begin;
            if (n < 2) continue;
            if (n < options_.insertion_threshold) {
                insertion_sort(r);
                continue;
            }

            for (std::size_t i = r.begin; i < r.end; ++i) keys_[i] = at(items_[i], r.depth);
            const unsigned char a = keys_[r.begin];
            const unsigned char b = keys_[r.begin + n / 2];
            const unsigned char c = keys_[r.end - 1];
            const unsigned char pivot = std::max(std::min(a, b), std::min(std::max(a, b), c));

            // Stable three-way partition through the shadow buffer.
            std::size_t lt = 0, eq = 0;
            for (std::size_t i = r.begin; i < r.end; ++i) {
                if (keys_[i] < pivot) ++lt;
                else if (keys_[i] == pivot) ++eq;
            }
            std::size_t p_lt = r.begin, p_eq = r.begin + lt, p_gt = r.begin + lt + eq;
            for (std::size_t i = r.begin; i < r.end; ++i) {
                if (keys_[i] < pivot) shadow_[p_lt++] = items_[i];
                else if (keys_[i] == pivot) shadow_[p_eq++] = items_[i];
                else shadow_[p_gt++] = items_[i];
            }
            std::copy(shadow_.begin() + r.begin, shadow_.begin() + r.end, items_.begin() + r.begin);

            const std::size_t eq_begin = r.begin + lt;
            const std::size_t gt_begin = eq_begin + eq;
            if (lt > 0) lcps_[eq_begin] = r.depth;
            if (gt_begin < r.end) lcps_[gt_begin] = r.depth;

            if (gt_begin < r.end) stack.push_back({gt_begin, r.end, r.depth});
            if (pivot == 0) {
                for (std::size_t i = eq_begin + 1; i < gt_begin; ++i) lcps_[i] = r.depth;
            } else {
                stack.push_back({eq_begin, gt_begin, r.depth + 1});
            }
            if (lt > 0) stack.push_back({r.begin, eq_begin, r.depth});
        }
    }

    // Forward LCP insertion sort. Keeps lcp(x, sorted[k]) while scanning so
    // most steps decide the order from stored LCPs alone.
    void insertion_sort(Range r) {
        sorted_.clear();
        heights_.clear();
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const Item x = items_[i];
            if (sorted_.empty()) {
                sorted_.push_back(x);
                heights_.push_back(0);
                continue;
            }
            bool less = false;
            std::size_t cur = compare(x, sorted_[0], r.depth, less);
            std::size_t k = 0;
            std::size_t insert_lcp_prev = 0;  // lcp(x, sorted[k-1]) for the final slot
            std::size_t insert_lcp_next = cur;
            bool placed = less;
            while (!placed) {
                if (k + 1 == sorted_.size()) {
                    // Append after the last element.
                    sorted_.push_back(x);
                    heights_.push_back(cur);
                    break;
                }
                const std::size_t link = heights_[k + 1];
                if (link > cur) {
                    ++k;
                } else if (link < cur) {
                    insert_lcp_prev = cur;
                    insert_lcp_next = link;
                    ++k;
                    placed = true;
                } else {
                    const std::size_t prev = cur;
                    cur = compare(x, sorted_[k + 1], cur, less);
                    ++k;
                    if (less) {
                        insert_lcp_prev = prev;
                        insert_lcp_next = cur;
                        placed = true;
                    }
                }
            }
            if (placed) {
                sorted_.insert(sorted_.begin() + static_cast<std::ptrdiff_t>(k), x);
                heights_.insert(heights_.begin() + static_cast<std::ptrdiff_t>(k), insert_lcp_prev);
                heights_[k + 1] = insert_lcp_next;
            }
        }
        for (std::size_t k = 0; k < sorted_.size(); ++k) {
            items_[r.begin + k] = sorted_[k];
            if (k > 0) lcps_[r.begin + k] = heights_[k];
        }
    }

    std::vector<Item>& items_;
    LcpArray& lcps_;
    const SortOptions& options_;
    std::vector<Item> shadow_;
    std::vector<unsigned char> keys_;
    std::vector<Item> sorted_;
    std::vector<std::size_t> heights_;
    std::size_t inspections_ = 0;
};

}  // namespace

void sort_permutation(const StringSet& set, std::vector<std::size_t>& permutation, LcpArray& lcps,
                      const SortOptions& options) {
    const std::size_t n = set.size();
    std::vector<Item> items(n);
    for (std::size_t i = 0; i < n; ++i) items[i] = {set.c_str(i), i};
    lcps.assign(n, 0);
    LcpSorter(items, lcps, options).run();
    permutation.resize(n);
    for (std::size_t i = 0; i < n; ++i) permutation[i] = items[i].index;
}

SortedStrings sort_with_lcp(const StringSet& set, const SortOptions& options) {
    SortedStrings out;
    sort_permutation(set, out.permutation, out.lcps, options);
    out.strings = set.gather(out.permutation);
    return out;
}

}  // namespace dss
