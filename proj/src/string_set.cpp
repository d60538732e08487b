#include "dss/string_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace dss {

StringSet::StringSet(std::initializer_list<std::string_view> strings) {
    for (auto s : strings) push_back(s);
}

void StringSet::push_back(std::string_view s) {
    if (s.find('\0') != std::string_view::npos)
        throw std::invalid_argument("StringSet: string contains a 0 byte");
    push_back_unchecked(s.data(), s.size());
}

void StringSet::push_back_unchecked(const char* s, std::size_t len) {
    offsets_.push_back(chars_.size());
    chars_.insert(chars_.end(), s, s + len);
    chars_.push_back('\0');
}

void StringSet::append(const StringSet& other) {
    const std::size_t base = chars_.size();
    offsets_.reserve(offsets_.size() + other.offsets_.size());
    for (auto off : other.offsets_) offsets_.push_back(base + off);
    chars_.insert(chars_.end(), other.chars_.begin(), other.chars_.end());
}

void StringSet::reserve(std::size_t strings, std::size_t chars) {
    offsets_.reserve(strings);
    chars_.reserve(chars + strings);
}

void StringSet::clear() {
    chars_.clear();
    offsets_.clear();
}

std::size_t StringSet::max_length() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < size(); ++i) best = std::max(best, length(i));
    return best;
}

StringSet StringSet::gather(std::span<const std::size_t> indices) const {
    StringSet out;
    std::size_t chars = 0;
    for (auto i : indices) chars += length(i);
    out.reserve(indices.size(), chars);
    for (auto i : indices) out.push_back_unchecked(chars_.data() + offsets_[i], length(i));
    return out;
}

StringSet StringSet::slice(std::size_t begin, std::size_t end) const {
    StringSet out;
    if (begin >= end) return out;
    const std::size_t first = offsets_[begin];
    const std::size_t last = end < size() ? offsets_[end] : chars_.size();
    out.chars_.assign(chars_.begin() + first, chars_.begin() + last);
    out.offsets_.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.offsets_.push_back(offsets_[i] - first);
    return out;
}

std::vector<std::string> StringSet::to_vector() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back((*this)[i]);
    return out;
}

std::size_t compute_lcp(std::string_view a, std::string_view b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t h = 0;
    while (h < n && a[h] == b[h]) ++h;
    return h;
}

LcpArray compute_lcp_array(const StringSet& set) {
    LcpArray lcps(set.size(), 0);
    for (std::size_t i = 1; i < set.size(); ++i) lcps[i] = compute_lcp(set[i - 1], set[i]);
    return lcps;
}

bool is_sorted(const StringSet& set) {
    for (std::size_t i = 1; i < set.size(); ++i)
        if (set[i] < set[i - 1]) return false;
    return true;
}

DistinguishingInfo distinguishing_prefixes(const StringSet& sorted, const LcpArray& lcps) {
    if (lcps.size() != sorted.size())
        throw std::invalid_argument("distinguishing_prefixes: LCP array size mismatch");
    const std::size_t n = sorted.size();
    DistinguishingInfo info;
    info.dpre.resize(n);
    info.capped.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t neighbour = 0;
        if (i > 0) neighbour = lcps[i];
        if (i + 1 < n) neighbour = std::max(neighbour, lcps[i + 1]);
        const std::size_t len = sorted.length(i);
        const std::size_t d = std::min(neighbour + 1, len + 1);
        info.dpre[i] = d;
        info.capped[i] = neighbour >= len;
        info.total += d;
        info.max = std::max(info.max, d);
    }
    return info;
}

}  // namespace dss
