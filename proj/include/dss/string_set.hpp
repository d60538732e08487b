#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dss {

/// Per-position longest-common-prefix lengths aligned with a sorted
/// StringSet. Entry 0 is a sentinel and always holds 0.
using LcpArray = std::vector<std::size_t>;

/// Identifies where a string came from: the PE that held it and its index in
/// that PE's local array.
struct Origin {
    std::uint32_t pe = 0;
    std::uint64_t index = 0;

    friend constexpr auto operator<=>(const Origin&, const Origin&) = default;
};

/// An ordered collection of 0-terminated byte strings stored contiguously.
///
/// Every string is followed by exactly one terminator byte and contains no
/// other 0 byte, so `c_str(i)[depth]` is valid for every depth up to and
/// including `length(i)`. Characters compare as unsigned bytes.
class StringSet {
public:
    StringSet() = default;
    StringSet(std::initializer_list<std::string_view> strings);

    template <typename Range>
    static StringSet from(const Range& strings) {
        StringSet set;
        for (const auto& s : strings) set.push_back(std::string_view(s));
        return set;
    }

    /// Appends a copy of `s`. Throws std::invalid_argument if `s` contains a
    /// 0 byte.
    void push_back(std::string_view s);
    /// Appends `len` bytes starting at `s` without validation. The caller
    /// guarantees there is no 0 byte in the range.
    void push_back_unchecked(const char* s, std::size_t len);
    void append(const StringSet& other);
    void reserve(std::size_t strings, std::size_t chars);
    void clear();

    std::size_t size() const { return offsets_.size(); }
    bool empty() const { return offsets_.empty(); }

    std::string_view operator[](std::size_t i) const {
        return {chars_.data() + offsets_[i], length(i)};
    }
    std::size_t length(std::size_t i) const {
        const std::size_t end = i + 1 < offsets_.size() ? offsets_[i + 1] : chars_.size();
        return end - offsets_[i] - 1;
    }
    const unsigned char* c_str(std::size_t i) const {
        return reinterpret_cast<const unsigned char*>(chars_.data() + offsets_[i]);
    }

    /// Number of characters, terminators excluded.
    std::size_t char_count() const { return chars_.size() - offsets_.size(); }
    std::size_t max_length() const;

    std::span<const char> buffer() const { return chars_; }
    std::span<const std::size_t> offsets() const { return offsets_; }

    /// Copy holding strings `indices[0], indices[1], ...` in that order.
    StringSet gather(std::span<const std::size_t> indices) const;
    StringSet slice(std::size_t begin, std::size_t end) const;
    std::vector<std::string> to_vector() const;

    friend bool operator==(const StringSet& a, const StringSet& b) {
        return a.chars_ == b.chars_ && a.offsets_ == b.offsets_;
    }

private:
    std::vector<char> chars_;
    std::vector<std::size_t> offsets_;
};

/// Number of leading equal characters, terminator not counted.
std::size_t compute_lcp(std::string_view a, std::string_view b);

/// LCP array of an arbitrary sequence computed by direct neighbour scans.
LcpArray compute_lcp_array(const StringSet& set);

bool is_sorted(const StringSet& set);

/// Distinguishing prefix lengths of a sorted set.
struct DistinguishingInfo {
    std::vector<std::size_t> dpre;
    /// Set when dpre reaches |s|+1: the whole string including its terminator
    /// is needed (exact duplicates, or s is a prefix of a neighbour).
    std::vector<bool> capped;
    std::size_t total = 0;
    std::size_t max = 0;
};

/// dpre[i] = max(lcps[i], lcps[i+1]) + 1, clamped to |s_i|+1. A lone string
/// gets dpre = 1.
DistinguishingInfo distinguishing_prefixes(const StringSet& sorted, const LcpArray& lcps);

}  // namespace dss
