#pragma once

#include <cstddef>
#include <vector>

#include "dss/comm.hpp"
#include "dss/string_set.hpp"

namespace dss {

/// Strings carrying their origin. (string, origin) is a strict total order
/// even with duplicate strings, because origins are globally unique.
struct TaggedStrings {
    StringSet strings;
    std::vector<Origin> origins;

    std::size_t size() const { return strings.size(); }
    void push_back(std::string_view s, Origin o) {
        strings.push_back_unchecked(s.data(), s.size());
        origins.push_back(o);
    }
};

/// Three-way comparison of (a, oa) and (b, ob).
int compare_tagged(std::string_view a, Origin oa, std::string_view b, Origin ob);

/// Sorts by (string, origin) and returns the LCP array of the result.
LcpArray sort_tagged(TaggedStrings& set);

/// Merges two sequences that are each sorted by (string, origin).
TaggedStrings merge_tagged(const TaggedStrings& a, const TaggedStrings& b);

/// Wire form: varint count, then per string varint pe, varint index, varint
/// length and the characters.
void serialize_tagged(const TaggedStrings& set, std::size_t begin, std::size_t end, Bytes& out);
void deserialize_tagged(const Bytes& in, TaggedStrings& out);

}  // namespace dss
