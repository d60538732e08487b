#include "dss/tagged.hpp"

#include <algorithm>
#include <numeric>

#include "dss/sequential_sort.hpp"
#include "dss/wire.hpp"

namespace dss {

int compare_tagged(std::string_view a, Origin oa, std::string_view b, Origin ob) {
    // string_view::compare on char is not guaranteed unsigned; compare bytes
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ca = static_cast<unsigned char>(a[i]);
        const auto cb = static_cast<unsigned char>(b[i]);
        if (ca != cb) return ca < cb ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (oa == ob) return 0;
    return oa < ob ? -1 : 1;
}

LcpArray sort_tagged(TaggedStrings& set) {
    // origin order first; the string sort is stable
    std::vector<std::size_t> by_origin(set.size());
    std::iota(by_origin.begin(), by_origin.end(), 0);
    std::sort(by_origin.begin(), by_origin.end(),
              [&](std::size_t x, std::size_t y) { return set.origins[x] < set.origins[y]; });
    StringSet pre = set.strings.gather(by_origin);

    std::vector<std::size_t> perm;
    LcpArray lcps;
    sort_permutation(pre, perm, lcps);

    std::vector<Origin> origins(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) origins[i] = set.origins[by_origin[perm[i]]];
    set.strings = pre.gather(perm);
    set.origins = std::move(origins);
    return lcps;
}

TaggedStrings merge_tagged(const TaggedStrings& a, const TaggedStrings& b) {
    TaggedStrings out;
    out.strings.reserve(a.size() + b.size(), a.strings.char_count() + b.strings.char_count());
    out.origins.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const bool take_a =
            j == b.size() ||
            (i < a.size() && compare_tagged(a.strings[i], a.origins[i], b.strings[j], b.origins[j]) <= 0);
        if (take_a) {
            out.push_back(a.strings[i], a.origins[i]);
            ++i;
        } else {
            out.push_back(b.strings[j], b.origins[j]);
            ++j;
        }
    }
    return out;
}

void serialize_tagged(const TaggedStrings& set, std::size_t begin, std::size_t end, Bytes& out) {
    ByteWriter w(out);
    w.varint(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        w.varint(set.origins[i].pe);
        w.varint(set.origins[i].index);
        w.str(set.strings[i]);
    }
}

void deserialize_tagged(const Bytes& in, TaggedStrings& out) {
    ByteReader r(in);
    const std::uint64_t n = r.varint();
    for (std::uint64_t k = 0; k < n; ++k) {
        Origin o;
        o.pe = static_cast<std::uint32_t>(r.varint());
        o.index = r.varint();
        const std::size_t at = r.position();
        const std::string_view s = r.str();
        if (s.find('\0') != std::string_view::npos) throw DecodeError(at, "0 byte inside a string");
        out.push_back(s, o);
    }
    if (!r.done()) throw DecodeError(r.position(), "trailing bytes");
}

}  // namespace dss
