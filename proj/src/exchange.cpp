#include "dss/exchange.hpp"

#include <algorithm>
#include <cstring>

namespace dss {

namespace {

std::size_t record_lcp(const LcpArray& lcps, std::size_t i, std::size_t begin, bool compress) {
    return compress && i > begin ? lcps[i] : 0;
}

}  // namespace

std::vector<WireRecord> bucket_records(const StringSet& sorted, const LcpArray& lcps, std::size_t begin,
                                       std::size_t end, bool compress) {
    std::vector<WireRecord> out;
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t h = record_lcp(lcps, i, begin, compress);
        std::string suffix(sorted[i].substr(h));
        suffix.push_back('\0');
        out.push_back({h, std::move(suffix)});
    }
    return out;
}

void encode_bucket_into(const StringSet& sorted, const LcpArray& lcps, std::size_t begin, std::size_t end,
                        bool compress, Bytes& out) {
    ByteWriter w(out);
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t h = record_lcp(lcps, i, begin, compress);
        const std::size_t len = sorted.length(i);
        if (h > len) throw std::invalid_argument("encode_bucket: LCP exceeds string length");
        w.varint(h);
        w.varint(len - h + 1);
        w.bytes(sorted.c_str(i) + h, len - h + 1);
    }
}

Bytes encode_bucket(const StringSet& sorted, const LcpArray& lcps, std::size_t begin, std::size_t end,
                    bool compress) {
    Bytes out;
    encode_bucket_into(sorted, lcps, begin, end, compress, out);
    return out;
}

std::size_t encoded_bucket_size(const StringSet& sorted, const LcpArray& lcps, std::size_t begin,
                                std::size_t end, bool compress) {
    std::size_t total = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t h = record_lcp(lcps, i, begin, compress);
        const std::size_t suffix = sorted.length(i) - h + 1;
        total += varint_size(h) + varint_size(suffix) + suffix;
    }
    return total;
}

DecodedBucket decode_bucket(const std::uint8_t* data, std::size_t size) {
    DecodedBucket out;
    ByteReader r(data, size);
    std::string prev;
    std::string cur;
    while (!r.done()) {
        const std::size_t at = r.position();
        const std::uint64_t h = r.varint();
        if (h > prev.size()) throw DecodeError(at, "LCP exceeds previous string length");
        if (out.strings.empty() && h != 0) throw DecodeError(at, "first record has nonzero LCP");
        const std::size_t len_at = r.position();
        const std::uint64_t n = r.varint();
        if (n == 0) throw DecodeError(len_at, "empty suffix");
        const std::size_t body = r.position();
        const std::uint8_t* s = r.take(n);
        if (s[n - 1] != 0) throw DecodeError(body + n - 1, "suffix is not terminated");
        if (std::memchr(s, 0, n - 1) != nullptr) throw DecodeError(body, "0 byte inside a suffix");
        cur.assign(prev, 0, h);
        cur.append(reinterpret_cast<const char*>(s), n - 1);
        out.strings.push_back_unchecked(cur.data(), cur.size());
        out.lcps.push_back(h);
        std::swap(prev, cur);
    }
    return out;
}

DecodedBucket decode_bucket(const Bytes& bytes) { return decode_bucket(bytes.data(), bytes.size()); }

std::vector<ReceivedRun> exchange_buckets(Communicator& comm, const StringSet& sorted, const LcpArray& lcps,
                                          const std::vector<std::size_t>& bounds, bool compress) {
    const auto p = static_cast<std::size_t>(comm.size());
    if (bounds.size() != p + 1) throw std::invalid_argument("exchange_buckets: need p+1 bucket boundaries");
    std::vector<Bytes> sends(p);
    for (std::size_t j = 0; j < p; ++j) {
        ByteWriter(sends[j]).varint(bounds[j]);
        encode_bucket_into(sorted, lcps, bounds[j], bounds[j + 1], compress, sends[j]);
    }
    auto received = comm.alltoallv(std::move(sends));
    std::vector<ReceivedRun> runs(p);
    for (std::size_t i = 0; i < p; ++i) {
        try {
            ByteReader r(received[i]);
            runs[i].base = r.varint();
            DecodedBucket d = decode_bucket(received[i].data() + r.position(), r.remaining());
            runs[i].strings = std::move(d.strings);
            runs[i].lcps = std::move(d.lcps);
        } catch (const DecodeError& e) {
            throw ExchangeError(static_cast<int>(i), e);
        }
    }
    return runs;
}

}  // namespace dss
