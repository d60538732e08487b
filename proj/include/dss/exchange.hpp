#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dss/comm.hpp"
#include "dss/string_set.hpp"
#include "dss/wire.hpp"

namespace dss {

/// One wire record: the LCP with the previous string of the same bucket and
/// the remaining characters including the terminator.
struct WireRecord {
    std::size_t lcp = 0;
    std::string suffix;

    friend bool operator==(const WireRecord&, const WireRecord&) = default;
};

/// Records of strings [begin, end) of a sorted array. The first record
/// always has lcp 0. Without compression every record carries lcp 0 and the
/// whole string.
std::vector<WireRecord> bucket_records(const StringSet& sorted, const LcpArray& lcps, std::size_t begin,
                                       std::size_t end, bool compress);

/// Wire layout per record: varint lcp, varint suffix length (terminator
/// included), suffix bytes. Records follow each other without framing.
Bytes encode_bucket(const StringSet& sorted, const LcpArray& lcps, std::size_t begin, std::size_t end,
                    bool compress);
void encode_bucket_into(const StringSet& sorted, const LcpArray& lcps, std::size_t begin, std::size_t end,
                        bool compress, Bytes& out);

/// Exact encoded size of the bucket in bytes.
std::size_t encoded_bucket_size(const StringSet& sorted, const LcpArray& lcps, std::size_t begin,
                                std::size_t end, bool compress);

struct DecodedBucket {
    StringSet strings;
    LcpArray lcps;
};

/// Inverse of encode_bucket. The LCP array holds the transmitted values.
/// Throws DecodeError with the offending byte offset.
DecodedBucket decode_bucket(const std::uint8_t* data, std::size_t size);
DecodedBucket decode_bucket(const Bytes& bytes);

/// Decode failure in a message received from `source`.
class ExchangeError : public DecodeError {
public:
    ExchangeError(int source, const DecodeError& e)
        : DecodeError(e.offset(), "from PE " + std::to_string(source) + ": " + e.what()), source_(source) {}
    int source() const { return source_; }

private:
    int source_;
};

struct ReceivedRun {
    StringSet strings;
    LcpArray lcps;
    /// Position of the run's first string in the sender's sorted array.
    std::uint64_t base = 0;
};

/// All-to-all exchange of buckets [bounds[j], bounds[j+1]) to PE j. Every
/// message is the varint bucket start followed by the encoded records.
/// Result[i] is the run received from PE i.
std::vector<ReceivedRun> exchange_buckets(Communicator& comm, const StringSet& sorted, const LcpArray& lcps,
                                          const std::vector<std::size_t>& bounds, bool compress);

}  // namespace dss
