#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dss/comm.hpp"

namespace dss {

/// Raised on truncated or malformed wire data.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::size_t offset, const std::string& what)
        : std::runtime_error("decode error at byte " + std::to_string(offset) + ": " + what),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Number of bytes of the LEB128 encoding of v.
constexpr std::size_t varint_size(std::uint64_t v) {
    std::size_t n = 1;
    while (v >= 0x80) {
        v >>= 7;
        ++n;
    }
    return n;
}

class ByteWriter {
public:
    explicit ByteWriter(Bytes& out) : out_(&out) {}

    void varint(std::uint64_t v) {
        while (v >= 0x80) {
            out_->push_back(static_cast<std::uint8_t>(v | 0x80));
            v >>= 7;
        }
        out_->push_back(static_cast<std::uint8_t>(v));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_->push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        out_->insert(out_->end(), p, p + n);
    }
    /// Length-prefixed string.
    void str(std::string_view s) {
        varint(s.size());
        bytes(s.data(), s.size());
    }

private:
    Bytes* out_;
};

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}
    explicit ByteReader(const Bytes& b) : ByteReader(b.data(), b.size()) {}

    bool done() const { return pos_ == size_; }
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return size_ - pos_; }

    std::uint64_t varint() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        for (int shift = 0;; shift += 7) {
            if (pos_ >= size_) throw DecodeError(start, "truncated varint");
            if (shift > 63) throw DecodeError(start, "varint too long");
            const std::uint8_t b = data_[pos_++];
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
        }
    }
    std::uint64_t u64() {
        if (remaining() < 8) throw DecodeError(pos_, "truncated 64-bit word");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }
    const std::uint8_t* take(std::size_t n) {
        if (remaining() < n) throw DecodeError(pos_, "truncated payload");
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    std::string_view str() {
        const std::size_t n = varint();
        return {reinterpret_cast<const char*>(take(n)), n};
    }

private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

}  // namespace dss
