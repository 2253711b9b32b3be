#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdawgst/common.hpp"

namespace cdawgst {

/// Little-endian fixed-width encoder into a byte buffer.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
    void bytes(std::string_view s) { buf_.append(s); }

    void vec_u8(std::span<const std::uint8_t> v);
    void vec_u32(std::span<const std::uint32_t> v);
    void vec_u64(std::span<const std::uint64_t> v);
    void vec_i64(std::span<const std::int64_t> v);

    const std::string& data() const { return buf_; }
    std::string take() { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    void put(std::uint64_t v, int width) {
        for (int k = 0; k < width; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
    }
    std::string buf_;
};

/// Bounds-checked decoder; every overrun raises format_error.
class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
    std::string_view bytes(std::size_t len);

    std::vector<std::uint8_t> vec_u8();
    std::vector<std::uint32_t> vec_u32();
    std::vector<std::uint64_t> vec_u64();
    std::vector<std::int64_t> vec_i64();

    std::size_t remaining() const { return data_.size() - pos_; }
    void expect_end(const char* what) const {
        if (remaining() != 0) throw format_error(std::string(what) + ": trailing bytes");
    }

private:
    std::uint64_t get(int width);
    std::size_t length_prefix(std::size_t elem);

    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace cdawgst
