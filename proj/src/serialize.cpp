#include "cdawgst/serialize.hpp"

namespace cdawgst {

void ByteWriter::vec_u8(std::span<const std::uint8_t> v) {
    u64(v.size());
    for (auto x : v) u8(x);
}

void ByteWriter::vec_u32(std::span<const std::uint32_t> v) {
    u64(v.size());
    for (auto x : v) u32(x);
}

void ByteWriter::vec_u64(std::span<const std::uint64_t> v) {
    u64(v.size());
    for (auto x : v) u64(x);
}

void ByteWriter::vec_i64(std::span<const std::int64_t> v) {
    u64(v.size());
    for (auto x : v) i64(x);
}

std::uint64_t ByteReader::get(int width) {
    if (remaining() < static_cast<std::size_t>(width)) throw format_error("unexpected end of data");
    std::uint64_t v = 0;
    for (int k = 0; k < width; ++k)
        v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data_[pos_ + k])) << (8 * k);
    pos_ += width;
    return v;
}

std::string_view ByteReader::bytes(std::size_t len) {
    if (remaining() < len) throw format_error("unexpected end of data");
    auto s = data_.substr(pos_, len);
    pos_ += len;
    return s;
}

std::size_t ByteReader::length_prefix(std::size_t elem) {
    std::uint64_t len = u64();
    if (len > remaining() / elem) throw format_error("vector length exceeds data");
    return static_cast<std::size_t>(len);
}

std::vector<std::uint8_t> ByteReader::vec_u8() {
    std::vector<std::uint8_t> v(length_prefix(1));
    for (auto& x : v) x = u8();
    return v;
}

std::vector<std::uint32_t> ByteReader::vec_u32() {
    std::vector<std::uint32_t> v(length_prefix(4));
    for (auto& x : v) x = u32();
    return v;
}

std::vector<std::uint64_t> ByteReader::vec_u64() {
    std::vector<std::uint64_t> v(length_prefix(8));
    for (auto& x : v) x = u64();
    return v;
}

std::vector<std::int64_t> ByteReader::vec_i64() {
    std::vector<std::int64_t> v(length_prefix(8));
    for (auto& x : v) x = i64();
    return v;
}

}  // namespace cdawgst
