#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cdawgst/cst.hpp"

namespace cdawgst {

inline constexpr std::string_view kIndexMagic = "CDCST";
inline constexpr std::uint32_t kIndexVersion = 1;

/// Header fields readable without loading the sections.
struct IndexHeader {
    std::uint32_t version = 0;
    pos_t n = 0;
    symbol_t sigma = 0;
    Mode mode = Mode::full;
};

/// Layout: magic, version (u32), n (u64), sigma (u32), mode (u8), section
/// count (u32), then per section an 8-byte tag, offset and length (u64,
/// offsets from the file start), the section bodies, and a zlib crc32 (u32)
/// of everything before it. All integers little-endian.
std::string save_index(const Cst& cst);
/// Throws format_error on a bad magic, version, checksum or section.
Cst load_index(std::string_view bytes, LaKind la = LaKind::binary_lifting);
IndexHeader read_header(std::string_view bytes);

void write_index_file(const Cst& cst, const std::string& path);
/// Throws std::runtime_error when the file cannot be read.
Cst read_index_file(const std::string& path, LaKind la = LaKind::binary_lifting);
std::string read_file(const std::string& path);

}  // namespace cdawgst
