#include "cdawgst/index_file.hpp"

#include <zlib.h>

#include <fstream>
#include <map>
#include <sstream>

#include "cdawgst/serialize.hpp"

namespace cdawgst {

namespace {

constexpr std::size_t kTagLen = 8;

std::string tag(std::string_view name) {
    std::string t(name);
    t.resize(kTagLen, '\0');
    return t;
}

std::uint32_t crc_of(std::string_view data) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // crc32 takes a uInt length; feed large inputs in pieces.
    while (!data.empty()) {
        const std::size_t k = std::min<std::size_t>(data.size(), 1u << 30);
        crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(k));
        data.remove_prefix(k);
    }
    return static_cast<std::uint32_t>(crc);
}

std::size_t header_size(std::size_t sections) {
    return kIndexMagic.size() + 4 + 8 + 4 + 1 + 4 + sections * (kTagLen + 16);
}

}  // namespace

std::string save_index(const Cst& cst) {
    std::vector<std::pair<std::string, std::string>> sections;
    auto add = [&](std::string_view name, auto&& fill) {
        ByteWriter w;
        fill(w);
        sections.emplace_back(tag(name), w.take());
    };
    add("ALPHABET", [&](ByteWriter& w) { w.vec_u8(cst.alphabet()); });
    add("CDAWG", [&](ByteWriter& w) { cst.cdawg().save(w); });
    if (cst.mode() == Mode::full) add("RLBWT", [&](ByteWriter& w) { cst.cdawg().save_rlbwt(w); });
    add("REVGRAM", [&](ByteWriter& w) { cst.grammar().save(w); });
    add("HPD-FWD", [&](ByteWriter& w) { cst.forward_hpd().save(w); });
    add("HPD-REV", [&](ByteWriter& w) { cst.reverse_hpd().save(w); });

    ByteWriter out;
    out.bytes(kIndexMagic);
    out.u32(kIndexVersion);
    out.u64(cst.size());
    out.u32(cst.sigma());
    out.u8(static_cast<std::uint8_t>(cst.mode()));
    out.u32(static_cast<std::uint32_t>(sections.size()));
    std::uint64_t offset = header_size(sections.size());
    for (const auto& [name, body] : sections) {
        out.bytes(name);
        out.u64(offset);
        out.u64(body.size());
        offset += body.size();
    }
    for (const auto& s : sections) out.bytes(s.second);
    out.u32(crc_of(out.data()));
    return out.take();
}

IndexHeader read_header(std::string_view bytes) {
    ByteReader r(bytes);
    if (r.bytes(kIndexMagic.size()) != kIndexMagic) throw format_error("not an index file (bad magic)");
    IndexHeader h;
    h.version = r.u32();
    if (h.version != kIndexVersion)
        throw format_error("unsupported index version " + std::to_string(h.version) + " (expected " +
                           std::to_string(kIndexVersion) + ")");
    h.n = r.u64();
    h.sigma = r.u32();
    const std::uint8_t mode = r.u8();
    if (mode > 1) throw format_error("bad mode byte");
    h.mode = static_cast<Mode>(mode);
    return h;
}

Cst load_index(std::string_view bytes, LaKind la) {
    if (bytes.size() < header_size(0) + 4) throw format_error("index file truncated");
    const IndexHeader h = read_header(bytes);
    const std::string_view body = bytes.substr(0, bytes.size() - 4);
    ByteReader trailer(bytes.substr(bytes.size() - 4));
    if (trailer.u32() != crc_of(body)) throw format_error("checksum mismatch");

    ByteReader r(body);
    r.bytes(header_size(0) - 4);
    const std::uint32_t count = r.u32();
    if (count > 16) throw format_error("bad section count");
    std::map<std::string, std::string_view> sections;
    for (std::uint32_t k = 0; k < count; ++k) {
        std::string name(r.bytes(kTagLen));
        const std::uint64_t offset = r.u64(), length = r.u64();
        if (offset > body.size() || length > body.size() - offset) throw format_error("section out of bounds");
        if (!sections.emplace(name, body.substr(offset, length)).second) throw format_error("duplicate section");
    }
    auto section = [&](std::string_view name) {
        auto it = sections.find(tag(name));
        if (it == sections.end()) throw format_error("missing section " + std::string(name));
        return ByteReader(it->second);
    };

    auto ar = section("ALPHABET");
    auto alphabet = ar.vec_u8();
    ar.expect_end("alphabet");
    auto gr = section("CDAWG");
    Cdawg g = Cdawg::load(gr);
    gr.expect_end("cdawg");
    if (g.mode() != h.mode || g.text_size() != h.n || g.sigma() != h.sigma)
        throw format_error("header does not match the cdawg section");
    if (h.mode == Mode::full) {
        auto br = section("RLBWT");
        g.attach_rlbwt(Rlbwt::load(br));
        br.expect_end("rlbwt");
    }
    auto rr = section("REVGRAM");
    RevGrammar rg = RevGrammar::load(rr);
    rr.expect_end("revgram");
    auto fr = section("HPD-FWD");
    HpdIndex fwd = HpdIndex::load(fr, la);
    fr.expect_end("hpd-fwd");
    auto vr = section("HPD-REV");
    HpdIndex rev = HpdIndex::load(vr, la);
    vr.expect_end("hpd-rev");
    return Cst(std::move(alphabet), std::move(g), std::move(rg), std::move(fwd), std::move(rev));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("cannot read " + path);
    return ss.str();
}

void write_index_file(const Cst& cst, const std::string& path) {
    const std::string bytes = save_index(cst);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + path);
}

Cst read_index_file(const std::string& path, LaKind la) { return load_index(read_file(path), la); }

}  // namespace cdawgst
