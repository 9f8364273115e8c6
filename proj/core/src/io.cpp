#include "oversparse/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "oversparse/error.hpp"

namespace oversparse {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return std::move(ss).str();
}

void write_file(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("error while writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// Reads whitespace/comment separated header tokens of PNM files.
class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) { pos_ += n; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        unsigned long v = 0;
        const auto res = std::from_chars(bytes_.data() + pos_, bytes_.data() + bytes_.size(), v);
        if (res.ec != std::errc{}) throw ParseError(std::string("expected ") + what, start);
        pos_ = static_cast<std::size_t>(res.ptr - bytes_.data());
        return v;
    }

    // Exactly one whitespace byte separates the header from binary data.
    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw ParseError("expected whitespace after header", pos_);
        ++pos_;
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

Image parse_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes.substr(0, 2) != "P5") throw ParseError("not a binary PGM (missing P5 magic)", 0);
    HeaderReader h(bytes);
    h.advance(2);
    const unsigned long w = h.number("width");
    const unsigned long ht = h.number("height");
    const std::size_t maxval_at = h.pos();
    const unsigned long maxval = h.number("maxval");
    if (w == 0 || ht == 0) throw ParseError("zero image dimension", maxval_at);
    if (maxval == 0 || maxval > 65535) throw ParseError("maxval must lie in 1..65535", maxval_at);
    h.single_whitespace();

    const std::size_t bps = maxval < 256 ? 1 : 2;
    const std::size_t need = static_cast<std::size_t>(w) * ht * bps;
    const std::size_t have = bytes.size() - h.pos();
    if (have < need)
        throw ParseError("truncated PGM payload: " + std::to_string(need) + " bytes expected, " +
                             std::to_string(have) + " present",
                         bytes.size());
    Image img(w, ht, bps == 1 ? ValueScale::EightBit : ValueScale::SixteenBit);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + h.pos());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const unsigned v = bps == 1 ? p[i] : (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1];
        if (v > maxval) throw ParseError("sample exceeds maxval", h.pos() + i * bps);
        img.pixels[i] = static_cast<double>(v);
    }
    return img;
}

Image read_pgm(const fs::path& path) {
    try {
        return parse_pgm(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.offset());
    }
}

std::string encode_pgm(const Image& img) {
    const bool wide = img.scale == ValueScale::SixteenBit;
    const double maxval = wide ? 65535.0 : 255.0;
    const double gain = img.scale == ValueScale::Unit ? 255.0 : 1.0;
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                      std::to_string(static_cast<int>(maxval)) + "\n";
    for (double v : img.pixels.values()) {
        const double x = std::isfinite(v) ? std::clamp(std::round(v * gain), 0.0, maxval) : 0.0;
        const unsigned u = static_cast<unsigned>(x);
        if (wide) out.push_back(static_cast<char>(u >> 8));
        out.push_back(static_cast<char>(u & 0xff));
    }
    return out;
}

void write_pgm(const fs::path& path, const Image& img) { write_file(path, encode_pgm(img)); }

namespace {

constexpr char kRawMagic[8] = {'O', 'V', 'S', 'P', 'R', 'A', 'W', '1'};

template <typename T>
void put_le(std::string& out, T v) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(std::string_view b, std::size_t at) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[at + i])) << (8 * i);
    return static_cast<T>(v);
}

void put_double(std::string& out, double d) { put_le(out, std::bit_cast<std::uint64_t>(d)); }
double get_double(std::string_view b, std::size_t at) { return std::bit_cast<double>(get_le<std::uint64_t>(b, at)); }

}  // namespace

std::string encode_raw(const RawGrid& g) {
    const bool cx = g.is_complex();
    const std::size_t w = cx ? g.complex.width() : g.real.width();
    const std::size_t h = cx ? g.complex.height() : g.real.height();
    std::string out(kRawMagic, sizeof kRawMagic);
    put_le(out, static_cast<std::uint32_t>(w));
    put_le(out, static_cast<std::uint32_t>(h));
    const std::uint64_t flags = (g.flags & 0xff) | (static_cast<std::uint64_t>(g.scale) << 8);
    put_le(out, flags);
    if (cx) {
        for (const auto& v : g.complex.values()) {
            put_double(out, v.real());
            put_double(out, v.imag());
        }
    } else {
        for (double v : g.real.values()) put_double(out, v);
    }
    return out;
}

RawGrid parse_raw(std::string_view b) {
    if (b.size() < 24) throw ParseError("raw grid header needs 24 bytes", b.size());
    if (std::memcmp(b.data(), kRawMagic, sizeof kRawMagic) != 0) throw ParseError("bad raw grid magic", 0);
    const auto w = get_le<std::uint32_t>(b, 8);
    const auto h = get_le<std::uint32_t>(b, 12);
    const auto flags = get_le<std::uint64_t>(b, 16);
    const auto scale = (flags >> 8) & 0xff;
    if (scale > static_cast<std::uint64_t>(ValueScale::SixteenBit)) throw ParseError("unknown value scale", 17);
    RawGrid g;
    g.flags = flags & 0xff;
    g.scale = static_cast<ValueScale>(scale);
    const std::size_t per = g.is_complex() ? 16 : 8;
    const std::size_t need = 24 + static_cast<std::size_t>(w) * h * per;
    if (b.size() < need)
        throw ParseError("truncated raw grid payload: " + std::to_string(need) + " bytes expected", b.size());
    if (g.is_complex()) {
        g.complex = ComplexGrid(w, h);
        for (std::size_t i = 0; i < g.complex.size(); ++i)
            g.complex[i] = cplx(get_double(b, 24 + 16 * i), get_double(b, 32 + 16 * i));
    } else {
        g.real = RealGrid(w, h);
        for (std::size_t i = 0; i < g.real.size(); ++i) g.real[i] = get_double(b, 24 + 8 * i);
    }
    return g;
}

void write_raw(const fs::path& path, const RawGrid& g) { write_file(path, encode_raw(g)); }

RawGrid read_raw(const fs::path& path) {
    try {
        return parse_raw(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.offset());
    }
}

void write_measurements(const fs::path& path, const Measurements& m) {
    RawGrid g;
    g.scale = m.scale;
    if (m.domain == Domain::Frequency) {
        g.flags = RawGrid::kComplex | RawGrid::kFrequency;
        g.complex = m.spectrum;
    } else {
        g.real = m.pixels;
    }
    write_raw(path, g);
}

Image read_image(const fs::path& path) {
    const std::string bytes = read_file(path);
    try {
        if (bytes.size() >= 8 && std::memcmp(bytes.data(), kRawMagic, 8) == 0) {
            RawGrid g = parse_raw(bytes);
            if (g.is_complex()) throw ParseError("raw grid holds complex data, not an image", 16);
            return Image(std::move(g.real), g.scale);
        }
        return parse_pgm(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.offset());
    }
}

std::string encode_mask(const SamplingMask& mask) {
    std::string out = "P1\n# domain=" + std::string(to_string(mask.domain)) + " ratio=" + format_double(mask.ratio) +
                      " seed=" + std::to_string(mask.seed) + " scheme=" + std::string(to_string(mask.scheme));
    if (mask.scheme == MaskScheme::VariableDensity) out += " power=" + format_double(mask.density_power);
    out += "\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n";
    for (std::size_t r = 0; r < mask.height(); ++r) {
        // Plain PBM lines should stay under 70 characters.
        for (std::size_t c = 0; c < mask.width(); ++c) {
            out.push_back(mask.kept(r, c) ? '1' : '0');
            out.push_back((c + 1) % 32 == 0 || c + 1 == mask.width() ? '\n' : ' ');
        }
    }
    return out;
}

SamplingMask parse_mask(std::string_view text) {
    if (text.size() < 2 || text.substr(0, 2) != "P1") throw ParseError("not a plain PBM (missing P1 magic)", 0);
    SamplingMask m;
    // Metadata comment.
    std::size_t meta = text.find("# ");
    const std::size_t header_end = text.find_first_of("0123456789", 2);
    if (meta != std::string_view::npos && meta < header_end) {
        const std::size_t eol = std::min(text.find('\n', meta), text.size());
        std::istringstream fields(std::string(text.substr(meta + 2, eol - meta - 2)));
        std::string kv;
        while (fields >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            try {
                if (key == "domain") m.domain = parse_domain(val);
                else if (key == "scheme") m.scheme = parse_scheme(val);
                else if (key == "ratio") m.ratio = std::stod(val);
                else if (key == "seed") m.seed = std::stoull(val);
                else if (key == "power") m.density_power = std::stod(val);
            } catch (const std::exception&) {
                throw ParseError("bad mask metadata '" + kv + "'", meta);
            }
        }
    }
    HeaderReader h(text);
    h.advance(2);
    const unsigned long w = h.number("width");
    const unsigned long ht = h.number("height");
    if (w == 0 || ht == 0) throw ParseError("zero mask dimension", h.pos());
    m.kept = Grid<std::uint8_t>(w, ht, 0);
    for (std::size_t i = 0; i < m.kept.size(); ++i) {
        h.skip_space_and_comments();
        if (h.pos() >= text.size())
            throw ParseError("truncated PBM: " + std::to_string(m.kept.size()) + " bits expected, " +
                                 std::to_string(i) + " present",
                             h.pos());
        const char c = text[h.pos()];
        if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "' in PBM data", h.pos());
        m.kept[i] = c == '1';
        h.advance(1);
    }
    return m;
}

void write_mask(const fs::path& path, const SamplingMask& mask) { write_file(path, encode_mask(mask)); }

SamplingMask read_mask(const fs::path& path) {
    try {
        return parse_mask(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.offset());
    }
}

}  // namespace oversparse
