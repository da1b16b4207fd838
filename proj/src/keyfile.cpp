#include "disguise/keyfile.hpp"

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "disguise/errors.hpp"

namespace disguise {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[off + static_cast<std::size_t>(i)];
    return v;
}

double get_f64(std::span<const std::uint8_t> b, std::size_t off) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[off + static_cast<std::size_t>(i)];
    return std::bit_cast<double>(bits);
}

Activation decode_activation(std::uint8_t code, const char* which) {
    if (code > 2) throw KeyFormatError(std::string("keyfile: invalid ") + which +
                                       " activation code " + std::to_string(code));
    return static_cast<Activation>(code);
}

Matrix read_matrix(std::span<const std::uint8_t> b, std::size_t& off, std::size_t rows,
                   std::size_t cols) {
    std::vector<double> values(rows * cols);
    for (double& v : values) {
        v = get_f64(b, off);
        off += 8;
        if (!std::isfinite(v)) throw KeyCorruptError("keyfile: non-finite parameter value");
    }
    return Matrix(rows, cols, std::move(values));
}

}  // namespace

std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t b : bytes) crc = table[(crc ^ b) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

std::vector<std::uint8_t> save_key(const MlpParams& p) {
    if (p.w1.rows() == 0 || p.w2.rows() == 0)
        throw std::invalid_argument("save_key: empty parameters");
    if (p.b1.rows() != p.hidden_dim() || p.b1.cols() != 1 || p.w2.cols() != p.hidden_dim() ||
        p.b2.rows() != p.out_dim() || p.b2.cols() != 1)
        throw std::invalid_argument("save_key: inconsistent parameter shapes");
    if (!all_finite(p.w1) || !all_finite(p.b1) || !all_finite(p.w2) || !all_finite(p.b2))
        throw std::invalid_argument("save_key: parameters must be finite");
    if (p.in_dim() > 0xFFFFFFFFu || p.hidden_dim() > 0xFFFFFFFFu || p.out_dim() > 0xFFFFFFFFu)
        throw std::invalid_argument("save_key: dimensions exceed keyfile limits");

    std::vector<std::uint8_t> out;
    out.reserve(kKeyHeaderSize + 8 * p.param_count() + 4);
    out.insert(out.end(), kKeyMagic.begin(), kKeyMagic.end());
    put_u16(out, kKeyVersion);
    put_u32(out, static_cast<std::uint32_t>(p.in_dim()));
    put_u32(out, static_cast<std::uint32_t>(p.hidden_dim()));
    put_u32(out, static_cast<std::uint32_t>(p.out_dim()));
    out.push_back(static_cast<std::uint8_t>(p.hidden_act));
    out.push_back(static_cast<std::uint8_t>(p.out_act));
    for (const Matrix* m : {&p.w1, &p.b1, &p.w2, &p.b2})
        for (double v : m->data()) put_f64(out, v);
    put_u32(out, crc32_ieee(out));
    return out;
}

MlpParams load_key(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kKeyMagic.size()) throw KeyCorruptError("keyfile: truncated before magic");
    if (!std::equal(kKeyMagic.begin(), kKeyMagic.end(), bytes.begin()))
        throw KeyFormatError("keyfile: bad magic, not a keyfile");
    if (bytes.size() < kKeyHeaderSize + 4) throw KeyCorruptError("keyfile: truncated header");

    const std::uint16_t version = get_u16(bytes, 4);
    if (version != kKeyVersion)
        throw KeyVersionError("keyfile: unsupported version " + std::to_string(version));

    const std::size_t in_dim = get_u32(bytes, 6);
    const std::size_t hidden_dim = get_u32(bytes, 10);
    const std::size_t out_dim = get_u32(bytes, 14);
    if (in_dim == 0 || hidden_dim == 0 || out_dim == 0)
        throw KeyFormatError("keyfile: zero dimension");
    const Activation hidden_act = decode_activation(bytes[18], "hidden");
    const Activation out_act = decode_activation(bytes[19], "output");

    const std::size_t n_params =
        hidden_dim * in_dim + hidden_dim + out_dim * hidden_dim + out_dim;
    const std::size_t expected = kKeyHeaderSize + 8 * n_params + 4;
    if (bytes.size() != expected)
        throw KeyCorruptError("keyfile: size " + std::to_string(bytes.size()) +
                              " does not match declared dimensions (expected " +
                              std::to_string(expected) + ")");

    const std::uint32_t stored = get_u32(bytes, bytes.size() - 4);
    const std::uint32_t actual = crc32_ieee(bytes.first(bytes.size() - 4));
    if (stored != actual) throw KeyCorruptError("keyfile: checksum mismatch");

    std::size_t off = kKeyHeaderSize;
    MlpParams p;
    p.w1 = read_matrix(bytes, off, hidden_dim, in_dim);
    p.b1 = read_matrix(bytes, off, hidden_dim, 1);
    p.w2 = read_matrix(bytes, off, out_dim, hidden_dim);
    p.b2 = read_matrix(bytes, off, out_dim, 1);
    p.hidden_act = hidden_act;
    p.out_act = out_act;
    return p;
}

MlpParams load_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path);
    return load_key(bytes);
}

void save_key_file(const MlpParams& params, const std::string& path) {
    const std::vector<std::uint8_t> bytes = save_key(params);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw IoError("write failed on " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

}  // namespace disguise
