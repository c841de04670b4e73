#include "halfspace/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "halfspace/errors.hpp"

namespace halfspace {

namespace {

constexpr std::array<char, 8> kMagic{'H', 'S', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw ConfigError("field file truncated");
    }
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

void write_common(std::ostream& out, const GridSpec& g, std::uint8_t kind, Boundary bc,
                  const std::vector<double>& values) {
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim));
    put<double>(out, g.half_width);
    put<std::uint64_t>(out, g.points);
    put<std::uint8_t>(out, g.staggered ? 1 : 0);
    put<std::uint8_t>(out, kind);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(bc));
    put<std::uint8_t>(out, 0);
    put<std::uint64_t>(out, values.size());
    for (double v : values) put<double>(out, v);
    if (!out) throw ConfigError("failed to write field");
}

template <class Field>
void csv_rows(std::ostream& out, const Field& f, std::size_t last, std::size_t offset) {
    const auto& g = f.grid;
    for (int d = 0; d < g.dim; ++d) out << (d ? "," : "") << "i" << d;
    for (int d = 0; d < g.dim; ++d) out << ",x" << d;
    out << ",value\n";
    char buf[64];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const auto idx = unflatten(i, g.dim, g.points, last);
        for (int d = 0; d < g.dim; ++d) {
            const std::size_t k = idx[d] + (d == g.dim - 1 ? offset : 0);
            out << (d ? "," : "") << k;
        }
        for (int d = 0; d < g.dim; ++d) {
            const std::size_t k = idx[d] + (d == g.dim - 1 ? offset : 0);
            std::snprintf(buf, sizeof buf, ",%.17g", g.coordinate(k, d));
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g\n", f.values[i]);
        out << buf;
    }
}

}  // namespace

void write_field(std::ostream& out, const SampledField& f) {
    write_common(out, f.grid, 0, Boundary::None, f.values);
}

void write_field(std::ostream& out, const HalfField& f) {
    write_common(out, f.grid, 1, f.bc, f.values);
}

AnyField read_field(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw ConfigError("not a field file (bad magic)");
    }
    const auto n = get<std::uint32_t>(in);
    const auto L = get<double>(in);
    const auto N = get<std::uint64_t>(in);
    const auto stagger = get<std::uint8_t>(in);
    const auto kind = get<std::uint8_t>(in);
    const auto bc = get<std::uint8_t>(in);
    get<std::uint8_t>(in);
    const auto count = get<std::uint64_t>(in);
    if (bc > 2 || kind > 1) throw ConfigError("field file has an invalid kind or boundary tag");

    const GridSpec grid = make_grid(static_cast<int>(n), L, N, stagger != 0);
    const std::size_t expected = kind == 0 ? grid.size() : grid.half_size();
    if (count != expected) throw ConfigError("field file length does not match its grid");
    if (kind == 1 && !grid.staggered) throw ConfigError("half field stored on a non-staggered grid");

    std::vector<double> values(count);
    for (auto& v : values) v = get<double>(in);
    check_finite(values, "field file");
    if (kind == 0) return SampledField{grid, std::move(values)};
    return HalfField{grid, std::move(values), static_cast<Boundary>(bc)};
}

void save_field(const std::string& path, const AnyField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    std::visit([&](const auto& field) { write_field(out, field); }, f);
}

AnyField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open field file '" + path + "'");
    return read_field(in);
}

void write_csv(std::ostream& out, const SampledField& f) { csv_rows(out, f, f.grid.points, 0); }

void write_csv(std::ostream& out, const HalfField& f) {
    csv_rows(out, f, f.grid.points / 2, f.grid.points / 2);
}

}  // namespace halfspace
