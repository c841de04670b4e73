#include "halfspace/extension.hpp"

#include "halfspace/errors.hpp"

namespace halfspace {

namespace {

void require_staggered(const GridSpec& g, const char* op) {
    if (!g.staggered) throw ConfigError(std::string(op) + " requires a staggered grid");
}

}  // namespace

Parity parity_of(Boundary bc) {
    if (bc == Boundary::None) throw ConfigError("untagged field has no reflection parity");
    return bc == Boundary::Dirichlet ? Parity::Odd : Parity::Even;
}

SampledField extend(const HalfField& hf, Parity parity) {
    require_staggered(hf.grid, "extension");
    if (hf.bc != Boundary::None && parity != parity_of(hf.bc)) {
        throw ConfigError(to_string(hf.bc) + "-tagged field extended with the wrong parity");
    }
    if (hf.values.size() != hf.grid.half_size()) throw ConfigError("half field has the wrong length");
    const std::size_t N = hf.grid.points;
    const std::size_t half = N / 2;
    const double sign = parity == Parity::Odd ? -1.0 : 1.0;
    SampledField out{hf.grid, std::vector<double>(hf.grid.size())};
    const std::size_t rows = hf.grid.size() / N;
    for (std::size_t r = 0; r < rows; ++r) {
        const double* src = hf.values.data() + r * half;
        double* dst = out.values.data() + r * N;
        for (std::size_t k = 0; k < half; ++k) {
            dst[half + k] = src[k];
            dst[half - 1 - k] = sign * src[k];
        }
    }
    return out;
}

SampledField odd_extend(const HalfField& hf) { return extend(hf, Parity::Odd); }

SampledField even_extend(const HalfField& hf) { return extend(hf, Parity::Even); }

HalfField restrict_half(const SampledField& f, Boundary bc) {
    require_staggered(f.grid, "restriction");
    const std::size_t N = f.grid.points;
    const std::size_t half = N / 2;
    HalfField out{f.grid, std::vector<double>(f.grid.half_size()), bc};
    const std::size_t rows = f.grid.size() / N;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < half; ++k) out.values[r * half + k] = f.values[r * N + half + k];
    }
    return out;
}

SampledField apply_sign(const SampledField& f) {
    require_staggered(f.grid, "sign multiplication");
    SampledField out = f;
    const std::size_t N = f.grid.points;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (i % N < N / 2) out.values[i] = -out.values[i];
    }
    return out;
}

}  // namespace halfspace
