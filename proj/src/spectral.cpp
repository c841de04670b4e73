#include "halfspace/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "halfspace/errors.hpp"
#include "halfspace/smooth.hpp"

namespace halfspace {

namespace {

/// In-place complex transforms. Plans are created once per (dim, N, sign) and
/// executed through the new-array interface, which is thread-safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, std::size_t N, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(dim, N, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::size_t total = 1;
        for (int d = 0; d < dim; ++d) total *= N;
        auto* scratch = fftw_alloc_complex(total);
        std::array<int, 3> dims{};
        for (int d = 0; d < dim; ++d) dims[d] = static_cast<int>(N);
        fftw_plan plan = fftw_plan_dft(dim, dims.data(), scratch, scratch, sign, FFTW_ESTIMATE);
        fftw_free(scratch);
        if (!plan) throw NumericalError("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

/// FFTW's new-array execution requires the planner's alignment.
struct AlignedBuffer {
    explicit AlignedBuffer(std::size_t n) : size(n), data(fftw_alloc_complex(n)) {
        if (!data) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(data); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;
    std::size_t size;
    fftw_complex* data;
};

void transform(const GridSpec& g, AlignedBuffer& buf, int sign) {
    fftw_execute_dft(PlanCache::instance().get(g.dim, g.points, sign), buf.data, buf.data);
}

long signed_index(std::size_t q, std::size_t N) {
    return q < N / 2 ? static_cast<long>(q) : static_cast<long>(q) - static_cast<long>(N);
}

constexpr double kResidueTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kRoundoffAllowance = 1e3;

}  // namespace

void for_each_frequency(const GridSpec& grid, const std::function<void(std::size_t, const Frequency&)>& fn) {
    const std::size_t N = grid.points;
    const double unit = M_PI / grid.half_width;
    Frequency f;
    f.dim = grid.dim;
    f.nyquist_index = -static_cast<long>(N / 2);
    const std::size_t total = grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const auto idx = unflatten(i, grid.dim, N, N);
        double sq = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            f.index[d] = signed_index(idx[d], N);
            f.xi[d] = unit * static_cast<double>(f.index[d]);
            sq += f.xi[d] * f.xi[d];
        }
        f.modulus = std::sqrt(sq);
        fn(i, f);
    }
}

std::vector<Complex> evaluate_symbol(const GridSpec& grid, const Multiplier& m) {
    std::vector<Complex> values(grid.size());
    for_each_frequency(grid, [&](std::size_t i, const Frequency& f) {
        values[i] = f.is_zero() ? m.zero_mode_value : m.symbol(f);
    });
    const std::size_t N = grid.points;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto idx = unflatten(i, grid.dim, N, N);
        std::size_t mirror = 0;
        for (int d = 0; d < grid.dim; ++d) mirror = mirror * N + (N - idx[d]) % N;
        const Complex a = values[i];
        const Complex b = std::conj(values[mirror]);
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NumericalError("multiplier symbol is not finite on the frequency grid");
        }
        if (std::abs(a - b) > kHermitianTolerance * std::max(1.0, std::abs(a))) {
            throw ConfigError("multiplier symbol lacks Hermitian symmetry; real output undefined");
        }
    }
    return values;
}

Spectrum::Spectrum(const SampledField& f) : grid_(f.grid), coeffs_(f.values.size()) {
    if (f.values.size() != f.grid.size()) throw ConfigError("field length does not match its grid");
    AlignedBuffer buf(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        buf.data[i][0] = f.values[i];
        buf.data[i][1] = 0.0;
    }
    transform(grid_, buf, FFTW_FORWARD);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] = Complex(buf.data[i][0], buf.data[i][1]);
        input_scale_ += std::abs(coeffs_[i]);
    }
    input_scale_ /= static_cast<double>(coeffs_.size());
}

Spectrum Spectrum::filtered(const std::vector<Complex>& symbol_values) const {
    std::vector<Complex> out(coeffs_.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = coeffs_[i] * symbol_values[i];
        peak = std::max(peak, std::abs(symbol_values[i]));
    }
    return Spectrum(grid_, std::move(out), input_scale_, gain_ * peak);
}

Spectrum Spectrum::filtered(const Multiplier& m) const { return filtered(evaluate_symbol(grid_, m)); }

SampledField Spectrum::to_field() const {
    const std::size_t n = coeffs_.size();
    AlignedBuffer buf(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf.data[i][0] = coeffs_[i].real();
        buf.data[i][1] = coeffs_[i].imag();
        scale += std::abs(coeffs_[i]);
    }
    transform(grid_, buf, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(n);
    scale *= inv;
    SampledField out{grid_, std::vector<double>(n)};
    double residue = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = buf.data[i][0] * inv;
        residue = std::max(residue, std::abs(buf.data[i][1] * inv));
    }
    const double floor = kRoundoffAllowance * std::numeric_limits<double>::epsilon() * gain_ * input_scale_;
    if (residue > kResidueTolerance * scale + floor) {
        throw NumericalError("inverse transform left an imaginary residue of " + std::to_string(residue) + " (scale " + std::to_string(scale) + ")");
    }
    check_finite(out.values, "inverse transform");
    return out;
}

double Spectrum::energy(bool include_zero_mode) const {
    double e = 0.0;
    for (std::size_t i = include_zero_mode ? 0 : 1; i < coeffs_.size(); ++i) e += std::norm(coeffs_[i]);
    return e;
}

SampledField apply_multiplier(const SampledField& f, const Multiplier& m) {
    return Spectrum(f).filtered(m).to_field();
}

double mean_value(const SampledField& f) {
    double sum = 0.0;
    for (double v : f.values) sum += v;
    return sum / static_cast<double>(f.values.size());
}

Multiplier fractional_laplacian_symbol(double s) {
    if (s == 0.0) return {[](const Frequency&) { return Complex(1.0); }, Complex(1.0)};
    return {[s](const Frequency& f) { return Complex(std::pow(f.modulus, s)); }, Complex(0.0)};
}

Multiplier bessel_potential_symbol(double s) {
    return {[s](const Frequency& f) { return Complex(std::pow(1.0 + f.modulus * f.modulus, 0.5 * s)); },
            Complex(1.0)};
}

SampledField fractional_laplacian(const SampledField& f, double s) {
    if (s < 0.0) {
        double peak = 0.0;
        for (double v : f.values) peak = std::max(peak, std::abs(v));
        if (std::abs(mean_value(f)) > 1e-12 * peak) {
            throw ConfigError("negative fractional power of a field with nonzero mean");
        }
    }
    return apply_multiplier(f, fractional_laplacian_symbol(s));
}

SampledField bessel_potential(const SampledField& f, double s) {
    return apply_multiplier(f, bessel_potential_symbol(s));
}

namespace {

void check_axis(const GridSpec& g, int axis) {
    if (axis < 0 || axis >= g.dim) throw ConfigError("axis out of range for this grid");
}

}  // namespace

SampledField directional_multiplier(const SampledField& f, double s, int axis) {
    check_axis(f.grid, axis);
    Multiplier m{[s, axis](const Frequency& q) {
                     const double a = std::abs(q.xi[axis]);
                     return Complex(a == 0.0 ? 0.0 : std::pow(a, s));
                 },
                 Complex(0.0)};
    return apply_multiplier(f, m);
}

SampledField riesz_transform(const SampledField& f, int axis) {
    check_axis(f.grid, axis);
    Multiplier m{[axis](const Frequency& q) {
                     if (q.nyquist(axis)) return Complex(0.0);
                     return Complex(0.0, q.xi[axis] / q.modulus);
                 },
                 Complex(0.0)};
    return apply_multiplier(f, m);
}

SampledField partial_derivative(const SampledField& f, int axis) {
    check_axis(f.grid, axis);
    Multiplier m{[axis](const Frequency& q) {
                     if (q.nyquist(axis)) return Complex(0.0);
                     return Complex(0.0, q.xi[axis]);
                 },
                 Complex(0.0)};
    return apply_multiplier(f, m);
}

SampledField semigroup_symbol(const SampledField& f, double t, double s) {
    if (!(t > 0.0) || !(s > 0.0)) throw ConfigError("semigroup requires t > 0 and s > 0");
    Multiplier m{[t, s](const Frequency& q) { return Complex(std::exp(-t * std::pow(q.modulus, s))); },
                 Complex(1.0)};
    return apply_multiplier(f, m);
}

double DyadicBank::phi0(double lambda) const {
    const auto& eta = SmoothStepTable::instance();
    return gain * (eta(lambda) - eta(2.0 * lambda));
}

double DyadicBank::phi(int j, double lambda) const { return phi0(std::ldexp(lambda, -j)); }

double DyadicBank::psi(double lambda) const { return SmoothStepTable::instance()(lambda); }

Multiplier DyadicBank::block(int j) const {
    const DyadicBank bank = *this;
    return {[bank, j](const Frequency& f) { return Complex(bank.phi(j, f.modulus)); }, Complex(0.0)};
}

Multiplier DyadicBank::low_pass() const {
    const DyadicBank bank = *this;
    return {[bank](const Frequency& f) { return Complex(bank.psi(f.modulus)); }, Complex(1.0)};
}

DyadicBank build_bank(const GridSpec& grid, double gain) {
    DyadicBank bank;
    bank.j_min = static_cast<int>(std::floor(std::log2(M_PI / grid.half_width)));
    // Largest block whose support [2^{j-1}, 2^{j+1}] lies below the Nyquist frequency.
    bank.j_max = static_cast<int>(std::floor(std::log2(grid.nyquist()))) - 1;
    bank.gain = gain;
    bank.table_hash = SmoothStepTable::instance().hash();
    if (bank.j_max - bank.j_min < 4) {
        throw ConfigError("dyadic band too narrow (j_max - j_min < 4); increase N");
    }
    return bank;
}

namespace {

void check_block_index(const DyadicBank& bank, int j) {
    if (j < bank.j_min || j > bank.j_max) throw ConfigError("dyadic index outside the resolved range");
}

}  // namespace

SampledField dyadic_block(const SampledField& f, int j, const DyadicBank& bank) {
    check_block_index(bank, j);
    return apply_multiplier(f, bank.block(j));
}

std::vector<SampledField> dyadic_blocks(const SampledField& f, const DyadicBank& bank) {
    const Spectrum spectrum(f);
    std::vector<SampledField> out;
    out.reserve(bank.j_max - bank.j_min + 1);
    for (int j = bank.j_min; j <= bank.j_max; ++j) out.push_back(spectrum.filtered(bank.block(j)).to_field());
    return out;
}

double partition_residual(const DyadicBank& bank, const GridSpec& grid, bool inhomogeneous) {
    const double lo = inhomogeneous ? 0.0 : std::ldexp(1.0, bank.j_min);
    const double hi = inhomogeneous ? grid.nyquist() * std::sqrt(grid.dim) : std::ldexp(1.0, bank.j_max);
    double worst = 0.0;
    for_each_frequency(grid, [&](std::size_t, const Frequency& f) {
        const double lambda = f.modulus;
        if (lambda < lo || lambda > hi) return;
        double sum = 0.0;
        if (inhomogeneous) {
            sum = bank.psi(lambda);
            for (int j = 1; j <= bank.j_max + 2; ++j) sum += bank.phi(j, lambda);
        } else {
            for (int j = bank.j_min - 2; j <= bank.j_max + 2; ++j) sum += bank.phi(j, lambda);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    });
    return worst;
}

double band_leak(const Spectrum& spectrum, const DyadicBank& bank, bool inhomogeneous) {
    const auto& c = spectrum.coefficients();
    double total = 0.0;
    double missed = 0.0;
    for_each_frequency(spectrum.grid(), [&](std::size_t i, const Frequency& f) {
        const double e = std::norm(c[i]);
        if (f.is_zero()) {
            if (inhomogeneous) total += e;
            return;
        }
        double covered = inhomogeneous ? bank.psi(f.modulus) : 0.0;
        for (int j = inhomogeneous ? 1 : bank.j_min; j <= bank.j_max; ++j) covered += bank.phi(j, f.modulus);
        total += e;
        missed += e * (1.0 - covered) * (1.0 - covered);
    });
    return total > 0.0 ? missed / total : 0.0;
}

}  // namespace halfspace
