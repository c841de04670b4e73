#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "halfspace/grid.hpp"

namespace halfspace {

using Complex = std::complex<double>;

/// One point of the discrete frequency grid: xi = pi*m/L per axis, m in FFT order.
struct Frequency {
    int dim = 1;
    std::array<long, 3> index{};
    std::array<double, 3> xi{};
    double modulus = 0.0;
    long nyquist_index = 0;  ///< -N/2

    bool is_zero() const { return modulus == 0.0; }
    bool nyquist(int axis) const { return index[axis] == nyquist_index; }
};

using Symbol = std::function<Complex(const Frequency&)>;

/// Fourier multiplier. The value at xi = 0 is always supplied explicitly.
struct Multiplier {
    Symbol symbol;
    Complex zero_mode_value{0.0, 0.0};
};

/// Forward transform of a real field on the full grid.
class Spectrum {
public:
    explicit Spectrum(const SampledField& f);

    const GridSpec& grid() const { return grid_; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    /// Coefficients multiplied by a Hermitian symbol.
    Spectrum filtered(const Multiplier& m) const;
    Spectrum filtered(const std::vector<Complex>& symbol_values) const;
    /// Inverse transform. The imaginary residue must stay below 1e-10 of the output scale plus the
    /// round-off floor of the input amplified by the largest symbol modulus applied so far.
    SampledField to_field() const;
    /// Sum of |c|^2 over all modes, or over the nonzero modes only.
    double energy(bool include_zero_mode = true) const;

private:
    Spectrum(GridSpec grid, std::vector<Complex> coeffs, double input_scale, double gain)
        : grid_(grid), coeffs_(std::move(coeffs)), input_scale_(input_scale), gain_(gain) {}
    GridSpec grid_;
    std::vector<Complex> coeffs_;
    double input_scale_ = 0.0;  ///< l1 norm of the original coefficients / N^n
    double gain_ = 1.0;         ///< product of max |symbol| over applied filters
};

/// Calls fn(linear_index, frequency) for every grid frequency.
void for_each_frequency(const GridSpec& grid, const std::function<void(std::size_t, const Frequency&)>& fn);

/// Evaluates a multiplier on the grid and rejects symbols without Hermitian symmetry.
std::vector<Complex> evaluate_symbol(const GridSpec& grid, const Multiplier& m);

SampledField apply_multiplier(const SampledField& f, const Multiplier& m);

/// |xi|^s with 0 at xi = 0; s = 0 is the identity.
Multiplier fractional_laplacian_symbol(double s);
/// (1 + |xi|^2)^{s/2}.
Multiplier bessel_potential_symbol(double s);

SampledField fractional_laplacian(const SampledField& f, double s);
SampledField bessel_potential(const SampledField& f, double s);
/// |xi_axis|^s, zero where xi_axis = 0.
SampledField directional_multiplier(const SampledField& f, double s, int axis);
/// R_k = d_k Lambda^{-1}, symbol i xi_k/|xi| with the Nyquist mode of axis k removed.
/// In one dimension R cos(kx) = -sin(kx) and R sin(kx) = cos(kx).
SampledField riesz_transform(const SampledField& f, int axis);
/// Spectral derivative i xi_axis; the Nyquist mode of that axis is removed.
SampledField partial_derivative(const SampledField& f, int axis);
/// e^{-t|xi|^s}.
SampledField semigroup_symbol(const SampledField& f, double t, double s);

double mean_value(const SampledField& f);

/// Littlewood-Paley bank phi_j(lambda) = phi_0(2^{-j} lambda) with phi_0(l) = eta(l) - eta(2l), psi = eta.
struct DyadicBank {
    int j_min = 0;
    int j_max = 0;
    double gain = 1.0;  ///< scales phi_0; 1 except under fault injection
    std::string table_hash;

    double phi0(double lambda) const;
    double phi(int j, double lambda) const;
    double psi(double lambda) const;
    Multiplier block(int j) const;
    Multiplier low_pass() const;
};

DyadicBank build_bank(const GridSpec& grid, double gain = 1.0);

SampledField dyadic_block(const SampledField& f, int j, const DyadicBank& bank);
/// All blocks j_min..j_max sharing one forward transform.
std::vector<SampledField> dyadic_blocks(const SampledField& f, const DyadicBank& bank);

/// Largest |sum_j phi_j - 1| over grid |xi| in [2^{j_min}, 2^{j_max}]; with `inhomogeneous`,
/// the residual of psi + sum_{j>=1} phi_j over [0, Nyquist].
double partition_residual(const DyadicBank& bank, const GridSpec& grid, bool inhomogeneous);

/// Fraction of nonzero-mode energy outside the homogeneous band (or outside psi + j >= 1 blocks).
double band_leak(const Spectrum& spectrum, const DyadicBank& bank, bool inhomogeneous);

}  // namespace halfspace
