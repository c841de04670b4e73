#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfspace/families.hpp"
#include "halfspace/grid.hpp"
#include "halfspace/halfspace_ops.hpp"
#include "halfspace/norms.hpp"
#include "halfspace/spectral.hpp"
#include "halfspace/stats.hpp"

namespace halfspace {

/// Exponents obey 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4.
struct BilinearConfig {
    double s = 1.0;
    double p = 2.0, p1 = 2.0, p2 = kInf, p3 = kInf, p4 = 2.0;
    Operator op = Operator::Dirichlet;
    SpaceKind kind = SpaceKind::Sobolev;
    std::optional<double> q;  ///< Besov only
    FamilySpec family;
    std::vector<std::size_t> resolutions{4096, 8192, 16384};
    int dim = 1;
    double half_width = 8.0;

    void validate() const;
};

/// Exponents obey 1/p = 1/p1 + 1/p2 + 1/p3 = 1/p4 + 1/p5 + 1/p6 = 1/p7 + 1/p8 + 1/p9.
struct TrilinearConfig {
    double s = 2.5;
    double p = 2.0;
    std::array<double, 9> exponents{6, 6, 6, 6, 6, 6, 6, 6, 6};
    Operator op = Operator::Dirichlet;
    FamilySpec family{FamilyKind::Counterexample, 1, 1};
    std::vector<std::size_t> resolutions{4096, 8192, 16384, 32768};
    int dim = 1;
    double half_width = 4.0;

    void validate() const;
};

struct RatioValue {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false;
};

enum class Verdict { Bounded, Diverging, Inconclusive };
std::string to_string(Verdict v);

struct RatioEntry {
    std::size_t member = 0;
    std::string label;
    std::size_t resolution = 0;
    RatioValue value;
};

/// Classification of the per-resolution maximum ratio.
struct VerdictDetail {
    Verdict verdict = Verdict::Inconclusive;
    bool monotone_increasing = false;
    double spread = 0.0;  ///< (max - min) / min
    /// Smallest ratio of successive increments of the max ratio; values well below 1 indicate
    /// geometric convergence.
    std::optional<double> min_increment_ratio;
    /// Members attaining the max at the finest resolution whose own sequence passes the divergence test.
    std::size_t diverging_members = 0;
    std::optional<LinearFit> loglog_fit;  ///< log ratio vs log log N
    std::optional<LinearFit> log_fit;     ///< log ratio vs log N
    std::string reason;
};

/// Increment ratio below which growth is treated as geometric convergence.
inline constexpr double kGeometricIncrementRatio = 0.8408964152537145;  // 2^{-1/4}
inline constexpr double kBoundedSpread = 0.10;
/// Relative step a ratio must exceed to count as growth rather than round-off.
inline constexpr double kGrowthNoise = 1e-9;

/// "diverging": the max ratio grows monotonically over >= 3 resolutions with log-log slope above
/// 3 standard errors, and a member attaining the max at the finest resolution does the same
/// without geometric contraction of its increments. "bounded": the max ratio varies by less
/// than 10%, or never increases. Otherwise "inconclusive". Without member series the max ratio
/// stands in for them.
VerdictDetail classify_growth(const std::vector<std::size_t>& resolutions, const std::vector<double>& max_ratio,
                              const std::vector<std::vector<double>>& member_series = {});

struct RatioReport {
    std::string experiment;
    std::vector<std::size_t> resolutions;
    std::vector<RatioEntry> entries;
    std::vector<double> max_ratio;
    VerdictDetail summary;
    std::vector<std::string> excluded;
    DyadicBank bank;  ///< bank of the finest grid
};

RatioValue bilinear_ratio(const HalfField& f, const HalfField& g, const BilinearConfig& cfg,
                          const DyadicBank* bank = nullptr);
RatioReport ratio_sweep(const BilinearConfig& cfg);

RatioValue trilinear_ratio(const HalfField& f, const HalfField& g, const HalfField& h, const TrilinearConfig& cfg);

/// Trilinear ratios next to the first stage of the iterated bilinear path, fg with exponents
/// (p, p, inf, inf, p) at the same s.
struct OddMultiplicityReport {
    RatioReport trilinear;
    RatioReport iterated_bilinear;
};

RatioReport trilinear_sweep(const TrilinearConfig& cfg);
OddMultiplicityReport odd_multiplicity_contrast(const TrilinearConfig& cfg);

/// Bony split: piece I = sum_{k >= l+3} F_k G_l, piece II = the rest, with the mean of each
/// factor treated as its lowest block.
std::pair<SampledField, SampledField> paraproduct_split(const SampledField& F, const SampledField& G,
                                                        const DyadicBank& bank);

struct LeibnizTerms {
    HalfField first;     ///< (A_D f) g
    HalfField gradient;  ///< grad f . grad g
    HalfField third;     ///< f (A_D g)
    HalfField direct;    ///< A_D(fg) = restrict(Lambda^2 (f_odd g_odd))
    double identity_residual = 0.0;  ///< relative L^2 of direct - (first - 2 gradient + third)
    double gradient_trace = 0.0;     ///< largest |grad f . grad g| extrapolated to x_n = 0
    bool trace_flagged = false;
};

LeibnizTerms leibniz_decomposition(const HalfField& f, const HalfField& g);

/// f = g = x_n phi(x_n) (times tangential cutoffs), Dirichlet-tagged.
std::pair<HalfField, HalfField> counterexample_fields(const GridSpec& grid);

struct ProfileFit {
    double exponent = 0.0;
    double constant = 0.0;      ///< exp(intercept)
    double lower_bound = 0.0;   ///< min of |output| x^{1/p} over the window
    double r_squared = 0.0;
};

struct SingularityProfile {
    double p = 2.0;
    double s = 0.5;
    double x_low = 0.0;
    double delta = 0.125;
    ProfileFit spectral;
    ProfileFit oracle;
    double antisymmetry = 0.0;     ///< max |out(-x) + out(x)| / max |out|
    double engine_mismatch = 0.0;  ///< max relative difference in the window
    std::vector<std::array<double, 3>> samples;  ///< (x, spectral, oracle) on the window
};

/// Lambda^{1/p} Phi_odd near the origin by both engines; fit window [8h, delta].
SingularityProfile singularity_profile(double p, const GridSpec& grid, double delta = 0.125);

/// Phi_odd = sign(x) phi(x)^2 on a 1-D grid.
SampledField counterexample_jump(const GridSpec& grid);

/// Limiting block shape G(x) = int_0^inf (K0(x-y) - K0(x+y)) dy with K0 the inverse transform of phi_0.
double limiting_block_direct(double x, double y_max = 160.0);
double limiting_block_sine(double x);
/// Inverse Fourier transform of phi_0(|xi|) in one dimension.
double phi0_kernel(double z);

struct BlockFloorRow {
    int j = 0;
    double weighted = 0.0;  ///< 2^{j/p} ||phi_j Phi_odd||_p
    double sup = 0.0;       ///< ||phi_j Phi_odd||_inf
};

struct PartialSumFit {
    double q = 1.0;
    std::vector<double> sums;
    LinearFit fit;  ///< log S_J vs log J
};

struct BlockFloorReport {
    double p = 2.0;
    std::vector<BlockFloorRow> rows;
    double top_min = 0.0;
    double top_median = 0.0;
    bool plateau = false;
    int plateau_start = 0;
    std::vector<PartialSumFit> partial_sums;
    double limit_argmax = 0.0;
    double limit_value_direct = 0.0;
    double limit_value_sine = 0.0;
    int shape_j = 0;
    double shape_error = 0.0;  ///< sup |block_j(x) - G(2^j x)| / sup |G|
};

BlockFloorReport besov_block_floor(double p, const GridSpec& grid, const DyadicBank& bank,
                                   const std::vector<double>& q_values = {1.0, 2.0});

/// ||Lambda^{1/p} Phi_odd||_{L^p(h/2..delta)}^p for each resolution, fitted against log N.
struct EndpointGrowth {
    std::vector<std::size_t> resolutions;
    std::vector<double> values;
    LinearFit log_fit;
};

EndpointGrowth endpoint_growth(double p, const std::vector<std::size_t>& resolutions, double half_width,
                               double delta = 0.25);

enum class DerivativeMode { CrossCondition, SameCondition };

/// Cross: ||d_n f||_{H^{s-1}_p(other bc)} / ||f||_{H^s_p}. Same: ||d_n f||_{H^s_p(same bc)} / ||f||_{H^{s+1}_p}.
struct DerivativeConfig {
    double s = 1.0;
    double p = 2.0;
    DerivativeMode mode = DerivativeMode::CrossCondition;
    Operator op = Operator::Dirichlet;
    FamilySpec family;
    std::vector<std::size_t> resolutions{4096, 8192, 16384};
    int dim = 1;
    double half_width = 8.0;
};

RatioReport derivative_mapping_sweep(const DerivativeConfig& cfg);

}  // namespace halfspace
