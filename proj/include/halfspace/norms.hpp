#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfspace/grid.hpp"
#include "halfspace/halfspace_ops.hpp"
#include "halfspace/spectral.hpp"

namespace halfspace {

enum class SpaceKind { Sobolev, Besov };

/// Identifies a norm: Sobolev H^s_p or Besov B^s_{p,q}, homogeneous or not, for A_D or A_N.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::Sobolev;
    bool homogeneous = true;
    double s = 0.0;
    double p = 2.0;
    std::optional<double> q;
    Operator op = Operator::Dirichlet;

    static SpaceSpec sobolev(double s, double p, Operator op, bool homogeneous = true);
    static SpaceSpec besov(double s, double p, double q, Operator op, bool homogeneous = true);

    /// Throws ConfigError on inconsistent fields.
    void validate() const;
    /// Non-fatal remarks, e.g. Sobolev exponents outside (1, inf).
    std::vector<std::string> warnings() const;
    std::string describe() const;
};

struct BlockEntry {
    int j = 0;
    double weighted = 0.0;  ///< 2^{sj} ||phi_j(sqrt A) f||_p
};

struct NormReport {
    SpaceSpec spec;
    double value = 0.0;
    std::vector<BlockEntry> blocks;
    std::optional<double> low_pass;  ///< ||psi(sqrt A) f||_p for inhomogeneous Besov
    double leak = 0.0;
    std::vector<std::string> warnings;
};

/// l^q norm of a sequence; q = kInf gives the maximum.
double lq_norm(const std::vector<double>& terms, double q);

double sobolev_norm(const HalfField& hf, const SpaceSpec& spec);
double besov_norm(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank);
NormReport evaluate_norm(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank);

/// Log-uniform nodes for the semigroup characterization.
struct TimeGrid {
    double t_min = 0.0;
    double t_max = 0.0;
    int per_decade = 16;
};

/// 2^{-2 j_max} .. 2^{-2 j_min}.
TimeGrid default_time_grid(const DyadicBank& bank);
int default_semigroup_order(double s);

/// ( integral (t^{-s/2} ||(tA)^M e^{-tA} f||_p)^q dt/t )^{1/q}, trapezoid in log t.
/// The inhomogeneous variant adds ||psi(A) f||_p and truncates the integral at t = 1.
double besov_norm_semigroup(const HalfField& hf, const SpaceSpec& spec, int M, const TimeGrid& grid);

struct EquivalenceReport {
    double half_value = 0.0;  ///< norm for the half-space operator
    double full_value = 0.0;  ///< full-space norm of the parity extension
    double ratio = 0.0;
    bool degenerate = false;
};

EquivalenceReport extension_norm_equivalence(const HalfField& hf, const SpaceSpec& spec, const DyadicBank& bank);

/// Spectral leakage above this energy fraction makes Besov norms untrustworthy.
inline constexpr double kLeakTolerance = 1e-8;

}  // namespace halfspace
