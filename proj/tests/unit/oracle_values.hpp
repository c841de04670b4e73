#pragma once

// Frozen output of tests/oracles/derive.py (mpmath, 30 digits).

namespace oracle {

// c_{1,s} via s 2^{s-1} Gamma((1+s)/2) / (sqrt(pi) Gamma(1 - s/2)).
inline constexpr double kC1s_025 = 0.11041062584210533;
inline constexpr double kC1s_050 = 0.19947114020071634;
inline constexpr double kC1s_075 = 0.27027789764008596;

// Limiting block shape G(x) = (2/pi) int phi_0(xi) sin(x xi) / xi dxi.
inline constexpr double kG_05 = 0.22547863118553548;
inline constexpr double kG_1 = 0.37764672068693449;
inline constexpr double kG_2 = 0.32520351614557453;
inline constexpr double kG_4 = -0.23675668770265397;
inline constexpr double kGArgmax = 1.3811781818754174;
inline constexpr double kGMax = 0.41487164907443201;

// Lambda^s (sign(x) cutoff(x)^2) at x = (m + 1/2) / 2048 on the real line.
struct JumpValue {
    int m;
    double s;
    double value;
};
inline constexpr JumpValue kJump[] = {
    {102, 0.5, 3.6010840715544026}, {102, 0.25, 1.8849002986480355}, {204, 0.5, 2.594667709647965},
    {204, 0.25, 1.6063527278977608}, {511, 0.5, 1.7846002851135561}, {511, 0.25, 1.342219506583267},
};

// Range of sum_j phi_0(2^{-j} lambda)^2 over lambda > 0.
inline constexpr double kOverlapMin = 0.50000001216131522;
inline constexpr double kOverlapMax = 1.0;

/// sum_j (2^j/lambda)^{2s} phi_0(2^{-j} lambda)^2: range over lambda and log-average over an octave.
struct WeightedOverlap {
    double s, min, max, mean;
};
inline constexpr WeightedOverlap kWeightedOverlap[] = {
    {0.5, 0.46749554207966132, 1.0733507211118017, 0.78763524123325965},
    {1.0, 0.43127477616112201, 1.178966878787471, 0.78596309027774916},
    {2.0, 0.35896146915400019, 1.4919407470021328, 0.86357073181241988},
};

}  // namespace oracle
