#pragma once

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/function.hpp"
#include "cayleyiso/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cayleyiso {

struct ReturnProbability {
    int steps = 0;           // 2k
    bool exact = false;      // integer-count mode (denominator |S|^{2k})
    double probability = 0;  // mu^{*2k}(e)
    std::string count;       // exact numerator when in integer mode
    double bound = 0;        // probability^{1/2k}, a lower bound for rho
    bool conserved = false;  // sum of counts == |S|^{2k}, checked exactly
};

struct SpectralEstimate {
    std::vector<ReturnProbability> returns;
    std::vector<std::pair<int, double>> compression;  // (truncation radius, norm)
    std::optional<double> analytic;                   // exact rho when documented
    std::string analytic_note;
};

/// Return probabilities of the S-random walk by iterated convolution.
/// Integer counts (exact conservation check) while 2k <= exact_cap and the
/// support stays within support_cap entries; floating point beyond.
std::vector<ReturnProbability> return_probability_bounds(const Group& g,
                                                         const SymmetricSet& s,
                                                         int k_max,
                                                         size_t support_cap = 400000,
                                                         int exact_cap = 24);

/// Documented spectral radii: 1 for finite groups (any S) and for the free
/// abelian / lamplighter backends with their standard sets;
/// sqrt(2m-1)/m for the free group of rank m with the standard set.
std::optional<double> analytic_rho(const Group& g, const SymmetricSet& s,
                                   std::string* note = nullptr);

/// Largest singular value of the convolution operator by f compressed to
/// coordinates in ball(radius): a lower bound for the l2 operator norm,
/// nondecreasing in radius, exact when the ball saturates a finite group.
/// Power iteration on the symmetrized operator, all-ones start, 1e-10
/// relative stop, 1e4 iteration cap.
double operator_norm_lb(const Group& g, const SymmetricSet& s, const FunctionD& f,
                        int radius, bool* exact = nullptr);

struct MoharReport {
    double set_size = 0;
    double h = 0;
    double rho = 0;
    double left = 0;       // |S|(1 - rho)
    double right = 0;      // |S| sqrt(1 - rho^2)
    double left_slack = 0; // h - left
    double right_slack = 0;// right - h
    bool left_holds = false;
    bool right_holds = false;
    double e = 0;          // 1 - h/|S|
    bool e_le_rho = false;      // e <= rho
    bool e_ge_half_rho2 = false;// e >= rho^2/2
};

/// Verifies |S|(1-rho) <= h <= |S| sqrt(1-rho^2) on instances where both h
/// and rho are known exactly (finite groups, free abelian standard, free
/// standard). Refuses anything else: with one-sided bounds the inequality
/// directions would be unsound.
MoharReport mohar_check(const Group& g, const SymmetricSet& s);

struct RdRatioRow {
    int d = 0;
    size_t ball_size = 0;
    double indicator_ratio = 0;   // ||1_ball(d)|| / ||1_ball(d)||_2, lower bound
    double max_random_ratio = 0;  // over seeded nonnegative a on ball(d)
    double sanity_cap = 0;        // sqrt(support size)
    bool sanity_ok = false;
};

/// Operator-norm-to-l2-norm ratio scan over ball radii; norms are compressed
/// lower bounds (saturating truncation on finite groups, 2d+2 otherwise).
std::vector<RdRatioRow> rd_ratio_scan(const Group& g, const SymmetricSet& s,
                                      int d_max, int trials, uint64_t seed);

/// Kesten's lower bound sqrt(|S|-1)/|S|.
double kesten_lower_bound(size_t set_size);

} // namespace cayleyiso
