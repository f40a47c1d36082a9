#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsched/items.hpp"
#include "bsched/linalg.hpp"
#include "bsched/policy.hpp"

namespace bsched {

/// Spectral summary of an influence matrix validated to have top eigenvalue 1.
struct SpectralData {
    double top_eigenvalue = 0.0;
    std::vector<double> right_vec; ///< p1, unit norm, dominant entry positive
    std::vector<double> left_vec; ///< q1, scaled so q1'p1 = 1
    double second_magnitude = 0.0; ///< |lambda_2|
    double gap = 0.0; ///< epsilon = 1 - |lambda_2|; 1 when n = 1
    std::vector<double> social_vector; ///< c = (1'p1) q1; welfare ~ c'x in the diffusion limit
    double probe_constant = 0.0; ///< measured K with |1'A^t x - c'x| <= (1-eps)^t sqrt(n) K |x|_2
};

inline constexpr unsigned kSpectralSeed = 20240611u;

/// Power iteration on A and A' for the top pair, then deflated iteration for
/// |lambda_2|. Throws model_error when |lambda_1 - 1| > tolerance and
/// numeric_error when iteration stalls (1e5 iteration cap, Rayleigh quotients
/// converged to 1e-12).
SpectralData analyze_influence(const Matrix& A, double tolerance = 1e-8, unsigned seed = kSpectralSeed);

/// One item offered to a society: per-person base utilities and boredom
/// coefficients.
struct SocietyItem {
    std::string label;
    std::vector<double> base; ///< v_ij over people j
    std::vector<double> boredom; ///< alpha_ij over people j, >= 0
};

struct Society {
    Matrix influence;
    double decay_rate = 0.0; ///< uniform r across people
    std::vector<SocietyItem> items;
};

void validate_society(const Society& society);

/// Collapses the society to a single individual: item i gets v = c'v_i,
/// alpha = c'alpha_i and the society decay rate. Negative c entries are passed
/// through (negative_warning flags it).
ItemList reduce_society(const Society& society, const SpectralData& spectral, bool* negative_warning = nullptr);

/// Welfare of the boredom-free diffusion at its fixed point: c'v_i.
double welfare_fixed_point(const Society& society, const SpectralData& spectral, std::size_t item);

struct SocietyTrace {
    long horizon = 0;
    std::vector<int> choices; ///< the driven choice per step
    std::vector<int> welfare_rule_choices; ///< argmax_i [2 W_i(t) - c'v_i], the doubled rule read off welfare
    // Indexed [item][step].
    std::vector<std::vector<double>> welfare; ///< W_i(t) = 1'u_i(t)
    std::vector<std::vector<double>> reduced_utility; ///< utility of the reduced individual, c-sum scale
    std::vector<std::vector<double>> gap; ///< |W_i(t) - reduced_i(t)| / n
    SpectralData spectral;
    ItemList reduced_items;
};

struct SocietySimOptions {
    long horizon = 0;
    Policy policy = Policy::double_greedy(); ///< applied to the reduced individual
    std::optional<std::vector<int>> explicit_choices; ///< overrides the policy when set
    double spectral_tolerance = 1e-8;
    unsigned seed = kSpectralSeed;
};

/// Simulates u_i(t+1) = A u_i(t) - [b_i(t+1) - b_i(t)] with memories updated
/// by the recurrence rule M <- (1-r) M + r x (matching db = alpha r (x - M)),
/// while the reduced individual is driven by the same choices. Both state at
/// time t is recorded before the step's update; u_i(0) = v_i.
SocietyTrace simulate_society(const Society& society, const SocietySimOptions& options);

} // namespace bsched
