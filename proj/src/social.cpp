#include "bsched/social.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bsched/errors.hpp"

namespace bsched {

namespace {

// Portable deterministic uniform in [0,1): distributions in <random> are not
// pinned by the standard, the raw engine stream is.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> seeded_vector(int n, std::mt19937_64& rng) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& value : x) {
        value = 0.5 + uniform01(rng);
    }
    return x;
}

void normalize(std::vector<double>& x) {
    const double scale = norm2(x);
    if (scale == 0.0) {
        throw numeric_error("cannot normalize a zero vector");
    }
    for (double& value : x) {
        value /= scale;
    }
}

constexpr int kMaxIterations = 100000;
constexpr double kRayleighTol = 1e-12;

struct EigenPair {
    double eigenvalue = 0.0;
    std::vector<double> vec;
};

EigenPair dominant_pair(const Matrix& A, bool transpose, std::mt19937_64& rng) {
    std::vector<double> x = seeded_vector(A.n, rng);
    normalize(x);
    std::vector<double> y(static_cast<std::size_t>(A.n));
    double rayleigh = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    bool value_converged = false;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        if (transpose) {
            matvec_transpose(A, x, y);
        } else {
            matvec(A, x, y);
        }
        rayleigh = dot(x, y);
        const double scale = norm2(y);
        if (scale < 1e-300) {
            throw numeric_error("power iteration collapsed to the zero vector");
        }
        double drift = 0.0; // vector movement, sign-aligned
        const double sign = dot(x, y) < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double fresh = sign * y[j] / scale;
            drift = std::max(drift, std::abs(fresh - x[j]));
            x[j] = fresh;
        }
        if (iter >= 2 && std::abs(rayleigh - previous) < kRayleighTol) {
            value_converged = true;
        }
        // The Rayleigh quotient settles long before the vector does (its error
        // is quadratic in the vector error); keep polishing until the vector
        // itself is stationary so the social vector is accurate too.
        if (value_converged && drift < 1e-13) {
            return {rayleigh, std::move(x)};
        }
        previous = rayleigh;
    }
    if (value_converged) {
        return {rayleigh, std::move(x)};
    }
    throw numeric_error("power iteration did not converge");
}

// Magnitude of the dominant eigenvalue of the deflated map
// B y = A y - lambda1 p1 (q1'y). Power iteration drives a two-dimensional
// Krylov projection {z, Bz}; the 2x2 restriction captures a real second
// eigenvalue, an equal-and-opposite real pair, and a complex pair alike.
double deflated_second_magnitude(const Matrix& A, double lambda1, std::span<const double> p1,
                                 std::span<const double> q1, std::mt19937_64& rng) {
    const int n = A.n;
    const auto apply = [&](std::span<const double> in, std::span<double> out) {
        matvec(A, in, out);
        const double along = dot(q1, out);
        for (int j = 0; j < n; ++j) {
            out[static_cast<std::size_t>(j)] -= lambda1 * p1[static_cast<std::size_t>(j)] * along;
        }
    };

    std::vector<double> z = seeded_vector(n, rng);
    {
        const double along = dot(q1, z);
        for (int j = 0; j < n; ++j) {
            z[static_cast<std::size_t>(j)] -= p1[static_cast<std::size_t>(j)] * along;
        }
    }
    if (norm2(z) < 1e-12) {
        return 0.0;
    }
    for (double& value : z) {
        value /= norm2(std::span<const double>(z));
    }

    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> q2(static_cast<std::size_t>(n));
    std::vector<double> bq2(static_cast<std::size_t>(n));
    double previous = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        apply(z, u);
        const double growth = norm2(u);
        if (growth < 1e-15) {
            return 0.0;
        }

        // Orthonormal basis {z, q2} of the Krylov slice, restriction H.
        const double h11 = dot(z, u);
        for (int j = 0; j < n; ++j) {
            q2[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] - h11 * z[static_cast<std::size_t>(j)];
        }
        const double h21 = norm2(q2);
        double rho;
        if (h21 < 1e-14 * growth) {
            rho = std::abs(h11); // z is already an eigenvector
        } else {
            for (double& value : q2) {
                value /= h21;
            }
            apply(q2, bq2);
            const double h12 = dot(z, bq2);
            const double h22 = dot(q2, bq2);
            const double trace = h11 + h22;
            const double det = h11 * h22 - h12 * h21;
            const double disc = trace * trace - 4.0 * det;
            if (disc >= 0.0) {
                const double root = std::sqrt(disc);
                rho = std::max(std::abs((trace + root) / 2.0), std::abs((trace - root) / 2.0));
            } else {
                rho = std::sqrt(det); // conjugate pair, |lambda|^2 = det
            }
        }

        if (iter >= 2 && std::abs(rho - previous) < kRayleighTol * std::max(1.0, rho)) {
            return rho;
        }
        previous = rho;
        for (int j = 0; j < n; ++j) {
            z[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] / growth;
        }
    }
    throw numeric_error("second-eigenvalue iteration did not converge");
}

} // namespace

SpectralData analyze_influence(const Matrix& A, double tolerance, unsigned seed) {
    if (A.n < 1 || A.a.size() != static_cast<std::size_t>(A.n) * static_cast<std::size_t>(A.n)) {
        throw domain_error("influence matrix must be square and non-empty");
    }

    SpectralData spectral;
    std::mt19937_64 rng(seed);

    if (A.n == 1) {
        spectral.top_eigenvalue = A.at(0, 0);
        if (std::abs(spectral.top_eigenvalue - 1.0) > tolerance) {
            throw model_error("influence matrix top eigenvalue " +
                              std::to_string(spectral.top_eigenvalue) + " is not 1 within tolerance");
        }
        spectral.right_vec = {1.0};
        spectral.left_vec = {1.0};
        spectral.second_magnitude = 0.0;
        spectral.gap = 1.0;
        spectral.social_vector = {1.0};
        spectral.probe_constant = 0.0;
        return spectral;
    }

    EigenPair right = dominant_pair(A, false, rng);
    EigenPair left = dominant_pair(A, true, rng);

    // Deterministic sign: dominant entry of p1 positive.
    const auto flip_if_needed = [](std::vector<double>& v) {
        std::size_t lead = 0;
        for (std::size_t j = 1; j < v.size(); ++j) {
            if (std::abs(v[j]) > std::abs(v[lead])) {
                lead = j;
            }
        }
        if (v[lead] < 0.0) {
            for (double& value : v) {
                value = -value;
            }
        }
    };
    flip_if_needed(right.vec);

    spectral.top_eigenvalue = right.eigenvalue;
    if (std::abs(spectral.top_eigenvalue - 1.0) > tolerance) {
        throw model_error("influence matrix top eigenvalue " +
                          std::to_string(spectral.top_eigenvalue) + " is not 1 within tolerance");
    }

    const double pairing = dot(left.vec, right.vec);
    if (std::abs(pairing) < 1e-10) {
        throw numeric_error("left and right eigenvectors are nearly orthogonal");
    }
    for (double& value : left.vec) {
        value /= pairing;
    }

    spectral.right_vec = right.vec;
    spectral.left_vec = left.vec;
    spectral.second_magnitude =
        deflated_second_magnitude(A, spectral.top_eigenvalue, spectral.right_vec, spectral.left_vec, rng);
    spectral.gap = 1.0 - spectral.second_magnitude;
    if (!(spectral.gap > 0.0)) {
        throw model_error("influence matrix has no spectral gap below the top eigenvalue");
    }

    double ones_dot_p = 0.0;
    for (const double value : spectral.right_vec) {
        ones_dot_p += value;
    }
    spectral.social_vector.resize(static_cast<std::size_t>(A.n));
    for (int j = 0; j < A.n; ++j) {
        spectral.social_vector[static_cast<std::size_t>(j)] = ones_dot_p * spectral.left_vec[static_cast<std::size_t>(j)];
    }

    // Measure the constant tying |1'A^t x - c'x| to (1-gap)^t sqrt(n) |x|_2.
    const double root_n = std::sqrt(static_cast<double>(A.n));
    double measured = 0.0;
    std::vector<double> probe(static_cast<std::size_t>(A.n));
    std::vector<double> scratch(static_cast<std::size_t>(A.n));
    for (int trial = 0; trial < 5; ++trial) {
        for (double& value : probe) {
            value = uniform01(rng) * 2.0 - 1.0;
        }
        const double probe_norm = norm2(probe);
        const double target = dot(spectral.social_vector, probe);
        std::vector<double> current = probe;
        double shrink = 1.0;
        for (int t = 1; t <= 20; ++t) {
            matvec(A, current, scratch);
            current = scratch;
            shrink *= spectral.second_magnitude;
            if (shrink < 1e-12) {
                break;
            }
            double welfare = 0.0;
            for (const double value : current) {
                welfare += value;
            }
            const double ratio = std::abs(welfare - target) / (shrink * root_n * probe_norm);
            measured = std::max(measured, ratio);
        }
    }
    spectral.probe_constant = measured;
    return spectral;
}

void validate_society(const Society& society) {
    const int n = society.influence.n;
    if (n < 1 || society.influence.a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw domain_error("influence matrix must be square and non-empty");
    }
    if (!(society.decay_rate > 0.0 && society.decay_rate < 1.0)) {
        throw domain_error("society decay rate must be in (0,1)");
    }
    if (society.items.empty()) {
        throw domain_error("society offers no items");
    }
    for (const SocietyItem& item : society.items) {
        if (item.base.size() != static_cast<std::size_t>(n) || item.boredom.size() != static_cast<std::size_t>(n)) {
            throw domain_error("item '" + item.label + "' does not cover every person");
        }
        for (const double alpha : item.boredom) {
            if (!(alpha >= 0.0)) {
                throw domain_error("item '" + item.label + "' has a negative boredom coefficient");
            }
        }
    }
}

ItemList reduce_society(const Society& society, const SpectralData& spectral, bool* negative_warning) {
    validate_society(society);
    if (negative_warning != nullptr) {
        *negative_warning = false;
        for (const double value : spectral.social_vector) {
            if (value < 0.0) {
                *negative_warning = true;
            }
        }
    }
    ItemList reduced;
    reduced.reserve(society.items.size());
    for (const SocietyItem& item : society.items) {
        reduced.push_back({item.label, dot(spectral.social_vector, item.base),
                           dot(spectral.social_vector, item.boredom), society.decay_rate});
    }
    return reduced;
}

double welfare_fixed_point(const Society& society, const SpectralData& spectral, std::size_t item) {
    validate_society(society);
    if (item >= society.items.size()) {
        throw domain_error("item index out of range");
    }
    return dot(spectral.social_vector, society.items[item].base);
}

SocietyTrace simulate_society(const Society& society, const SocietySimOptions& options) {
    validate_society(society);
    if (options.horizon < 1) {
        throw domain_error("horizon must be >= 1");
    }

    const int n = society.influence.n;
    const std::size_t m = society.items.size();
    const double r = society.decay_rate;

    SocietyTrace trace;
    trace.horizon = options.horizon;
    trace.spectral = analyze_influence(society.influence, options.spectral_tolerance, options.seed);
    trace.reduced_items = reduce_society(society, trace.spectral);

    if (options.explicit_choices && static_cast<long>(options.explicit_choices->size()) < options.horizon) {
        throw domain_error("explicit choice sequence is shorter than the horizon");
    }

    std::vector<std::vector<double>> person_utility(m);
    std::vector<std::vector<double>> person_memory(m, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        person_utility[i] = society.items[i].base;
    }

    // The reduced individual shares the recurrence memory rule, so its memory
    // equals every person's memory trace for the same choices.
    MemoryState reduced_state = initial_memory(m, Convention::lemma);

    trace.welfare.assign(m, {});
    trace.reduced_utility.assign(m, {});
    trace.gap.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        trace.welfare[i].reserve(static_cast<std::size_t>(options.horizon));
        trace.reduced_utility[i].reserve(static_cast<std::size_t>(options.horizon));
        trace.gap[i].reserve(static_cast<std::size_t>(options.horizon));
    }
    trace.choices.reserve(static_cast<std::size_t>(options.horizon));
    trace.welfare_rule_choices.reserve(static_cast<std::size_t>(options.horizon));

    std::vector<double> scratch(static_cast<std::size_t>(n));
    for (long t = 0; t < options.horizon; ++t) {
        // Record the pre-update state.
        std::size_t welfare_best = 0;
        double welfare_best_signal = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double welfare = 0.0;
            for (const double value : person_utility[i]) {
                welfare += value;
            }
            const double reduced_u = trace.reduced_items[i].base_utility -
                                     trace.reduced_items[i].boredom_coeff * reduced_state.memories[i];
            trace.welfare[i].push_back(welfare);
            trace.reduced_utility[i].push_back(reduced_u);
            trace.gap[i].push_back(std::abs(welfare - reduced_u) / n);
            // Doubled rule read off the society: 2 W_i(t) minus the
            // boredom-free welfare fixed point tracks c'(v_i - 2 b_i).
            const double signal = 2.0 * welfare - trace.reduced_items[i].base_utility;
            if (signal > welfare_best_signal) {
                welfare_best_signal = signal;
                welfare_best = i;
            }
        }
        trace.welfare_rule_choices.push_back(static_cast<int>(welfare_best));

        int pick;
        if (options.explicit_choices) {
            pick = (*options.explicit_choices)[static_cast<std::size_t>(t)];
            if (pick != kIdle && (pick < 0 || static_cast<std::size_t>(pick) >= m)) {
                throw domain_error("explicit choice " + std::to_string(pick) + " out of range");
            }
        } else {
            pick = choose(options.policy, trace.reduced_items, reduced_state);
        }
        trace.choices.push_back(pick);

        // u_i <- A u_i - (b_i(t+1) - b_i(t)) with the memory recurrence
        // M <- (1-r) M + r x, i.e. db_ij = alpha_ij r (x_i - M_ij).
        for (std::size_t i = 0; i < m; ++i) {
            matvec(society.influence, person_utility[i], scratch);
            const double indicator = (pick == static_cast<int>(i)) ? 1.0 : 0.0;
            for (int j = 0; j < n; ++j) {
                const double db = society.items[i].boredom[static_cast<std::size_t>(j)] * r *
                                  (indicator - person_memory[i][static_cast<std::size_t>(j)]);
                person_utility[i][static_cast<std::size_t>(j)] = scratch[static_cast<std::size_t>(j)] - db;
                person_memory[i][static_cast<std::size_t>(j)] =
                    (1.0 - r) * person_memory[i][static_cast<std::size_t>(j)] + r * indicator;
            }
        }
        memory_step_inplace(reduced_state, pick, trace.reduced_items);
    }
    return trace;
}

} // namespace bsched
