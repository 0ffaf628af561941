#pragma once

// Derivative-free maximization of the bilocality score over measurement
// settings. The objective is always the exact Born-rule score computed by the
// network module; nothing here uses the closed-form criteria.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "biloc/network.hpp"
#include "biloc/state.hpp"

namespace biloc {

struct OptimizerConfig {
    int restarts = 20;
    int maxIterations = 2000;
    double tolerance = 1e-10;
    std::uint64_t seed = 0;
    /// 0: BILOC_THREADS from the environment, else hardware concurrency.
    int threads = 0;
};

enum class SearchMode {
    /// Bell-state measurement behind two local unitaries (14 parameters).
    FixedBsm,
    /// Any four-outcome projective measurement: Bell basis behind a general
    /// two-qubit unitary exp(iH), H over the 15 non-trivial Pauli products
    /// (23 parameters).
    GeneralBob,
    /// Two incompatible dichotomic observables U_y^dagger (Z (x) 1) U_y for
    /// B0 and B1 (38 parameters).
    TwoInputBob,
};

std::string_view mode_name(SearchMode mode);
std::size_t parameter_count(SearchMode mode);

struct SearchResult {
    SearchMode mode = SearchMode::FixedBsm;
    double sBest = 0.0;
    /// Layout: [theta, phi] for Alice's two and Charlie's two settings, then
    /// Bob's parameters for the mode.
    std::vector<double> settings;
    bool converged = false;
    std::int64_t evaluations = 0;
};

/// Settings and Bob measurement(s) encoded by a parameter vector. TwoInputBob
/// yields two measurements, one per Bob input.
struct DecodedSettings {
    SettingPair alice;
    SettingPair charlie;
    std::vector<JointMeasurement> bob;
};

DecodedSettings decode_settings(SearchMode mode, std::span<const double> params);

/// Score of a parameter vector through the network module.
double evaluate_settings(SearchMode mode, const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, std::span<const double> params);

SearchResult maximize_fixed_bsm(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config);
/// Starts one restart from the fixed-BSM optimum, so the result never falls
/// below it.
SearchResult maximize_general_bob(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config);
SearchResult maximize_two_input_bob(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config);

struct ActivationReport {
    SearchResult search;
    bool activated = false;
};

/// General-Bob search on rho (x) rho; activated when sBest > 2.
ActivationReport activation_scan(const TwoQubitState& rho, const OptimizerConfig& config);

/// Fixed-BSM parameters re-expressed in the general-Bob / two-input layouts.
std::vector<double> embed_fixed_bsm(SearchMode target, std::span<const double> fixedParams);

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    std::int64_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead with dimension-adaptive coefficients. Stops when the spread
/// of simplex values drops below `tolerance` or after `maxIterations`.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, double initialStep, int maxIterations, double tolerance);

/// Nelder-Mead, re-seeded from its own optimum with a smaller simplex until
/// that stops helping, then one coordinate pass at step 1e-4.
MinimizeResult local_search(const Objective& f, std::vector<double> x0, int maxIterations, double tolerance);

int resolve_threads(int requested);

}  // namespace biloc
