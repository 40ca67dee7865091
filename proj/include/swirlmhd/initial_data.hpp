#pragma once

#include "swirlmhd/config.hpp"
#include "swirlmhd/exponents.hpp"
#include "swirlmhd/state.hpp"

namespace swirlmhd {

/// Initial states in both formulations together with every norm of the
/// admissibility class and the smallness verdict.
struct GeneratedData {
    AxiState primitive;
    ReformState reform;
    InitialNormBundle norms;
    SmallnessReport smallness;
    double M0 = 0.0;
    double N0 = 0.0;
    double u0_besov_m1 = std::numeric_limits<double>::quiet_NaN();  ///< B^{-1}_{inf,1}
};

/// Builds bump-profile initial data per cfg (generator bump | random_bumps |
/// zero), computes the norm bundle, M0, N0 and the smallness report. The
/// Besov norm of the initial velocity is filled when cfg.lp_enabled.
GeneratedData generate_initial_data(const RunConfig& cfg,
                                    const PoissonSolver& solver);

/// Halves the three amplitudes together until check_smallness passes, using
/// the exact homogeneous scaling of the norm bundle (fields scale linearly
/// with their amplitude). Throws std::runtime_error if max_halvings is not
/// enough.
RunConfig calibrate_to_smallness(RunConfig cfg, const PoissonSolver& solver,
                                 int max_halvings = 400);

}  // namespace swirlmhd
