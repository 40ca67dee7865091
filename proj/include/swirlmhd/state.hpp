#pragma once

#include <stdexcept>
#include <string>

#include "swirlmhd/elliptic.hpp"
#include "swirlmhd/grid.hpp"

namespace swirlmhd {

/// Raised when a stepped field stops being finite.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& field_, double time_)
        : std::runtime_error("blow-up detected in " + field_ + " at t = " +
                             std::to_string(time_)),
          field(field_), time(time_) {}
    std::string field;
    double time;
};

/// State of the primitive reduced system (u_theta, b_theta, omega_theta),
/// with the meridional velocity diagnosed from omega_theta.
struct AxiState {
    double time = 0.0;
    ScalarField u_theta;      ///< Odd
    ScalarField b_theta;      ///< Odd
    ScalarField omega_theta;  ///< Odd
    ScalarField u_r;          ///< diagnosed, Odd
    ScalarField u_z;          ///< diagnosed, Even
};

/// State of the reformulated system (B, eta, V) = (b/r, omega/r, u/r^{1-eps}).
struct ReformState {
    double time = 0.0;
    double epsilon = 0.0;
    ScalarField B;    ///< Even
    ScalarField eta;  ///< Even
    ScalarField V;    ///< Even
    ScalarField u_r;  ///< diagnosed from omega = r eta
    ScalarField u_z;
};

/// The three-component magnetic test system, evolved only to verify that
/// b_r = b_z = 0 is preserved.
struct FullBState {
    double time = 0.0;
    ScalarField b_r;      ///< Odd
    ScalarField b_theta;  ///< Odd
    ScalarField b_z;      ///< Even
};

/// A prescribed driving velocity for the full-b system.
struct VelocityTriple {
    ScalarField u_r;      ///< Odd
    ScalarField u_theta;  ///< Odd
    ScalarField u_z;      ///< Even
};

enum class Scheme { ImexEuler, ExplicitRk2 };

struct StepperConfig {
    double dt = 0.0;  ///< fixed step; 0 selects the stability bound each step
    Scheme scheme = Scheme::ImexEuler;
    double cfl_safety = 0.45;
    double t_end = 1.0;
    int sample_every = 1;
};

/// Builds a primitive state, diagnosing (u_r, u_z) from omega_theta.
AxiState make_axi_state(const PoissonSolver& solver, ScalarField u_theta,
                        ScalarField b_theta, ScalarField omega_theta,
                        double time = 0.0);

/// Builds a reformulated state, diagnosing the velocity from r * eta.
ReformState make_reform_state(const PoissonSolver& solver, double epsilon,
                              ScalarField B, ScalarField eta, ScalarField V,
                              double time = 0.0);

/// Change of variables between the two formulations.
ReformState reform_from_primitive(const PoissonSolver& solver,
                                  const AxiState& state, double epsilon);
AxiState primitive_from_reform(const PoissonSolver& solver,
                               const ReformState& state);

}  // namespace swirlmhd
