#pragma once

#include <string>

#include "sisfront/analysis.hpp"
#include "sisfront/model.hpp"
#include "sisfront/solver.hpp"
#include "sisfront/spectral.hpp"

namespace sisfront {

/// Everything a run needs: the model, the solver numerics, and the
/// subcommand-specific options, parsed from one flat JSON object.
/// Unknown keys are rejected.
struct RunConfig {
    ModelSpec model;

    RunParams run;                 ///< dt, n, t_end, output_stride + solver tolerances
    SpectralOptions spectral;
    ClassifyCriteria criteria;

    // threshold
    double bracket_lo = 1.0;
    double bracket_hi = 6.0;
    double width_goal = 0.25;
    double horizon_cap = 320.0;
    int workers = 1;

    // equilibrium
    double equilibrium_L = 50.0;
    int equilibrium_n = 2000;

    // speed fit / attractor window
    double x_far = 10.0;
    double fit_fraction = 0.5;
    double window_halfwidth = 5.0;

    std::string source_text;  ///< raw config file contents (hash input)
};

/// Parses a JSON config file. Throws ValidationError on unknown keys,
/// missing model keys, malformed expressions, or invalid values.
RunConfig load_config(const std::string& path);

/// Same, from an already-loaded JSON text.
RunConfig parse_config(const std::string& json_text);

/// FNV-1a 64-bit hash of the raw config text, hex-encoded; stamped into
/// manifests so outputs can be traced back to their configuration.
std::string config_hash(const std::string& text);

/// The study configuration used throughout the examples: N* = 2, d_I = 4,
/// h0 = 1, beta = 4 + 2 sin(x)/(1+x^2), gamma = 1 + cos(x)/(1+x^2),
/// I0 = cos(pi x/2), with the given advection and expanding capability.
ModelSpec reference_model(double alpha, double mu);

}  // namespace sisfront
