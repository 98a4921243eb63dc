#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sisfront/analysis.hpp"
#include "sisfront/equilibrium.hpp"
#include "sisfront/semiwave.hpp"
#include "sisfront/solver.hpp"
#include "sisfront/spectral.hpp"

namespace sisfront {

/// One double with 17 significant digits (shortest round-trippable form).
std::string format_g17(double v);

/// Collects the artifacts written during one CLI invocation and emits
/// manifest.json binding them to the generating config hash.
class ArtifactWriter {
public:
    ArtifactWriter(std::string out_dir, std::string config_hash);

    const std::string& dir() const { return out_dir_; }

    /// Full path for `name`, registering it in the manifest.
    std::string path(const std::string& name);

    void write_manifest();

private:
    std::string out_dir_;
    std::string config_hash_;
    std::vector<std::string> artifacts_;
};

// CSV exporters; every float is emitted with 17 significant digits.
void write_fronts_csv(const std::string& path, const Trajectory& traj);
void write_profiles_csv(ArtifactWriter& out, const Trajectory& traj);
void write_r0_series_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<std::pair<double, double>>& series);
void write_r0_probe_csv(const std::string& path, const MonotonicityReport& report);
void write_semiwave_csv(const std::string& path,
                        const std::vector<SemiWaveResult>& results);
void write_semiwave_profile_csv(const std::string& path, const SemiWaveResult& result);
void write_equilibrium_csv(const std::string& path, const EquilibriumProfile& profile);
void write_mu_scan_csv(const std::string& path, const MuStarResult& result);
void write_verdict_json(const std::string& path, const Outcome& outcome);

}  // namespace sisfront
