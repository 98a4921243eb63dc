#include "sisfront/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace sisfront {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    return out;
}

}  // namespace

ArtifactWriter::ArtifactWriter(std::string out_dir, std::string config_hash)
    : out_dir_(std::move(out_dir)), config_hash_(std::move(config_hash)) {
    fs::create_directories(out_dir_);
}

std::string ArtifactWriter::path(const std::string& name) {
    artifacts_.push_back(name);
    return (fs::path(out_dir_) / name).string();
}

void ArtifactWriter::write_manifest() {
    json j;
    j["config_hash"] = config_hash_;
    j["artifacts"] = artifacts_;
    auto out = open_out((fs::path(out_dir_) / "manifest.json").string());
    out << j.dump(2) << "\n";
}

void write_fronts_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,g,h,gdot,hdot,supI,R0F\n";
    std::size_t r0_idx = 0;
    const auto& r0f = traj.r0f_history;
    // r0f entries correspond 1:1 to recorded snapshots; match rows by time
    std::size_t snap_idx = 0;
    for (const auto& rec : traj.front_history) {
        out << format_g17(rec.t) << ',' << format_g17(rec.g) << ',' << format_g17(rec.h)
            << ',' << format_g17(rec.gdot) << ',' << format_g17(rec.hdot) << ','
            << format_g17(rec.sup_i) << ',';
        if (snap_idx < traj.snapshots.size() &&
            traj.snapshots[snap_idx].front.t == rec.t) {
            if (r0_idx < r0f.size() && r0f[r0_idx].first == rec.t) {
                out << format_g17(r0f[r0_idx].second);
                ++r0_idx;
            }
            ++snap_idx;
        }
        out << '\n';
    }
}

void write_profiles_csv(ArtifactWriter& writer, const Trajectory& traj) {
    for (const auto& snap : traj.snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "profile_%.6g.csv", snap.front.t);
        auto out = open_out(writer.path(name));
        out << "x,I\n";
        out << format_g17(snap.front.g) << ',' << format_g17(0.0) << '\n';
        const double s = snap.front.half_width();
        const double m = snap.front.midpoint();
        for (int j = 0; j < traj.grid.n; ++j)
            out << format_g17(m + traj.grid.y[j] * s) << ','
                << format_g17(snap.values[j]) << '\n';
        out << format_g17(snap.front.h) << ',' << format_g17(0.0) << '\n';
    }
}

void write_r0_series_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<std::pair<double, double>>& series) {
    auto out = open_out(path);
    out << "t,g,h,R0F\n";
    for (std::size_t i = 0; i < series.size() && i < traj.snapshots.size(); ++i) {
        const auto& snap = traj.snapshots[i];
        out << format_g17(series[i].first) << ',' << format_g17(snap.front.g) << ','
            << format_g17(snap.front.h) << ',' << format_g17(series[i].second) << '\n';
    }
}

void write_r0_probe_csv(const std::string& path, const MonotonicityReport& report) {
    auto out = open_out(path);
    out << "parameter,value,R0\n";
    for (const auto& row : report.rows)
        out << row.parameter << ',' << format_g17(row.value) << ','
            << format_g17(row.r0) << '\n';
}

void write_semiwave_csv(const std::string& path,
                        const std::vector<SemiWaveResult>& results) {
    auto out = open_out(path);
    out << "direction,k_star,slope0\n";
    for (const auto& r : results)
        out << to_string(r.direction) << ',' << format_g17(r.k_star) << ','
            << format_g17(r.slope0) << '\n';
}

void write_semiwave_profile_csv(const std::string& path, const SemiWaveResult& result) {
    auto out = open_out(path);
    out << "z,q\n";
    for (const auto& [z, q] : result.profile)
        out << format_g17(z) << ',' << format_g17(q) << '\n';
}

void write_equilibrium_csv(const std::string& path, const EquilibriumProfile& profile) {
    auto out = open_out(path);
    out << "x,Istar\n";
    for (std::size_t i = 0; i < profile.x.size(); ++i)
        out << format_g17(profile.x[i]) << ',' << format_g17(profile.istar[i]) << '\n';
}

void write_mu_scan_csv(const std::string& path, const MuStarResult& result) {
    auto out = open_out(path);
    out << "mu,verdict,t0_or_blank\n";
    for (const auto& probe : result.probes) {
        out << format_g17(probe.mu) << ',' << to_string(probe.verdict) << ',';
        if (probe.t0) out << format_g17(*probe.t0);
        out << '\n';
    }
}

void write_verdict_json(const std::string& path, const Outcome& outcome) {
    json j;
    j["verdict"] = to_string(outcome.verdict);
    if (outcome.spreading) {
        j["certificate"] = {{"t0", outcome.spreading->t0},
                            {"R0F_t0", outcome.spreading->r0f_t0},
                            {"g_t0", outcome.spreading->g_t0},
                            {"h_t0", outcome.spreading->h_t0}};
    }
    if (outcome.vanishing) {
        j["certificate"] = {{"window_start", outcome.vanishing->window_start},
                            {"front_advance_g", outcome.vanishing->front_advance_g},
                            {"front_advance_h", outcome.vanishing->front_advance_h},
                            {"sup_infected", outcome.vanishing->sup_infected},
                            {"terminal_R0", outcome.vanishing->terminal_r0}};
    }
    j["diagnostics"] = {{"horizon", outcome.diagnostics.horizon},
                        {"final_sup", outcome.diagnostics.final_sup},
                        {"final_g", outcome.diagnostics.final_g},
                        {"final_h", outcome.diagnostics.final_h}};
    if (!outcome.advice.empty()) j["advice"] = outcome.advice;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace sisfront
