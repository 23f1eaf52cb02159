#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdnls/field.hpp"

namespace gdnls {

/// Flat key = value configuration grouped in named sections.
struct ExperimentConfig {
    std::string experiment;
    std::string output_dir;
    std::uint64_t seed = 1;

    struct GridSection {
        double x_min = -100.53096491487338639;  // -32 pi
        double x_max = 100.53096491487338639;
        std::size_t m = 512;
    } grid;

    struct PhysicsSection {
        int k = 3;
        double amplitude = 0.1;
        std::string profile = "gaussian";  ///< gaussian | modulated_gaussian
        double carrier = 12.0;             ///< carrier frequency of the modulated profile
    } physics;

    struct SolverSection {
        double dt = 1e-3;
        std::size_t store_every = 1;
    } solver;

    struct NormalFormSection {
        double n0 = 2.0;
        int m_star = 6;
        std::size_t grid_cap = 32;
    } normal_form;

    struct WaveopSection {
        double delta_target = 0.25;
        double tol_cauchy = 1e-6;
        double schedule_step = 5.0;
        int n_max = 6;
        double horizon = 40.0;
        double probe_span = 2.0;  ///< probe_end = T + probe_span
    } waveop;
};

/// Parses an INI-style config file.  Unknown sections or keys, malformed
/// lines, and bad values are reported with file and line diagnostics.
/// Numeric values may carry a "pi" suffix (x_min = -32pi).
ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Applies one "section.key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// FNV-1a hash of the canonical config text; embedded in artifact headers.
std::string config_hash(const ExperimentConfig& cfg);
std::string canonical_config_text(const ExperimentConfig& cfg);

/// One checked assertion of an experiment run.
struct AssertionRecord {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct TimeseriesRow {
    std::string experiment;
    double t = 0.0;
    std::string quantity;
    double value = 0.0;
};

struct CauchyRow {
    int n = 0;
    double t_n = 0.0;
    double x_distance = 0.0;
    double y_distance = 0.0;
};

/// Everything an experiment produces; `write_artifacts` serializes it.
struct ExperimentResult {
    std::string experiment;
    std::vector<AssertionRecord> assertions;
    std::vector<TimeseriesRow> timeseries;
    std::vector<CauchyRow> cauchy;

    bool all_pass() const;
    void check(const std::string& name, double measured, double threshold, bool pass);
    /// measured <= threshold
    void check_le(const std::string& name, double measured, double threshold);
    /// measured >= threshold
    void check_ge(const std::string& name, double measured, double threshold);
};

/// Initial datum selected by the physics section: amplitude * exp(-x^2),
/// optionally modulated by exp(i * carrier * x).
Field configured_profile(const ExperimentConfig& cfg);

/// Random field with H^1-type spectral law <xi>^{-1} and unit-modulus phases
/// on modes 0 < |xi| <= xi_cap (plus the zero mode); deterministic in seed.
Field random_band_limited_field(const Grid& grid, double xi_cap, std::uint64_t seed,
                                double amplitude = 1.0);

/// Runs the named experiment; returns the result (artifacts not yet written).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes timeseries.csv, cauchy.csv (when non-empty), and summary.jsonl.
void write_artifacts(const ExperimentResult& result, const ExperimentConfig& cfg,
                     const std::filesystem::path& dir);

/// run + write + exit status (0 iff every assertion passed).
int run_and_write(const ExperimentConfig& cfg);

/// Tabulates summary.jsonl (and cauchy.csv when present) from a run directory.
int write_report(const std::filesystem::path& dir, std::ostream& out);

}  // namespace gdnls
