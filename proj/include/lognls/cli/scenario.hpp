#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognls/modulation.hpp"
#include "lognls/potentials.hpp"

namespace lognls::cli {

/// Invalid configuration; `field` is the dotted key at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct PotentialSpec {
    PotentialKind kind = PotentialKind::zero;
    double amplitude = 0.0;
    Vec center{};
    double width = 1.0;
    Vec wavevector{1.0, 1.0};
    double offset = 0.0;
};

struct SpectrumOptions {
    int k = 6;
    std::string basis = "auto";  // auto, finite_difference_1d, hermite_tensor
    int points = 256;
    double extent = 16.0;
    int modes = 12;
};

struct MinimizeOptions {
    std::string init = "perturbed";  // gausson, perturbed, broad
    double amplitude = 0.1;
    double tol = 1e-13;
    int max_iter = 200000;
};

/**
 * One scenario file (schema 1). Keys:
 *   name, N, eps | eps_list, L, M ("auto" or power of two), T, dt ("auto" or
 *   number), sample_dt, margin, seed, outputs, x0, v0,
 *   [potential] kind, amplitude, center, width, wavevector, offset,
 *   [spectrum] k, basis, points, extent, modes,
 *   [minimize] init, amplitude, tol, max_iter.
 */
struct Scenario {
    std::string name = "scenario";
    int dim = 1;
    std::optional<double> eps;
    std::vector<double> eps_list;
    double extent = 20.0;
    int points = 0;  // 0: auto
    PotentialSpec potential;
    Vec x0{};
    Vec v0{};
    double t_final = 1.0;
    double dt = 0.0;  // 0: auto
    double sample_dt = 0.01;
    double margin = 2.0;
    std::uint64_t seed = 1;
    std::string outputs;
    SpectrumOptions spectrum;
    MinimizeOptions minimize;

    Potential make_potential() const;
    RunSpec run_spec(double eps_value) const;
    /// Resolved values in a fixed order; the input to hash().
    std::string canonical() const;
    /// 16 hex digits (FNV-1a 64 of canonical()).
    std::string hash() const;
};

/// Parse TOML text, then apply key=value overrides (values in TOML syntax,
/// dotted keys for tables). Throws ConfigError.
Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides = {});
Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

} // namespace lognls::cli
