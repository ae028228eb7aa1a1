#ifndef FISHSIM_CONFIG_HPP
#define FISHSIM_CONFIG_HPP

#include "fishsim/analysis.hpp"
#include "fishsim/engine.hpp"
#include "fishsim/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fishsim {

/** Parse or resolution failure. Syntax problems carry the line number,
 * semantic problems the dotted field path. */
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/** One node of the raw configuration tree: either a section with children,
 * a scalar token, or a list of scalar tokens. Section names may repeat;
 * order is preserved. */
struct ConfigNode {
    enum class Kind { section, scalar, list };

    std::string key;
    int line = 0;
    Kind kind = Kind::section;
    std::string scalar;
    std::vector<std::string> items;
    std::vector<ConfigNode> children;
};

/// Parses the nested key-value format into a tree. The grammar is documented
/// in the repository README. Throws ConfigError with a line number.
ConfigNode parse_config_tree(const std::string& text);

/// Integration and experiment knobs with their defaults.
struct RunSettings {
    std::optional<double> t_end;
    std::size_t horizon_periods = 60;
    double step = 0.0; // 0 selects the automatic step
    double vanishing_lag_tol = 1e-12;
    int vanishing_lag_max_iter = 8;
    int breakpoint_depth = 3;
    double tol = 1e-4;
    std::size_t transient_periods = 40;
    double residual_tol = 1e-6;
    std::optional<double> guess;
    double x0 = 0.1;
    double horizon = 80.0;

    StepControl control() const;
};

/** A fully resolved experiment: exactly one of model/proportional, an
 * optional history, run settings with defaults applied, and the
 * command-specific sections that were present. */
struct ExperimentConfig {
    std::optional<ModelParams> model;
    std::optional<ProportionalParams> proportional;
    std::optional<HistorySpec> history;
    RunSettings run;
    std::optional<SweepAxis> sweep_axis1, sweep_axis2;
    std::vector<HistorySpec> converge_histories;

    /// The general model: the model section, or the proportional one mapped
    /// through its shared factor. Throws ConfigError when neither is present.
    ModelParams resolved_model() const;
};

/** Resolves a parsed tree. strict turns unknown keys into errors; otherwise
 * they are reported through warnings (when given) and ignored. */
ExperimentConfig resolve_config(const ConfigNode& root, bool strict = true,
                                std::vector<std::string>* warnings = nullptr);

/// parse_config_tree followed by resolve_config.
ExperimentConfig parse_config(const std::string& text, bool strict = true,
                              std::vector<std::string>* warnings = nullptr);

/** Canonical text form of a resolved config, itself valid input: every
 * default is materialized, numbers use shortest round-trip formatting, key
 * order is fixed. Reparsing it reproduces the same resolved config. */
std::string serialize_config(const ExperimentConfig& cfg);

} // namespace fishsim

#endif
