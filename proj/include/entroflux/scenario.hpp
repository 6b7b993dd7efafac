// scenario.hpp: sweep scenarios, the `key = value` config format and built-in presets.

#pragma once

#include "entroflux/model.hpp"
#include "entroflux/optomech.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entroflux::sweep {

enum class Kind { generic, optomech };

enum class Output { pi_s, mu_a, mu_c, mutual_info, log_neg, nu_minus, n_a_s, n_c_s, stable, physical };

std::string_view output_name(Output o);
std::optional<Output> parse_output(std::string_view name);
const std::vector<Output>& all_outputs();
bool is_flag(Output o);

struct SweepAxis {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::size_t size() const;
    // start + i * step, i = 0 .. size() - 1
    double at(std::size_t i) const;
};

struct Scenario {
    Kind kind = Kind::generic;
    model::FeedbackParams generic;
    optomech::OptoParams opto;
    // When set, the bare cavity decay is recomputed at every grid point so the
    // effective decay kappa_a (1 - 2 tau cos theta) stays at this value.
    std::optional<double> kappa_fb;
    // Light-enhanced coupling given directly (optomech); skips the mean-field cubic.
    std::optional<double> g_enhanced;
    std::optional<std::size_t> branch;
    SweepAxis sweep;
    std::vector<Output> outputs;
};

// Parses the plain-text config. Unknown or duplicate keys, malformed values and
// out-of-range parameters raise ConfigError with the line number.
Scenario parse_config(std::string_view text);

// Built-in figure presets: fig1 .. fig7.
const std::vector<std::string>& preset_names();
std::optional<std::string> preset_config(std::string_view name);

// Preset name, or else a path to a config file.
Scenario load_scenario(const std::string& preset_or_path);

}  // namespace entroflux::sweep
