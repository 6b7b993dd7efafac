// sweep.hpp: grid evaluation of a scenario and CSV / SVG output.

#pragma once

#include "entroflux/scenario.hpp"
#include "entroflux/thermo.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace entroflux::sweep {

struct ResultRow {
    double value = 0.0;                            // sweep variable
    bool stable = false;
    std::optional<thermo::ThermoReport> report;    // empty for unstable or failed points
    std::optional<double> oracle_defect;           // ||V - V_ode||_inf when verified
    std::string failure;                           // numerical error message, if any

    std::optional<double> numeric(Output o) const;
};

struct SweepOptions {
    // 0: ENTROFLUX_THREADS if set, otherwise the hardware concurrency.
    unsigned threads = 0;
    // Re-check every stable point against the ODE integrator.
    bool verify_oracle = false;
};

// Generic parameters of a scenario at sweep value x; std::nullopt when the
// point has no admissible model (no stable mean-field branch, non-positive bare
// loss for a held kappa_fb).
std::optional<model::FeedbackParams> point_params(const Scenario& s, double x);

// One row per grid point, in ascending sweep order regardless of threading.
std::vector<ResultRow> run_sweep(const Scenario& s, const SweepOptions& opts = {});

unsigned resolve_threads(unsigned requested);

// RFC-4180 CSV: header, one line per row, 17 significant digits, LF endings.
void emit_csv(const Scenario& s, const std::vector<ResultRow>& rows, std::ostream& out);

// Standalone 800x500 SVG with one polyline per column. InsufficientData when
// no columns are requested or a column has fewer than two finite points.
void emit_svg(const Scenario& s, const std::vector<ResultRow>& rows, const std::vector<Output>& columns,
              std::ostream& out);

// Numeric outputs of the scenario in request order (flags dropped).
std::vector<Output> numeric_outputs(const Scenario& s);

std::string format_number(double v);

}  // namespace entroflux::sweep
