#ifndef PSA_RUNNER_FIGURES_H
#define PSA_RUNNER_FIGURES_H

#include <string>
#include <vector>

#include "json.hpp"
#include "psa/runner/config.h"
#include "psa/runner/table.h"

namespace psa::runner {

/// Amplified phase (small-coupling and exact), weak value and postselected
/// intensity versus theta2, for every configured chi.
Table run_fig2(const RunConfig &cfg);

/// Analytic and Monte-Carlo sensitivity of the M-shot average and the
/// uncertainty band of chi_tilde versus M. The Monte-Carlo columns are filled
/// when a shots block is configured, which then must carry a seed.
Table run_fig3(const RunConfig &cfg);

/// Detector counts and saturation error ratio versus theta2 for every configured N.
Table run_fig4(const RunConfig &cfg);

/// Every derived quantity at a single operating point.
nlohmann::json run_single(const RunConfig &cfg);

/// True when a single-point record has no defined amplified phase.
bool record_is_sentinel_only(const nlohmann::json &record);

/// Compares a freshly computed record against an expected one. Numbers match
/// within 1e-9 relative (1e-12 absolute); everything else must be equal.
/// Returns one message per mismatch.
std::vector<std::string> self_check(const nlohmann::json &actual, const nlohmann::json &expected);

}  // namespace psa::runner

#endif
