#pragma once

#include "artifact/harness/config.hpp"
#include "artifact/harness/table.hpp"
#include "artifact/throughput.hpp"

namespace artifact::harness {

// Dispatches on cfg.scenario (fig2..fig8); throws on unknown ids.
ResultTable run_scenario(const Config& cfg);

ResultTable scenario_fig2(const Config& cfg);  // outage vs lambda_p
ResultTable scenario_fig3(const Config& cfg);  // Pf vs SNR per kappa
ResultTable scenario_fig4(const Config& cfg);  // optimizer comparison
ResultTable scenario_fig5(const Config& cfg);  // P0 optimum vs alpha2_min x kappa
ResultTable scenario_fig6(const Config& cfg);  // system outage, single vs CSS
ResultTable scenario_fig7(const Config& cfg);  // per-SU tau vs J1 x kappa
ResultTable scenario_fig8(const Config& cfg);  // per-SU tau vs alpha2_min x kappa

// One row per method (grid, random, local) at the current config.
ResultTable compare_optimizers(const Config& cfg, throughput::Variant variant);

}  // namespace artifact::harness
