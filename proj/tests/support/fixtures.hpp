#pragma once

#include "coarsekit/energy_map.hpp"

namespace testing_support {

inline const coarsekit::EnergyPeriodTable& default_energy_table() {
  static const coarsekit::EnergyPeriodTable table =
      coarsekit::build_energy_period_table(coarsekit::ModelParams{});
  return table;
}

}  // namespace testing_support
