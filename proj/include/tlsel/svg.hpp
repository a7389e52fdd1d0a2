#pragma once

#include <string>
#include <vector>

#include "tlsel/core_model.hpp"

namespace tlsel {

// Polyline of the daily counts with vertical markers at the given days.
std::string daily_counts_svg(const DailyCountSeries& series,
                             const std::vector<Day>& marker_days,
                             const std::string& title);

// Equal-width bar histogram of the values.
std::string histogram_svg(const std::vector<double>& values, int bins,
                          const std::string& title);

}  // namespace tlsel
