#pragma once

// Minimal SVG line plot for the conditioned-state series. CSV is the
// canonical output; this is a quick-look rendering only.

#include <string>
#include <vector>

#include "qjump/unravel.hpp"

namespace qjump {

void write_series_svg(const std::string& path, const std::vector<ConditionedPoint>& series,
                      bool with_coherence);

} // namespace qjump
