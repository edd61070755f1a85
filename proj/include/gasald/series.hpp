#pragma once

#include <vector>

namespace gasald {

// Ordered per-period log returns.
using ReturnSeries = std::vector<double>;

}  // namespace gasald
