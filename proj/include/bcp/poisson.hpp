#pragma once

#include <cstdint>

namespace bcp {

/// log of the Poisson(mean) pmf at k, accurate for arbitrarily large k and mean.
double poisson_log_pmf(std::int64_t k, double mean);

}  // namespace bcp
