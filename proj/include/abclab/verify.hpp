#pragma once

#include <cstddef>
#include <cstdint>

#include "abclab/report.hpp"

namespace abclab {

/// Runs every module invariant as a seeded batch. Each check gets its own
/// generator derived from `seed` and its position in the suite, so the report
/// is identical however the checks are spread over workers. Failures are
/// reported, never thrown.
RunReport run_verify_suite(std::uint64_t seed, std::size_t max_workers = 0);

}  // namespace abclab
