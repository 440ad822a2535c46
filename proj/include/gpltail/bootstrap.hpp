#pragma once

namespace gpltail {

// Execution policy for bootstrap kernels.  Parallel distributes replicates
// over OpenMP threads; each replicate derives its own random stream and the
// aggregation is an integer count, so both policies produce bit-identical
// results.  Serial remains the reference implementation for tests and the
// benchmark baseline.
enum class Execution { Serial, Parallel };

}  // namespace gpltail
