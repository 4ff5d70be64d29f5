#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpsstab/mps.hpp"

namespace mpsstab::cli {

enum ExitCode : int {
  kOk = 0,
  kFindings = 1,  // only `gallery`, when an expectation fails
  kInputError = 2,
  kCapExceeded = 3,
  kNumericalFailure = 4,
};

/// Runs the command line with argv[0] as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Random tensor for sample `index` of a scan; the stream depends only on (seed, index).
MpsTensor random_tensor(std::uint64_t seed, std::uint64_t index, int d, int D,
                        const std::string& dist);

}  // namespace mpsstab::cli
