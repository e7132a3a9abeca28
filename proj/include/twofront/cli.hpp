#pragma once

namespace twofront::cli {

// Full command-line surface (simulate, semiwave, equilibrium, criteria,
// sweep). Returns the process exit code: 0 success, 2 configuration
// error, 3 numerical failure, 4 inconclusive classification.
int run_main(int argc, char** argv);

}  // namespace twofront::cli
