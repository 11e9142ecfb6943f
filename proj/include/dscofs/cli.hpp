#pragma once

#include <cstdint>

namespace dscofs::cli {

// Deterministic per-cell solve seed for grid sweeps.
std::uint64_t grid_cell_seed(std::uint64_t base_seed, std::uint64_t cell_index);

// Seed stream used for the K-means evaluation of one solve.
std::uint64_t eval_seed(std::uint64_t solve_seed);

// Entry point; returns the process exit code (0 ok, 2 usage/input error,
// 3 numerical failure).
int run_cli(int argc, char** argv);

}  // namespace dscofs::cli
