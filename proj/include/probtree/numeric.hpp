#pragma once

// Small numeric helpers shared across the library: pairwise summation for
// weight totals, the splitmix64 finalizer used to derive per-run RNG streams,
// and shortest round-trip double rendering.

#include <cstdint>
#include <span>
#include <string>

namespace probtree {

// Pairwise (tree) summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> xs);

// splitmix64 finalizer: one well-mixed 64-bit output per input.
std::uint64_t splitmix64(std::uint64_t x);

// Shortest decimal form that round-trips exactly to the same double.
std::string render_double(double d);

}  // namespace probtree
