#pragma once

#include <cstdint>
#include <random>

namespace wqed {

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream per (seed, index); results do not depend on thread layout.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index);
// Uniform in (0, 1] from the top 53 bits.
double uniform_open0(std::mt19937_64& g);
// Number of Bernoulli(p) trials up to and including the first success.
long geometric_trials(std::mt19937_64& g, double p);

}  // namespace wqed
