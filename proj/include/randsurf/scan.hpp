#pragma once

// Convergence experiments: sample good partitions over a list of primes and
// track how c1^2/c2 approaches the log Chern ratio.

#include "randsurf/covers.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace randsurf {

/// splitmix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent stream seed for sample `index` at prime `p`.
std::uint64_t derive_seed(std::uint64_t seed, std::int64_t p, std::int64_t index) noexcept;

/// Runs fn(0..n-1) on `workers` threads (0 = hardware concurrency). The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

struct ScanOptions {
    std::int64_t samples_per_prime = 20;
    std::uint64_t seed = 1;
    std::int64_t max_tries = 100;
    FareyConfig farey;
    unsigned workers = 0;
};

struct ScanSample {
    std::int64_t p = 0;
    std::int64_t index = 0;
    std::uint64_t seed = 0;
    PartitionSolution solution;
    std::int64_t tries = 0;
    ChernReport report;
};

struct ScanRow {
    std::int64_t p = 0;
    std::int64_t samples = 0;
    Rational min;
    Rational median;
    Rational max;
    /// |median - log ratio|.
    Rational deviation;
};

struct ScanSkip {
    std::int64_t p = 0;
    std::string reason;
};

struct ScanResult {
    LogChernNumbers log;
    Rational log_ratio;
    std::vector<ScanRow> rows;
    std::vector<ScanSample> samples;
    std::vector<ScanSkip> skipped;
};

/// Median of a non-empty list; the mean of the middle pair for even sizes.
Rational median(std::vector<Rational> values);

/// Requires c2bar != 0. A prime is skipped (and recorded) when any of its
/// samples exhausts its tries or the system has no solution. Output order and
/// content depend only on the arguments, not on the worker count.
ScanResult convergence_scan(const Arrangement& a, std::span<const std::int64_t> primes,
                            const ScanOptions& opts);

} // namespace randsurf
