#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "permcycles/rng.hpp"
#include "permcycles/series.hpp"

namespace permcycles {

// Cycle lengths in lexicographic order (ordered by smallest contained element).
struct CycleType {
    std::vector<long> lengths;

    long total_points() const;
    long num_cycles() const { return static_cast<long>(lengths.size()); }
    long count(long j) const;
};

// Draws the cycle lengths one at a time from
//   P(l | n remaining) = w_l h_{n-l} / (n h_n).
// Each draw scans l = 1, 2, ... accumulating probabilities, so a whole sample costs O(N).
CycleType sample_cycle_type(const SeriesTable& table, Rng& rng);

std::vector<long> ordered_lengths(const CycleType& ct);

struct McOptions {
    long n_samples = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    long block_size = 1024;      // samples per rng stream; fixes results independently of threads
    bool keep_samples = false;
    int top_k = 3;               // ordered statistics kept per sample
};

struct McSummary {
    long n_points = 0;
    long n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> c_mean;  // entry j-1: sample mean of C_j
    std::vector<double> c_var;   // entry j-1: unbiased sample variance of C_j
    std::vector<long> t_values;  // number of cycles, per sample in sample order
    std::map<long, long> t_hist;
    std::vector<std::vector<long>> top_lengths;       // largest top_k lengths per sample, zero padded
    std::vector<std::pair<long, long>> first_two;     // (L_1, L_2) per sample; L_2 = 0 when absent
    std::vector<CycleType> samples;                   // filled when keep_samples
    bool sum_lengths_ok = true;
};

McSummary run_monte_carlo(const SeriesTable& table, const McOptions& opt);
McSummary run_monte_carlo(const WeightModel& model, long n_points, const McOptions& opt);

}  // namespace permcycles
