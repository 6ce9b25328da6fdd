#pragma once

#include <string>
#include <utility>
#include <vector>

#include "permcycles/weights.hpp"

namespace permcycles::validation {

// The three models every cross-check runs on.
WeightModel constant_model();        // theta_j = 1, kappa_j = 1
WeightModel supercritical_model();   // theta_j = 1, kappa_j = (0.5 / zeta(2)) j^-2
WeightModel giant_cycle_model();     // theta_j = j^-1/2, base kappa_j = j^-2, rho = 2 zeta(2)
WeightModel critical_model();        // theta_j = 1, kappa_j = j^-2.5 / zeta(2.5)

struct NamedModel {
    std::string name;
    WeightModel model;
};
std::vector<NamedModel> reference_models();

// Exact law of the cycle type for small N by enumerating integer partitions.
// A type (c_1..c_N) has weight prod_j (w_j / j)^{c_j} / c_j!, which is the
// Cauchy count N!/prod j^{c_j} c_j! times prod w_j^{c_j}, divided by N!.
struct BruteForceLaw {
    long n_points = 0;
    double H = 0.0;
    std::vector<std::vector<long>> counts;  // counts[t][j] = c_j for type t (index 0 unused)
    std::vector<double> prob;

    double expected_count(long j) const;
    double factorial_moment(const std::vector<std::pair<long, long>>& spec) const;
    std::vector<double> l1_pmf() const;
    // P(L_1 = a, L_2 = b), with b = 0 meaning the first cycle covers everything
    double joint_l12(long a, long b) const;
    std::vector<double> tn_pmf() const;  // index k = 0..N
};

constexpr long kBruteForceMax = 9;
BruteForceLaw brute_force_oracle(const WeightModel& model, long n_points);

struct OracleResult {
    std::string name;
    double value = 0.0;
    double oracle = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
OracleResult compare(std::string name, double value, double oracle, double tolerance);

enum class Quantity { PartitionFunction, FirstCycleCount, LongFraction };

struct ConvergenceRow {
    long n_points;
    double exact;
    double asymptotic;
    double ratio;
};
// PartitionFunction: exact and asymptotic are log H_N, ratio = exp(difference).
// FirstCycleCount: E[C_1]/N against kappa_1 r_*.
// LongFraction: finite-N long fraction beyond K against nu~_K.
std::vector<ConvergenceRow> convergence_study(const WeightModel& model, Quantity q, const std::vector<long>& n_grid,
                                              long K = 1);

struct SuiteReport {
    std::string suite;
    std::vector<OracleResult> results;
    bool all_pass() const;
};
SuiteReport run_suite(const std::string& suite);

}  // namespace permcycles::validation
