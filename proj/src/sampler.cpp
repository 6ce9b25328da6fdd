#include "permcycles/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <exception>
#include <mutex>
#include <thread>

#include "permcycles/error.hpp"

namespace permcycles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct BlockResult {
    std::vector<long long> c_sum, c_sumsq;
    std::vector<long> t_values;
    std::vector<std::vector<long>> top;
    std::vector<std::pair<long, long>> first_two;
    std::vector<CycleType> samples;
    bool ok = true;
};

}  // namespace

long CycleType::total_points() const {
    long s = 0;
    for (long l : lengths) s += l;
    return s;
}

long CycleType::count(long j) const { return static_cast<long>(std::count(lengths.begin(), lengths.end(), j)); }

CycleType sample_cycle_type(const SeriesTable& t, Rng& rng) {
    const long N = t.n_points;
    if (t.n_max() < N) throw DomainError("sample_cycle_type: table must reach n = N");
    CycleType ct;
    long n = N;
    while (n > 0) {
        if (t.log_h[n] == kNegInf) throw DomainError("sample_cycle_type: h_n = 0 for a reachable n (model support)");
        const double base = std::log(static_cast<double>(n)) + t.log_h[n];
        const double u = uniform01(rng);
        double cum = 0.0;
        long chosen = 0, last_positive = 0;
        for (long l = 1; l <= n; ++l) {
            const double lp = t.log_weights[l] + t.log_h[n - l];
            if (lp == kNegInf) continue;
            cum += std::exp(lp - base);
            last_positive = l;
            if (u < cum) {
                chosen = l;
                break;
            }
        }
        if (chosen == 0) chosen = last_positive;  // rounding leaves total mass a few ulps below 1
        ct.lengths.push_back(chosen);
        n -= chosen;
    }
    return ct;
}

std::vector<long> ordered_lengths(const CycleType& ct) {
    std::vector<long> v = ct.lengths;
    std::stable_sort(v.begin(), v.end(), std::greater<long>());
    return v;
}

McSummary run_monte_carlo(const SeriesTable& t, const McOptions& opt) {
    if (opt.n_samples < 1) throw DomainError("run_monte_carlo: need at least one sample");
    if (opt.block_size < 1) throw DomainError("run_monte_carlo: block size must be positive");
    const long N = t.n_points;
    const long n_blocks = (opt.n_samples + opt.block_size - 1) / opt.block_size;
    std::vector<BlockResult> blocks(n_blocks);

    auto run_block = [&](long b) {
        BlockResult& r = blocks[b];
        r.c_sum.assign(N + 1, 0);
        r.c_sumsq.assign(N + 1, 0);
        Rng rng = make_stream(opt.seed, static_cast<std::uint64_t>(b));
        const long begin = b * opt.block_size;
        const long end = std::min(opt.n_samples, begin + opt.block_size);
        std::vector<long> counts(N + 1, 0);
        for (long i = begin; i < end; ++i) {
            CycleType ct = sample_cycle_type(t, rng);
            if (ct.total_points() != N) r.ok = false;
            for (long l : ct.lengths) ++counts[l];
            for (long l : ct.lengths) {
                if (counts[l] == 0) continue;
                r.c_sum[l] += counts[l];
                r.c_sumsq[l] += static_cast<long long>(counts[l]) * counts[l];
                counts[l] = 0;
            }
            r.t_values.push_back(ct.num_cycles());
            auto ord = ordered_lengths(ct);
            ord.resize(std::max(opt.top_k, 0), 0);
            r.top.push_back(std::move(ord));
            r.first_two.emplace_back(ct.lengths[0], ct.lengths.size() > 1 ? ct.lengths[1] : 0);
            if (opt.keep_samples) r.samples.push_back(std::move(ct));
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n_blocks)));
    if (n_threads == 1) {
        for (long b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned k = 0; k < n_threads; ++k) {
            pool.emplace_back([&] {
                try {
                    for (long b = next++; b < n_blocks; b = next++) run_block(b);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    McSummary s;
    s.n_points = N;
    s.n_samples = opt.n_samples;
    s.seed = opt.seed;
    std::vector<long long> c_sum(N + 1, 0), c_sumsq(N + 1, 0);
    for (auto& r : blocks) {
        for (long j = 1; j <= N; ++j) {
            c_sum[j] += r.c_sum[j];
            c_sumsq[j] += r.c_sumsq[j];
        }
        s.t_values.insert(s.t_values.end(), r.t_values.begin(), r.t_values.end());
        for (auto& v : r.top) s.top_lengths.push_back(std::move(v));
        s.first_two.insert(s.first_two.end(), r.first_two.begin(), r.first_two.end());
        for (auto& ct : r.samples) s.samples.push_back(std::move(ct));
        s.sum_lengths_ok = s.sum_lengths_ok && r.ok;
    }
    const double M = static_cast<double>(opt.n_samples);
    s.c_mean.resize(N);
    s.c_var.resize(N);
    for (long j = 1; j <= N; ++j) {
        const double mean = static_cast<double>(c_sum[j]) / M;
        s.c_mean[j - 1] = mean;
        s.c_var[j - 1] = M > 1 ? (static_cast<double>(c_sumsq[j]) - M * mean * mean) / (M - 1.0) : 0.0;
    }
    for (long tv : s.t_values) ++s.t_hist[tv];
    return s;
}

McSummary run_monte_carlo(const WeightModel& model, long n_points, const McOptions& opt) {
    return run_monte_carlo(build_table(model, n_points), opt);
}

}  // namespace permcycles
