#pragma once

// Event-driven (Gillespie) simulation of n independent two-state cells:
// an empty cell fills at rate alpha, a filled cell empties at rate beta.
//
// Trial i draws from its own engine seeded by trial_seed(seed, i), so a
// trial's path does not depend on which worker runs it or in what order.

#include <cstdint>
#include <random>
#include <vector>

#include "skac/matrices.hpp"

namespace skac {

enum class StateMode {
    Count,    // birth-death chain on the number of filled cells
    PerCell,  // explicit cell array; the flipping cell is chosen by rate
};

/// Starting occupancy: a fixed count, independent Bernoulli(probability)
/// cells, or cells drawn from the equilibrium fill probability.
struct InitialCondition {
    enum class Kind { Fixed, Bernoulli, Equilibrium };
    Kind kind = Kind::Fixed;
    long filled = 0;
    double probability = 0.0;

    static InitialCondition fixed(long filled) { return {Kind::Fixed, filled, 0.0}; }
    static InitialCondition bernoulli(double p) { return {Kind::Bernoulli, 0, p}; }
    static InitialCondition equilibrium() { return {Kind::Equilibrium, 0, 0.0}; }
};

struct SimConfig {
    ModelParams params;
    long trials = 1;
    std::uint64_t seed = 0;
    std::vector<double> t_grid;
    StateMode mode = StateMode::Count;
    unsigned workers = 1;

    /// Throws std::invalid_argument on trials < 1, an empty, negative or
    /// descending grid, or workers == 0.
    void validate() const;
};

/// SplitMix64-mixed seed for trial `trial` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Per-trial random stream: std::mt19937_64 plus fixed conversions to
/// uniforms so the draws are identical on every standard library.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(trial_seed(seed, trial)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open_zero() { return 1.0 - uniform(); }
    /// Exponential waiting time with the given rate (> 0).
    double exponential(double rate);

private:
    std::mt19937_64 engine_;
};

/// Piecewise-constant occupancy path: occupancy[i] holds on
/// [times[i], times[i+1]). times[0] = 0.
struct Trajectory {
    std::vector<double> times;
    std::vector<long> occupancy;
    double t_end = 0.0;

    /// Occupancy at time t (events at exactly t are included).
    long at(double t) const;
    long final_occupancy() const { return occupancy.back(); }
};

/// One path up to t_end starting from `initial_filled` filled cells.
/// With m filled the total rate is (n-m) alpha + m beta; a zero total rate
/// (m = n, beta = 0) is absorbing.
Trajectory run_trajectory(const ModelParams& params, TrialRng& rng, double t_end, long initial_filled,
                          StateMode mode = StateMode::Count);

/// Draws the initial occupancy for one trial.
long sample_initial(const ModelParams& params, const InitialCondition& init, TrialRng& rng);

class EmpiricalDistribution {
public:
    EmpiricalDistribution(long n, long trials, std::vector<double> t_grid);

    long n() const { return n_; }
    long trials() const { return trials_; }
    const std::vector<double>& t_grid() const { return t_grid_; }

    long count(size_t time_index, long k) const { return counts_[time_index][static_cast<size_t>(k)]; }
    void add(size_t time_index, long k, long amount = 1) { counts_[time_index][static_cast<size_t>(k)] += amount; }

    double frequency(size_t time_index, long k) const;
    /// sqrt(f (1 - f) / trials)
    double standard_error(size_t time_index, long k) const;
    std::vector<double> frequencies(size_t time_index) const;

    friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

private:
    long n_;
    long trials_;
    std::vector<double> t_grid_;
    std::vector<std::vector<long>> counts_;  // [time][k]
};

/// Histogram of occupancy at every grid time over config.trials
/// independent trials, split across config.workers threads.
EmpiricalDistribution estimate_Qk(const SimConfig& config, const InitialCondition& init);

struct CoverageEstimate {
    double t = 0.0;
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Sample mean occupancy and its standard error at each grid time.
std::vector<CoverageEstimate> coverage_from(const EmpiricalDistribution& dist);
std::vector<CoverageEstimate> estimate_coverage(const SimConfig& config, const InitialCondition& init);

/// (1/2) sum |a_k - b_k|
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace skac
