#include "skac/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace skac {

void SimConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("SimConfig: trials must be >= 1");
    }
    if (t_grid.empty()) {
        throw std::invalid_argument("SimConfig: time grid is empty");
    }
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || t_grid[i] < 0) {
            throw std::invalid_argument("SimConfig: grid times must be finite and >= 0");
        }
        if (i > 0 && t_grid[i] < t_grid[i - 1]) {
            throw std::invalid_argument("SimConfig: time grid must be ascending");
        }
    }
    if (workers == 0) {
        throw std::invalid_argument("SimConfig: workers must be >= 1");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(splitmix64(seed) ^ trial); }

double TrialRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double TrialRng::exponential(double rate) { return -std::log(uniform_open_zero()) / rate; }

long Trajectory::at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    return occupancy[static_cast<size_t>(std::distance(times.begin(), it)) - 1];
}

namespace {

// Shared event loop. `visit(time, occupancy)` is called once at t = 0 and
// after each event up to t_end.
class CellProcess {
public:
    CellProcess(const ModelParams& params, long initial_filled, StateMode mode)
        : n_(params.n()), alpha_(params.alpha().to_double()), beta_(params.beta().to_double()),
          filled_(initial_filled), mode_(mode) {
        if (initial_filled < 0 || initial_filled > n_) {
            throw std::invalid_argument("run_trajectory: initial occupancy outside 0..n");
        }
        if (mode_ == StateMode::PerCell) {
            cells_.assign(static_cast<size_t>(n_), 0);
            std::fill_n(cells_.begin(), initial_filled, 1);
        }
    }

    long filled() const { return filled_; }

    double total_rate() const {
        return static_cast<double>(n_ - filled_) * alpha_ + static_cast<double>(filled_) * beta_;
    }

    // Applies one event; `u` is uniform on [0, 1).
    void fire(double u) {
        const double rate = total_rate();
        const double target = u * rate;
        if (mode_ == StateMode::Count) {
            filled_ += (target < static_cast<double>(n_ - filled_) * alpha_) ? 1 : -1;
            return;
        }
        double acc = 0.0;
        size_t chosen = cells_.size() - 1;
        for (size_t i = 0; i < cells_.size(); ++i) {
            acc += cells_[i] ? beta_ : alpha_;
            if (target < acc) {
                chosen = i;
                break;
            }
        }
        // skip zero-rate cells that rounding could land on
        while (chosen > 0 && (cells_[chosen] ? beta_ : alpha_) == 0.0) --chosen;
        cells_[chosen] ^= 1;
        filled_ += cells_[chosen] ? 1 : -1;
    }

private:
    long n_;
    double alpha_;
    double beta_;
    long filled_;
    StateMode mode_;
    std::vector<unsigned char> cells_;
};

template <class Visit>
void simulate(const ModelParams& params, TrialRng& rng, double t_end, long initial_filled, StateMode mode,
              Visit&& visit) {
    CellProcess process(params, initial_filled, mode);
    double t = 0.0;
    visit(t, process.filled());
    for (;;) {
        const double rate = process.total_rate();
        if (rate <= 0.0) {
            return;  // absorbing
        }
        t += rng.exponential(rate);
        if (t > t_end) {
            return;
        }
        process.fire(rng.uniform());
        visit(t, process.filled());
    }
}

}  // namespace

Trajectory run_trajectory(const ModelParams& params, TrialRng& rng, double t_end, long initial_filled,
                          StateMode mode) {
    if (!(t_end >= 0)) {
        throw std::invalid_argument("run_trajectory: t_end must be >= 0");
    }
    Trajectory path;
    path.t_end = t_end;
    simulate(params, rng, t_end, initial_filled, mode, [&path](double t, long m) {
        path.times.push_back(t);
        path.occupancy.push_back(m);
    });
    return path;
}

long sample_initial(const ModelParams& params, const InitialCondition& init, TrialRng& rng) {
    switch (init.kind) {
        case InitialCondition::Kind::Fixed:
            if (init.filled < 0 || init.filled > params.n()) {
                throw std::invalid_argument("initial condition: filled count outside 0..n");
            }
            return init.filled;
        case InitialCondition::Kind::Bernoulli:
        case InitialCondition::Kind::Equilibrium: {
            const double p = init.kind == InitialCondition::Kind::Bernoulli
                                 ? init.probability
                                 : params.fill_probability().to_double();
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("initial condition: probability outside [0, 1]");
            }
            long m = 0;
            for (long i = 0; i < params.n(); ++i) {
                if (rng.uniform() < p) ++m;
            }
            return m;
        }
    }
    throw std::logic_error("sample_initial: unknown kind");
}

EmpiricalDistribution::EmpiricalDistribution(long n, long trials, std::vector<double> t_grid)
    : n_(n), trials_(trials), t_grid_(std::move(t_grid)),
      counts_(t_grid_.size(), std::vector<long>(static_cast<size_t>(n + 1), 0)) {}

double EmpiricalDistribution::frequency(size_t time_index, long k) const {
    return static_cast<double>(count(time_index, k)) / static_cast<double>(trials_);
}

double EmpiricalDistribution::standard_error(size_t time_index, long k) const {
    const double f = frequency(time_index, k);
    return std::sqrt(f * (1.0 - f) / static_cast<double>(trials_));
}

std::vector<double> EmpiricalDistribution::frequencies(size_t time_index) const {
    std::vector<double> out;
    for (long k = 0; k <= n_; ++k) out.push_back(frequency(time_index, k));
    return out;
}

EmpiricalDistribution estimate_Qk(const SimConfig& config, const InitialCondition& init) {
    config.validate();
    const auto& grid = config.t_grid;
    const double t_end = grid.back();
    const long trials = config.trials;
    const unsigned workers = static_cast<unsigned>(std::min<long>(config.workers, trials));

    auto run_range = [&](long begin, long end) {
        EmpiricalDistribution local(config.params.n(), trials, grid);
        for (long trial = begin; trial < end; ++trial) {
            TrialRng rng(config.seed, static_cast<std::uint64_t>(trial));
            const long start = sample_initial(config.params, init, rng);
            size_t next = 0;
            long current = start;
            simulate(config.params, rng, t_end, start, config.mode, [&](double t, long m) {
                while (next < grid.size() && grid[next] < t) {
                    local.add(next, current);
                    ++next;
                }
                current = m;
            });
            for (; next < grid.size(); ++next) local.add(next, current);
        }
        return local;
    };

    std::vector<EmpiricalDistribution> partial(workers, EmpiricalDistribution(config.params.n(), trials, grid));
    if (workers == 1) {
        partial[0] = run_range(0, trials);
    } else {
        std::vector<std::jthread> threads;
        const long chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const long begin = std::min<long>(trials, w * chunk);
            const long end = std::min<long>(trials, begin + chunk);
            threads.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
        }
    }

    EmpiricalDistribution total(config.params.n(), trials, grid);
    for (const auto& p : partial) {
        for (size_t ti = 0; ti < grid.size(); ++ti) {
            for (long k = 0; k <= config.params.n(); ++k) total.add(ti, k, p.count(ti, k));
        }
    }
    return total;
}

std::vector<CoverageEstimate> coverage_from(const EmpiricalDistribution& dist) {
    std::vector<CoverageEstimate> out;
    const auto trials = static_cast<double>(dist.trials());
    for (size_t ti = 0; ti < dist.t_grid().size(); ++ti) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (long k = 0; k <= dist.n(); ++k) {
            const auto c = static_cast<double>(dist.count(ti, k));
            sum += c * static_cast<double>(k);
            sum_sq += c * static_cast<double>(k) * static_cast<double>(k);
        }
        const double mean = sum / trials;
        double se = 0.0;
        if (dist.trials() > 1) {
            const double var = std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1.0));
            se = std::sqrt(var / trials);
        }
        out.push_back({dist.t_grid()[ti], mean, se});
    }
    return out;
}

std::vector<CoverageEstimate> estimate_coverage(const SimConfig& config, const InitialCondition& init) {
    return coverage_from(estimate_Qk(config, init));
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total_variation: length mismatch");
    }
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace skac
