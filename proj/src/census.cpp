#include "harmlens/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "harmlens/errors.hpp"
#include "rng.hpp"

namespace harmlens {

bool CensusResult::all_within_bounds() const {
    return std::ranges::all_of(per_degree,
                               [](const DegreeCensus& d) { return d.within_bounds(); });
}

namespace {

Polynomial random_poly(SplitMix64& rng, int degree) {
    std::vector<Cx> coeffs(static_cast<std::size_t>(degree) + 1);
    for (Cx& c : coeffs) c = rng.complex_normal();
    // A tiny leading coefficient would silently drop the degree.
    while (std::abs(coeffs.back()) < 1e-3) coeffs.back() = rng.complex_normal();
    return Polynomial(std::move(coeffs));
}

struct TrialOutcome {
    int zero_count = 0;
    int n_plus = 0;
    bool perturbed = false;
    bool singular = false;
    bool failed = false;
};

}  // namespace

Rational random_rational(int degree, std::uint64_t seed) {
    if (degree < 1) throw InvalidInputError("census degree must be at least 1");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Polynomial num = random_poly(rng, degree);
        Polynomial den = random_poly(rng, degree);
        if (coprimality_check(num, den)) return Rational(std::move(num), std::move(den));
    }
    throw NonConvergentError("could not draw a coprime numerator/denominator pair");
}

CensusResult run_bound_census(const CensusOptions& opts, std::FILE* log) {
    if (opts.trials < 1) throw InvalidInputError("census needs at least one trial");
    for (int degree : opts.degrees) {
        if (degree < 2) throw InvalidInputError("census degrees must be at least 2");
    }

    int workers = opts.workers > 0 ? opts.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, opts.trials);

    CensusResult result;
    result.seed = opts.seed;

    for (int degree : opts.degrees) {
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(opts.trials));
        std::atomic<int> next_trial{0};
        std::mutex log_mutex;

        auto worker = [&] {
            while (true) {
                const int trial = next_trial.fetch_add(1);
                if (trial >= opts.trials) return;
                const std::uint64_t trial_seed =
                    mix_seed(opts.seed, static_cast<std::uint64_t>(degree),
                             static_cast<std::uint64_t>(trial));
                TrialOutcome& out = outcomes[static_cast<std::size_t>(trial)];
                try {
                    const Rational r = random_rational(degree, trial_seed);
                    const SolveReport report = solve_zeros(r, opts.solve);
                    out.zero_count = static_cast<int>(report.zeros.size());
                    out.n_plus = report.n_plus;
                    out.perturbed = report.perturbation_applied.has_value();
                    out.singular = report.n_singular > 0;
                } catch (const Error&) {
                    out.failed = true;
                }
                if (log != nullptr) {
                    const std::lock_guard<std::mutex> guard(log_mutex);
                    std::fprintf(log, "census degree=%d trial=%d zeros=%d n_plus=%d%s%s\n",
                                 degree, trial, out.zero_count, out.n_plus,
                                 out.perturbed ? " perturbed" : "",
                                 out.failed ? " failed" : "");
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();

        DegreeCensus census;
        census.degree = degree;
        census.trials = opts.trials;
        std::vector<int> histogram;
        for (int trial = 0; trial < opts.trials; ++trial) {
            const TrialOutcome& out = outcomes[static_cast<std::size_t>(trial)];
            if (out.failed) {
                // A non-convergent trial cannot certify or violate the
                // bound; count it as singular so it stays visible.
                census.singular_trials += 1;
                continue;
            }
            census.max_zeros = std::max(census.max_zeros, out.zero_count);
            census.max_n_plus = std::max(census.max_n_plus, out.n_plus);
            if (out.zero_count >= static_cast<int>(histogram.size())) {
                histogram.resize(static_cast<std::size_t>(out.zero_count) + 1, 0);
            }
            histogram[static_cast<std::size_t>(out.zero_count)] += 1;
            if (out.perturbed) census.perturbed_trials += 1;
            if (out.singular) census.singular_trials += 1;
            if (out.zero_count > census.zero_bound() || out.n_plus > census.preserving_bound()) {
                const std::uint64_t trial_seed =
                    mix_seed(opts.seed, static_cast<std::uint64_t>(degree),
                             static_cast<std::uint64_t>(trial));
                ViolationReproducer repro;
                repro.seed = opts.seed;
                repro.degree = degree;
                repro.trial = trial;
                repro.function = random_rational(degree, trial_seed);
                repro.zero_count = out.zero_count;
                repro.n_plus = out.n_plus;
                census.violations.push_back(std::move(repro));
            }
        }
        for (int count = 0; count < static_cast<int>(histogram.size()); ++count) {
            if (histogram[static_cast<std::size_t>(count)] > 0) {
                census.zero_histogram.emplace_back(count,
                                                   histogram[static_cast<std::size_t>(count)]);
            }
        }
        result.per_degree.push_back(std::move(census));
    }
    return result;
}

}  // namespace harmlens
