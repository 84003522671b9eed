#include "archi/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace archi {

double metropolis_probability(double delta, double temperature)
{
    if (delta <= 0)
        return 1.0;
    if (temperature <= 0)
        return 0.0;
    return std::exp(-delta / temperature);
}

double corana_step_update(double step, double acceptance_ratio)
{
    constexpr double c = 2.0;
    if (acceptance_ratio > 0.6)
        return step * (1.0 + c * (acceptance_ratio - 0.6) / 0.4);
    if (acceptance_ratio < 0.4)
        return step / (1.0 + c * (0.4 - acceptance_ratio) / 0.4);
    return step;
}

// One pass over all coordinates is a cycle. Every step_adjust_interval cycles
// the per-coordinate neighbourhood is rescaled towards 50% acceptance; every
// temp_adjust_interval rescalings the temperature drops by a constant ratio,
// chosen so the last level of the budget runs at t_final.
void sa_corana_evolve(Population& pop, const SaCoranaParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, 1, "sa_corana");

    const Problem& problem = pop.problem();
    const auto& b = problem.bounds();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const Vector width = b.range();

    const std::size_t champ = pop.champion_index();
    Vector x = pop[champ].x();
    double fx = pop[champ].f();
    Individual best = pop[champ];

    const std::size_t evals_per_level = p.step_adjust_interval * p.temp_adjust_interval * problem.dimension();
    const std::size_t levels = std::max<std::size_t>(1, p.evaluations / evals_per_level);
    const double ratio = levels > 1 ? std::pow(p.t_final / p.t_start, 1.0 / static_cast<double>(levels - 1)) : 1.0;

    Vector step = Vector::Constant(dim, p.initial_range);
    Eigen::VectorXi accepted = Eigen::VectorXi::Zero(dim);
    double temperature = p.t_start;
    std::size_t used = 0;

    for (std::size_t level = 0; used < p.evaluations; ++level) {
        if (level > 0 && level < levels)
            temperature *= ratio;
        for (std::size_t adj = 0; adj < p.temp_adjust_interval && used < p.evaluations; ++adj) {
            for (std::size_t cycle = 0; cycle < p.step_adjust_interval && used < p.evaluations; ++cycle) {
                for (Eigen::Index i = 0; i < dim && used < p.evaluations; ++i) {
                    const double half = step[i] * width[i];
                    const double lo = std::max(b.lower()[i], x[i] - half);
                    const double hi = std::min(b.upper()[i], x[i] + half);
                    Vector y = x;
                    y[i] = rng.uniform(lo, hi);
                    Individual cand = detail::evaluate_repaired(problem, std::move(y));
                    ++used;
                    const double delta = cand.f() - fx;
                    if (delta <= 0 || rng.uniform() < metropolis_probability(delta, temperature)) {
                        x = cand.x();
                        fx = cand.f();
                        ++accepted[i];
                        if (fx < best.f())
                            best = cand;
                    }
                }
            }
            for (Eigen::Index i = 0; i < dim; ++i) {
                const double ratio_i = static_cast<double>(accepted[i]) / static_cast<double>(p.step_adjust_interval);
                step[i] = std::min(corana_step_update(step[i], ratio_i), p.initial_range);
            }
            accepted.setZero();
        }
    }
    pop.set(champ, best);
}

}  // namespace archi
