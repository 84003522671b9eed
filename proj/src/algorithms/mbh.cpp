#include "archi/algorithms.hpp"

namespace archi {

void mbh_evolve(Population& pop, const MbhParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, 1, "mbh");

    const Problem& problem = pop.problem();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const Vector width = problem.bounds().range();

    std::size_t failures = 0;
    while (failures < p.stop_after) {
        Population trial(problem, pop.seed());
        for (const auto& ind : pop) {
            Vector y = ind.x();
            for (Eigen::Index i = 0; i < dim; ++i)
                y[i] += rng.uniform(-1.0, 1.0) * p.perturbation * width[i];
            trial.push_back(detail::evaluate_repaired(problem, std::move(y)));
        }
        p.inner.evolve(trial, rng);
        if (trial.champion().f() < pop.champion().f()) {
            pop = std::move(trial);
            failures = 0;
        } else {
            ++failures;
        }
    }
}

}  // namespace archi
