#include "archi/algorithms.hpp"

namespace archi {

// Polls +step then -step along each coordinate in order and moves to the
// first improving point; a full unsuccessful sweep shrinks the step.
void compass_evolve(Population& pop, const CompassParams& p)
{
    algorithm::validate(p);
    detail::require_size(pop, 1, "compass");

    const Problem& problem = pop.problem();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const Vector width = problem.bounds().range();

    const std::size_t champ = pop.champion_index();
    Individual current = pop[champ];
    double step = p.start_step;
    std::size_t used = 0;

    while (step >= p.stop_step && used < p.max_evaluations) {
        bool improved = false;
        for (Eigen::Index i = 0; i < dim && !improved && used < p.max_evaluations; ++i) {
            for (double sign : {1.0, -1.0}) {
                if (used >= p.max_evaluations)
                    break;
                Vector y = current.x();
                y[i] += sign * step * width[i];
                Individual cand = detail::evaluate_repaired(problem, std::move(y));
                ++used;
                if (cand.f() < current.f()) {
                    current = std::move(cand);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved)
            step *= p.reduction;
    }
    pop.set(champ, current);
}

}  // namespace archi
