#include "archi/algorithms.hpp"

namespace archi {

void monte_carlo_evolve(Population& pop, std::size_t evaluations, Rng& rng)
{
    detail::require_size(pop, 1, "monte_carlo");
    const Problem& problem = pop.problem();
    for (std::size_t k = 0; k < evaluations; ++k) {
        Individual cand = random_individual(problem, rng);
        const std::size_t worst = pop.worst_index();
        if (cand.f() < pop[worst].f())
            pop.set(worst, std::move(cand));
    }
}

}  // namespace archi
