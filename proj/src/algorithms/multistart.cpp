#include "archi/algorithms.hpp"

namespace archi {

void multistart_evolve(Population& pop, const Algorithm& inner, std::size_t starts, Rng& rng,
                       std::vector<Individual>* collected)
{
    detail::require_size(pop, 1, "multistart");
    const Problem& problem = pop.problem();

    Individual best = pop.champion();
    Population working = pop;
    for (std::size_t s = 0; s < starts; ++s) {
        working = Population(problem, pop.seed());
        for (std::size_t k = 0; k < pop.size(); ++k)
            working.push_back(random_individual(problem, rng));
        inner.evolve(working, rng);
        const Individual& c = working.champion();
        if (collected)
            collected->push_back(c);
        if (c.f() < best.f())
            best = c;
    }
    if (working.champion().f() > best.f())
        working.set(working.worst_index(), best);
    pop = std::move(working);
}

}  // namespace archi
