#include "archi/algorithms.hpp"

namespace archi {

Vector binomial_crossover(const VectorRef& target, const VectorRef& mutant, double CR, std::size_t forced,
                          Rng& rng)
{
    Vector trial = target;
    for (Eigen::Index j = 0; j < trial.size(); ++j) {
        if (static_cast<std::size_t>(j) == forced || rng.uniform() < CR)
            trial[j] = mutant[j];
    }
    return trial;
}

void de_evolve(Population& pop, const DeParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, 5, "de");

    const Problem& problem = pop.problem();
    const std::size_t size = pop.size();
    const std::size_t dim = problem.dimension();

    std::vector<Individual> next(pop.begin(), pop.end());
    for (std::size_t gen = 0; gen < p.generations; ++gen) {
        // Trials of one generation are all built from the previous one.
        for (std::size_t i = 0; i < size; ++i) {
            std::size_t r1, r2, r3;
            do { r1 = rng.index(size); } while (r1 == i);
            do { r2 = rng.index(size); } while (r2 == i || r2 == r1);
            do { r3 = rng.index(size); } while (r3 == i || r3 == r1 || r3 == r2);

            const Vector mutant = de_mutant(pop[r1].x(), pop[r2].x(), pop[r3].x(), p.F);
            Vector trial = binomial_crossover(pop[i].x(), mutant, p.CR, rng.index(dim), rng);
            Individual candidate = detail::evaluate_repaired(problem, std::move(trial));
            next[i] = candidate.f() <= pop[i].f() ? std::move(candidate) : pop[i];
        }
        for (std::size_t i = 0; i < size; ++i)
            pop.set(i, next[i]);
    }
}

}  // namespace archi
