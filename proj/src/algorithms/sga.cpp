#include "archi/algorithms.hpp"

#include <algorithm>
#include <cmath>

namespace archi {

namespace {

    std::size_t run_tournament(const Population& pop, std::size_t tsize, Rng& rng)
    {
        std::vector<std::size_t> contenders(tsize);
        for (auto& c : contenders)
            c = rng.index(pop.size());
        return tournament_winner(pop, contenders);
    }

}  // namespace

void sga_evolve(Population& pop, const SgaParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, std::max<std::size_t>(2, p.tournament_size), "sga");
    if (p.elitism_count > pop.size())
        throw std::invalid_argument("sga: elitism_count exceeds population size");

    const Problem& problem = pop.problem();
    const auto& b = problem.bounds();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const std::size_t size = pop.size();

    for (std::size_t gen = 0; gen < p.generations; ++gen) {
        // Elites keep their slots; every other slot receives a child.
        const auto ranking = pop.ranking();
        std::vector<bool> elite(size, false);
        for (std::size_t e = 0; e < p.elitism_count; ++e)
            elite[ranking[e]] = true;

        std::vector<Individual> next(pop.begin(), pop.end());
        for (std::size_t slot = 0; slot < size; ++slot) {
            if (elite[slot])
                continue;
            const std::size_t a = run_tournament(pop, p.tournament_size, rng);
            const std::size_t c = run_tournament(pop, p.tournament_size, rng);
            const Vector& xa = pop[a].x();
            const Vector& xc = pop[c].x();
            Vector child = xa;
            bool changed = false;

            if (rng.uniform() < p.crossover_prob) {
                changed = true;
                for (Eigen::Index i = 0; i < dim; ++i) {
                    if (problem.is_integer(static_cast<std::size_t>(i))) {
                        child[i] = rng.uniform() < 0.5 ? xa[i] : xc[i];
                    } else {
                        const double alpha = rng.uniform();
                        child[i] = alpha * xa[i] + (1.0 - alpha) * xc[i];
                    }
                }
            }
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (rng.uniform() >= p.mutation_prob)
                    continue;
                changed = true;
                if (problem.is_integer(static_cast<std::size_t>(i))) {
                    child[i] = static_cast<double>(rng.integer(static_cast<std::int64_t>(std::ceil(b.lower()[i])),
                                                               static_cast<std::int64_t>(std::floor(b.upper()[i]))));
                } else {
                    child[i] = rng.uniform(b.lower()[i], b.upper()[i]);
                }
            }
            if (changed)
                next[slot] = detail::evaluate_repaired(problem, std::move(child));
            else
                next[slot] = pop[a];
        }
        for (std::size_t i = 0; i < size; ++i)
            pop.set(i, next[i]);
    }
}

}  // namespace archi
