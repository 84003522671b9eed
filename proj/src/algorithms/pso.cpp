#include "archi/algorithms.hpp"

namespace archi {

void pso_evolve(Population& pop, const PsoParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, 2, "pso");

    const Problem& problem = pop.problem();
    const auto& b = problem.bounds();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const std::size_t size = pop.size();
    const Vector vmax = p.max_velocity_fraction * b.range();

    // Positions start at the stored personal bests; velocities are drawn
    // afresh on every call since the population does not carry them.
    std::vector<Vector> x(size);
    std::vector<Vector> v(size);
    for (std::size_t k = 0; k < size; ++k) {
        x[k] = pop[k].x();
        v[k].resize(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            v[k][i] = rng.uniform(-vmax[i], vmax[i]);
    }
    std::size_t gbest = pop.champion_index();

    for (std::size_t gen = 0; gen < p.generations; ++gen) {
        for (std::size_t k = 0; k < size; ++k) {
            const Vector& pbest = pop[k].x();
            const Vector& g = pop[gbest].x();
            for (Eigen::Index i = 0; i < dim; ++i) {
                const double u1 = rng.uniform();
                const double u2 = rng.uniform();
                double vi = pso_velocity(v[k][i], x[k][i], pbest[i], g[i], p.inertia, p.cognitive, p.social, u1, u2);
                vi = std::clamp(vi, -vmax[i], vmax[i]);
                double xi = x[k][i] + vi;
                if (xi < b.lower()[i]) {
                    xi = b.lower()[i];
                    vi = 0;
                } else if (xi > b.upper()[i]) {
                    xi = b.upper()[i];
                    vi = 0;
                }
                v[k][i] = vi;
                x[k][i] = xi;
            }
            Individual cand = detail::evaluate_repaired(problem, x[k]);
            if (cand.f() < pop[k].f()) {
                pop.set(k, std::move(cand));
                if (pop[k].f() < pop[gbest].f())
                    gbest = k;
            }
        }
    }
}

}  // namespace archi
