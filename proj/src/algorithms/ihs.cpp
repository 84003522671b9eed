#include "archi/algorithms.hpp"

#include <cmath>

namespace archi {

double ihs_pitch_rate(const IhsParams& p, std::size_t t, std::size_t n)
{
    if (n == 0)
        return p.par_min;
    return p.par_min + (p.par_max - p.par_min) * static_cast<double>(t) / static_cast<double>(n);
}

double ihs_bandwidth(const IhsParams& p, std::size_t t, std::size_t n)
{
    if (n == 0)
        return p.bw_max;
    return p.bw_max * std::exp(std::log(p.bw_min / p.bw_max) * static_cast<double>(t) / static_cast<double>(n));
}

void ihs_evolve(Population& pop, const IhsParams& p, Rng& rng)
{
    algorithm::validate(p);
    detail::require_size(pop, 2, "ihs");

    const Problem& problem = pop.problem();
    const auto& b = problem.bounds();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const Vector width = b.range();
    const std::size_t n = p.iterations;

    for (std::size_t t = 0; t < n; ++t) {
        const double par = ihs_pitch_rate(p, t, n);
        const double bw = ihs_bandwidth(p, t, n);
        Vector h(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (rng.uniform() < p.hmcr) {
                h[i] = pop[rng.index(pop.size())].x()[i];
                if (rng.uniform() < par) {
                    const double shift = rng.uniform() * bw * width[i];
                    h[i] += rng.uniform() < 0.5 ? -shift : shift;
                }
            } else {
                h[i] = rng.uniform(b.lower()[i], b.upper()[i]);
            }
        }
        Individual cand = detail::evaluate_repaired(problem, std::move(h));
        const std::size_t worst = pop.worst_index();
        if (cand.f() < pop[worst].f())
            pop.set(worst, std::move(cand));
    }
}

}  // namespace archi
