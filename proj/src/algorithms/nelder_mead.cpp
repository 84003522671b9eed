#include "archi/algorithms.hpp"

#include <algorithm>
#include <numeric>

namespace archi {

namespace {

    struct Simplex {
        std::vector<Individual> vertices;

        void sort()
        {
            std::stable_sort(vertices.begin(), vertices.end(),
                             [](const Individual& a, const Individual& b) { return a.f() < b.f(); });
        }

        // Largest coordinate distance to the best vertex, relative to range.
        double size(const Vector& width) const
        {
            double s = 0;
            for (std::size_t k = 1; k < vertices.size(); ++k) {
                const Vector d = (vertices[k].x() - vertices[0].x()).cwiseAbs();
                for (Eigen::Index i = 0; i < d.size(); ++i)
                    if (width[i] > 0)
                        s = std::max(s, d[i] / width[i]);
            }
            return s;
        }
    };

}  // namespace

// Reflection 1, expansion 2, contraction 0.5, shrink 0.5. New points are
// projected onto the box before evaluation.
void nelder_mead_evolve(Population& pop, const NelderMeadParams& p)
{
    algorithm::validate(p);
    detail::require_size(pop, 1, "nelder_mead");

    const Problem& problem = pop.problem();
    const auto& b = problem.bounds();
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    const Vector width = b.range();
    const std::size_t champ = pop.champion_index();

    Simplex s;
    s.vertices.push_back(pop[champ]);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Vector y = pop[champ].x();
        const double offset = 0.05 * width[i];
        y[i] = y[i] + offset <= b.upper()[i] ? y[i] + offset : y[i] - offset;
        s.vertices.push_back(detail::evaluate_repaired(problem, std::move(y)));
    }

    const std::size_t n = static_cast<std::size_t>(dim);
    for (std::size_t it = 0; it < p.generations; ++it) {
        s.sort();
        if (s.size(width) < p.xtol)
            break;

        Vector centroid = Vector::Zero(dim);
        for (std::size_t k = 0; k < n; ++k)
            centroid += s.vertices[k].x();
        centroid /= static_cast<double>(n);

        const Individual& worst = s.vertices[n];
        const double f_best = s.vertices[0].f();
        const double f_second = s.vertices[n - 1].f();

        Individual reflected = detail::evaluate_repaired(problem, reflect_through(centroid, worst.x(), 1.0));
        if (reflected.f() < f_best) {
            Individual expanded = detail::evaluate_repaired(problem, reflect_through(centroid, worst.x(), 2.0));
            s.vertices[n] = expanded.f() < reflected.f() ? std::move(expanded) : std::move(reflected);
            continue;
        }
        if (reflected.f() < f_second) {
            s.vertices[n] = std::move(reflected);
            continue;
        }
        const bool outside = reflected.f() < worst.f();
        Individual contracted = detail::evaluate_repaired(
            problem, outside ? reflect_through(centroid, worst.x(), 0.5) : reflect_through(centroid, worst.x(), -0.5));
        if (contracted.f() < std::min(reflected.f(), worst.f())) {
            s.vertices[n] = std::move(contracted);
            continue;
        }
        for (std::size_t k = 1; k <= n; ++k) {
            Vector y = s.vertices[0].x() + 0.5 * (s.vertices[k].x() - s.vertices[0].x());
            s.vertices[k] = detail::evaluate_repaired(problem, std::move(y));
        }
    }
    s.sort();
    if (s.vertices[0].f() <= pop[champ].f())
        pop.set(champ, s.vertices[0]);
}

}  // namespace archi
