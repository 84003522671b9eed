#include "archi/algorithms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace archi {

Algorithm::Algorithm(std::string name, EvolveFn evolve, BudgetFn budget)
    : name_(std::move(name)),
      evolve_(std::make_shared<const EvolveFn>(std::move(evolve))),
      budget_(std::make_shared<const BudgetFn>(std::move(budget)))
{
    if (!*evolve_)
        throw std::invalid_argument("Algorithm '" + name_ + "': empty evolve function");
}

std::optional<std::uint64_t> Algorithm::max_evaluations(std::size_t pop_size, std::size_t dim) const
{
    if (!*budget_)
        return std::nullopt;
    return (*budget_)(pop_size, dim);
}

std::size_t tournament_winner(const Population& pop, const std::vector<std::size_t>& contenders)
{
    if (contenders.empty())
        throw std::invalid_argument("tournament_winner: no contenders");
    std::size_t best = contenders.front();
    for (std::size_t c : contenders)
        if (pop[c].f() < pop[best].f())
            best = c;
    return best;
}

namespace detail {
    void require_size(const Population& pop, std::size_t min_size, const char* who)
    {
        if (pop.size() < min_size)
            throw std::invalid_argument(std::string(who) + ": population size " + std::to_string(pop.size()) +
                                        " is below the minimum of " + std::to_string(min_size));
    }
}  // namespace detail

namespace algorithm {

    namespace {
        void require(bool ok, const std::string& what)
        {
            if (!ok)
                throw std::invalid_argument(what);
        }
    }  // namespace

    void validate(const DeParams& p)
    {
        require(p.F > 0 && p.F <= 2, "de: F must lie in (0, 2]");
        require(p.CR >= 0 && p.CR <= 1, "de: CR must lie in [0, 1]");
    }

    void validate(const SaCoranaParams& p)
    {
        require(p.evaluations >= 1, "sa_corana: evaluations must be at least 1");
        require(p.t_start > 0, "sa_corana: t_start must be positive");
        require(p.t_final > 0 && p.t_final < p.t_start, "sa_corana: t_final must lie in (0, t_start)");
        require(p.step_adjust_interval >= 1, "sa_corana: step_adjust_interval must be at least 1");
        require(p.temp_adjust_interval >= 1, "sa_corana: temp_adjust_interval must be at least 1");
        require(p.initial_range > 0 && p.initial_range <= 1, "sa_corana: initial_range must lie in (0, 1]");
    }

    void validate(const PsoParams& p)
    {
        require(p.inertia >= 0 && p.cognitive >= 0 && p.social >= 0,
                "pso: inertia and acceleration coefficients must be non-negative");
        require(p.max_velocity_fraction > 0 && p.max_velocity_fraction <= 1,
                "pso: max_velocity_fraction must lie in (0, 1]");
    }

    void validate(const SgaParams& p)
    {
        require(p.crossover_prob >= 0 && p.crossover_prob <= 1, "sga: crossover_prob must lie in [0, 1]");
        require(p.mutation_prob >= 0 && p.mutation_prob <= 1, "sga: mutation_prob must lie in [0, 1]");
        require(p.tournament_size >= 2, "sga: tournament_size must be at least 2");
        require(p.elitism_count >= 1, "sga: elitism_count must be at least 1");
    }

    void validate(const IhsParams& p)
    {
        require(p.hmcr > 0 && p.hmcr < 1, "ihs: hmcr must lie in (0, 1)");
        require(p.par_min > 0 && p.par_min <= p.par_max && p.par_max < 1,
                "ihs: need 0 < par_min <= par_max < 1");
        require(p.bw_min > 0 && p.bw_min <= p.bw_max, "ihs: need 0 < bw_min <= bw_max");
    }

    void validate(const CompassParams& p)
    {
        require(p.start_step > 0 && p.start_step <= 1, "compass: start_step must lie in (0, 1]");
        require(p.stop_step > 0 && p.stop_step < p.start_step, "compass: stop_step must lie in (0, start_step)");
        require(p.reduction > 0 && p.reduction < 1, "compass: reduction must lie in (0, 1)");
    }

    void validate(const NelderMeadParams& p) { require(p.xtol >= 0, "nelder_mead: xtol must be non-negative"); }

    void validate(const MbhParams& p)
    {
        require(p.stop_after >= 1, "mbh: stop_after must be at least 1");
        require(p.perturbation >= 0 && p.perturbation <= 1, "mbh: perturbation must lie in [0, 1]");
    }

    Algorithm de(DeParams p)
    {
        validate(p);
        return Algorithm(
            "de", [p](Population& pop, Rng& rng) { de_evolve(pop, p, rng); },
            [p](std::size_t size, std::size_t) { return std::optional<std::uint64_t>(p.generations * size); });
    }

    Algorithm sa_corana(SaCoranaParams p)
    {
        validate(p);
        return Algorithm(
            "sa_corana", [p](Population& pop, Rng& rng) { sa_corana_evolve(pop, p, rng); },
            [p](std::size_t, std::size_t) { return std::optional<std::uint64_t>(p.evaluations); });
    }

    Algorithm pso(PsoParams p)
    {
        validate(p);
        return Algorithm(
            "pso", [p](Population& pop, Rng& rng) { pso_evolve(pop, p, rng); },
            [p](std::size_t size, std::size_t) { return std::optional<std::uint64_t>(p.generations * size); });
    }

    Algorithm sga(SgaParams p)
    {
        validate(p);
        return Algorithm(
            "sga", [p](Population& pop, Rng& rng) { sga_evolve(pop, p, rng); },
            [p](std::size_t size, std::size_t) {
                const std::size_t children = size > p.elitism_count ? size - p.elitism_count : 0;
                return std::optional<std::uint64_t>(p.generations * children);
            });
    }

    Algorithm ihs(IhsParams p)
    {
        validate(p);
        return Algorithm(
            "ihs", [p](Population& pop, Rng& rng) { ihs_evolve(pop, p, rng); },
            [p](std::size_t, std::size_t) { return std::optional<std::uint64_t>(p.iterations); });
    }

    Algorithm compass(CompassParams p)
    {
        validate(p);
        return Algorithm(
            "compass", [p](Population& pop, Rng&) { compass_evolve(pop, p); },
            [p](std::size_t, std::size_t) { return std::optional<std::uint64_t>(p.max_evaluations); });
    }

    Algorithm nelder_mead(NelderMeadParams p)
    {
        validate(p);
        return Algorithm(
            "nelder_mead", [p](Population& pop, Rng&) { nelder_mead_evolve(pop, p); },
            [p](std::size_t, std::size_t dim) {
                return std::optional<std::uint64_t>(dim + p.generations * (dim + 2));
            });
    }

    Algorithm mbh(MbhParams p)
    {
        validate(p);
        return Algorithm("mbh", [p](Population& pop, Rng& rng) { mbh_evolve(pop, p, rng); });
    }

    Algorithm monte_carlo(std::size_t evaluations)
    {
        return Algorithm(
            "monte_carlo", [evaluations](Population& pop, Rng& rng) { monte_carlo_evolve(pop, evaluations, rng); },
            [evaluations](std::size_t, std::size_t) { return std::optional<std::uint64_t>(evaluations); });
    }

    Algorithm multistart(Algorithm inner, std::size_t starts)
    {
        auto budget = [inner, starts](std::size_t size, std::size_t dim) -> std::optional<std::uint64_t> {
            const auto per_start = inner.max_evaluations(size, dim);
            if (!per_start)
                return std::nullopt;
            return starts * (size + *per_start);
        };
        return Algorithm(
            "multistart",
            [inner, starts](Population& pop, Rng& rng) { multistart_evolve(pop, inner, starts, rng); },
            budget);
    }

    Algorithm null()
    {
        return Algorithm(
            "null", [](Population&, Rng&) {},
            [](std::size_t, std::size_t) { return std::optional<std::uint64_t>(0); });
    }

}  // namespace algorithm
}  // namespace archi
