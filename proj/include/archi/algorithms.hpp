#ifndef ARCHI_ALGORITHMS_HPP
#define ARCHI_ALGORITHMS_HPP

#include "archi/core.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace archi {

/// An optimizer bound to its parameters. evolve() transforms a population in
/// place. Every algorithm here is elitist (champion f never increases),
/// preserves population size and returns in-bounds individuals only.
///
/// Instances are immutable and may be shared by concurrent islands; all
/// mutable state lives in the population and generator passed to evolve().
class Algorithm {
public:
    using EvolveFn = std::function<void(Population&, Rng&)>;
    /// Upper bound on objective evaluations of one evolve() call for a
    /// population of the given size and dimension; nullopt if unbounded.
    using BudgetFn = std::function<std::optional<std::uint64_t>(std::size_t, std::size_t)>;

    Algorithm(std::string name, EvolveFn evolve, BudgetFn budget = {});

    const std::string& name() const { return name_; }
    void evolve(Population& pop, Rng& rng) const { (*evolve_)(pop, rng); }
    std::optional<std::uint64_t> max_evaluations(std::size_t pop_size, std::size_t dim) const;

private:
    std::string name_;
    std::shared_ptr<const EvolveFn> evolve_;
    std::shared_ptr<const BudgetFn> budget_;
};

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

struct DeParams {
    std::size_t generations = 100;
    double F = 0.8;   // weight coefficient, (0, 2]
    double CR = 0.9;  // crossover probability, [0, 1]
};

struct SaCoranaParams {
    std::size_t evaluations = 10000;
    double t_start = 1.0;
    double t_final = 0.01;
    std::size_t step_adjust_interval = 20;  // coordinate cycles per range adjustment
    std::size_t temp_adjust_interval = 10;  // range adjustments per temperature level
    double initial_range = 1.0;             // fraction of the box width
};

struct PsoParams {
    std::size_t generations = 100;
    double inertia = 0.7298;
    double cognitive = 2.05 * 0.7298;
    double social = 2.05 * 0.7298;
    double max_velocity_fraction = 0.5;
};

struct SgaParams {
    std::size_t generations = 100;
    double crossover_prob = 0.95;
    double mutation_prob = 0.1;
    std::size_t tournament_size = 2;
    std::size_t elitism_count = 1;
};

struct IhsParams {
    std::size_t iterations = 1000;
    double hmcr = 0.85;
    double par_min = 0.35;
    double par_max = 0.99;
    double bw_min = 1e-5;
    double bw_max = 1.0;
};

struct CompassParams {
    std::size_t max_evaluations = 10000;
    double start_step = 0.3;  // fraction of each coordinate's range
    double stop_step = 1e-4;
    double reduction = 0.5;
};

struct NelderMeadParams {
    std::size_t generations = 500;  // iteration budget
    double xtol = 1e-4;             // stop once the simplex is this small (fraction of range)
};

struct MbhParams {
    Algorithm inner;
    std::size_t stop_after = 5;
    double perturbation = 0.05;
};

// ---------------------------------------------------------------------------
// Evolve routines
// ---------------------------------------------------------------------------

/// DE rand/1/bin with greedy replacement. Budget: generations * size.
void de_evolve(Population& pop, const DeParams& p, Rng& rng);

/// Corana adaptive-neighbourhood simulated annealing on the champion.
/// Budget: exactly p.evaluations.
void sa_corana_evolve(Population& pop, const SaCoranaParams& p, Rng& rng);

/// Global-best particle swarm; the population holds the personal bests.
/// Budget: generations * size.
void pso_evolve(Population& pop, const PsoParams& p, Rng& rng);

/// Generational GA with tournament selection and elitism.
/// Budget: generations * (size - elitism_count).
void sga_evolve(Population& pop, const SgaParams& p, Rng& rng);

/// Improved harmony search; the population is the harmony memory.
/// Budget: iterations.
void ihs_evolve(Population& pop, const IhsParams& p, Rng& rng);

/// Coordinate pattern search from the champion. Budget: max_evaluations.
void compass_evolve(Population& pop, const CompassParams& p);
inline void compass_evolve(Population& pop, const CompassParams& p, Rng&) { compass_evolve(pop, p); }

/// Nelder-Mead from a simplex around the champion.
/// Budget: dim + generations * (dim + 2).
void nelder_mead_evolve(Population& pop, const NelderMeadParams& p);
inline void nelder_mead_evolve(Population& pop, std::size_t generations)
{
    nelder_mead_evolve(pop, NelderMeadParams{generations, NelderMeadParams{}.xtol});
}

/// Monotonic basin hopping around an inner (local) algorithm. Unbounded
/// budget: it stops after p.stop_after consecutive failed hops.
void mbh_evolve(Population& pop, const MbhParams& p, Rng& rng);

/// Replace the worst individual whenever a uniform draw beats it.
/// Budget: evaluations.
void monte_carlo_evolve(Population& pop, std::size_t evaluations, Rng& rng);

/// `starts` restarts of `inner` from re-randomized copies, keeping the best
/// champion ever seen (including the incoming one). When `collected` is
/// non-null the champion of every start is appended to it.
void multistart_evolve(Population& pop, const Algorithm& inner, std::size_t starts, Rng& rng,
                       std::vector<Individual>* collected = nullptr);

// ---------------------------------------------------------------------------
// Building blocks (exposed for testing and reuse)
// ---------------------------------------------------------------------------

/// rand/1 mutant: base + F * (a - b).
template <typename D1, typename D2, typename D3>
Vector de_mutant(const Eigen::MatrixBase<D1>& base, const Eigen::MatrixBase<D2>& a,
                 const Eigen::MatrixBase<D3>& b, double F)
{
    return base + F * (a - b);
}

/// Binomial crossover: each coordinate comes from `mutant` with probability
/// CR, and coordinate `forced` always does.
Vector binomial_crossover(const VectorRef& target, const VectorRef& mutant, double CR,
                          std::size_t forced, Rng& rng);

/// Global-best PSO velocity update for one coordinate (or, with Eigen
/// arrays, coordinate-wise): w*v + c1*u1*(pbest - x) + c2*u2*(gbest - x).
template <typename T>
T pso_velocity(const T& v, const T& x, const T& pbest, const T& gbest, double inertia, double cognitive,
               double social, const T& u1, const T& u2)
{
    return inertia * v + cognitive * u1 * (pbest - x) + social * u2 * (gbest - x);
}

/// Metropolis acceptance probability min(1, exp(-delta / T)); T == 0 is
/// pure descent.
double metropolis_probability(double delta, double temperature);

/// Corana step-length update for one coordinate given its acceptance ratio
/// over the last adjustment window (target band [0.4, 0.6], factor c = 2).
double corana_step_update(double step, double acceptance_ratio);

/// Pitch-adjust rate and bandwidth schedules of improved harmony search at
/// iteration t of n.
double ihs_pitch_rate(const IhsParams& p, std::size_t t, std::size_t n);
double ihs_bandwidth(const IhsParams& p, std::size_t t, std::size_t n);

/// Reflection through a centroid: centroid + coeff * (centroid - point).
template <typename D1, typename D2>
Vector reflect_through(const Eigen::MatrixBase<D1>& centroid, const Eigen::MatrixBase<D2>& point,
                       double coeff)
{
    return centroid + coeff * (centroid - point);
}

/// Index of the winner of a tournament among `contenders` (lowest f, first
/// on ties).
std::size_t tournament_winner(const Population& pop, const std::vector<std::size_t>& contenders);

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

namespace algorithm {

    Algorithm de(DeParams p = {});
    Algorithm sa_corana(SaCoranaParams p = {});
    Algorithm pso(PsoParams p = {});
    Algorithm sga(SgaParams p = {});
    Algorithm ihs(IhsParams p = {});
    Algorithm compass(CompassParams p = {});
    Algorithm nelder_mead(NelderMeadParams p = {});
    Algorithm mbh(MbhParams p);
    Algorithm monte_carlo(std::size_t evaluations);
    Algorithm multistart(Algorithm inner, std::size_t starts);
    /// Leaves the population untouched.
    Algorithm null();

    /// Throw std::invalid_argument when a parameter leaves its documented
    /// range.
    void validate(const DeParams& p);
    void validate(const SaCoranaParams& p);
    void validate(const PsoParams& p);
    void validate(const SgaParams& p);
    void validate(const IhsParams& p);
    void validate(const CompassParams& p);
    void validate(const NelderMeadParams& p);
    void validate(const MbhParams& p);

}  // namespace algorithm

namespace detail {
    void require_size(const Population& pop, std::size_t min_size, const char* who);
    /// Continuous-to-admissible map used by every continuous optimizer:
    /// clamp to the box, round the integer block.
    inline Individual evaluate_repaired(const Problem& problem, Vector x)
    {
        return Individual::evaluated(problem, repair(problem, std::move(x)));
    }
}  // namespace detail

}  // namespace archi

#endif  // ARCHI_ALGORITHMS_HPP
