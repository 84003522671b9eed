#ifndef ARCHI_CORE_HPP
#define ARCHI_CORE_HPP

#include <Eigen/Core>

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace archi {

using Vector = Eigen::VectorXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// splitmix64 finalizer. Used to derive independent stream seeds from a
/// master seed: derive_seed(master, i) = splitmix64(master ^ splitmix64(i)).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Explicitly seeded generator. There is no global generator anywhere in the
/// library; every stochastic routine takes one of these by reference.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform in [0, 1), 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi]; never leaves the interval even under rounding.
    double uniform(double lo, double hi);

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    /// Uniform integer in [lo, hi] (inclusive).
    std::int64_t integer(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Search space
// ---------------------------------------------------------------------------

/// Axis-aligned box. lower[i] == upper[i] is allowed and fixes variable i.
class Bounds {
public:
    Bounds(Vector lower, Vector upper);

    /// Same interval [lo, hi] for all `dim` coordinates.
    static Bounds uniform(std::size_t dim, double lo, double hi);

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    std::size_t dimension() const { return static_cast<std::size_t>(lower_.size()); }
    Vector range() const { return upper_ - lower_; }

    bool contains(const VectorRef& x) const;
    bool contains(const Bounds& other) const;

    friend bool operator==(const Bounds& a, const Bounds& b);

private:
    Vector lower_;
    Vector upper_;
};

/// Box-constrained single-objective minimization problem. The last
/// `integer_dim` coordinates are integer valued.
///
/// Copies share the objective and the evaluation counter;
/// `with_fresh_counter()` gives an independent counter (one per island).
class Problem {
public:
    using Objective = std::function<double(const VectorRef&)>;

    Problem(std::string name, Bounds bounds, Objective objective, std::size_t integer_dim = 0);

    const std::string& name() const { return name_; }
    const Bounds& bounds() const { return bounds_; }
    std::size_t dimension() const { return bounds_.dimension(); }
    std::size_t integer_dim() const { return integer_dim_; }
    std::size_t continuous_dim() const { return dimension() - integer_dim_; }
    bool is_integer(std::size_t i) const { return i >= continuous_dim(); }

    /// Raw objective call: no validation, no counting.
    double objective(const VectorRef& x) const { return (*objective_)(x); }

    std::uint64_t evaluations() const { return counter_->load(std::memory_order_relaxed); }
    void count_evaluation() const { counter_->fetch_add(1, std::memory_order_relaxed); }

    Problem with_fresh_counter() const;
    /// Same objective restricted to `bounds` (fresh counter).
    Problem with_bounds(Bounds bounds) const;

    /// Same dimension, integer block and bounds. Islands of one archipelago
    /// must be pairwise compatible.
    bool compatible(const Problem& other) const;

private:
    std::string name_;
    Bounds bounds_;
    std::shared_ptr<const Objective> objective_;
    std::size_t integer_dim_;
    std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

/// Throws std::invalid_argument on dimension mismatch, out-of-bounds or
/// non-integral integer component (message names index and value).
void check_decision_vector(const Problem& problem, const VectorRef& x);

/// Validated and counted objective evaluation. Non-finite objective values
/// raise std::domain_error.
double evaluate(const Problem& problem, const VectorRef& x);

/// Clamp every coordinate onto the box and round the integer block to the
/// nearest admissible integer.
Vector repair(const Problem& problem, Vector x);

// ---------------------------------------------------------------------------
// Individuals and populations
// ---------------------------------------------------------------------------

/// Decision vector with its cached fitness. Immutable; the only way to make
/// one is to evaluate it, so f() == objective(x()) always holds.
class Individual {
public:
    static Individual evaluated(const Problem& problem, Vector x);

    const Vector& x() const { return x_; }
    double f() const { return f_; }

    friend bool operator==(const Individual& a, const Individual& b)
    {
        return a.f_ == b.f_ && a.x_.size() == b.x_.size() && a.x_ == b.x_;
    }

private:
    Individual(Vector x, double f) : x_(std::move(x)), f_(f) {}

    Vector x_;
    double f_;
};

class Population {
public:
    explicit Population(Problem problem, std::uint64_t seed = 0)
        : problem_(std::move(problem)), seed_(seed) {}

    const Problem& problem() const { return problem_; }
    std::uint64_t seed() const { return seed_; }

    std::size_t size() const { return individuals_.size(); }
    bool empty() const { return individuals_.empty(); }

    const Individual& operator[](std::size_t i) const { return individuals_[i]; }
    auto begin() const { return individuals_.begin(); }
    auto end() const { return individuals_.end(); }

    void push_back(Individual ind) { individuals_.push_back(std::move(ind)); }
    void set(std::size_t i, Individual ind) { individuals_.at(i) = std::move(ind); }

    /// Lowest f, lowest index on ties. Throws std::logic_error when empty.
    std::size_t champion_index() const;
    const Individual& champion() const { return individuals_[champion_index()]; }
    /// Highest f, lowest index on ties. Throws std::logic_error when empty.
    std::size_t worst_index() const;

    /// Decision vectors as columns (dimension x size).
    Eigen::MatrixXd decision_matrix() const;
    Vector fitness_vector() const;

    /// Individuals sorted ascending by f (stable), as indices.
    std::vector<std::size_t> ranking() const;

    friend bool operator==(const Population& a, const Population& b)
    {
        return a.individuals_ == b.individuals_;
    }

private:
    Problem problem_;
    std::vector<Individual> individuals_;
    std::uint64_t seed_;
};

/// Continuous coordinates uniform in [lower, upper], integer coordinates
/// uniform over the admissible integers.
Individual random_individual(const Problem& problem, Rng& rng);

/// `size` random individuals drawn in order from Rng(seed).
Population init_population(const Problem& problem, std::size_t size, std::uint64_t seed);

const Individual& champion(const Population& pop);

}  // namespace archi

#endif  // ARCHI_CORE_HPP
