#include "archi/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace archi {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(master ^ splitmix64(stream));
}

double Rng::uniform(double lo, double hi)
{
    const double v = lo + (hi - lo) * uniform();
    return std::min(std::max(v, lo), hi);
}

std::size_t Rng::index(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::index: empty range");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("Rng::integer: empty range");
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

// ---------------------------------------------------------------------------

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() != upper_.size())
        throw std::invalid_argument("Bounds: lower and upper have different lengths");
    if (lower_.size() < 1)
        throw std::invalid_argument("Bounds: dimension must be at least 1");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
            throw std::invalid_argument("Bounds: non-finite entry at index " + std::to_string(i));
        if (lower_[i] > upper_[i]) {
            std::ostringstream msg;
            msg << "Bounds: lower[" << i << "] = " << lower_[i] << " exceeds upper[" << i
                << "] = " << upper_[i];
            throw std::invalid_argument(msg.str());
        }
    }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi)
{
    const auto n = static_cast<Eigen::Index>(dim);
    return Bounds(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

bool Bounds::contains(const VectorRef& x) const
{
    return x.size() == lower_.size() && (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
}

bool Bounds::contains(const Bounds& other) const
{
    return other.dimension() == dimension() && (other.lower_.array() >= lower_.array()).all() &&
           (other.upper_.array() <= upper_.array()).all();
}

bool operator==(const Bounds& a, const Bounds& b)
{
    return a.dimension() == b.dimension() && a.lower_ == b.lower_ && a.upper_ == b.upper_;
}

// ---------------------------------------------------------------------------

Problem::Problem(std::string name, Bounds bounds, Objective objective, std::size_t integer_dim)
    : name_(std::move(name)),
      bounds_(std::move(bounds)),
      objective_(std::make_shared<const Objective>(std::move(objective))),
      integer_dim_(integer_dim),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0))
{
    if (!*objective_)
        throw std::invalid_argument("Problem '" + name_ + "': empty objective");
    if (integer_dim_ > bounds_.dimension())
        throw std::invalid_argument("Problem '" + name_ + "': integer_dim exceeds dimension");
    for (std::size_t i = continuous_dim(); i < dimension(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        if (std::ceil(bounds_.lower()[k]) > std::floor(bounds_.upper()[k]))
            throw std::invalid_argument("Problem '" + name_ + "': integer coordinate " +
                                        std::to_string(i) + " admits no integer value");
    }
}

Problem Problem::with_fresh_counter() const
{
    Problem copy = *this;
    copy.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
    return copy;
}

Problem Problem::with_bounds(Bounds bounds) const
{
    if (bounds.dimension() != dimension())
        throw std::invalid_argument("Problem::with_bounds: dimension mismatch");
    Problem copy = with_fresh_counter();
    copy.bounds_ = std::move(bounds);
    for (std::size_t i = copy.continuous_dim(); i < copy.dimension(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        if (std::ceil(copy.bounds_.lower()[k]) > std::floor(copy.bounds_.upper()[k]))
            throw std::invalid_argument("Problem::with_bounds: integer coordinate " +
                                        std::to_string(i) + " admits no integer value");
    }
    return copy;
}

bool Problem::compatible(const Problem& other) const
{
    return integer_dim_ == other.integer_dim_ && bounds_ == other.bounds_;
}

void check_decision_vector(const Problem& problem, const VectorRef& x)
{
    const auto& b = problem.bounds();
    if (static_cast<std::size_t>(x.size()) != problem.dimension()) {
        std::ostringstream msg;
        msg << "problem '" << problem.name() << "': decision vector has length " << x.size()
            << ", expected " << problem.dimension();
        throw std::invalid_argument(msg.str());
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] >= b.lower()[i] && x[i] <= b.upper()[i])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "problem '" << problem.name() << "': component " << i << " = " << x[i]
                << " outside [" << b.lower()[i] << ", " << b.upper()[i] << "]";
            throw std::invalid_argument(msg.str());
        }
        if (problem.is_integer(static_cast<std::size_t>(i)) && x[i] != std::round(x[i])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "problem '" << problem.name() << "': integer component " << i << " = " << x[i]
                << " is not integral";
            throw std::invalid_argument(msg.str());
        }
    }
}

double evaluate(const Problem& problem, const VectorRef& x)
{
    check_decision_vector(problem, x);
    const double f = problem.objective(x);
    problem.count_evaluation();
    if (!std::isfinite(f)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "problem '" << problem.name() << "': non-finite objective value " << f << " at x = ["
            << x.transpose() << "]";
        throw std::domain_error(msg.str());
    }
    return f;
}

Vector repair(const Problem& problem, Vector x)
{
    const auto& b = problem.bounds();
    x = x.cwiseMax(b.lower()).cwiseMin(b.upper());
    for (std::size_t i = problem.continuous_dim(); i < problem.dimension(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        x[k] = std::clamp(std::round(x[k]), std::ceil(b.lower()[k]), std::floor(b.upper()[k]));
    }
    return x;
}

// ---------------------------------------------------------------------------

Individual Individual::evaluated(const Problem& problem, Vector x)
{
    const double f = evaluate(problem, x);
    return Individual(std::move(x), f);
}

std::size_t Population::champion_index() const
{
    if (individuals_.empty())
        throw std::logic_error("champion of an empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < individuals_.size(); ++i)
        if (individuals_[i].f() < individuals_[best].f())
            best = i;
    return best;
}

std::size_t Population::worst_index() const
{
    if (individuals_.empty())
        throw std::logic_error("worst individual of an empty population");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < individuals_.size(); ++i)
        if (individuals_[i].f() > individuals_[worst].f())
            worst = i;
    return worst;
}

Eigen::MatrixXd Population::decision_matrix() const
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(problem_.dimension()),
                      static_cast<Eigen::Index>(individuals_.size()));
    for (std::size_t i = 0; i < individuals_.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = individuals_[i].x();
    return m;
}

Vector Population::fitness_vector() const
{
    Vector f(static_cast<Eigen::Index>(individuals_.size()));
    for (std::size_t i = 0; i < individuals_.size(); ++i)
        f[static_cast<Eigen::Index>(i)] = individuals_[i].f();
    return f;
}

std::vector<std::size_t> Population::ranking() const
{
    std::vector<std::size_t> idx(individuals_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
        return individuals_[a].f() < individuals_[b].f();
    });
    return idx;
}

Individual random_individual(const Problem& problem, Rng& rng)
{
    const auto& b = problem.bounds();
    Vector x(static_cast<Eigen::Index>(problem.dimension()));
    for (std::size_t i = 0; i < problem.dimension(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        if (problem.is_integer(i)) {
            x[k] = static_cast<double>(rng.integer(static_cast<std::int64_t>(std::ceil(b.lower()[k])),
                                                   static_cast<std::int64_t>(std::floor(b.upper()[k]))));
        } else {
            x[k] = rng.uniform(b.lower()[k], b.upper()[k]);
        }
    }
    return Individual::evaluated(problem, std::move(x));
}

Population init_population(const Problem& problem, std::size_t size, std::uint64_t seed)
{
    Population pop(problem, seed);
    Rng rng(seed);
    for (std::size_t i = 0; i < size; ++i)
        pop.push_back(random_individual(problem, rng));
    return pop;
}

const Individual& champion(const Population& pop) { return pop.champion(); }

}  // namespace archi
