#include "archi/problems.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace archi {

void KnapsackInstance::validate() const
{
    if (values.size() != weights.size())
        throw std::invalid_argument("knapsack: values and weights differ in length");
    if (values.size() < 1)
        throw std::invalid_argument("knapsack: at least one item required");
    if (!(capacity > 0) || !std::isfinite(capacity))
        throw std::invalid_argument("knapsack: capacity must be positive");
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0) || !std::isfinite(values[i]))
            throw std::invalid_argument("knapsack: value of item " + std::to_string(i) + " must be positive");
        if (!(weights[i] > 0) || !std::isfinite(weights[i]))
            throw std::invalid_argument("knapsack: weight of item " + std::to_string(i) + " must be positive");
    }
}

KnapsackInstance read_knapsack(std::istream& in)
{
    long long m = 0;
    KnapsackInstance inst;
    if (!(in >> m >> inst.capacity))
        throw std::invalid_argument("knapsack: expected header line 'm capacity'");
    if (m < 1)
        throw std::invalid_argument("knapsack: item count must be at least 1");
    inst.values.resize(m);
    inst.weights.resize(m);
    for (long long i = 0; i < m; ++i) {
        if (!(in >> inst.values[i] >> inst.weights[i]))
            throw std::invalid_argument("knapsack: expected 'value weight' for item " + std::to_string(i));
    }
    inst.validate();
    return inst;
}

KnapsackInstance load_knapsack(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("knapsack: cannot open '" + path + "'");
    return read_knapsack(in);
}

void write_knapsack(std::ostream& out, const KnapsackInstance& instance)
{
    const auto prec = out.precision(17);
    out << instance.size() << ' ' << instance.capacity << '\n';
    for (Eigen::Index i = 0; i < instance.values.size(); ++i)
        out << instance.values[i] << ' ' << instance.weights[i] << '\n';
    out.precision(prec);
}

double knapsack_value(const KnapsackInstance& instance, const VectorRef& x)
{
    const double weight = instance.weights.dot(x);
    if (weight <= instance.capacity)
        return -instance.values.dot(x);
    return weight - instance.capacity;
}

namespace problems {

    namespace {
        void require_dim(const char* name, std::size_t dim, std::size_t min_dim)
        {
            if (dim < min_dim)
                throw std::invalid_argument(std::string(name) + ": dimension must be at least " +
                                            std::to_string(min_dim));
        }
    }  // namespace

    Problem rastrigin(std::size_t dim)
    {
        require_dim("rastrigin", dim, 1);
        return Problem("rastrigin", Bounds::uniform(dim, -5.12, 5.12),
                       [](const VectorRef& x) { return functions::rastrigin(x); });
    }

    Problem rosenbrock(std::size_t dim)
    {
        require_dim("rosenbrock", dim, 2);
        return Problem("rosenbrock", Bounds::uniform(dim, -5.0, 10.0),
                       [](const VectorRef& x) { return functions::rosenbrock(x); });
    }

    Problem schwefel(std::size_t dim)
    {
        require_dim("schwefel", dim, 1);
        return Problem("schwefel", Bounds::uniform(dim, -500.0, 500.0),
                       [](const VectorRef& x) { return functions::schwefel(x); });
    }

    Problem griewank(std::size_t dim)
    {
        require_dim("griewank", dim, 1);
        return Problem("griewank", Bounds::uniform(dim, -600.0, 600.0),
                       [](const VectorRef& x) { return functions::griewank(x); });
    }

    Problem branin()
    {
        return Problem("branin", Bounds(Eigen::Vector2d(-5.0, 0.0), Eigen::Vector2d(10.0, 15.0)),
                       [](const VectorRef& x) { return functions::branin(x); });
    }

    Problem himmelblau()
    {
        return Problem("himmelblau", Bounds::uniform(2, -6.0, 6.0),
                       [](const VectorRef& x) { return functions::himmelblau(x); });
    }

    Problem knapsack(const KnapsackInstance& instance)
    {
        instance.validate();
        const std::size_t m = instance.size();
        return Problem("knapsack", Bounds::uniform(m, 0.0, 1.0),
                       [instance](const VectorRef& x) { return knapsack_value(instance, x); }, m);
    }

}  // namespace problems
}  // namespace archi
