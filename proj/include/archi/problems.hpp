#ifndef ARCHI_PROBLEMS_HPP
#define ARCHI_PROBLEMS_HPP

#include "archi/core.hpp"

#include <Eigen/Core>

#include <cmath>
#include <iosfwd>
#include <numbers>
#include <string>

namespace archi {

/// Benchmark objectives as free functions over any Eigen vector expression.
/// Minimization; global minima documented per function.
namespace functions {

    // min 0 at x = 0
    template <typename Derived>
    typename Derived::Scalar rastrigin(const Eigen::MatrixBase<Derived>& x)
    {
        using Scalar = typename Derived::Scalar;
        const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
        return Scalar(10) * static_cast<Scalar>(x.size()) +
               (x.array().square() - Scalar(10) * (two_pi * x.array()).cos()).sum();
    }

    // min 0 at x = (1, ..., 1)
    template <typename Derived>
    typename Derived::Scalar rosenbrock(const Eigen::MatrixBase<Derived>& x)
    {
        using Scalar = typename Derived::Scalar;
        const auto n = x.size();
        const auto head = x.head(n - 1).array();
        const auto tail = x.tail(n - 1).array();
        return (Scalar(100) * (tail - head.square()).square() + (Scalar(1) - head).square()).sum();
    }

    inline constexpr double schwefel_constant = 418.9828872724339;

    // min ~0 at x_i = 420.9687...
    template <typename Derived>
    typename Derived::Scalar schwefel(const Eigen::MatrixBase<Derived>& x)
    {
        using Scalar = typename Derived::Scalar;
        return Scalar(schwefel_constant) * static_cast<Scalar>(x.size()) -
               (x.array() * x.array().abs().sqrt().sin()).sum();
    }

    // min 0 at x = 0; the cosine product uses 1-based indices
    template <typename Derived>
    typename Derived::Scalar griewank(const Eigen::MatrixBase<Derived>& x)
    {
        using Scalar = typename Derived::Scalar;
        const auto n = x.size();
        const auto idx = Eigen::Array<Scalar, Eigen::Dynamic, 1>::LinSpaced(n, Scalar(1), static_cast<Scalar>(n));
        return x.array().square().sum() / Scalar(4000) - (x.array() / idx.sqrt()).cos().prod() + Scalar(1);
    }

    // min 0.397887... at (-pi, 12.275), (pi, 2.275), (9.42478, 2.475)
    template <typename Derived>
    typename Derived::Scalar branin(const Eigen::MatrixBase<Derived>& x)
    {
        using Scalar = typename Derived::Scalar;
        constexpr Scalar pi = std::numbers::pi_v<Scalar>;
        const Scalar b = Scalar(5.1) / (Scalar(4) * pi * pi);
        const Scalar c = Scalar(5) / pi;
        const Scalar r = 6;
        const Scalar s = 10;
        const Scalar t = Scalar(1) / (Scalar(8) * pi);
        const Scalar q = x(1) - b * x(0) * x(0) + c * x(0) - r;
        return q * q + s * (1 - t) * std::cos(x(0)) + s;
    }

    // four global minima of value 0, e.g. (3, 2)
    template <typename Derived>
    typename Derived::Scalar himmelblau(const Eigen::MatrixBase<Derived>& x)
    {
        const auto a = x(0) * x(0) + x(1) - 11;
        const auto b = x(0) + x(1) * x(1) - 7;
        return a * a + b * b;
    }

}  // namespace functions

struct KnapsackInstance {
    Vector values;
    Vector weights;
    double capacity = 0;

    std::size_t size() const { return static_cast<std::size_t>(values.size()); }
    /// Throws std::invalid_argument unless lengths match, m >= 1 and every
    /// value, weight and the capacity are positive and finite.
    void validate() const;
};

/// Text format: first line "m capacity", then m lines "value weight".
KnapsackInstance read_knapsack(std::istream& in);
KnapsackInstance load_knapsack(const std::string& path);
void write_knapsack(std::ostream& out, const KnapsackInstance& instance);

/// Feasible selections score -sum(values); infeasible ones score the
/// positive overweight sum(weights) - capacity, so every feasible point
/// beats every infeasible one.
double knapsack_value(const KnapsackInstance& instance, const VectorRef& x);

namespace problems {

    Problem rastrigin(std::size_t dim);   // [-5.12, 5.12]^n, dim >= 1
    Problem rosenbrock(std::size_t dim);  // [-5, 10]^n, dim >= 2
    Problem schwefel(std::size_t dim);    // [-500, 500]^n, dim >= 1
    Problem griewank(std::size_t dim);    // [-600, 600]^n, dim >= 1
    Problem branin();                     // [-5, 10] x [0, 15]
    Problem himmelblau();                 // [-6, 6]^2
    Problem knapsack(const KnapsackInstance& instance);  // all-integer, [0, 1]^m

}  // namespace problems

}  // namespace archi

#endif  // ARCHI_PROBLEMS_HPP
