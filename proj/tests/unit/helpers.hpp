#pragma once

#include "archi/core.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace testing {

/// f(x) = x on [-1000, 1000]: a population with prescribed fitnesses.
inline archi::Problem identity_problem()
{
    return archi::Problem("identity", archi::Bounds::uniform(1, -1000, 1000),
                          [](const archi::VectorRef& x) { return x[0]; });
}

inline archi::Population population_with(const archi::Problem& p, std::initializer_list<double> fs)
{
    archi::Population pop(p);
    for (double f : fs)
        pop.push_back(archi::Individual::evaluated(p, archi::Vector::Constant(1, f)));
    return pop;
}

inline std::vector<double> fitnesses(const archi::Population& pop)
{
    std::vector<double> out;
    for (const auto& ind : pop)
        out.push_back(ind.f());
    return out;
}

inline archi::Problem sphere(std::size_t dim, double lo = -1, double hi = 1)
{
    return archi::Problem("sphere", archi::Bounds::uniform(dim, lo, hi),
                          [](const archi::VectorRef& x) { return x.squaredNorm(); });
}

inline archi::Vector vec(std::initializer_list<double> v)
{
    archi::Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

/// One-sided sign test: P(X >= wins) for X ~ Binomial(n, 1/2).
inline double sign_test_p(int wins, int n)
{
    double p = 0;
    double c = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0)
            c = c * (n - k + 1) / k;
        if (k >= wins)
            p += c;
    }
    for (int k = 0; k < n; ++k)
        p /= 2;
    return p;
}

template <typename T>
double median(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? static_cast<double>(v[n / 2]) : 0.5 * (static_cast<double>(v[n / 2 - 1]) + v[n / 2]);
}

}  // namespace testing
