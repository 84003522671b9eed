// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include "../unit/helpers.hpp"
#include "archi/archipelago.hpp"
#include "archi/problems.hpp"
#include "archi/strategy.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <sys/wait.h>

using namespace archi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = o.pass && secs < limit_s;
    if (!ok)
        ++failures;
    std::ostringstream line;
    line.precision(3);
    line << (ok ? "PASS" : "FAIL") << "  " << name << "  [" << o.detail << "; " << std::fixed << secs << " s / "
         << limit_s << " s]";
    std::cout << line.str() << std::endl;
}

bool in_box(const Population& pop)
{
    const auto& p = pop.problem();
    for (const auto& ind : pop) {
        if (!p.bounds().contains(ind.x()))
            return false;
        for (std::size_t i = p.continuous_dim(); i < p.dimension(); ++i) {
            const double v = ind.x()[static_cast<Eigen::Index>(i)];
            if (v != std::round(v))
                return false;
        }
        if (p.objective(ind.x()) != ind.f())
            return false;
    }
    return true;
}

KnapsackInstance random_knapsack(Rng& rng, std::size_t m)
{
    KnapsackInstance k;
    k.values = Vector::NullaryExpr(static_cast<Eigen::Index>(m), [&] { return static_cast<double>(rng.integer(1, 100)); });
    k.weights = Vector::NullaryExpr(static_cast<Eigen::Index>(m), [&] { return static_cast<double>(rng.integer(1, 60)); });
    k.capacity = std::max(1.0, std::floor(0.5 * k.weights.sum()));
    return k;
}

double knapsack_oracle(const KnapsackInstance& k)
{
    const auto m = k.size();
    double best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double v = 0;
        double w = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) {
                v += k.values[static_cast<Eigen::Index>(i)];
                w += k.weights[static_cast<Eigen::Index>(i)];
            }
        if (w <= k.capacity)
            best = std::max(best, v);
    }
    return best;
}

Population standalone(const Problem& problem, const Algorithm& algo, std::size_t size, std::uint64_t seed,
                      std::size_t iterations)
{
    const auto p = problem.with_fresh_counter();
    auto pop = init_population(p, size, seed);
    Rng rng(Island::rng_seed(seed));
    for (std::size_t k = 0; k < iterations; ++k)
        algo.evolve(pop, rng);
    return pop;
}

std::size_t ring_edges(std::size_t n) { return n < 2 ? 0 : n == 2 ? 2 : 2 * n; }

std::size_t hypercube_edges(std::size_t n)
{
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && std::popcount(i ^ j) == 1)
                ++e;
    return e;
}

// ---------------------------------------------------------------------------

Outcome analytic_suite()
{
    const std::string cmd = std::string("\"") + ARCHI_UNIT_TESTS_PATH + "\" --test-suite=examples >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    return {ok, ok ? "examples suite green" : "examples suite failed"};
}

Outcome property_suite()
{
    Rng rng(20240601);
    const std::vector<std::function<Algorithm()>> algos{
        [] { return algorithm::de({10}); },
        [] { return algorithm::sa_corana({300}); },
        [] { return algorithm::pso({10}); },
        [] { return algorithm::sga({10}); },
        [] { return algorithm::ihs({100}); },
        [] { return algorithm::compass({200}); },
        [] { return algorithm::nelder_mead({30}); },
        [] { return algorithm::mbh({algorithm::compass({100}), 2, 0.05}); },
        [] { return algorithm::monte_carlo(100); },
        [] { return algorithm::multistart(algorithm::nelder_mead({20}), 3); },
        [] { return algorithm::null(); },
    };
    int bad = 0;
    std::string first;
    for (int t = 0; t < 1000; ++t) {
        Problem p = [&] {
            const auto d = 2 + rng.index(6);
            switch (rng.index(7)) {
            case 0: return problems::rastrigin(d);
            case 1: return problems::rosenbrock(d);
            case 2: return problems::schwefel(d);
            case 3: return problems::griewank(d);
            case 4: return problems::branin();
            case 5: return problems::himmelblau();
            default: return problems::knapsack(random_knapsack(rng, 1 + rng.index(12)));
            }
        }();
        const auto ai = rng.index(algos.size());
        const auto algo = algos[ai]();
        const std::size_t size = 5 + rng.index(8);
        const std::uint64_t seed = rng();
        const std::size_t iters = 1 + rng.index(3);

        auto pop = init_population(p, size, seed);
        Rng r(Island::rng_seed(seed));
        bool ok = true;
        for (std::size_t k = 0; k < iters; ++k) {
            const double before = pop.champion().f();
            algo.evolve(pop, r);
            ok = ok && pop.size() == size && pop.champion().f() <= before && in_box(pop);
        }
        ok = ok && pop == standalone(p, algo, size, seed, iters);

        Archipelago a;
        IslandOptions o;
        o.seed = seed;
        a.push_back(Island(p, algo, size, o));
        a.evolve(iters);
        a.join();
        ok = ok && a.island(0).population() == pop;

        if (!ok && bad++ == 0)
            first = algo.name() + " on " + p.name() + " seed " + std::to_string(seed);
    }
    return {bad == 0, bad == 0 ? "1000 triples hold" : std::to_string(bad) + " violations, first " + first};
}

Outcome knapsack_oracle_equivalence()
{
    Rng rng(515);
    int hits = 0;
    int better = 0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto k = random_knapsack(rng, 1 + rng.index(15));
        const double opt = knapsack_oracle(k);
        const auto p = problems::knapsack(k);
        auto pop = init_population(p, 50, derive_seed(515, static_cast<std::uint64_t>(inst)));
        Rng r(derive_seed(516, static_cast<std::uint64_t>(inst)));
        algorithm::sga({200}).evolve(pop, r);
        const double found = -pop.champion().f();
        hits += found == opt;
        better += found > opt;
    }
    return {hits >= 45 && better == 0,
            std::to_string(hits) + "/50 optimal, " + std::to_string(better) + " better than oracle"};
}

Outcome topology_generators()
{
    int bad = 0;
    for (std::size_t n = 1; n <= 64; ++n) {
        const auto ring = topology::ring(n);
        const auto fc = topology::fully_connected(n);
        const auto hc = topology::hypercube(n);
        const auto rim = topology::rim(n);
        bad += ring.edge_count() != ring_edges(n) || !ring.is_symmetric();
        bad += fc.edge_count() != n * (n - 1) || !fc.is_symmetric();
        bad += hc.edge_count() != hypercube_edges(n) || !hc.is_symmetric();
        bad += rim.edge_count() != (n < 2 ? 0 : 2 * (n - 1) + ring_edges(n - 1)) || !rim.is_symmetric();
        for (std::size_t k : {2u, 4u}) {
            if (k >= n)
                continue;
            const auto ws = topology::watts_strogatz(n, k, 0.0, n);
            bad += ws.edge_count() != n * k || !ws.is_symmetric();
        }
    }
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        sum += static_cast<double>(topology::erdos_renyi(100, 0.1, seed).edge_count()) / 2;
    const double mean = sum / 100;
    const double sigma = std::sqrt(4950 * 0.1 * 0.9);
    const bool er_ok = std::abs(mean - 495.0) <= 3 * sigma;
    std::ostringstream d;
    d << bad << " count/symmetry mismatches, ER mean " << mean << " (3 sigma " << 3 * sigma << ")";
    return {bad == 0 && er_ok, d.str()};
}

Outcome no_migration_equivalence()
{
    const auto p = problems::rastrigin(10);
    const std::vector<Algorithm> algos{algorithm::de({50}), algorithm::pso({50}), algorithm::sa_corana({2000}),
                                       algorithm::sga({50})};
    const std::vector<std::size_t> sizes{20, 20, 1, 20};
    Archipelago a(topology::unconnected, 0);
    for (std::size_t i = 0; i < 4; ++i) {
        IslandOptions o;
        o.seed = 1000 + i;
        o.migration.rate = 3;
        a.push_back(Island(p, algos[i], sizes[i], o));
    }
    a.evolve(20);
    a.join();
    int same = 0;
    for (std::size_t i = 0; i < 4; ++i)
        same += a.island(i).population() == standalone(p, algos[i], sizes[i], 1000 + i, 20);
    return {same == 4, std::to_string(same) + "/4 islands bit-identical"};
}

Outcome migration_benefit()
{
    const auto p = problems::rastrigin(20);
    auto run = [&](TopologyFactory topo, std::uint64_t seed) {
        Archipelago a(std::move(topo), seed);
        for (int i = 0; i < 8; ++i)
            a.push_back(Island(p, algorithm::de({5, 0.8, 0.9}), 20));
        a.set_lockstep(true);
        a.evolve(50);
        a.join();
        return a.best().f();
    };
    std::vector<double> with;
    std::vector<double> without;
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        with.push_back(run(topology::fully_connected, seed));
        without.push_back(run(topology::unconnected, seed));
        wins += with.back() < without.back();
    }
    const double pv = testing::sign_test_p(wins, 20);
    const double mw = testing::median(with);
    const double mo = testing::median(without);
    std::ostringstream d;
    d << "median " << mw << " vs " << mo << ", wins " << wins << "/20, p " << pv;
    return {mw < mo && pv < 0.05, d.str()};
}

Outcome rim_reproduction()
{
    const auto p = problems::rastrigin(26);
    int below = 0;
    int negative = 0;
    std::ostringstream fs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Archipelago a(topology::rim, seed);
        a.push_back(Island(p, algorithm::nelder_mead({500, 1e-4}), 1, 1.0, ReplacementPolicy::unconditional_worst));
        for (int i = 0; i < 6; ++i) {
            if (i % 2 == 0)
                a.push_back(Island(p, algorithm::sa_corana({10000, 1.0, 0.01}), 1));
            else
                a.push_back(Island(p, algorithm::de({500, 0.8, 0.9}), 20));
        }
        a.evolve(20);
        a.join();
        const double f = a.best().f();
        below += f < 10.0;
        negative += f < 0.0;
        fs << (seed > 1 ? " " : "") << f;
    }
    return {below >= 8 && negative == 0,
            std::to_string(below) + "/10 below 10, champions " + fs.str()};
}

Outcome pruning_benefit()
{
    const auto p = problems::griewank(10);
    auto build = [](const Problem& q) {
        auto a = std::make_unique<Archipelago>(topology::ring, 0);
        for (int i = 0; i < 2; ++i)
            a->push_back(Island(q, algorithm::de({50, 0.8, 0.9}), 20));
        a->set_lockstep(true);
        return a;
    };
    int wins = 0;
    int nesting_bad = 0;
    std::vector<double> three;
    std::vector<double> one;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r3 = pruning_cycles(p, build, 3, 10, 2, 0.1, 0.03, seed);
        const auto r1 = pruning_cycles(p, build, 1, 30, 2, 0.1, 0.03, seed);
        Bounds prev = p.bounds();
        for (const auto& b : r3.history) {
            nesting_bad += !prev.contains(b);
            prev = b;
        }
        three.push_back(r3.best.f());
        one.push_back(r1.best.f());
        wins += three.back() < one.back();
    }
    const double pv = testing::sign_test_p(wins, 20);
    std::ostringstream d;
    d << "median " << testing::median(three) << " vs " << testing::median(one) << ", wins " << wins << "/20, p "
      << pv << ", nesting violations " << nesting_bad;
    return {pv < 0.05 && nesting_bad == 0, d.str()};
}

Outcome asynchrony()
{
    const Problem slow("slow_sphere", Bounds::uniform(3, -1, 1), [](const VectorRef& x) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
        return x.squaredNorm();
    });
    const auto fast = problems::rastrigin(3);
    const auto slow_algo = algorithm::monte_carlo(10);
    const auto fast_algo = algorithm::de({20});

    auto timed = [](Archipelago& a, std::size_t iters) {
        const auto t0 = Clock::now();
        a.evolve(iters);
        a.join();
        return std::chrono::duration<double>(Clock::now() - t0).count();
    };

    Archipelago alone;
    IslandOptions o;
    o.seed = 1;
    alone.push_back(Island(slow, slow_algo, 5, o));
    const double standalone_s = timed(alone, 5);

    // slow and fast islands share the box so migrants are valid in both
    const Problem fast_box("slow_sphere", Bounds::uniform(3, -1, 1),
                           [fast](const VectorRef& x) { return fast.objective(x); });
    Archipelago both(topology::ring, 3);
    both.push_back(Island(slow, slow_algo, 5, o));
    both.push_back(Island(fast_box, fast_algo, 20));
    const double together_s = timed(both, 5);
    std::ostringstream d;
    d << "archipelago " << together_s << " s vs slow island alone " << standalone_s << " s, ratio "
      << together_s / standalone_s;
    return {together_s <= 1.5 * standalone_s, d.str()};
}

}  // namespace

int main()
{
    criterion("analytic-value suite", 10, analytic_suite);
    criterion("elitism/bounds/determinism property suite", 300, property_suite);
    criterion("knapsack oracle equivalence", 120, knapsack_oracle_equivalence);
    criterion("topology generators", 30, topology_generators);
    criterion("no-migration equivalence", 60, no_migration_equivalence);
    criterion("migration benefit", 600, migration_benefit);
    criterion("rim-7 setup on rastrigin(26)", 900, rim_reproduction);
    criterion("pruning-cycle benefit", 900, pruning_benefit);
    criterion("asynchrony", 60, asynchrony);
    return failures == 0 ? 0 : 1;
}
