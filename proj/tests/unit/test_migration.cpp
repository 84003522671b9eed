#include "archi/migration.hpp"
#include "archi/problems.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <atomic>
#include <sstream>
#include <thread>

using namespace archi;
using testing::fitnesses;
using testing::population_with;

namespace {

std::vector<Individual> individuals(const Problem& p, std::initializer_list<double> fs)
{
    std::vector<Individual> out;
    for (double f : fs)
        out.push_back(Individual::evaluated(p, Vector::Constant(1, f)));
    return out;
}

std::vector<double> fs_of(const std::vector<Individual>& v)
{
    std::vector<double> out;
    for (const auto& i : v)
        out.push_back(i.f());
    return out;
}

}  // namespace

TEST_SUITE("examples")
{
    TEST_CASE("select_emigrants")
    {
        const auto p = testing::identity_problem();
        const auto pop = population_with(p, {3, 1, 2});
        CHECK(fs_of(select_emigrants(pop, SelectionPolicy::best, 1)) == std::vector<double>{1});
        CHECK(fs_of(select_emigrants(pop, SelectionPolicy::best, 5)) == std::vector<double>{1, 2, 3});
        CHECK(select_emigrants(pop, SelectionPolicy::best, 0).empty());
        CHECK(fitnesses(pop) == std::vector<double>{3, 1, 2});
    }

    TEST_CASE("apply_immigrants")
    {
        const auto p = testing::identity_problem();
        Rng rng(1);
        auto a = population_with(p, {1, 5, 9});
        apply_immigrants(a, individuals(p, {7}), ReplacementPolicy::conditional_worst, 1.0, rng);
        CHECK(fitnesses(a) == std::vector<double>{1, 5, 7});

        auto b = population_with(p, {1, 5, 9});
        apply_immigrants(b, individuals(p, {12}), ReplacementPolicy::conditional_worst, 1.0, rng);
        CHECK(fitnesses(b) == std::vector<double>{1, 5, 9});

        auto c = population_with(p, {1, 5, 9});
        apply_immigrants(c, individuals(p, {12}), ReplacementPolicy::unconditional_worst, 1.0, rng);
        CHECK(fitnesses(c) == std::vector<double>{1, 5, 12});
    }

    TEST_CASE("post: overwrite, two sources, empty batch")
    {
        const auto p = testing::identity_problem();
        Mailbox m;
        m.post(0, individuals(p, {1}));
        m.post(0, individuals(p, {2}));
        auto d = m.drain();
        REQUIRE(d.size() == 1);
        CHECK(fs_of(d[0].individuals) == std::vector<double>{2});

        m.post(3, individuals(p, {4}));
        m.post(1, individuals(p, {5}));
        d = m.drain();
        REQUIRE(d.size() == 2);
        CHECK(d[0].src == 1);
        CHECK(d[1].src == 3);

        m.post(2, {});
        d = m.drain();
        REQUIRE(d.size() == 1);
        CHECK(d[0].individuals.empty());
    }

    TEST_CASE("drain: empty, twice, concurrent")
    {
        Mailbox m;
        CHECK(m.drain().empty());
        const auto p = testing::identity_problem();
        m.post(0, individuals(p, {1}));
        CHECK(m.drain().size() == 1);
        CHECK(m.drain().empty());

        // every posted batch id is seen by exactly one drain or overwritten
        constexpr int posts = 20000;
        std::atomic<bool> done{false};
        std::vector<std::uint64_t> seen;
        std::vector<std::uint64_t> overwritten;
        std::thread producer([&] {
            for (int k = 1; k <= posts; ++k) {
                auto old = m.post(MigrantBatch{static_cast<std::uint64_t>(k), static_cast<std::size_t>(k % 3), 0, {}});
                if (old)
                    overwritten.push_back(old->id);
            }
            done = true;
        });
        while (!done.load())
            for (auto& b : m.drain())
                seen.push_back(b.id);
        producer.join();
        for (auto& b : m.drain())
            seen.push_back(b.id);
        std::vector<int> count(posts + 1, 0);
        for (auto id : seen)
            ++count[id];
        for (auto id : overwritten)
            ++count[id];
        CHECK(std::all_of(count.begin() + 1, count.end(), [](int c) { return c == 1; }));
    }
}

TEST_SUITE("api")
{
    TEST_CASE("policy names round trip")
    {
        CHECK(to_string(ReplacementPolicy::unconditional_worst) == "unconditional_worst");
        CHECK(replacement_from_string("conditional_worst") == ReplacementPolicy::conditional_worst);
        CHECK(selection_from_string("best") == SelectionPolicy::best);
        CHECK_THROWS_AS(replacement_from_string("fair"), std::invalid_argument);
    }

    TEST_CASE("immigrants outside the box are rejected")
    {
        const auto p = testing::identity_problem();
        Problem narrow("identity", Bounds::uniform(1, 0, 10), [](const VectorRef& x) { return x[0]; });
        auto pop = population_with(narrow, {1, 2});
        Rng rng(0);
        CHECK_THROWS_AS(
            apply_immigrants(pop, individuals(p, {50}), ReplacementPolicy::unconditional_worst, 1.0, rng),
            std::invalid_argument);
    }

    TEST_CASE("migration log jsonl and reconciliation")
    {
        MigrationLog log;
        log.append({"post", 1, 1, 0, 1, {2.5}, false});
        log.append({"post", 1, 1, 0, 2, {2.5}, false});
        log.append({"apply", 1, 2, 0, 1, {2.5}, true});
        CHECK(reconcile(log.records(), {{1, 2}}).empty());
        CHECK(!reconcile(log.records(), {}).empty());
        log.append({"overwrite", 1, 1, 0, 2, {2.5}, false});
        CHECK(reconcile(log.records(), {}).empty());
        log.append({"apply", 1, 3, 0, 2, {2.5}, true});
        CHECK(!reconcile(log.records(), {}).empty());

        std::ostringstream s;
        log.write_jsonl(s);
        const auto text = s.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 5);
        CHECK(text.find("\"event\":\"post\"") != std::string::npos);
    }
}

TEST_SUITE("properties")
{
    TEST_CASE("replacement invariants over random events")
    {
        const auto p = problems::rastrigin(3);
        Rng rng(5);
        for (int t = 0; t < 2000; ++t) {
            const auto size = 1 + rng.index(8);
            auto pop = init_population(p, size, rng());
            const auto incoming = select_emigrants(init_population(p, 1 + rng.index(4), rng()), SelectionPolicy::best,
                                                   1 + rng.index(4));
            const auto policy = rng.bernoulli(0.5) ? ReplacementPolicy::conditional_worst
                                                   : ReplacementPolicy::unconditional_worst;
            const double accept = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
            const auto before = pop;
            const double champ = pop.champion().f();
            const double worst = pop[pop.worst_index()].f();
            apply_immigrants(pop, incoming, policy, accept, rng);

            CHECK(pop.size() == size);
            if (accept == 0.0)
                CHECK(pop == before);
            if (policy == ReplacementPolicy::conditional_worst) {
                CHECK(pop[pop.worst_index()].f() <= worst);
                CHECK(pop.champion().f() <= champ);
            } else if (size >= 2 && incoming.size() < size) {
                // the champion can only be displaced once every slot is refilled
                CHECK(pop.champion().f() <= champ);
            }
        }
    }
}
