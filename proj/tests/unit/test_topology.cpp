#include "archi/topology.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace archi;
using Edges = std::vector<Topology::Edge>;

TEST_SUITE("examples")
{
    TEST_CASE("ring")
    {
        const auto r4 = topology::ring(4);
        CHECK(r4.edge_count() == 8);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(r4.out_degree(i) == 2);
        CHECK(topology::ring(1).edge_count() == 0);
        CHECK(topology::ring(2).edges() == Edges{{0, 1}, {1, 0}});
    }

    TEST_CASE("fully_connected")
    {
        CHECK(topology::fully_connected(3).edge_count() == 6);
        CHECK(topology::fully_connected(1).edge_count() == 0);
        const auto f5 = topology::fully_connected(5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(f5.in_degree(i) == 4);
            CHECK(f5.out_degree(i) == 4);
        }
    }

    TEST_CASE("hypercube")
    {
        const auto h8 = topology::hypercube(8);
        CHECK(h8.edge_count() == 24);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(h8.out_degree(i) == 3);
        CHECK(topology::hypercube(2).edges() == Edges{{0, 1}, {1, 0}});
        const auto h5 = topology::hypercube(5);
        CHECK(h5.out_degree(4) == 1);
        CHECK(h5.neighbors_out(4) == std::vector<std::size_t>{0});
    }

    TEST_CASE("rim")
    {
        CHECK(topology::rim(7).edge_count() == 24);
        CHECK(topology::rim(3).edges() == Edges{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
        CHECK(topology::rim(1).edge_count() == 0);
    }

    TEST_CASE("barabasi_albert")
    {
        CHECK(topology::barabasi_albert(4, 3, 1) == topology::fully_connected(4));
        CHECK(topology::barabasi_albert(4, 3, 1).edge_count() == 12);
        CHECK(topology::barabasi_albert(10, 2, 5).edge_count() == 34);

        double ratio_sum = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto t = topology::barabasi_albert(200, 3, seed);
            std::vector<double> deg;
            for (std::size_t i = 0; i < 200; ++i)
                deg.push_back(static_cast<double>(t.out_degree(i)));
            ratio_sum += *std::max_element(deg.begin(), deg.end()) / testing::median(deg);
        }
        CHECK(ratio_sum / 100 >= 3.0);
    }

    TEST_CASE("watts_strogatz")
    {
        const auto lattice = topology::watts_strogatz(10, 4, 0.0, 3);
        for (std::size_t i = 0; i < 10; ++i)
            CHECK(lattice.out_degree(i) == 4);
        CHECK(topology::watts_strogatz(6, 2, 0.0, 1) == topology::ring(6));
        CHECK(topology::watts_strogatz(100, 4, 1.0, 9).edge_count() / 2 == 200);
    }

    TEST_CASE("erdos_renyi")
    {
        CHECK(topology::erdos_renyi(6, 1.0, 1) == topology::fully_connected(6));
        CHECK(topology::erdos_renyi(6, 0.0, 1).edge_count() == 0);
        double sum = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            sum += static_cast<double>(topology::erdos_renyi(100, 0.1, seed).edge_count()) / 2;
        const double sigma = std::sqrt(4950 * 0.1 * 0.9);
        CHECK(std::abs(sum / 100 - 495.0) <= 3 * sigma);
    }

    TEST_CASE("custom construction")
    {
        Topology t;
        t.add_node();
        t.add_node();
        t.add_node();
        t.add_edge(0, 1);
        CHECK(t.size() == 3);
        CHECK(t.edge_count() == 1);
        CHECK_THROWS_AS(t.add_edge(0, 0), std::invalid_argument);
        t.add_edge(0, 1);
        CHECK(t.edge_count() == 1);
    }

    TEST_CASE("neighbors_out")
    {
        CHECK(topology::ring(4).neighbors_out(0) == std::vector<std::size_t>{1, 3});
        CHECK(topology::fully_connected(3).neighbors_out(1) == std::vector<std::size_t>{0, 2});
        CHECK(Topology(3).neighbors_out(2).empty());
    }
}

TEST_SUITE("api")
{
    TEST_CASE("index and parameter errors")
    {
        Topology t(2);
        CHECK_THROWS_AS(t.add_edge(0, 2), std::invalid_argument);
        CHECK_THROWS_AS(t.neighbors_out(5), std::invalid_argument);
        CHECK_THROWS_AS(topology::barabasi_albert(3, 3, 0), std::invalid_argument);
        CHECK_THROWS_AS(topology::barabasi_albert(3, 0, 0), std::invalid_argument);
        CHECK_THROWS_AS(topology::watts_strogatz(4, 3, 0.1, 0), std::invalid_argument);
        CHECK_THROWS_AS(topology::watts_strogatz(4, 4, 0.1, 0), std::invalid_argument);
        CHECK_THROWS_AS(topology::erdos_renyi(4, 1.5, 0), std::invalid_argument);
    }

    TEST_CASE("edge list round trip")
    {
        const auto t = topology::rim(7);
        std::stringstream s;
        topology::write_edge_list(s, t);
        std::string first;
        std::getline(s, first);
        CHECK(first == "7");
        s.seekg(0);
        CHECK(topology::read_edge_list(s) == t);
    }

    TEST_CASE("remove_edge and degrees")
    {
        auto t = topology::ring(5);
        t.remove_edge(0, 1);
        CHECK(!t.has_edge(0, 1));
        CHECK(t.has_edge(1, 0));
        CHECK(!t.is_symmetric());
        CHECK(t.in_degree(1) == 1);
    }
}

TEST_SUITE("properties")
{
    TEST_CASE("generators are deterministic and well formed")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CHECK(topology::barabasi_albert(30, 2, seed) == topology::barabasi_albert(30, 2, seed));
            CHECK(topology::watts_strogatz(30, 4, 0.3, seed) == topology::watts_strogatz(30, 4, 0.3, seed));
            CHECK(topology::erdos_renyi(30, 0.2, seed) == topology::erdos_renyi(30, 0.2, seed));
            for (const auto& t : {topology::barabasi_albert(30, 2, seed), topology::watts_strogatz(30, 4, 0.3, seed),
                                  topology::erdos_renyi(30, 0.2, seed)}) {
                CHECK(t.is_symmetric());
                for (const auto& [a, b] : t.edges()) {
                    CHECK(a != b);
                    CHECK(a < 30);
                    CHECK(b < 30);
                }
            }
        }
    }
}
