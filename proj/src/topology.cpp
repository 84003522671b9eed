#include "archi/topology.hpp"

#include "archi/core.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace archi {

Topology::Topology(std::size_t n, std::string tag, std::uint64_t seed)
    : out_(n), tag_(std::move(tag)), seed_(seed)
{
}

std::size_t Topology::edge_count() const
{
    std::size_t total = 0;
    for (const auto& s : out_)
        total += s.size();
    return total;
}

std::size_t Topology::add_node()
{
    out_.emplace_back();
    return out_.size() - 1;
}

void Topology::check_index(std::size_t i) const
{
    if (i >= out_.size())
        throw std::invalid_argument("topology: node " + std::to_string(i) + " out of range (size " +
                                    std::to_string(out_.size()) + ")");
}

void Topology::add_edge(std::size_t src, std::size_t dst)
{
    check_index(src);
    check_index(dst);
    if (src == dst)
        throw std::invalid_argument("topology: self-loop on node " + std::to_string(src));
    out_[src].insert(dst);
}

void Topology::add_link(std::size_t a, std::size_t b)
{
    add_edge(a, b);
    add_edge(b, a);
}

void Topology::remove_edge(std::size_t src, std::size_t dst)
{
    check_index(src);
    check_index(dst);
    out_[src].erase(dst);
}

bool Topology::has_edge(std::size_t src, std::size_t dst) const
{
    return src < out_.size() && out_[src].count(dst) > 0;
}

std::vector<std::size_t> Topology::neighbors_out(std::size_t i) const
{
    check_index(i);
    return {out_[i].begin(), out_[i].end()};
}

std::size_t Topology::out_degree(std::size_t i) const
{
    check_index(i);
    return out_[i].size();
}

std::size_t Topology::in_degree(std::size_t i) const
{
    check_index(i);
    std::size_t d = 0;
    for (const auto& s : out_)
        d += s.count(i);
    return d;
}

std::vector<Topology::Edge> Topology::edges() const
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < out_.size(); ++i)
        for (std::size_t j : out_[i])
            e.emplace_back(i, j);
    return e;
}

bool Topology::is_symmetric() const
{
    for (std::size_t i = 0; i < out_.size(); ++i)
        for (std::size_t j : out_[i])
            if (!has_edge(j, i))
                return false;
    return true;
}

namespace topology {

    Topology unconnected(std::size_t n) { return Topology(n, "unconnected"); }

    Topology ring(std::size_t n)
    {
        Topology t(n, "ring");
        if (n < 2)
            return t;
        for (std::size_t i = 0; i < n; ++i)
            t.add_link(i, (i + 1) % n);
        return t;
    }

    Topology fully_connected(std::size_t n)
    {
        Topology t(n, "fully_connected");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    t.add_edge(i, j);
        return t;
    }

    Topology hypercube(std::size_t n)
    {
        Topology t(n, "hypercube");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t bit = 1; bit < n; bit <<= 1) {
                const std::size_t j = i ^ bit;
                if (j < n)
                    t.add_edge(i, j);
            }
        return t;
    }

    Topology rim(std::size_t n)
    {
        Topology t(n, "rim");
        for (std::size_t i = 1; i < n; ++i)
            t.add_link(0, i);
        if (n >= 3) {
            const std::size_t ring_size = n - 1;
            for (std::size_t k = 0; k < ring_size; ++k)
                t.add_link(1 + k, 1 + (k + 1) % ring_size);
        }
        return t;
    }

    Topology barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed)
    {
        if (m == 0 || m >= n)
            throw std::invalid_argument("barabasi_albert: need 1 <= m < n");
        Topology t(n, "barabasi_albert", seed);
        Rng rng(seed);

        // Every edge endpoint appears once per incident link, so drawing a
        // uniform entry samples nodes proportionally to degree.
        std::vector<std::size_t> endpoints;
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = i + 1; j <= m; ++j) {
                t.add_link(i, j);
                endpoints.push_back(i);
                endpoints.push_back(j);
            }
        for (std::size_t v = m + 1; v < n; ++v) {
            std::set<std::size_t> targets;
            while (targets.size() < m)
                targets.insert(endpoints[rng.index(endpoints.size())]);
            for (std::size_t u : targets) {
                t.add_link(v, u);
                endpoints.push_back(v);
                endpoints.push_back(u);
            }
        }
        return t;
    }

    Topology watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed)
    {
        if (k < 2 || k % 2 != 0 || n <= k)
            throw std::invalid_argument("watts_strogatz: need even k >= 2 and n > k");
        if (!(beta >= 0 && beta <= 1))
            throw std::invalid_argument("watts_strogatz: beta must lie in [0, 1]");
        Topology t(n, "watts_strogatz", seed);
        Rng rng(seed);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 1; j <= k / 2; ++j)
                t.add_link(i, (i + j) % n);

        for (std::size_t j = 1; j <= k / 2; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t far = (i + j) % n;
                if (!t.has_edge(i, far) || !(rng.uniform() < beta))
                    continue;
                std::vector<std::size_t> candidates;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i && !t.has_edge(i, c))
                        candidates.push_back(c);
                if (candidates.empty())
                    continue;
                const std::size_t target = candidates[rng.index(candidates.size())];
                t.remove_edge(i, far);
                t.remove_edge(far, i);
                t.add_link(i, target);
            }
        }
        return t;
    }

    Topology erdos_renyi(std::size_t n, double p, std::uint64_t seed)
    {
        if (!(p >= 0 && p <= 1))
            throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
        Topology t(n, "erdos_renyi", seed);
        Rng rng(seed);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform() < p)
                    t.add_link(i, j);
        return t;
    }

    void write_edge_list(std::ostream& out, const Topology& t)
    {
        out << t.size() << '\n';
        for (const auto& [src, dst] : t.edges())
            out << src << ' ' << dst << '\n';
    }

    Topology read_edge_list(std::istream& in)
    {
        std::size_t n = 0;
        if (!(in >> n))
            throw std::invalid_argument("edge list: missing node count");
        Topology t(n);
        std::size_t a = 0;
        std::size_t b = 0;
        while (in >> a >> b)
            t.add_edge(a, b);
        if (!in.eof())
            throw std::invalid_argument("edge list: malformed edge line");
        return t;
    }

}  // namespace topology
}  // namespace archi
