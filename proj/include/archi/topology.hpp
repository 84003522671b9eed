#ifndef ARCHI_TOPOLOGY_HPP
#define ARCHI_TOPOLOGY_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace archi {

/// Directed migration graph over island indices [0, n). No self-loops, no
/// duplicate edges. Immutable once built by a generator; the mutators are
/// for hand-made graphs.
class Topology {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    explicit Topology(std::size_t n = 0, std::string tag = "custom", std::uint64_t seed = 0);

    std::size_t size() const { return out_.size(); }
    std::size_t edge_count() const;
    const std::string& tag() const { return tag_; }
    std::uint64_t seed() const { return seed_; }

    std::size_t add_node();
    /// Throws std::invalid_argument on self-loops or out-of-range indices;
    /// a duplicate edge is a no-op.
    void add_edge(std::size_t src, std::size_t dst);
    /// Both directions.
    void add_link(std::size_t a, std::size_t b);
    void remove_edge(std::size_t src, std::size_t dst);

    bool has_edge(std::size_t src, std::size_t dst) const;
    /// Sorted destinations of edges leaving `i`.
    std::vector<std::size_t> neighbors_out(std::size_t i) const;
    std::size_t out_degree(std::size_t i) const;
    std::size_t in_degree(std::size_t i) const;
    std::vector<Edge> edges() const;

    /// (a, b) present iff (b, a) present.
    bool is_symmetric() const;

    friend bool operator==(const Topology& a, const Topology& b) { return a.out_ == b.out_; }

private:
    void check_index(std::size_t i) const;

    std::vector<std::set<std::size_t>> out_;
    std::string tag_;
    std::uint64_t seed_;
};

/// Builds a topology for a given island count (generators are bound to their
/// parameters and seed in advance).
using TopologyFactory = std::function<Topology(std::size_t)>;

namespace topology {

    Topology unconnected(std::size_t n);
    Topology ring(std::size_t n);
    Topology fully_connected(std::size_t n);
    /// Bidirectional link iff i xor j is a power of two; truncated when n is
    /// not a power of two.
    Topology hypercube(std::size_t n);
    /// Node 0 is the hub linked to every other node; nodes 1..n-1 form a
    /// bidirectional ring.
    Topology rim(std::size_t n);
    Topology barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);
    Topology watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed);
    Topology erdos_renyi(std::size_t n, double p, std::uint64_t seed);

    /// "n" on the first line, then one "src dst" line per directed edge.
    void write_edge_list(std::ostream& out, const Topology& t);
    Topology read_edge_list(std::istream& in);

}  // namespace topology
}  // namespace archi

#endif  // ARCHI_TOPOLOGY_HPP
