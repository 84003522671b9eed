#ifndef ARCHI_ARCHIPELAGO_HPP
#define ARCHI_ARCHIPELAGO_HPP

#include "archi/algorithms.hpp"
#include "archi/core.hpp"
#include "archi/migration.hpp"
#include "archi/topology.hpp"

#include <atomic>
#include <barrier>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace archi {

struct IslandOptions {
    MigrationParams migration{};
    SelectionPolicy selection = SelectionPolicy::best;
    ReplacementPolicy replacement = ReplacementPolicy::conditional_worst;
    /// Unset: the archipelago derives one from its own seed and the island
    /// index on insertion.
    std::optional<std::uint64_t> seed{};
};

/// Population + algorithm + migration settings. Owns a private copy of the
/// problem so that evaluations are counted per island.
class Island {
public:
    Island(Problem problem, Algorithm algorithm, std::size_t size, IslandOptions options = {});
    /// Mirrors island(prob, algo, size, acceptance, replacement).
    Island(Problem problem, Algorithm algorithm, std::size_t size, double acceptance_probability,
           ReplacementPolicy replacement = ReplacementPolicy::conditional_worst);

    const Problem& problem() const { return problem_; }
    const Algorithm& algorithm() const { return algorithm_; }
    const Population& population() const { return population_; }
    const IslandOptions& options() const { return options_; }
    std::size_t population_size() const { return size_; }
    std::uint64_t seed() const { return seed_; }

    /// Re-draws the population and the generator from `seed`:
    /// population = init_population(problem, size, seed),
    /// generator = Rng(rng_seed(seed)).
    void reseed(std::uint64_t seed);
    static std::uint64_t rng_seed(std::uint64_t island_seed) { return derive_seed(island_seed, 0x15ab1e); }

private:
    friend class Archipelago;

    Problem problem_;
    Algorithm algorithm_;
    IslandOptions options_;
    std::size_t size_;
    std::uint64_t seed_;
    Population population_;
    Rng rng_;
};

struct IslandStatus {
    double champion_f;  // NaN for an empty population
    std::uint64_t evaluations;
    std::uint64_t iterations;
};

/// One record per island iteration.
struct RunRecord {
    std::size_t island;
    std::uint64_t iteration;
    double champion_f;
    std::uint64_t evaluations;
};

/// Islands evolving concurrently, one thread each, exchanging migrants
/// through per-island mailboxes along the edges of a topology.
///
/// evolve() returns immediately; join() blocks until every island finished
/// its iterations. While evolving, only snapshot(), busy() and join() may be
/// called. Each island iteration is
///   drain inbox and apply immigrants -> run the algorithm once ->
///   post emigrants to every out-neighbour (every `frequency` iterations).
/// Islands never wait for one another unless lockstep mode is on, in which
/// case all islands synchronise before and after the drain step, making a
/// whole run reproducible from the seeds.
///
/// Migrants still in flight when evolution ends stay in the inboxes and are
/// applied at the start of the next evolve().
class Archipelago {
public:
    explicit Archipelago(TopologyFactory topology = topology::unconnected, std::uint64_t seed = 0);
    ~Archipelago();

    Archipelago(const Archipelago&) = delete;
    Archipelago& operator=(const Archipelago&) = delete;

    void push_back(Island island);
    std::size_t size() const { return slots_.size(); }
    const Island& island(std::size_t i) const;

    void set_topology(TopologyFactory topology);
    /// The graph for the current island count.
    Topology topology() const;

    void set_lockstep(bool on);
    bool lockstep() const { return lockstep_; }

    void evolve(std::size_t iterations);
    /// Rethrows the first exception raised on an island thread, if any.
    void join();
    bool busy() const { return evolving_.load(); }

    /// Lowest-f champion over all islands, lowest island index on ties.
    Individual best() const;

    /// New populations and generators from derive_seed(seed, i); pending
    /// migrants are discarded.
    void reset(std::uint64_t seed);

    /// Wait-free progress view, callable while evolving.
    std::vector<IslandStatus> snapshot() const;

    const MigrationLog& migration_log() const { return migration_log_; }
    std::vector<RunRecord> run_log() const;
    void write_run_log(std::ostream& out) const;
    void clear_logs();
    std::vector<PendingBatch> pending_batches() const;

private:
    struct Slot {
        explicit Slot(Island isl) : island(std::move(isl)) {}
        Island island;
        Mailbox mailbox;
        std::atomic<double> champion_f{0.0};
        std::atomic<std::uint64_t> iterations{0};
    };

    void require_idle(const char* what) const;
    void publish(Slot& slot);
    void run_island(std::size_t index, std::size_t iterations);
    void record_error(std::exception_ptr e);

    TopologyFactory factory_;
    Topology topology_;
    std::uint64_t seed_;
    bool lockstep_ = false;

    std::vector<std::unique_ptr<Slot>> slots_;
    std::vector<std::thread> threads_;
    std::atomic<bool> evolving_{false};
    std::unique_ptr<std::barrier<>> barrier_;
    std::atomic<std::uint64_t> next_batch_id_{1};

    MigrationLog migration_log_;
    mutable std::mutex run_log_mutex_;
    std::vector<RunRecord> run_log_;

    std::mutex error_mutex_;
    std::exception_ptr error_;
};

}  // namespace archi

#endif  // ARCHI_ARCHIPELAGO_HPP
