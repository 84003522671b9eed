#ifndef ARCHI_STRATEGY_HPP
#define ARCHI_STRATEGY_HPP

#include "archi/archipelago.hpp"
#include "archi/core.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace archi {

struct ArchiveEntry {
    Vector x;
    double f;
    std::size_t run;
};

/// Best solution of each multistart run, kept against the problem whose
/// bounds the runs used.
class ChampionArchive {
public:
    explicit ChampionArchive(Problem problem) : problem_(std::move(problem)) {}

    const Problem& problem() const { return problem_; }
    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    void add(const Individual& ind, std::size_t run);
    /// Entries sorted ascending by fitness (stable).
    std::vector<ArchiveEntry> sorted() const;

    /// One line per entry: "run_index fitness x_0 ... x_{n-1}".
    void write(std::ostream& out) const;
    /// Re-evaluates every vector on `problem`; throws if it is out of bounds
    /// or disagrees with the stored fitness.
    static ChampionArchive read(std::istream& in, const Problem& problem);

private:
    Problem problem_;
    std::vector<ArchiveEntry> entries_;
};

/// `runs` times: reset(derive_seed(seed, k)), evolve, join, record best().
ChampionArchive multistart_campaign(Archipelago& a, std::size_t runs, std::size_t iterations_per_run,
                                    std::uint64_t seed);

inline constexpr double default_keep_fraction = 0.1;
inline constexpr double default_padding = 0.03;

/// Bounding box of the best ceil(keep_fraction * size) entries, widened by
/// padding * range of the archive problem's bounds and clipped to them.
Bounds prune_bounds(const ChampionArchive& archive, double keep_fraction = default_keep_fraction,
                    double padding = default_padding);

/// Same objective on narrower bounds. Throws when `bounds` is not inside the
/// problem's box or has the wrong dimension.
Problem pruned_problem(const Problem& problem, const Bounds& bounds);

/// Builds a ready-to-run archipelago for a problem.
using ArchipelagoBuilder = std::function<std::unique_ptr<Archipelago>(const Problem&)>;

struct PruningResult {
    Individual best;              // valid for the original problem
    std::vector<Bounds> history;  // bounds produced by each cycle, in order
    std::vector<ChampionArchive> archives;
};

/// Called after each cycle's campaign, before its archipelago is destroyed.
using CycleObserver = std::function<void(std::size_t cycle, const Archipelago&)>;

/// Alternates multistart_campaign and prune_bounds `cycles` times, building
/// a fresh archipelago on the current (pruned) problem for every cycle.
PruningResult pruning_cycles(const Problem& problem, const ArchipelagoBuilder& build, std::size_t cycles,
                             std::size_t runs_per_cycle, std::size_t iterations_per_run, double keep_fraction,
                             double padding, std::uint64_t seed, const CycleObserver& observe = {});

}  // namespace archi

#endif  // ARCHI_STRATEGY_HPP
