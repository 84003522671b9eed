#ifndef ARCHI_MIGRATION_HPP
#define ARCHI_MIGRATION_HPP

#include "archi/core.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace archi {

struct MigrationParams {
    std::size_t rate = 1;                 // individuals selected per event
    std::size_t frequency = 1;            // post after every k-th iteration
    double acceptance_probability = 1.0;  // one draw per incoming batch
};

enum class SelectionPolicy { best };
enum class ReplacementPolicy { conditional_worst, unconditional_worst };

std::string to_string(SelectionPolicy p);
std::string to_string(ReplacementPolicy p);
SelectionPolicy selection_from_string(const std::string& s);
ReplacementPolicy replacement_from_string(const std::string& s);

void validate(const MigrationParams& p);

/// Copies of the min(rate, size) best individuals, best first.
std::vector<Individual> select_emigrants(const Population& pop, SelectionPolicy policy, std::size_t rate);

/// Merges `incoming` (best first) into `pop` if a single uniform draw falls
/// below `accept_prob`. conditional_worst replaces the current worst only
/// when the immigrant is strictly better; unconditional_worst always
/// replaces it. Returns whether the batch was accepted. Immigrants of the
/// wrong dimension or outside the population's bounds raise
/// std::invalid_argument.
bool apply_immigrants(Population& pop, const std::vector<Individual>& incoming, ReplacementPolicy policy,
                      double accept_prob, Rng& rng);

/// A batch of migrants in flight, tagged with a run-unique id so the
/// migration log can account for every batch.
struct MigrantBatch {
    std::uint64_t id = 0;
    std::size_t src = 0;
    std::size_t tick = 0;  // sender's iteration counter when posted
    std::vector<Individual> individuals;
};

/// Per-island inbox holding the latest batch from each source. Safe for
/// concurrent post/drain.
class Mailbox {
public:
    /// Stores `batch` as the pending batch from batch.src; returns the batch
    /// it overwrote, if any.
    std::optional<MigrantBatch> post(MigrantBatch batch);
    /// Convenience form that tags the batch with id 0.
    void post(std::size_t src, std::vector<Individual> batch);

    /// All pending batches in ascending source order; leaves the inbox empty.
    std::vector<MigrantBatch> drain();
    std::vector<MigrantBatch> clear() { return drain(); }
    std::size_t pending() const;
    std::vector<std::uint64_t> pending_ids() const;

private:
    mutable std::mutex mutex_;
    std::map<std::size_t, MigrantBatch> inbox_;
};

/// One record per batch lifecycle event:
///   post      - batch left `src` for `dst`
///   apply     - `dst` drained the batch; `accepted` tells whether it merged
///   overwrite - batch was superseded in `dst`'s inbox before being drained
///   discard   - batch was dropped by an archipelago reset
struct MigrationRecord {
    std::string event;
    std::uint64_t batch = 0;
    std::size_t tick = 0;
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<double> fitness;
    bool accepted = false;
};

class MigrationLog {
public:
    void append(MigrationRecord r);
    std::vector<MigrationRecord> records() const;
    void clear();
    /// One JSON object per line.
    void write_jsonl(std::ostream& out) const;

private:
    mutable std::mutex mutex_;
    std::vector<MigrationRecord> records_;
};

/// (batch id, destination island) of a batch still sitting in an inbox.
using PendingBatch = std::pair<std::uint64_t, std::size_t>;

/// Checks that every posted batch ended exactly once (applied, overwritten,
/// discarded, or listed in `still_pending`). Returns an empty string on
/// success, otherwise a description of the first inconsistency.
std::string reconcile(const std::vector<MigrationRecord>& records, const std::vector<PendingBatch>& still_pending);

}  // namespace archi

#endif  // ARCHI_MIGRATION_HPP
