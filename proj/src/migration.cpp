#include "archi/migration.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <stdexcept>

namespace archi {

std::string to_string(SelectionPolicy) { return "best"; }

std::string to_string(ReplacementPolicy p)
{
    return p == ReplacementPolicy::conditional_worst ? "conditional_worst" : "unconditional_worst";
}

SelectionPolicy selection_from_string(const std::string& s)
{
    if (s == "best")
        return SelectionPolicy::best;
    throw std::invalid_argument("unknown selection policy '" + s + "'");
}

ReplacementPolicy replacement_from_string(const std::string& s)
{
    if (s == "conditional_worst")
        return ReplacementPolicy::conditional_worst;
    if (s == "unconditional_worst")
        return ReplacementPolicy::unconditional_worst;
    throw std::invalid_argument("unknown replacement policy '" + s + "'");
}

void validate(const MigrationParams& p)
{
    if (p.frequency < 1)
        throw std::invalid_argument("migration: frequency must be at least 1");
    if (!(p.acceptance_probability >= 0 && p.acceptance_probability <= 1))
        throw std::invalid_argument("migration: acceptance_probability must lie in [0, 1]");
}

std::vector<Individual> select_emigrants(const Population& pop, SelectionPolicy, std::size_t rate)
{
    const auto ranking = pop.ranking();
    const std::size_t count = std::min(rate, pop.size());
    std::vector<Individual> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(pop[ranking[k]]);
    return out;
}

bool apply_immigrants(Population& pop, const std::vector<Individual>& incoming, ReplacementPolicy policy,
                      double accept_prob, Rng& rng)
{
    const auto& bounds = pop.problem().bounds();
    for (const auto& ind : incoming) {
        if (!bounds.contains(ind.x()))
            throw std::invalid_argument("apply_immigrants: immigrant does not belong to problem '" +
                                        pop.problem().name() + "'");
    }
    if (!(rng.uniform() < accept_prob))
        return false;
    if (pop.empty())
        return true;
    for (const auto& ind : incoming) {
        const std::size_t worst = pop.worst_index();
        if (policy == ReplacementPolicy::unconditional_worst || ind.f() < pop[worst].f())
            pop.set(worst, ind);
    }
    return true;
}

// ---------------------------------------------------------------------------

std::optional<MigrantBatch> Mailbox::post(MigrantBatch batch)
{
    std::lock_guard lock(mutex_);
    std::optional<MigrantBatch> previous;
    auto it = inbox_.find(batch.src);
    if (it != inbox_.end()) {
        previous = std::move(it->second);
        it->second = std::move(batch);
    } else {
        const std::size_t src = batch.src;
        inbox_.emplace(src, std::move(batch));
    }
    return previous;
}

void Mailbox::post(std::size_t src, std::vector<Individual> batch)
{
    post(MigrantBatch{0, src, 0, std::move(batch)});
}

std::vector<MigrantBatch> Mailbox::drain()
{
    std::map<std::size_t, MigrantBatch> taken;
    {
        std::lock_guard lock(mutex_);
        taken.swap(inbox_);
    }
    std::vector<MigrantBatch> out;
    out.reserve(taken.size());
    for (auto& [src, batch] : taken)
        out.push_back(std::move(batch));
    return out;
}

std::size_t Mailbox::pending() const
{
    std::lock_guard lock(mutex_);
    return inbox_.size();
}

std::vector<std::uint64_t> Mailbox::pending_ids() const
{
    std::lock_guard lock(mutex_);
    std::vector<std::uint64_t> ids;
    for (const auto& [src, batch] : inbox_)
        ids.push_back(batch.id);
    return ids;
}

// ---------------------------------------------------------------------------

void MigrationLog::append(MigrationRecord r)
{
    std::lock_guard lock(mutex_);
    records_.push_back(std::move(r));
}

std::vector<MigrationRecord> MigrationLog::records() const
{
    std::lock_guard lock(mutex_);
    return records_;
}

void MigrationLog::clear()
{
    std::lock_guard lock(mutex_);
    records_.clear();
}

void MigrationLog::write_jsonl(std::ostream& out) const
{
    for (const auto& r : records()) {
        nlohmann::json j = {{"event", r.event},   {"batch", r.batch}, {"tick", r.tick},
                            {"src", r.src},       {"dst", r.dst},     {"fitness", r.fitness},
                            {"accepted", r.accepted}};
        out << j.dump() << '\n';
    }
}

std::string reconcile(const std::vector<MigrationRecord>& records, const std::vector<PendingBatch>& still_pending)
{
    // (batch id, destination) -> number of terminal events
    std::map<std::pair<std::uint64_t, std::size_t>, int> posted;
    std::map<std::pair<std::uint64_t, std::size_t>, int> ended;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.batch, r.dst);
        if (r.event == "post")
            ++posted[key];
        else
            ++ended[key];
    }
    std::map<PendingBatch, int> pending;
    for (const auto& key : still_pending)
        ++pending[key];

    for (const auto& [key, count] : posted) {
        if (count != 1)
            return "batch " + std::to_string(key.first) + " posted " + std::to_string(count) + " times to island " +
                   std::to_string(key.second);
        const int terminal = ended.count(key) ? ended.at(key) : 0;
        const int waiting = pending.count(key) ? pending.at(key) : 0;
        if (terminal + waiting != 1)
            return "batch " + std::to_string(key.first) + " to island " + std::to_string(key.second) + " ended " +
                   std::to_string(terminal) + " times (pending: " + std::to_string(waiting) + ")";
    }
    for (const auto& [key, count] : ended)
        if (!posted.count(key))
            return "batch " + std::to_string(key.first) + " ended at island " + std::to_string(key.second) +
                   " without being posted";
    return {};
}

}  // namespace archi
