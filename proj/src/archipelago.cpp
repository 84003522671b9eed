#include "archi/archipelago.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace archi {

Island::Island(Problem problem, Algorithm algorithm, std::size_t size, IslandOptions options)
    : problem_(problem.with_fresh_counter()),
      algorithm_(std::move(algorithm)),
      options_(std::move(options)),
      size_(size),
      seed_(options_.seed.value_or(0)),
      population_(problem_),
      rng_(0)
{
    validate(options_.migration);
    reseed(seed_);
}

Island::Island(Problem problem, Algorithm algorithm, std::size_t size, double acceptance_probability,
               ReplacementPolicy replacement)
    : Island(std::move(problem), std::move(algorithm), size, [&] {
          IslandOptions o;
          o.migration.acceptance_probability = acceptance_probability;
          o.replacement = replacement;
          return o;
      }())
{
}

void Island::reseed(std::uint64_t seed)
{
    seed_ = seed;
    population_ = init_population(problem_, size_, seed);
    rng_ = Rng(rng_seed(seed));
}

// ---------------------------------------------------------------------------

Archipelago::Archipelago(TopologyFactory topology, std::uint64_t seed)
    : factory_(std::move(topology)), seed_(seed)
{
    if (!factory_)
        throw std::invalid_argument("archipelago: empty topology factory");
}

Archipelago::~Archipelago()
{
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
}

void Archipelago::require_idle(const char* what) const
{
    if (evolving_.load())
        throw std::logic_error(std::string("archipelago: ") + what + " called while evolving");
}

void Archipelago::publish(Slot& slot)
{
    const auto& pop = slot.island.population_;
    slot.champion_f.store(pop.empty() ? std::numeric_limits<double>::quiet_NaN() : pop.champion().f());
}

void Archipelago::push_back(Island island)
{
    require_idle("push_back");
    if (!slots_.empty() && !slots_.front()->island.problem().compatible(island.problem()))
        throw std::invalid_argument("archipelago: island problem '" + island.problem().name() +
                                    "' does not match the archipelago's problem (dimension, integer part or bounds)");
    if (!island.options().seed)
        island.reseed(derive_seed(seed_, slots_.size()));
    slots_.push_back(std::make_unique<Slot>(std::move(island)));
    publish(*slots_.back());
}

const Island& Archipelago::island(std::size_t i) const
{
    require_idle("island");
    return slots_.at(i)->island;
}

void Archipelago::set_topology(TopologyFactory topology)
{
    require_idle("set_topology");
    if (!topology)
        throw std::invalid_argument("archipelago: empty topology factory");
    factory_ = std::move(topology);
}

Topology Archipelago::topology() const { return factory_(slots_.size()); }

void Archipelago::set_lockstep(bool on)
{
    require_idle("set_lockstep");
    lockstep_ = on;
}

void Archipelago::evolve(std::size_t iterations)
{
    require_idle("evolve");
    if (slots_.empty())
        throw std::logic_error("archipelago: evolve needs at least one island");

    topology_ = factory_(slots_.size());
    if (topology_.size() != slots_.size())
        throw std::logic_error("archipelago: topology has " + std::to_string(topology_.size()) + " nodes for " +
                               std::to_string(slots_.size()) + " islands");
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
    threads_.clear();
    error_ = nullptr;
    if (iterations == 0)
        return;

    evolving_.store(true);
    barrier_ = lockstep_ ? std::make_unique<std::barrier<>>(static_cast<std::ptrdiff_t>(slots_.size())) : nullptr;
    threads_.reserve(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i)
        threads_.emplace_back([this, i, iterations] { run_island(i, iterations); });
}

void Archipelago::record_error(std::exception_ptr e)
{
    std::lock_guard lock(error_mutex_);
    if (!error_)
        error_ = e;
}

void Archipelago::run_island(std::size_t index, std::size_t iterations)
{
    Slot& slot = *slots_[index];
    Island& isl = slot.island;
    const auto out = topology_.neighbors_out(index);
    const auto& mig = isl.options_.migration;

    try {
        for (std::size_t k = 0; k < iterations; ++k) {
            if (barrier_)
                barrier_->arrive_and_wait();

            const std::uint64_t tick = slot.iterations.load();
            for (auto& batch : slot.mailbox.drain()) {
                const bool accepted = apply_immigrants(isl.population_, batch.individuals, isl.options_.replacement,
                                                       mig.acceptance_probability, isl.rng_);
                MigrationRecord rec{"apply", batch.id, static_cast<std::size_t>(tick), batch.src, index, {}, accepted};
                for (const auto& ind : batch.individuals)
                    rec.fitness.push_back(ind.f());
                migration_log_.append(std::move(rec));
            }
            publish(slot);

            if (barrier_)
                barrier_->arrive_and_wait();

            isl.algorithm_.evolve(isl.population_, isl.rng_);
            const std::uint64_t done = slot.iterations.load() + 1;
            publish(slot);
            slot.iterations.store(done);
            {
                std::lock_guard lock(run_log_mutex_);
                run_log_.push_back({index, done, slot.champion_f.load(), isl.problem_.evaluations()});
            }

            if (done % mig.frequency != 0 || mig.rate == 0 || out.empty() || isl.population_.empty())
                continue;
            const auto emigrants = select_emigrants(isl.population_, isl.options_.selection, mig.rate);
            const std::uint64_t id = next_batch_id_.fetch_add(1);
            std::vector<double> fitness;
            for (const auto& ind : emigrants)
                fitness.push_back(ind.f());
            for (std::size_t dst : out) {
                migration_log_.append({"post", id, static_cast<std::size_t>(done), index, dst, fitness, false});
                auto replaced = slots_[dst]->mailbox.post(MigrantBatch{id, index, static_cast<std::size_t>(done), emigrants});
                if (replaced) {
                    MigrationRecord rec{"overwrite", replaced->id, replaced->tick, replaced->src, dst, {}, false};
                    for (const auto& ind : replaced->individuals)
                        rec.fitness.push_back(ind.f());
                    migration_log_.append(std::move(rec));
                }
            }
        }
    } catch (...) {
        record_error(std::current_exception());
        if (barrier_)
            barrier_->arrive_and_drop();
    }
}

void Archipelago::join()
{
    for (auto& t : threads_)
        if (t.joinable())
            t.join();
    threads_.clear();
    barrier_.reset();
    evolving_.store(false);
    std::exception_ptr e;
    {
        std::lock_guard lock(error_mutex_);
        std::swap(e, error_);
    }
    if (e)
        std::rethrow_exception(e);
}

Individual Archipelago::best() const
{
    require_idle("best");
    const Individual* best = nullptr;
    for (const auto& slot : slots_) {
        const auto& pop = slot->island.population_;
        if (pop.empty())
            continue;
        const Individual& c = pop.champion();
        if (!best || c.f() < best->f())
            best = &c;
    }
    if (!best)
        throw std::logic_error("archipelago: best() needs at least one non-empty population");
    return *best;
}

void Archipelago::reset(std::uint64_t seed)
{
    require_idle("reset");
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        Slot& slot = *slots_[i];
        for (auto& batch : slot.mailbox.drain()) {
            MigrationRecord rec{"discard", batch.id, batch.tick, batch.src, i, {}, false};
            for (const auto& ind : batch.individuals)
                rec.fitness.push_back(ind.f());
            migration_log_.append(std::move(rec));
        }
        slot.island.reseed(derive_seed(seed, i));
        publish(slot);
    }
}

std::vector<IslandStatus> Archipelago::snapshot() const
{
    std::vector<IslandStatus> out;
    out.reserve(slots_.size());
    for (const auto& slot : slots_)
        out.push_back({slot->champion_f.load(), slot->island.problem_.evaluations(), slot->iterations.load()});
    return out;
}

std::vector<RunRecord> Archipelago::run_log() const
{
    std::lock_guard lock(run_log_mutex_);
    return run_log_;
}

void Archipelago::write_run_log(std::ostream& out) const
{
    for (const auto& r : run_log()) {
        nlohmann::json j = {{"island", r.island},
                            {"iteration", r.iteration},
                            {"champion_f", r.champion_f},
                            {"evaluations", r.evaluations}};
        out << j.dump() << '\n';
    }
}

void Archipelago::clear_logs()
{
    require_idle("clear_logs");
    migration_log_.clear();
    std::lock_guard lock(run_log_mutex_);
    run_log_.clear();
}

std::vector<PendingBatch> Archipelago::pending_batches() const
{
    std::vector<PendingBatch> out;
    for (std::size_t i = 0; i < slots_.size(); ++i)
        for (auto id : slots_[i]->mailbox.pending_ids())
            out.emplace_back(id, i);
    return out;
}

}  // namespace archi
