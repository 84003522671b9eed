#include "archi/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace archi {

void ChampionArchive::add(const Individual& ind, std::size_t run)
{
    if (!problem_.bounds().contains(ind.x()))
        throw std::invalid_argument("archive: entry outside the archive problem's bounds");
    entries_.push_back({ind.x(), ind.f(), run});
}

std::vector<ArchiveEntry> ChampionArchive::sorted() const
{
    auto out = entries_;
    std::stable_sort(out.begin(), out.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.f < b.f; });
    return out;
}

void ChampionArchive::write(std::ostream& out) const
{
    const auto prec = out.precision(17);
    for (const auto& e : entries_) {
        out << e.run << ' ' << e.f;
        for (Eigen::Index i = 0; i < e.x.size(); ++i)
            out << ' ' << e.x[i];
        out << '\n';
    }
    out.precision(prec);
}

ChampionArchive ChampionArchive::read(std::istream& in, const Problem& problem)
{
    ChampionArchive archive(problem);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        std::size_t run = 0;
        double f = 0;
        Vector x(static_cast<Eigen::Index>(problem.dimension()));
        if (!(ls >> run >> f))
            throw std::invalid_argument("archive line " + std::to_string(lineno) + ": expected run index and fitness");
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (!(ls >> x[i]))
                throw std::invalid_argument("archive line " + std::to_string(lineno) + ": expected " +
                                            std::to_string(x.size()) + " coordinates");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("archive line " + std::to_string(lineno) + ": too many columns");
        Individual ind = Individual::evaluated(problem, std::move(x));
        if (ind.f() != f)
            throw std::invalid_argument("archive line " + std::to_string(lineno) +
                                        ": stored fitness does not match re-evaluation");
        archive.add(ind, run);
    }
    return archive;
}

ChampionArchive multistart_campaign(Archipelago& a, std::size_t runs, std::size_t iterations_per_run,
                                    std::uint64_t seed)
{
    if (a.size() == 0)
        throw std::logic_error("multistart_campaign: empty archipelago");
    ChampionArchive archive(a.island(0).problem());
    for (std::size_t k = 0; k < runs; ++k) {
        a.reset(derive_seed(seed, k));
        a.evolve(iterations_per_run);
        a.join();
        archive.add(a.best(), k);
    }
    return archive;
}

Bounds prune_bounds(const ChampionArchive& archive, double keep_fraction, double padding)
{
    if (archive.empty())
        throw std::invalid_argument("prune_bounds: empty archive");
    if (!(keep_fraction > 0 && keep_fraction <= 1))
        throw std::invalid_argument("prune_bounds: keep_fraction must lie in (0, 1]");
    if (!(padding >= 0))
        throw std::invalid_argument("prune_bounds: padding must be non-negative");

    const auto ranked = archive.sorted();
    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(ranked.size()) - 1e-12)));

    Vector lo = ranked.front().x;
    Vector hi = ranked.front().x;
    for (std::size_t k = 1; k < keep; ++k) {
        lo = lo.cwiseMin(ranked[k].x);
        hi = hi.cwiseMax(ranked[k].x);
    }
    const auto& orig = archive.problem().bounds();
    const Vector margin = padding * orig.range();
    lo = (lo - margin).cwiseMax(orig.lower());
    hi = (hi + margin).cwiseMin(orig.upper());
    return Bounds(std::move(lo), std::move(hi));
}

Problem pruned_problem(const Problem& problem, const Bounds& bounds)
{
    if (bounds.dimension() != problem.dimension())
        throw std::invalid_argument("pruned_problem: dimension mismatch");
    if (!problem.bounds().contains(bounds))
        throw std::invalid_argument("pruned_problem: bounds escape the original box");
    return problem.with_bounds(bounds);
}

PruningResult pruning_cycles(const Problem& problem, const ArchipelagoBuilder& build, std::size_t cycles,
                             std::size_t runs_per_cycle, std::size_t iterations_per_run, double keep_fraction,
                             double padding, std::uint64_t seed, const CycleObserver& observe)
{
    if (cycles < 1)
        throw std::invalid_argument("pruning_cycles: at least one cycle required");
    if (runs_per_cycle < 1)
        throw std::invalid_argument("pruning_cycles: at least one run per cycle required");

    Problem current = problem;
    std::optional<Individual> best;
    std::vector<Bounds> history;
    std::vector<ChampionArchive> archives;
    for (std::size_t c = 0; c < cycles; ++c) {
        auto archipelago = build(current);
        if (!archipelago)
            throw std::invalid_argument("pruning_cycles: builder returned no archipelago");
        auto archive = multistart_campaign(*archipelago, runs_per_cycle, iterations_per_run, derive_seed(seed, c));
        if (observe)
            observe(c, *archipelago);
        for (const auto& e : archive.entries()) {
            if (!best || e.f < best->f())
                best = Individual::evaluated(problem, e.x);
        }
        Bounds next = prune_bounds(archive, keep_fraction, padding);
        history.push_back(next);
        archives.push_back(std::move(archive));
        current = pruned_problem(current, next);
    }
    return {*best, std::move(history), std::move(archives)};
}

}  // namespace archi
