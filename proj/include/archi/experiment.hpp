#ifndef ARCHI_EXPERIMENT_HPP
#define ARCHI_EXPERIMENT_HPP

#include "archi/archipelago.hpp"
#include "archi/strategy.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace archi::experiment {

/// Configuration problem; `key()` is the JSON path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ProblemSpec {
    std::string name;
    std::size_t dim = 0;   // for the n-dimensional test functions
    std::string file;      // knapsack instance path (resolved)
    bool operator==(const ProblemSpec&) const = default;
};

struct AlgorithmSpec {
    std::string name;
    std::map<std::string, double> params;  // every parameter, defaults filled in
    std::vector<AlgorithmSpec> inner;      // one entry for mbh / multistart
    bool operator==(const AlgorithmSpec&) const = default;
};

struct IslandSpec {
    AlgorithmSpec algorithm;
    std::size_t size = 1;
    std::size_t rate = 1;
    std::size_t frequency = 1;
    double acceptance_probability = 1.0;
    std::string selection = "best";
    std::string replacement = "conditional_worst";
    std::optional<std::uint64_t> seed;
    bool operator==(const IslandSpec&) const = default;
};

struct TopologySpec {
    std::string name;
    std::map<std::string, double> params;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // custom only
    std::optional<std::uint64_t> seed;
    bool operator==(const TopologySpec&) const = default;
};

enum class Mode { single, campaign, pruning_cycles };

struct RunSpec {
    Mode mode = Mode::single;
    std::size_t iterations = 1;
    std::size_t runs = 1;
    std::size_t cycles = 1;
    double keep_fraction = default_keep_fraction;
    double padding = default_padding;
    std::uint64_t seed = 0;
    bool lockstep = false;
    bool operator==(const RunSpec&) const = default;
};

struct ExperimentConfig {
    ProblemSpec problem;
    std::vector<IslandSpec> islands;
    TopologySpec topology;
    RunSpec run;
    std::string output_dir;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Relative file paths inside the config resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical form: every default spelled out. parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& c);

struct RegistryEntry {
    std::string name;
    std::string signature;
};
const std::vector<RegistryEntry>& registered_problems();
const std::vector<RegistryEntry>& registered_algorithms();
const std::vector<RegistryEntry>& registered_topologies();

Problem build_problem(const ProblemSpec& spec);
Algorithm build_algorithm(const AlgorithmSpec& spec);
/// Seeded generators take spec.seed, else derive_seed(master_seed, 0x70b0).
TopologyFactory build_topology(const TopologySpec& spec, std::uint64_t master_seed);
std::unique_ptr<Archipelago> build_archipelago(const ExperimentConfig& c, const Problem& problem);

struct RunOutcome {
    std::filesystem::path results_file;
    Individual best;
    double wall_time_s;
};

/// Executes the configured mode and writes into `out_dir`:
///   results.json         best solution, per-island stats, total evaluations
///   timing.json          wall time
///   run_log.jsonl        one record per island iteration
///   migration_log.jsonl  one record per migration event
///   topology.txt         edge list of the topology used
///   archive.txt          champion archive (campaign / pruning_cycles)
/// results.json contains nothing timing dependent, so a lockstep run is
/// reproducible byte for byte.
RunOutcome run(const ExperimentConfig& c, const std::filesystem::path& out_dir);

enum class PlotData { convergence, archive, topology };
PlotData plot_data_from_string(const std::string& s);

/// Writes <what>.tsv next to the results file and returns its path.
std::filesystem::path export_plotdata(const std::filesystem::path& results_file, PlotData what);

}  // namespace archi::experiment

#endif  // ARCHI_EXPERIMENT_HPP
