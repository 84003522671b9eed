#include "archi/experiment.hpp"

#include "archi/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <set>

namespace archi::experiment {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

    struct ParamDef {
        const char* name;
        double fallback;
        bool integer;
    };

    struct AlgorithmDef {
        const char* name;
        std::vector<ParamDef> params;
        bool has_inner;
    };

    const std::vector<AlgorithmDef>& algorithm_defs()
    {
        static const std::vector<AlgorithmDef> defs = [] {
            const DeParams de;
            const SaCoranaParams sa;
            const PsoParams pso;
            const SgaParams sga;
            const IhsParams ihs;
            const CompassParams cs;
            const NelderMeadParams nm;
            auto d = [](std::size_t v) { return static_cast<double>(v); };
            return std::vector<AlgorithmDef>{
                {"de", {{"generations", d(de.generations), true}, {"F", de.F, false}, {"CR", de.CR, false}}, false},
                {"sa_corana",
                 {{"evaluations", d(sa.evaluations), true},
                  {"t_start", sa.t_start, false},
                  {"t_final", sa.t_final, false},
                  {"step_adjust_interval", d(sa.step_adjust_interval), true},
                  {"temp_adjust_interval", d(sa.temp_adjust_interval), true},
                  {"initial_range", sa.initial_range, false}},
                 false},
                {"pso",
                 {{"generations", d(pso.generations), true},
                  {"inertia", pso.inertia, false},
                  {"cognitive", pso.cognitive, false},
                  {"social", pso.social, false},
                  {"max_velocity_fraction", pso.max_velocity_fraction, false}},
                 false},
                {"sga",
                 {{"generations", d(sga.generations), true},
                  {"crossover_prob", sga.crossover_prob, false},
                  {"mutation_prob", sga.mutation_prob, false},
                  {"tournament_size", d(sga.tournament_size), true},
                  {"elitism_count", d(sga.elitism_count), true}},
                 false},
                {"ihs",
                 {{"iterations", d(ihs.iterations), true},
                  {"hmcr", ihs.hmcr, false},
                  {"par_min", ihs.par_min, false},
                  {"par_max", ihs.par_max, false},
                  {"bw_min", ihs.bw_min, false},
                  {"bw_max", ihs.bw_max, false}},
                 false},
                {"compass",
                 {{"max_evaluations", d(cs.max_evaluations), true},
                  {"start_step", cs.start_step, false},
                  {"stop_step", cs.stop_step, false},
                  {"reduction", cs.reduction, false}},
                 false},
                {"nelder_mead", {{"generations", d(nm.generations), true}, {"xtol", nm.xtol, false}}, false},
                {"mbh", {{"stop_after", 5, true}, {"perturbation", 0.05, false}}, true},
                {"monte_carlo", {{"evaluations", 1000, true}}, false},
                {"multistart", {{"starts", 10, true}}, true},
                {"null", {}, false},
            };
        }();
        return defs;
    }

    const AlgorithmDef* find_algorithm(const std::string& name)
    {
        for (const auto& d : algorithm_defs())
            if (name == d.name)
                return &d;
        return nullptr;
    }

    struct TopologyDef {
        const char* name;
        std::vector<ParamDef> params;
        bool seeded;
    };

    const std::vector<TopologyDef>& topology_defs()
    {
        static const std::vector<TopologyDef> defs{
            {"unconnected", {}, false},
            {"ring", {}, false},
            {"fully_connected", {}, false},
            {"hypercube", {}, false},
            {"rim", {}, false},
            {"barabasi_albert", {{"m", 2, true}}, true},
            {"watts_strogatz", {{"k", 2, true}, {"beta", 0.1, false}}, true},
            {"erdos_renyi", {{"p", 0.1, false}}, true},
            {"custom", {}, false},
        };
        return defs;
    }

    const TopologyDef* find_topology(const std::string& name)
    {
        for (const auto& d : topology_defs())
            if (name == d.name)
                return &d;
        return nullptr;
    }

    const std::set<std::string> dimensional_problems{"rastrigin", "rosenbrock", "schwefel", "griewank"};
    const std::set<std::string> fixed_problems{"branin", "himmelblau"};

    std::string join(const std::string& path, const std::string& key)
    {
        return path.empty() ? key : path + "." + key;
    }

    void require_object(const json& j, const std::string& path)
    {
        if (!j.is_object())
            throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    }

    void reject_unknown_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
    {
        for (const auto& [key, value] : j.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                throw ConfigError(join(path, key), "unknown key '" + key + "'");
        }
    }

    const json& require_key(const json& j, const std::string& path, const char* key)
    {
        if (!j.contains(key))
            throw ConfigError(join(path, key), "missing required key");
        return j.at(key);
    }

    std::string get_string(const json& j, const std::string& path)
    {
        if (!j.is_string())
            throw ConfigError(path, "expected a string");
        return j.get<std::string>();
    }

    double get_double(const json& j, const std::string& path)
    {
        if (!j.is_number())
            throw ConfigError(path, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v))
            throw ConfigError(path, "expected a finite number");
        return v;
    }

    std::uint64_t get_u64(const json& j, const std::string& path)
    {
        if (j.is_number_unsigned())
            return j.get<std::uint64_t>();
        if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
            return static_cast<std::uint64_t>(j.get<std::int64_t>());
        if (j.is_number_float()) {
            const double v = j.get<double>();
            if (v >= 0 && v == std::floor(v) && v < 9007199254740992.0)
                return static_cast<std::uint64_t>(v);
        }
        throw ConfigError(path, "expected a non-negative integer");
    }

    std::size_t get_size(const json& j, const std::string& path) { return static_cast<std::size_t>(get_u64(j, path)); }

    bool get_bool(const json& j, const std::string& path)
    {
        if (!j.is_boolean())
            throw ConfigError(path, "expected true or false");
        return j.get<bool>();
    }

    std::map<std::string, double> parse_params(const json* j, const std::vector<ParamDef>& defs, const std::string& path)
    {
        std::map<std::string, double> out;
        for (const auto& d : defs)
            out[d.name] = d.fallback;
        if (!j)
            return out;

        auto store = [&](const ParamDef& d, const json& v, const std::string& vpath) {
            out[d.name] = d.integer ? static_cast<double>(get_u64(v, vpath)) : get_double(v, vpath);
        };
        if (j->is_array()) {
            if (j->size() > defs.size())
                throw ConfigError(path, "expected at most " + std::to_string(defs.size()) + " positional parameters");
            for (std::size_t i = 0; i < j->size(); ++i)
                store(defs[i], (*j)[i], path + "[" + std::to_string(i) + "]");
            return out;
        }
        require_object(*j, path);
        for (const auto& [key, value] : j->items()) {
            auto it = std::find_if(defs.begin(), defs.end(), [&](const ParamDef& d) { return key == d.name; });
            if (it == defs.end())
                throw ConfigError(join(path, key), "unknown parameter '" + key + "'");
            store(*it, value, join(path, key));
        }
        return out;
    }

    json params_to_json(const std::map<std::string, double>& params, const std::vector<ParamDef>& defs)
    {
        json out = json::object();
        for (const auto& d : defs) {
            const double v = params.at(d.name);
            if (d.integer)
                out[d.name] = static_cast<std::uint64_t>(v);
            else
                out[d.name] = v;
        }
        return out;
    }

    std::size_t as_size(const std::map<std::string, double>& p, const char* key)
    {
        return static_cast<std::size_t>(p.at(key));
    }

    AlgorithmSpec parse_algorithm(const json& j, const std::string& path)
    {
        AlgorithmSpec spec;
        if (j.is_string()) {
            spec.name = j.get<std::string>();
        } else {
            require_object(j, path);
            reject_unknown_keys(j, path, {"name", "params", "inner"});
            spec.name = get_string(require_key(j, path, "name"), join(path, "name"));
        }
        const AlgorithmDef* def = find_algorithm(spec.name);
        if (!def)
            throw ConfigError(join(path, "name"), "unknown algorithm '" + spec.name + "'");

        const json* params = (j.is_object() && j.contains("params")) ? &j.at("params") : nullptr;
        spec.params = parse_params(params, def->params, join(path, "params"));

        if (def->has_inner) {
            if (!j.is_object() || !j.contains("inner"))
                throw ConfigError(join(path, "inner"), "algorithm '" + spec.name + "' needs an inner algorithm");
            spec.inner.push_back(parse_algorithm(j.at("inner"), join(path, "inner")));
        } else if (j.is_object() && j.contains("inner")) {
            throw ConfigError(join(path, "inner"), "algorithm '" + spec.name + "' takes no inner algorithm");
        }

        try {
            build_algorithm(spec);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(join(path, "params"), e.what());
        }
        return spec;
    }

    json algorithm_to_json(const AlgorithmSpec& spec)
    {
        const AlgorithmDef* def = find_algorithm(spec.name);
        json out = {{"name", spec.name}, {"params", params_to_json(spec.params, def->params)}};
        if (!spec.inner.empty())
            out["inner"] = algorithm_to_json(spec.inner.front());
        return out;
    }

    /// Smallest population the algorithm accepts, and an upper limit from
    /// elitism where relevant.
    void check_population_size(const AlgorithmSpec& a, std::size_t size, const std::string& path)
    {
        std::size_t min = 1;
        if (a.name == "de")
            min = 5;
        else if (a.name == "pso" || a.name == "ihs")
            min = 2;
        else if (a.name == "sga") {
            min = std::max<std::size_t>(2, as_size(a.params, "tournament_size"));
            if (as_size(a.params, "elitism_count") > size)
                throw ConfigError(path, "sga elitism_count exceeds the population size " + std::to_string(size));
        } else if (!a.inner.empty()) {
            check_population_size(a.inner.front(), size, path);
        }
        if (size < min)
            throw ConfigError(path, "algorithm '" + a.name + "' needs a population of at least " + std::to_string(min));
    }

    ProblemSpec parse_problem(const json& j, const fs::path& base_dir)
    {
        const std::string path = "problem";
        require_object(j, path);
        reject_unknown_keys(j, path, {"name", "dim", "file"});
        ProblemSpec spec;
        spec.name = get_string(require_key(j, path, "name"), "problem.name");
        if (dimensional_problems.count(spec.name)) {
            spec.dim = get_size(require_key(j, path, "dim"), "problem.dim");
            if (j.contains("file"))
                throw ConfigError("problem.file", "problem '" + spec.name + "' takes no file");
        } else if (fixed_problems.count(spec.name)) {
            if (j.contains("dim") || j.contains("file"))
                throw ConfigError(j.contains("dim") ? "problem.dim" : "problem.file",
                                  "problem '" + spec.name + "' takes no parameters");
        } else if (spec.name == "knapsack") {
            if (j.contains("dim"))
                throw ConfigError("problem.dim", "knapsack dimension comes from its file");
            fs::path file = get_string(require_key(j, path, "file"), "problem.file");
            if (file.is_relative() && !base_dir.empty())
                file = base_dir / file;
            spec.file = file.lexically_normal().string();
        } else {
            throw ConfigError("problem.name", "unknown problem '" + spec.name + "'");
        }
        try {
            build_problem(spec);
        } catch (const std::exception& e) {
            throw ConfigError(spec.name == "knapsack" ? "problem.file" : "problem.dim", e.what());
        }
        return spec;
    }

    json problem_to_json(const ProblemSpec& spec)
    {
        json out = {{"name", spec.name}};
        if (dimensional_problems.count(spec.name))
            out["dim"] = spec.dim;
        if (spec.name == "knapsack")
            out["file"] = spec.file;
        return out;
    }

    void parse_islands(const json& j, std::vector<IslandSpec>& out)
    {
        if (!j.is_array() || j.empty())
            throw ConfigError("islands", "expected a non-empty array");
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string path = "islands[" + std::to_string(i) + "]";
            const json& e = j[i];
            require_object(e, path);
            reject_unknown_keys(e, path,
                                {"algorithm", "size", "count", "rate", "frequency", "acceptance_probability",
                                 "selection", "replacement", "seed"});
            IslandSpec spec;
            spec.algorithm = parse_algorithm(require_key(e, path, "algorithm"), join(path, "algorithm"));
            spec.size = get_size(require_key(e, path, "size"), join(path, "size"));
            if (spec.size < 1)
                throw ConfigError(join(path, "size"), "population size must be at least 1");
            check_population_size(spec.algorithm, spec.size, join(path, "size"));
            if (e.contains("rate"))
                spec.rate = get_size(e.at("rate"), join(path, "rate"));
            if (e.contains("frequency"))
                spec.frequency = get_size(e.at("frequency"), join(path, "frequency"));
            if (spec.frequency < 1)
                throw ConfigError(join(path, "frequency"), "must be at least 1");
            if (e.contains("acceptance_probability")) {
                spec.acceptance_probability =
                    get_double(e.at("acceptance_probability"), join(path, "acceptance_probability"));
                if (spec.acceptance_probability < 0 || spec.acceptance_probability > 1)
                    throw ConfigError(join(path, "acceptance_probability"), "must lie in [0, 1]");
            }
            if (e.contains("selection")) {
                spec.selection = get_string(e.at("selection"), join(path, "selection"));
                try {
                    selection_from_string(spec.selection);
                } catch (const std::exception&) {
                    throw ConfigError(join(path, "selection"), "unknown selection policy '" + spec.selection + "'");
                }
            }
            if (e.contains("replacement")) {
                spec.replacement = get_string(e.at("replacement"), join(path, "replacement"));
                try {
                    replacement_from_string(spec.replacement);
                } catch (const std::exception&) {
                    throw ConfigError(join(path, "replacement"),
                                      "unknown replacement policy '" + spec.replacement + "'");
                }
            }
            if (e.contains("seed"))
                spec.seed = get_u64(e.at("seed"), join(path, "seed"));
            std::size_t count = 1;
            if (e.contains("count")) {
                count = get_size(e.at("count"), join(path, "count"));
                if (count < 1)
                    throw ConfigError(join(path, "count"), "must be at least 1");
                if (count > 1 && spec.seed)
                    throw ConfigError(join(path, "seed"), "an explicit seed cannot be shared by repeated islands");
            }
            for (std::size_t k = 0; k < count; ++k)
                out.push_back(spec);
        }
    }

    json island_to_json(const IslandSpec& s)
    {
        json out = {{"algorithm", algorithm_to_json(s.algorithm)},
                    {"size", s.size},
                    {"rate", s.rate},
                    {"frequency", s.frequency},
                    {"acceptance_probability", s.acceptance_probability},
                    {"selection", s.selection},
                    {"replacement", s.replacement}};
        if (s.seed)
            out["seed"] = *s.seed;
        return out;
    }

    TopologySpec parse_topology(const json& j, std::size_t islands)
    {
        const std::string path = "topology";
        TopologySpec spec;
        if (j.is_string()) {
            spec.name = j.get<std::string>();
        } else {
            require_object(j, path);
            reject_unknown_keys(j, path, {"name", "params", "edges", "seed"});
            spec.name = get_string(require_key(j, path, "name"), "topology.name");
        }
        const TopologyDef* def = find_topology(spec.name);
        if (!def)
            throw ConfigError(j.is_string() ? "topology" : "topology.name", "unknown topology '" + spec.name + "'");
        const json* params = (j.is_object() && j.contains("params")) ? &j.at("params") : nullptr;
        spec.params = parse_params(params, def->params, "topology.params");

        if (spec.name == "custom") {
            if (!j.is_object() || !j.contains("edges"))
                throw ConfigError("topology.edges", "custom topology needs an edge list");
            const json& edges = j.at("edges");
            if (!edges.is_array())
                throw ConfigError("topology.edges", "expected an array of [src, dst] pairs");
            for (std::size_t i = 0; i < edges.size(); ++i) {
                const std::string epath = "topology.edges[" + std::to_string(i) + "]";
                if (!edges[i].is_array() || edges[i].size() != 2)
                    throw ConfigError(epath, "expected [src, dst]");
                const auto src = get_size(edges[i][0], epath);
                const auto dst = get_size(edges[i][1], epath);
                if (src >= islands || dst >= islands || src == dst)
                    throw ConfigError(epath, "edge (" + std::to_string(src) + ", " + std::to_string(dst) +
                                                 ") is a self-loop or names a missing island");
                spec.edges.emplace_back(src, dst);
            }
        } else if (j.is_object() && j.contains("edges")) {
            throw ConfigError("topology.edges", "only the custom topology takes an edge list");
        }

        if (j.is_object() && j.contains("seed")) {
            if (!def->seeded)
                throw ConfigError("topology.seed", "topology '" + spec.name + "' is not random");
            spec.seed = get_u64(j.at("seed"), "topology.seed");
        }
        try {
            build_topology(spec, 0)(islands);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("topology.params", e.what());
        }
        return spec;
    }

    json topology_to_json(const TopologySpec& s)
    {
        const TopologyDef* def = find_topology(s.name);
        json out = {{"name", s.name}, {"params", params_to_json(s.params, def->params)}};
        if (s.name == "custom") {
            json edges = json::array();
            for (const auto& [a, b] : s.edges)
                edges.push_back({a, b});
            out["edges"] = edges;
        }
        if (s.seed)
            out["seed"] = *s.seed;
        return out;
    }

    Mode mode_from_string(const std::string& s)
    {
        if (s == "single")
            return Mode::single;
        if (s == "campaign")
            return Mode::campaign;
        if (s == "pruning_cycles")
            return Mode::pruning_cycles;
        throw ConfigError("run.mode", "unknown mode '" + s + "'");
    }

    std::string to_string(Mode m)
    {
        switch (m) {
        case Mode::single: return "single";
        case Mode::campaign: return "campaign";
        case Mode::pruning_cycles: return "pruning_cycles";
        }
        return "single";
    }

    RunSpec parse_run(const json& j)
    {
        RunSpec r;
        require_object(j, "run");
        reject_unknown_keys(j, "run",
                            {"mode", "iterations", "runs", "cycles", "keep_fraction", "padding", "seed", "lockstep"});
        if (j.contains("mode"))
            r.mode = mode_from_string(get_string(j.at("mode"), "run.mode"));
        if (j.contains("iterations"))
            r.iterations = get_size(j.at("iterations"), "run.iterations");
        if (j.contains("runs"))
            r.runs = get_size(j.at("runs"), "run.runs");
        if (j.contains("cycles"))
            r.cycles = get_size(j.at("cycles"), "run.cycles");
        if (j.contains("keep_fraction"))
            r.keep_fraction = get_double(j.at("keep_fraction"), "run.keep_fraction");
        if (j.contains("padding"))
            r.padding = get_double(j.at("padding"), "run.padding");
        if (j.contains("seed"))
            r.seed = get_u64(j.at("seed"), "run.seed");
        if (j.contains("lockstep"))
            r.lockstep = get_bool(j.at("lockstep"), "run.lockstep");

        if (r.runs < 1)
            throw ConfigError("run.runs", "must be at least 1");
        if (r.cycles < 1)
            throw ConfigError("run.cycles", "must be at least 1");
        if (!(r.keep_fraction > 0 && r.keep_fraction <= 1))
            throw ConfigError("run.keep_fraction", "must lie in (0, 1]");
        if (r.padding < 0)
            throw ConfigError("run.padding", "must be non-negative");
        return r;
    }

    json run_to_json(const RunSpec& r)
    {
        return {{"mode", to_string(r.mode)},          {"iterations", r.iterations}, {"runs", r.runs},
                {"cycles", r.cycles},                 {"keep_fraction", r.keep_fraction},
                {"padding", r.padding},               {"seed", r.seed},
                {"lockstep", r.lockstep}};
    }

    json vector_json(const Vector& x)
    {
        json out = json::array();
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out.push_back(x[i]);
        return out;
    }

    void write_text(const fs::path& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << text;
        if (!out)
            throw std::runtime_error("write failed: " + path.string());
    }

    json read_json_file(const fs::path& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open " + path.string());
        try {
            return json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path.string() + ": " + e.what());
        }
    }

    std::string format_double(double v)
    {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    }

}  // namespace

// ---------------------------------------------------------------------------

ExperimentConfig parse_config(const json& j, const fs::path& base_dir)
{
    require_object(j, "");
    reject_unknown_keys(j, "", {"problem", "islands", "topology", "run", "output_dir"});
    ExperimentConfig c;
    c.problem = parse_problem(require_key(j, "", "problem"), base_dir);
    parse_islands(require_key(j, "", "islands"), c.islands);
    c.topology = parse_topology(j.contains("topology") ? j.at("topology") : json("unconnected"), c.islands.size());
    if (j.contains("run"))
        c.run = parse_run(j.at("run"));
    if (j.contains("output_dir"))
        c.output_dir = get_string(j.at("output_dir"), "output_dir");
    return c;
}

ExperimentConfig load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j, path.parent_path());
}

json to_json(const ExperimentConfig& c)
{
    json islands = json::array();
    for (const auto& s : c.islands)
        islands.push_back(island_to_json(s));
    json out = {{"problem", problem_to_json(c.problem)},
                {"islands", islands},
                {"topology", topology_to_json(c.topology)},
                {"run", run_to_json(c.run)}};
    if (!c.output_dir.empty())
        out["output_dir"] = c.output_dir;
    return out;
}

// ---------------------------------------------------------------------------

const std::vector<RegistryEntry>& registered_problems()
{
    static const std::vector<RegistryEntry> entries{
        {"rastrigin", "rastrigin(dim)  [-5.12, 5.12]^dim"},
        {"rosenbrock", "rosenbrock(dim >= 2)  [-5, 10]^dim"},
        {"schwefel", "schwefel(dim)  [-500, 500]^dim"},
        {"griewank", "griewank(dim)  [-600, 600]^dim"},
        {"branin", "branin()  [-5, 10] x [0, 15]"},
        {"himmelblau", "himmelblau()  [-6, 6]^2"},
        {"knapsack", "knapsack(file)  0-1, dimension from the instance file"},
    };
    return entries;
}

namespace {
    std::string signature(const char* name, const std::vector<ParamDef>& params, bool inner)
    {
        std::ostringstream s;
        s << name << '(';
        bool first = true;
        for (const auto& p : params) {
            s << (first ? "" : ", ") << p.name << '=' << p.fallback;
            first = false;
        }
        if (inner)
            s << (first ? "" : ", ") << "inner";
        s << ')';
        return s.str();
    }
}  // namespace

const std::vector<RegistryEntry>& registered_algorithms()
{
    static const std::vector<RegistryEntry> entries = [] {
        std::vector<RegistryEntry> out;
        for (const auto& d : algorithm_defs())
            out.push_back({d.name, signature(d.name, d.params, d.has_inner)});
        return out;
    }();
    return entries;
}

const std::vector<RegistryEntry>& registered_topologies()
{
    static const std::vector<RegistryEntry> entries = [] {
        std::vector<RegistryEntry> out;
        for (const auto& d : topology_defs()) {
            std::string sig = signature(d.name, d.params, false);
            if (d.seeded)
                sig += " seeded";
            if (std::string(d.name) == "custom")
                sig = "custom(edges)";
            out.push_back({d.name, sig});
        }
        return out;
    }();
    return entries;
}

// ---------------------------------------------------------------------------

Problem build_problem(const ProblemSpec& spec)
{
    const auto& n = spec.name;
    if (n == "rastrigin")
        return problems::rastrigin(spec.dim);
    if (n == "rosenbrock")
        return problems::rosenbrock(spec.dim);
    if (n == "schwefel")
        return problems::schwefel(spec.dim);
    if (n == "griewank")
        return problems::griewank(spec.dim);
    if (n == "branin")
        return problems::branin();
    if (n == "himmelblau")
        return problems::himmelblau();
    if (n == "knapsack")
        return problems::knapsack(load_knapsack(spec.file));
    throw std::invalid_argument("unknown problem '" + n + "'");
}

Algorithm build_algorithm(const AlgorithmSpec& spec)
{
    const auto& n = spec.name;
    const auto& p = spec.params;
    if (n == "de")
        return algorithm::de({as_size(p, "generations"), p.at("F"), p.at("CR")});
    if (n == "sa_corana")
        return algorithm::sa_corana({as_size(p, "evaluations"), p.at("t_start"), p.at("t_final"),
                                     as_size(p, "step_adjust_interval"), as_size(p, "temp_adjust_interval"),
                                     p.at("initial_range")});
    if (n == "pso")
        return algorithm::pso(
            {as_size(p, "generations"), p.at("inertia"), p.at("cognitive"), p.at("social"), p.at("max_velocity_fraction")});
    if (n == "sga")
        return algorithm::sga({as_size(p, "generations"), p.at("crossover_prob"), p.at("mutation_prob"),
                               as_size(p, "tournament_size"), as_size(p, "elitism_count")});
    if (n == "ihs")
        return algorithm::ihs({as_size(p, "iterations"), p.at("hmcr"), p.at("par_min"), p.at("par_max"),
                               p.at("bw_min"), p.at("bw_max")});
    if (n == "compass")
        return algorithm::compass(
            {as_size(p, "max_evaluations"), p.at("start_step"), p.at("stop_step"), p.at("reduction")});
    if (n == "nelder_mead")
        return algorithm::nelder_mead({as_size(p, "generations"), p.at("xtol")});
    if (n == "mbh") {
        if (spec.inner.size() != 1)
            throw std::invalid_argument("mbh needs exactly one inner algorithm");
        return algorithm::mbh({build_algorithm(spec.inner.front()), as_size(p, "stop_after"), p.at("perturbation")});
    }
    if (n == "monte_carlo")
        return algorithm::monte_carlo(as_size(p, "evaluations"));
    if (n == "multistart") {
        if (spec.inner.size() != 1)
            throw std::invalid_argument("multistart needs exactly one inner algorithm");
        return algorithm::multistart(build_algorithm(spec.inner.front()), as_size(p, "starts"));
    }
    if (n == "null")
        return algorithm::null();
    throw std::invalid_argument("unknown algorithm '" + n + "'");
}

TopologyFactory build_topology(const TopologySpec& spec, std::uint64_t master_seed)
{
    const auto& n = spec.name;
    const auto& p = spec.params;
    const std::uint64_t seed = spec.seed.value_or(derive_seed(master_seed, 0x70b0));
    if (n == "unconnected")
        return topology::unconnected;
    if (n == "ring")
        return topology::ring;
    if (n == "fully_connected")
        return topology::fully_connected;
    if (n == "hypercube")
        return topology::hypercube;
    if (n == "rim")
        return topology::rim;
    if (n == "barabasi_albert") {
        const auto m = as_size(p, "m");
        return [m, seed](std::size_t k) { return topology::barabasi_albert(k, m, seed); };
    }
    if (n == "watts_strogatz") {
        const auto k = as_size(p, "k");
        const double beta = p.at("beta");
        return [k, beta, seed](std::size_t size) { return topology::watts_strogatz(size, k, beta, seed); };
    }
    if (n == "erdos_renyi") {
        const double prob = p.at("p");
        return [prob, seed](std::size_t k) { return topology::erdos_renyi(k, prob, seed); };
    }
    if (n == "custom") {
        const auto edges = spec.edges;
        return [edges](std::size_t k) {
            Topology t(k);
            for (const auto& [a, b] : edges)
                t.add_edge(a, b);
            return t;
        };
    }
    throw std::invalid_argument("unknown topology '" + n + "'");
}

std::unique_ptr<Archipelago> build_archipelago(const ExperimentConfig& c, const Problem& problem)
{
    auto a = std::make_unique<Archipelago>(build_topology(c.topology, c.run.seed), c.run.seed);
    a->set_lockstep(c.run.lockstep);
    for (const auto& s : c.islands) {
        IslandOptions o;
        o.migration = {s.rate, s.frequency, s.acceptance_probability};
        o.selection = selection_from_string(s.selection);
        o.replacement = replacement_from_string(s.replacement);
        o.seed = s.seed;
        a->push_back(Island(problem, build_algorithm(s.algorithm), s.size, o));
    }
    return a;
}

// ---------------------------------------------------------------------------

namespace {

    struct IslandTotals {
        double champion_f = 0;
        std::uint64_t evaluations = 0;
        std::uint64_t iterations = 0;
    };

    /// Accumulates logs and per-island counters over one or more
    /// archipelagos (several for pruning cycles).
    struct Collector {
        std::vector<IslandTotals> islands;
        std::vector<RunRecord> run_log;
        std::ostringstream migration_log;
        std::uint64_t tick_offset = 0;

        void absorb(const Archipelago& a)
        {
            const auto snap = a.snapshot();
            islands.resize(snap.size());
            std::uint64_t max_tick = 0;
            for (std::size_t i = 0; i < snap.size(); ++i) {
                islands[i].champion_f = snap[i].champion_f;
                islands[i].evaluations += snap[i].evaluations;
                islands[i].iterations += snap[i].iterations;
                max_tick = std::max(max_tick, snap[i].iterations);
            }
            for (auto r : a.run_log()) {
                r.iteration += tick_offset;
                run_log.push_back(r);
            }
            a.migration_log().write_jsonl(migration_log);
            tick_offset += max_tick;
        }
    };

}  // namespace

RunOutcome run(const ExperimentConfig& c, const fs::path& out_dir)
{
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);

    const Problem problem = build_problem(c.problem);
    Collector col;
    ChampionArchive archive(problem);
    std::vector<Bounds> history;
    Topology topo;

    if (c.run.mode == Mode::pruning_cycles) {
        auto builder = [&](const Problem& p) { return build_archipelago(c, p); };
        auto observe = [&](std::size_t, const Archipelago& a) {
            col.absorb(a);
            topo = a.topology();
        };
        auto result = pruning_cycles(problem, builder, c.run.cycles, c.run.runs, c.run.iterations,
                                     c.run.keep_fraction, c.run.padding, c.run.seed, observe);
        for (std::size_t cyc = 0; cyc < result.archives.size(); ++cyc)
            for (const auto& e : result.archives[cyc].entries())
                archive.add(Individual::evaluated(problem, e.x), cyc * c.run.runs + e.run);
        history = std::move(result.history);
    } else {
        auto a = build_archipelago(c, problem);
        if (c.run.mode == Mode::campaign) {
            const auto runs = multistart_campaign(*a, c.run.runs, c.run.iterations, c.run.seed);
            for (const auto& e : runs.entries())
                archive.add(Individual::evaluated(problem, e.x), e.run);
        } else {
            a->evolve(c.run.iterations);
            a->join();
            archive.add(a->best(), 0);
        }
        col.absorb(*a);
        topo = a->topology();
    }

    const auto ranked = archive.sorted();
    const Individual best = Individual::evaluated(problem, ranked.front().x);

    std::stable_sort(col.run_log.begin(), col.run_log.end(), [](const RunRecord& x, const RunRecord& y) {
        return x.iteration != y.iteration ? x.iteration < y.iteration : x.island < y.island;
    });

    json islands = json::array();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < col.islands.size(); ++i) {
        const auto& t = col.islands[i];
        total += t.evaluations;
        islands.push_back({{"index", i},
                           {"algorithm", c.islands[i].algorithm.name},
                           {"size", c.islands[i].size},
                           {"champion_f", t.champion_f},
                           {"evaluations", t.evaluations},
                           {"iterations", t.iterations}});
    }
    json runs = json::array();
    for (const auto& e : archive.entries())
        runs.push_back({{"run", e.run}, {"f", e.f}});
    json bounds = json::array();
    for (const auto& b : history)
        bounds.push_back({{"lower", vector_json(b.lower())}, {"upper", vector_json(b.upper())}});

    json results = {
        {"mode", to_string(c.run.mode)},
        {"problem", {{"name", problem.name()}, {"dimension", problem.dimension()}}},
        {"seed", c.run.seed},
        {"lockstep", c.run.lockstep},
        {"best", {{"f", best.f()}, {"x", vector_json(best.x())}}},
        {"islands", islands},
        {"total_evaluations", total},
        {"runs", runs},
        {"bounds_history", bounds},
        {"files",
         {{"run_log", "run_log.jsonl"},
          {"migration_log", "migration_log.jsonl"},
          {"topology", "topology.txt"},
          {"archive", "archive.txt"},
          {"timing", "timing.json"}}},
    };

    std::ostringstream run_log;
    for (const auto& r : col.run_log)
        run_log << json{{"island", r.island},
                        {"iteration", r.iteration},
                        {"champion_f", r.champion_f},
                        {"evaluations", r.evaluations}}
                       .dump()
                << '\n';
    std::ostringstream topo_text;
    topology::write_edge_list(topo_text, topo);
    std::ostringstream archive_text;
    archive.write(archive_text);

    const fs::path results_file = out_dir / "results.json";
    write_text(results_file, results.dump(2) + "\n");
    write_text(out_dir / "run_log.jsonl", run_log.str());
    write_text(out_dir / "migration_log.jsonl", col.migration_log.str());
    write_text(out_dir / "topology.txt", topo_text.str());
    write_text(out_dir / "archive.txt", archive_text.str());

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(out_dir / "timing.json", json{{"wall_time_s", wall}}.dump(2) + "\n");
    return {results_file, best, wall};
}

// ---------------------------------------------------------------------------

PlotData plot_data_from_string(const std::string& s)
{
    if (s == "convergence")
        return PlotData::convergence;
    if (s == "archive")
        return PlotData::archive;
    if (s == "topology")
        return PlotData::topology;
    throw std::invalid_argument("unknown export kind '" + s + "' (expected convergence, archive or topology)");
}

fs::path export_plotdata(const fs::path& results_file, PlotData what)
{
    const json results = read_json_file(results_file);
    const fs::path dir = results_file.parent_path();
    auto input = [&](const char* key) {
        if (!results.contains("files") || !results["files"].contains(key))
            throw std::runtime_error(results_file.string() + ": no '" + key + "' entry under files");
        const fs::path p = dir / results["files"][key].get<std::string>();
        if (!fs::exists(p))
            throw std::runtime_error("missing input " + p.string());
        return p;
    };

    std::ostringstream out;
    fs::path target;
    switch (what) {
    case PlotData::convergence: {
        target = dir / "convergence.tsv";
        std::ifstream in(input("run_log"));
        std::vector<std::tuple<std::size_t, std::uint64_t, double>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const json r = json::parse(line);
            const double f = r["champion_f"].is_number() ? r["champion_f"].get<double>() : std::nan("");
            rows.emplace_back(r["island"].get<std::size_t>(), r["iteration"].get<std::uint64_t>(), f);
        }
        std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b) : std::get<1>(a) < std::get<1>(b);
        });
        out << "# tick\tisland\tchampion_f\n";
        for (const auto& [island, tick, f] : rows)
            out << tick << '\t' << island << '\t' << format_double(f) << '\n';
        break;
    }
    case PlotData::archive: {
        target = dir / "archive.tsv";
        std::ifstream in(input("archive"));
        std::string line;
        std::size_t dim = results.at("problem").at("dimension").get<std::size_t>();
        out << "# run\tf";
        for (std::size_t i = 0; i < dim; ++i)
            out << "\tx_" << i;
        out << '\n';
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tok;
            bool first = true;
            while (ls >> tok) {
                out << (first ? "" : "\t") << tok;
                first = false;
            }
            if (!first)
                out << '\n';
        }
        break;
    }
    case PlotData::topology: {
        target = dir / "topology.tsv";
        std::ifstream in(input("topology"));
        const Topology t = topology::read_edge_list(in);
        out << "# nodes\t" << t.size() << '\n' << "# src\tdst\n";
        for (const auto& [a, b] : t.edges())
            out << a << '\t' << b << '\n';
        break;
    }
    }
    write_text(target, out.str());
    return target;
}

}  // namespace archi::experiment
