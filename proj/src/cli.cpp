#include "spingw/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spingw/series_io.hpp"
#include "spingw/stable_graph.hpp"
#include "spingw/verify.hpp"

namespace spingw::cli {

namespace {

constexpr int kCacheFormat = 1;

/// Raised for cache files written by an incompatible build or reading.
struct CacheError : Error {
    using Error::Error;
};

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string &key, const std::string &value)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used == value.size())
            return v;
    } catch (const std::exception &) {
    }
    throw DomainError("config: '" + key + "' expects an integer, got '" + value + "'");
}

Target parse_target(const std::string &text)
{
    if (text == "P1" || text == "p1")
        return Target::p1;
    if (text == "point")
        return Target::point;
    throw DomainError("unknown target '" + text + "' (expected point or P1)");
}

void check_format(const std::string &format)
{
    if (format != "json" && format != "csv")
        throw DomainError("unknown format '" + format + "' (expected json or csv)");
}

/// Output goes to --output when given, otherwise to the caller's stream.
void emit(const std::string &text, const std::string &path, std::ostream &out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw DomainError("cannot write '" + path + "'");
    file << text;
}

// --- correlator cache -------------------------------------------------------

struct CacheHeader {
    int beta_max = 0;
    int n1_max = 0;
};

/// Loads cached cells into table. Missing file is a cold cache.
std::optional<CacheHeader> load_cache(const std::string &path, CorrelatorTable &table)
{
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    std::string line;
    if (!std::getline(in, line))
        throw CacheError("cache '" + path + "' is empty");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &) {
        throw CacheError("cache '" + path + "' has no readable header");
    }
    if (!header.is_object() || header.value("format", -1) != kCacheFormat)
        throw CacheError("cache '" + path + "' has an incompatible format version");
    if (header.value("reading", std::string()) != to_string(table.reading()))
        throw CacheError("cache '" + path + "' was built with reading '" + header.value("reading", std::string()) +
                         "'");
    CacheHeader h{header.value("beta_max", 0), header.value("n1_max", 0)};
    while (std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        std::istringstream row(line);
        std::string b, n, v;
        if (!std::getline(row, b, ',') || !std::getline(row, n, ',') || !std::getline(row, v))
            throw CacheError("cache '" + path + "' has a malformed row");
        try {
            table.insert(std::stoi(b), std::stoi(n), parse_rational(trim(v)));
        } catch (const std::exception &) {
            throw CacheError("cache '" + path + "' has a malformed row");
        }
    }
    return h;
}

void save_cache(const std::string &path, const CorrelatorTable &table, CacheHeader h)
{
    nlohmann::ordered_json header;
    header["format"] = kCacheFormat;
    header["beta_max"] = h.beta_max;
    header["n1_max"] = h.n1_max;
    header["reading"] = to_string(table.reading());
    std::ostringstream text;
    text << header.dump() << '\n';
    for (const auto &[key, value] : table.entries())
        text << key.first << ',' << key.second << ',' << to_string(value) << '\n';
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw DomainError("cannot write cache '" + path + "'");
    file << text.str();
}

// --- subcommands ------------------------------------------------------------

struct Extra {
    std::string output;
    std::vector<std::string> suites;
    int n = 3;
    int max_edges = 0;
    int class_budget = 0;
    std::vector<int> marks;
    std::string input;
    bool to_point = false;
};

void require_p1_three(const RunConfig &cfg, const char *what)
{
    if (cfg.target != Target::p1 || cfg.r != 3)
        throw DomainError(std::string(what) + " supports only target P1 with r = 3");
}

int cmd_correlators(const RunConfig &cfg, const Extra &x, std::ostream &out)
{
    require_p1_three(cfg, "correlators");
    if (cfg.beta_max < 1 || cfg.n1_max < 0)
        throw DomainError("correlators needs beta_max >= 1 and n1_max >= 0");
    CorrelatorTable table(cfg.reading);
    CacheHeader stored{0, 0};
    if (!cfg.cache.empty())
        if (auto h = load_cache(cfg.cache, table))
            stored = *h;
    table.build(cfg.beta_max, cfg.n1_max);

    std::ostringstream text;
    if (cfg.format == "csv") {
        text << "beta,n1,n3,value\n";
        for (int beta = 1; beta <= cfg.beta_max; ++beta)
            for (int n1 = 0; n1 <= cfg.n1_max; ++n1)
                text << beta << ',' << n1 << ',' << selection_n3(beta, n1) << ','
                     << to_string(table.correlator(beta, n1)) << '\n';
    } else {
        nlohmann::ordered_json j;
        j["r"] = 3;
        j["target"] = "P1";
        j["reading"] = to_string(cfg.reading);
        j["bounds"] = {{"beta_max", cfg.beta_max}, {"n1_max", cfg.n1_max}};
        auto rows = nlohmann::ordered_json::array();
        for (int beta = 1; beta <= cfg.beta_max; ++beta)
            for (int n1 = 0; n1 <= cfg.n1_max; ++n1) {
                nlohmann::ordered_json row;
                row["beta"] = beta;
                row["n1"] = n1;
                row["n3"] = selection_n3(beta, n1);
                row["value"] = to_string(table.correlator(beta, n1));
                rows.push_back(std::move(row));
            }
        j["correlators"] = std::move(rows);
        text << j.dump(2) << '\n';
    }
    if (!cfg.cache.empty())
        save_cache(cfg.cache, table,
                   {std::max(stored.beta_max, cfg.beta_max), std::max(stored.n1_max, cfg.n1_max)});
    emit(text.str(), x.output, out);
    return exit_ok;
}

int cmd_potential(const RunConfig &cfg, const Extra &x, std::ostream &out)
{
    if (cfg.t_max < 0)
        throw DomainError("potential needs t_max >= 0");
    TruncatedSeries chi = [&] {
        if (cfg.target == Target::point && cfg.r == 2)
            return beta_zero_potential(Target::point, 2, 0, cfg.t_max);
        require_p1_three(cfg, "potential (other than the 2-spin point)");
        if (cfg.beta_max < 0)
            throw DomainError("potential needs beta_max >= 0");
        CorrelatorTable table(cfg.reading);
        if (!cfg.cache.empty())
            load_cache(cfg.cache, table);
        return assemble_potential(table, cfg.beta_max, cfg.t_max);
    }();
    emit(cfg.format == "csv" ? series_to_csv(chi) : series_to_json(chi).dump(2) + "\n", x.output, out);
    return exit_ok;
}

int cmd_verify(const RunConfig &cfg, const Extra &x, std::ostream &out)
{
    require_p1_three(cfg, "verify");
    VerifyOptions opt;
    opt.beta_max = cfg.beta_max;
    opt.n1_max = cfg.n1_max;
    opt.t_max = cfg.t_max;
    opt.reading = cfg.reading;
    std::vector<std::string> names = x.suites.empty() ? verification_suites() : x.suites;
    for (const auto &n : names)
        if (std::find(verification_suites().begin(), verification_suites().end(), n) == verification_suites().end())
            throw DomainError("unknown suite '" + n + "'");
    std::vector<SuiteResult> results;
    for (const auto &n : names)
        results.push_back(run_suite(n, opt));
    auto report = report_to_json(results);
    emit(report.dump(2) + "\n", x.output, out);
    return report["pass"].get<bool>() ? exit_ok : exit_verify_failed;
}

DecoratedGraph read_graph(const std::string &path)
{
    if (path.empty())
        throw DomainError("graph command needs --input");
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read graph file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &) {
        throw DomainError("malformed graph file '" + path + "'");
    }
    return graph_from_json(j);
}

/// Rejects graphs whose edges violate the congruence, naming the edge.
void require_congruence(const DecoratedGraph &g)
{
    for (const auto &d : is_stable(g).diagnostics)
        if (d.find("edge congruence") != std::string::npos)
            throw DomainError(d);
}

int cmd_graphs(const RunConfig &cfg, const Extra &x, std::ostream &out, std::ostream &err)
{
    if (cfg.action == "enumerate") {
        EnumerationRequest req;
        req.n = x.n;
        req.r = cfg.r;
        req.max_edges = x.max_edges;
        req.class_budget = x.class_budget;
        req.tail_marks = x.marks.empty() ? std::vector<int>(std::max(x.n, 0), 0) : x.marks;
        auto arr = nlohmann::ordered_json::array();
        for (const auto &g : enumerate_genus_zero(req))
            arr.push_back(graph_to_json(canonical_form(g)));
        emit(arr.dump(2) + "\n", x.output, out);
        return exit_ok;
    }
    DecoratedGraph g = read_graph(x.input);
    if (cfg.action == "stabilize") {
        require_congruence(g);
        std::function<int(int)> push = [](int c) { return c; };
        if (x.to_point)
            push = [](int) { return 0; };
        emit(graph_to_json(canonical_form(stabilize(g, push))).dump(2) + "\n", x.output, out);
        return exit_ok;
    }
    StabilityReport report = is_stable(g);
    nlohmann::ordered_json j;
    j["stable"] = report.stable;
    j["genus"] = genus(g);
    j["diagnostics"] = report.diagnostics;
    emit(j.dump(2) + "\n", x.output, out);
    for (const auto &d : report.diagnostics)
        err << "spingw: " << d << '\n';
    return report.stable ? exit_ok : exit_usage;
}

int cmd_cache(const RunConfig &cfg, std::ostream &out)
{
    if (cfg.cache.empty())
        throw DomainError("cache commands need --cache");
    if (cfg.action == "clear") {
        std::error_code ec;
        std::filesystem::remove(cfg.cache, ec);
        out << "removed " << cfg.cache << '\n';
        return exit_ok;
    }
    CorrelatorTable table(cfg.reading);
    nlohmann::ordered_json j;
    j["path"] = cfg.cache;
    auto h = load_cache(cfg.cache, table);
    j["exists"] = h.has_value();
    if (h) {
        j["format"] = kCacheFormat;
        j["reading"] = to_string(cfg.reading);
        j["beta_max"] = h->beta_max;
        j["n1_max"] = h->n1_max;
        j["entries"] = table.entries().size();
    }
    out << j.dump(2) << '\n';
    return exit_ok;
}

} // namespace

void apply_config_file(const std::string &path, RunConfig &cfg)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "beta_max")
            cfg.beta_max = parse_int(key, value);
        else if (key == "n1_max")
            cfg.n1_max = parse_int(key, value);
        else if (key == "t_max")
            cfg.t_max = parse_int(key, value);
        else if (key == "r")
            cfg.r = parse_int(key, value);
        else if (key == "format")
            cfg.format = value;
        else if (key == "cache")
            cfg.cache = value;
        else if (key == "reading")
            cfg.reading = parse_reading(value);
        else if (key == "target")
            cfg.target = parse_target(value);
        else
            throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact genus-zero spin Gromov-Witten correlators", "spingw"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    Extra x;
    std::string config_path, format, cache, reading, target;
    int beta_max = 0, n1_max = 0, t_max = 0, r = 0;

    auto *o_config = app.add_option("--config", config_path, "key = value config file");
    auto *o_beta = app.add_option("--beta-max", beta_max, "highest curve class");
    auto *o_n1 = app.add_option("--n1-max", n1_max, "highest number of tau_{0,1} insertions");
    auto *o_t = app.add_option("--t-max", t_max, "coordinate degree bound of the potential");
    auto *o_format = app.add_option("--format", format, "json or csv");
    auto *o_cache = app.add_option("--cache", cache, "correlator cache file");
    auto *o_reading = app.add_option("--reading", reading, "pde, printed-t01 or printed-t10");
    auto *o_target = app.add_option("--target", target, "point or P1");
    auto *o_r = app.add_option("--r", r, "spin parameter");
    app.add_option("--output,-o", x.output, "write to this file instead of stdout");

    auto *correlators = app.add_subcommand("correlators", "table of c(beta, n1)");
    auto *potential = app.add_subcommand("potential", "assemble the genus-zero potential");
    auto *verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", x.suites, "suite name (repeatable)");
    auto *graphs = app.add_subcommand("graphs", "decorated stable graphs");
    graphs->require_subcommand(1);
    graphs->fallthrough();
    auto *g_enum = graphs->add_subcommand("enumerate", "genus-zero stable graphs");
    g_enum->add_option("--n", x.n, "number of tails");
    g_enum->add_option("--max-edges", x.max_edges, "edge budget");
    g_enum->add_option("--class-budget", x.class_budget, "total curve class");
    g_enum->add_option("--marks", x.marks, "tail marks, in label order");
    g_enum->fallthrough();
    auto *g_stab = graphs->add_subcommand("stabilize", "stabilize a graph file");
    g_stab->add_option("--input", x.input, "graph JSON file");
    g_stab->add_flag("--to-point", x.to_point, "push every class forward to zero");
    g_stab->fallthrough();
    auto *g_val = graphs->add_subcommand("validate", "check stability of a graph file");
    g_val->add_option("--input", x.input, "graph JSON file");
    g_val->fallthrough();
    auto *cache_cmd = app.add_subcommand("cache", "inspect or remove the correlator cache");
    cache_cmd->require_subcommand(1);
    cache_cmd->fallthrough();
    auto *c_info = cache_cmd->add_subcommand("info", "describe the cache file");
    auto *c_clear = cache_cmd->add_subcommand("clear", "delete the cache file");
    c_info->fallthrough();
    c_clear->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (o_config->count())
            apply_config_file(config_path, cfg);
        if (o_beta->count())
            cfg.beta_max = beta_max;
        if (o_n1->count())
            cfg.n1_max = n1_max;
        if (o_t->count())
            cfg.t_max = t_max;
        if (o_format->count())
            cfg.format = format;
        if (o_cache->count())
            cfg.cache = cache;
        if (o_reading->count())
            cfg.reading = parse_reading(reading);
        if (o_target->count())
            cfg.target = parse_target(target);
        if (o_r->count())
            cfg.r = r;
        check_format(cfg.format);

        if (*correlators)
            return cmd_correlators(cfg, x, out);
        if (*potential)
            return cmd_potential(cfg, x, out);
        if (*verify)
            return cmd_verify(cfg, x, out);
        if (*graphs) {
            cfg.action = *g_enum ? "enumerate" : *g_stab ? "stabilize" : "validate";
            return cmd_graphs(cfg, x, out, err);
        }
        cfg.action = *c_clear ? "clear" : "info";
        return cmd_cache(cfg, out);
    } catch (const CacheError &e) {
        err << "spingw: " << e.what() << '\n';
        return exit_cache;
    } catch (const Error &e) {
        err << "spingw: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace spingw::cli
