#include "qocd/cli.hpp"

#include "file_util.hpp"
#include "qocd/activity.hpp"
#include "qocd/communities.hpp"
#include "qocd/compare.hpp"
#include "qocd/edgestats.hpp"
#include "qocd/error.hpp"
#include "qocd/infotheory.hpp"
#include "qocd/ingest.hpp"
#include "qocd/synth.hpp"
#include "qocd/weight_io.hpp"
#include "qocd/weighting.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

namespace qocd::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Context {
    std::ostream& out;
    std::ostream& err;
};

std::string sha256_file(const fs::path& path)
{
    auto in = detail::open_input(path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

void write_json(const fs::path& path, const Json& j)
{
    auto out = detail::open_output(path);
    out << j.dump(2) << '\n';
    detail::check_written(out, path);
}

/// Flags exclude output locations and the thread count, neither of which
/// changes results.
void write_manifest(const fs::path& path, const std::string& command, const Json& flags,
                    const std::vector<fs::path>& inputs)
{
    Json m;
    m["tool"] = "qocd";
    m["version"] = kVersion;
    m["command"] = command;
    m["flags"] = flags;
    Json in = Json::array();
    for (const auto& p : inputs) {
        in.push_back({{"path", p.generic_string()}, {"sha256", sha256_file(p)}});
    }
    m["inputs"] = in;
    write_json(path, m);
}

fs::path sidecar(const fs::path& p, const std::string& suffix)
{
    auto s = p;
    s += suffix;
    return s;
}

double parse_log_base(const std::string& text)
{
    if (text == "e") return std::numbers::e;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--log-base", "expected 'e' or a positive number");
    }
    if (used != text.size() || !(v > 0.0) || v == 1.0) {
        throw CLI::ValidationError("--log-base", "expected 'e' or a positive number other than 1");
    }
    return v;
}

struct WeightOptions {
    std::vector<std::string> schemes{"all"};
    std::vector<int> lags{1, 2, 3, 4, 5, 6};
    std::int64_t bin_width = 600;
    std::string log_base = "e";
    bool retweets_activity = true;
    unsigned threads = 1;
};

Json weight_flags(const WeightOptions& o)
{
    Json j;
    j["schemes"] = o.schemes;
    j["lags"] = o.lags;
    j["bin_width"] = o.bin_width;
    j["log_base"] = o.log_base;
    j["retweets_count_as_activity"] = o.retweets_activity;
    return j;
}

bool wants(const WeightOptions& o, const std::string& scheme)
{
    return std::find(o.schemes.begin(), o.schemes.end(), "all") != o.schemes.end() ||
           std::find(o.schemes.begin(), o.schemes.end(), scheme) != o.schemes.end();
}

/// Computes the requested weightings and writes <dir>/<scheme>.csv (+ .json).
/// TE tables also get <dir>/te<k>_raw.csv with untruncated estimates.
std::vector<WeightedDigraph> compute_weightings(const EventLog& log, const StructuralGraph& graph,
                                                const WeightOptions& o, const fs::path& dir)
{
    std::vector<WeightedDigraph> out;
    const double base = parse_log_base(o.log_base);

    if (wants(o, "structural")) {
        out.push_back(weight_structural(graph));
        write_weighting(dir / "structural.csv", out.back());
    }
    if (wants(o, "te")) {
        ActivityOptions act{o.bin_width, o.retweets_activity};
        const TimeWindow window = default_window(log, o.bin_width);
        const auto series = batch_coarsen(log, graph, act, window);
        for (int k : o.lags) {
            const auto table = pairwise_te(graph, series, k, o.threads);
            out.push_back(weight_te(graph, table));
            Json meta;
            meta["lag"] = k;
            meta["bin_width"] = o.bin_width;
            meta["origin"] = window.origin;
            meta["bins"] = bin_count(window, o.bin_width);
            meta["retweets_count_as_activity"] = o.retweets_activity;
            meta["truncation"] = "final estimate clipped at 0; raw values in te" + std::to_string(k) + "_raw.csv";
            write_weighting(dir / (out.back().scheme + ".csv"), out.back(), meta);
            WeightedDigraph raw{graph, out.back().scheme + "_raw", table.raw};
            write_weight_table(dir / (raw.scheme + ".csv"), raw);
        }
    }
    const bool any_interaction = wants(o, "pR") || wants(o, "pM") || wants(o, "MR");
    if (any_interaction) {
        auto pM = weight_pM(graph, log);
        auto pR = weight_pR(graph, log);
        Json meta;
        meta["denominators"] = "in-network events only; 0/0 -> 0";
        if (wants(o, "pR")) {
            out.push_back(pR);
            write_weighting(dir / "pR.csv", pR, meta);
        }
        if (wants(o, "pM")) {
            out.push_back(pM);
            write_weighting(dir / "pM.csv", pM, meta);
        }
        if (wants(o, "MR")) {
            out.push_back(weight_MR(pM, pR));
            write_weighting(dir / "MR.csv", out.back(), meta);
        }
    }
    if (wants(o, "HT")) {
        out.push_back(weight_HT(graph, hashtag_vectors(log, graph, base)));
        Json meta;
        meta["log_base"] = o.log_base;
        write_weighting(dir / "HT.csv", out.back(), meta);
    }
    return out;
}

Covering detect_and_warn(const WeightedDigraph& wg, double alpha, Context& ctx)
{
    if (!has_positive_weight(wg)) {
        ctx.err << "warning: weighting '" << wg.scheme << "' has no positive edge; every node is a singleton\n";
    }
    return detect_overlapping(wg, FitnessParams{alpha});
}

std::vector<UserId> universe_of(const StructuralGraph& g) { return {g.nodes().begin(), g.nodes().end()}; }

// Planted coverings may mention nodes the ingest filter dropped.
Covering import_restricted(const fs::path& path, const std::vector<UserId>& universe)
{
    auto in = detail::open_input(path);
    std::ostringstream kept;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string id;
        bool first = true;
        while (fields >> id) {
            if (first && id.front() == '#') break;
            if (std::binary_search(universe.begin(), universe.end(), id)) {
                kept << (first ? "" : " ") << id;
                first = false;
            }
        }
        kept << '\n';
    }
    std::istringstream filtered(kept.str());
    return import_covering(filtered, universe);
}

void write_nmi_matrix(const fs::path& path, const std::vector<std::string>& names,
                      const std::vector<Covering>& coverings)
{
    const std::size_t m = coverings.size();
    std::vector<std::vector<double>> v(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            v[i][j] = v[j][i] = nmi(coverings[i], coverings[j]);
        }
    }
    auto out = detail::open_output(path);
    out << "covering";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < m; ++i) {
        out << names[i];
        for (std::size_t j = 0; j < m; ++j) out << ',' << format_weight(v[i][j]);
        out << '\n';
    }
    detail::check_written(out, path);
}

struct NamedCovering {
    std::string name;
    Covering covering;
    std::vector<UserId> orphans;
};

void write_report(const fs::path& dir, const std::vector<NamedCovering>& coverings)
{
    auto stats_path = dir / "covering_stats.csv";
    auto stats = detail::open_output(stats_path);
    stats << "covering,communities,singletons,orphans\n";
    Json summary = Json::object();
    for (const auto& nc : coverings) {
        const auto s = covering_stats(nc.covering);
        stats << nc.name << ',' << s.communities << ',' << s.singletons << ',' << nc.orphans.size() << '\n';
        write_size_ccdf(size_ccdf(nc.covering), dir / "size_ccdf" / (nc.name + ".csv"));
        Json j;
        j["communities"] = s.communities;
        j["singletons"] = s.singletons;
        j["orphans"] = nc.orphans.size();
        j["sizes"] = s.sizes;
        summary[nc.name] = j;
    }
    detail::check_written(stats, stats_path);
    write_json(dir / "report.json", summary);
}

std::string edge_report_name(const std::string& covering, const std::string& scheme)
{
    return covering + "__" + scheme;
}

ConditionalWeightReport edge_report(const WeightedDigraph& wg, const Covering& c, const std::string& covering_name,
                                    std::size_t bins)
{
    auto classes = partition_edges(wg, c);
    auto report = conditional_weights(wg, classes, bins);
    report.covering = covering_name;
    return report;
}

// ---------------------------------------------------------------------------

struct PipelineOptions {
    fs::path input;
    fs::path output;
    std::uint64_t threshold = 9;
    WeightOptions weights;
    int featured_lag = 4;
    double alpha = 1.0;
    std::size_t hist_bins = 50;
};

int run_pipeline(const PipelineOptions& o, Context& ctx)
{
    const fs::path events_path = o.input / "events.jsonl";
    const fs::path follows_path = o.input / "follows.csv";
    const fs::path truth_path = o.input / "truth.txt";

    auto log = read_events(events_path);
    if (log.skipped_lines) ctx.err << "warning: skipped " << log.skipped_lines << " malformed event lines\n";
    std::size_t skipped_follows = 0;
    auto full = read_follow_graph(follows_path, &skipped_follows);
    if (skipped_follows) ctx.err << "warning: skipped " << skipped_follows << " follow rows\n";

    auto ingested = ingest_network(log, full, o.threshold);
    const StructuralGraph& graph = ingested.graph;
    fs::create_directories(o.output);
    write_follow_graph(graph, o.output / "network.csv");
    write_filter_report(ingested.report, o.output / "filter_report.json");

    auto weightings = compute_weightings(log, graph, o.weights, o.output / "weights");

    std::vector<NamedCovering> coverings;
    for (const auto& wg : weightings) {
        auto c = detect_and_warn(wg, o.alpha, ctx);
        export_covering(o.output / "coverings" / (wg.scheme + ".txt"), c);
        coverings.push_back({wg.scheme, std::move(c), orphans(wg)});
    }

    std::vector<std::string> names;
    std::vector<Covering> covers;
    for (const auto& nc : coverings) {
        names.push_back(nc.name);
        covers.push_back(nc.covering);
    }
    std::vector<fs::path> inputs{events_path, follows_path};
    if (fs::exists(truth_path)) {
        names.push_back("truth");
        covers.push_back(import_restricted(truth_path, universe_of(graph)));
        inputs.push_back(truth_path);
    }
    write_nmi_matrix(o.output / "nmi.csv", names, covers);

    // Conditional weight distributions: community types x weight types.
    const std::string featured = "te" + std::to_string(o.featured_lag);
    const std::vector<std::string> covering_types{"structural", featured, "HT", "MR"};
    const std::vector<std::string> weight_types{featured, "HT", "MR"};
    auto find_weighting = [&](const std::string& s) -> const WeightedDigraph* {
        for (const auto& wg : weightings) {
            if (wg.scheme == s) return &wg;
        }
        return nullptr;
    };
    auto find_covering = [&](const std::string& s) -> const Covering* {
        for (const auto& nc : coverings) {
            if (nc.name == s) return &nc.covering;
        }
        return nullptr;
    };
    for (const auto& cname : covering_types) {
        const Covering* c = find_covering(cname);
        if (!c) continue;
        for (const auto& wname : weight_types) {
            const WeightedDigraph* wg = find_weighting(wname);
            if (!wg) continue;
            write_edge_report(edge_report(*wg, *c, cname, o.hist_bins),
                              o.output / "edges" / edge_report_name(cname, wname));
        }
    }

    write_report(o.output / "report", coverings);

    Json flags;
    flags["threshold"] = o.threshold;
    flags["weights"] = weight_flags(o.weights);
    flags["featured_lag"] = o.featured_lag;
    flags["alpha"] = o.alpha;
    flags["hist_bins"] = o.hist_bins;
    write_manifest(o.output / "manifest.json", "pipeline", flags, inputs);
    ctx.out << "pipeline: " << graph.node_count() << " nodes, " << graph.edge_count() << " edges, "
            << weightings.size() << " weightings -> " << o.output.generic_string() << '\n';
    return kOk;
}

void add_weight_options(CLI::App* cmd, WeightOptions& o)
{
    cmd->add_option("--lag", o.lags, "Transfer-entropy lags (bins)")->check(CLI::Range(1, kMaxLag));
    cmd->add_option("--bin-width", o.bin_width, "Activity bin width in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--log-base", o.log_base, "tf-idf logarithm base ('e' or a number)");
    cmd->add_option("--retweets-count-as-activity", o.retweets_activity,
                    "Whether a retweet marks its author active (true/false)");
    cmd->add_option("--threads", o.threads, "Worker threads for pairwise TE")->check(CLI::PositiveNumber);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Context ctx{out, err};
    CLI::App app{"Question-specific weighted networks and overlapping community comparison", "qocd"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // synth
    SynthConfig synth_cfg;
    fs::path synth_config_file, synth_out;
    std::uint64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with planted structure");
    synth->add_option("--config", synth_config_file, "JSON synth configuration")->check(CLI::ExistingFile);
    synth->add_option("--seed", synth_seed, "Random seed (overrides the config)");
    synth->add_option("--nodes", synth_cfg.nodes, "Node count");
    synth->add_option("--communities", synth_cfg.communities, "Planted community count");
    synth->add_option("--bins", synth_cfg.bins, "Number of activity bins");
    synth->add_option("--epsilon", synth_cfg.epsilon, "Influence boost");
    synth->add_option("--cross-influencers", synth_cfg.cross_influencers, "Cross-community influencers");
    synth->add_option("-o,--output", synth_out, "Output directory")->required();

    // ingest
    fs::path ingest_in, ingest_events, ingest_follows, ingest_out;
    std::uint64_t threshold = 9;
    auto* ingest = app.add_subcommand("ingest", "Count information events, filter, keep the giant SCC");
    ingest->add_option("-i,--input", ingest_in, "Directory holding events.jsonl and follows.csv");
    ingest->add_option("--events", ingest_events, "Event JSON-lines file");
    ingest->add_option("--follows", ingest_follows, "Follow-edge CSV");
    ingest->add_option("--threshold", threshold, "Minimum outgoing and incoming information events");
    ingest->add_option("-o,--output", ingest_out, "Output directory")->required();

    // weight
    WeightOptions wopts;
    fs::path weight_events, weight_graph, weight_out;
    auto* weight = app.add_subcommand("weight", "Weight the structural edges");
    weight->add_option("--events", weight_events, "Event JSON-lines file")->required()->check(CLI::ExistingFile);
    weight->add_option("--graph", weight_graph, "Follow-edge CSV (normally ingest's network.csv)")
        ->required()
        ->check(CLI::ExistingFile);
    weight->add_option("--scheme", wopts.schemes, "structural, te, pR, pM, MR, HT or all")
        ->check(CLI::IsMember({"all", "structural", "te", "pR", "pM", "MR", "HT"}));
    add_weight_options(weight, wopts);
    weight->add_option("-o,--output", weight_out, "Output directory")->required();

    // detect
    fs::path detect_weights, detect_out;
    double alpha = 1.0;
    auto* detect = app.add_subcommand("detect", "Detect overlapping communities on a weight table");
    detect->add_option("-w,--weights", detect_weights, "Weight table CSV")->required()->check(CLI::ExistingFile);
    detect->add_option("--alpha", alpha, "Fitness resolution exponent")->check(CLI::PositiveNumber);
    detect->add_option("-o,--output", detect_out, "Covering file to write")->required();

    // compare
    std::vector<fs::path> compare_covers;
    fs::path compare_graph, compare_out;
    auto* compare = app.add_subcommand("compare", "NMI matrix between coverings");
    compare->add_option("-c,--covering", compare_covers, "Covering files")->required()->check(CLI::ExistingFile);
    compare->add_option("--graph", compare_graph, "Graph CSV defining the node universe")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("-o,--output", compare_out, "CSV to write")->required();

    // edges
    fs::path edges_weights, edges_cover, edges_out;
    std::size_t hist_bins = 50;
    auto* edges = app.add_subcommand("edges", "Inter/intra/mixed edge weight statistics");
    edges->add_option("-w,--weights", edges_weights, "Weight table CSV")->required()->check(CLI::ExistingFile);
    edges->add_option("-c,--covering", edges_cover, "Covering file")->required()->check(CLI::ExistingFile);
    edges->add_option("--bins", hist_bins, "Histogram bins")->check(CLI::PositiveNumber);
    edges->add_option("-o,--output", edges_out, "Output prefix")->required();

    // report
    std::vector<fs::path> report_covers, report_weights;
    fs::path report_graph, report_out;
    auto* report = app.add_subcommand("report", "Covering statistics and community-size CCDFs");
    report->add_option("-c,--covering", report_covers, "Covering files")->required()->check(CLI::ExistingFile);
    report->add_option("-w,--weights", report_weights, "Weight tables matching the coverings, for orphan counts")
        ->check(CLI::ExistingFile);
    report->add_option("--graph", report_graph, "Graph CSV defining the node universe")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("-o,--output", report_out, "Output directory")->required();

    // pipeline
    PipelineOptions popts;
    auto* pipeline = app.add_subcommand("pipeline", "ingest -> weight -> detect -> compare -> edges -> report");
    pipeline->add_option("-i,--input", popts.input, "Directory holding events.jsonl and follows.csv")
        ->required()
        ->check(CLI::ExistingDirectory);
    pipeline->add_option("--threshold", popts.threshold, "Minimum outgoing and incoming information events");
    add_weight_options(pipeline, popts.weights);
    pipeline->add_option("--featured-lag", popts.featured_lag, "TE lag used for edge statistics")
        ->check(CLI::Range(1, kMaxLag));
    pipeline->add_option("--alpha", popts.alpha, "Fitness resolution exponent")->check(CLI::PositiveNumber);
    pipeline->add_option("--bins", popts.hist_bins, "Histogram bins")->check(CLI::PositiveNumber);
    pipeline->add_option("-o,--output", popts.output, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*synth) {
            if (!synth_config_file.empty()) {
                auto in = detail::open_input(synth_config_file);
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception&) {
                    throw DataError("synth config is not valid JSON");
                }
                auto from_file = synth_config_from_json(j);
                // Explicit flags win over the file.
                if (synth->count("--nodes")) from_file.nodes = synth_cfg.nodes;
                if (synth->count("--communities")) from_file.communities = synth_cfg.communities;
                if (synth->count("--bins")) from_file.bins = synth_cfg.bins;
                if (synth->count("--epsilon")) from_file.epsilon = synth_cfg.epsilon;
                if (synth->count("--cross-influencers")) from_file.cross_influencers = synth_cfg.cross_influencers;
                synth_cfg = from_file;
            }
            if (synth->count("--seed")) synth_cfg.seed = synth_seed;
            auto data = generate(synth_cfg);
            write_synth(data, synth_cfg, synth_out);
            ctx.out << "synth: " << data.graph.node_count() << " nodes, " << data.graph.edge_count() << " edges, "
                    << data.log.events.size() << " events -> " << synth_out.generic_string() << '\n';
            return kOk;
        }
        if (*ingest) {
            if (!ingest_in.empty()) {
                if (ingest_events.empty()) ingest_events = ingest_in / "events.jsonl";
                if (ingest_follows.empty()) ingest_follows = ingest_in / "follows.csv";
            }
            if (ingest_events.empty() || ingest_follows.empty()) {
                err << "ingest: give -i DIR or both --events and --follows\n";
                return kUsageError;
            }
            auto log = read_events(ingest_events);
            if (log.skipped_lines) err << "warning: skipped " << log.skipped_lines << " malformed event lines\n";
            std::size_t skipped = 0;
            auto full = read_follow_graph(ingest_follows, &skipped);
            if (skipped) err << "warning: skipped " << skipped << " follow rows\n";
            auto result = ingest_network(log, full, threshold);
            fs::create_directories(ingest_out);
            write_follow_graph(result.graph, ingest_out / "network.csv");
            write_filter_report(result.report, ingest_out / "filter_report.json");
            write_manifest(ingest_out / "manifest.json", "ingest", Json{{"threshold", threshold}},
                           {ingest_events, ingest_follows});
            out << "ingest: kept " << result.report.kept.size() << ", removed " << result.report.removed_inactive.size()
                << " inactive and " << result.report.removed_not_in_gscc.size() << " outside the giant SCC\n";
            return kOk;
        }
        if (*weight) {
            auto log = read_events(weight_events);
            auto graph = read_follow_graph(weight_graph);
            auto wgs = compute_weightings(log, graph, wopts, weight_out);
            write_manifest(weight_out / "manifest.json", "weight", weight_flags(wopts), {weight_events, weight_graph});
            for (const auto& wg : wgs) out << "weight: wrote " << wg.scheme << '\n';
            return kOk;
        }
        if (*detect) {
            auto wg = read_weight_table(detect_weights);
            auto c = detect_and_warn(wg, alpha, ctx);
            export_covering(detect_out, c);
            write_manifest(sidecar(detect_out, ".manifest.json"), "detect", Json{{"alpha", alpha}}, {detect_weights});
            out << "detect: " << c.community_count() << " communities, " << c.singleton_count() << " singletons\n";
            return kOk;
        }
        if (*compare) {
            const auto universe = universe_of(read_follow_graph(compare_graph));
            std::vector<std::string> names;
            std::vector<Covering> covers;
            for (const auto& p : compare_covers) {
                names.push_back(p.stem().string());
                covers.push_back(import_covering(p, universe));
            }
            write_nmi_matrix(compare_out, names, covers);
            auto inputs = compare_covers;
            inputs.push_back(compare_graph);
            write_manifest(sidecar(compare_out, ".manifest.json"), "compare", Json::object(), inputs);
            return kOk;
        }
        if (*edges) {
            auto wg = read_weight_table(edges_weights);
            auto c = import_covering(edges_cover, universe_of(wg.graph));
            write_edge_report(edge_report(wg, c, edges_cover.stem().string(), hist_bins), edges_out);
            write_manifest(sidecar(edges_out, ".manifest.json"), "edges", Json{{"bins", hist_bins}},
                           {edges_weights, edges_cover});
            return kOk;
        }
        if (*report) {
            if (!report_weights.empty() && report_weights.size() != report_covers.size()) {
                err << "report: give one --weights per --covering, or none\n";
                return kUsageError;
            }
            const auto universe = universe_of(read_follow_graph(report_graph));
            std::vector<NamedCovering> named;
            for (std::size_t i = 0; i < report_covers.size(); ++i) {
                NamedCovering nc{report_covers[i].stem().string(), import_covering(report_covers[i], universe), {}};
                if (!report_weights.empty()) nc.orphans = orphans(read_weight_table(report_weights[i]));
                named.push_back(std::move(nc));
            }
            write_report(report_out, named);
            auto inputs = report_covers;
            inputs.insert(inputs.end(), report_weights.begin(), report_weights.end());
            inputs.push_back(report_graph);
            write_manifest(report_out / "manifest.json", "report", Json::object(), inputs);
            return kOk;
        }
        if (*pipeline) {
            return run_pipeline(popts, ctx);
        }
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kUsageError;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace qocd::cli
