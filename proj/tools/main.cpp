#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdisc/alien.hpp"
#include "hyperdisc/corpus.hpp"
#include "hyperdisc/defaults.hpp"
#include "hyperdisc/embedding.hpp"
#include "hyperdisc/errors.hpp"
#include "hyperdisc/evaluate.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/io_util.hpp"
#include "hyperdisc/predict.hpp"
#include "hyperdisc/synth.hpp"
#include "hyperdisc/transition.hpp"
#include "hyperdisc/walker.hpp"

namespace hd = hyperdisc;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string config_path;
};

// ---------------------------------------------------------------- config ---

std::map<std::string, std::string> load_flat_config(const std::string& path) {
    auto in = hd::io::open_input(path);
    std::map<std::string, std::string> config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq <= first)
            throw hd::ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw hd::ConfigError(path + ":" + std::to_string(lineno) +
                                               ": empty key");
        config[key] = value;
    }
    return config;
}

class ConfigMap {
public:
    void load(const std::string& path) { values_ = load_flat_config(path); }

    void apply(const std::string& key, std::string& var) const {
        const auto it = values_.find(key);
        if (it != values_.end()) var = it->second;
    }
    void apply(const std::string& key, bool& var) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return;
        if (it->second == "true" || it->second == "1")
            var = true;
        else if (it->second == "false" || it->second == "0")
            var = false;
        else
            throw hd::ConfigError("config key '" + key + "': expected boolean, got '" +
                                  it->second + "'");
    }
    template <typename T>
    void apply(const std::string& key, T& var) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return;
        const std::string& s = it->second;
        T parsed{};
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw hd::ConfigError("config key '" + key + "': cannot parse '" + s + "'");
        var = parsed;
    }

private:
    std::map<std::string, std::string> values_;
};

// Pre-scan so config defaults exist before CLI11 binds option variables.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

// ---------------------------------------------------------------- helpers ---

double parse_alpha(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf")
        return std::numeric_limits<double>::infinity();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(value >= 0.0))
        throw CLI::ValidationError("--alpha", "expected a nonnegative number or 'inf', got '" +
                                                  text + "'");
    return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        T value{};
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            throw CLI::ValidationError(what, "cannot parse list item '" + item + "'");
        out.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string window_label(int end_period, int memory) {
    return "[" + std::to_string(end_period - memory) + "," + std::to_string(end_period) + ")";
}

void write_manifest(const std::filesystem::path& out_path, const std::string& command,
                    const GlobalOpts& global, nlohmann::ordered_json params,
                    const std::vector<std::filesystem::path>& inputs) {
    nlohmann::ordered_json manifest;
    manifest["command"] = command;
    manifest["version"] = hd::defaults::kVersion;
    manifest["seed"] = global.seed;
    manifest["threads"] = global.threads;
    manifest["parameters"] = std::move(params);
    nlohmann::ordered_json digests = nlohmann::ordered_json::object();
    for (const auto& input : inputs) digests[input.string()] = hd::io::file_digest(input);
    manifest["inputs"] = std::move(digests);

    std::filesystem::path manifest_path = out_path;
    manifest_path += ".manifest.json";
    hd::io::AtomicFile file(manifest_path);
    file.stream() << manifest.dump(2) << '\n';
    file.commit();
}

struct GraphSource {
    std::string graph_path;
    std::string corpus_path;
    int year = 0;
    int memory = hd::defaults::kMemory;

    void add_options(CLI::App* cmd, const ConfigMap& config) {
        config.apply("memory", memory);
        cmd->add_option("--graph", graph_path, "Hypergraph snapshot produced by 'build'");
        cmd->add_option("--corpus", corpus_path, "Corpus file (one JSON record per line)");
        cmd->add_option("--year", year, "Prediction period: window ends here (exclusive)");
        cmd->add_option("--memory", memory, "Window length in periods")->capture_default_str();
    }

    bool has_corpus() const { return !corpus_path.empty(); }

    hd::Hypergraph load(std::vector<std::filesystem::path>& inputs) const {
        if (!graph_path.empty()) {
            inputs.push_back(graph_path);
            return hd::Hypergraph::load(graph_path);
        }
        if (corpus_path.empty())
            throw CLI::RequiredError("--graph or --corpus with --year");
        inputs.push_back(corpus_path);
        const hd::CorpusStore store = hd::load_corpus(corpus_path);
        return hd::Hypergraph::build(hd::window(store, year, memory));
    }
};

hd::SamplingMode transition_mode(const std::string& trans_alpha, bool lazy) {
    if (trans_alpha.empty()) return hd::SamplingMode::classic(lazy);
    return hd::SamplingMode::with_alpha(parse_alpha(trans_alpha), lazy);
}

// ------------------------------------------------------------ subcommands ---

void setup_build(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    auto opts = std::make_shared<GraphSource>();
    auto out = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand("build", "Build a hypergraph snapshot from a corpus window");
    opts->add_options(cmd, config);
    cmd->add_option("--out", *out, "Output snapshot path")->required();
    cmd->callback([&global, opts, out]() {
        if (!opts->has_corpus()) throw CLI::RequiredError("--corpus");
        std::vector<std::filesystem::path> inputs{opts->corpus_path};
        const hd::CorpusStore store = hd::load_corpus(opts->corpus_path);
        const hd::Hypergraph g = hd::Hypergraph::build(hd::window(store, opts->year, opts->memory));
        g.save(*out);
        nlohmann::ordered_json params;
        params["year"] = opts->year;
        params["memory"] = opts->memory;
        params["nodes"] = g.node_count();
        params["edges"] = g.edge_count();
        write_manifest(*out, "build", global, std::move(params), inputs);
    });
}

void setup_walk(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct WalkOpts {
        GraphSource source;
        std::string property;
        std::string alpha = "1";
        std::uint64_t walks = hd::defaults::kNumWalks;
        int length = hd::defaults::kWalkLength;
        bool lazy = false;
        bool strip = false;
        std::string out;
    };
    auto opts = std::make_shared<WalkOpts>();
    config.apply("alpha", opts->alpha);
    config.apply("walks", opts->walks);
    config.apply("length", opts->length);
    config.apply("lazy", opts->lazy);
    config.apply("strip-authors", opts->strip);

    CLI::App* cmd = app.add_subcommand("walk", "Sample random walks from a property node");
    opts->source.add_options(cmd, config);
    cmd->add_option("--property", opts->property, "Namespaced property token (p:...)")
        ->required();
    cmd->add_option("--alpha", opts->alpha, "Material bias: nonnegative number or 'inf'")
        ->capture_default_str();
    cmd->add_option("--walks", opts->walks, "Number of walks")->capture_default_str();
    cmd->add_option("--length", opts->length, "Steps per walk")->capture_default_str();
    cmd->add_flag("--lazy", opts->lazy, "Keep the current node in the candidate set");
    cmd->add_flag("--strip-authors", opts->strip, "Drop author tokens from the output");
    cmd->add_option("--out", opts->out, "Output walk file")->required();
    cmd->callback([&global, opts]() {
        std::vector<std::filesystem::path> inputs;
        const hd::Hypergraph g = opts->source.load(inputs);
        hd::WalkConfig cfg;
        cfg.alpha = parse_alpha(opts->alpha);
        cfg.walk_length = opts->length;
        cfg.num_walks = opts->walks;
        cfg.seed = global.seed;
        cfg.lazy = opts->lazy;
        hd::WalkCorpus walks =
            hd::sample_walks(g, g.node_id(opts->property), cfg, global.threads);
        if (opts->strip) walks = hd::strip_authors(walks);
        hd::save_walks(walks, opts->out);

        nlohmann::ordered_json params;
        params["property"] = opts->property;
        params["alpha"] = opts->alpha;
        params["walks"] = opts->walks;
        params["length"] = opts->length;
        params["lazy"] = opts->lazy;
        params["strip_authors"] = opts->strip;
        write_manifest(opts->out, "walk", global, std::move(params), inputs);
    });
}

void setup_embed(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct EmbedOpts {
        std::string walks_path;
        GraphSource source;  // corpus mode trains on record token bags
        hd::TrainConfig train;
        bool static_window = false;
        std::string out;
    };
    auto opts = std::make_shared<EmbedOpts>();
    config.apply("dim", opts->train.dimension);
    config.apply("window", opts->train.window);
    config.apply("epochs", opts->train.epochs);
    config.apply("negatives", opts->train.negatives);
    config.apply("lr", opts->train.learning_rate);
    config.apply("min-count", opts->train.min_count);
    config.apply("static-window", opts->static_window);

    CLI::App* cmd = app.add_subcommand(
        "embed", "Train skip-gram embeddings on a walk file or on corpus record bags");
    cmd->add_option("--walks", opts->walks_path, "Walk file to train on");
    opts->source.add_options(cmd, config);
    cmd->add_option("--dim", opts->train.dimension, "Embedding dimension")
        ->capture_default_str();
    cmd->add_option("--window", opts->train.window, "Context window size")
        ->capture_default_str();
    cmd->add_option("--epochs", opts->train.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--negatives", opts->train.negatives, "Negative samples per positive")
        ->capture_default_str();
    cmd->add_option("--lr", opts->train.learning_rate, "Initial learning rate")
        ->capture_default_str();
    cmd->add_option("--min-count", opts->train.min_count, "Minimum token frequency")
        ->capture_default_str();
    cmd->add_flag("--static-window", opts->static_window, "Disable dynamic window shrinking");
    cmd->add_option("--out", opts->out, "Output vector file")->required();
    cmd->callback([&global, opts]() {
        std::vector<std::filesystem::path> inputs;
        std::vector<std::vector<std::string>> sequences;
        if (!opts->walks_path.empty()) {
            inputs.push_back(opts->walks_path);
            sequences = hd::load_walks(opts->walks_path).sequences;
        } else if (opts->source.has_corpus()) {
            inputs.push_back(opts->source.corpus_path);
            const hd::CorpusStore store = hd::load_corpus(opts->source.corpus_path);
            sequences = hd::record_token_bags(
                hd::window(store, opts->source.year, opts->source.memory));
        } else {
            throw CLI::RequiredError("--walks or --corpus with --year");
        }
        hd::TrainConfig cfg = opts->train;
        cfg.seed = global.seed;
        cfg.threads = global.threads;
        cfg.dynamic_window = !opts->static_window;
        const hd::TrainResult result = hd::train_sgns(sequences, cfg);
        result.table.save(opts->out);

        nlohmann::ordered_json params;
        params["dim"] = cfg.dimension;
        params["window"] = cfg.window;
        params["epochs"] = cfg.epochs;
        params["negatives"] = cfg.negatives;
        params["lr"] = cfg.learning_rate;
        params["min_count"] = cfg.min_count;
        params["dynamic_window"] = cfg.dynamic_window;
        params["vocabulary"] = result.table.size();
        write_manifest(opts->out, "embed", global, std::move(params), inputs);
    });
}

void setup_predict(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct PredictOpts {
        GraphSource source;
        std::string vectors_path;
        std::string property;
        std::string metric = "deepwalk_cosine";
        std::string trans_alpha;  // empty = classic uniform sampling
        bool lazy = false;
        int k = hd::defaults::kTopK;
        std::string out;
    };
    auto opts = std::make_shared<PredictOpts>();
    config.apply("metric", opts->metric);
    config.apply("k", opts->k);

    CLI::App* cmd = app.add_subcommand("predict", "Rank candidate materials for a property");
    opts->source.add_options(cmd, config);
    cmd->add_option("--vectors", opts->vectors_path, "Vector file (deepwalk_cosine metric)");
    cmd->add_option("--property", opts->property, "Namespaced property token")->required();
    cmd->add_option("--metric", opts->metric, "Ranking metric")
        ->check(CLI::IsMember({"deepwalk_cosine", "trans2", "trans3"}))
        ->capture_default_str();
    cmd->add_option("--trans-alpha", opts->trans_alpha,
                    "Alpha-weighted transition metric instead of classic uniform");
    cmd->add_flag("--lazy", opts->lazy, "Lazy within-edge sampling for transition metrics");
    cmd->add_option("--k", opts->k, "Predictions to keep")->capture_default_str();
    cmd->add_option("--out", opts->out, "Output prediction file")->required();
    cmd->callback([&global, opts]() {
        if (!opts->source.has_corpus())
            throw CLI::RequiredError("--corpus with --year (candidate pool)");
        std::vector<std::filesystem::path> inputs{opts->source.corpus_path};
        const hd::CorpusStore store = hd::load_corpus(opts->source.corpus_path);
        const hd::CorpusView view =
            hd::window(store, opts->source.year, opts->source.memory);
        const auto pool = hd::candidate_pool(view, opts->property);

        hd::RankedPredictions preds;
        if (opts->metric == "deepwalk_cosine") {
            if (opts->vectors_path.empty())
                throw CLI::RequiredError("--vectors (required by metric deepwalk_cosine)");
            inputs.push_back(opts->vectors_path);
            const hd::VectorTable table = hd::VectorTable::load(opts->vectors_path);
            preds = hd::rank_discoveries_cosine(table, opts->property, pool, opts->k);
        } else {
            const hd::Hypergraph g = hd::Hypergraph::build(view);
            const auto pattern = opts->metric == "trans2" ? hd::MetaPathPattern::PAM
                                                          : hd::MetaPathPattern::PAAM;
            preds = hd::rank_discoveries_transition(
                g, opts->property, pattern, pool, opts->k,
                transition_mode(opts->trans_alpha, opts->lazy));
        }
        hd::save_predictions(preds, global.seed,
                             window_label(opts->source.year, opts->source.memory), opts->out);

        nlohmann::ordered_json params;
        params["property"] = opts->property;
        params["metric"] = opts->metric;
        params["k"] = opts->k;
        params["year"] = opts->source.year;
        params["memory"] = opts->source.memory;
        params["pool_size"] = pool.size();
        write_manifest(opts->out, "predict", global, std::move(params), inputs);
    });
}

void setup_discoverers(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct DiscOpts {
        GraphSource source;
        std::string vectors_path;
        std::string property;
        std::string material;
        std::string trans_alpha;
        bool lazy = false;
        int k = hd::defaults::kTopK;
        std::string out;
    };
    auto opts = std::make_shared<DiscOpts>();
    config.apply("k", opts->k);

    CLI::App* cmd = app.add_subcommand(
        "discoverers", "Rank likely discoverers of a property (or of a specific pair)");
    opts->source.add_options(cmd, config);
    cmd->add_option("--vectors", opts->vectors_path,
                    "Vector file trained on author-inclusive walks (pair mode)");
    cmd->add_option("--property", opts->property, "Namespaced property token")->required();
    cmd->add_option("--material", opts->material,
                    "Namespaced material token: switches to mean-rank pair mode");
    cmd->add_option("--trans-alpha", opts->trans_alpha,
                    "Alpha-weighted transition instead of classic uniform");
    cmd->add_flag("--lazy", opts->lazy, "Lazy within-edge sampling");
    cmd->add_option("--k", opts->k, "Authors to keep")->capture_default_str();
    cmd->add_option("--out", opts->out, "Output prediction file")->required();
    cmd->callback([&global, opts]() {
        std::vector<std::filesystem::path> inputs;
        hd::RankedPredictions preds;
        std::string window = "-";
        if (!opts->material.empty()) {
            if (opts->vectors_path.empty())
                throw CLI::RequiredError("--vectors (required with --material)");
            inputs.push_back(opts->vectors_path);
            const hd::VectorTable table = hd::VectorTable::load(opts->vectors_path);
            preds = hd::rank_discoverers_for_material(table, opts->property, opts->material,
                                                      opts->k);
        } else {
            const hd::Hypergraph g = opts->source.load(inputs);
            preds = hd::rank_discoverers(g, opts->property, opts->k,
                                         transition_mode(opts->trans_alpha, opts->lazy));
            if (opts->source.has_corpus())
                window = window_label(opts->source.year, opts->source.memory);
        }
        hd::save_predictions(preds, global.seed, window, opts->out);

        nlohmann::ordered_json params;
        params["property"] = opts->property;
        params["material"] = opts->material.empty() ? "-" : opts->material;
        params["metric"] = preds.metric;
        params["k"] = opts->k;
        write_manifest(opts->out, "discoverers", global, std::move(params), inputs);
    });
}

void setup_alien(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct AlienOpts {
        GraphSource source;
        std::string vectors_path;
        std::string property;
        double beta = std::numeric_limits<double>::quiet_NaN();
        std::string beta_grid;
        int k = hd::defaults::kTopK;
        std::string out;
    };
    auto opts = std::make_shared<AlienOpts>();
    config.apply("k", opts->k);
    config.apply("beta-grid", opts->beta_grid);

    CLI::App* cmd = app.add_subcommand(
        "alien", "Fuse inaccessibility and plausibility into complementary hypotheses");
    opts->source.add_options(cmd, config);
    cmd->add_option("--vectors", opts->vectors_path, "Plausibility vector file")->required();
    cmd->add_option("--property", opts->property, "Namespaced property token")->required();
    cmd->add_option("--beta", opts->beta, "Single mixing coefficient in [-1, 1]");
    cmd->add_option("--beta-grid", opts->beta_grid,
                    "Comma-separated ascending grid (default -0.8..0.8 step 0.2)");
    cmd->add_option("--k", opts->k, "Predictions per beta")->capture_default_str();
    cmd->add_option("--out", opts->out, "Output file (predictions or sweep)")->required();
    cmd->callback([&global, opts]() {
        if (!opts->source.has_corpus())
            throw CLI::RequiredError("--corpus with --year (candidate pool)");
        std::vector<std::filesystem::path> inputs{opts->source.corpus_path,
                                                  opts->vectors_path};
        const hd::CorpusStore store = hd::load_corpus(opts->source.corpus_path);
        const hd::CorpusView view =
            hd::window(store, opts->source.year, opts->source.memory);
        const hd::Hypergraph g = hd::Hypergraph::build(view);
        const hd::VectorTable table = hd::VectorTable::load(opts->vectors_path);
        const auto pool = hd::candidate_pool(view, opts->property);

        nlohmann::ordered_json params;
        params["property"] = opts->property;
        params["k"] = opts->k;
        params["year"] = opts->source.year;
        params["memory"] = opts->source.memory;

        if (!std::isnan(opts->beta)) {
            hd::FusionConfig cfg;
            cfg.beta = opts->beta;
            cfg.k = opts->k;
            const auto preds = hd::rank_alien(g, table, opts->property, pool, cfg);
            hd::save_predictions(preds, global.seed,
                                 window_label(opts->source.year, opts->source.memory),
                                 opts->out);
            params["beta"] = opts->beta;
        } else {
            const std::vector<double> grid =
                opts->beta_grid.empty() ? hd::default_beta_grid()
                                        : parse_list<double>(opts->beta_grid, "--beta-grid");
            const auto rows = hd::sweep_alien(g, table, opts->property, pool, grid, opts->k);
            hd::save_sweep(rows, opts->out);
            params["beta_grid"] = grid;
        }
        write_manifest(opts->out, "alien", global, std::move(params), inputs);
    });
}

void setup_eval(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct EvalOpts {
        std::string mode = "timeline";
        std::string preds_path;
        std::string score_map_path;
        std::string sweep_path;
        std::string truth_path;
        std::string scores_path;
        GraphSource source;
        std::string property;
        std::string periods;
        bool truth_header = false;
        std::string out;
    };
    auto opts = std::make_shared<EvalOpts>();
    config.apply("mode", opts->mode);

    CLI::App* cmd = app.add_subcommand("eval", "Score predictions against ground truth");
    cmd->add_option("--mode", opts->mode, "One of timeline, prauc, density, beta")
        ->check(CLI::IsMember({"timeline", "prauc", "density", "beta"}))
        ->capture_default_str();
    cmd->add_option("--preds", opts->preds_path, "Prediction file (timeline mode)");
    cmd->add_option("--score-map", opts->score_map_path, "token<TAB>score file (prauc mode)");
    cmd->add_option("--sweep", opts->sweep_path, "Sweep file from 'alien' (beta mode)");
    cmd->add_option("--truth", opts->truth_path, "Ground-truth file")->required();
    cmd->add_option("--scores", opts->scores_path, "Theoretical score table (beta mode)");
    opts->source.add_options(cmd, config);
    cmd->add_option("--property", opts->property, "Namespaced property token")->required();
    cmd->add_option("--periods", opts->periods, "Comma-separated periods (timeline mode)");
    cmd->add_flag("--truth-header", opts->truth_header, "Skip a header line in --truth");
    cmd->add_option("--out", opts->out, "Output report")->required();
    cmd->callback([&global, opts]() {
        std::vector<std::filesystem::path> inputs{opts->truth_path};
        const hd::GroundTruthSet truth =
            hd::load_ground_truth(opts->truth_path, opts->property, opts->truth_header);
        std::vector<hd::EvalRow> rows;
        nlohmann::ordered_json params;
        params["mode"] = opts->mode;
        params["property"] = opts->property;

        if (opts->mode == "timeline") {
            if (opts->preds_path.empty()) throw CLI::RequiredError("--preds");
            if (opts->periods.empty()) throw CLI::RequiredError("--periods");
            inputs.push_back(opts->preds_path);
            const auto preds = hd::load_predictions(opts->preds_path);
            const auto periods = parse_list<int>(opts->periods, "--periods");
            const auto series = hd::precision_timeline(preds, truth, periods);
            for (std::size_t i = 0; i < periods.size(); ++i)
                rows.push_back({opts->property, "precision_timeline",
                                std::to_string(periods[i]), series[i]});
        } else if (opts->mode == "prauc") {
            if (opts->score_map_path.empty()) throw CLI::RequiredError("--score-map");
            inputs.push_back(opts->score_map_path);
            const hd::ScoreTable table = hd::load_theoretical_scores(opts->score_map_path);
            std::map<std::string, double> scores(table.tau.begin(), table.tau.end());
            std::set<std::string> positives;
            for (const auto& [material, period] : truth.discovery_period)
                if (scores.count(material)) positives.insert(material);
            if (positives.empty())
                throw hd::ValidationError("no ground-truth material appears in the score map");
            const auto curve = hd::pr_curve(scores, positives);
            for (const auto& point : curve.points)
                rows.push_back({opts->property, "precision_at_recall",
                                hd::io::format_double(point.recall), point.precision});
            rows.push_back({opts->property, "pr_auc", "-", curve.auc});
        } else if (opts->mode == "density") {
            if (!opts->source.has_corpus()) throw CLI::RequiredError("--corpus with --year");
            inputs.push_back(opts->source.corpus_path);
            const hd::CorpusStore store = hd::load_corpus(opts->source.corpus_path);
            const hd::CorpusView view =
                hd::window(store, opts->source.year, opts->source.memory);
            const auto corr = hd::density_discovery_correlation(view, opts->property, truth);
            rows.push_back({opts->property, "density_spearman_rho", "-", corr.rho});
            rows.push_back({opts->property, "density_spearman_p", "-", corr.p_value});
            rows.push_back({opts->property, "density_n", "-", static_cast<double>(corr.n)});
        } else {  // beta
            if (opts->sweep_path.empty()) throw CLI::RequiredError("--sweep");
            if (opts->scores_path.empty()) throw CLI::RequiredError("--scores");
            inputs.push_back(opts->sweep_path);
            inputs.push_back(opts->scores_path);
            const auto sweep_rows = hd::load_sweep(opts->sweep_path);
            hd::BetaSweepEval sweep;
            for (const auto& row : sweep_rows) {
                if (sweep.betas.empty() || sweep.betas.back() != row.beta) {
                    sweep.betas.push_back(row.beta);
                    hd::RankedPredictions preds;
                    preds.property = opts->property;
                    preds.metric = "alien";
                    sweep.predictions.push_back(std::move(preds));
                }
                sweep.predictions.back().entries.emplace_back(row.token, row.s_final);
            }
            for (auto& preds : sweep.predictions)
                preds.k = static_cast<int>(preds.entries.size());

            const hd::ScoreTable tau = hd::load_theoretical_scores(opts->scores_path);
            std::set<std::string> discovered;
            for (const auto& [material, period] : truth.discovery_period)
                discovered.insert(material);
            const auto model = hd::plausibility_transform(tau, discovered);
            const auto conditionals = hd::beta_conditionals(sweep, truth, model);
            const auto joint = hd::joint_complementarity(sweep, truth, model);
            for (std::size_t i = 0; i < conditionals.betas.size(); ++i) {
                const std::string key = hd::io::format_double(conditionals.betas[i]);
                rows.push_back({opts->property, "p_beta_discoverable", key,
                                conditionals.p_discoverable[i]});
                rows.push_back({opts->property, "p_beta_plausible", key,
                                conditionals.p_plausible[i]});
                rows.push_back({opts->property, "joint_complementarity", key,
                                joint[i].second});
            }
            rows.push_back({opts->property, "expectation_gap", "-", conditionals.gap});
            double best_beta = joint.front().first;
            double best = joint.front().second;
            for (const auto& [beta, value] : joint) {
                if (value > best) {
                    best = value;
                    best_beta = beta;
                }
            }
            rows.push_back({opts->property, "joint_argmax_beta", "-", best_beta});
        }

        hd::save_eval_report(rows, opts->out);
        write_manifest(opts->out, "eval", global, std::move(params), inputs);
    });
}

void setup_synth(CLI::App& app, const ConfigMap& config, GlobalOpts& global) {
    struct SynthOpts {
        hd::PlantedConfig cfg;
        std::string reveal;
        std::string out_corpus;
        std::string out_truth;
    };
    auto opts = std::make_shared<SynthOpts>();
    config.apply("communities", opts->cfg.communities);
    config.apply("authors", opts->cfg.authors_per_community);
    config.apply("materials", opts->cfg.materials_per_community);
    config.apply("papers-per-period", opts->cfg.papers_per_period);
    config.apply("span", opts->cfg.period_span);
    config.apply("planted", opts->cfg.n_planted);
    config.apply("overlap", opts->cfg.overlap_rate);
    config.apply("property-papers", opts->cfg.property_papers_per_period);
    config.apply("bridge-papers", opts->cfg.bridge_papers_per_pair);

    CLI::App* cmd =
        app.add_subcommand("synth", "Generate a planted synthetic corpus and its ground truth");
    cmd->add_option("--communities", opts->cfg.communities)->capture_default_str();
    cmd->add_option("--authors", opts->cfg.authors_per_community, "Authors per community")
        ->capture_default_str();
    cmd->add_option("--materials", opts->cfg.materials_per_community, "Materials per community")
        ->capture_default_str();
    cmd->add_option("--papers-per-period", opts->cfg.papers_per_period)->capture_default_str();
    cmd->add_option("--span", opts->cfg.period_span, "History periods before prediction")
        ->capture_default_str();
    cmd->add_option("--planted", opts->cfg.n_planted, "Planted future discoveries")
        ->capture_default_str();
    cmd->add_option("--reveal", opts->reveal,
                    "Comma-separated reveal period per planted pair (default: span)");
    cmd->add_option("--overlap", opts->cfg.overlap_rate, "Cross-community author overlap rate")
        ->capture_default_str();
    cmd->add_option("--property-papers", opts->cfg.property_papers_per_period,
                    "Property background papers per period")
        ->capture_default_str();
    cmd->add_option("--bridge-papers", opts->cfg.bridge_papers_per_pair,
                    "Bridge paper rounds per planted pair")
        ->capture_default_str();
    cmd->add_option("--out-corpus", opts->out_corpus, "Output corpus file")->required();
    cmd->add_option("--out-truth", opts->out_truth, "Output ground-truth file")->required();
    cmd->callback([&global, opts]() {
        opts->cfg.seed = global.seed;
        if (!opts->reveal.empty())
            opts->cfg.reveal_periods = parse_list<int>(opts->reveal, "--reveal");
        const hd::PlantedInstance instance = hd::generate_planted(opts->cfg);
        hd::save_corpus(instance.store, opts->out_corpus);
        hd::save_ground_truth(instance.truth, opts->out_truth);

        nlohmann::ordered_json params;
        params["communities"] = opts->cfg.communities;
        params["authors_per_community"] = opts->cfg.authors_per_community;
        params["materials_per_community"] = opts->cfg.materials_per_community;
        params["papers_per_period"] = opts->cfg.papers_per_period;
        params["span"] = opts->cfg.period_span;
        params["planted"] = opts->cfg.n_planted;
        params["overlap"] = opts->cfg.overlap_rate;
        params["property_papers_per_period"] = opts->cfg.property_papers_per_period;
        params["bridge_papers_per_pair"] = opts->cfg.bridge_papers_per_pair;
        params["property"] = instance.property;
        params["prediction_period"] = instance.prediction_period;
        write_manifest(opts->out_corpus, "synth", global, std::move(params), {});
    });
}

void setup_defaults(CLI::App& app) {
    CLI::App* cmd =
        app.add_subcommand("defaults", "Print the shipped hyperparameter defaults as key=value");
    cmd->callback([]() {
        std::cout << "alpha=" << hd::io::format_double(hd::defaults::kAlpha) << '\n'
                  << "walks=" << hd::defaults::kNumWalks << '\n'
                  << "length=" << hd::defaults::kWalkLength << '\n'
                  << "window=" << hd::defaults::kWindow << '\n'
                  << "dim=" << hd::defaults::kDimension << '\n'
                  << "epochs=" << hd::defaults::kEpochs << '\n'
                  << "negatives=" << hd::defaults::kNegatives << '\n'
                  << "lr=" << hd::io::format_double(hd::defaults::kLearningRate) << '\n'
                  << "k=" << hd::defaults::kTopK << '\n'
                  << "memory=" << hd::defaults::kMemory << '\n';
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Human-aware discovery prediction over publication hypergraphs"};
    app.require_subcommand(1);

    GlobalOpts global;
    ConfigMap config;

    try {
        const std::string config_path = find_config_argument(argc, argv);
        if (!config_path.empty()) config.load(config_path);
        config.apply("seed", global.seed);
        config.apply("threads", global.threads);

        app.add_option("--seed", global.seed, "Deterministic RNG seed")
            ->capture_default_str();
        app.add_option("--threads", global.threads, "Worker cap (does not change outputs)")
            ->capture_default_str();
        app.add_option("--config", global.config_path,
                       "Flat key=value file; command-line flags take precedence");
        app.fallthrough();

        setup_build(app, config, global);
        setup_walk(app, config, global);
        setup_embed(app, config, global);
        setup_predict(app, config, global);
        setup_discoverers(app, config, global);
        setup_alien(app, config, global);
        setup_eval(app, config, global);
        setup_synth(app, config, global);
        setup_defaults(app);

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hyperdisc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
