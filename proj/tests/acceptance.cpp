// Acceptance gate for the discovery-prediction toolkit. Each numbered check
// prints one PASS/FAIL line; the binary exits 0 only if every check passes.
// Usage: acceptance <path-to-hyperdisc-cli>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdisc/alien.hpp"
#include "hyperdisc/embedding.hpp"
#include "hyperdisc/errors.hpp"
#include "hyperdisc/evaluate.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/io_util.hpp"
#include "hyperdisc/predict.hpp"
#include "hyperdisc/rng.hpp"
#include "hyperdisc/stats.hpp"
#include "hyperdisc/synth.hpp"
#include "hyperdisc/tokens.hpp"
#include "hyperdisc/transition.hpp"
#include "hyperdisc/walker.hpp"

#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace hyperdisc;
using testutil::Rec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) { return io::format_double(v); }

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (const double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
    const double m = mean_of(xs);
    double ss = 0.0;
    for (const double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// ---------------------------------------------------------------------------
// 1. meta-path scores vs exhaustive enumeration

std::vector<Rec> random_records(Rng& rng) {
    const int n = 3 + static_cast<int>(rng.next_below(7));
    std::vector<Rec> recs;
    for (int i = 0; i < n; ++i) {
        Rec r;
        r.id = "r" + std::to_string(i);
        r.year = 2000;
        const auto na = rng.next_below(4);
        for (std::uint64_t j = 0; j < na; ++j)
            r.authors.push_back("a" + std::to_string(rng.next_below(9)));
        const auto nm = rng.next_below(4);
        for (std::uint64_t j = 0; j < nm; ++j)
            r.materials.push_back("m" + std::to_string(rng.next_below(9)));
        if (i == 0) {
            r.properties.push_back("P");
            if (r.authors.empty() && r.materials.empty() && rng.next_below(2))
                r.authors.push_back("a0");
        } else if (rng.next_below(4) == 0) {
            r.properties.push_back(rng.next_below(2) ? "P" : "Q");
        }
        if (r.authors.empty() && r.materials.empty() && r.properties.empty())
            r.materials.push_back("m0");
        recs.push_back(std::move(r));
    }
    return recs;
}

Outcome criterion_meta_path_oracle() {
    Timer t;
    Rng rng = Rng::stream(101, 0);
    const std::vector<double> alphas{0.0, 1.0, 2.0, kInf};
    const std::vector<MetaPathPattern> patterns{MetaPathPattern::PAM, MetaPathPattern::PAAM,
                                                MetaPathPattern::PMA};
    int graphs = 0;
    long comparisons = 0;
    double max_diff = 0.0;
    while (graphs < 100) {
        const auto g = testutil::make_graph(random_records(rng), 2001, 5);
        if (g.node_count() == 0 || g.node_count() > 40 || !g.has_node("p:P")) continue;
        ++graphs;
        const NodeId p = g.node_id("p:P");
        for (const bool lazy : {false, true}) {
            for (const double alpha : alphas) {
                const auto mode = SamplingMode::with_alpha(alpha, lazy);
                for (const auto pattern : patterns) {
                    const auto fast = meta_path_score(g, p, pattern, mode);
                    const auto slow = oracle_meta_path(g, p, pattern, mode);
                    if (fast.size() != slow.size())
                        return {false, "result key sets diverge on graph " +
                                           std::to_string(graphs)};
                    for (const auto& [node, value] : slow) {
                        const auto it = fast.find(node);
                        if (it == fast.end())
                            return {false, "missing node in analytic result"};
                        max_diff = std::max(max_diff, std::abs(it->second - value));
                        ++comparisons;
                    }
                }
            }
        }
    }
    const double secs = t.seconds();
    const bool pass = max_diff <= 1e-12 && secs < 60.0;
    return {pass, std::to_string(graphs) + " graphs, " + std::to_string(comparisons) +
                      " entries, max |diff| " + fmt(max_diff) + ", " + fmt(secs) +
                      "s (limit 60s)"};
}

// ---------------------------------------------------------------------------
// 2. sampled first-step frequencies vs the analytic row

Hypergraph twenty_node_graph() {
    const auto g = testutil::make_graph(
        {
            {"r1", 2000, {"a1", "a2"}, {"m1", "m2"}, {"P"}},
            {"r2", 2000, {"a3"}, {"m3", "m4"}, {"P"}},
            {"r3", 2000, {"a1", "a4"}, {"m1", "m5", "m6"}, {}},
            {"r4", 2000, {"a5"}, {"m7", "m8"}, {}},
            {"r5", 2000, {"a2", "a6"}, {"m9", "m10"}, {}},
            {"r6", 2000, {"a7"}, {"m11", "m12"}, {"P"}},
        },
        2001, 5);
    return g;
}

Outcome criterion_sampler_consistency() {
    Timer t;
    const auto g = twenty_node_graph();
    if (g.node_count() != 20)
        return {false, "fixture has " + std::to_string(g.node_count()) + " nodes, wanted 20"};
    const NodeId p = g.node_id("p:P");

    WalkConfig cfg;
    cfg.alpha = 1.0;
    cfg.seed = 4242;
    const double l1_alpha = empirical_vs_analytic(g, p, cfg, 1000000);

    cfg.alpha = 2.5;
    cfg.lazy = true;
    cfg.seed = 4243;
    const double l1_lazy = empirical_vs_analytic(g, p, cfg, 1000000);

    const double secs = t.seconds();
    const bool pass = l1_alpha <= 0.01 && l1_lazy <= 0.01 && secs < 30.0;
    return {pass, "1e6 walks, L1 " + fmt(l1_alpha) + " (alpha=1) and " + fmt(l1_lazy) +
                      " (alpha=2.5 lazy), " + fmt(secs) + "s (limit 30s)"};
}

// ---------------------------------------------------------------------------
// 3. exact alpha semantics

Outcome criterion_alpha_semantics() {
    Rng rng = Rng::stream(303, 0);

    // alpha=1: author and material partitions carry identical mass whenever
    // both are present and no property competes for the non-material share.
    double max_partition_gap = 0.0;
    long checked_pairs = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = testutil::make_graph(random_records(rng), 2001, 5);
        if (g.node_count() == 0) continue;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto& nodes = g.edge_nodes(e);
            for (const NodeId current : nodes) {
                for (const bool lazy : {false, true}) {
                    const auto dist = node_step_distribution(
                        g, nodes, current, SamplingMode::with_alpha(1.0, lazy));
                    double mass_a = 0.0, mass_m = 0.0, mass_p = 0.0;
                    bool any_a = false, any_m = false;
                    for (const NodeId n : nodes) {
                        if (!lazy && n == current) continue;
                        if (g.kind(n) == Kind::Author) any_a = true;
                        if (g.kind(n) == Kind::Material) any_m = true;
                    }
                    for (const auto& [n, prob] : dist.node_probs) {
                        if (g.kind(n) == Kind::Author) mass_a += prob;
                        else if (g.kind(n) == Kind::Material) mass_m += prob;
                        else mass_p += prob;
                    }
                    if (any_a && any_m && mass_p == 0.0) {
                        max_partition_gap =
                            std::max(max_partition_gap, std::abs(mass_a - mass_m));
                        ++checked_pairs;
                    }
                }
            }
        }

        // alpha=inf: author columns are exactly zero everywhere.
        const TransitionModel inf_model(g, SamplingMode::with_alpha(kInf));
        const auto& matrix = inf_model.matrix();
        for (int row = 0; row < matrix.outerSize(); ++row) {
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(matrix, row);
                 it; ++it) {
                if (g.kind(static_cast<NodeId>(it.col())) == Kind::Author && it.value() != 0.0)
                    return {false, "alpha=inf leaked mass onto an author"};
            }
        }
    }
    // Power-of-two partitions make the alpha=1 split bit-exact.
    {
        const auto g = testutil::make_graph(
            {{"r", 2000, {"a1", "a2"}, {"m1", "m2"}, {"P"}}}, 2001, 5);
        const auto& nodes = g.edge_nodes(0);
        const auto dist = node_step_distribution(g, nodes, g.node_id("p:P"),
                                                 SamplingMode::with_alpha(1.0, false));
        double mass_a = 0.0, mass_m = 0.0;
        for (const auto& [n, prob] : dist.node_probs)
            (g.kind(n) == Kind::Author ? mass_a : mass_m) += prob;
        if (mass_a != mass_m || mass_a != 0.5)
            return {false, "alpha=1 two/two split is not exactly half and half"};
    }
    // alpha=inf on an author-only candidate set: all mass terminates.
    {
        const auto g =
            testutil::make_graph({{"r", 2000, {"a1", "a2"}, {}, {"P"}}}, 2001, 5);
        const auto dist = node_step_distribution(g, g.edge_nodes(0), g.node_id("p:P"),
                                                 SamplingMode::with_alpha(kInf, false));
        if (dist.termination != 1.0 || !dist.node_probs.empty())
            return {false, "alpha=inf author-only set failed to terminate"};
    }

    // Sampled sequences: alpha=0 never touches a material after the start;
    // alpha=inf never touches an author at all.
    const auto g = testutil::make_graph(
        {
            {"w1", 2000, {"a1", "a2"}, {"m1"}, {"P"}},
            {"w2", 2000, {"a2", "a3"}, {"m2"}, {}},
            {"w3", 2000, {"a3"}, {"m1", "m3"}, {"P"}},
            {"w4", 2000, {"a1", "a4"}, {"m2", "m4"}, {}},
        },
        2001, 5);
    WalkConfig cfg;
    cfg.num_walks = 3000;
    cfg.walk_length = 12;
    cfg.seed = 3030;
    cfg.alpha = 0.0;
    const auto author_walks = sample_walks(g, g.node_id("p:P"), cfg);
    long material_hits = 0;
    for (const auto& seq : author_walks.sequences)
        for (std::size_t i = 1; i < seq.size(); ++i)
            material_hits += token_kind(seq[i]) == Kind::Material;

    cfg.alpha = kInf;
    const auto material_walks = sample_walks(g, g.node_id("p:P"), cfg);
    long author_hits = 0;
    for (const auto& seq : material_walks.sequences)
        for (std::size_t i = 1; i < seq.size(); ++i)
            author_hits += token_kind(seq[i]) == Kind::Author;

    const bool pass =
        max_partition_gap <= 1e-15 && checked_pairs > 50 && material_hits == 0 && author_hits == 0;
    return {pass, "partition gap " + fmt(max_partition_gap) + " over " +
                      std::to_string(checked_pairs) + " pairs; " +
                      std::to_string(material_hits) + " materials after start at alpha=0; " +
                      std::to_string(author_hits) + " authors at alpha=inf"};
}

// ---------------------------------------------------------------------------
// 4. SGNS analytic gradients vs central finite differences

Outcome criterion_sgns_gradients() {
    Rng rng = Rng::stream(404, 0);
    const int dim = 8;
    const double h = 1e-5;
    double max_rel = 0.0;

    auto random_vec = [&]() {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.next_double() * 3.0 - 1.5;
        return v;
    };
    auto rel_err = [](double a, double b) {
        return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
    };

    for (int tuple = 0; tuple < 100; ++tuple) {
        Eigen::VectorXd center = random_vec();
        Eigen::VectorXd context = random_vec();
        std::vector<Eigen::VectorXd> negatives;
        const auto n_neg = 1 + rng.next_below(5);
        for (std::uint64_t i = 0; i < n_neg; ++i) negatives.push_back(random_vec());

        const auto grads = sgns::pair_gradients(center, context, negatives);
        for (int i = 0; i < dim; ++i) {
            auto fd = [&](Eigen::VectorXd& target) {
                const double orig = target[i];
                target[i] = orig + h;
                const double up = sgns::pair_loss(center, context, negatives);
                target[i] = orig - h;
                const double down = sgns::pair_loss(center, context, negatives);
                target[i] = orig;
                return (up - down) / (2.0 * h);
            };
            max_rel = std::max(max_rel, rel_err(grads.center[i], fd(center)));
            max_rel = std::max(max_rel, rel_err(grads.context[i], fd(context)));
            for (std::size_t k = 0; k < negatives.size(); ++k)
                max_rel = std::max(max_rel, rel_err(grads.negatives[k][i], fd(negatives[k])));
        }
    }
    return {max_rel <= 1e-4,
            "100 tuples, max relative error " + fmt(max_rel) + " (limit 0.0001)"};
}

// ---------------------------------------------------------------------------
// 5. two-block embedding separation

Outcome criterion_embedding_sanity() {
    Timer t;
    Rng rng = Rng::stream(505, 0);
    std::vector<std::string> block_x, block_y;
    for (int i = 0; i < 6; ++i) {
        block_x.push_back("m:x" + std::to_string(i));
        block_y.push_back("m:y" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> corpus;
    for (int s = 0; s < 150; ++s) {
        std::vector<std::string> sx, sy;
        for (int j = 0; j < 8; ++j) {
            sx.push_back(block_x[rng.next_below(block_x.size())]);
            sy.push_back(block_y[rng.next_below(block_y.size())]);
        }
        corpus.push_back(std::move(sx));
        corpus.push_back(std::move(sy));
    }

    std::vector<double> margins;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrainConfig cfg;
        cfg.dimension = 16;
        cfg.window = 4;
        cfg.epochs = 8;
        cfg.negatives = 5;
        cfg.learning_rate = 0.05;
        cfg.min_count = 1;
        cfg.seed = seed;
        const auto table = train_sgns(corpus, cfg).table;

        double intra = 0.0, inter = 0.0;
        int n_intra = 0, n_inter = 0;
        for (const auto& block : {block_x, block_y}) {
            for (std::size_t i = 0; i < block.size(); ++i) {
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    intra += cosine_similarity(table, block[i], block[j]);
                    ++n_intra;
                }
            }
        }
        for (const auto& x : block_x) {
            for (const auto& y : block_y) {
                inter += cosine_similarity(table, x, y);
                ++n_inter;
            }
        }
        margins.push_back(intra / n_intra - inter / n_inter);
    }
    const double mean_margin = mean_of(margins);
    const double secs = t.seconds();
    const bool pass = mean_margin >= 0.2 && secs < 60.0;
    return {pass, "mean margin " + fmt(mean_margin) + " over 5 seeds (floor 0.2), " +
                      fmt(secs) + "s (limit 60s)"};
}

// ---------------------------------------------------------------------------
// 6 and 7 share the planted-benchmark runs.

struct PlantedRun {
    double prec_alpha1 = 0.0;          // dense regime, alpha=1
    double random_baseline = 0.0;      // dense regime, K / |pool|
    double sparse_alpha1 = 0.0;        // sparse regime, alpha=1
    double sparse_alpha_inf = 0.0;     // sparse regime, alpha=inf
    int property_history_papers = 0;   // sparse regime
    std::vector<double> beta_precisions;  // dense regime
};

PlantedConfig dense_config(std::uint64_t seed) {
    PlantedConfig pc;
    pc.communities = 4;
    pc.authors_per_community = 10;
    pc.materials_per_community = 16;
    pc.papers_per_period = 6;
    pc.period_span = 6;
    pc.n_planted = 5;
    pc.property_papers_per_period = 2;
    pc.bridge_papers_per_pair = 3;
    pc.authors_per_paper = 3;
    pc.materials_per_paper = 2;
    pc.seed = seed;
    return pc;
}

// One hidden pair, five bridge rounds: the property appears in exactly five
// papers, all joint with the bridge author, and the planted material stays
// unreachable through material-only steps.
PlantedConfig sparse_config(std::uint64_t seed) {
    PlantedConfig pc = dense_config(seed);
    pc.n_planted = 1;
    pc.property_papers_per_period = 0;
    pc.bridge_papers_per_pair = 5;
    return pc;
}

struct PlantedArtifacts {
    PlantedInstance inst;
    Hypergraph graph;
    std::set<std::string> pool;
    VectorTable table;
    double precision = 0.0;
};

PlantedArtifacts run_pipeline(const PlantedConfig& pc, double alpha, std::uint64_t seed) {
    auto inst = generate_planted(pc);
    const auto view = window(inst.store, inst.prediction_period, inst.prediction_period);
    auto g = Hypergraph::build(view);
    const NodeId p = g.node_id(inst.property);
    auto pool = candidate_pool(view, inst.property);

    WalkConfig wc;
    wc.alpha = alpha;
    wc.walk_length = 12;
    wc.num_walks = 2500;
    wc.seed = seed;
    TrainConfig tc;
    tc.dimension = 32;
    tc.window = 4;
    tc.epochs = 3;
    tc.negatives = 5;
    tc.learning_rate = 0.025;
    tc.min_count = 1;
    tc.seed = seed;

    const auto stripped = strip_authors(sample_walks(g, p, wc));
    auto table = train_sgns(stripped.sequences, tc).table;
    const auto preds = rank_discoveries_cosine(table, inst.property, pool, 10);
    const double precision = precision_at(preds, inst.truth, 10);
    return {std::move(inst), std::move(g), std::move(pool), std::move(table), precision};
}

PlantedRun run_planted_seed(std::uint64_t seed) {
    PlantedRun run;

    const auto dense = run_pipeline(dense_config(seed), 1.0, seed);
    run.prec_alpha1 = dense.precision;
    run.random_baseline = static_cast<double>(dense.inst.truth.discovery_period.size()) /
                          static_cast<double>(dense.pool.size());

    const auto grid = default_beta_grid();
    const auto sweep =
        sweep_alien(dense.graph, dense.table, dense.inst.property, dense.pool, grid, 10);
    std::map<double, int> hits;
    for (const auto& row : sweep)
        if (dense.inst.truth.contains(row.token)) ++hits[row.beta];
    for (const double beta : grid)
        run.beta_precisions.push_back(static_cast<double>(hits[beta]) / 10.0);

    const auto sparse = run_pipeline(sparse_config(seed), 1.0, seed);
    run.sparse_alpha1 = sparse.precision;
    run.sparse_alpha_inf = run_pipeline(sparse_config(seed), kInf, seed).precision;
    for (const auto& rec : sparse.inst.store.records()) {
        const bool has_property =
            std::find(rec.properties.begin(), rec.properties.end(), sparse.inst.property) !=
            rec.properties.end();
        if (has_property && rec.period < sparse.inst.prediction_period)
            ++run.property_history_papers;
    }
    return run;
}

const std::vector<PlantedRun>& planted_runs() {
    static const std::vector<PlantedRun> runs = [] {
        std::vector<PlantedRun> out;
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
            out.push_back(run_planted_seed(1000 + seed));
        return out;
    }();
    return runs;
}

Outcome criterion_planted_benchmark() {
    const auto& runs = planted_runs();

    std::vector<double> vs_random, vs_inf;
    int max_property_papers = 0;
    for (const auto& run : runs) {
        vs_random.push_back(run.prec_alpha1 - run.random_baseline);
        vs_inf.push_back(run.sparse_alpha1 - run.sparse_alpha_inf);
        max_property_papers = std::max(max_property_papers, run.property_history_papers);
    }

    const double mean_gain = mean_of(vs_random);
    const double sd = sample_sd(vs_random);
    const double se = sd / std::sqrt(static_cast<double>(vs_random.size()));
    const bool beats_random = sd == 0.0 ? mean_gain > 0.0 : mean_gain >= 3.0 * se;

    const double p_vs_inf = stats::t_test_p(vs_inf, stats::Tail::Greater);
    const bool sparse = max_property_papers <= 5;
    const bool pass = beats_random && sparse && p_vs_inf < 0.05;
    return {pass, "precision@10 gain over random " + fmt(mean_gain) + " (se " + fmt(se) +
                      ", need >= 3 se); alpha=1 vs alpha=inf one-sided p " + fmt(p_vs_inf) +
                      "; property in <= " + std::to_string(max_property_papers) + " papers"};
}

Outcome criterion_beta_monotonicity() {
    const auto& runs = planted_runs();
    const auto grid = default_beta_grid();
    std::vector<double> mean_precision(grid.size(), 0.0);
    for (const auto& run : runs)
        for (std::size_t i = 0; i < grid.size(); ++i)
            mean_precision[i] += run.beta_precisions[i] / static_cast<double>(runs.size());

    const auto corr = stats::spearman(grid, mean_precision, stats::Tail::Less);
    const bool pass = corr.rho < 0.0 && corr.p_value < 0.05;
    std::string series;
    for (const double v : mean_precision) series += fmt(v) + " ";
    return {pass, "spearman rho " + fmt(corr.rho) + ", one-sided p " + fmt(corr.p_value) +
                      "; mean precision by beta: " + series};
}

// ---------------------------------------------------------------------------
// 8. fusion argsort identities

std::vector<std::string> argsort_desc(const std::map<std::string, double>& scores) {
    std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> order;
    for (const auto& [token, v] : rows) order.push_back(token);
    return order;
}

Outcome criterion_fusion_identities() {
    Rng rng = Rng::stream(808, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<std::string, double> alien, plaus;
        for (int i = 0; i < 12; ++i) {
            const std::string token = "m:t" + std::to_string(i);
            alien[token] = rng.next_double() * 100.0;
            plaus[token] = rng.next_double() * 100.0;
        }

        if (argsort_desc(fuse(alien, plaus, 0.0)) != argsort_desc(plaus))
            return {false, "beta=0 does not reproduce the plausibility order"};
        if (argsort_desc(fuse(alien, plaus, 1.0)) != argsort_desc(alien))
            return {false, "beta=1 does not reproduce the alienness order"};
        auto reversed = argsort_desc(alien);
        std::reverse(reversed.begin(), reversed.end());
        if (argsort_desc(fuse(alien, plaus, -1.0)) != reversed)
            return {false, "beta=-1 does not reverse the alienness order"};

        const auto plus = fuse(alien, plaus, 0.5);
        const auto minus = fuse(alien, plaus, -0.5);
        const auto a_only = fuse(alien, plaus, 1.0);
        const auto p_only = fuse(alien, plaus, 0.0);
        for (const auto& [token, v] : plus) {
            if (std::abs(v - (0.5 * a_only.at(token) + 0.5 * p_only.at(token))) > 1e-12)
                return {false, "beta=1/2 coefficients are not equal"};
            if (std::abs(minus.at(token) -
                         (-0.5 * a_only.at(token) + 0.5 * p_only.at(token))) > 1e-12)
                return {false, "beta=-1/2 coefficients are not equal"};
        }
    }
    return {true, "argsort identities and half-beta coefficients hold on 20 random tables"};
}

// ---------------------------------------------------------------------------
// 9. plausibility transform anchors and expectation-gap unit cases

Outcome criterion_transform_anchors() {
    Rng rng = Rng::stream(909, 0);
    double max_mid_err = 0.0;
    int tables = 0;
    int attempts = 0;
    while (tables < 50 && attempts < 5000) {
        ++attempts;
        ScoreTable tau;
        tau.provenance = "acceptance";
        const int n = 4 + static_cast<int>(rng.next_below(9));
        for (int i = 0; i < n; ++i)
            tau.tau["m:c" + std::to_string(i)] = rng.next_double() * 20.0 - 10.0;
        std::set<std::string> discovered;
        discovered.insert("m:c" + std::to_string(rng.next_below(n)));
        discovered.insert("m:c" + std::to_string(rng.next_below(n)));
        try {
            const auto model = plausibility_transform(tau, discovered);
            if (model.transform(0.0) != 0.0 || model.transform(1.0) != 1.0)
                return {false, "endpoint anchor broken"};
            max_mid_err =
                std::max(max_mid_err, std::abs(model.transform(model.midpoint()) - 0.5));
            ++tables;
        } catch (const ValidationError&) {
            continue;  // midpoint landed on the boundary; draw again
        }
    }
    if (tables < 50) return {false, "could not draw 50 valid score tables"};

    // Expectation gap: identical conditionals cancel; separated +/-0.8 point
    // masses open a gap of exactly 1.6.
    const ScoreTable polar{
        {{"m:disc", 0.0}, {"m:anchor", 5.0}, {"m:plaus", 10.0}}, "acceptance"};
    const auto model = plausibility_transform(polar, {"m:anchor"});
    GroundTruthSet truth;
    truth.property = "p:P";
    truth.discovery_period = {{"m:disc", 2000}};

    auto preds_of = [](std::vector<std::string> tokens) {
        RankedPredictions preds;
        preds.property = "p:P";
        preds.metric = "alien";
        preds.k = static_cast<int>(tokens.size());
        double score = 1.0;
        for (auto& token : tokens) preds.entries.emplace_back(std::move(token), score--);
        return preds;
    };

    BetaSweepEval symmetric;
    symmetric.betas = {-0.8, 0.8};
    symmetric.predictions = {preds_of({"m:disc", "m:plaus"}), preds_of({"m:disc", "m:plaus"})};
    const double gap_zero = beta_conditionals(symmetric, truth, model).gap;

    BetaSweepEval split;
    split.betas = {-0.8, 0.8};
    split.predictions = {preds_of({"m:disc"}), preds_of({"m:plaus"})};
    const double gap_split = beta_conditionals(split, truth, model).gap;

    const bool pass =
        max_mid_err <= 1e-12 && std::abs(gap_zero) <= 1e-12 && std::abs(gap_split - 1.6) <= 1e-12;
    return {pass, "midpoint anchor error " + fmt(max_mid_err) + " over 50 tables; gaps " +
                      fmt(gap_zero) + " and " + fmt(gap_split) + " (want 0 and 1.6)"};
}

// ---------------------------------------------------------------------------
// 10 and 11 drive the installed CLI binary.

fs::path g_scratch;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& cmd) {
    const fs::path out = g_scratch / "stdout.txt";
    const fs::path err = g_scratch / "stderr.txt";
    const int raw = std::system((cmd + " >" + out.string() + " 2>" + err.string()).c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

Outcome criterion_parameter_fidelity(const std::string& exe) {
    if (exe.empty()) return {false, "no CLI binary supplied"};
    const auto r = run_cli(exe + " defaults");
    if (r.code != 0) return {false, "defaults subcommand exited " + std::to_string(r.code)};

    std::map<std::string, std::string> kv;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    const std::vector<std::pair<std::string, std::string>> expected{
        {"walks", "250000"}, {"length", "20"}, {"window", "8"}, {"dim", "200"},
        {"epochs", "5"},     {"k", "50"},      {"memory", "5"},
    };
    for (const auto& [key, want] : expected) {
        const auto it = kv.find(key);
        if (it == kv.end()) return {false, "defaults output lacks '" + key + "'"};
        if (it->second != want)
            return {false, key + "=" + it->second + ", expected " + want};
    }
    return {true, "walks 250000, length 20, window 8, dim 200, epochs 5, k 50, memory 5"};
}

bool run_cli_pipeline(const std::string& exe, const fs::path& dir, std::string& error) {
    fs::create_directories(dir);
    const std::string cd = "cd " + dir.string() + " && " + exe + " ";
    const std::vector<std::string> steps{
        "synth --span 4 --planted 3 --communities 3 --authors 6 --materials 6 "
        "--papers-per-period 3 --property-papers 1 --seed 17 "
        "--out-corpus corpus.jsonl --out-truth truth.tsv",
        "build --corpus corpus.jsonl --year 4 --memory 4 --out graph.snap",
        "walk --graph graph.snap --property p:target --alpha 1 --walks 400 --length 10 "
        "--seed 17 --out walks.txt",
        "embed --walks walks.txt --dim 16 --window 4 --epochs 2 --min-count 1 --seed 17 "
        "--out vecs.txt",
        "predict --corpus corpus.jsonl --year 4 --memory 4 --vectors vecs.txt "
        "--property p:target --metric deepwalk_cosine --k 10 --seed 17 --out preds.tsv",
        "eval --mode timeline --truth truth.tsv --property p:target --preds preds.tsv "
        "--periods 4,5 --out report.tsv",
    };
    for (const auto& step : steps) {
        const auto r = run_cli(cd + step);
        if (r.code != 0) {
            error = "step '" + step.substr(0, step.find(' ')) + "' exited " +
                    std::to_string(r.code) + ": " + r.err;
            return false;
        }
    }
    return true;
}

Outcome criterion_determinism(const std::string& exe, double elapsed_so_far) {
    if (exe.empty()) return {false, "no CLI binary supplied"};
    Timer t;
    const fs::path base = g_scratch / "determinism";
    fs::remove_all(base);
    std::string error;
    if (!run_cli_pipeline(exe, base / "run1", error)) return {false, error};
    if (!run_cli_pipeline(exe, base / "run2", error)) return {false, error};

    const std::vector<std::string> artifacts{
        "corpus.jsonl", "truth.tsv", "graph.snap",         "walks.txt",
        "vecs.txt",     "preds.tsv", "report.tsv",         "corpus.jsonl.manifest.json",
        "walks.txt.manifest.json",   "preds.tsv.manifest.json",
    };
    for (const auto& name : artifacts) {
        const auto d1 = io::file_digest(base / "run1" / name);
        const auto d2 = io::file_digest(base / "run2" / name);
        if (d1 != d2) return {false, name + " differs between reruns"};
    }
    const double total = elapsed_so_far + t.seconds();
    const bool pass = total < 300.0;
    return {pass, std::to_string(artifacts.size()) +
                      " artifacts byte-identical across two runs; full suite " + fmt(total) +
                      "s (limit 300s)"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? fs::absolute(argv[1]).string() : "";
    g_scratch = fs::temp_directory_path() / "hyperdisc-acceptance";
    fs::remove_all(g_scratch);
    fs::create_directories(g_scratch);

    Timer suite;
    int passed = 0;
    std::vector<std::pair<std::string, Outcome>> results;

    const auto record = [&](const std::string& label, Outcome outcome) {
        results.emplace_back(label, outcome);
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << results.size()
                  << ": " << label << " -- " << outcome.detail << '\n';
        std::cout.flush();
        passed += outcome.pass;
    };

    record("meta-path oracle equivalence", criterion_meta_path_oracle());
    record("sampler/analytic consistency", criterion_sampler_consistency());
    record("exact alpha semantics", criterion_alpha_semantics());
    record("sgns gradient check", criterion_sgns_gradients());
    record("embedding block separation", criterion_embedding_sanity());
    record("planted benchmark, author-aware advantage", criterion_planted_benchmark());
    record("beta sweep precision monotonicity", criterion_beta_monotonicity());
    record("fusion argsort identities", criterion_fusion_identities());
    record("transform anchors and expectation gap", criterion_transform_anchors());
    record("shipped parameter fidelity", criterion_parameter_fidelity(exe));
    record("pipeline determinism and runtime", criterion_determinism(exe, suite.seconds()));

    std::cout << "acceptance: " << passed << "/" << results.size() << " criteria passed ("
              << fmt(suite.seconds()) << "s)\n";
    fs::remove_all(g_scratch);
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
