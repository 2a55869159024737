#include "hyperdisc/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

NodeStepDistribution node_step_distribution(const Hypergraph& g,
                                            const std::vector<NodeId>& edge_nodes, NodeId current,
                                            const SamplingMode& mode) {
    if (std::find(edge_nodes.begin(), edge_nodes.end(), current) == edge_nodes.end())
        throw ArgumentError("current node is not part of the given hyperedge");
    if (mode.rule == SamplingMode::Rule::Alpha &&
        !(mode.alpha >= 0.0))  // rejects negatives and NaN; +infinity passes
        throw ArgumentError("alpha must be nonnegative or infinity");

    std::vector<NodeId> materials, others;
    for (NodeId n : edge_nodes) {
        if (!mode.lazy && n == current) continue;
        (g.kind(n) == Kind::Material ? materials : others).push_back(n);
    }

    NodeStepDistribution dist;
    const std::size_t total = materials.size() + others.size();
    if (total == 0) {
        dist.termination = 1.0;
        return dist;
    }

    if (mode.rule == SamplingMode::Rule::Classic) {
        const double p = 1.0 / static_cast<double>(total);
        dist.node_probs.reserve(total);
        for (NodeId n : edge_nodes) {
            if (!mode.lazy && n == current) continue;
            dist.node_probs.emplace_back(n, p);
        }
        return dist;
    }

    // Mixture weights; empty partitions are dropped and zero-weight partitions
    // stay at zero, so the leftover weight renormalizes over what remains. If
    // nothing remains (alpha=0 with materials only, alpha=inf with no
    // materials) the step terminates.
    double w_other, w_material;
    if (std::isinf(mode.alpha)) {
        w_other = 0.0;
        w_material = 1.0;
    } else {
        w_other = 1.0 / (mode.alpha + 1.0);
        w_material = mode.alpha / (mode.alpha + 1.0);
    }
    if (others.empty()) w_other = 0.0;
    if (materials.empty()) w_material = 0.0;
    const double w_total = w_other + w_material;
    if (w_total == 0.0) {
        dist.termination = 1.0;
        return dist;
    }
    w_other /= w_total;
    w_material /= w_total;

    dist.node_probs.reserve(total);
    for (NodeId n : edge_nodes) {
        if (!mode.lazy && n == current) continue;
        const double p = g.kind(n) == Kind::Material
                             ? w_material / static_cast<double>(materials.size())
                             : w_other / static_cast<double>(others.size());
        if (p > 0.0) dist.node_probs.emplace_back(n, p);
    }
    return dist;
}

NodeStepDistribution node_step_distribution(const Hypergraph& g,
                                            const std::vector<NodeId>& edge_nodes, NodeId current,
                                            double alpha, bool lazy) {
    return node_step_distribution(g, edge_nodes, current, SamplingMode::with_alpha(alpha, lazy));
}

namespace {

void validate(const Hypergraph& g, NodeId property, const WalkConfig& cfg) {
    if (property >= g.node_count()) throw LookupError("unknown property node id");
    if (g.degree(property) == 0) throw ArgumentError("start node has no incident edges");
    if (!(cfg.alpha >= 0.0)) throw ArgumentError("alpha must be nonnegative or infinity");
    if (cfg.walk_length < 1) throw ArgumentError("walk_length must be >= 1");
    if (cfg.num_walks < 1) throw ArgumentError("num_walks must be >= 1");
}

std::vector<std::string> run_one_walk(const Hypergraph& g, NodeId start, const WalkConfig& cfg,
                                      const SamplingMode& mode, Rng& rng) {
    std::vector<std::string> seq;
    seq.reserve(static_cast<std::size_t>(cfg.walk_length) + 1);
    NodeId current = start;
    seq.push_back(g.token(current));
    for (int step = 0; step < cfg.walk_length; ++step) {
        const auto& edges = g.incident_edges(current);
        const EdgeId e = edges[rng.next_below(edges.size())];
        const auto dist = node_step_distribution(g, g.edge_nodes(e), current, mode);
        if (dist.termination == 1.0) break;
        const double u = rng.next_double();
        double acc = 0.0;
        NodeId next = dist.node_probs.back().first;  // rounding fallback
        for (const auto& [node, p] : dist.node_probs) {
            acc += p;
            if (u < acc) {
                next = node;
                break;
            }
        }
        current = next;
        seq.push_back(g.token(current));
    }
    return seq;
}

}  // namespace

WalkCorpus sample_walks(const Hypergraph& g, NodeId property, const WalkConfig& cfg, int threads) {
    validate(g, property, cfg);
    const SamplingMode mode = SamplingMode::with_alpha(cfg.alpha, cfg.lazy);

    WalkCorpus corpus;
    corpus.sequences.resize(cfg.num_walks);
    auto fill_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t w = begin; w < end; ++w) {
            Rng rng = Rng::stream(cfg.seed, w);
            corpus.sequences[w] = run_one_walk(g, property, cfg, mode, rng);
        }
    };

    if (threads <= 1 || cfg.num_walks < 2) {
        fill_range(0, cfg.num_walks);
        return corpus;
    }
    const std::uint64_t n = cfg.num_walks;
    const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t t = 0; t < workers; ++t) {
        const std::uint64_t begin = n * t / workers;
        const std::uint64_t end = n * (t + 1) / workers;
        pool.emplace_back(fill_range, begin, end);
    }
    for (auto& th : pool) th.join();
    return corpus;
}

WalkCorpus strip_authors(const WalkCorpus& walks) {
    WalkCorpus out;
    out.sequences.reserve(walks.sequences.size());
    for (const auto& seq : walks.sequences) {
        std::vector<std::string> kept;
        for (const auto& tok : seq)
            if (token_kind(tok) != Kind::Author) kept.push_back(tok);
        if (!kept.empty()) out.sequences.push_back(std::move(kept));
    }
    return out;
}

void save_walks(const WalkCorpus& walks, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& seq : walks.sequences) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i) out << ' ';
            out << seq[i];
        }
        out << '\n';
    }
    file.commit();
}

WalkCorpus load_walks(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    WalkCorpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        std::vector<std::string> seq;
        std::size_t start = 0;
        while (start <= line.size()) {
            const std::size_t space = line.find(' ', start);
            const std::string tok = space == std::string::npos ? line.substr(start)
                                                               : line.substr(start, space - start);
            if (!is_namespaced(tok))
                throw ParseError(context + ": invalid walk token '" + tok + "'");
            seq.push_back(tok);
            if (space == std::string::npos) break;
            start = space + 1;
        }
        corpus.sequences.push_back(std::move(seq));
    }
    return corpus;
}

}  // namespace hyperdisc
