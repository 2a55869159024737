#include "hyperdisc/synth.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/rng.hpp"
#include "hyperdisc/transition.hpp"

namespace hyperdisc {

namespace {

std::string community_author(int community, int index) {
    return "c" + std::to_string(community) + "_a" + std::to_string(index);
}

std::string community_material(int community, int index) {
    return "c" + std::to_string(community) + "_m" + std::to_string(index);
}

// k distinct indices from [0, n), order-stable in the rng stream.
std::vector<int> sample_distinct(Rng& rng, int n, int k) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
    }
    all.resize(static_cast<std::size_t>(k));
    return all;
}

void validate(const PlantedConfig& cfg) {
    if (cfg.communities < 2)
        throw ConfigError("need at least 2 communities to plant cross-community pairs");
    if (cfg.authors_per_community < 1 || cfg.materials_per_community < 1 ||
        cfg.papers_per_period < 1 || cfg.period_span < 1 || cfg.n_planted < 1 ||
        cfg.bridge_papers_per_pair < 1 || cfg.authors_per_paper < 1 ||
        cfg.materials_per_paper < 1)
        throw ConfigError("all planted-benchmark counts must be >= 1");
    if (cfg.property_papers_per_period < 0)
        throw ConfigError("property_papers_per_period must be >= 0");
    if (!(cfg.overlap_rate >= 0.0 && cfg.overlap_rate <= 1.0))
        throw ConfigError("overlap_rate must lie in [0, 1]");
    if (cfg.authors_per_paper > cfg.authors_per_community ||
        cfg.materials_per_paper > cfg.materials_per_community)
        throw ConfigError("paper size exceeds community inventory");
    const int slots = (cfg.communities - 1) * cfg.materials_per_community;
    if (cfg.n_planted > slots)
        throw ConfigError("more planted pairs (" + std::to_string(cfg.n_planted) +
                          ") than material slots (" + std::to_string(slots) + ")");
    if (!cfg.reveal_periods.empty() &&
        cfg.reveal_periods.size() != static_cast<std::size_t>(cfg.n_planted))
        throw ConfigError("reveal_periods must have one entry per planted pair");
    for (const int r : cfg.reveal_periods)
        if (r < cfg.period_span)
            throw ConfigError("reveal period " + std::to_string(r) +
                              " precedes the prediction period " +
                              std::to_string(cfg.period_span));
}

}  // namespace

PlantedInstance generate_planted(const PlantedConfig& cfg) {
    validate(cfg);
    Rng rng = Rng::stream(cfg.seed, 0);
    CorpusStore store;
    const std::string property_raw = "target";

    // Background literature: intra-community papers, optionally borrowing one
    // author from a foreign community.
    for (int period = 0; period < cfg.period_span; ++period) {
        for (int c = 0; c < cfg.communities; ++c) {
            for (int i = 0; i < cfg.papers_per_period; ++i) {
                PublicationRecord rec;
                rec.id = "bg_" + std::to_string(period) + "_" + std::to_string(c) + "_" +
                         std::to_string(i);
                rec.period = period;
                std::vector<std::string> authors;
                for (const int a : sample_distinct(rng, cfg.authors_per_community,
                                                   cfg.authors_per_paper))
                    authors.push_back(community_author(c, a));
                if (cfg.communities > 1 && rng.next_double() < cfg.overlap_rate) {
                    int other = static_cast<int>(
                        rng.next_below(static_cast<std::uint64_t>(cfg.communities - 1)));
                    if (other >= c) ++other;
                    const int a = static_cast<int>(
                        rng.next_below(static_cast<std::uint64_t>(cfg.authors_per_community)));
                    authors.back() = community_author(other, a);
                }
                std::vector<std::string> materials;
                for (const int m : sample_distinct(rng, cfg.materials_per_community,
                                                   cfg.materials_per_paper))
                    materials.push_back(community_material(c, m));
                for (auto& a : authors) rec.authors.push_back(namespaced(Kind::Author, a));
                for (auto& m : materials) rec.materials.push_back(namespaced(Kind::Material, m));
                std::sort(rec.authors.begin(), rec.authors.end());
                rec.authors.erase(std::unique(rec.authors.begin(), rec.authors.end()),
                                  rec.authors.end());
                std::sort(rec.materials.begin(), rec.materials.end());
                store.add(std::move(rec));
            }
        }
    }

    // Property background papers, confined to community 0 materials so planted
    // pairs stay unseen until their reveal.
    for (int period = 0; period < cfg.period_span; ++period) {
        for (int i = 0; i < cfg.property_papers_per_period; ++i) {
            PublicationRecord rec;
            rec.id = "prop_" + std::to_string(period) + "_" + std::to_string(i);
            rec.period = period;
            for (const int a : sample_distinct(rng, cfg.authors_per_community,
                                               cfg.authors_per_paper))
                rec.authors.push_back(namespaced(Kind::Author, community_author(0, a)));
            for (const int m : sample_distinct(rng, cfg.materials_per_community,
                                               cfg.materials_per_paper))
                rec.materials.push_back(namespaced(Kind::Material, community_material(0, m)));
            rec.properties.push_back(namespaced(Kind::Property, property_raw));
            std::sort(rec.authors.begin(), rec.authors.end());
            std::sort(rec.materials.begin(), rec.materials.end());
            store.add(std::move(rec));
        }
    }

    // Planted pairs: property -- bridge author -- foreign material. The bridge
    // author publishes one property-side and one material-side paper per
    // bridge round, in the final history period.
    const int bridge_period = cfg.period_span - 1;
    std::vector<std::string> planted_materials;
    for (int t = 0; t < cfg.n_planted; ++t) {
        const int community = 1 + t % (cfg.communities - 1);
        const int m_index = t / (cfg.communities - 1);
        const std::string material = community_material(community, m_index);
        planted_materials.push_back(namespaced(Kind::Material, material));
        const std::string bridge = "bridge" + std::to_string(t);

        for (int j = 0; j < cfg.bridge_papers_per_pair; ++j) {
            PublicationRecord pside;
            pside.id = "brp_" + std::to_string(t) + "_" + std::to_string(j);
            pside.period = bridge_period;
            pside.authors.push_back(namespaced(Kind::Author, bridge));
            const int m0 = static_cast<int>(
                rng.next_below(static_cast<std::uint64_t>(cfg.materials_per_community)));
            pside.materials.push_back(namespaced(Kind::Material, community_material(0, m0)));
            pside.properties.push_back(namespaced(Kind::Property, property_raw));
            store.add(std::move(pside));

            PublicationRecord mside;
            mside.id = "brm_" + std::to_string(t) + "_" + std::to_string(j);
            mside.period = bridge_period;
            mside.authors.push_back(namespaced(Kind::Author, bridge));
            mside.materials.push_back(namespaced(Kind::Material, material));
            store.add(std::move(mside));
        }

        const int reveal = cfg.reveal_periods.empty()
                               ? cfg.period_span
                               : cfg.reveal_periods[static_cast<std::size_t>(t)];
        PublicationRecord rev;
        rev.id = "rev_" + std::to_string(t);
        rev.period = reveal;
        rev.authors.push_back(namespaced(Kind::Author, bridge));
        rev.materials.push_back(namespaced(Kind::Material, material));
        rev.properties.push_back(namespaced(Kind::Property, property_raw));
        store.add(std::move(rev));
    }

    PlantedInstance instance;
    instance.property = namespaced(Kind::Property, property_raw);
    instance.prediction_period = cfg.prediction_period();
    instance.truth =
        derive_ground_truth(store, instance.property, instance.prediction_period);
    instance.store = std::move(store);
    return instance;
}

double OracleDistribution::total() const {
    double t = termination;
    for (const auto& [node, mass] : node_mass) t += mass;
    return t;
}

namespace {

constexpr std::size_t kOracleNodeLimit = 40;
constexpr int kOracleStepLimit = 3;

void enumerate(const Hypergraph& g, NodeId current, int remaining, double prob,
               const SamplingMode& mode, OracleDistribution& out) {
    if (remaining == 0) {
        out.node_mass[current] += prob;
        return;
    }
    const auto& edges = g.incident_edges(current);
    if (edges.empty()) {
        out.termination += prob;
        return;
    }
    const double edge_prob = prob / static_cast<double>(edges.size());
    for (const EdgeId e : edges) {
        const auto dist = node_step_distribution(g, g.edge_nodes(e), current, mode);
        if (dist.termination > 0.0) out.termination += edge_prob * dist.termination;
        for (const auto& [node, p] : dist.node_probs)
            enumerate(g, node, remaining - 1, edge_prob * p, mode, out);
    }
}

}  // namespace

OracleDistribution oracle_transition(const Hypergraph& g, NodeId start, int steps,
                                     const SamplingMode& mode) {
    if (g.node_count() > kOracleNodeLimit)
        throw ArgumentError("graph exceeds the exhaustive enumeration bound of " +
                            std::to_string(kOracleNodeLimit) + " nodes");
    if (steps < 0 || steps > kOracleStepLimit)
        throw ArgumentError("oracle steps must lie in [0, " +
                            std::to_string(kOracleStepLimit) + "]");
    if (start >= g.node_count()) throw LookupError("unknown start node id");
    OracleDistribution out;
    enumerate(g, start, steps, 1.0, mode, out);
    return out;
}

namespace {

void enumerate_pattern(const Hypergraph& g, NodeId current, const std::vector<Kind>& kinds,
                       std::size_t position, double prob, const SamplingMode& mode,
                       std::map<NodeId, double>& out) {
    if (position + 1 == kinds.size()) {
        out[current] += prob;
        return;
    }
    const auto& edges = g.incident_edges(current);
    if (edges.empty()) return;
    const double edge_prob = prob / static_cast<double>(edges.size());
    for (const EdgeId e : edges) {
        const auto dist = node_step_distribution(g, g.edge_nodes(e), current, mode);
        for (const auto& [node, p] : dist.node_probs) {
            if (g.kind(node) != kinds[position + 1]) continue;
            enumerate_pattern(g, node, kinds, position + 1, edge_prob * p, mode, out);
        }
    }
}

}  // namespace

std::map<NodeId, double> oracle_meta_path(const Hypergraph& g, NodeId property,
                                          MetaPathPattern pattern, const SamplingMode& mode) {
    if (g.node_count() > kOracleNodeLimit)
        throw ArgumentError("graph exceeds the exhaustive enumeration bound of " +
                            std::to_string(kOracleNodeLimit) + " nodes");
    if (property >= g.node_count()) throw LookupError("unknown property node id");
    const auto kinds = pattern_kinds(pattern);
    std::map<NodeId, double> out;
    for (const NodeId n : g.nodes_of_kind(kinds.back())) out[n] = 0.0;
    enumerate_pattern(g, property, kinds, 0, 1.0, mode, out);
    return out;
}

double empirical_vs_analytic(const Hypergraph& g, NodeId property, const WalkConfig& cfg,
                             std::uint64_t n_samples) {
    if (n_samples < 1) throw ArgumentError("need at least one sample");
    WalkConfig first_step = cfg;
    first_step.num_walks = n_samples;
    first_step.walk_length = 1;
    const WalkCorpus walks = sample_walks(g, property, first_step);

    std::map<std::string, double> counts;
    double terminated = 0.0;
    for (const auto& seq : walks.sequences) {
        if (seq.size() < 2)
            terminated += 1.0;
        else
            counts[seq[1]] += 1.0;
    }
    const double n = static_cast<double>(n_samples);

    const TransitionModel model(g, SamplingMode::with_alpha(cfg.alpha, cfg.lazy));
    const auto& matrix = model.matrix();
    double l1 = std::abs(terminated / n - model.termination()[property]);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double analytic =
            matrix.coeff(static_cast<Eigen::Index>(property), static_cast<Eigen::Index>(v));
        const auto it = counts.find(g.token(v));
        const double empirical = it == counts.end() ? 0.0 : it->second / n;
        l1 += std::abs(empirical - analytic);
    }
    return l1;
}

}  // namespace hyperdisc
