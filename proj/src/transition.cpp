#include "hyperdisc/transition.hpp"

#include <algorithm>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"

namespace hyperdisc {

std::vector<Kind> pattern_kinds(MetaPathPattern pattern) {
    switch (pattern) {
        case MetaPathPattern::PAM:
            return {Kind::Property, Kind::Author, Kind::Material};
        case MetaPathPattern::PAAM:
            return {Kind::Property, Kind::Author, Kind::Author, Kind::Material};
        case MetaPathPattern::PMA:
            return {Kind::Property, Kind::Material, Kind::Author};
    }
    throw ArgumentError("invalid meta-path pattern");
}

Kind pattern_final_kind(MetaPathPattern pattern) { return pattern_kinds(pattern).back(); }

MetaPathPattern parse_pattern(const std::string& name) {
    if (name == "PAM") return MetaPathPattern::PAM;
    if (name == "PAAM") return MetaPathPattern::PAAM;
    if (name == "PMA") return MetaPathPattern::PMA;
    throw ArgumentError("unknown meta-path pattern '" + name + "' (expected PAM, PAAM or PMA)");
}

std::string pattern_name(MetaPathPattern pattern) {
    switch (pattern) {
        case MetaPathPattern::PAM:
            return "PAM";
        case MetaPathPattern::PAAM:
            return "PAAM";
        case MetaPathPattern::PMA:
            return "PMA";
    }
    throw ArgumentError("invalid meta-path pattern");
}

TransitionModel::TransitionModel(const Hypergraph& g, const SamplingMode& mode)
    : graph_(&g), mode_(mode) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    matrix_.resize(n, n);
    termination_ = Eigen::VectorXd::Zero(n);

    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> row(g.node_count(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto& edges = g.incident_edges(u);
        if (edges.empty()) {
            termination_[u] = 1.0;
            continue;
        }
        const double edge_weight = 1.0 / static_cast<double>(edges.size());
        std::vector<NodeId> touched;
        double term = 0.0;
        for (EdgeId e : edges) {
            const auto dist = node_step_distribution(g, g.edge_nodes(e), u, mode);
            term += edge_weight * dist.termination;
            for (const auto& [v, p] : dist.node_probs) {
                if (row[v] == 0.0) touched.push_back(v);
                row[v] += edge_weight * p;
            }
        }
        termination_[u] = term;
        std::sort(touched.begin(), touched.end());
        for (NodeId v : touched) {
            triplets.emplace_back(static_cast<int>(u), static_cast<int>(v), row[v]);
            row[v] = 0.0;
        }
    }
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();
}

double TransitionModel::one_step(NodeId u, NodeId v) const {
    if (u >= graph_->node_count() || v >= graph_->node_count())
        throw LookupError("unknown node id in one-step query");
    return matrix_.coeff(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
}

std::map<NodeId, double> TransitionModel::meta_path_score(NodeId property,
                                                          MetaPathPattern pattern) const {
    const auto& g = *graph_;
    if (property >= g.node_count()) throw LookupError("unknown property node id");

    const auto kinds = pattern_kinds(pattern);
    Eigen::SparseVector<double> state(static_cast<Eigen::Index>(g.node_count()));
    state.insert(static_cast<Eigen::Index>(property)) = 1.0;

    for (std::size_t step = 1; step < kinds.size(); ++step) {
        Eigen::SparseVector<double> next = (state.transpose() * matrix_).transpose();
        // Restrict to the kind demanded at this position of the pattern.
        Eigen::SparseVector<double> masked(next.size());
        for (Eigen::SparseVector<double>::InnerIterator it(next); it; ++it) {
            if (g.kind(static_cast<NodeId>(it.index())) == kinds[step])
                masked.insert(it.index()) = it.value();
        }
        state = std::move(masked);
    }

    std::map<NodeId, double> scores;
    for (NodeId n : g.nodes_of_kind(kinds.back())) scores[n] = 0.0;
    for (Eigen::SparseVector<double>::InnerIterator it(state); it; ++it)
        scores[static_cast<NodeId>(it.index())] = it.value();
    return scores;
}

double one_step_probability(const Hypergraph& g, NodeId u, NodeId v, const SamplingMode& mode) {
    if (u >= g.node_count() || v >= g.node_count())
        throw LookupError("unknown node id in one-step query");
    const auto& edges = g.incident_edges(u);
    if (edges.empty()) return 0.0;
    double total = 0.0;
    for (EdgeId e : edges) {
        const auto dist = node_step_distribution(g, g.edge_nodes(e), u, mode);
        for (const auto& [node, p] : dist.node_probs)
            if (node == v) total += p;
    }
    return total / static_cast<double>(edges.size());
}

std::map<NodeId, double> meta_path_score(const Hypergraph& g, NodeId property,
                                         MetaPathPattern pattern, const SamplingMode& mode) {
    return TransitionModel(g, mode).meta_path_score(property, pattern);
}

void save_score_map(const std::map<std::string, double>& scores,
                    const std::filesystem::path& path) {
    std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& [token, prob] : rows)
        out << token << '\t' << io::format_double(prob) << '\n';
    file.commit();
}

}  // namespace hyperdisc
