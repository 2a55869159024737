#include "hyperdisc/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"

namespace hyperdisc {

namespace {
constexpr const char* kSnapshotHeader = "hyperdisc-graph/1";
}

void Hypergraph::index_nodes(std::vector<std::string> tokens) {
    tokens_ = std::move(tokens);
    kinds_.reserve(tokens_.size());
    node_edges_.resize(tokens_.size());
    token_to_node_.reserve(tokens_.size());
    for (NodeId n = 0; n < tokens_.size(); ++n) {
        kinds_.push_back(token_kind(tokens_[n]));
        token_to_node_.emplace(tokens_[n], n);
    }
}

void Hypergraph::add_edge(std::string record_id, std::vector<NodeId> nodes) {
    const EdgeId e = static_cast<EdgeId>(edge_nodes_.size());
    for (NodeId n : nodes) node_edges_[n].push_back(e);
    edge_nodes_.push_back(std::move(nodes));
    edge_records_.push_back(std::move(record_id));
}

Hypergraph Hypergraph::build(const CorpusView& view) {
    std::set<std::string> token_set;
    for (std::size_t idx : view.record_indices()) {
        const auto& rec = view.store().records()[idx];
        token_set.insert(rec.authors.begin(), rec.authors.end());
        token_set.insert(rec.materials.begin(), rec.materials.end());
        token_set.insert(rec.properties.begin(), rec.properties.end());
    }
    Hypergraph g;
    g.index_nodes(std::vector<std::string>(token_set.begin(), token_set.end()));
    for (std::size_t idx : view.record_indices()) {
        const auto& rec = view.store().records()[idx];
        std::vector<NodeId> nodes;
        nodes.reserve(rec.authors.size() + rec.materials.size() + rec.properties.size());
        for (const auto* group : {&rec.authors, &rec.materials, &rec.properties})
            for (const auto& tok : *group) nodes.push_back(g.token_to_node_.at(tok));
        if (nodes.empty()) continue;  // a tokenless record cannot form an edge
        std::sort(nodes.begin(), nodes.end());
        g.add_edge(rec.id, std::move(nodes));
    }
    return g;
}

NodeId Hypergraph::node_id(const std::string& token) const {
    const auto it = token_to_node_.find(token);
    if (it == token_to_node_.end()) throw LookupError("unknown node token '" + token + "'");
    return it->second;
}

std::vector<NodeId> Hypergraph::nodes_of_kind(Kind k) const {
    std::vector<NodeId> out;
    for (NodeId n = 0; n < kinds_.size(); ++n)
        if (kinds_[n] == k) out.push_back(n);
    return out;
}

std::vector<std::optional<int>> Hypergraph::distances_from(NodeId source,
                                                           KindSet intermediates) const {
    if (source >= node_count()) throw LookupError("unknown source node id");
    std::vector<std::optional<int>> dist(node_count());
    dist[source] = 0;
    std::deque<NodeId> queue{source};
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        if (u != source && !intermediates.contains(kinds_[u])) continue;
        const int next = *dist[u] + 1;
        for (EdgeId e : node_edges_[u]) {
            for (NodeId v : edge_nodes_[e]) {
                if (!dist[v]) {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

std::map<NodeId, std::optional<int>> Hypergraph::shortest_path_distance(
    NodeId source, const std::vector<NodeId>& targets, KindSet intermediates) const {
    const auto dist = distances_from(source, intermediates);
    std::map<NodeId, std::optional<int>> out;
    for (NodeId t : targets) {
        if (t >= node_count()) throw LookupError("unknown target node id");
        out[t] = dist[t];
    }
    return out;
}

void Hypergraph::save(const std::filesystem::path& path) const {
    io::AtomicFile file(path);
    auto& out = file.stream();
    out << kSnapshotHeader << '\n';
    out << "nodes " << node_count() << '\n';
    for (const auto& tok : tokens_) out << tok << '\n';
    out << "edges " << edge_count() << '\n';
    for (EdgeId e = 0; e < edge_count(); ++e) {
        out << edge_records_[e];
        for (NodeId n : edge_nodes_[e]) out << ' ' << n;
        out << '\n';
    }
    file.commit();
}

namespace {

std::size_t parse_count(const std::string& line, const char* keyword,
                        const std::string& context) {
    std::istringstream ss(line);
    std::string word;
    std::size_t count = 0;
    if (!(ss >> word >> count) || word != keyword)
        throw ParseError(context + ": expected '" + keyword + " <count>', got '" + line + "'");
    return count;
}

}  // namespace

Hypergraph Hypergraph::load(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    const std::string context = path.filename().string();
    std::string line;
    if (!std::getline(in, line) || line != kSnapshotHeader)
        throw ParseError(context + ": bad or missing snapshot header (expected '" +
                         std::string(kSnapshotHeader) + "')");

    if (!std::getline(in, line)) throw ParseError(context + ": truncated snapshot");
    const std::size_t n_nodes = parse_count(line, "nodes", context);
    std::vector<std::string> tokens;
    tokens.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (!std::getline(in, line)) throw ParseError(context + ": truncated node table");
        if (!is_namespaced(line)) throw ParseError(context + ": invalid node token '" + line + "'");
        tokens.push_back(line);
    }

    Hypergraph g;
    g.index_nodes(std::move(tokens));
    if (g.token_to_node_.size() != n_nodes)
        throw ParseError(context + ": duplicate node tokens in snapshot");

    if (!std::getline(in, line)) throw ParseError(context + ": truncated snapshot");
    const std::size_t n_edges = parse_count(line, "edges", context);
    for (std::size_t i = 0; i < n_edges; ++i) {
        if (!std::getline(in, line)) throw ParseError(context + ": truncated edge table");
        std::istringstream ss(line);
        std::string record_id;
        if (!(ss >> record_id)) throw ParseError(context + ": empty edge row");
        std::vector<NodeId> nodes;
        std::uint64_t id = 0;
        while (ss >> id) {
            if (id >= n_nodes)
                throw ParseError(context + ": edge references node " + std::to_string(id) +
                                 " out of range");
            nodes.push_back(static_cast<NodeId>(id));
        }
        if (!ss.eof()) throw ParseError(context + ": malformed edge row '" + line + "'");
        if (nodes.empty()) throw ParseError(context + ": edge with no nodes");
        std::sort(nodes.begin(), nodes.end());
        g.add_edge(std::move(record_id), std::move(nodes));
    }
    return g;
}

}  // namespace hyperdisc
