#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperdisc/corpus.hpp"
#include "hyperdisc/tokens.hpp"

namespace hyperdisc {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Set of node kinds, used to restrict which kinds may serve as intermediate
// hops during shortest-path traversal.
struct KindSet {
    unsigned char bits = 0;

    static KindSet all() { return KindSet{0x7}; }
    static KindSet of(std::initializer_list<Kind> kinds) {
        KindSet s;
        for (Kind k : kinds) s.insert(k);
        return s;
    }
    void insert(Kind k) { bits |= static_cast<unsigned char>(1u << static_cast<unsigned>(k)); }
    bool contains(Kind k) const {
        return (bits >> static_cast<unsigned>(k)) & 1u;
    }
};

// Mixed hypergraph over a corpus view: one hyperedge per publication record,
// nodes interned in sorted token order. Immutable after construction.
class Hypergraph {
public:
    static Hypergraph build(const CorpusView& view);

    std::size_t node_count() const { return tokens_.size(); }
    std::size_t edge_count() const { return edge_nodes_.size(); }

    bool has_node(const std::string& token) const { return token_to_node_.count(token) > 0; }
    NodeId node_id(const std::string& token) const;  // throws LookupError
    const std::string& token(NodeId n) const { return tokens_[n]; }
    Kind kind(NodeId n) const { return kinds_[n]; }

    std::size_t degree(NodeId n) const { return node_edges_[n].size(); }
    std::size_t edge_size(EdgeId e) const { return edge_nodes_[e].size(); }
    const std::vector<NodeId>& edge_nodes(EdgeId e) const { return edge_nodes_[e]; }
    const std::vector<EdgeId>& incident_edges(NodeId n) const { return node_edges_[n]; }
    const std::string& edge_record(EdgeId e) const { return edge_records_[e]; }

    std::vector<NodeId> nodes_of_kind(Kind k) const;

    // Hop counts from `source` to every node, where two nodes are adjacent iff
    // they share a hyperedge. Nodes whose kind is outside `intermediates` may
    // appear as endpoints but are never expanded through. Unreachable nodes
    // hold nullopt.
    std::vector<std::optional<int>> distances_from(NodeId source,
                                                   KindSet intermediates = KindSet::all()) const;
    std::map<NodeId, std::optional<int>> shortest_path_distance(
        NodeId source, const std::vector<NodeId>& targets,
        KindSet intermediates = KindSet::all()) const;

    void save(const std::filesystem::path& path) const;
    static Hypergraph load(const std::filesystem::path& path);

private:
    std::vector<std::string> tokens_;            // indexed by NodeId, sorted
    std::vector<Kind> kinds_;                    // indexed by NodeId
    std::vector<std::vector<EdgeId>> node_edges_;
    std::vector<std::vector<NodeId>> edge_nodes_;
    std::vector<std::string> edge_records_;      // originating record ids
    std::unordered_map<std::string, NodeId> token_to_node_;

    void index_nodes(std::vector<std::string> tokens);
    void add_edge(std::string record_id, std::vector<NodeId> nodes);
};

}  // namespace hyperdisc
