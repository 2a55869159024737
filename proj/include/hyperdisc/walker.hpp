#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc {

// Within-edge sampling rule for one walker step.
//   Classic: uniform over the candidate nodes of the edge.
//   Alpha:   mass alpha/(alpha+1) on the material partition, 1/(alpha+1) on
//            the rest, uniform within each partition. alpha may be infinity.
struct SamplingMode {
    enum class Rule { Classic, Alpha };
    Rule rule = Rule::Classic;
    double alpha = 1.0;
    bool lazy = false;

    static SamplingMode classic(bool lazy = false) { return {Rule::Classic, 1.0, lazy}; }
    static SamplingMode with_alpha(double alpha, bool lazy = false) {
        return {Rule::Alpha, alpha, lazy};
    }
};

struct WalkConfig {
    double alpha = 1.0;  // nonnegative, may be infinity
    int walk_length = 20;
    std::uint64_t num_walks = 250000;
    std::uint64_t seed = 0;
    bool lazy = false;
};

struct WalkCorpus {
    std::vector<std::vector<std::string>> sequences;
};

// Distribution of the next node given a chosen hyperedge. Termination mass is
// explicit; node probabilities are listed in ascending NodeId order and the
// total (nodes + termination) is 1.
struct NodeStepDistribution {
    std::vector<std::pair<NodeId, double>> node_probs;
    double termination = 0.0;
};

NodeStepDistribution node_step_distribution(const Hypergraph& g,
                                            const std::vector<NodeId>& edge_nodes, NodeId current,
                                            const SamplingMode& mode);
NodeStepDistribution node_step_distribution(const Hypergraph& g,
                                            const std::vector<NodeId>& edge_nodes, NodeId current,
                                            double alpha, bool lazy);

WalkCorpus sample_walks(const Hypergraph& g, NodeId property, const WalkConfig& cfg,
                        int threads = 1);

WalkCorpus strip_authors(const WalkCorpus& walks);

void save_walks(const WalkCorpus& walks, const std::filesystem::path& path);
WalkCorpus load_walks(const std::filesystem::path& path);

}  // namespace hyperdisc
