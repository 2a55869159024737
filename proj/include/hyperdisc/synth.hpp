#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperdisc/corpus.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/transition.hpp"
#include "hyperdisc/walker.hpp"

namespace hyperdisc {

// Community-structured synthetic literature with planted future discoveries.
// Background papers stay inside one community; each planted (property,
// material) pair is connected only through a dedicated bridge author, so
// author-aware walks can find the pair before its reveal period while
// material-only paths cannot.
struct PlantedConfig {
    int communities = 4;           // community 0 hosts the property
    int authors_per_community = 12;
    int materials_per_community = 15;
    int papers_per_period = 8;     // background papers per community per period
    int period_span = 10;          // history periods 0 .. span-1; prediction at span
    int n_planted = 5;
    std::vector<int> reveal_periods;  // one per planted pair, each >= period_span;
                                      // empty = all at period_span
    double overlap_rate = 0.0;     // chance a background paper borrows a foreign author
    int property_papers_per_period = 2;  // property background papers (community 0)
    int bridge_papers_per_pair = 1;
    int authors_per_paper = 3;
    int materials_per_paper = 2;
    std::uint64_t seed = 0;

    std::string property_token() const { return "p:target"; }
    int prediction_period() const { return period_span; }
};

struct PlantedInstance {
    CorpusStore store;
    GroundTruthSet truth;
    std::string property;
    int prediction_period;
};

PlantedInstance generate_planted(const PlantedConfig& cfg);

// Exhaustive multistep distribution: every (edge, node) choice sequence up to
// `steps` is enumerated and its probability accumulated on the end node, with
// terminated mass kept aside. Bounded to small graphs by construction.
struct OracleDistribution {
    std::map<NodeId, double> node_mass;
    double termination = 0.0;

    double total() const;
};

OracleDistribution oracle_transition(const Hypergraph& g, NodeId start, int steps,
                                     const SamplingMode& mode);

// Same enumeration restricted to paths whose node kinds follow the pattern.
std::map<NodeId, double> oracle_meta_path(const Hypergraph& g, NodeId property,
                                          MetaPathPattern pattern, const SamplingMode& mode);

// L1 distance between the empirical first-step frequencies of `n_samples`
// walks and the analytic one-step row (termination mass included).
double empirical_vs_analytic(const Hypergraph& g, NodeId property, const WalkConfig& cfg,
                             std::uint64_t n_samples);

}  // namespace hyperdisc
