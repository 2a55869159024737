#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/walker.hpp"

namespace hyperdisc {

// Kind sequence of a multistep walk starting at a property node. The enum
// name spells the node kinds along the path; steps = name length - 1.
enum class MetaPathPattern { PAM, PAAM, PMA };

std::vector<Kind> pattern_kinds(MetaPathPattern pattern);
Kind pattern_final_kind(MetaPathPattern pattern);
MetaPathPattern parse_pattern(const std::string& name);  // throws ArgumentError
std::string pattern_name(MetaPathPattern pattern);

// Exact one-step transition matrix of the walker: entry (u, v) is the
// probability that a step from u lands on v (uniform edge choice, then the
// within-edge rule of the sampling mode). Termination mass is kept in an
// explicit absorbing column so every row plus its termination entry sums to 1.
class TransitionModel {
public:
    TransitionModel(const Hypergraph& g, const SamplingMode& mode);

    const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const { return matrix_; }
    const Eigen::VectorXd& termination() const { return termination_; }
    const SamplingMode& mode() const { return mode_; }

    double one_step(NodeId u, NodeId v) const;

    // Total probability over all paths from `property` whose node kinds follow
    // the pattern. Keys are every node of the pattern's final kind, zeros
    // included.
    std::map<NodeId, double> meta_path_score(NodeId property, MetaPathPattern pattern) const;

private:
    const Hypergraph* graph_;
    SamplingMode mode_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
    Eigen::VectorXd termination_;
};

double one_step_probability(const Hypergraph& g, NodeId u, NodeId v, const SamplingMode& mode);

std::map<NodeId, double> meta_path_score(const Hypergraph& g, NodeId property,
                                         MetaPathPattern pattern, const SamplingMode& mode);

// Tab-separated `token<TAB>probability`, descending probability, ties by token.
void save_score_map(const std::map<std::string, double>& scores,
                    const std::filesystem::path& path);

}  // namespace hyperdisc
