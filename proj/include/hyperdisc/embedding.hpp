#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "hyperdisc/rng.hpp"

namespace hyperdisc {

struct TrainConfig {
    int dimension = 200;
    int window = 8;
    int epochs = 5;
    int negatives = 5;
    double learning_rate = 0.025;  // linear decay, floored at 1e-4 of this
    int min_count = 1;
    std::uint64_t seed = 0;
    bool dynamic_window = true;  // per-position window shrink, uniform in [1, window]
    int threads = 1;             // 1 = deterministic sequential mode
};

// Token embeddings with frequency metadata. Vectors are rows of a dense
// matrix, one per vocabulary token; loaded tables carry zero frequencies.
class VectorTable {
public:
    VectorTable() = default;
    VectorTable(std::vector<std::string> tokens, Eigen::MatrixXd vectors,
                std::vector<std::uint64_t> counts = {});

    std::size_t size() const { return tokens_.size(); }
    Eigen::Index dimension() const { return vectors_.cols(); }
    bool contains(const std::string& token) const { return index_.count(token) > 0; }
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::size_t index_of(const std::string& token) const;  // throws LookupError
    std::uint64_t frequency(const std::string& token) const;

    Eigen::MatrixXd::ConstRowXpr vector(const std::string& token) const;
    Eigen::MatrixXd::ConstRowXpr vector(std::size_t index) const;
    const Eigen::MatrixXd& vectors() const { return vectors_; }

    void save(const std::filesystem::path& path) const;
    static VectorTable load(const std::filesystem::path& path);

private:
    std::vector<std::string> tokens_;
    std::vector<std::uint64_t> counts_;
    Eigen::MatrixXd vectors_;  // size() x dimension
    std::unordered_map<std::string, std::size_t> index_;
};

struct TrainResult {
    VectorTable table;
    std::vector<double> epoch_losses;  // mean loss per training pair, one per epoch
};

TrainResult train_sgns(const std::vector<std::vector<std::string>>& sequences,
                       const TrainConfig& cfg);

double cosine_similarity(const VectorTable& table, const std::string& t1, const std::string& t2);
double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// One skip-gram-with-negative-sampling example: a center vector, the output
// vector of the true context and output vectors of the sampled negatives.
// Exposed so the analytic gradients can be checked against finite differences.
namespace sgns {

double pair_loss(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                 const std::vector<Eigen::VectorXd>& negatives);

struct PairGradients {
    Eigen::VectorXd center;
    Eigen::VectorXd context;
    std::vector<Eigen::VectorXd> negatives;
};

PairGradients pair_gradients(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                             const std::vector<Eigen::VectorXd>& negatives);

double sigmoid(double x);
double log_sigmoid(double x);

}  // namespace sgns

}  // namespace hyperdisc
