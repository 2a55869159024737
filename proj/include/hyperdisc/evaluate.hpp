#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperdisc/corpus.hpp"
#include "hyperdisc/predict.hpp"
#include "hyperdisc/stats.hpp"

namespace hyperdisc {

// Monotone map from theoretical scores to discovery probabilities, anchored at
// T(0)=0, T(1)=1 and T=1/2 at the discovered-set mean of the normalized score.
class PlausibilityModel {
public:
    PlausibilityModel(std::map<std::string, double> tau_hat, double tau_hat_mid);

    double transform(double tau_hat) const;  // T, defined on [0, 1]
    bool has(const std::string& token) const { return tau_hat_.count(token) > 0; }
    double tau_hat(const std::string& token) const;
    double probability(const std::string& token) const;  // T(tau_hat(x))
    double confidence(const std::string& token) const;   // c(x) in [1/2, 1]
    double midpoint() const { return tau_hat_mid_; }
    double shift() const { return b_; }
    const std::map<std::string, double>& tau_hats() const { return tau_hat_; }

private:
    std::map<std::string, double> tau_hat_;
    double tau_hat_mid_;
    double b_;
};

PlausibilityModel plausibility_transform(const ScoreTable& tau,
                                         const std::set<std::string>& discovered);

// Cumulative precision: fraction of predictions whose discovery period is <= t.
std::vector<double> precision_timeline(const RankedPredictions& preds, const GroundTruthSet& truth,
                                       const std::vector<int>& periods);

// Plain precision at cutoff k against the ground-truth material set.
double precision_at(const RankedPredictions& preds, const GroundTruthSet& truth, int k);

struct PrPoint {
    double recall;
    double precision;
};

struct PrCurve {
    std::vector<PrPoint> points;
    double auc;  // average precision (step integration, ties grouped)
};

PrCurve pr_curve(const std::map<std::string, double>& scores, const std::set<std::string>& truth);

// Jaccard index of the author sets mentioning the two tokens inside the view.
double expert_density(const CorpusView& view, const std::string& property,
                      const std::string& material);

stats::Correlation density_discovery_correlation(const CorpusView& view,
                                                 const std::string& property,
                                                 const GroundTruthSet& truth);

struct BetaSweepEval {
    std::vector<double> betas;                    // strictly increasing, within [-1, 1]
    std::vector<RankedPredictions> predictions;   // one set per beta
};

struct BetaConditionals {
    std::vector<double> betas;
    std::vector<double> p_discoverable;  // P(beta | discoverable), sums to 1
    std::vector<double> p_plausible;     // P(beta | plausible), sums to 1
    double e_discoverable;
    double e_plausible;
    double gap;  // e_plausible - e_discoverable
};

BetaConditionals beta_conditionals(const BetaSweepEval& sweep, const GroundTruthSet& truth,
                                   const PlausibilityModel& model);

// Per beta: (1 - precision) x plausibility mass over the undiscovered slice.
std::vector<std::pair<double, double>> joint_complementarity(const BetaSweepEval& sweep,
                                                             const GroundTruthSet& truth,
                                                             const PlausibilityModel& model);

struct EvalRow {
    std::string property;
    std::string metric;
    std::string key;  // period, beta, or "-" for summary rows
    double value;
};

void save_eval_report(const std::vector<EvalRow>& rows, const std::filesystem::path& path);

}  // namespace hyperdisc
