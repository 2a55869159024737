#include "hyperdisc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "hyperdisc/embedding.hpp"
#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"

namespace hyperdisc {

PlausibilityModel::PlausibilityModel(std::map<std::string, double> tau_hat, double tau_hat_mid)
    : tau_hat_(std::move(tau_hat)), tau_hat_mid_(tau_hat_mid) {
    if (!(tau_hat_mid > 0.0 && tau_hat_mid < 1.0))
        throw ValidationError("discovered-set midpoint must lie strictly inside (0, 1)");
    b_ = -std::tan(std::numbers::pi * (tau_hat_mid - 0.5));
}

double PlausibilityModel::transform(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("normalized score outside [0, 1]");
    if (t == 0.0) return 0.0;  // continuity limits at the endpoints
    if (t == 1.0) return 1.0;
    return sgns::sigmoid(std::tan(std::numbers::pi * (t - 0.5)) + b_);
}

double PlausibilityModel::tau_hat(const std::string& token) const {
    const auto it = tau_hat_.find(token);
    if (it == tau_hat_.end()) throw LookupError("material '" + token + "' has no score entry");
    return it->second;
}

double PlausibilityModel::probability(const std::string& token) const {
    return transform(tau_hat(token));
}

double PlausibilityModel::confidence(const std::string& token) const {
    const double t = probability(token);
    return t >= 0.5 ? t : 1.0 - t;
}

PlausibilityModel plausibility_transform(const ScoreTable& tau,
                                         const std::set<std::string>& discovered) {
    if (tau.tau.size() < 2) throw ValidationError("score table needs at least two entries");
    double lo = tau.tau.begin()->second;
    double hi = lo;
    for (const auto& [token, v] : tau.tau) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) throw ValidationError("degenerate score table: all values equal");

    std::map<std::string, double> tau_hat;
    for (const auto& [token, v] : tau.tau) tau_hat[token] = (v - lo) / (hi - lo);

    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& token : discovered) {
        const auto it = tau_hat.find(token);
        if (it == tau_hat.end()) continue;
        sum += it->second;
        ++n;
    }
    if (n == 0) throw ArgumentError("no discovered material carries a score entry");
    const double mid = sum / static_cast<double>(n);
    if (mid == 0.0 || mid == 1.0)
        throw ValidationError("discovered-set midpoint sits on the boundary of [0, 1]");
    return PlausibilityModel(std::move(tau_hat), mid);
}

std::vector<double> precision_timeline(const RankedPredictions& preds, const GroundTruthSet& truth,
                                       const std::vector<int>& periods) {
    if (preds.entries.empty()) throw ArgumentError("empty prediction set");
    for (std::size_t i = 1; i < periods.size(); ++i)
        if (periods[i - 1] > periods[i]) throw ArgumentError("periods must be ascending");

    std::vector<double> series;
    series.reserve(periods.size());
    const double denom = static_cast<double>(preds.entries.size());
    for (const int t : periods) {
        std::size_t hits = 0;
        for (const auto& [token, score] : preds.entries) {
            const auto it = truth.discovery_period.find(token);
            if (it != truth.discovery_period.end() && it->second <= t) ++hits;
        }
        series.push_back(static_cast<double>(hits) / denom);
    }
    return series;
}

double precision_at(const RankedPredictions& preds, const GroundTruthSet& truth, int k) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    const std::size_t cutoff = std::min<std::size_t>(preds.entries.size(),
                                                     static_cast<std::size_t>(k));
    if (cutoff == 0) throw ArgumentError("empty prediction set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cutoff; ++i)
        if (truth.contains(preds.entries[i].first)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(k);
}

PrCurve pr_curve(const std::map<std::string, double>& scores, const std::set<std::string>& truth) {
    if (scores.empty()) throw ArgumentError("empty score map");
    if (truth.empty()) throw ValidationError("empty truth set: recall undefined");
    for (const auto& token : truth)
        if (!scores.count(token))
            throw ArgumentError("truth token '" + token + "' missing from score map");

    std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    const double positives = static_cast<double>(truth.size());
    PrCurve curve;
    curve.auc = 0.0;
    double tp = 0.0;
    double seen = 0.0;
    double prev_recall = 0.0;
    std::size_t i = 0;
    while (i < ranked.size()) {
        // Group every item sharing this score: thresholds cannot split ties.
        std::size_t j = i;
        while (j < ranked.size() && ranked[j].second == ranked[i].second) {
            if (truth.count(ranked[j].first)) tp += 1.0;
            seen += 1.0;
            ++j;
        }
        const double recall = tp / positives;
        const double precision = tp / seen;
        curve.points.push_back(PrPoint{recall, precision});
        curve.auc += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return curve;
}

namespace {

std::set<std::string> authors_mentioning(const CorpusView& view, const std::string& token) {
    std::set<std::string> authors;
    for (std::size_t idx : view.record_indices()) {
        const auto& rec = view.store().records()[idx];
        const auto& group = token_kind(token) == Kind::Material ? rec.materials : rec.properties;
        if (std::find(group.begin(), group.end(), token) == group.end()) continue;
        authors.insert(rec.authors.begin(), rec.authors.end());
    }
    return authors;
}

}  // namespace

double expert_density(const CorpusView& view, const std::string& property,
                      const std::string& material) {
    const auto a_p = authors_mentioning(view, property);
    const auto a_m = authors_mentioning(view, material);
    std::vector<std::string> inter;
    std::set_intersection(a_p.begin(), a_p.end(), a_m.begin(), a_m.end(),
                          std::back_inserter(inter));
    const std::size_t uni = a_p.size() + a_m.size() - inter.size();
    if (uni == 0) return 0.0;
    return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

stats::Correlation density_discovery_correlation(const CorpusView& view,
                                                 const std::string& property,
                                                 const GroundTruthSet& truth) {
    if (truth.discovery_period.size() < 3)
        throw ArgumentError("need at least 3 discovered materials for a correlation");
    std::set<int> distinct;
    for (const auto& [m, t] : truth.discovery_period) distinct.insert(t);
    if (distinct.size() < 2)
        throw ValidationError("all discoveries fall in a single period: correlation undefined");

    std::vector<double> densities, dates;
    for (const auto& [material, period] : truth.discovery_period) {
        densities.push_back(expert_density(view, property, material));
        dates.push_back(static_cast<double>(period));
    }
    return stats::spearman(densities, dates, stats::Tail::TwoSided);
}

namespace {

void validate_sweep(const BetaSweepEval& sweep) {
    if (sweep.betas.empty()) throw ArgumentError("empty beta sweep");
    if (sweep.betas.size() != sweep.predictions.size())
        throw ArgumentError("beta grid and prediction sets differ in length");
    for (std::size_t i = 0; i < sweep.betas.size(); ++i) {
        if (!(std::abs(sweep.betas[i]) <= 1.0))
            throw ArgumentError("beta grid value outside [-1, 1]");
        if (i > 0 && !(sweep.betas[i - 1] < sweep.betas[i]))
            throw ArgumentError("beta grid must be strictly increasing");
        if (sweep.predictions[i].entries.empty())
            throw ArgumentError("empty prediction set in beta sweep");
    }
}

double discovery_likelihood(const RankedPredictions& preds, const GroundTruthSet& truth) {
    std::size_t hits = 0;
    for (const auto& [token, score] : preds.entries)
        if (truth.contains(token)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(preds.entries.size());
}

// Weighted fraction of confidence mass lying on the plausible side (T >= 1/2),
// over the subset of `tokens` covered by the score table.
template <typename TokenRange>
double plausibility_likelihood(const TokenRange& tokens, const PlausibilityModel& model) {
    double numer = 0.0;
    double denom = 0.0;
    for (const auto& token : tokens) {
        if (!model.has(token)) continue;  // no score entry: excluded, not implausible
        const double c = model.confidence(token);
        denom += c;
        if (model.probability(token) >= 0.5) numer += c;
    }
    return denom == 0.0 ? 0.0 : numer / denom;
}

std::vector<double> normalize_or_throw(std::vector<double> likelihood, const char* label) {
    double total = 0.0;
    for (const double v : likelihood) total += v;
    if (total == 0.0)
        throw ValidationError(std::string("all-zero ") + label +
                              " likelihood: distribution over beta undefined");
    for (double& v : likelihood) v /= total;
    return likelihood;
}

}  // namespace

BetaConditionals beta_conditionals(const BetaSweepEval& sweep, const GroundTruthSet& truth,
                                   const PlausibilityModel& model) {
    validate_sweep(sweep);
    std::vector<double> disc, plaus;
    disc.reserve(sweep.betas.size());
    plaus.reserve(sweep.betas.size());
    for (const auto& preds : sweep.predictions) {
        disc.push_back(discovery_likelihood(preds, truth));
        std::vector<std::string> tokens;
        tokens.reserve(preds.entries.size());
        for (const auto& [token, score] : preds.entries) tokens.push_back(token);
        plaus.push_back(plausibility_likelihood(tokens, model));
    }

    BetaConditionals out;
    out.betas = sweep.betas;
    out.p_discoverable = normalize_or_throw(std::move(disc), "discoverable");
    out.p_plausible = normalize_or_throw(std::move(plaus), "plausible");
    out.e_discoverable = 0.0;
    out.e_plausible = 0.0;
    for (std::size_t i = 0; i < out.betas.size(); ++i) {
        out.e_discoverable += out.betas[i] * out.p_discoverable[i];
        out.e_plausible += out.betas[i] * out.p_plausible[i];
    }
    out.gap = out.e_plausible - out.e_discoverable;
    return out;
}

std::vector<std::pair<double, double>> joint_complementarity(const BetaSweepEval& sweep,
                                                             const GroundTruthSet& truth,
                                                             const PlausibilityModel& model) {
    validate_sweep(sweep);
    std::vector<std::pair<double, double>> out;
    out.reserve(sweep.betas.size());
    for (std::size_t i = 0; i < sweep.betas.size(); ++i) {
        const auto& preds = sweep.predictions[i];
        const double precision = discovery_likelihood(preds, truth);
        std::vector<std::string> undiscovered;
        for (const auto& [token, score] : preds.entries)
            if (!truth.contains(token)) undiscovered.push_back(token);
        const double mass = plausibility_likelihood(undiscovered, model);
        out.emplace_back(sweep.betas[i], (1.0 - precision) * mass);
    }
    return out;
}

void save_eval_report(const std::vector<EvalRow>& rows, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& r : rows)
        out << r.property << '\t' << r.metric << '\t' << r.key << '\t'
            << io::format_double(r.value) << '\n';
    file.commit();
}

}  // namespace hyperdisc
