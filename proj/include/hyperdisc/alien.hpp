#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperdisc/embedding.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/predict.hpp"

namespace hyperdisc {

struct FusionConfig {
    double beta = 0.0;  // in [-1, 1]
    int k = 50;
};

// Rank-to-normal-quantile transform: each value becomes phi(r/(n+1)) with r the
// ascending fractional rank (ties averaged). +infinity entries tie at the top
// rank block; values must not be NaN.
std::map<std::string, double> van_der_waerden(const std::map<std::string, double>& scores);

// beta * zscore(vdw(alienness)) + (1 - |beta|) * zscore(vdw(plausibility)).
// Key sets must match; either signal collapsing to a single tied block has no
// variance and is rejected.
std::map<std::string, double> fuse(const std::map<std::string, double>& alienness,
                                   const std::map<std::string, double>& plausibility, double beta);

// Per-candidate detail of one fused ranking, kept for sweep exports.
struct FusedScores {
    std::map<std::string, double> spd;     // +inf when unreachable
    std::map<std::string, double> cosine;
    std::map<std::string, double> fused;
};

FusedScores fuse_signals(const Hypergraph& g, const VectorTable& table,
                         const std::string& property, const std::set<std::string>& pool,
                         double beta);

RankedPredictions rank_alien(const Hypergraph& g, const VectorTable& table,
                             const std::string& property, const std::set<std::string>& pool,
                             const FusionConfig& cfg);

struct SweepRow {
    double beta;
    int rank;
    std::string token;
    double s_final;
    double spd;
    double cosine;
};

std::vector<SweepRow> sweep_alien(const Hypergraph& g, const VectorTable& table,
                                  const std::string& property, const std::set<std::string>& pool,
                                  const std::vector<double>& betas, int k);

void save_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> load_sweep(const std::filesystem::path& path);

std::vector<double> default_beta_grid();  // -0.8 .. 0.8 step 0.2

}  // namespace hyperdisc
