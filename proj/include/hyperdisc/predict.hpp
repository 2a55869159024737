#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hyperdisc/corpus.hpp"
#include "hyperdisc/embedding.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/transition.hpp"

namespace hyperdisc {

// Top-k ranking for one property under one metric. Scores are non-increasing;
// ties are broken by ascending token. Entries without a defined metric value
// (e.g. out-of-vocabulary pool members) sit at the bottom with score -inf.
struct RankedPredictions {
    std::string property;
    std::string metric;
    std::vector<std::pair<std::string, double>> entries;
    int k = 0;

    std::set<std::string> tokens() const;
};

// Materials mentioned at least once in the view, minus any material that
// co-occurs with the property in a record dated before the window end
// (known associations are not candidates).
std::set<std::string> candidate_pool(const CorpusView& view, const std::string& property);

// Generic top-k selection: pool members present in `scores` are ordered by
// descending score; members without a score follow, ordered by token.
RankedPredictions rank_from_scores(const std::string& property, const std::string& metric,
                                   const std::map<std::string, double>& scores,
                                   const std::set<std::string>& pool, int k);

RankedPredictions rank_discoveries_cosine(const VectorTable& table, const std::string& property,
                                          const std::set<std::string>& pool, int k);

// pattern must end at Material kind (PAM or PAAM).
RankedPredictions rank_discoveries_transition(const Hypergraph& g, const std::string& property,
                                              MetaPathPattern pattern,
                                              const std::set<std::string>& pool, int k,
                                              const SamplingMode& mode = SamplingMode::classic());

// Authors ranked by PMA meta-path probability; zero-probability authors are
// dropped (no material-mediated path to the property).
RankedPredictions rank_discoverers(const Hypergraph& g, const std::string& property, int k,
                                   const SamplingMode& mode = SamplingMode::classic());

// Authors ranked by the mean of their two cosine ranks (to the property and to
// the material); candidates are the author tokens of the table's vocabulary.
// Reported score is the negated mean rank so better candidates score higher.
RankedPredictions rank_discoverers_for_material(const VectorTable& table,
                                                const std::string& property,
                                                const std::string& material, int k);

void save_predictions(const RankedPredictions& preds, std::uint64_t seed,
                      const std::string& window, const std::filesystem::path& path);
RankedPredictions load_predictions(const std::filesystem::path& path);

}  // namespace hyperdisc
