#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperdisc/tokens.hpp"

namespace hyperdisc {

// One publication: a hyperedge over namespaced author/material/property
// tokens plus an integer period (year or any monotone time index).
struct PublicationRecord {
    std::string id;
    int period = 0;
    std::vector<std::string> authors;     // "a:..." tokens, sorted, unique
    std::vector<std::string> materials;   // "m:..." tokens, sorted, unique
    std::vector<std::string> properties;  // "p:..." tokens, sorted, unique
};

// Immutable after load; safe for concurrent reads.
class CorpusStore {
  public:
    void add(PublicationRecord rec);  // throws ValidationError on duplicate id

    const std::vector<PublicationRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    const PublicationRecord* find(const std::string& id) const;
    std::vector<std::size_t> records_in_period(int period) const;

    bool has_property_token(const std::string& token) const;

    int min_period() const;  // throws on empty store
    int max_period() const;

  private:
    std::vector<PublicationRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::map<int, std::vector<std::size_t>> by_period_;
    std::set<std::string> property_tokens_;
};

// Half-open period window [end - memory, end) over a backing store.
class CorpusView {
  public:
    CorpusView(const CorpusStore& store, int end_period, int memory);

    const CorpusStore& store() const { return *store_; }
    int begin_period() const { return end_period_ - memory_; }
    int end_period() const { return end_period_; }
    int memory() const { return memory_; }

    // Indices into store().records(), ascending.
    const std::vector<std::size_t>& record_indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }

  private:
    const CorpusStore* store_;
    int end_period_;
    int memory_;
    std::vector<std::size_t> indices_;
};

// First-time (property, material) co-occurrences at or after some period.
struct GroundTruthSet {
    std::string property;                        // namespaced
    std::map<std::string, int> discovery_period;  // namespaced material -> period

    bool contains(const std::string& material) const {
        return discovery_period.count(material) > 0;
    }
};

// Externally supplied theoretical scores tau, possibly covering only part of
// the candidate pool.
struct ScoreTable {
    std::map<std::string, double> tau;  // namespaced material -> finite score
    std::string provenance;
};

// --- file formats ---------------------------------------------------------
// Corpus: one JSON object per line, fields id/year/authors/materials/properties.
// Ground truth: TSV property<TAB>material<TAB>period (raw tokens, kind implied
// by column). Scores: TSV material<TAB>tau. '#'-prefixed lines are comments.

CorpusStore load_corpus(const std::filesystem::path& path);
void save_corpus(const CorpusStore& store, const std::filesystem::path& path);

CorpusView window(const CorpusStore& store, int end_period, int memory);

GroundTruthSet derive_ground_truth(const CorpusStore& store, const std::string& property,
                                   int from_period);

GroundTruthSet load_ground_truth(const std::filesystem::path& path, const std::string& property,
                                 bool header);
void save_ground_truth(const GroundTruthSet& truth, const std::filesystem::path& path);

ScoreTable load_theoretical_scores(const std::filesystem::path& path);

// One token sequence per record in the view (properties, then materials, then
// authors, each group in sorted order); used to train plausibility embeddings
// directly on the literature when no walk corpus is wanted.
std::vector<std::vector<std::string>> record_token_bags(const CorpusView& view);

}  // namespace hyperdisc
