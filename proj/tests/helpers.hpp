#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "hyperdisc/corpus.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/tokens.hpp"

namespace testutil {

// Compact record spec with raw (unprefixed) tokens.
struct Rec {
    std::string id;
    int year = 0;
    std::vector<std::string> authors;
    std::vector<std::string> materials;
    std::vector<std::string> properties;
};

inline std::vector<std::string> prefixed(hyperdisc::Kind kind,
                                         const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(hyperdisc::namespaced(kind, r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline hyperdisc::CorpusStore make_store(const std::vector<Rec>& recs) {
    hyperdisc::CorpusStore store;
    for (const auto& r : recs) {
        hyperdisc::PublicationRecord rec;
        rec.id = r.id;
        rec.period = r.year;
        rec.authors = prefixed(hyperdisc::Kind::Author, r.authors);
        rec.materials = prefixed(hyperdisc::Kind::Material, r.materials);
        rec.properties = prefixed(hyperdisc::Kind::Property, r.properties);
        store.add(std::move(rec));
    }
    return store;
}

inline hyperdisc::Hypergraph make_graph(const std::vector<Rec>& recs, int end_period,
                                        int memory) {
    const hyperdisc::CorpusStore store = make_store(recs);
    return hyperdisc::Hypergraph::build(hyperdisc::window(store, end_period, memory));
}

// Unique scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto root = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = root / (tag + "-" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        std::abort();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
