#include "hyperdisc/predict.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"
#include "hyperdisc/tokens.hpp"

namespace hyperdisc {

std::set<std::string> RankedPredictions::tokens() const {
    std::set<std::string> out;
    for (const auto& [token, score] : entries) out.insert(token);
    return out;
}

std::set<std::string> candidate_pool(const CorpusView& view, const std::string& property) {
    std::set<std::string> pool;
    for (std::size_t idx : view.record_indices()) {
        const auto& rec = view.store().records()[idx];
        pool.insert(rec.materials.begin(), rec.materials.end());
    }
    // Known associations: any co-occurrence with the property dated before the
    // window end, whether inside the window or earlier.
    for (const auto& rec : view.store().records()) {
        if (rec.period >= view.end_period()) continue;
        if (std::find(rec.properties.begin(), rec.properties.end(), property) ==
            rec.properties.end())
            continue;
        for (const auto& m : rec.materials) pool.erase(m);
    }
    return pool;
}

RankedPredictions rank_from_scores(const std::string& property, const std::string& metric,
                                   const std::map<std::string, double>& scores,
                                   const std::set<std::string>& pool, int k) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    std::vector<std::pair<std::string, double>> scored;
    std::vector<std::string> unscored;
    for (const auto& token : pool) {
        const auto it = scores.find(token);
        if (it != scores.end())
            scored.emplace_back(token, it->second);
        else
            unscored.push_back(token);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    RankedPredictions preds;
    preds.property = property;
    preds.metric = metric;
    preds.k = k;
    const std::size_t want = static_cast<std::size_t>(k);
    for (const auto& entry : scored) {
        if (preds.entries.size() == want) break;
        preds.entries.push_back(entry);
    }
    for (const auto& token : unscored) {  // already in ascending token order
        if (preds.entries.size() == want) break;
        preds.entries.emplace_back(token, -std::numeric_limits<double>::infinity());
    }
    return preds;
}

RankedPredictions rank_discoveries_cosine(const VectorTable& table, const std::string& property,
                                          const std::set<std::string>& pool, int k) {
    if (!table.contains(property))
        throw LookupError("property '" + property + "' not in embedding vocabulary");
    std::map<std::string, double> scores;
    for (const auto& token : pool)
        if (table.contains(token)) scores[token] = cosine_similarity(table, property, token);
    return rank_from_scores(property, "deepwalk_cosine", scores, pool, k);
}

RankedPredictions rank_discoveries_transition(const Hypergraph& g, const std::string& property,
                                              MetaPathPattern pattern,
                                              const std::set<std::string>& pool, int k,
                                              const SamplingMode& mode) {
    if (pattern_final_kind(pattern) != Kind::Material)
        throw ArgumentError("discovery ranking requires a material-terminated pattern");
    const NodeId p = g.node_id(property);
    const auto node_scores = meta_path_score(g, p, pattern, mode);
    std::map<std::string, double> scores;
    for (const auto& [node, prob] : node_scores) scores[g.token(node)] = prob;
    const std::string metric = pattern == MetaPathPattern::PAM ? "trans2" : "trans3";
    return rank_from_scores(property, metric, scores, pool, k);
}

RankedPredictions rank_discoverers(const Hypergraph& g, const std::string& property, int k,
                                   const SamplingMode& mode) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    const NodeId p = g.node_id(property);
    const auto node_scores = meta_path_score(g, p, MetaPathPattern::PMA, mode);

    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [node, prob] : node_scores)
        if (prob > 0.0) scored.emplace_back(g.token(node), prob);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));

    RankedPredictions preds;
    preds.property = property;
    preds.metric = "pma";
    preds.k = k;
    preds.entries = std::move(scored);
    return preds;
}

namespace {

// Ordinal ranks 1..n by descending cosine to the anchor, ties by token.
std::map<std::string, int> cosine_ranks(const VectorTable& table,
                                        const std::vector<std::string>& candidates,
                                        const std::string& anchor) {
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(candidates.size());
    for (const auto& token : candidates)
        scored.emplace_back(token, cosine_similarity(table, anchor, token));
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::map<std::string, int> ranks;
    for (std::size_t i = 0; i < scored.size(); ++i)
        ranks[scored[i].first] = static_cast<int>(i) + 1;
    return ranks;
}

}  // namespace

RankedPredictions rank_discoverers_for_material(const VectorTable& table,
                                                const std::string& property,
                                                const std::string& material, int k) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (!table.contains(property))
        throw LookupError("property '" + property + "' not in embedding vocabulary");
    if (!table.contains(material))
        throw LookupError("material '" + material + "' not in embedding vocabulary");

    std::vector<std::string> authors;
    for (const auto& token : table.tokens())
        if (is_namespaced(token) && token_kind(token) == Kind::Author) authors.push_back(token);

    RankedPredictions preds;
    preds.property = property;
    preds.metric = "mean_rank_cosine";
    preds.k = k;
    if (authors.empty()) return preds;

    const auto by_property = cosine_ranks(table, authors, property);
    const auto by_material = cosine_ranks(table, authors, material);
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(authors.size());
    for (const auto& a : authors) {
        const double mean = (by_property.at(a) + by_material.at(a)) / 2.0;
        scored.emplace_back(a, -mean);  // negate so better ranks score higher
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
    preds.entries = std::move(scored);
    return preds;
}

void save_predictions(const RankedPredictions& preds, std::uint64_t seed,
                      const std::string& window, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    out << "# property=" << preds.property << " metric=" << preds.metric << " k=" << preds.k
        << " seed=" << seed << " window=" << window << '\n';
    for (std::size_t i = 0; i < preds.entries.size(); ++i) {
        out << (i + 1) << '\t' << preds.entries[i].first << '\t'
            << io::format_double(preds.entries[i].second) << '\n';
    }
    file.commit();
}

RankedPredictions load_predictions(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    RankedPredictions preds;
    std::string line;
    std::size_t lineno = 0;
    std::size_t expected_rank = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        if (line.empty()) continue;
        if (line[0] == '#') {
            // Header comment: best-effort recovery of property/metric/k.
            for (const auto& [key, target] :
                 std::initializer_list<std::pair<const char*, std::string*>>{
                     {"property=", &preds.property}, {"metric=", &preds.metric}}) {
                const auto pos = line.find(key);
                if (pos == std::string::npos) continue;
                const auto start = pos + std::string(key).size();
                const auto end = line.find(' ', start);
                *target = line.substr(start, end == std::string::npos ? end : end - start);
            }
            const auto kpos = line.find("k=");
            if (kpos != std::string::npos) {
                const char* first = line.data() + kpos + 2;
                std::from_chars(first, line.data() + line.size(), preds.k);
            }
            continue;
        }
        const std::size_t t1 = line.find('\t');
        const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw ParseError(context + ": expected rank<TAB>token<TAB>score");
        std::size_t rank = 0;
        {
            const auto [ptr, ec] = std::from_chars(line.data(), line.data() + t1, rank);
            if (ec != std::errc{} || ptr != line.data() + t1)
                throw ParseError(context + ": invalid rank field");
        }
        if (rank != ++expected_rank)
            throw ParseError(context + ": ranks must be consecutive from 1");
        const std::string token = line.substr(t1 + 1, t2 - t1 - 1);
        const std::string score_text = line.substr(t2 + 1);
        double score = 0.0;
        if (score_text == "inf") {
            score = std::numeric_limits<double>::infinity();
        } else if (score_text == "-inf") {
            score = -std::numeric_limits<double>::infinity();
        } else {
            const char* first = score_text.data();
            const auto [ptr, ec] = std::from_chars(first, first + score_text.size(), score);
            if (ec != std::errc{} || ptr != first + score_text.size())
                throw ParseError(context + ": invalid score '" + score_text + "'");
        }
        preds.entries.emplace_back(token, score);
    }
    if (preds.k == 0) preds.k = static_cast<int>(preds.entries.size());
    return preds;
}

}  // namespace hyperdisc
