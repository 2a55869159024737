#include "hyperdisc/alien.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"
#include "hyperdisc/stats.hpp"

namespace hyperdisc {

std::map<std::string, double> van_der_waerden(const std::map<std::string, double>& scores) {
    if (scores.empty()) throw ArgumentError("van der waerden transform of an empty map");
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& [token, v] : scores) values.push_back(v);
    const auto ranks = stats::fractional_ranks(values);

    const double n = static_cast<double>(values.size());
    std::map<std::string, double> out;
    std::size_t i = 0;
    for (const auto& [token, v] : scores)
        out[token] = stats::normal_quantile(ranks[i++] / (n + 1.0));
    return out;
}

namespace {

std::map<std::string, double> zscore(const std::map<std::string, double>& values,
                                     const char* label) {
    std::vector<double> xs;
    xs.reserve(values.size());
    for (const auto& [token, v] : values) xs.push_back(v);
    const double mu = stats::mean(xs);
    const double sd = stats::population_sd(xs);
    if (sd == 0.0)
        throw ValidationError(std::string("degenerate ") + label +
                              " signal: zero variance after rank transform");
    std::map<std::string, double> out;
    for (const auto& [token, v] : values) out[token] = (v - mu) / sd;
    return out;
}

}  // namespace

std::map<std::string, double> fuse(const std::map<std::string, double>& alienness,
                                   const std::map<std::string, double>& plausibility,
                                   double beta) {
    if (!(std::abs(beta) <= 1.0)) throw ArgumentError("beta must lie in [-1, 1]");
    if (alienness.size() != plausibility.size())
        throw ArgumentError("fuse: signals cover different candidate sets");
    for (const auto& [token, v] : alienness)
        if (!plausibility.count(token))
            throw ArgumentError("fuse: token '" + token + "' missing from plausibility signal");

    const auto s1 = zscore(van_der_waerden(alienness), "alienness");
    const auto s2 = zscore(van_der_waerden(plausibility), "plausibility");
    std::map<std::string, double> out;
    for (const auto& [token, v1] : s1)
        out[token] = beta * v1 + (1.0 - std::abs(beta)) * s2.at(token);
    return out;
}

FusedScores fuse_signals(const Hypergraph& g, const VectorTable& table,
                         const std::string& property, const std::set<std::string>& pool,
                         double beta) {
    if (pool.empty()) throw ArgumentError("candidate pool is empty");
    const NodeId p = g.node_id(property);
    if (!table.contains(property))
        throw LookupError("property '" + property + "' not in embedding vocabulary");

    const auto dist = g.distances_from(p);
    FusedScores result;
    for (const auto& token : pool) {
        if (!table.contains(token)) continue;  // no plausibility signal, cannot fuse
        double spd = std::numeric_limits<double>::infinity();
        if (g.has_node(token)) {
            const auto d = dist[g.node_id(token)];
            if (d) spd = static_cast<double>(*d);
        }
        result.spd[token] = spd;
        result.cosine[token] = cosine_similarity(table, property, token);
    }
    if (result.spd.empty())
        throw ValidationError("no pool member is covered by the embedding vocabulary");
    result.fused = fuse(result.spd, result.cosine, beta);
    return result;
}

RankedPredictions rank_alien(const Hypergraph& g, const VectorTable& table,
                             const std::string& property, const std::set<std::string>& pool,
                             const FusionConfig& cfg) {
    if (cfg.k < 1) throw ArgumentError("k must be >= 1");
    const auto signals = fuse_signals(g, table, property, pool, cfg.beta);

    std::set<std::string> fused_pool;
    for (const auto& [token, v] : signals.fused) fused_pool.insert(token);
    auto preds = rank_from_scores(property, "alien", signals.fused, fused_pool, cfg.k);
    return preds;
}

std::vector<SweepRow> sweep_alien(const Hypergraph& g, const VectorTable& table,
                                  const std::string& property, const std::set<std::string>& pool,
                                  const std::vector<double>& betas, int k) {
    if (betas.empty()) throw ArgumentError("empty beta grid");
    for (std::size_t i = 1; i < betas.size(); ++i)
        if (!(betas[i - 1] < betas[i]))
            throw ArgumentError("beta grid must be strictly increasing");

    std::vector<SweepRow> rows;
    for (const double beta : betas) {
        const auto signals = fuse_signals(g, table, property, pool, beta);
        std::set<std::string> fused_pool;
        for (const auto& [token, v] : signals.fused) fused_pool.insert(token);
        const auto preds = rank_from_scores(property, "alien", signals.fused, fused_pool, k);
        for (std::size_t i = 0; i < preds.entries.size(); ++i) {
            const auto& [token, s_final] = preds.entries[i];
            rows.push_back(SweepRow{beta, static_cast<int>(i) + 1, token, s_final,
                                    signals.spd.at(token), signals.cosine.at(token)});
        }
    }
    return rows;
}

void save_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& r : rows) {
        out << io::format_double(r.beta) << '\t' << r.rank << '\t' << r.token << '\t'
            << io::format_double(r.s_final) << '\t' << io::format_double(r.spd) << '\t'
            << io::format_double(r.cosine) << '\n';
    }
    file.commit();
}

std::vector<SweepRow> load_sweep(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    std::vector<SweepRow> rows;
    std::string line;
    std::size_t lineno = 0;
    auto parse_field = [](const std::string& s, const std::string& context) {
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError(context + ": invalid number '" + s + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() != 6)
            throw ParseError(context + ": expected 6 tab-separated fields, got " +
                             std::to_string(fields.size()));
        SweepRow row;
        row.beta = parse_field(fields[0], context);
        int rank = 0;
        {
            const auto [ptr, ec] =
                std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), rank);
            if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size())
                throw ParseError(context + ": invalid rank '" + fields[1] + "'");
        }
        row.rank = rank;
        row.token = fields[2];
        row.s_final = parse_field(fields[3], context);
        row.spd = parse_field(fields[4], context);
        row.cosine = parse_field(fields[5], context);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> default_beta_grid() {
    std::vector<double> grid;
    for (int i = -4; i <= 4; ++i) grid.push_back(static_cast<double>(i) / 5.0);
    return grid;
}

}  // namespace hyperdisc
