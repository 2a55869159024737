#include "hyperdisc/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"

namespace hyperdisc {

namespace {

std::vector<std::string> namespaced_set(Kind kind, const std::vector<std::string>& raw,
                                        const std::string& context) {
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& tok : raw) {
        if (!valid_raw_token(tok))
            throw ValidationError(context + ": invalid " + std::string(kind_name(kind)) +
                                  " token '" + tok + "' (empty or contains whitespace)");
        out.push_back(namespaced(kind, tok));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> string_array(const nlohmann::json& obj, const char* field,
                                      const std::string& context) {
    const auto it = obj.find(field);
    if (it == obj.end() || !it->is_array())
        throw ParseError(context + ": missing or non-array field '" + std::string(field) + "'");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string())
            throw ParseError(context + ": non-string entry in '" + std::string(field) + "'");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

void CorpusStore::add(PublicationRecord rec) {
    if (by_id_.count(rec.id))
        throw ValidationError("duplicate record id '" + rec.id + "'");
    const std::size_t idx = records_.size();
    by_id_.emplace(rec.id, idx);
    by_period_[rec.period].push_back(idx);
    for (const auto& p : rec.properties) property_tokens_.insert(p);
    records_.push_back(std::move(rec));
}

const PublicationRecord* CorpusStore::find(const std::string& id) const {
    const auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

std::vector<std::size_t> CorpusStore::records_in_period(int period) const {
    const auto it = by_period_.find(period);
    return it == by_period_.end() ? std::vector<std::size_t>{} : it->second;
}

bool CorpusStore::has_property_token(const std::string& token) const {
    return property_tokens_.count(token) > 0;
}

int CorpusStore::min_period() const {
    if (by_period_.empty()) throw LookupError("empty corpus has no periods");
    return by_period_.begin()->first;
}

int CorpusStore::max_period() const {
    if (by_period_.empty()) throw LookupError("empty corpus has no periods");
    return by_period_.rbegin()->first;
}

CorpusView::CorpusView(const CorpusStore& store, int end_period, int memory)
    : store_(&store), end_period_(end_period), memory_(memory) {
    if (memory < 1) throw ArgumentError("window memory must be >= 1");
    const int begin = end_period - memory;
    for (std::size_t i = 0; i < store.records().size(); ++i) {
        const int p = store.records()[i].period;
        if (p >= begin && p < end_period) indices_.push_back(i);
    }
}

CorpusStore load_corpus(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    CorpusStore store;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(context + ": invalid JSON: " + e.what());
        }
        if (!obj.is_object()) throw ParseError(context + ": record is not a JSON object");

        PublicationRecord rec;
        const auto id_it = obj.find("id");
        if (id_it == obj.end() || !id_it->is_string())
            throw ParseError(context + ": missing or non-string field 'id'");
        rec.id = id_it->get<std::string>();
        if (!valid_raw_token(rec.id))
            throw ValidationError(context + ": invalid record id '" + rec.id + "'");

        const auto year_it = obj.find("year");
        if (year_it == obj.end() || !year_it->is_number_integer())
            throw ParseError(context + ": missing or non-integer field 'year'");
        rec.period = year_it->get<int>();

        rec.authors = namespaced_set(Kind::Author, string_array(obj, "authors", context), context);
        rec.materials =
            namespaced_set(Kind::Material, string_array(obj, "materials", context), context);
        rec.properties =
            namespaced_set(Kind::Property, string_array(obj, "properties", context), context);
        store.add(std::move(rec));
    }
    return store;
}

void save_corpus(const CorpusStore& store, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& rec : store.records()) {
        nlohmann::ordered_json obj;
        obj["id"] = rec.id;
        obj["year"] = rec.period;
        auto strip_all = [](const std::vector<std::string>& ts) {
            std::vector<std::string> raw;
            raw.reserve(ts.size());
            for (const auto& t : ts) raw.emplace_back(strip_namespace(t));
            return raw;
        };
        obj["authors"] = strip_all(rec.authors);
        obj["materials"] = strip_all(rec.materials);
        obj["properties"] = strip_all(rec.properties);
        out << obj.dump() << '\n';
    }
    file.commit();
}

CorpusView window(const CorpusStore& store, int end_period, int memory) {
    return CorpusView(store, end_period, memory);
}

GroundTruthSet derive_ground_truth(const CorpusStore& store, const std::string& property,
                                   int from_period) {
    if (!store.has_property_token(property))
        throw LookupError("unknown property token '" + property + "'");
    // Earliest co-occurrence period per material, over the whole store.
    std::map<std::string, int> first_seen;
    for (const auto& rec : store.records()) {
        if (std::find(rec.properties.begin(), rec.properties.end(), property) ==
            rec.properties.end())
            continue;
        for (const auto& m : rec.materials) {
            const auto it = first_seen.find(m);
            if (it == first_seen.end() || rec.period < it->second) first_seen[m] = rec.period;
        }
    }
    GroundTruthSet truth;
    truth.property = property;
    for (const auto& [material, period] : first_seen) {
        if (period >= from_period) truth.discovery_period.emplace(material, period);
    }
    return truth;
}

namespace {

// Splits a TSV line into exactly `n` fields.
std::vector<std::string> tsv_fields(const std::string& line, std::size_t n,
                                    const std::string& context) {
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
    if (fields.size() != n)
        throw ParseError(context + ": expected " + std::to_string(n) + " tab-separated fields, got " +
                         std::to_string(fields.size()));
    return fields;
}

int parse_int(const std::string& s, const std::string& context) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(context + ": invalid integer '" + s + "'");
    return value;
}

double parse_double(const std::string& s, const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(context + ": invalid number '" + s + "'");
    return value;
}

}  // namespace

GroundTruthSet load_ground_truth(const std::filesystem::path& path, const std::string& property,
                                 bool header) {
    auto in = io::open_input(path);
    GroundTruthSet truth;
    truth.property = property;
    std::string line;
    std::size_t lineno = 0;
    bool skip_header = header;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (skip_header) {
            skip_header = false;
            continue;
        }
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        const auto f = tsv_fields(line, 3, context);
        const std::string prop = namespaced(Kind::Property, f[0]);
        if (prop != property) continue;
        const std::string material = namespaced(Kind::Material, f[1]);
        const int period = parse_int(f[2], context);
        const auto [it, inserted] = truth.discovery_period.emplace(material, period);
        if (!inserted)
            throw ValidationError(context + ": material '" + f[1] + "' listed twice for property '" +
                                  f[0] + "'");
    }
    return truth;
}

void save_ground_truth(const GroundTruthSet& truth, const std::filesystem::path& path) {
    io::AtomicFile file(path);
    auto& out = file.stream();
    for (const auto& [material, period] : truth.discovery_period) {
        out << strip_namespace(truth.property) << '\t' << strip_namespace(material) << '\t'
            << period << '\n';
    }
    file.commit();
}

std::vector<std::vector<std::string>> record_token_bags(const CorpusView& view) {
    std::vector<std::vector<std::string>> bags;
    bags.reserve(view.size());
    for (std::size_t idx : view.record_indices()) {
        const auto& rec = view.store().records()[idx];
        std::vector<std::string> bag;
        bag.reserve(rec.properties.size() + rec.materials.size() + rec.authors.size());
        bag.insert(bag.end(), rec.properties.begin(), rec.properties.end());
        bag.insert(bag.end(), rec.materials.begin(), rec.materials.end());
        bag.insert(bag.end(), rec.authors.begin(), rec.authors.end());
        if (!bag.empty()) bags.push_back(std::move(bag));
    }
    return bags;
}

ScoreTable load_theoretical_scores(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    ScoreTable table;
    table.provenance = path.filename().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::string context = path.filename().string() + ":" + std::to_string(lineno);
        const auto f = tsv_fields(line, 2, context);
        const double tau = parse_double(f[1], context);
        if (!std::isfinite(tau))
            throw ValidationError(context + ": non-finite score for material '" + f[0] + "'");
        const std::string material = namespaced(Kind::Material, f[0]);
        const auto [it, inserted] = table.tau.emplace(material, tau);
        if (!inserted) throw ValidationError(context + ": duplicate material '" + f[0] + "'");
    }
    return table;
}

}  // namespace hyperdisc
