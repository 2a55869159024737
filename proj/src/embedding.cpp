#include "hyperdisc/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "hyperdisc/errors.hpp"
#include "hyperdisc/io_util.hpp"

namespace hyperdisc {

VectorTable::VectorTable(std::vector<std::string> tokens, Eigen::MatrixXd vectors,
                         std::vector<std::uint64_t> counts)
    : tokens_(std::move(tokens)), counts_(std::move(counts)), vectors_(std::move(vectors)) {
    if (static_cast<Eigen::Index>(tokens_.size()) != vectors_.rows())
        throw ArgumentError("vector table: token count does not match matrix rows");
    if (counts_.empty()) counts_.assign(tokens_.size(), 0);
    if (counts_.size() != tokens_.size())
        throw ArgumentError("vector table: frequency count size mismatch");
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (!index_.emplace(tokens_[i], i).second)
            throw ValidationError("vector table: duplicate token '" + tokens_[i] + "'");
    }
}

std::size_t VectorTable::index_of(const std::string& token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) throw LookupError("token '" + token + "' not in vocabulary");
    return it->second;
}

std::uint64_t VectorTable::frequency(const std::string& token) const {
    return counts_[index_of(token)];
}

Eigen::MatrixXd::ConstRowXpr VectorTable::vector(const std::string& token) const {
    return vectors_.row(static_cast<Eigen::Index>(index_of(token)));
}

Eigen::MatrixXd::ConstRowXpr VectorTable::vector(std::size_t index) const {
    return vectors_.row(static_cast<Eigen::Index>(index));
}

void VectorTable::save(const std::filesystem::path& path) const {
    io::AtomicFile file(path);
    auto& out = file.stream();
    out << size() << ' ' << dimension() << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out << tokens_[i];
        for (Eigen::Index j = 0; j < dimension(); ++j)
            out << ' ' << io::format_double(vectors_(static_cast<Eigen::Index>(i), j));
        out << '\n';
    }
    file.commit();
}

VectorTable VectorTable::load(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    const std::string context = path.filename().string();
    std::string line;
    if (!std::getline(in, line)) throw ParseError(context + ": empty vector file");
    std::istringstream header(line);
    std::size_t count = 0;
    Eigen::Index dim = 0;
    if (!(header >> count >> dim) || dim < 1)
        throw ParseError(context + ": bad header '" + line + "' (expected '<count> <dimension>')");

    std::vector<std::string> tokens;
    tokens.reserve(count);
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(count), dim);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line))
            throw ParseError(context + ": truncated vector file (expected " +
                             std::to_string(count) + " rows)");
        std::size_t pos = line.find(' ');
        if (pos == std::string::npos || pos == 0)
            throw ParseError(context + ": malformed row " + std::to_string(i + 2));
        tokens.push_back(line.substr(0, pos));
        for (Eigen::Index j = 0; j < dim; ++j) {
            const std::size_t next = line.find(' ', pos + 1);
            const std::size_t len = (next == std::string::npos ? line.size() : next) - (pos + 1);
            double value = 0.0;
            const char* first = line.data() + pos + 1;
            const auto [ptr, ec] = std::from_chars(first, first + len, value);
            if (ec != std::errc{} || ptr != first + len || !std::isfinite(value))
                throw ParseError(context + ": bad number in row " + std::to_string(i + 2));
            vectors(static_cast<Eigen::Index>(i), j) = value;
            if (next == std::string::npos) {
                if (j + 1 != dim)
                    throw ParseError(context + ": row " + std::to_string(i + 2) +
                                     " has too few values");
                pos = line.size();
            } else {
                pos = next;
            }
        }
        if (pos != line.size())
            throw ParseError(context + ": row " + std::to_string(i + 2) + " has trailing data");
    }
    return VectorTable(std::move(tokens), std::move(vectors));
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw ArgumentError("cosine of a zero vector is undefined");
    return a.dot(b) / (na * nb);
}

double cosine_similarity(const VectorTable& table, const std::string& t1, const std::string& t2) {
    const Eigen::VectorXd a = table.vector(t1).transpose();
    const Eigen::VectorXd b = table.vector(t2).transpose();
    return cosine(a, b);
}

namespace sgns {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

double pair_loss(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                 const std::vector<Eigen::VectorXd>& negatives) {
    double loss = -log_sigmoid(context.dot(center));
    for (const auto& neg : negatives) loss -= log_sigmoid(-neg.dot(center));
    return loss;
}

PairGradients pair_gradients(const Eigen::VectorXd& center, const Eigen::VectorXd& context,
                             const std::vector<Eigen::VectorXd>& negatives) {
    PairGradients g;
    const double f_pos = sigmoid(context.dot(center));
    g.center = (f_pos - 1.0) * context;
    g.context = (f_pos - 1.0) * center;
    g.negatives.reserve(negatives.size());
    for (const auto& neg : negatives) {
        const double f = sigmoid(neg.dot(center));
        g.center += f * neg;
        g.negatives.push_back(f * center);
    }
    return g;
}

}  // namespace sgns

namespace {

struct Vocabulary {
    std::vector<std::string> tokens;       // ordered by descending count, then token
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<double> negative_cdf;      // unigram^(3/4) cumulative distribution

    std::size_t draw_negative(Rng& rng) const {
        const double u = rng.next_double() * negative_cdf.back();
        const auto it = std::upper_bound(negative_cdf.begin(), negative_cdf.end(), u);
        return static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - negative_cdf.begin(),
                                     static_cast<std::ptrdiff_t>(negative_cdf.size()) - 1));
    }
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& sequences,
                            int min_count) {
    std::map<std::string, std::uint64_t> freq;
    for (const auto& seq : sequences)
        for (const auto& tok : seq) ++freq[tok];

    std::vector<std::pair<std::string, std::uint64_t>> entries;
    for (const auto& [tok, n] : freq)
        if (n >= static_cast<std::uint64_t>(min_count)) entries.emplace_back(tok, n);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.tokens.reserve(entries.size());
    vocab.counts.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        vocab.tokens.push_back(entries[i].first);
        vocab.counts.push_back(entries[i].second);
        vocab.index.emplace(entries[i].first, i);
    }
    vocab.negative_cdf.reserve(entries.size());
    double acc = 0.0;
    for (const auto& [tok, n] : entries) {
        acc += std::pow(static_cast<double>(n), 0.75);
        vocab.negative_cdf.push_back(acc);
    }
    return vocab;
}

struct TrainState {
    Eigen::MatrixXd input;    // center-word vectors; rows = vocab
    Eigen::MatrixXd output;   // context-word vectors
    std::atomic<std::uint64_t> processed{0};
    std::uint64_t total_positions = 0;
    double pair_count = 0.0;
    double loss_sum = 0.0;
};

// One center position: pairs against surrounding context words inside the
// (possibly shrunk) window, each with `negatives` sampled from the cdf.
void train_position(const std::vector<std::size_t>& sentence, std::size_t pos,
                    const Vocabulary& vocab, const TrainConfig& cfg, double lr, Rng& rng,
                    Eigen::MatrixXd& input, Eigen::MatrixXd& output, double& loss_sum,
                    double& pair_count) {
    const int window = cfg.dynamic_window
                           ? 1 + static_cast<int>(rng.next_below(
                                 static_cast<std::uint64_t>(cfg.window)))
                           : cfg.window;
    const std::size_t center = sentence[pos];
    const auto c_row = static_cast<Eigen::Index>(center);

    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(pos) - window);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(sentence.size()) - 1,
                                                       static_cast<std::ptrdiff_t>(pos) + window);
    Eigen::VectorXd grad_center(input.cols());
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        if (j == static_cast<std::ptrdiff_t>(pos)) continue;
        const std::size_t context = sentence[static_cast<std::size_t>(j)];
        grad_center.setZero();
        double loss = 0.0;

        // Positive example.
        {
            const auto o_row = static_cast<Eigen::Index>(context);
            const double dot = output.row(o_row).dot(input.row(c_row));
            const double f = sgns::sigmoid(dot);
            loss -= sgns::log_sigmoid(dot);
            const double g = (1.0 - f) * lr;
            grad_center += g * output.row(o_row).transpose();
            output.row(o_row) += g * input.row(c_row);
        }
        // Negative examples (draws equal to the true context are skipped).
        for (int k = 0; k < cfg.negatives; ++k) {
            const std::size_t neg = vocab.draw_negative(rng);
            if (neg == context) continue;
            const auto o_row = static_cast<Eigen::Index>(neg);
            const double dot = output.row(o_row).dot(input.row(c_row));
            const double f = sgns::sigmoid(dot);
            loss -= sgns::log_sigmoid(-dot);
            const double g = -f * lr;
            grad_center += g * output.row(o_row).transpose();
            output.row(o_row) += g * input.row(c_row);
        }
        input.row(c_row) += grad_center.transpose();
        loss_sum += loss;
        pair_count += 1.0;
    }
}

}  // namespace

TrainResult train_sgns(const std::vector<std::vector<std::string>>& sequences,
                       const TrainConfig& cfg) {
    if (cfg.dimension < 1) throw ArgumentError("dimension must be >= 1");
    if (cfg.window < 1) throw ArgumentError("window must be >= 1");
    if (cfg.epochs < 1) throw ArgumentError("epochs must be >= 1");
    if (cfg.negatives < 1) throw ArgumentError("negatives must be >= 1");
    if (cfg.min_count < 1) throw ArgumentError("min_count must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
    if (sequences.empty()) throw TrainError("empty training corpus");

    const Vocabulary vocab = build_vocabulary(sequences, cfg.min_count);
    if (vocab.tokens.empty())
        throw TrainError("no token meets the minimum frequency " + std::to_string(cfg.min_count));

    // Sentences as vocabulary indices; tokens below min frequency are dropped.
    std::vector<std::vector<std::size_t>> corpus;
    corpus.reserve(sequences.size());
    std::uint64_t total_positions = 0;
    for (const auto& seq : sequences) {
        std::vector<std::size_t> sent;
        sent.reserve(seq.size());
        for (const auto& tok : seq) {
            const auto it = vocab.index.find(tok);
            if (it != vocab.index.end()) sent.push_back(it->second);
        }
        if (sent.size() < 2) continue;  // no trainable pair
        total_positions += sent.size();
        corpus.push_back(std::move(sent));
    }

    const auto v = static_cast<Eigen::Index>(vocab.tokens.size());
    const auto d = static_cast<Eigen::Index>(cfg.dimension);
    Eigen::MatrixXd input(v, d);
    Eigen::MatrixXd output = Eigen::MatrixXd::Zero(v, d);
    Rng init_rng = Rng::stream(cfg.seed, 0);
    for (Eigen::Index i = 0; i < v; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            input(i, j) = (init_rng.next_double() - 0.5) / static_cast<double>(cfg.dimension);

    const double lr_floor = cfg.learning_rate * 1e-4;
    const std::uint64_t schedule = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(cfg.epochs) * total_positions);
    std::atomic<std::uint64_t> processed{0};
    auto current_lr = [&]() {
        const double done = static_cast<double>(processed.load(std::memory_order_relaxed)) /
                            static_cast<double>(schedule);
        return std::max(lr_floor, cfg.learning_rate * (1.0 - done));
    };

    std::vector<double> epoch_losses;
    epoch_losses.reserve(static_cast<std::size_t>(cfg.epochs));

    if (total_positions == 0) {
        // Vocabulary exists but no sequence retains two tokens: vectors stay
        // at initialization, there is nothing to iterate.
        epoch_losses.assign(static_cast<std::size_t>(cfg.epochs), 0.0);
        return {VectorTable(vocab.tokens, std::move(input), vocab.counts), epoch_losses};
    }

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double loss_sum = 0.0;
        double pair_count = 0.0;
        if (cfg.threads <= 1) {
            Rng rng = Rng::stream(cfg.seed, 1 + static_cast<std::uint64_t>(epoch));
            for (const auto& sent : corpus) {
                for (std::size_t pos = 0; pos < sent.size(); ++pos) {
                    const double lr = current_lr();
                    train_position(sent, pos, vocab, cfg, lr, rng, input, output, loss_sum,
                                   pair_count);
                    processed.fetch_add(1, std::memory_order_relaxed);
                }
            }
        } else {
            const std::size_t workers =
                std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), corpus.size());
            std::vector<double> losses(workers, 0.0), pairs(workers, 0.0);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t t = 0; t < workers; ++t) {
                pool.emplace_back([&, t]() {
                    Rng rng = Rng::stream(cfg.seed,
                                          1 + static_cast<std::uint64_t>(epoch) * workers + t);
                    const std::size_t begin = corpus.size() * t / workers;
                    const std::size_t end = corpus.size() * (t + 1) / workers;
                    for (std::size_t s = begin; s < end; ++s) {
                        for (std::size_t pos = 0; pos < corpus[s].size(); ++pos) {
                            const double lr = current_lr();
                            train_position(corpus[s], pos, vocab, cfg, lr, rng, input, output,
                                           losses[t], pairs[t]);
                            processed.fetch_add(1, std::memory_order_relaxed);
                        }
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (std::size_t t = 0; t < workers; ++t) {
                loss_sum += losses[t];
                pair_count += pairs[t];
            }
        }
        epoch_losses.push_back(pair_count > 0.0 ? loss_sum / pair_count : 0.0);
    }

    return {VectorTable(vocab.tokens, std::move(input), vocab.counts), epoch_losses};
}

}  // namespace hyperdisc
