// olid: train, apply and evaluate one-class language identification models.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "olid/corpusio.hpp"
#include "olid/errors.hpp"
#include "olid/evalkit.hpp"
#include "olid/modelio.hpp"
#include "olid/ocsvm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct TrainFlags {
    unsigned ngram = 4;
    unsigned hash_bits = 18;
    double nu = 0.05;
    std::uint32_t hash_seed = 0;
    double tol = 1e-4;
    std::uint64_t max_iter = 0;

    olid::TrainConfig config() const {
        olid::TrainConfig cfg;
        cfg.ngram_order = ngram;
        cfg.hash.hash_bits = hash_bits;
        cfg.hash.seed = hash_seed;
        cfg.nu = nu;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return cfg;
    }
};

const CLI::Validator kNuRange(
    [](const std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v <= 1.0)) {
            return "nu must be in (0, 1], got " + s;
        }
        return {};
    },
    "in (0, 1]");

const CLI::Validator kPositive(
    [](const std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0)) {
            return "value must be positive, got " + s;
        }
        return {};
    },
    "> 0");

// `seed_flag` differs because eval uses --seed for the split.
void add_train_flags(CLI::App* cmd, TrainFlags& f, const std::string& seed_flag) {
    cmd->add_option("--ngram", f.ngram, "Character n-gram order")->check(CLI::Range(1u, 64u));
    cmd->add_option("--hash-bits", f.hash_bits, "Feature space is 2^bits")
        ->check(CLI::Range(olid::HashConfig::kMinBits, olid::HashConfig::kMaxBits));
    cmd->add_option("--nu", f.nu, "Upper bound on the training outlier fraction")->check(kNuRange);
    cmd->add_option(seed_flag, f.hash_seed, "MurmurHash3 seed");
    cmd->add_option("--tol", f.tol, "KKT violation tolerance")->check(kPositive);
    cmd->add_option("--max-iter", f.max_iter, "Solver update cap (0: 10000 * n)");
}

int run_train(const std::string& input, const std::string& model_path, const TrainFlags& flags) {
    const olid::Corpus corpus = olid::load_corpus(input);
    const olid::TrainConfig cfg = flags.config();
    const olid::TrainResult result = olid::train_sentences(corpus.sentences, cfg);
    olid::save_model(result.model, model_path);

    const auto& m = result.model;
    fmt::print("language      {}\n", corpus.language_tag);
    fmt::print("n_train       {}\n", m.n_train());
    fmt::print("sv_count      {}\n", m.sv_count());
    fmt::print("sv_fraction   {:.4f}\n",
               static_cast<double>(m.sv_count()) / static_cast<double>(m.n_train()));
    fmt::print("outlier_frac  {:.4f}\n", result.training_outlier_fraction(cfg.tol));
    fmt::print("rho           {:.9g}\n", m.rho());
    fmt::print("iterations    {}\n", m.iterations());
    fmt::print("converged     {}\n", m.converged() ? "yes" : "no");
    fmt::print("model         {}\n", model_path);
    return kExitOk;
}

int predict_stream(const olid::OneClassModel& model, std::istream& in, bool flush_each) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        olid::Sentence sentence;
        try {
            sentence = olid::normalize(line);
        } catch (const olid::InvalidEncoding& e) {
            throw olid::InvalidEncoding(fmt::format("line {}: {}", line_no, e.what()), line_no);
        }
        if (sentence.empty()) {
            continue;
        }
        const olid::Prediction p = model.predict(sentence);
        fmt::print("{}\t{:.9g}\t{}\n", p.label == olid::Label::InLanguage ? "in" : "out", p.score,
                   sentence.text());
        if (flush_each) {
            std::fflush(stdout);
        }
    }
    return kExitOk;
}

int run_predict(const std::string& model_path, const std::string& input) {
    const olid::OneClassModel model = olid::load_model(model_path);
    if (input.empty() || input == "-") {
        return predict_stream(model, std::cin, true);
    }
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw olid::IoError(fmt::format("cannot open input '{}'", input));
    }
    return predict_stream(model, in, false);
}

int run_eval(const std::string& dir, const std::string& out, double split, std::uint64_t seed,
             unsigned jobs, const TrainFlags& flags) {
    const std::vector<olid::Corpus> corpora = olid::load_corpus_dir(dir);
    olid::ProtocolOptions options;
    options.train_fraction = split;
    options.jobs = jobs;
    const olid::EvalReport report = olid::run_protocol(corpora, flags.config(), seed, options);
    olid::write_machine_report(report, out);
    fmt::print("{}", olid::render_table(report));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-class open-set language identification"};
    app.require_subcommand(1);

    TrainFlags train_flags;
    std::string train_input;
    std::string train_model;
    auto* train = app.add_subcommand("train", "Train a one-class model from a monolingual corpus");
    train->add_option("--input", train_input, "Corpus file, one sentence per line")->required();
    train->add_option("--model", train_model, "Output model path (.olid)")->required();
    add_train_flags(train, train_flags, "--seed");

    std::string predict_model;
    std::string predict_input;
    auto* predict = app.add_subcommand("predict", "Classify lines as in-language or outlier");
    predict->add_option("--model", predict_model, "Model file (.olid)")->required();
    predict->add_option("--input", predict_input, "Input file (default: stdin)");

    TrainFlags eval_flags;
    std::string eval_dir;
    std::string eval_out;
    double eval_split = 0.9;
    std::uint64_t eval_seed = 0;
    unsigned eval_jobs = 0;
    auto* eval = app.add_subcommand("eval", "Run the open-set protocol over a corpus directory");
    eval->add_option("--corpus-dir", eval_dir, "Directory of <language>.txt corpora")->required();
    eval->add_option("--out", eval_out, "Machine-readable report path")->required();
    eval->add_option("--split", eval_split, "Training fraction per language")
        ->check(CLI::Range(0.0, 1.0));
    eval->add_option("--seed", eval_seed, "Split seed");
    eval->add_option("--jobs", eval_jobs, "Worker threads (0: all cores)");
    add_train_flags(eval, eval_flags, "--hash-seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*train) {
            return run_train(train_input, train_model, train_flags);
        }
        if (*predict) {
            return run_predict(predict_model, predict_input);
        }
        return run_eval(eval_dir, eval_out, eval_split, eval_seed, eval_jobs, eval_flags);
    } catch (const olid::IoError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const olid::InvalidEncoding& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const olid::InsufficientData& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const olid::InvalidConfig& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const olid::FormatError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitFailure;
    }
}
