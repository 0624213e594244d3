// Command-line front end for the statute retrieval and entailment pipeline.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lqa/boost.hpp"
#include "lqa/corpus.hpp"
#include "lqa/embed.hpp"
#include "lqa/entail.hpp"
#include "lqa/eval.hpp"
#include "lqa/ranker.hpp"
#include "lqa/textpipe.hpp"
#include "lqa/tuner.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string statutes, pairs, model, params, vectors, dict, boost;
    std::string stopwords, lemma_exceptions;
    std::string question;
    std::string task = "retrieval";
    std::string format = "text";
    std::string out;
    int top_n = 10;
    int budget = 500;
    int sweeps = 1;
    bool ablation = false;
    double init_iq = 0.8, init_ct = 0.5, init_rt = 0.5;
    int init_k = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw UsageError("missing required --" + what + " path");
    if (!fs::exists(path)) throw UsageError(what + " file not found: " + path);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

lqa::PipeTables make_tables(const Options& opt) {
    std::optional<std::string> stop, exc;
    if (!opt.stopwords.empty()) {
        require_file(opt.stopwords, "stopwords");
        stop = opt.stopwords;
    }
    if (!opt.lemma_exceptions.empty()) {
        require_file(opt.lemma_exceptions, "lemma-exceptions");
        exc = opt.lemma_exceptions;
    }
    return lqa::PipeTables::load(stop, exc);
}

lqa::RankerParams load_params(const Options& opt) {
    if (opt.params.empty() || !fs::exists(opt.params)) {
        if (!opt.params.empty()) throw UsageError("params file not found: " + opt.params);
        return lqa::RankerParams{};  // the published competition values
    }
    return lqa::params_from_json(json::parse(slurp(opt.params)));
}

lqa::TermDictionary load_dict(const Options& opt) {
    if (opt.dict.empty()) return {};
    require_file(opt.dict, "dict");
    return lqa::load_dictionary(opt.dict);
}

lqa::EmbeddingTable load_vectors(const Options& opt) {
    if (opt.vectors.empty()) return {};  // degraded mode: avg_word2vec = 0
    require_file(opt.vectors, "vectors");
    return lqa::load_embeddings(opt.vectors, &std::cerr);
}

std::string fmt4(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << v;
    return out.str();
}

int cmd_build(const Options& opt) {
    require_file(opt.statutes, "statutes");
    if (opt.model.empty()) throw UsageError("missing required --model output path");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    lqa::RankerParams params = load_params(opt);

    std::vector<lqa::TrainingPair> pairs;
    if (!opt.pairs.empty()) {
        require_file(opt.pairs, "pairs");
        pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    }
    lqa::NGramModel model =
        lqa::build_model(corpus, params, pairs.empty() ? nullptr : &pairs, tables);

    std::ofstream out(opt.model);
    if (!out) throw UsageError("cannot write model file: " + opt.model);
    out << lqa::model_to_json(model).dump(2) << "\n";
    std::cout << "articles: " << model.n_articles << "\n"
              << "distinct n-grams: " << model.df.size() << "\n";
    return 0;
}

int cmd_tune(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.pairs, "pairs");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    lqa::TermDictionary dict = load_dict(opt);

    lqa::RankerParams initial;
    initial.k = opt.init_k;
    initial.i_q = opt.init_iq;
    initial.i_art = 1.0 - opt.init_iq;
    initial.confidence_thresh = opt.init_ct;
    initial.reference_thresh = opt.init_rt;

    auto [best, trace] = lqa::tune(corpus, pairs, initial, opt.budget, opt.sweeps, dict, tables);

    for (const auto& step : trace.steps)
        std::cerr << step.param << ": " << fmt4(step.old_value) << " -> "
                  << fmt4(step.new_value) << " (F=" << fmt4(step.f_measure) << ")\n";
    std::cout << "k=" << best.k << " i_q=" << fmt4(best.i_q) << " i_art=" << fmt4(best.i_art)
              << " confidence_thresh=" << fmt4(best.confidence_thresh)
              << " reference_thresh=" << fmt4(best.reference_thresh)
              << " evaluations=" << trace.evaluations << "\n";

    if (!opt.params.empty()) {
        std::ofstream out(opt.params);
        if (!out) throw UsageError("cannot write params file: " + opt.params);
        out << lqa::params_to_json(best).dump(2) << "\n";
    }
    return 0;
}

json retrieve_one(const lqa::NGramModel& model, const lqa::RankerParams& params,
                  const std::string& question, const lqa::TermDictionary& dict,
                  const lqa::PipeTables& tables) {
    lqa::RankedList ranked = lqa::rank(model, params, question, dict, tables);
    std::vector<std::string> final_ids = lqa::filter(ranked, model, params);
    json top = json::array();
    for (const auto& e : ranked) top.push_back({{"id", e.id}, {"score", e.score}});
    return {{"top", top}, {"final", final_ids}};
}

int cmd_retrieve(const Options& opt) {
    require_file(opt.model, "model");
    auto tables = make_tables(opt);
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::RankerParams params = load_params(opt);
    lqa::TermDictionary dict = load_dict(opt);

    auto emit = [&](const std::string& question) {
        json r = retrieve_one(model, params, question, dict, tables);
        if (opt.format == "json") {
            std::cout << r.dump() << "\n";
        } else {
            for (const auto& e : r["top"])
                std::cout << e["id"].get<std::string>() << "\t"
                          << fmt4(e["score"].get<double>()) << "\n";
            std::cout << "final:";
            for (const auto& id : r["final"]) std::cout << " " << id.get<std::string>();
            std::cout << "\n";
        }
    };

    if (!opt.pairs.empty()) {
        require_file(opt.pairs, "pairs");
        lqa::Corpus empty;  // batch retrieval does not need resolution
        for (const auto& p : lqa::load_pairs(opt.pairs, empty, nullptr)) {
            if (opt.format == "json") {
                json r = retrieve_one(model, params, p.question, dict, tables);
                r["qid"] = p.qid;
                std::cout << r.dump() << "\n";
            } else {
                std::cout << "# " << p.qid << "\n";
                emit(p.question);
            }
        }
        return 0;
    }
    if (opt.question.empty()) throw UsageError("retrieve needs a question or --pairs");
    emit(opt.question);
    return 0;
}

int cmd_features(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.pairs, "pairs");
    require_file(opt.model, "model");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::EmbeddingTable emb = load_vectors(opt);

    std::cout << "qid,article,label";
    for (const auto* name : lqa::kFeatureNames) std::cout << "," << name;
    std::cout << "\n";
    for (const auto& p : pairs) {
        std::string evidence;
        std::string ids;
        for (const auto& id : p.relevant) {
            auto it = corpus.articles.find(id);
            if (it == corpus.articles.end()) continue;
            if (!evidence.empty()) evidence += " ";
            evidence += it->second.full_text();
            if (!ids.empty()) ids += "+";
            ids += id;
        }
        lqa::FeatureVector fv = lqa::extract(p.question, evidence, model, emb, tables);
        std::cout << p.qid << "," << ids << ","
                  << (p.label ? (*p.label ? "Y" : "N") : "");
        for (double v : fv) std::cout << "," << std::setprecision(17) << v;
        std::cout << "\n";
    }
    return 0;
}

int cmd_entail_train(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.pairs, "pairs");
    require_file(opt.model, "model");
    if (opt.boost.empty()) throw UsageError("missing required --boost output path");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::EmbeddingTable emb = load_vectors(opt);

    auto instances = lqa::entailment_instances(corpus, pairs, model, emb, tables);
    lqa::BoostModel bm = lqa::train_boost(instances);
    std::ofstream out(opt.boost);
    if (!out) throw UsageError("cannot write boost model file: " + opt.boost);
    out << lqa::boost_to_json(bm).dump(2) << "\n";
    std::cout << "rounds: " << bm.rounds.size() << "\n";
    return 0;
}

int cmd_entail_predict(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.pairs, "pairs");
    require_file(opt.model, "model");
    require_file(opt.boost, "boost");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::BoostModel bm = lqa::boost_from_json(json::parse(slurp(opt.boost)));
    lqa::EmbeddingTable emb = load_vectors(opt);

    long long correct = 0, labeled = 0;
    for (const auto& p : pairs) {
        std::string evidence;
        for (const auto& id : p.relevant) {
            auto it = corpus.articles.find(id);
            if (it == corpus.articles.end()) continue;
            if (!evidence.empty()) evidence += " ";
            evidence += it->second.full_text();
        }
        lqa::FeatureVector fv = lqa::extract(p.question, evidence, model, emb, tables);
        auto [label, margin] = lqa::predict(bm, fv);
        std::cout << p.qid << "\t" << lqa::answer_str(label) << "\t" << fmt4(margin) << "\n";
        if (p.label) {
            ++labeled;
            if ((label == lqa::Answer::yes) == *p.label) ++correct;
        }
    }
    if (labeled)
        std::cout << "accuracy: "
                  << fmt4(static_cast<double>(correct) / static_cast<double>(labeled)) << "\n";
    return 0;
}

json answer_one(const lqa::Corpus& corpus, const lqa::NGramModel& model,
                const lqa::RankerParams& params, const lqa::BoostModel& bm,
                const lqa::EmbeddingTable& emb, const lqa::TermDictionary& dict,
                const lqa::PipeTables& tables, const std::string& question) {
    lqa::RankedList ranked = lqa::rank(model, params, question, dict, tables);
    std::vector<std::string> evidence_ids = lqa::filter(ranked, model, params);
    std::string evidence;
    for (const auto& id : evidence_ids) {
        auto it = corpus.articles.find(id);
        if (it == corpus.articles.end()) continue;
        if (!evidence.empty()) evidence += " ";
        evidence += it->second.full_text();
    }
    lqa::FeatureVector fv = lqa::extract(question, evidence, model, emb, tables);
    auto [label, margin] = lqa::predict(bm, fv);
    return {{"answer", lqa::answer_str(label)}, {"margin", margin}, {"evidence", evidence_ids}};
}

int cmd_answer(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.model, "model");
    require_file(opt.boost, "boost");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::RankerParams params = load_params(opt);
    lqa::BoostModel bm = lqa::boost_from_json(json::parse(slurp(opt.boost)));
    lqa::EmbeddingTable emb = load_vectors(opt);
    lqa::TermDictionary dict = load_dict(opt);

    auto emit = [&](const std::string& question, const std::string& qid) {
        json r = answer_one(corpus, model, params, bm, emb, dict, tables, question);
        if (!qid.empty()) r["qid"] = qid;
        if (opt.format == "json") {
            std::cout << r.dump() << "\n";
        } else {
            std::cout << r["answer"].get<std::string>() << " (margin "
                      << fmt4(r["margin"].get<double>()) << ") evidence:";
            for (const auto& id : r["evidence"]) std::cout << " " << id.get<std::string>();
            std::cout << "\n";
        }
        return r;
    };

    if (!opt.pairs.empty()) {
        require_file(opt.pairs, "pairs");
        auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
        long long correct = 0, labeled = 0;
        for (const auto& p : pairs) {
            json r = emit(p.question, p.qid);
            if (p.label) {
                ++labeled;
                if ((r["answer"].get<std::string>() == "YES") == *p.label) ++correct;
            }
        }
        if (labeled)
            std::cout << "accuracy: "
                      << fmt4(static_cast<double>(correct) / static_cast<double>(labeled))
                      << "\n";
        return 0;
    }
    if (opt.question.empty()) throw UsageError("answer needs a question or --pairs");
    emit(opt.question, "");
    return 0;
}

int cmd_eval(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.pairs, "pairs");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    auto pairs = lqa::load_pairs(opt.pairs, corpus, &std::cerr);
    lqa::RankerParams params = load_params(opt);
    lqa::TermDictionary dict = load_dict(opt);
    lqa::EmbeddingTable emb = load_vectors(opt);

    lqa::EvalReport report;
    json extra = json::object();
    if (opt.task == "retrieval") {
        report = lqa::loo_retrieval(corpus, pairs, params, dict, tables);
        extra["top_n_recall"] =
            lqa::top_n_recall(corpus, pairs, params, static_cast<size_t>(opt.top_n), dict,
                              tables);
        extra["top_n"] = opt.top_n;
    } else if (opt.task == "entailment") {
        lqa::NGramModel model = lqa::build_model(corpus, params, &pairs, tables);
        report = lqa::loo_entailment(corpus, pairs, model, emb, {}, tables);
        if (opt.ablation) {
            auto instances = lqa::entailment_instances(corpus, pairs, model, emb, tables);
            extra["ablation"] = lqa::feature_ablation(instances);
        }
    } else if (opt.task == "combined") {
        lqa::NGramModel model = lqa::build_model(corpus, params, &pairs, tables);
        report = lqa::loo_combined(corpus, pairs, params, model, emb, {}, dict, tables);
    } else {
        throw UsageError("unknown --task: " + opt.task);
    }

    json j = lqa::report_to_json(report);
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (opt.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "task: " << opt.task << "\n"
                  << "precision: " << fmt4(report.m.precision) << "\n"
                  << "recall:    " << fmt4(report.m.recall) << "\n"
                  << "f-measure: " << fmt4(report.m.f_measure) << "\n"
                  << "accuracy:  " << fmt4(report.m.accuracy) << "\n";
        if (extra.contains("top_n_recall"))
            std::cout << "top-" << opt.top_n
                      << " recall: " << fmt4(extra["top_n_recall"].get<double>()) << "\n";
        if (extra.contains("ablation"))
            for (auto& [name, dv] : extra["ablation"].items())
                std::cout << "ablate " << name << ": " << fmt4(dv.get<double>()) << "\n";
    }
    return 0;
}

int cmd_repl(const Options& opt) {
    require_file(opt.statutes, "statutes");
    require_file(opt.model, "model");
    require_file(opt.boost, "boost");
    auto tables = make_tables(opt);
    lqa::Corpus corpus = lqa::parse_statutes(slurp(opt.statutes));
    lqa::NGramModel model = lqa::model_from_json(json::parse(slurp(opt.model)));
    lqa::RankerParams params = load_params(opt);
    lqa::BoostModel bm = lqa::boost_from_json(json::parse(slurp(opt.boost)));
    lqa::EmbeddingTable emb = load_vectors(opt);
    lqa::TermDictionary dict = load_dict(opt);

    std::string line;
    std::cout << "? " << std::flush;
    while (std::getline(std::cin, line)) {
        if (line == ":quit") break;
        if (!line.empty()) {
            try {
                json r = answer_one(corpus, model, params, bm, emb, dict, tables, line);
                std::cout << r["answer"].get<std::string>() << " (margin "
                          << fmt4(r["margin"].get<double>()) << ") evidence:";
                for (const auto& id : r["evidence"]) std::cout << " " << id.get<std::string>();
                std::cout << "\n";
            } catch (const std::exception& e) {
                std::cout << "error: " << e.what() << "\n";
            }
        }
        std::cout << "? " << std::flush;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statute retrieval and entailment pipeline"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--statutes", opt.statutes, "statute text file");
        cmd->add_option("--pairs", opt.pairs, "JSONL pair file");
        cmd->add_option("--model", opt.model, "n-gram model file");
        cmd->add_option("--params", opt.params, "ranker params JSON file");
        cmd->add_option("--vectors", opt.vectors, "word vector file");
        cmd->add_option("--dict", opt.dict, "term dictionary JSON file");
        cmd->add_option("--boost", opt.boost, "boost model file");
        cmd->add_option("--stopwords", opt.stopwords, "stopword list override");
        cmd->add_option("--lemma-exceptions", opt.lemma_exceptions, "lemma exceptions override");
        cmd->add_option("--format", opt.format, "output format: text|json");
        return cmd;
    };

    add_common(app.add_subcommand("build", "build and store the article n-gram model"));
    auto* tune = add_common(app.add_subcommand("tune", "adjust ranker parameters"));
    tune->add_option("--budget", opt.budget, "objective evaluation budget");
    tune->add_option("--sweeps", opt.sweeps, "parameter-order sweeps");
    tune->add_option("--init-k", opt.init_k, "initial k");
    tune->add_option("--init-iq", opt.init_iq, "initial i_q");
    tune->add_option("--init-ct", opt.init_ct, "initial confidence_thresh");
    tune->add_option("--init-rt", opt.init_rt, "initial reference_thresh");
    auto* retrieve = add_common(app.add_subcommand("retrieve", "rank and filter articles"));
    retrieve->add_option("question", opt.question, "the question text");
    add_common(app.add_subcommand("features", "dump feature vectors as CSV"));
    add_common(app.add_subcommand("entail-train", "train the entailment classifier"));
    add_common(app.add_subcommand("entail-predict", "classify pairs with a trained model"));
    auto* answer = add_common(app.add_subcommand("answer", "full pipeline: retrieve then judge"));
    answer->add_option("question", opt.question, "the question text");
    auto* eval = add_common(app.add_subcommand("eval", "leave-one-out evaluation"));
    eval->add_option("--task", opt.task, "retrieval|entailment|combined");
    eval->add_option("--top-n", opt.top_n, "top-n recall cutoff");
    eval->add_flag("--ablation", opt.ablation, "per-feature F-measure impact");
    add_common(app.add_subcommand("repl", "interactive question loop"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("build")) return cmd_build(opt);
        if (app.got_subcommand("tune")) return cmd_tune(opt);
        if (app.got_subcommand("retrieve")) return cmd_retrieve(opt);
        if (app.got_subcommand("features")) return cmd_features(opt);
        if (app.got_subcommand("entail-train")) return cmd_entail_train(opt);
        if (app.got_subcommand("entail-predict")) return cmd_entail_predict(opt);
        if (app.got_subcommand("answer")) return cmd_answer(opt);
        if (app.got_subcommand("eval")) return cmd_eval(opt);
        if (app.got_subcommand("repl")) return cmd_repl(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
