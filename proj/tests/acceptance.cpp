// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lqa/boost.hpp"
#include "lqa/corpus.hpp"
#include "lqa/entail.hpp"
#include "lqa/eval.hpp"
#include "lqa/ranker.hpp"
#include "lqa/textpipe.hpp"
#include "lqa/tuner.hpp"

namespace fs = std::filesystem;
using namespace lqa;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << ": " << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

std::string data_dir() { return LQA_DATA_DIR; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Corpus fixture_corpus() {
    return parse_statutes(slurp(data_dir() + "/statutes_fixture.txt"));
}

// ---- criterion 1: scoring matches a naive from-scratch reimplementation ----

void check_scoring_oracle() {
    Corpus corpus = fixture_corpus();
    std::vector<TrainingPair> pairs = load_pairs(data_dir() + "/pairs_fixture.jsonl", corpus,
                                                 nullptr);
    RankerParams params;  // k = 3 and the published interpolation weights
    PipeTables tables = PipeTables::builtin();
    NGramModel model = build_model(corpus, params, &pairs, tables);

    // Naive recomputation of everything: base sets, df, expansion, idf, score.
    std::map<std::string, NGramSet> naive_base, naive_sets;
    for (const auto& [id, art] : corpus.articles)
        naive_base[id] = process(art.full_text(), params.k, tables);
    std::map<std::string, int> naive_df;
    for (const auto& [id, set] : naive_base)
        for (const auto& g : set) ++naive_df[g];
    naive_sets = naive_base;
    for (const auto& [id, art] : corpus.articles)
        for (const auto& ref : art.refs)
            if (naive_base.count(ref))
                for (const auto& g : naive_base[ref]) naive_sets[id].insert(g);
    for (const auto& p : pairs) {
        NGramSet q = process(p.question, params.k, tables);
        for (const auto& rel : p.relevant)
            if (naive_sets.count(rel))
                for (const auto& g : q) naive_sets[rel].insert(g);
    }
    const double n_articles = static_cast<double>(corpus.articles.size());
    auto naive_idf = [&](const std::string& t) {
        auto it = naive_df.find(t);
        return std::log(n_articles / (it == naive_df.end() ? 1 : it->second));
    };
    auto naive_score = [&](const NGramSet& q, const std::string& id) {
        const NGramSet& a = naive_sets.at(id);
        double sum = 0.0;
        bool any = false;
        for (const auto& t : q)
            if (a.count(t)) {
                sum += naive_idf(t);
                any = true;
            }
        if (q.empty() || !any) return 0.0;
        return sum / (params.i_q * static_cast<double>(q.size()) +
                      params.i_art * static_cast<double>(a.size()));
    };

    bool ok = true;
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& p : pairs) {
        NGramSet q = process(p.question, params.k, tables);
        std::vector<std::pair<std::string, double>> naive_ranked;
        for (const auto& [id, _] : corpus.articles) {
            double lib = score(model, params, q, id);
            double naive = naive_score(q, id);
            if (lib != naive) {  // exact, zero tolerance
                ok = false;
                detail = "score mismatch on article " + id;
            }
            naive_ranked.push_back({id, naive});
        }
        std::stable_sort(naive_ranked.begin(), naive_ranked.end(),
                         [](const auto& a, const auto& b) {
                             if (a.second != b.second) return a.second > b.second;
                             return ArticleIdLess{}(a.first, b.first);
                         });
        RankedList ranked = rank_set(model, params, q, corpus.articles.size());
        for (size_t i = 0; i < ranked.size(); ++i)
            if (ranked[i].id != naive_ranked[i].first || ranked[i].score != naive_ranked[i].second) {
                ok = false;
                detail = "rank mismatch at position " + std::to_string(i);
            }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms >= 1000) {
        ok = false;
        detail = "took " + std::to_string(ms) + " ms";
    }
    report("relevance score and ranking match a naive reimplementation exactly", ok, detail);
}

// ---- criterion 2: metric formulas reproduce the published arithmetic ----

void check_metric_formulas() {
    EvalMetrics a = metrics({73272, 129000, 142000, 0, 0});   // P=0.568, R=0.516
    EvalMetrics b = metrics({381294, 614000, 621000, 0, 0});  // P=0.621, R=0.614
    bool ok = std::fabs(a.precision - 0.568) < 1e-12 && std::fabs(a.recall - 0.516) < 1e-12 &&
              std::fabs(a.f_measure - 0.5407) < 1e-3 && std::fabs(b.f_measure - 0.6175) < 1e-3;
    report("metric formulas reproduce F=0.5407 and F=0.6175 within 1e-3", ok);
}

// ---- criterion 3: boosting round arithmetic ----

void check_boosting() {
    auto inst = [](double x, Answer label) {
        FeatureVector f{};
        f[0] = x;
        return Instance{f, label};
    };
    // best stump errs on exactly 3 of 10 uniform points => epsilon = 0.3
    std::vector<Instance> noisy;
    std::string labels = "YYYNNNNYYY";
    for (int i = 0; i < 10; ++i)
        noisy.push_back(inst(i, labels[static_cast<size_t>(i)] == 'Y' ? Answer::yes : Answer::no));
    std::vector<double> sums;
    BoostModel model = train_boost(noisy, BoostConfig{10, 1, 100}, &sums);
    bool ok = !model.rounds.empty() && std::fabs(model.rounds[0].second - 0.4236) < 1e-4;
    std::string detail = ok ? "" : "first-round vote weight off";
    for (double s : sums)
        if (std::fabs(s - 1.0) > 1e-9) {
            ok = false;
            detail = "weight sum drifted to " + std::to_string(s);
        }

    std::vector<Instance> separable;
    for (int i = 0; i < 8; ++i) separable.push_back(inst(i, i < 4 ? Answer::no : Answer::yes));
    BoostModel sep = train_boost(separable, BoostConfig{10, 1, 100});
    int errors = 0;
    for (const auto& d : separable)
        if (predict(sep, d.features).first != d.label) ++errors;
    if (sep.rounds.size() > 10 || errors != 0) {
        ok = false;
        detail = "separable fixture not fit in <= 10 rounds";
    }
    report("boosting: epsilon=0.3 gives vote weight 0.4236, weights renormalize, "
           "separable data fits in <= 10 rounds",
           ok, detail);
}

// ---- criterion 4: edit-distance oracles ----

size_t lev_oracle(const std::string& a, const std::string& b) {
    std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t best = std::min(d[i - 1][j], d[i][j - 1]) + 1;
            size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min(best, sub);
        }
    return d[a.size()][b.size()];
}

size_t osa_oracle(const std::string& a, const std::string& b) {
    std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t best = std::min(d[i - 1][j], d[i][j - 1]) + 1;
            best = std::min(best, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1));
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                best = std::min(best, d[i - 2][j - 2] + 1);
            d[i][j] = best;
        }
    return d[a.size()][b.size()];
}

void check_edit_distances() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> strings{""};
    {
        std::vector<std::string> frontier{""};
        for (int len = 1; len <= 6; ++len) {
            std::vector<std::string> next;
            for (const auto& s : frontier)
                for (char c : {'a', 'b', 'c'}) next.push_back(s + c);
            strings.insert(strings.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    bool ok = true;
    std::string detail;
    for (const auto& a : strings) {
        for (const auto& b : strings) {
            if (strmetric::levenshtein(a, b) != lev_oracle(a, b) ||
                strmetric::damerau_levenshtein(a, b) != osa_oracle(a, b)) {
                ok = false;
                detail = "mismatch on \"" + a + "\" vs \"" + b + "\"";
            }
        }
        if (!ok) break;
    }

    std::mt19937 rng(123);
    std::uniform_int_distribution<int> len(0, 20);
    std::uniform_int_distribution<int> ch(0, 5);
    for (int t = 0; t < 10000 && ok; ++t) {
        std::string a, b;
        int na = len(rng), nb = len(rng);
        for (int i = 0; i < na; ++i) a += static_cast<char>('a' + ch(rng));
        for (int i = 0; i < nb; ++i) b += static_cast<char>('a' + ch(rng));
        if (strmetric::damerau_levenshtein(a, b) > strmetric::levenshtein(a, b)) {
            ok = false;
            detail = "damerau exceeded levenshtein";
        }
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (secs >= 30) {
        ok = false;
        detail = "took " + std::to_string(secs) + " s";
    }
    report("edit distances agree with DP oracles exhaustively (length <= 6, {a,b,c}) "
           "and damerau <= levenshtein on 10k random pairs in < 30 s",
           ok, detail);
}

// ---- criterion 5: strict-greater filter boundaries ----

void check_filter_boundaries() {
    NGramModel model;
    model.links["A"] = {"B"};
    model.links["B"] = {};
    RankerParams p;  // ct = 0.32, rt = 0.2

    auto ids = [&](const RankedList& ranked) { return filter(ranked, model, p); };
    bool ok = true;
    // top score exactly at the confidence threshold: no augmentation
    if (ids({{"A", 0.32}, {"B", 0.9}}) != std::vector<std::string>{"A"}) ok = false;
    // just above it: referenced articles become eligible
    if (ids({{"A", 0.320001}, {"B", 0.9}}) != std::vector<std::string>{"A", "B"}) ok = false;
    // reference exactly at its threshold: excluded
    if (ids({{"A", 0.320001}, {"B", 0.2}}) != std::vector<std::string>{"A"}) ok = false;
    // just above: included
    if (ids({{"A", 0.320001}, {"B", 0.200001}}) != std::vector<std::string>{"A", "B"}) ok = false;
    report("filter uses strictly-greater comparisons at thresholds 0.32 and 0.2", ok);
}

// ---- criterion 6: tuner versus a grid-search oracle ----

void check_tuner() {
    auto objective = [](const RankerParams& p) {
        return 1.0 - std::fabs(p.confidence_thresh - 0.30);
    };
    double best_ct = 0.0, best_f = -1.0;
    for (int i = 0; i <= 100; ++i) {
        RankerParams p = tuning_start();
        p.confidence_thresh = i / 100.0;
        if (objective(p) > best_f) {
            best_f = objective(p);
            best_ct = p.confidence_thresh;
        }
    }
    auto [tuned, trace] = tune(objective, tuning_start(), 500);
    bool ok = std::fabs(tuned.confidence_thresh - best_ct) <= 0.01 + 1e-12;
    double prev = -1.0;
    for (const auto& step : trace.steps) {
        if (step.f_measure < prev) ok = false;
        prev = step.f_measure;
    }
    int calls = 0;
    auto counting = [&](const RankerParams& p) {
        ++calls;
        return objective(p);
    };
    auto [t2, tr2] = tune(counting, tuning_start(), 7);
    if (calls > 7 || tr2.evaluations > 7) ok = false;
    report("tuner matches the 0.01-grid oracle within 0.01 with a non-decreasing "
           "accepted-step trace and respects the budget",
           ok);
}

// ---- criterion 7: leave-one-out hygiene ----

void check_loo_hygiene() {
    Corpus corpus = fixture_corpus();
    std::vector<TrainingPair> pairs = load_pairs(data_dir() + "/pairs_fixture.jsonl", corpus,
                                                 nullptr);
    for (size_t i = 0; i < pairs.size(); ++i)
        pairs[i].question += " zzzcanary" + std::to_string(i) + "q";

    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 3 && ok; ++k) {
        TokenCache cache(corpus, pairs, PipeTables::builtin());
        RetrievalFolds folds(corpus, pairs, k, cache);
        for (size_t i = 0; i < pairs.size(); ++i) {
            std::string canary = "zzzcanary" + std::to_string(i) + "q";
            bool planted = false;
            for (const auto& rel : pairs[i].relevant)
                for (const auto& g : folds.full_model().per_article.at(rel))
                    if (g.find(canary) != std::string::npos) planted = true;
            if (!planted) {
                ok = false;
                detail = "canary missing from the full model";
            }
            for (const auto& [id, _] : folds.full_model().per_article)
                for (const auto& g : folds.fold_article_set(i, id))
                    if (g.find(canary) != std::string::npos) {
                        ok = false;
                        detail = "fold " + std::to_string(i) + " leaked into article " + id;
                    }
        }
    }
    report("a held-out question's canary n-gram never appears in its own fold's "
           "article sets (all folds, k = 1..3)",
           ok, detail);
}

// ---- criterion 8: end-to-end determinism through the CLI ----

void check_cli_determinism() {
    const std::string cli = LQA_CLI_PATH;
    fs::path tmp = fs::temp_directory_path() / "lqa_acceptance";
    fs::create_directories(tmp);
    const std::string statutes = data_dir() + "/statutes_fixture.txt";
    const std::string pairs = data_dir() + "/pairs_fixture.jsonl";

    bool ok = true;
    std::string detail;
    auto run = [&](const std::string& cmd) {
        int rc = std::system(cmd.c_str());
        if (rc != 0) {
            ok = false;
            detail = "command failed: " + cmd;
        }
    };
    for (int r = 1; r <= 2 && ok; ++r) {
        std::string tag = (tmp / ("r" + std::to_string(r))).string();
        run(cli + " build --statutes " + statutes + " --pairs " + pairs + " --model " + tag +
            "_model.json > /dev/null 2>/dev/null");
        run(cli + " tune --statutes " + statutes + " --pairs " + pairs +
            " --budget 50 --params " + tag + "_params.json > " + tag +
            "_tune.out 2>/dev/null");
        run(cli + " eval --statutes " + statutes + " --pairs " + pairs + " --params " + tag +
            "_params.json --task retrieval --format json > " + tag + "_eval.json 2>/dev/null");
    }
    if (ok) {
        std::string r1 = (tmp / "r1").string(), r2 = (tmp / "r2").string();
        for (const std::string& suffix : {"_model.json", "_params.json", "_eval.json"}) {
            std::string a = slurp(r1 + suffix), b = slurp(r2 + suffix);
            if (a.empty() || a != b) {
                ok = false;
                detail = "outputs differ for " + suffix;
            }
        }
    }
    report("two build -> tune(--budget 50) -> eval runs produce byte-identical JSON", ok,
           detail);
}

}  // namespace

int main() {
    check_scoring_oracle();
    check_metric_formulas();
    check_boosting();
    check_edit_distances();
    check_filter_boundaries();
    check_tuner();
    check_loo_hygiene();
    check_cli_determinism();
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
