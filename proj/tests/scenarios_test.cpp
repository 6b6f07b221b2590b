// Open-set failure scenarios: unseen scripts, borrowed names and shared
// alphabets, contrasted with a dictionary (index-table) vectorizer.
#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "olid/corpusio.hpp"
#include "olid/evalkit.hpp"
#include "olid/ocsvm.hpp"
#include "support/index_table.hpp"
#include "support/toy_corpus.hpp"

using namespace olid;

namespace {

std::vector<Sentence> desk(const std::string& tag, std::size_t n) {
    Corpus c = load_corpus(std::string(OLID_TEST_DATA_DIR) + "/desk/" + tag + ".txt");
    c.sentences.resize(n);
    return c.sentences;
}

class EnglishModels : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        const auto sentences =
            olid::testing::toy_corpus("en", olid::testing::kEnglishWords, 1000, 1).sentences;
        hashed_ = new OneClassModel(train_sentences(sentences, TrainConfig{}).model);
        table_ = new olid::testing::IndexTableModel(sentences, TrainConfig{});
    }
    static void TearDownTestSuite() {
        delete hashed_;
        delete table_;
    }
    static OneClassModel* hashed_;
    static olid::testing::IndexTableModel* table_;
};

OneClassModel* EnglishModels::hashed_ = nullptr;
olid::testing::IndexTableModel* EnglishModels::table_ = nullptr;

// Russian sentence naming two entities that are frequent in the English
// training text.
constexpr std::string_view kBorrowing = "Вчера John Smith прилетел в New York.";

}  // namespace

TEST_F(EnglishModels, NoOverlapUnseenScriptsAreOutliers) {
    const std::string_view probes[] = {
        "यह वाक्य देवनागरी लिपि में लिखा गया है।",
        "Αυτή η πρόταση είναι γραμμένη στα ελληνικά.",
        "这是一个用中文写的句子。",
        "이 문장은 한국어로 쓰여 있습니다.",
        "هذه الجملة مكتوبة باللغة العربية.",
    };
    for (const auto probe : probes) {
        const Prediction p = hashed_->predict(probe);
        EXPECT_EQ(p.label, Label::Outlier) << probe;
        EXPECT_LT(p.score, -0.5 * hashed_->rho()) << probe;
    }
}

TEST_F(EnglishModels, NoOverlapIndexTableSeesNothing) {
    // Every n-gram is missing from the table, so the input vanishes to the
    // zero vector; the hashed model keeps the evidence instead.
    EXPECT_EQ(table_->coverage("这是一个用中文写的句子。"), 0.0);
    EXPECT_FALSE(hashed_->featurize(normalize("这是一个用中文写的句子。")).empty());
}

TEST_F(EnglishModels, LexicalBorrowingHashedIsOutlier) {
    const Prediction p = hashed_->predict(kBorrowing);
    EXPECT_EQ(p.label, Label::Outlier);
    EXPECT_NEAR(p.score, -0.027812693, 1e-8);
}

TEST_F(EnglishModels, LexicalBorrowingIndexTableFails) {
    // Only the English names survive the table lookup, so the sentence looks
    // English to the dictionary model.
    EXPECT_NEAR(table_->coverage(kBorrowing), 8.0 / 17.0, 1e-12);
    const double score = table_->decision(kBorrowing);
    EXPECT_GT(score, 0.0);
    EXPECT_NEAR(score, 0.003653740, 1e-8);
}

TEST(WritingSystemOverlap, FrenchEnglishPrecision) {
    std::vector<Corpus> corpora;
    corpora.push_back({"en", desk("en", 500)});
    corpora.push_back({"fr", desk("fr", 500)});
    const EvalReport r = run_protocol(corpora, TrainConfig{}, 0);
    for (const auto& [tag, lr] : r.per_language) {
        EXPECT_GE(lr.metrics.precision, 0.9) << tag;
    }
    EXPECT_EQ(r.per_language.at("en").counts, (ConfusionCounts{32, 0, 500, 18}));
    EXPECT_EQ(r.per_language.at("fr").counts, (ConfusionCounts{32, 0, 500, 18}));
}
