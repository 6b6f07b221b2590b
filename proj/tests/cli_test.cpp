#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "support/toy_corpus.hpp"

namespace fs = std::filesystem;
namespace ot = olid::testing;

namespace {

struct CliResult {
    int status = -1;
    std::string output;
};

// Runs the CLI through the shell with stderr folded into the output.
CliResult run(const std::string& args) {
    const std::string command = std::string(OLID_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        r.output.append(buf.data(), n);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

void write_corpus(const fs::path& path, const olid::Corpus& c) {
    std::ofstream out(path, std::ios::binary);
    for (const auto& s : c.sentences) {
        out << s.text() << '\n';
    }
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("olid_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_ / "corpora");
        write_corpus(dir_ / "corpora" / "en.txt", ot::toy_corpus("en", ot::kEnglishWords, 200, 1));
        write_corpus(dir_ / "corpora" / "ru.txt", ot::toy_corpus("ru", ot::kRussianWords, 200, 2));
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, TrainWritesModelAndSummary) {
    const CliResult r = run("train --input " + path("corpora/en.txt") + " --model " + path("en.olid"));
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(fs::exists(path("en.olid")));
    EXPECT_NE(r.output.find("n_train       200"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("sv_count"), std::string::npos);
    EXPECT_NE(r.output.find("outlier_frac"), std::string::npos);
    EXPECT_NE(r.output.find("converged     yes"), std::string::npos);
}

TEST_F(Cli, TrainMissingInputNamesPath) {
    const CliResult r = run("train --input " + path("nope.txt") + " --model " + path("m.olid"));
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.output.find("nope.txt"), std::string::npos) << r.output;
}

TEST_F(Cli, NuOutOfRangeIsUsageError) {
    const CliResult r = run("train --input " + path("corpora/en.txt") + " --model " + path("m.olid") + " --nu 1.5");
    EXPECT_EQ(r.status, 2);
    EXPECT_FALSE(fs::exists(path("m.olid")));
    EXPECT_EQ(run("train --input " + path("corpora/en.txt") + " --model " + path("m.olid") + " --nu 0").status, 2);
}

TEST_F(Cli, UnknownFlagAndMissingSubcommand) {
    EXPECT_EQ(run("train --input x --model y --bogus 1").status, 2);
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}

TEST_F(Cli, PredictLabelsLines) {
    ASSERT_EQ(run("train --input " + path("corpora/en.txt") + " --model " + path("en.olid")).status, 0);
    {
        std::ofstream in(path("probe.txt"));
        in << "the garden was green and we walked to school every morning with our friends.\n"
           << "\n"
           << "мы шли в школу каждое утро с нашими друзьями.\n";
    }
    const CliResult r = run("predict --model " + path("en.olid") + " --input " + path("probe.txt"));
    ASSERT_EQ(r.status, 0) << r.output;
    std::istringstream lines(r.output);
    std::string first;
    std::string second;
    std::string extra;
    std::getline(lines, first);
    std::getline(lines, second);
    EXPECT_FALSE(std::getline(lines, extra)) << "empty line must be skipped";
    EXPECT_EQ(first.rfind("in\t", 0), 0u) << first;
    EXPECT_GT(std::stod(first.substr(3)), 0.0);
    EXPECT_NE(first.find("\tthe garden was green"), std::string::npos);
    EXPECT_EQ(second.rfind("out\t-", 0), 0u) << second;
}

TEST_F(Cli, PredictFromStdin) {
    ASSERT_EQ(run("train --input " + path("corpora/ru.txt") + " --model " + path("ru.olid")).status, 0);
    const CliResult r = run("predict --model " + path("ru.olid") + " < " + path("corpora/ru.txt"));
    ASSERT_EQ(r.status, 0);
    std::size_t lines = 0;
    std::size_t in = 0;
    std::istringstream s(r.output);
    for (std::string line; std::getline(s, line); ++lines) {
        in += line.rfind("in\t", 0) == 0;
    }
    EXPECT_EQ(lines, 200u);
    EXPECT_GE(in, 150u);
}

TEST_F(Cli, UnreadableModelIsInputError) {
    EXPECT_EQ(run("predict --model " + path("missing.olid") + " --input " + path("corpora/en.txt")).status, 2);
    {
        std::ofstream junk(path("junk.olid"));
        junk << "definitely not a model";
    }
    EXPECT_EQ(run("predict --model " + path("junk.olid") + " --input " + path("corpora/en.txt")).status, 2);
}

TEST_F(Cli, EvalPrintsTableAndReport) {
    const CliResult r = run("eval --corpus-dir " + path("corpora") + " --out " + path("report.txt"));
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("Language"), std::string::npos);
    EXPECT_NE(r.output.find("\nen "), std::string::npos);
    EXPECT_NE(r.output.find("\nru "), std::string::npos);
    EXPECT_NE(r.output.find("\nAverage "), std::string::npos);
    std::ifstream report(path("report.txt"));
    const std::string text((std::istreambuf_iterator<char>(report)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("language=en "), std::string::npos);
    EXPECT_NE(text.find("language=ru "), std::string::npos);
    EXPECT_NE(text.find("\nmacro p="), std::string::npos);
}

TEST_F(Cli, EvalMacroMatchesTable) {
    const CliResult r = run("eval --corpus-dir " + path("corpora") + " --out " + path("report.txt") + " --seed 5");
    ASSERT_EQ(r.status, 0);
    std::ifstream report(path("report.txt"));
    std::string line;
    double f1 = -1.0;
    while (std::getline(report, line)) {
        if (line.rfind("macro ", 0) == 0) {
            f1 = std::stod(line.substr(line.find("f1=") + 3));
        }
    }
    ASSERT_GE(f1, 0.0);
    const std::string avg = r.output.substr(r.output.find("\nAverage"));
    char expected[16];
    std::snprintf(expected, sizeof expected, "%.3f\n", f1);
    EXPECT_NE(avg.find(expected), std::string::npos) << avg << " vs " << expected;
}

TEST_F(Cli, EvalEmptyDirIsInputError) {
    fs::create_directories(dir_ / "empty");
    EXPECT_EQ(run("eval --corpus-dir " + path("empty") + " --out " + path("r.txt")).status, 2);
    EXPECT_EQ(run("eval --corpus-dir " + path("missing") + " --out " + path("r.txt")).status, 2);
}

TEST_F(Cli, InvalidEncodingIsInputError) {
    {
        std::ofstream bad(path("bad.txt"), std::ios::binary);
        bad << "fine line\nbroken \xFF line\n";
    }
    const CliResult r = run("train --input " + path("bad.txt") + " --model " + path("m.olid"));
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.output.find('2'), std::string::npos) << r.output;
}
