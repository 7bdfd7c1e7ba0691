#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "revdecide/error.hpp"
#include "revdecide/opinion_sources.hpp"
#include "support.hpp"

using namespace revdecide;
using namespace testsupport;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

std::size_t total(const OpinionMap& m) {
    std::size_t n = 0;
    for (const auto& [k, ops] : m) n += ops.size();
    return n;
}

} // namespace

TEST_CASE("gold opinions of one review") {
    auto ds = load_dataset(corpus_path());
    auto gold = collect_opinions(ds, OpinionSource::gold());
    CHECK(gold.size() == 24);
    const auto& ops = gold.at({expert("e1"), alt("x4")});
    REQUIRE(ops.size() == 4);
    CHECK(ops[0].aspect_term == std::nullopt);
    CHECK(ops[0].category == crit("restaurant"));
    CHECK(ops[1].aspect_term == std::nullopt);
    CHECK(ops[1].category == crit("restaurant"));
    CHECK(ops[2].aspect_term == "atmosphere");
    CHECK(ops[2].category == crit("ambience"));
    CHECK(ops[3].aspect_term == "food");
    CHECK(ops[3].category == crit("food"));
    for (const auto& op : ops) CHECK(op.polarity == Polarity::positive);

    CHECK(collect_opinions(ds, OpinionSource::gold()) == gold);
}

TEST_CASE("empty exchange file") {
    auto ds = load_dataset(corpus_path());
    TempFile f("revdecide_empty.jsonl", "");
    auto m = collect_opinions(ds, OpinionSource::external(f.path));
    CHECK(m.size() == 24);
    CHECK(total(m) == 0);
}

TEST_CASE("gold annotations survive the exchange format") {
    auto ds = load_dataset(corpus_path());
    auto gold = collect_opinions(ds, OpinionSource::gold());
    auto flat = flatten(ds, gold);
    std::ostringstream out;
    write_exchange(out, flat);
    TempFile f("revdecide_gold.jsonl", out.str());
    auto back = collect_opinions(ds, OpinionSource::external(f.path));
    CHECK(back == gold);
    CHECK(flatten(ds, back) == flat);
}

TEST_CASE("exchange line field order") {
    Opinion op{expert("e1"), alt("x2"), 3, std::nullopt, crit("food"), Polarity::negative};
    CHECK(exchange_line(op) ==
          R"({"expert":"e1","alternative":"x2","sentence_index":3,"aspect_term":null,"category":"food","polarity":"negative"})");
}

TEST_CASE("exchange errors carry line numbers") {
    auto ds = load_dataset(corpus_path());
    auto kind_at = [&](const std::string& text) {
        std::istringstream in(text);
        try {
            group_opinions(ds, read_exchange(in), CategoryMapping::semeval_restaurants());
        } catch (const Error& e) {
            CHECK(e.message().find("line 2") != std::string::npos);
            return e.kind();
        }
        FAIL("expected an error");
        return ErrorKind::validation;
    };
    const std::string ok =
        R"({"expert":"e1","alternative":"x1","sentence_index":0,"aspect_term":null,"category":"restaurant","polarity":"positive"})";
    CHECK(kind_at(ok + "\n" +
                  R"({"expert":"e7","alternative":"x1","sentence_index":0,"aspect_term":null,"category":"food","polarity":"positive"})") ==
          ErrorKind::reference);
    CHECK(kind_at(ok + "\n" +
                  R"({"expert":"e1","alternative":"x1","sentence_index":99,"aspect_term":null,"category":"food","polarity":"positive"})") ==
          ErrorKind::reference);
    CHECK(kind_at(ok + "\n" +
                  R"({"expert":"e1","alternative":"x1","sentence_index":0,"aspect_term":null,"category":"parking","polarity":"positive"})") ==
          ErrorKind::mapping);
    CHECK(kind_at(ok + "\n{\"expert\": \"e1\"") == ErrorKind::schema);
    CHECK(kind_at(ok + "\n" + R"({"expert":"e1","alternative":"x1","sentence_index":0,"category":"food","polarity":"positive"})") ==
          ErrorKind::schema);
    CHECK(kind_at(ok + "\n" +
                  R"({"expert":"e1","alternative":"x1","sentence_index":-1,"aspect_term":null,"category":"food","polarity":"positive"})") ==
          ErrorKind::schema);
}

TEST_CASE("external labels go through the mapping, duplicates are kept") {
    auto ds = load_dataset(corpus_path());
    std::istringstream in(
        R"({"expert":"e2","alternative":"x3","sentence_index":1,"aspect_term":"wine","category":"DRINKS#QUALITY","polarity":"conflict"})"
        "\n\n"
        R"({"expert":"e2","alternative":"x3","sentence_index":0,"aspect_term":null,"category":"restaurant","polarity":"positive"})"
        "\n"
        R"({"expert":"e2","alternative":"x3","sentence_index":0,"aspect_term":null,"category":"restaurant","polarity":"positive"})"
        "\n");
    auto m = group_opinions(ds, read_exchange(in), CategoryMapping::semeval_restaurants());
    const auto& ops = m.at({expert("e2"), alt("x3")});
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].sentence_index == 0);
    CHECK(ops[1] == ops[0]);
    CHECK(ops[2].category == crit("drinks"));
    CHECK(ops[2].polarity == Polarity::neutral);
}

TEST_CASE("gold source without gold data") {
    auto ds = load_dataset(corpus_path());
    ds.gold_opinions.reset();
    CHECK_THROWS_AS(collect_opinions(ds, OpinionSource::gold()), Error);
}

TEST_CASE("evaluation counts") {
    auto ds = load_dataset(corpus_path());
    auto ine = build_ine(ds);
    auto predicted = collect_opinions(ds, OpinionSource::external(predicted_path()));
    const auto& crits = ds.criteria;
    auto as_vec = [&](const Counts& c) {
        std::vector<long long> v;
        for (const auto& k : crits) v.push_back(c.at(k.id));
        return v;
    };
    auto combined = count_evaluations(predicted, ine, crits);
    auto text = count_opinions(predicted, crits);
    auto numeric = count_ratings(ine, crits);
    CHECK(as_vec(combined) == std::vector<long long>{83, 105, 34, 8, 30, 11});
    CHECK(as_vec(text) == std::vector<long long>{59, 90, 19, 8, 30, 11});
    CHECK(as_vec(numeric) == std::vector<long long>{24, 15, 15, 0, 0, 0});
    for (const auto& c : crits) CHECK(combined.at(c.id) == text.at(c.id) + numeric.at(c.id));

    auto gold = collect_opinions(ds, OpinionSource::gold());
    auto gold_combined = count_evaluations(gold, ine, crits);
    for (const auto& c : crits) {
        CHECK(gold_combined.at(c.id) == count_opinions(gold, crits).at(c.id) + numeric.at(c.id));
    }
}

TEST_CASE("opinion source description") {
    CHECK(OpinionSource::gold().is_gold());
    CHECK(OpinionSource::gold().external_path() == nullptr);
    auto ext = OpinionSource::external("preds.jsonl");
    CHECK_FALSE(ext.is_gold());
    CHECK(ext.describe() == "external:preds.jsonl");
}
