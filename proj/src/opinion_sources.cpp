#include "revdecide/opinion_sources.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "revdecide/error.hpp"

namespace revdecide {

using nlohmann::json;

const std::filesystem::path* OpinionSource::external_path() const noexcept {
    if (auto* e = std::get_if<External>(&variant_)) {
        return &e->path;
    }
    return nullptr;
}

std::string OpinionSource::describe() const {
    if (auto* p = external_path()) {
        return "external:" + p->string();
    }
    return "gold";
}

namespace {

std::string line_tag(std::size_t line) { return "line " + std::to_string(line); }

LabeledOpinion parse_exchange_object(const json& o, std::size_t line) {
    auto field = [&](const char* key) -> const json& {
        if (!o.contains(key)) {
            fail(ErrorKind::schema, line_tag(line) + ": missing field '" + key + "'");
        }
        return o.at(key);
    };
    LabeledOpinion op;
    try {
        op.expert = ExpertId(field("expert").get<std::string>());
        op.alternative = AlternativeId(field("alternative").get<std::string>());
        const auto& si = field("sentence_index");
        if (!si.is_number_integer() || si.get<long long>() < 0) {
            fail(ErrorKind::schema, line_tag(line) + ": sentence_index must be a non-negative integer");
        }
        op.sentence_index = si.get<std::size_t>();
        const auto& aspect = field("aspect_term");
        if (!aspect.is_null()) {
            op.aspect_term = aspect.get<std::string>();
        }
        op.category_label = field("category").get<std::string>();
        op.polarity = parse_polarity(field("polarity").get<std::string>());
    } catch (const json::exception& e) {
        fail(ErrorKind::schema, line_tag(line) + ": " + e.what());
    } catch (Error& e) {
        if (e.message().rfind("line ", 0) == 0) throw;
        throw Error(e.kind(), line_tag(line) + ": " + e.message());
    }
    return op;
}

} // namespace

std::vector<ExchangeRecord> read_exchange(std::istream& in) {
    std::vector<ExchangeRecord> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json o;
        try {
            o = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(ErrorKind::schema, line_tag(line) + ": not valid JSON (" + e.what() + ")");
        }
        if (!o.is_object()) {
            fail(ErrorKind::schema, line_tag(line) + ": expected a JSON object");
        }
        out.push_back({line, parse_exchange_object(o, line)});
    }
    return out;
}

std::vector<ExchangeRecord> read_exchange_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::io, "cannot open '" + path.string() + "'");
    }
    return read_exchange(in);
}

std::string exchange_line(const Opinion& opinion) {
    nlohmann::ordered_json o;
    o["expert"] = opinion.expert.value;
    o["alternative"] = opinion.alternative.value;
    o["sentence_index"] = opinion.sentence_index;
    o["aspect_term"] = opinion.aspect_term ? json(*opinion.aspect_term) : json(nullptr);
    o["category"] = opinion.category.value;
    o["polarity"] = std::string(to_string(opinion.polarity));
    return o.dump();
}

void write_exchange(std::ostream& out, std::span<const Opinion> opinions) {
    for (const auto& op : opinions) {
        out << exchange_line(op) << '\n';
    }
}

namespace {

OpinionMap empty_map(const Dataset& dataset) {
    OpinionMap map;
    for (const auto& e : dataset.experts) {
        for (const auto& a : dataset.alternatives) {
            map[{e, a.id}];
        }
    }
    return map;
}

void order_by_sentence(OpinionMap& map) {
    for (auto& [key, ops] : map) {
        std::stable_sort(ops.begin(), ops.end(),
                         [](const Opinion& a, const Opinion& b) { return a.sentence_index < b.sentence_index; });
    }
}

} // namespace

OpinionMap group_opinions(const Dataset& dataset, const std::vector<ExchangeRecord>& records,
                          const CategoryMapping& mapping) {
    OpinionMap map = empty_map(dataset);
    std::set<CriterionId> criteria;
    for (const auto& c : dataset.criteria) criteria.insert(c.id);

    for (const auto& rec : records) {
        const auto& raw = rec.opinion;
        ReviewKey key{raw.expert, raw.alternative};
        auto it = map.find(key);
        if (it == map.end()) {
            fail(ErrorKind::reference, line_tag(rec.line) + ": no review " + describe(key) + " in the dataset");
        }
        const Review* review = dataset.find_review(raw.expert, raw.alternative);
        if (!review) {
            fail(ErrorKind::reference, line_tag(rec.line) + ": review " + describe(key) + " is missing from the corpus");
        }
        if (raw.sentence_index >= review->sentence_count()) {
            fail(ErrorKind::reference, line_tag(rec.line) + ": sentence_index " + std::to_string(raw.sentence_index) +
                                           " but review " + describe(key) + " has " +
                                           std::to_string(review->sentence_count()) + " sentences");
        }
        CriterionId category(raw.category_label);
        if (!criteria.count(category)) {
            auto mapped = mapping.find(raw.category_label);
            if (!mapped || !criteria.count(*mapped)) {
                fail(ErrorKind::mapping, line_tag(rec.line) + ": unknown category '" + raw.category_label + "'");
            }
            category = *mapped;
        }
        it->second.push_back({raw.expert, raw.alternative, raw.sentence_index, raw.aspect_term, category, raw.polarity});
    }
    order_by_sentence(map);
    return map;
}

OpinionMap collect_opinions(const Dataset& dataset, const OpinionSource& source, const CategoryMapping& mapping) {
    if (const auto* path = source.external_path()) {
        return group_opinions(dataset, read_exchange_file(*path), mapping);
    }
    if (!dataset.gold_opinions) {
        fail(ErrorKind::validation, "dataset carries no gold opinions");
    }
    OpinionMap map = empty_map(dataset);
    for (const auto& op : *dataset.gold_opinions) {
        map.at({op.expert, op.alternative}).push_back(op);
    }
    order_by_sentence(map);
    return map;
}

std::vector<Opinion> flatten(const Dataset& dataset, const OpinionMap& opinions) {
    std::vector<Opinion> out;
    for (const auto& e : dataset.experts) {
        for (const auto& a : dataset.alternatives) {
            auto it = opinions.find({e, a.id});
            if (it != opinions.end()) {
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
        }
    }
    return out;
}

Counts count_opinions(const OpinionMap& opinions, const std::vector<Criterion>& criteria) {
    Counts counts;
    for (const auto& c : criteria) counts[c.id] = 0;
    for (const auto& [key, ops] : opinions) {
        for (const auto& op : ops) {
            auto it = counts.find(op.category);
            if (it == counts.end()) {
                fail(ErrorKind::mapping, "opinion in " + describe(key) + " has category '" + op.category.value +
                                             "' outside the criteria");
            }
            ++it->second;
        }
    }
    return counts;
}

Counts count_ratings(const std::map<ExpertId, EvalMatrix>& ine, const std::vector<Criterion>& criteria) {
    Counts counts;
    for (const auto& c : criteria) counts[c.id] = 0;
    for (const auto& [expert, m] : ine) {
        for (std::size_t col = 0; col < m.col_count(); ++col) {
            auto it = counts.find(m.cols()[col]);
            if (it == counts.end()) {
                fail(ErrorKind::lookup, "INE of " + expert.value + " has column '" + m.cols()[col].value +
                                            "' outside the criteria");
            }
            it->second += static_cast<long long>(m.present_in_column(col));
        }
    }
    return counts;
}

Counts count_evaluations(const OpinionMap& opinions, const std::map<ExpertId, EvalMatrix>& ine,
                         const std::vector<Criterion>& criteria) {
    Counts total = count_opinions(opinions, criteria);
    for (const auto& [crit, n] : count_ratings(ine, criteria)) {
        total[crit] += n;
    }
    return total;
}

} // namespace revdecide
