#include "revdecide/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "revdecide/error.hpp"

namespace revdecide {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF. Blank lines
// are skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    auto push_field = [&] {
        row.push_back(was_quoted ? field : trim(field));
        field.clear();
        was_quoted = false;
    };
    auto push_row = [&] {
        push_field();
        bool blank = std::all_of(row.begin(), row.end(), [](const std::string& f) { return f.empty(); });
        if (!blank) {
            rows.push_back(std::move(row));
        }
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch != '"') {
                field += ch;
            } else if (i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else {
                in_quotes = false;
            }
        } else if (ch == '"' && !was_quoted && trim(field).empty()) {
            in_quotes = true;
            was_quoted = true;
            field.clear();
        } else if (ch == ',') {
            push_field();
        } else if (ch == '\n') {
            push_row();
        } else if (!was_quoted) {
            field += ch;
        }
    }
    if (in_quotes) {
        fail(ErrorKind::schema, "unterminated quoted field in CSV");
    }
    if (!field.empty() || !row.empty() || was_quoted) {
        push_row();
    }
    return rows;
}

double parse_number(const std::string& token, const std::string& where) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        fail(ErrorKind::schema, "malformed number '" + token + "' at " + where);
    }
    return value;
}

long long parse_integer(const std::string& token, const std::string& where) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        fail(ErrorKind::schema, "malformed integer '" + token + "' at " + where);
    }
    return value;
}

const Criterion* find_criterion(const std::vector<Criterion>& known, std::string_view id) {
    auto it = std::find_if(known.begin(), known.end(), [&](const Criterion& c) { return c.id.value == id; });
    return it == known.end() ? nullptr : &*it;
}

const std::vector<std::string>& header_of(const std::vector<std::vector<std::string>>& rows, const char* what) {
    if (rows.empty()) {
        fail(ErrorKind::schema, std::string(what) + " CSV is empty");
    }
    return rows.front();
}

std::vector<std::pair<std::string, std::string>> two_column_table(std::string_view text, const char* what) {
    auto rows = parse_csv(text);
    header_of(rows, what);
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2) {
            fail(ErrorKind::schema, std::string(what) + " CSV row " + std::to_string(r + 1) + " must have 2 fields");
        }
        out.emplace_back(rows[r][0], rows[r][1]);
    }
    return out;
}

// Natural order so e2 sorts before e10.
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i;
            std::size_t j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            auto na = a.substr(i, i2 - i);
            auto nb = b.substr(j, j2 - j);
            na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
            nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

// --- corpus JSON -----------------------------------------------------------

std::pair<std::string, std::string> id_and_name(const json& item, const char* what) {
    if (item.is_string()) {
        auto id = item.get<std::string>();
        return {id, id};
    }
    if (item.is_object() && item.contains("id") && item.at("id").is_string()) {
        auto id = item.at("id").get<std::string>();
        auto name = item.value("name", id);
        return {id, name};
    }
    fail(ErrorKind::schema, std::string(what) + " entries must be strings or objects with an 'id'");
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(ErrorKind::schema, where + " is missing '" + key + "'");
    }
    return obj.at(key);
}

Review parse_review(const json& r, std::size_t index) {
    const std::string where = "review #" + std::to_string(index);
    Review review;
    review.expert = ExpertId(require(r, "expert", where).get<std::string>());
    review.alternative = AlternativeId(require(r, "alternative", where).get<std::string>());
    review.title = r.value("title", std::string{});
    review.sentences.push_back(review.title);
    if (r.contains("sentences")) {
        std::string joined;
        for (const auto& s : r.at("sentences")) {
            auto sentence = s.get<std::string>();
            joined += (joined.empty() ? "" : " ") + sentence;
            review.sentences.push_back(std::move(sentence));
        }
        review.body = r.value("body", joined);
    } else {
        review.body = r.value("body", std::string{});
        for (auto& s : split_sentences(review.body)) {
            review.sentences.push_back(std::move(s));
        }
    }
    if (r.contains("ratings") && !r.at("ratings").is_null()) {
        const auto& ratings = r.at("ratings");
        if (!ratings.is_object()) {
            fail(ErrorKind::schema, where + " ratings must be an object");
        }
        for (const auto& [crit, level] : ratings.items()) {
            if (level.is_null()) {
                review.ratings[CriterionId(crit)] = std::nullopt;
            } else if (level.is_number_integer()) {
                review.ratings[CriterionId(crit)] = level.get<int>();
            } else {
                fail(ErrorKind::range, "rating for '" + crit + "' in review " +
                                           describe({review.expert, review.alternative}) + " is not an integer level");
            }
        }
    }
    return review;
}

Opinion parse_gold_opinion(const json& o, std::size_t index) {
    const std::string where = "gold opinion #" + std::to_string(index);
    Opinion op;
    op.expert = ExpertId(require(o, "expert", where).get<std::string>());
    op.alternative = AlternativeId(require(o, "alternative", where).get<std::string>());
    const auto& si = require(o, "sentence_index", where);
    if (!si.is_number_integer() || si.get<long long>() < 0) {
        fail(ErrorKind::schema, where + " sentence_index must be a non-negative integer");
    }
    op.sentence_index = si.get<std::size_t>();
    if (o.contains("aspect_term") && !o.at("aspect_term").is_null()) {
        op.aspect_term = o.at("aspect_term").get<std::string>();
    }
    op.category = CriterionId(require(o, "category", where).get<std::string>());
    op.polarity = parse_polarity(require(o, "polarity", where).get<std::string>());
    return op;
}

} // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    auto is_end = [](char ch) { return ch == '.' || ch == '!' || ch == '?'; };
    auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    for (std::size_t i = 0; i < text.size(); ++i) {
        current += text[i];
        if (is_end(text[i]) && (i + 1 == text.size() || is_space(text[i + 1]))) {
            auto s = trim(current);
            if (!s.empty()) {
                out.push_back(std::move(s));
            }
            current.clear();
        }
    }
    auto tail = trim(current);
    if (!tail.empty()) {
        out.push_back(std::move(tail));
    }
    return out;
}

std::vector<AlternativeId> Dataset::alternative_ids() const {
    std::vector<AlternativeId> ids;
    for (const auto& a : alternatives) {
        ids.push_back(a.id);
    }
    return ids;
}

std::vector<CriterionId> Dataset::criterion_ids() const { return revdecide::criterion_ids(criteria); }

const Review* Dataset::find_review(const ExpertId& expert, const AlternativeId& alt) const {
    auto it = std::find_if(reviews.begin(), reviews.end(),
                           [&](const Review& r) { return r.expert == expert && r.alternative == alt; });
    return it == reviews.end() ? nullptr : &*it;
}

void validate_dataset(Dataset& dataset, ValidationMode mode) {
    dataset.warnings.clear();
    std::set<ExpertId> experts;
    for (const auto& e : dataset.experts) {
        if (!experts.insert(e).second) fail(ErrorKind::duplication, "duplicate expert '" + e.value + "'");
    }
    std::set<AlternativeId> alternatives;
    for (const auto& a : dataset.alternatives) {
        if (!alternatives.insert(a.id).second) fail(ErrorKind::duplication, "duplicate alternative '" + a.id.value + "'");
    }
    std::set<CriterionId> criteria;
    for (const auto& c : dataset.criteria) {
        if (!criteria.insert(c.id).second) fail(ErrorKind::duplication, "duplicate criterion '" + c.id.value + "'");
    }
    if (experts.empty() || alternatives.empty() || criteria.empty()) {
        fail(ErrorKind::validation, "dataset needs at least one expert, alternative and criterion");
    }

    std::map<ReviewKey, std::size_t> sentence_counts;
    for (const auto& r : dataset.reviews) {
        ReviewKey key{r.expert, r.alternative};
        if (!experts.count(r.expert)) fail(ErrorKind::reference, "review " + describe(key) + " names an unknown expert");
        if (!alternatives.count(r.alternative))
            fail(ErrorKind::reference, "review " + describe(key) + " names an unknown alternative");
        if (!sentence_counts.emplace(key, r.sentence_count()).second) {
            fail(ErrorKind::duplication, "more than one review for " + describe(key));
        }
        for (const auto& [crit, level] : r.ratings) {
            if (!criteria.count(crit)) {
                fail(ErrorKind::schema, "review " + describe(key) + " rates unknown criterion '" + crit.value + "'");
            }
            if (level) {
                (void)dataset.scale.level_to_value(*level, describe(key));
            }
        }
    }

    std::vector<std::string> missing;
    for (const auto& e : dataset.experts) {
        for (const auto& a : dataset.alternatives) {
            if (!sentence_counts.count({e, a.id})) missing.push_back(describe({e, a.id}));
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        if (mode == ValidationMode::complete) {
            fail(ErrorKind::completeness, "missing reviews for " + list);
        }
        dataset.warnings.push_back("missing reviews read as all-NA: " + list);
    }

    if (dataset.gold_opinions) {
        std::size_t n = 0;
        for (const auto& op : *dataset.gold_opinions) {
            ReviewKey key{op.expert, op.alternative};
            auto it = sentence_counts.find(key);
            if (it == sentence_counts.end()) {
                fail(ErrorKind::reference, "gold opinion #" + std::to_string(n) + " references missing review " + describe(key));
            }
            if (op.sentence_index >= it->second) {
                fail(ErrorKind::reference, "gold opinion #" + std::to_string(n) + " sentence_index " +
                                               std::to_string(op.sentence_index) + " but review " + describe(key) +
                                               " has " + std::to_string(it->second) + " sentences");
            }
            if (!criteria.count(op.category)) {
                fail(ErrorKind::mapping, "gold opinion #" + std::to_string(n) + " has category '" + op.category.value +
                                             "' outside the criteria");
            }
            ++n;
        }
    }
}

Dataset parse_dataset(std::string_view json_text, ValidationMode mode) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::schema, std::string("corpus is not valid JSON: ") + e.what());
    }
    Dataset ds;
    try {
        if (!doc.is_object()) fail(ErrorKind::schema, "corpus must be a JSON object");
        for (const auto& e : require(doc, "experts", "corpus")) {
            ds.experts.emplace_back(id_and_name(e, "experts").first);
        }
        for (const auto& a : require(doc, "alternatives", "corpus")) {
            auto [id, name] = id_and_name(a, "alternatives");
            ds.alternatives.push_back({AlternativeId(id), name});
        }
        for (const auto& c : require(doc, "criteria", "corpus")) {
            auto [id, name] = id_and_name(c, "criteria");
            ds.criteria.push_back({CriterionId(id), name});
        }
        const auto& tau = require(doc, "tau", "corpus");
        if (!tau.is_number_integer()) fail(ErrorKind::schema, "tau must be an integer");
        ds.scale = Scale(tau.get<int>());
        std::size_t i = 0;
        for (const auto& r : require(doc, "reviews", "corpus")) {
            ds.reviews.push_back(parse_review(r, i++));
        }
        if (doc.contains("gold_opinions") && !doc.at("gold_opinions").is_null()) {
            std::vector<Opinion> gold;
            std::size_t j = 0;
            for (const auto& o : doc.at("gold_opinions")) {
                gold.push_back(parse_gold_opinion(o, j++));
            }
            ds.gold_opinions = std::move(gold);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::schema, std::string("corpus has an unexpected shape: ") + e.what());
    }
    validate_dataset(ds, mode);
    return ds;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset load_dataset(const std::filesystem::path& path, ValidationMode mode) {
    return parse_dataset(read_text_file(path), mode);
}

// --- category mapping ----------------------------------------------------

CategoryMapping CategoryMapping::semeval_restaurants() {
    // Entity#attribute labels of the SemEval-2016 restaurant domain, collapsed
    // onto the entity.
    static const std::pair<const char*, const char*> table[] = {
        {"RESTAURANT#GENERAL", "restaurant"}, {"RESTAURANT#PRICES", "restaurant"},
        {"RESTAURANT#MISCELLANEOUS", "restaurant"}, {"FOOD#QUALITY", "food"},
        {"FOOD#STYLE_OPTIONS", "food"},       {"FOOD#PRICES", "food"},
        {"FOOD#GENERAL", "food"},             {"DRINKS#QUALITY", "drinks"},
        {"DRINKS#STYLE_OPTIONS", "drinks"},   {"DRINKS#PRICES", "drinks"},
        {"SERVICE#GENERAL", "service"},       {"AMBIENCE#GENERAL", "ambience"},
        {"LOCATION#GENERAL", "location"},
    };
    CategoryMapping m;
    for (const auto& [label, crit] : table) {
        m.add(label, CriterionId(crit));
    }
    return m;
}

void CategoryMapping::add(std::string label, CriterionId criterion) { table_[std::move(label)] = std::move(criterion); }

std::optional<CriterionId> CategoryMapping::find(std::string_view label) const {
    auto it = table_.find(std::string(label));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

const CriterionId& CategoryMapping::map(std::string_view label) const {
    auto it = table_.find(std::string(label));
    if (it == table_.end()) {
        fail(ErrorKind::mapping, "no criterion for category label '" + std::string(label) + "'");
    }
    return it->second;
}

std::vector<Opinion> map_categories(const std::vector<LabeledOpinion>& raw, const CategoryMapping& mapping) {
    std::vector<Opinion> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
        out.push_back({r.expert, r.alternative, r.sentence_index, r.aspect_term, mapping.map(r.category_label),
                       r.polarity});
    }
    return out;
}

// --- CSV fixtures --------------------------------------------------------

EvalMatrix parse_matrix_csv(std::string_view text, const std::vector<Criterion>& known, const Scale& scale) {
    auto rows = parse_csv(text);
    const auto& header = header_of(rows, "matrix");
    std::vector<std::size_t> col_of_field; // field index -> known criterion index
    std::set<std::string> seen;
    for (std::size_t f = 1; f < header.size(); ++f) {
        const Criterion* c = find_criterion(known, header[f]);
        if (!c) fail(ErrorKind::schema, "unknown criterion column '" + header[f] + "'");
        if (!seen.insert(header[f]).second) fail(ErrorKind::schema, "duplicate criterion column '" + header[f] + "'");
        col_of_field.push_back(static_cast<std::size_t>(c - known.data()));
    }
    std::vector<AlternativeId> alts;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        alts.emplace_back(rows[r].at(0));
    }
    EvalMatrix m(std::move(alts), criterion_ids(known), scale);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size()) {
            fail(ErrorKind::schema, "matrix row '" + rows[r][0] + "' has " + std::to_string(rows[r].size()) +
                                        " fields, expected " + std::to_string(header.size()));
        }
        for (std::size_t f = 1; f < header.size(); ++f) {
            const auto& token = rows[r][f];
            std::optional<double> v;
            if (token != "NA") {
                v = parse_number(token, "(" + rows[r][0] + ", " + header[f] + ")");
            }
            m.set_at(r - 1, col_of_field[f - 1], v);
        }
    }
    return m;
}

EvalMatrix load_matrix_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known,
                               const Scale& scale) {
    try {
        return parse_matrix_csv(read_text_file(path), known, scale);
    } catch (Error& e) {
        if (e.kind() == ErrorKind::io) throw;
        throw Error(e.kind(), path.string() + ": " + e.message());
    }
}

namespace {

std::string format_cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        char tmp[32];
        std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
        if (std::strtod(tmp, nullptr) == v) {
            return tmp;
        }
    }
    return buf;
}

} // namespace

std::string write_matrix_csv(const EvalMatrix& matrix) {
    std::string out = "alternative";
    for (const auto& c : matrix.cols()) out += "," + c.value;
    out += "\n";
    for (std::size_t r = 0; r < matrix.row_count(); ++r) {
        out += matrix.rows()[r].value;
        for (std::size_t c = 0; c < matrix.col_count(); ++c) {
            auto v = matrix.at(r, c);
            out += ",";
            out += v ? format_cell(*v) : "NA";
        }
        out += "\n";
    }
    return out;
}

Counts parse_counts_csv(std::string_view text, const std::vector<Criterion>& known) {
    Counts counts;
    for (const auto& c : known) counts[c.id] = 0;
    std::set<std::string> seen;
    for (const auto& [label, value] : two_column_table(text, "counts")) {
        if (!find_criterion(known, label)) fail(ErrorKind::schema, "unknown criterion '" + label + "' in counts");
        if (!seen.insert(label).second) fail(ErrorKind::schema, "criterion '" + label + "' counted twice");
        auto n = parse_integer(value, label);
        if (n < 0) fail(ErrorKind::validation, "negative count for '" + label + "'");
        counts[CriterionId(label)] = n;
    }
    return counts;
}

Counts load_counts_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known) {
    return parse_counts_csv(read_text_file(path), known);
}

std::string write_counts_csv(const Counts& counts, const std::vector<Criterion>& order) {
    std::string out = "criterion,count\n";
    for (const auto& c : order) {
        auto it = counts.find(c.id);
        out += c.id.value + "," + std::to_string(it == counts.end() ? 0 : it->second) + "\n";
    }
    return out;
}

Weights parse_weights_csv(std::string_view text, const std::vector<Criterion>& known) {
    Weights w;
    for (const auto& c : known) w[c.id] = 0.0;
    std::set<std::string> seen;
    for (const auto& [label, value] : two_column_table(text, "weights")) {
        if (!find_criterion(known, label)) fail(ErrorKind::schema, "unknown criterion '" + label + "' in weights");
        if (!seen.insert(label).second) fail(ErrorKind::schema, "criterion '" + label + "' weighted twice");
        w[CriterionId(label)] = parse_number(value, label);
    }
    return w;
}

Weights load_weights_fixture(const std::filesystem::path& path, const std::vector<Criterion>& known) {
    return parse_weights_csv(read_text_file(path), known);
}

PreferenceVector parse_fp_csv(std::string_view text, const Scale& scale) {
    std::vector<AlternativeId> alts;
    std::vector<std::optional<double>> values;
    for (const auto& [label, value] : two_column_table(text, "fp")) {
        alts.emplace_back(label);
        if (value == "NA") {
            values.emplace_back();
        } else {
            values.emplace_back(parse_number(value, label));
        }
    }
    return PreferenceVector(std::move(alts), std::move(values), scale);
}

PreferenceVector load_fp_file(const std::filesystem::path& path, const Scale& scale) {
    return parse_fp_csv(read_text_file(path), scale);
}

std::string write_fp_csv(const PreferenceVector& fp) {
    std::string out = "alternative,fp\n";
    for (std::size_t i = 0; i < fp.size(); ++i) {
        out += fp.alternatives()[i].value + ",";
        out += fp.values()[i] ? format_cell(*fp.values()[i]) : "NA";
        out += "\n";
    }
    return out;
}

std::map<ExpertId, EvalMatrix> load_matrix_dir(const std::filesystem::path& dir, const std::vector<Criterion>& known,
                                               const Scale& scale) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        fail(ErrorKind::io, "'" + dir.string() + "' is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return natural_less(a.stem().string(), b.stem().string()); });
    if (files.empty()) {
        fail(ErrorKind::validation, "no matrix files in '" + dir.string() + "'");
    }
    std::map<ExpertId, EvalMatrix> out;
    for (const auto& f : files) {
        out.emplace(ExpertId(f.stem().string()), load_matrix_fixture(f, known, scale));
    }
    return out;
}

std::map<ExpertId, EvalMatrix> build_ine(const Dataset& dataset) {
    std::map<ExpertId, EvalMatrix> out;
    const auto alts = dataset.alternative_ids();
    const auto crits = dataset.criterion_ids();
    for (const auto& e : dataset.experts) {
        out.emplace(e, EvalMatrix(alts, crits, dataset.scale));
    }
    for (const auto& r : dataset.reviews) {
        auto& m = out.at(r.expert);
        for (const auto& [crit, level] : r.ratings) {
            if (level) {
                m.set(r.alternative, crit, dataset.scale.level_to_value(*level, describe({r.expert, r.alternative})));
            }
        }
    }
    return out;
}

} // namespace revdecide
