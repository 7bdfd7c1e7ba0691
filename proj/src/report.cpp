#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "revdecide/error.hpp"
#include "revdecide/scenario.hpp"

namespace revdecide {

using nlohmann::json;

double report_precision(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    double out = std::strtod(buf, nullptr);
    return out == 0.0 ? 0.0 : out; // no negative zero in reports
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "md" || text == "markdown") return ReportFormat::markdown;
    fail(ErrorKind::usage, "unknown report format '" + std::string(text) + "' (expected json, csv or md)");
}

std::string ranking_string(const RankedResult& result) {
    std::string out;
    std::size_t i = 0;
    const std::size_t rated = result.order.size() - result.unrated.size();
    while (i < rated) {
        auto tie = std::find_if(result.ties.begin(), result.ties.end(),
                                [&](const auto& g) { return !g.empty() && g.front() == result.order[i]; });
        if (!out.empty()) out += " > ";
        if (tie != result.ties.end()) {
            for (std::size_t k = 0; k < tie->size(); ++k) out += (k ? " = " : "") + (*tie)[k].value;
            i += tie->size();
        } else {
            out += result.order[i].value;
            ++i;
        }
    }
    if (!result.unrated.empty()) {
        out += "; unrated: ";
        for (std::size_t k = 0; k < result.unrated.size(); ++k) out += (k ? ", " : "") + result.unrated[k].value;
    }
    return out;
}

namespace {

json number_or_null(const std::optional<double>& v) { return v ? json(report_precision(*v)) : json(nullptr); }

json matrix_to_json(const EvalMatrix& m) {
    json rows = json::array();
    json cols = json::array();
    for (const auto& r : m.rows()) rows.push_back(r.value);
    for (const auto& c : m.cols()) cols.push_back(c.value);
    json cells = json::array();
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.col_count(); ++c) row.push_back(number_or_null(m.at(r, c)));
        cells.push_back(std::move(row));
    }
    return {{"rows", rows}, {"cols", cols}, {"cells", cells}};
}

EvalMatrix matrix_from_json(const json& j, const Scale& scale) {
    std::vector<AlternativeId> rows;
    std::vector<CriterionId> cols;
    for (const auto& r : j.at("rows")) rows.emplace_back(r.get<std::string>());
    for (const auto& c : j.at("cols")) cols.emplace_back(c.get<std::string>());
    EvalMatrix m(rows, cols, scale);
    const auto& cells = j.at("cells");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& v = cells.at(r).at(c);
            if (!v.is_null()) m.set_at(r, c, v.get<double>());
        }
    }
    return m;
}

json matrix_map_to_json(const std::map<ExpertId, EvalMatrix>& ms) {
    json obj = json::object();
    for (const auto& [e, m] : ms) obj[e.value] = matrix_to_json(m);
    return obj;
}

std::map<ExpertId, EvalMatrix> matrix_map_from_json(const json& j, const Scale& scale) {
    std::map<ExpertId, EvalMatrix> out;
    for (const auto& [e, m] : j.items()) out.emplace(ExpertId(e), matrix_from_json(m, scale));
    return out;
}

json ids_to_json(const std::vector<AlternativeId>& ids) {
    json arr = json::array();
    for (const auto& a : ids) arr.push_back(a.value);
    return arr;
}

std::vector<AlternativeId> ids_from_json(const json& j) {
    std::vector<AlternativeId> out;
    for (const auto& a : j) out.emplace_back(a.get<std::string>());
    return out;
}

json report_to_json(const ScenarioReport& report, const EmitOptions& options) {
    json fp = json::array();
    const auto& pv = report.fp();
    for (std::size_t i = 0; i < pv.size(); ++i) {
        fp.push_back({{"alternative", pv.alternatives()[i].value}, {"value", number_or_null(pv.values()[i])}});
    }
    json ties = json::array();
    for (const auto& g : report.result.ties) ties.push_back(ids_to_json(g));
    json ranking = {{"order", ids_to_json(report.result.order)},
                    {"ties", ties},
                    {"unrated", ids_to_json(report.result.unrated)},
                    {"text", ranking_string(report.result)}};
    json out = {{"scenario", std::string(to_string(report.kind))},
                {"tau", pv.scale().tau()},
                {"fp", fp},
                {"ranking", ranking}};
    if (options.summary) {
        return out;
    }
    json criteria = json::array();
    json weights = json::array();
    for (const auto& c : report.criteria) {
        criteria.push_back({{"id", c.id.value}, {"name", c.display_name}});
        auto it = report.weights().find(c.id);
        weights.push_back({{"criterion", c.id.value},
                           {"weight", report_precision(it == report.weights().end() ? 0.0 : it->second)}});
    }
    const auto& im = report.result.intermediates;
    json inter = {{"ite", matrix_map_to_json(im.ite)},
                  {"ine", matrix_map_to_json(im.ine)},
                  {"ip", matrix_map_to_json(im.ip)},
                  {"cp", im.cp ? matrix_to_json(*im.cp) : json(nullptr)}};
    json inputs = json::array();
    for (const auto& f : report.inputs) inputs.push_back({{"path", f.path}, {"sha256", f.sha256}});
    out["criteria"] = criteria;
    out["weights"] = weights;
    out["intermediates"] = inter;
    out["provenance"] = {{"inputs", inputs},
                         {"config", report.config_json.empty() ? json(nullptr) : json::parse(report.config_json)}};
    out["warnings"] = report.warnings;
    return out;
}

std::string fixed(double v, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, report_precision(v));
    std::string s = buf;
    if (s.rfind("-0.", 0) == 0 && std::strtod(s.c_str(), nullptr) == 0.0) s.erase(0, 1);
    return s;
}

std::string cell_text(const std::optional<double>& v) { return v ? fixed(*v, 2) : "NA"; }

std::string fp_table(const std::vector<ScenarioReport>& reports) {
    std::ostringstream out;
    const auto& alts = reports.front().fp().alternatives();
    out << "| Scenario |";
    for (const auto& a : alts) out << ' ' << a.value << " |";
    out << " Final Ranking |\n|---|";
    for (std::size_t i = 0; i < alts.size(); ++i) out << "---:|";
    out << "---|\n";
    for (const auto& r : reports) {
        out << "| " << table_label(r.kind) << " |";
        for (const auto& a : alts) out << ' ' << cell_text(r.fp().get(a)) << " |";
        out << ' ' << ranking_string(r.result) << " |\n";
    }
    return out.str();
}

std::string matrix_table(const EvalMatrix& m) {
    std::ostringstream out;
    out << "| Alternative |";
    for (const auto& c : m.cols()) out << ' ' << c.value << " |";
    out << "\n|---|";
    for (std::size_t c = 0; c < m.col_count(); ++c) out << "---:|";
    out << '\n';
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        out << "| " << m.rows()[r].value << " |";
        for (std::size_t c = 0; c < m.col_count(); ++c) out << ' ' << cell_text(m.at(r, c)) << " |";
        out << '\n';
    }
    return out.str();
}

std::string markdown_report(const ScenarioReport& report, const EmitOptions& options) {
    std::ostringstream out;
    out << "## Scenario: " << to_string(report.kind) << " (" << table_label(report.kind) << ")\n\n";
    out << fp_table({report});
    if (options.summary) {
        return out.str();
    }
    out << "\n| Criterion | Weight |\n|---|---:|\n";
    for (const auto& c : report.criteria) {
        auto it = report.weights().find(c.id);
        out << "| " << c.display_name << " | " << fixed(it == report.weights().end() ? 0.0 : it->second, 3) << " |\n";
    }
    if (report.result.intermediates.cp) {
        out << "\nCollective preferences:\n\n" << matrix_table(*report.result.intermediates.cp);
    }
    if (!report.warnings.empty()) {
        out << "\nWarnings:\n\n";
        for (const auto& w : report.warnings) out << "- " << w << '\n';
    }
    return out.str();
}

std::string csv_rows(const ScenarioReport& report, const EmitOptions& options) {
    std::ostringstream out;
    const auto kind = to_string(report.kind);
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    if (!options.summary) {
        for (const auto& c : report.criteria) {
            auto it = report.weights().find(c.id);
            out << kind << ",weight," << c.id.value << ',' << num(it == report.weights().end() ? 0.0 : it->second)
                << '\n';
        }
    }
    const auto& pv = report.fp();
    for (std::size_t i = 0; i < pv.size(); ++i) {
        out << kind << ",fp," << pv.alternatives()[i].value << ','
            << (pv.values()[i] ? num(*pv.values()[i]) : std::string("NA")) << '\n';
    }
    for (std::size_t i = 0; i < report.result.order.size(); ++i) {
        out << kind << ",rank," << (i + 1) << ',' << report.result.order[i].value << '\n';
    }
    return out.str();
}

} // namespace

std::string emit_report(const ScenarioReport& report, ReportFormat format, EmitOptions options) {
    switch (format) {
    case ReportFormat::json: return report_to_json(report, options).dump(2) + "\n";
    case ReportFormat::csv: return "scenario,section,key,value\n" + csv_rows(report, options);
    case ReportFormat::markdown: return markdown_report(report, options);
    }
    fail(ErrorKind::usage, "unknown report format");
}

std::string emit_batch(const std::vector<ScenarioReport>& reports, ReportFormat format, EmitOptions options) {
    if (reports.empty()) {
        fail(ErrorKind::usage, "no scenario could be run with the given inputs");
    }
    switch (format) {
    case ReportFormat::json: {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r, options));
        return json{{"reports", arr}}.dump(2) + "\n";
    }
    case ReportFormat::csv: {
        std::string out = "scenario,section,key,value\n";
        for (const auto& r : reports) out += csv_rows(r, options);
        return out;
    }
    case ReportFormat::markdown: return fp_table(reports);
    }
    fail(ErrorKind::usage, "unknown report format");
}

ScenarioReport parse_report_json(std::string_view json_text) {
    ScenarioReport report;
    try {
        json j = json::parse(json_text);
        report.kind = parse_scenario_kind(j.at("scenario").get<std::string>());
        const Scale scale(j.at("tau").get<int>());
        std::vector<AlternativeId> alts;
        std::vector<std::optional<double>> values;
        for (const auto& e : j.at("fp")) {
            alts.emplace_back(e.at("alternative").get<std::string>());
            values.push_back(e.at("value").is_null() ? std::nullopt : std::optional(e.at("value").get<double>()));
        }
        report.result.fp = PreferenceVector(std::move(alts), std::move(values), scale);
        const auto& ranking = j.at("ranking");
        report.result.order = ids_from_json(ranking.at("order"));
        for (const auto& g : ranking.at("ties")) report.result.ties.push_back(ids_from_json(g));
        report.result.unrated = ids_from_json(ranking.at("unrated"));
        if (j.contains("criteria")) {
            for (const auto& c : j.at("criteria")) {
                report.criteria.push_back(
                    {CriterionId(c.at("id").get<std::string>()), c.at("name").get<std::string>()});
            }
        }
        if (j.contains("weights")) {
            for (const auto& w : j.at("weights")) {
                report.result.weights[CriterionId(w.at("criterion").get<std::string>())] = w.at("weight").get<double>();
            }
        }
        if (j.contains("intermediates")) {
            const auto& im = j.at("intermediates");
            auto& out = report.result.intermediates;
            out.ite = matrix_map_from_json(im.at("ite"), scale);
            out.ine = matrix_map_from_json(im.at("ine"), scale);
            out.ip = matrix_map_from_json(im.at("ip"), scale);
            if (!im.at("cp").is_null()) out.cp = matrix_from_json(im.at("cp"), scale);
        }
        if (j.contains("provenance")) {
            for (const auto& f : j.at("provenance").at("inputs")) {
                report.inputs.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
            }
            const auto& cfg = j.at("provenance").at("config");
            if (!cfg.is_null()) report.config_json = cfg.dump();
        }
        if (j.contains("warnings")) report.warnings = j.at("warnings").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        fail(ErrorKind::schema, std::string("report JSON has an unexpected shape: ") + e.what());
    }
    return report;
}

std::vector<ReportTable> parse_report_csv(std::string_view csv_text) {
    std::vector<ReportTable> tables;
    std::istringstream in{std::string(csv_text)};
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "scenario,section,key,value") fail(ErrorKind::schema, "unexpected report CSV header");
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string part;
        while (std::getline(ss, part, ',')) f.push_back(part);
        if (f.size() != 4) fail(ErrorKind::schema, "report CSV row must have 4 fields: " + line);
        const auto kind = parse_scenario_kind(f[0]);
        if (tables.empty() || tables.back().kind != kind) {
            tables.push_back({});
            tables.back().kind = kind;
        }
        auto& t = tables.back();
        if (f[1] == "weight") {
            t.weights.emplace_back(CriterionId(f[2]), std::strtod(f[3].c_str(), nullptr));
        } else if (f[1] == "fp") {
            t.fp.emplace_back(AlternativeId(f[2]),
                              f[3] == "NA" ? std::nullopt : std::optional(std::strtod(f[3].c_str(), nullptr)));
        } else if (f[1] == "rank") {
            t.order.emplace_back(f[3]);
        } else {
            fail(ErrorKind::schema, "unknown report CSV section '" + f[1] + "'");
        }
    }
    return tables;
}

} // namespace revdecide
