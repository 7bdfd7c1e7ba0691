#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "revdecide/error.hpp"
#include "revdecide/scenario.hpp"

namespace py = pybind11;
using namespace revdecide;

namespace {

std::map<std::string, double> to_py(const Weights& w) {
    std::map<std::string, double> out;
    for (const auto& [c, v] : w) out[c.value] = v;
    return out;
}

EngineConfig config_from(const std::optional<std::string>& config_json) {
    return config_json ? parse_config(*config_json) : EngineConfig::defaults();
}

std::string run_fixtures(const std::filesystem::path& dir, const std::string& scenario, const std::string& format,
                         const std::optional<std::string>& config_json, bool summary) {
    auto config = config_from(config_json);
    auto kind = parse_scenario_kind(scenario);
    auto paths = fixture_layout(dir, kind);
    if (!paths) fail(ErrorKind::usage, "fixture directory lacks the files for " + scenario);
    auto report = run_scenario({kind, config}, load_fixture_inputs(*paths, config));
    return emit_report(report, parse_report_format(format), {summary});
}

std::string run_corpus(const std::filesystem::path& corpus, const std::string& scenario,
                       const std::optional<std::filesystem::path>& opinions, const std::string& format,
                       const std::optional<std::string>& config_json, bool lenient) {
    auto config = config_from(config_json);
    auto inputs = load_corpus_inputs(corpus, opinions, lenient ? ValidationMode::lenient : ValidationMode::complete);
    auto report = run_scenario({parse_scenario_kind(scenario), config}, inputs);
    return emit_report(report, parse_report_format(format));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "multi-expert review decision engine";

    static py::exception<Error> error(m, "RevdecideError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("level_to_value", [](int level, int tau) { return Scale(tau).level_to_value(level); }, py::arg("level"),
          py::arg("tau") = 2);

    m.def(
        "textual_evaluation",
        [](const std::vector<std::pair<std::string, std::string>>& opinions, const std::vector<std::string>& criteria,
           int tau) {
            std::vector<Opinion> ops;
            for (const auto& [cat, pol] : opinions) {
                Opinion o;
                o.expert = ExpertId("e");
                o.alternative = AlternativeId("x");
                o.category = CriterionId(cat);
                o.polarity = parse_polarity(pol);
                ops.push_back(std::move(o));
            }
            std::vector<CriterionId> crits;
            for (const auto& c : criteria) crits.emplace_back(c);
            return compute_ite(ops, crits, Scale(tau));
        },
        py::arg("opinions"), py::arg("criteria"), py::arg("tau") = 2,
        "(category, polarity) pairs of one review -> one value or None per criterion");

    m.def(
        "attention_weights",
        [](const std::map<std::string, long long>& counts) {
            Counts c;
            for (const auto& [k, v] : counts) c[CriterionId(k)] = v;
            return to_py(attention_weights(c));
        },
        py::arg("counts"));

    m.def(
        "rank",
        [](const std::vector<std::pair<std::string, std::optional<double>>>& fp, int tau) {
            std::vector<AlternativeId> alts;
            std::vector<std::optional<double>> values;
            for (const auto& [a, v] : fp) {
                alts.emplace_back(a);
                values.push_back(v);
            }
            auto result = rank(PreferenceVector(alts, values, Scale(tau)));
            std::vector<std::string> order;
            for (const auto& a : result.order) order.push_back(a.value);
            return order;
        },
        py::arg("fp"), py::arg("tau") = 2);

    m.def("validate_corpus",
          [](const std::filesystem::path& path, bool lenient) {
              auto ds = load_dataset(path, lenient ? ValidationMode::lenient : ValidationMode::complete);
              py::dict d;
              d["experts"] = ds.experts.size();
              d["alternatives"] = ds.alternatives.size();
              d["reviews"] = ds.reviews.size();
              d["gold_opinions"] = ds.gold_opinions ? ds.gold_opinions->size() : 0;
              d["warnings"] = ds.warnings;
              return d;
          },
          py::arg("path"), py::arg("lenient") = false);

    m.def("run_fixtures", &run_fixtures, py::arg("directory"), py::arg("scenario") = "combined",
          py::arg("format") = "json", py::arg("config_json") = py::none(), py::arg("summary") = false);
    m.def("run_corpus", &run_corpus, py::arg("corpus"), py::arg("scenario") = "annotated",
          py::arg("opinions") = py::none(), py::arg("format") = "json", py::arg("config_json") = py::none(),
          py::arg("lenient") = false);
}
