#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plageval/attribute.hpp"
#include "plageval/error.hpp"
#include "plageval/pairsel.hpp"
#include "plageval/stats.hpp"
#include "plageval/structure.hpp"

namespace py = pybind11;
using namespace plageval;

namespace {

LexerConfig config_for(const std::string& mode) { return LexerConfig{abstraction_from_string(mode)}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Similarity detectors, statistics and pair selection";

  static py::exception<Error> error(m, "PlagevalError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.code(), e.what()).ptr());
    }
  });

  m.def(
      "tokenize",
      [](const std::string& source, const std::string& mode) {
        const TokenSequence seq = tokenize(source, config_for(mode));
        py::list out;
        for (std::size_t i = 0; i < seq.size(); ++i) {
          const Token& t = seq.tokens()[i];
          out.append(py::dict(py::arg("kind") = std::string(to_string(t.kind)),
                              py::arg("lexeme") = t.lexeme, py::arg("line") = t.line,
                              py::arg("column") = t.column, py::arg("key") = seq.key(i)));
        }
        return out;
      },
      py::arg("source"), py::arg("mode") = "category");

  m.def(
      "aba",
      [](const std::string& a, const std::string& b, const std::string& mode) {
        return aba_similarity(tokenize(a, config_for(mode)), tokenize(b, config_for(mode))).value;
      },
      py::arg("a"), py::arg("b"), py::arg("mode") = "category");

  m.def(
      "sba",
      [](const std::string& a, const std::string& b, const std::string& mode, std::size_t min_match) {
        return sba_similarity(tokenize(a, config_for(mode)), tokenize(b, config_for(mode)), min_match)
            .value;
      },
      py::arg("a"), py::arg("b"), py::arg("mode") = "category", py::arg("min_match") = 2);

  m.def(
      "rkr_gst_tiles",
      [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
         std::size_t min_match) {
        const TileSet tiles = rkr_gst_tiles(a, b, {.min_match = min_match});
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
        for (const Tile& t : tiles.tiles) out.emplace_back(t.start_a, t.start_b, t.length);
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("min_match") = 2,
      "Greedy tiles as (start_a, start_b, length) in claim order.");

  m.def(
      "pearson",
      [](const std::vector<double>& x, const std::vector<double>& y) { return stats::pearson(x, y); },
      py::arg("x"), py::arg("y"));

  m.def(
      "paired_t_test",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const stats::TTestResult r = stats::paired_t_test(x, y);
        return py::dict(py::arg("t") = r.t, py::arg("df") = r.df, py::arg("p") = r.p);
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "rank_descending",
      [](const std::vector<double>& values) { return stats::rank_descending(values).ranks; },
      py::arg("values"));

  m.def(
      "negate_average_ranks",
      [](const std::vector<std::vector<double>>& rankings) {
        std::vector<stats::RankVector> rv;
        for (const auto& r : rankings) rv.push_back({r});
        return stats::negate_average_ranks(rv);
      },
      py::arg("rankings"));

  m.def(
      "contradicting_pairs",
      [](const std::map<std::string, double>& sims_p1, const std::map<std::string, double>& sims_p2,
         int level) {
        Cluster cluster;
        cluster.id = "cluster/L" + std::to_string(level);
        cluster.level = level;
        for (const auto& [id, _] : sims_p1) cluster.members.push_back({id, "", {}});
        py::list out;
        for (const ContradictingPair& p : contradicting_pairs(cluster, sims_p1, sims_p2)) {
          out.append(py::dict(py::arg("code_a") = p.code_a, py::arg("code_b") = p.code_b,
                              py::arg("sims_p1") = p.sims_p1, py::arg("sims_p2") = p.sims_p2,
                              py::arg("delta") = p.delta));
        }
        return out;
      },
      py::arg("sims_p1"), py::arg("sims_p2"), py::arg("level") = 0);
}
