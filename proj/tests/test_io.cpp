#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "coxpack/census.hpp"
#include "coxpack/io.hpp"
#include "support/sample_graphs.hpp"

using namespace coxpack;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sample graph files", "[io]") {
  const fs::path dir = COXPACK_DATA_DIR;
  CHECK(parse_graph_any(slurp(dir / "k4_all4.json")) == samples::k4_all4());
  CHECK(parse_graph_any(slurp(dir / "k4_all4_dotted.json")) == samples::k4_all4_dotted());
  CHECK(parse_graph_any(slurp(dir / "universal_rank4.json")) == samples::universal_rank4());
  CHECK(parse_graph_any(slurp(dir / "cycle5_all4.json")) == samples::cycle5_all4());
  CHECK(parse_graph_any(slurp(dir / "star3_inf.json")) == samples::star3_inf());
  CHECK(parse_graph_any(slurp(dir / "path_a3.txt")) == parse_compact("n=3; 0-1:3 1-2:3"));
  CHECK_THROWS_AS(parse_graph_any(slurp(dir / "bad_self_loop.json")), ParseError);
}

TEST_CASE("every census graph round-trips", "[io][census]") {
  const auto entries = enumerate_level2({});
  for (const auto& e : entries) {
    CHECK(canonical_key(parse_graph(format_graph_json(e.graph))) == e.key);
    CHECK(parse_compact(format_compact(e.graph)) == e.graph);
  }
  const auto rows = io::census_json(entries);
  REQUIRE(rows.size() == entries.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i]["key"] == entries[i].key);
    CHECK(canonical_key(parse_compact(rows[i]["edge_list"].get<std::string>())) == entries[i].key);
  }

  const auto csv = io::census_csv(entries);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "key,rank,family,strict,n_imaginary,n_real,n_surreal,edge_list");
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) ++n;
  CHECK(n == entries.size());
}

TEST_CASE("orbit records", "[io]") {
  const auto g = samples::universal_rank4();
  const auto roots = io::roots_json(g, roots_up_to_depth(g, 3), 3);
  CHECK(roots["depth"] == 3);
  CHECK(roots["summary"]["count"] == roots["roots"].size());
  CHECK(roots["roots"][0]["depth"] == 1);
  const auto ws = io::weights_json(g, weights_up_to_length(g, 2), 2);
  for (const auto& w : ws["weights"]) {
    CHECK(w["class"] == "space-like");
    CHECK(w["norm"].get<double>() == Catch::Approx(0.25));
  }
  CHECK(ws["summary"]["deepest_shell_size"].get<int>() > 0);
}

TEST_CASE("packing output", "[io][pack]") {
  const auto p = io::build_packing(samples::universal_rank4(), 4);
  CHECK(p.report.is_packing);
  const auto j = io::packing_json(p);
  CHECK(j["balls"].size() == p.balls.size());
  CHECK(j["validation"]["is_packing"] == true);
  CHECK(j["frame"].size() == 4);

  const io::RenderSpec spec;
  const auto svg = io::render_svg(p, spec);
  CHECK(svg == io::render_svg(io::build_packing(samples::universal_rank4(), 4), spec));
  CHECK(svg.find("<!-- packing validation: is_packing=true") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  io::RenderSpec tiny = spec;
  tiny.min_radius = 1e9;
  const auto sparse = io::render_svg(p, tiny);
  CHECK(sparse.size() < svg.size());

  CHECK_THROWS_AS(io::render_svg(io::build_packing(samples::cycle5_all4(), 1), spec), PreconditionError);
  CHECK_THROWS_AS(io::build_packing(parse_compact("n=3; 0-1:3 1-2:3"), 1), PreconditionError);
}

TEST_CASE("tangency output", "[io][tangency]") {
  const auto tg = tangency_graph(samples::universal_rank4(), 1);
  const auto j = io::tangency_json(tg, true);
  for (const char* key : {"vertices", "edges", "truncation_length", "witness_length", "oracle_agrees"})
    CHECK(j.contains(key));
  CHECK(j["truncation_length"] == 1);
  CHECK(j["witness_length"] == 1 + kDefaultWitnessMargin);
  CHECK(j["edges"].size() == tg.edges.size());
  CHECK_FALSE(io::tangency_json(tg).contains("oracle_agrees"));
  for (const auto& v : j["vertices"]) CHECK((v["klass"] == "real" || v["klass"] == "surreal"));

  const auto text = io::tangency_edge_list(tg);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == tg.edges.size());
}
