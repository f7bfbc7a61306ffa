// coxpack: command-line front end for the Coxeter packing library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coxpack/balls.hpp"
#include "coxpack/census.hpp"
#include "coxpack/complex.hpp"
#include "coxpack/errors.hpp"
#include "coxpack/form.hpp"
#include "coxpack/graph.hpp"
#include "coxpack/io.hpp"
#include "coxpack/orbit.hpp"

namespace {

using namespace coxpack;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kInconsistency = 3,
  kSvgRank = 4,
  kOrbitCap = 5,
  kNotLevel2 = 6,
  kInvariant = 7,
};

/// Error carrying a specific exit code.
struct ExitError : std::runtime_error {
  int code;
  ExitError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct Global {
  double tol = kDefaultZeroTol;
  unsigned jobs = 1;
  std::size_t max_records = OrbitLimits{}.max_records;
};

CoxeterGraph load_graph(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ExitError(kUsage, "cannot open graph file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_graph_any(text);
}

/// Parses sizes like "512M", "2G" or plain bytes.
std::size_t parse_bytes(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ExitError(kUsage, "COXPACK_MAX_MEM: invalid size '" + s + "'");
  }
  const std::string suffix = s.substr(pos);
  double mult = 1;
  if (suffix == "K" || suffix == "k") mult = 1024.0;
  else if (suffix == "M" || suffix == "m") mult = 1024.0 * 1024;
  else if (suffix == "G" || suffix == "g") mult = 1024.0 * 1024 * 1024;
  else if (!suffix.empty()) throw ExitError(kUsage, "COXPACK_MAX_MEM: invalid suffix '" + suffix + "'");
  if (!(v > 0)) throw ExitError(kUsage, "COXPACK_MAX_MEM: size must be positive");
  return static_cast<std::size_t>(v * mult);
}

/// Record cap from --max-records, tightened by COXPACK_MAX_MEM (bytes) using
/// the size of one group element of the given rank.
OrbitLimits limits_for(const Global& g, int rank) {
  OrbitLimits lim{g.max_records};
  if (const char* env = std::getenv("COXPACK_MAX_MEM"); env && *env) {
    const std::size_t per_record = sizeof(double) * static_cast<std::size_t>(rank) * (rank + 2) + 128;
    lim.max_records = std::min(lim.max_records, std::max<std::size_t>(1, parse_bytes(env) / per_record));
  }
  return lim;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ExitError(kUsage, "cannot write " + out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_classify(const Global& gl, const std::string& path, bool as_json) {
  const auto g = load_graph(path);
  const auto b = gram_matrix(g);
  const auto sig = signature(b, gl.tol);
  const auto type = type_of(sig);
  const int lvl = level(b, gl.tol);
  json j = {{"rank", g.rank()},
            {"type", std::string(to_string(type))},
            {"signature", {sig.n_plus, sig.n_zero, sig.n_minus}},
            {"level", lvl}};
  std::string text = std::string(to_string(type)) + ", level " + std::to_string(lvl) + "\n";
  text += "signature: (" + std::to_string(sig.n_plus) + ", " + std::to_string(sig.n_zero) + ", " +
          std::to_string(sig.n_minus) + ")\n";
  if (lvl == 2) {
    const bool strict = is_strict_level2(g, gl.tol);
    j["strict"] = strict;
    text += std::string("strict: ") + (strict ? "yes" : "no") + "\n";
  }
  if (!is_singular(b)) {
    const auto fw = fundamental_weights(b);
    json ws = json::array();
    text += "fundamental weights:\n";
    for (int s = 0; s < g.rank(); ++s) {
      const double nrm = fw.norms[s];
      json w = {{"vertex", s}, {"norm", nrm}, {"class", std::string(to_string(norm_class(nrm)))}};
      std::string line = "  " + std::to_string(s) + ": norm " + io::detail::fmt(nrm) + " " + std::string(to_string(norm_class(nrm)));
      if (lvl == 2) {
        const auto vc = classify_norm(nrm);
        w["vertex_class"] = std::string(to_string(vc));
        line += " (" + std::string(to_string(vc)) + ")";
      }
      ws.push_back(std::move(w));
      text += line + "\n";
    }
    j["fundamental_weights"] = ws;
  } else {
    j["fundamental_weights"] = nullptr;
    text += "fundamental weights: undefined (singular form)\n";
  }
  std::cout << (as_json ? dump(j) : text);
  return kOk;
}

int cmd_roots(const Global& gl, const std::string& path, int depth, const std::string& out) {
  const auto g = load_graph(path);
  const auto roots = roots_up_to_depth(g, depth, limits_for(gl, g.rank()));
  write_output(out, dump(io::roots_json(g, roots, depth)));
  return kOk;
}

int cmd_weights(const Global& gl, const std::string& path, int length, const std::string& out) {
  const auto g = load_graph(path);
  if (length < 0) throw PreconditionError("length must be >= 0");
  const auto ws = weights_up_to_length(g, length, limits_for(gl, g.rank()));
  write_output(out, dump(io::weights_json(g, ws, length)));
  return kOk;
}

int cmd_pack(const Global& gl, const std::string& path, int length, const std::string& format, double min_radius,
             int width, const std::string& out) {
  const auto g = load_graph(path);
  if (format == "svg" && g.rank() != 4)
    throw ExitError(kSvgRank, "svg output needs a rank-4 graph (got rank " + std::to_string(g.rank()) + ")");
  const auto p = io::build_packing(g, length, limits_for(gl, g.rank()), gl.jobs);
  if (format == "svg")
    write_output(out, io::render_svg(p, {length, min_radius, width, width}));
  else
    write_output(out, dump(io::packing_json(p)));
  return kOk;
}

int cmd_tangency(const Global& gl, const std::string& path, int length, int margin, const std::string& format,
                 const std::string& out) {
  const auto g = load_graph(path);
  const int lvl = level(g, gl.tol);
  if (lvl != 2) throw ExitError(kNotLevel2, "tangency graph needs a level-2 graph (level is " + std::to_string(lvl) + ")");
  if (length < 0 || margin < 0) throw PreconditionError("lengths must be >= 0");
  const auto cx = chambers_up_to_length(g, length + margin, limits_for(gl, g.rank()));
  const auto tg = tangency_graph(cx, length);
  const bool agrees = tg.edge_set() == oracle_edges(tg, cx.gram);
  if (format == "edges")
    write_output(out, io::tangency_edge_list(tg));
  else
    write_output(out, dump(io::tangency_json(tg, agrees)));
  if (!agrees) std::cerr << "warning: tangency edges differ from the geometric oracle\n";
  return kOk;
}

int cmd_enum(const Global& gl, int min_rank, int max_rank, bool strict_only, const std::string& format,
             std::optional<std::uint64_t> seed, const std::string& out) {
  EnumOptions opt;
  opt.zero_tol = gl.tol;
  opt.min_rank = min_rank;
  opt.max_rank = max_rank;
  opt.jobs = gl.jobs;
  opt.shuffle_seed = seed;
  auto entries = enumerate_level2(opt);
  const auto failures = census_invariant_failures(entries, gl.tol);
  if (strict_only) std::erase_if(entries, [](const CensusEntry& e) { return !e.strict; });
  const std::string body = format == "json" ? dump(io::census_json(entries)) : io::census_csv(entries);
  if (!out.empty()) write_output(out, body);
  const auto report = census_report(entries);
  std::cerr << format_report(report);
  std::cout << "total=" << report.total << "\n";
  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "invariant: " << f << "\n";
    throw ExitError(kInvariant, std::to_string(failures.size()) + " census invariant failure(s)");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter graphs, level classification and ball packings"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--tol", gl.tol, "zero tolerance for eigenvalue signs")->check(CLI::PositiveNumber);
  app.add_option("--jobs", gl.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--max-records", gl.max_records, "cap on orbit records")->check(CLI::PositiveNumber);

  std::string graph, format, out;
  bool as_json = false, strict_only = false;
  int depth = 0, length = 0, width = 800, min_rank = 5, max_rank = 11, margin = kDefaultWitnessMargin;
  double min_radius = 0.0;
  std::optional<std::uint64_t> seed;

  auto* classify = app.add_subcommand("classify", "type, signature, level and fundamental weights");
  classify->add_option("graph", graph, "graph file (JSON or compact text, - for stdin)")->required();
  classify->add_flag("--json", as_json, "JSON output");

  auto* roots = app.add_subcommand("roots", "positive roots up to a depth");
  roots->add_option("graph", graph)->required();
  roots->add_option("-d,--depth", depth, "maximal depth")->required();
  roots->add_option("-o,--out", out, "output file");

  auto* weights = app.add_subcommand("weights", "weights up to a word length");
  weights->add_option("graph", graph)->required();
  weights->add_option("-L,--length", length, "maximal word length")->required();
  weights->add_option("-o,--out", out, "output file");

  auto* pack = app.add_subcommand("pack", "ball packing of space-like weights");
  pack->add_option("graph", graph)->required();
  pack->add_option("-L,--length", length, "maximal word length")->required()->check(CLI::NonNegativeNumber);
  pack->add_option("--format", format, "json or svg")->check(CLI::IsMember({"json", "svg"}))->default_val("json");
  pack->add_option("--min-radius", min_radius, "drop smaller disks (svg)")->check(CLI::NonNegativeNumber);
  pack->add_option("--size", width, "svg canvas size in px")->check(CLI::PositiveNumber);
  pack->add_option("-o,--out", out, "output file");

  auto* tangency = app.add_subcommand("tangency", "tangency graph of a level-2 packing");
  tangency->add_option("graph", graph)->required();
  tangency->add_option("-L,--length", length, "chamber gallery distance")->required();
  tangency->add_option("--witness-margin", margin, "extra chamber length searched for edges")->check(CLI::NonNegativeNumber);
  tangency->add_option("--format", format, "json or edges")->check(CLI::IsMember({"json", "edges"}))->default_val("json");
  tangency->add_option("-o,--out", out, "output file");

  auto* enumerate = app.add_subcommand("enum", "census of level-2 Coxeter graphs");
  enumerate->add_option("--min-rank", min_rank)->check(CLI::Range(5, 11));
  enumerate->add_option("--max-rank", max_rank)->check(CLI::Range(5, 11));
  enumerate->add_flag("--strict-only", strict_only, "only strict entries");
  enumerate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
  enumerate->add_option("--seed", seed, "shuffle candidates before dedup");
  enumerate->add_option("-o,--out", out, "census file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return cmd_classify(gl, graph, as_json);
    if (*roots) return cmd_roots(gl, graph, depth, out);
    if (*weights) return cmd_weights(gl, graph, length, out);
    if (*pack) return cmd_pack(gl, graph, length, format, min_radius, width, out);
    if (*tangency) return cmd_tangency(gl, graph, length, margin, format, out);
    if (*enumerate) return cmd_enum(gl, min_rank, max_rank, strict_only, format, seed, out);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kInconsistency;
  } catch (const OrbitCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOrbitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
