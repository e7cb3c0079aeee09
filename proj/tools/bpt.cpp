// Command-line front end: generate trees, build and persist indexes, answer
// queries, report space, and run the benchmark sweeps.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpt/bpt.hpp"

namespace {

std::string read_parens(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string out;
  for (char c : ss.str()) {
    if (c == '(' || c == ')') {
      out.push_back(c);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::runtime_error(path + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

std::string show(const std::optional<bpt::position_t>& v) { return v ? std::to_string(*v) : "none"; }
template <class T>
std::string show(const T& v) {
  return std::to_string(v);
}

bpt::Pattern parse_pattern(const std::string& s) {
  if (s == "0") return bpt::Pattern::zero;
  if (s == "1") return bpt::Pattern::one;
  if (s == "10") return bpt::Pattern::pair10;
  throw std::invalid_argument("pattern must be 0, 1 or 10");
}

using Args = std::vector<std::string>;
using Handler = std::function<std::string(const bpt::SuccinctTree&, const Args&)>;

std::uint64_t u(const Args& a, std::size_t k) { return std::stoull(a.at(k)); }
std::int64_t s(const Args& a, std::size_t k) { return std::stoll(a.at(k)); }

const std::map<std::string, std::pair<std::size_t, Handler>>& handlers() {
  using T = bpt::SuccinctTree;
  static const std::map<std::string, std::pair<std::size_t, Handler>> h{
      {"excess", {1, [](const T& t, const Args& a) { return show(t.excess(u(a, 0))); }}},
      {"fwdsearch", {2, [](const T& t, const Args& a) { return show(t.fwdsearch(u(a, 0), s(a, 1))); }}},
      {"bwdsearch", {2, [](const T& t, const Args& a) { return show(t.bwdsearch(u(a, 0), s(a, 1))); }}},
      {"rmq", {2, [](const T& t, const Args& a) { return show(t.rmq(u(a, 0), u(a, 1))); }}},
      {"rMq", {2, [](const T& t, const Args& a) { return show(t.rMq(u(a, 0), u(a, 1))); }}},
      {"mincount", {2, [](const T& t, const Args& a) { return show(t.mincount(u(a, 0), u(a, 1))); }}},
      {"minselect", {3, [](const T& t, const Args& a) { return show(t.minselect(u(a, 0), u(a, 1), u(a, 2))); }}},
      {"rank", {2, [](const T& t, const Args& a) { return show(t.rank(parse_pattern(a[0]), u(a, 1))); }}},
      {"select", {2, [](const T& t, const Args& a) { return show(t.select(parse_pattern(a[0]), u(a, 1))); }}},
      {"close", {1, [](const T& t, const Args& a) { return show(t.close(u(a, 0))); }}},
      {"open", {1, [](const T& t, const Args& a) { return show(t.open(u(a, 0))); }}},
      {"enclose", {1, [](const T& t, const Args& a) { return show(t.enclose(u(a, 0))); }}},
      {"parent", {1, [](const T& t, const Args& a) { return show(t.parent(u(a, 0))); }}},
      {"isleaf", {1, [](const T& t, const Args& a) { return std::string(t.isleaf(u(a, 0)) ? "true" : "false"); }}},
      {"isancestor",
       {2, [](const T& t, const Args& a) { return std::string(t.isancestor(u(a, 0), u(a, 1)) ? "true" : "false"); }}},
      {"depth", {1, [](const T& t, const Args& a) { return show(t.depth(u(a, 0))); }}},
      {"subtree", {1, [](const T& t, const Args& a) { return show(t.subtree(u(a, 0))); }}},
      {"first_child", {1, [](const T& t, const Args& a) { return show(t.first_child(u(a, 0))); }}},
      {"last_child", {1, [](const T& t, const Args& a) { return show(t.last_child(u(a, 0))); }}},
      {"next_sibling", {1, [](const T& t, const Args& a) { return show(t.next_sibling(u(a, 0))); }}},
      {"prev_sibling", {1, [](const T& t, const Args& a) { return show(t.prev_sibling(u(a, 0))); }}},
      {"preorder", {1, [](const T& t, const Args& a) { return show(t.preorder(u(a, 0))); }}},
      {"preorderselect", {1, [](const T& t, const Args& a) { return show(t.preorderselect(u(a, 0))); }}},
      {"postorder", {1, [](const T& t, const Args& a) { return show(t.postorder(u(a, 0))); }}},
      {"postorderselect", {1, [](const T& t, const Args& a) { return show(t.postorderselect(u(a, 0))); }}},
      {"levelancestor", {2, [](const T& t, const Args& a) { return show(t.levelancestor(u(a, 0), u(a, 1))); }}},
      {"levelnext", {1, [](const T& t, const Args& a) { return show(t.levelnext(u(a, 0))); }}},
      {"levelprev", {1, [](const T& t, const Args& a) { return show(t.levelprev(u(a, 0))); }}},
      {"levelleftmost", {1, [](const T& t, const Args& a) { return show(t.levelleftmost(u(a, 0))); }}},
      {"levelrightmost", {1, [](const T& t, const Args& a) { return show(t.levelrightmost(u(a, 0))); }}},
      {"lca", {2, [](const T& t, const Args& a) { return show(t.lca(u(a, 0), u(a, 1))); }}},
      {"deepestnode", {1, [](const T& t, const Args& a) { return show(t.deepestnode(u(a, 0))); }}},
      {"height", {1, [](const T& t, const Args& a) { return show(t.height(u(a, 0))); }}},
      {"degree", {1, [](const T& t, const Args& a) { return show(t.degree(u(a, 0))); }}},
      {"child", {2, [](const T& t, const Args& a) { return show(t.child(u(a, 0), u(a, 1))); }}},
      {"childrank", {1, [](const T& t, const Args& a) { return show(t.childrank(u(a, 0))); }}},
      {"leafrank", {1, [](const T& t, const Args& a) { return show(t.leafrank(u(a, 0))); }}},
      {"leafselect", {1, [](const T& t, const Args& a) { return show(t.leafselect(u(a, 0))); }}},
      {"numleaves", {1, [](const T& t, const Args& a) { return show(t.numleaves(u(a, 0))); }}},
      {"leftmostleaf", {1, [](const T& t, const Args& a) { return show(t.leftmostleaf(u(a, 0))); }}},
      {"rightmostleaf", {1, [](const T& t, const Args& a) { return show(t.rightmostleaf(u(a, 0))); }}},
  };
  return h;
}

void print_stats(const bpt::SuccinctTree& t, const std::string& format) {
  const bpt::SpaceReport r = bpt::measure(t);
  if (format == "json") {
    nlohmann::json j;
    j["nodes"] = r.nodes;
    j["config"] = {{"beta", t.config().beta},
                   {"block", t.config().block},
                   {"chunk", t.config().chunk},
                   {"store_counts", t.config().store_counts}};
    for (const auto& l : r.lines) j["components"].push_back({{"name", l.name}, {"bits", l.bits}, {"bpn", l.bpn}});
    j["total_bits"] = r.total_with_counts;
    j["total_bpn"] = r.bpn_with_counts();
    j["total_bits_without_counts"] = r.total_without_counts;
    j["total_bpn_without_counts"] = r.bpn_without_counts();
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "nodes " << r.nodes << "  beta " << t.config().beta << "  block " << t.config().block << "  chunk "
            << t.config().chunk << '\n';
  std::cout << std::left << std::setw(20) << "component" << std::right << std::setw(14) << "bits" << std::setw(10)
            << "bpn" << '\n';
  auto line = [](const std::string& name, std::uint64_t bits, double bpn) {
    std::cout << std::left << std::setw(20) << name << std::right << std::setw(14) << bits << std::setw(10)
              << std::fixed << std::setprecision(4) << bpn << '\n';
  };
  for (const auto& l : r.lines) line(l.name, l.bits, l.bpn);
  line("total", r.total_with_counts, r.bpn_with_counts());
  line("total w/o counts", r.total_without_counts, r.bpn_without_counts());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Succinct balanced-parentheses trees"};
  app.require_subcommand(1);

  bpt::Config config;
  bool no_counts = false;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--beta", config.beta, "bucket size in parentheses")->capture_default_str();
    sub->add_option("--block", config.block, "rmM-tree block size")->capture_default_str();
    sub->add_option("--chunk", config.chunk, "lookup chunk width (8 or 16)")->capture_default_str();
    sub->add_flag("--no-counts", no_counts, "omit min-count fields");
  };

  std::string input, index, out, kind = "uniform", mode = "traversal", csv, format = "text";
  std::uint64_t n = 1000, seed = 1, sample_min = 200'000, pairs = 200'000;
  std::uint32_t percentiles = 100;
  double p = 0.0;
  std::vector<std::string> query;

  auto* gen = app.add_subcommand("generate", "write a random or shaped parenthesis file");
  gen->add_option("--kind", kind, "uniform, path, star, caterpillar or binary")->capture_default_str();
  gen->add_option("--n", n, "node count")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out, "output file (stdout if omitted)");

  auto* build = app.add_subcommand("build", "build an index from a parenthesis file");
  build->add_option("--input", input)->required();
  build->add_option("--index", index, "index file to write")->required();
  add_config(build);

  auto* q = app.add_subcommand("query", "answer one operation on an index");
  q->add_option("--index", index)->required();
  q->add_option("op", query, "operation name followed by its arguments")->required();

  auto* stats = app.add_subcommand("stats", "report space per component");
  stats->add_option("--index", index);
  stats->add_option("--input", input, "build in memory from a parenthesis file instead");
  stats->add_option("--format", format, "text or json")->capture_default_str();
  add_config(stats);

  auto* bench = app.add_subcommand("bench", "time operations and write CSV rows");
  bench->add_option("--index", index);
  bench->add_option("--input", input, "build in memory from a parenthesis file instead");
  bench->add_option("--mode", mode, "traversal, rmq or op-latency")->capture_default_str();
  bench->add_option("--p", p, "descent probability")->capture_default_str();
  bench->add_option("--sample-min", sample_min)->capture_default_str();
  bench->add_option("--pairs", pairs)->capture_default_str();
  bench->add_option("--percentiles", percentiles)->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_option("--csv", csv, "CSV output file (stdout if omitted)");
  add_config(bench);

  CLI11_PARSE(app, argc, argv);
  config.store_counts = !no_counts;

  auto open_tree = [&]() {
    if (!index.empty()) return bpt::SuccinctTree::load(index);
    if (!input.empty()) return bpt::SuccinctTree::from_string(read_parens(input), config);
    throw std::invalid_argument("either --index or --input is required");
  };

  try {
    if (*gen) {
      const std::string text = bpt::gen::make(bpt::gen::parse_kind(kind), n, seed);
      if (out.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream f(out, std::ios::binary);
        f << text << '\n';
        if (!f) throw std::runtime_error("cannot write " + out);
      }
    } else if (*build) {
      const auto t = bpt::SuccinctTree::from_string(read_parens(input), config);
      t.save(index);
      std::cout << "built " << t.nodes() << " nodes in " << t.num_buckets() << " buckets\n";
    } else if (*q) {
      const auto t = bpt::SuccinctTree::load(index);
      const auto it = handlers().find(query[0]);
      if (it == handlers().end()) throw std::invalid_argument("unknown operation '" + query[0] + "'");
      const Args args(query.begin() + 1, query.end());
      if (args.size() != it->second.first) {
        throw std::invalid_argument(query[0] + " takes " + std::to_string(it->second.first) + " argument(s)");
      }
      std::cout << it->second.second(t, args) << '\n';
    } else if (*stats) {
      print_stats(open_tree(), format);
    } else if (*bench) {
      const auto t = open_tree();
      bpt::bench::Spec spec;
      spec.mode = bpt::bench::parse_mode(mode);
      spec.p = p;
      spec.sample_min = sample_min;
      spec.pairs = pairs;
      spec.seed = seed;
      spec.percentiles = percentiles;
      const auto rows = bpt::bench::run(t, spec);
      if (csv.empty()) {
        bpt::bench::write_csv(std::cout, rows);
      } else {
        std::ofstream f(csv);
        bpt::bench::write_csv(f, rows);
        if (!f) throw std::runtime_error("cannot write " + csv);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
