#include "graphdyn/graph_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphdyn {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line,
                             const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string graph_to_string(const SampledGraph& graph) {
  std::string out = "graphdyn-graph v1\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=%d rho=%.17g seed=%" PRIu64 " variant=%s\n",
                graph.n, graph.rho, graph.seed, to_string(graph.variant));
  out += buf;
  for (int i = 0; i < graph.n; ++i) {
    for (const auto j : graph.row(i)) {
      if (j < static_cast<std::uint32_t>(i)) continue;  // emit each pair once
      std::snprintf(buf, sizeof buf, "%d %u\n", i + 1, j + 1);
      out += buf;
    }
  }
  return out;
}

void save_graph(const SampledGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::string text = graph_to_string(graph);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

SampledGraph graph_from_string(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line != "graphdyn-graph v1")
    parse_fail(origin, 1, "bad header, expected 'graphdyn-graph v1'");

  ++lineno;
  if (!std::getline(in, line)) parse_fail(origin, lineno, "missing metadata line");
  SampledGraph graph;
  char variant_buf[32];
  std::uint64_t seed = 0;
  double rho = 0.0;
  int n = 0;
  if (std::sscanf(line.c_str(), "n=%d rho=%lf seed=%" SCNu64 " variant=%31s", &n,
                  &rho, &seed, variant_buf) != 4)
    parse_fail(origin, lineno, "malformed metadata line");
  if (n < 2) parse_fail(origin, lineno, "n must be >= 2");
  if (!(rho > 0.0 && rho <= 1.0)) parse_fail(origin, lineno, "rho must lie in (0,1]");
  graph.n = n;
  graph.rho = rho;
  graph.seed = seed;
  try {
    graph.variant = variant_from_string(variant_buf);
  } catch (const std::exception&) {
    parse_fail(origin, lineno, std::string("unknown variant '") + variant_buf + "'");
  }

  std::vector<std::vector<std::uint32_t>> adj(n);
  long long prev_i = 0, prev_j = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) parse_fail(origin, lineno, "empty edge line");
    long long i = 0, j = 0;
    char extra;
    if (std::sscanf(line.c_str(), "%lld %lld %c", &i, &j, &extra) != 2)
      parse_fail(origin, lineno, "malformed edge line");
    if (i < 1 || j < 1 || i > n || j > n)
      parse_fail(origin, lineno, "edge endpoint out of range");
    if (i > j) parse_fail(origin, lineno, "edges must satisfy i <= j (canonical order)");
    if (i < prev_i || (i == prev_i && j <= prev_j))
      parse_fail(origin, lineno, "edges must be strictly lexicographically sorted");
    prev_i = i;
    prev_j = j;
    adj[i - 1].push_back(static_cast<std::uint32_t>(j - 1));
    if (i != j) adj[j - 1].push_back(static_cast<std::uint32_t>(i - 1));
  }

  graph.offsets.resize(n + 1, 0);
  for (int i = 0; i < n; ++i) graph.offsets[i + 1] = graph.offsets[i] + adj[i].size();
  graph.neighbors.reserve(graph.offsets[n]);
  for (int i = 0; i < n; ++i) {
    // rows collect lower neighbors first (ascending), then j >= i ascending,
    // so each row is already sorted
    graph.neighbors.insert(graph.neighbors.end(), adj[i].begin(), adj[i].end());
  }
  return graph;
}

SampledGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_string(buf.str(), path);
}

SampledGraph load_graph(const std::string& path, const GraphonSpec& spec) {
  SampledGraph graph = load_graph(path);
  attach_node_data(graph, spec);
  return graph;
}

}  // namespace graphdyn
