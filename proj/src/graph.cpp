#include "radiomis/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "radiomis/rng.hpp"

namespace radiomis {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u == e.v) {
      throw GraphError("self-loop at node " + std::to_string(e.u));
    }
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has an endpoint >= node count " + std::to_string(node_count_));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw GraphError("duplicate edge (" + std::to_string(dup->u) + ", " +
                     std::to_string(dup->v) + ")");
  }

  offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so each adjacency row comes out sorted too.
  for (const Edge& e : edges_) adjacency_[fill[e.u]++] = e.v;
  for (const Edge& e : edges_) adjacency_[fill[e.v]++] = e.u;
  for (std::size_t v = 0; v < node_count_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count_ || v >= node_count_) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::size_t max_degree(const Graph& g) noexcept {
  std::size_t best = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

Graph generate_matching_lower_bound(std::size_t n) {
  if (n < 4 || n % 4 != 0) {
    throw GraphError("matching lower-bound graph needs a positive multiple of 4 nodes, got " +
                     std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(n / 4);
  for (std::size_t i = 0; i < n / 4; ++i) {
    edges.push_back({static_cast<NodeId>(2 * i), static_cast<NodeId>(2 * i + 1)});
  }
  return Graph(n, std::move(edges));
}

Graph generate_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw GraphError("edge probability must lie in [0, 1]");
  }
  // Stream id far outside the node-id range so graph randomness never aliases
  // a protocol stream that uses the same seed.
  NodeRng rng(seed, 0xFFFF'FFFF'0000'0001ULL);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) {
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_star(std::size_t n) {
  if (n == 0) throw GraphError("star needs at least one node");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({0, static_cast<NodeId>(v)});
  return Graph(n, std::move(edges));
}

Graph generate_clique(std::size_t n) {
  if (n == 0) throw GraphError("clique needs at least one node");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_path(std::size_t n) {
  if (n == 0) throw GraphError("path needs at least one node");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) {
    edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(v + 1)});
  }
  return Graph(n, std::move(edges));
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::size_t parse_size(std::string_view s, std::string_view spec) {
  std::size_t value = 0;
  if (!parse_number(s, value) || value == 0) {
    throw GraphError("bad node count in generator spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  GeneratorSpec spec;
  const std::string_view kind = parts[0];
  if (kind == "gnp") {
    if (parts.size() != 3) throw GraphError("expected gnp:n:p, got '" + std::string(text) + "'");
    spec.family = Family::kGnp;
    spec.n = parse_size(parts[1], text);
    std::string p_text(parts[2]);
    std::istringstream in(p_text);
    in >> spec.p;
    if (!in || !in.eof() || !(spec.p >= 0.0 && spec.p <= 1.0)) {
      throw GraphError("bad edge probability in '" + std::string(text) + "'");
    }
    return spec;
  }
  if (parts.size() != 2) throw GraphError("bad generator spec '" + std::string(text) + "'");
  if (kind == "matching") {
    spec.family = Family::kMatching;
  } else if (kind == "star") {
    spec.family = Family::kStar;
  } else if (kind == "clique") {
    spec.family = Family::kClique;
  } else if (kind == "path") {
    spec.family = Family::kPath;
  } else {
    throw GraphError("unknown generator '" + std::string(kind) + "'");
  }
  spec.n = parse_size(parts[1], text);
  if (spec.family == Family::kMatching && spec.n % 4 != 0) {
    throw GraphError("matching:n needs n to be a multiple of 4");
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  switch (family) {
    case Family::kGnp: {
      std::ostringstream out;
      out << "gnp:" << n << ':' << p;
      return out.str();
    }
    case Family::kMatching: return "matching:" + std::to_string(n);
    case Family::kStar: return "star:" + std::to_string(n);
    case Family::kClique: return "clique:" + std::to_string(n);
    case Family::kPath: return "path:" + std::to_string(n);
  }
  return {};
}

Graph GeneratorSpec::generate(std::uint64_t seed) const {
  switch (family) {
    case Family::kGnp: return generate_gnp(n, p, seed);
    case Family::kMatching: return generate_matching_lower_bound(n);
    case Family::kStar: return generate_star(n);
    case Family::kClique: return generate_clique(n);
    case Family::kPath: return generate_path(n);
  }
  throw GraphError("unknown generator family");
}

Graph load_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(" \t") != std::string_view::npos) return true;
    }
    return false;
  };
  auto fields = [](std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  };

  std::string_view line;
  if (!next_line(line)) throw GraphError("missing header line", 1);
  auto header = fields(line);
  std::size_t n = 0;
  std::size_t m = 0;
  if (header.size() != 2 || !parse_number(header[0], n) || !parse_number(header[1], m) ||
      n == 0) {
    throw GraphError("malformed header, expected \"n m\"", line_no);
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  while (next_line(line)) {
    if (edges.size() == m) throw GraphError("more edge lines than the header's m", line_no);
    auto f = fields(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (f.size() != 2 || !parse_number(f[0], u) || !parse_number(f[1], v)) {
      throw GraphError("malformed edge line, expected \"u v\"", line_no);
    }
    if (u >= n || v >= n) throw GraphError("endpoint out of range [0, n)", line_no);
    if (u == v) throw GraphError("self-loop", line_no);
    if (u > v) std::swap(u, v);
    if (!seen.insert(u * n + v).second) throw GraphError("duplicate edge", line_no);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (edges.size() != m) {
    throw GraphError("header declares " + std::to_string(m) + " edges but found " +
                         std::to_string(edges.size()),
                     line_no + 1);
  }
  return Graph(n, std::move(edges));
}

std::string save_edge_list(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open edge list '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_edge_list(buffer.str());
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write edge list '" + path + "'");
  out << save_edge_list(g);
}

}  // namespace radiomis
