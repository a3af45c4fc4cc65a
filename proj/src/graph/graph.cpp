#include "graphweave/graph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphweave/error.hpp"

namespace graphweave {

Adjacency build_adjacency(std::int64_t n, const std::vector<Edge>& edges, bool weighted, bool by_dst) {
  Adjacency a;
  a.offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++a.offsets[(by_dst ? e.dst : e.src) + 1];
  for (std::int64_t v = 0; v < n; ++v) a.offsets[v + 1] += a.offsets[v];
  a.neighbors.resize(edges.size());
  if (weighted) a.weights.resize(edges.size());
  std::vector<std::int64_t> cursor(a.offsets.begin(), a.offsets.end() - 1);
  for (const Edge& e : edges) {
    VertexId key = by_dst ? e.dst : e.src;
    std::int64_t at = cursor[key]++;
    a.neighbors[at] = by_dst ? e.src : e.dst;
    if (weighted) a.weights[at] = e.weight;
  }
  return a;
}

Graph Graph::from_edges(std::int64_t n, const std::vector<Edge>& edges, bool weighted) {
  Graph g;
  g.n_ = n;
  g.weighted_ = weighted;
  g.out_ = build_adjacency(n, edges, weighted, false);
  g.in_ = build_adjacency(n, edges, weighted, true);
  return g;
}

Graph Graph::from_csr(std::int64_t n, Adjacency out, bool weighted) {
  Graph g;
  g.n_ = n;
  g.weighted_ = weighted;
  g.out_ = std::move(out);
  g.in_ = build_adjacency(n, g.edges(), weighted, true);
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(out_.neighbors.size());
  for (VertexId v = 0; v < n_; ++v) {
    for (std::int64_t i = out_.offsets[v]; i < out_.offsets[v + 1]; ++i) {
      out.push_back(Edge{v, out_.neighbors[i], weighted_ ? out_.weights[i] : 1});
    }
  }
  return out;
}

Graph Graph::transposed() const {
  Graph g;
  g.n_ = n_;
  g.weighted_ = weighted_;
  g.out_ = in_;
  g.in_ = out_;
  return g;
}

Graph Graph::symmetrized() const {
  std::vector<Edge> es = edges();
  std::size_t m = es.size();
  es.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) es.push_back(Edge{es[i].dst, es[i].src, es[i].weight});
  return from_edges(n_, es, weighted_);
}

namespace {

[[noreturn]] void parse_error(const std::string& name, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, name + ":" + std::to_string(line) + ": " + msg);
}

bool parse_int(std::string_view& rest, std::int64_t& out) {
  std::size_t i = 0;
  while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r' || rest[i] == ',')) ++i;
  rest.remove_prefix(i);
  if (rest.empty()) return false;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), out);
  if (ec != std::errc()) throw std::invalid_argument("not an integer");
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  if (!rest.empty() && rest[0] != ' ' && rest[0] != '\t' && rest[0] != '\r' && rest[0] != ',') {
    throw std::invalid_argument("not an integer");
  }
  return true;
}

}  // namespace

Graph parse_edge_list(const std::string& text, bool weighted, const std::string& name) {
  std::vector<Edge> edges;
  std::int64_t n = 0;
  std::int64_t header_n = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line[0] == '#' || line[0] == '%') {
      std::istringstream hs{std::string(line.substr(1))};
      std::string word;
      std::int64_t value = 0;
      if (hs >> word >> value && word == "vertices") header_n = value;
      continue;
    }
    std::int64_t vals[3] = {0, 0, 1};
    int count = 0;
    try {
      std::int64_t x = 0;
      while (count < 4 && parse_int(line, x)) {
        if (count < 3) vals[count] = x;
        ++count;
      }
    } catch (const std::invalid_argument&) {
      parse_error(name, line_no, "expected integers, got '" + std::string(line) + "'");
    }
    if (count < 2) parse_error(name, line_no, "expected 'src dst" + std::string(weighted ? " weight'" : "'"));
    if (count > 3 || (count == 3 && !weighted)) {
      parse_error(name, line_no, weighted ? "too many columns" : "unexpected weight column in unweighted edge list");
    }
    if (weighted && count != 3) parse_error(name, line_no, "missing weight");
    if (vals[0] < 0 || vals[1] < 0) {
      throw Error(ErrorKind::NegativeId, name + ":" + std::to_string(line_no) + ": negative vertex id");
    }
    edges.push_back(Edge{vals[0], vals[1], vals[2]});
    n = std::max(n, std::max(vals[0], vals[1]) + 1);
  }
  if (header_n >= 0) {
    if (header_n < n) parse_error(name, 1, "header declares fewer vertices than the edges use");
    n = header_n;
  }
  return Graph::from_edges(n, edges, weighted);
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open graph file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_extension(const std::string& path, const std::string& ext) {
  return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

bool looks_weighted(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::istringstream ls(line);
    std::string tok;
    int cols = 0;
    while (ls >> tok) ++cols;
    return cols >= 3;
  }
  return false;
}

constexpr char kMagic[] = "GWCSR1";

}  // namespace

Graph load_edge_list(const std::string& path, bool weighted) { return parse_edge_list(read_file(path), weighted, path); }

Graph load_graph(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw Error(ErrorKind::IoError, "graph file not found: " + path);
  if (is_binary_graph(path)) return read_binary(path);
  std::string cache = path + ".csr";
  std::error_code ec;
  if (fs::exists(cache, ec) && fs::last_write_time(cache, ec) >= fs::last_write_time(path, ec)) {
    return read_binary(cache);
  }
  std::string text = read_file(path);
  bool weighted = has_extension(path, ".wel") || (!has_extension(path, ".el") && looks_weighted(text));
  return parse_edge_list(text, weighted, path);
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << "# vertices " << g.num_vertices() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.src << ' ' << e.dst;
    if (g.weighted()) out << ' ' << e.weight;
    out << '\n';
  }
}

namespace {

void put_u64(std::ofstream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(const std::string& data, std::size_t& at, const std::string& path) {
  if (at + 8 > data.size()) throw Error(ErrorKind::ParseError, path + ": truncated binary graph");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[at + i])) << (8 * i);
  at += 8;
  return v;
}

}  // namespace

void write_binary(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out.write(kMagic, 6);
  put_u64(out, static_cast<std::uint64_t>(g.num_vertices()));
  put_u64(out, static_cast<std::uint64_t>(g.num_edges()));
  for (std::int64_t o : g.out().offsets) put_u64(out, static_cast<std::uint64_t>(o));
  for (VertexId v : g.out().neighbors) put_u64(out, static_cast<std::uint64_t>(v));
  for (std::int64_t w : g.out().weights) put_u64(out, static_cast<std::uint64_t>(w));
}

bool is_binary_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char head[6] = {};
  in.read(head, 6);
  return in.gcount() == 6 && std::memcmp(head, kMagic, 6) == 0;
}

Graph read_binary(const std::string& path) {
  std::string data = read_file(path);
  if (data.size() < 6 || data.compare(0, 6, kMagic) != 0) {
    throw Error(ErrorKind::ParseError, path + ": missing GWCSR1 header");
  }
  std::size_t at = 6;
  auto n = static_cast<std::int64_t>(get_u64(data, at, path));
  auto m = static_cast<std::int64_t>(get_u64(data, at, path));
  std::size_t unweighted = 6 + 16 + 8 * static_cast<std::size_t>(n + 1 + m);
  bool weighted = data.size() == unweighted + 8 * static_cast<std::size_t>(m) && m > 0;
  if (data.size() != unweighted && !weighted) throw Error(ErrorKind::ParseError, path + ": bad binary graph size");
  Adjacency a;
  a.offsets.resize(n + 1);
  for (auto& o : a.offsets) o = static_cast<std::int64_t>(get_u64(data, at, path));
  a.neighbors.resize(m);
  for (auto& v : a.neighbors) {
    v = static_cast<VertexId>(get_u64(data, at, path));
    if (v < 0 || v >= n) throw Error(ErrorKind::ParseError, path + ": neighbor id out of range");
  }
  if (weighted) {
    a.weights.resize(m);
    for (auto& w : a.weights) w = static_cast<std::int64_t>(get_u64(data, at, path));
  }
  if (a.offsets.front() != 0 || a.offsets.back() != m || !std::is_sorted(a.offsets.begin(), a.offsets.end())) {
    throw Error(ErrorKind::ParseError, path + ": offsets are not monotone");
  }
  return Graph::from_csr(n, std::move(a), weighted);
}

}  // namespace graphweave
