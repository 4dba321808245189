#include "rlg/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace rlg {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) parts.push_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

} // namespace

void write_edge_list(std::ostream& out, const RandomLinearGraph& graph) {
  const Index n = graph.size();
  std::ostringstream p;
  p.precision(17);
  p << graph.params.p;
  out << "# n=" << n << " p=" << p.str() << " band=" << graph.params.band
      << " seed=" << graph.seed << '\n';
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (graph.adjacency(u, v)) out << (u + 1) << ' ' << (v + 1) << '\n';
  if (!out) throw std::runtime_error("write_edge_list: stream error");
}

RandomLinearGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  RandomLinearGraph g;

  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (have_header) continue;
      bool got_n = false, got_p = false, got_band = false;
      for (auto tok : split_ws(t.substr(1))) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        bool ok = true;
        if (key == "n") {
          ok = parse_number(val, g.params.n);
          got_n = true;
        } else if (key == "p") {
          ok = parse_number(val, g.params.p);
          got_p = true;
        } else if (key == "band") {
          ok = parse_number(val, g.params.band);
          got_band = true;
        } else if (key == "seed") {
          ok = parse_number(val, g.seed);
        }
        if (!ok) throw ParseError(lineno, "bad value for '" + std::string(key) + "'");
      }
      if (!got_n || !got_p) throw ParseError(lineno, "header needs n= and p=");
      if (!got_band) g.params.band = ModelParams::default_band(g.params.n);
      try {
        g.params.validate();
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
      g.adjacency = AdjacencyMatrix::Zero(g.params.n, g.params.n);
      g.true_order = Permutation::identity(static_cast<std::size_t>(g.params.n));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "edge before '# n= p=' header");
    const auto parts = split_ws(t);
    Index u = 0, v = 0;
    if (parts.size() != 2 || !parse_number(parts[0], u) || !parse_number(parts[1], v)) {
      throw ParseError(lineno, "expected two vertex labels");
    }
    const Index n = g.params.n;
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex label out of range");
    if (u == v) throw ParseError(lineno, "self loop");
    if (g.adjacency(u - 1, v - 1)) throw ParseError(lineno, "duplicate edge");
    g.adjacency(u - 1, v - 1) = 1;
    g.adjacency(v - 1, u - 1) = 1;
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  return g;
}

void write_edge_list(const std::filesystem::path& path, const RandomLinearGraph& graph) {
  auto out = open_out(path);
  write_edge_list(out, graph);
}

RandomLinearGraph read_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_ordering(std::ostream& out, const Permutation& order) {
  for (auto v : order.one_based()) out << v << '\n';
  if (!out) throw std::runtime_error("write_ordering: stream error");
}

Permutation read_ordering(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<Index> labels;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    Index v = 0;
    if (!parse_number(t, v)) throw ParseError(lineno, "expected a vertex label");
    labels.push_back(v);
  }
  try {
    return Permutation::from_one_based(labels);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

void write_ordering(const std::filesystem::path& path, const Permutation& order) {
  auto out = open_out(path);
  write_ordering(out, order);
}

Permutation read_ordering(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ordering(in);
}

Permutation truth_ordering(const RandomLinearGraph& graph) { return graph.true_order.inverse(); }

} // namespace rlg
