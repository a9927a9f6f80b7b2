#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsvnet {

// Error raised when reading or writing files fails; the CLI maps it to its
// I/O exit code.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Error raised when an iterative numeric routine fails to converge.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDenseCap = 2048;

struct DirectedEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double weight = 0.0;

  friend bool operator==(const DirectedEntry&, const DirectedEntry&) = default;
};

// Sparse weighted digraph / non-Hermitian matrix. Structural zeros are absent
// entries; explicit zero weights are forbidden. Self-loops are allowed.
struct DirectedNetwork {
  std::size_t n = 0;
  std::vector<DirectedEntry> entries;

  // Sorts by (row, col) and checks the type invariants.
  void canonicalize() {
    std::sort(entries.begin(), entries.end(), [](const DirectedEntry& a, const DirectedEntry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const DirectedEntry& e = entries[k];
      if (e.row >= n || e.col >= n) throw std::domain_error("entry index out of range");
      if (!std::isfinite(e.weight)) throw std::domain_error("non-finite weight");
      if (e.weight == 0.0) throw std::domain_error("explicit zero weight");
      if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col)
        throw std::domain_error("duplicate entry");
    }
  }

  std::size_t edge_count() const { return entries.size(); }

  std::size_t self_loop_count() const {
    std::size_t s = 0;
    for (const auto& e : entries)
      if (e.row == e.col) ++s;
    return s;
  }

  friend bool operator==(const DirectedNetwork&, const DirectedNetwork&) = default;
};

struct UndirectedEdge {
  std::size_t u = 0;
  std::size_t v = 0;  // u < v
  double weight = 0.0;

  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
};

// Sparse symmetric weighted graph; no self-loops, no duplicate pairs.
struct UndirectedNetwork {
  std::size_t n = 0;
  std::vector<UndirectedEdge> edges;

  void canonicalize() {
    for (auto& e : edges)
      if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(), [](const UndirectedEdge& a, const UndirectedEdge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const UndirectedEdge& e = edges[k];
      if (e.v >= n) throw std::domain_error("edge index out of range");
      if (e.u == e.v) throw std::domain_error("self-loop in undirected network");
      if (!std::isfinite(e.weight)) throw std::domain_error("non-finite weight");
      if (e.weight == 0.0) throw std::domain_error("explicit zero weight");
      if (k > 0 && edges[k - 1].u == e.u && edges[k - 1].v == e.v)
        throw std::domain_error("duplicate edge");
    }
  }

  friend bool operator==(const UndirectedNetwork&, const UndirectedNetwork&) = default;
};

// Per-component structural statistics. excess = |E| - |V|, at least -1 for a
// connected component.
struct ComponentStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  long long excess = 0;
  std::size_t self_loop_count = 0;
  std::size_t max_degree = 0;
};

// The undirected network viewed as a symmetric directed one; lets spectral
// routines handle both kinds through one path.
inline DirectedNetwork as_directed(const UndirectedNetwork& u) {
  DirectedNetwork d;
  d.n = u.n;
  d.entries.reserve(2 * u.edges.size());
  for (const auto& e : u.edges) {
    d.entries.push_back({e.u, e.v, e.weight});
    d.entries.push_back({e.v, e.u, e.weight});
  }
  d.canonicalize();
  return d;
}

inline std::vector<std::vector<double>> dense_matrix(const DirectedNetwork& net,
                                                     std::size_t cap = kDenseCap) {
  if (net.n > cap) throw std::length_error("network exceeds dense cap");
  std::vector<std::vector<double>> m(net.n, std::vector<double>(net.n, 0.0));
  for (const auto& e : net.entries) m[e.row][e.col] = e.weight;
  return m;
}

inline std::vector<std::vector<double>> dense_matrix(const UndirectedNetwork& net,
                                                     std::size_t cap = kDenseCap) {
  return dense_matrix(as_directed(net), cap);
}

// Restriction of the network to the given row and column index sets, with
// surviving entries re-indexed by position. The result is zero-padded to a
// square of side max(|rows|, |cols|), which leaves the operator norm of the
// rectangular block unchanged.
inline DirectedNetwork minor(const DirectedNetwork& net, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> row_pos(net.n, SIZE_MAX), col_pos(net.n, SIZE_MAX);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= net.n) throw std::domain_error("row index out of range");
    row_pos[rows[k]] = k;
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= net.n) throw std::domain_error("column index out of range");
    col_pos[cols[k]] = k;
  }
  DirectedNetwork out;
  out.n = std::max(rows.size(), cols.size());
  for (const auto& e : net.entries) {
    if (row_pos[e.row] != SIZE_MAX && col_pos[e.col] != SIZE_MAX)
      out.entries.push_back({row_pos[e.row], col_pos[e.col], e.weight});
  }
  out.canonicalize();
  return out;
}

namespace detail {

inline std::string format_weight(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, res.ptr);
}

inline double parse_weight(const std::string& s) {
  double w = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), w);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw io_error("malformed weight: " + s);
  return w;
}

inline std::size_t parse_index(const std::string& s) {
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw io_error("malformed index: " + s);
  return v;
}

}  // namespace detail

// Network file format: header `directed n=<int>` or `undirected n=<int>`,
// then one `i,j,w` line per entry with w in shortest round-trip decimal.

inline void write_network(std::ostream& os, const DirectedNetwork& net) {
  os << "directed n=" << net.n << "\n";
  for (const auto& e : net.entries)
    os << e.row << "," << e.col << "," << detail::format_weight(e.weight) << "\n";
}

inline void write_network(std::ostream& os, const UndirectedNetwork& net) {
  os << "undirected n=" << net.n << "\n";
  for (const auto& e : net.edges)
    os << e.u << "," << e.v << "," << detail::format_weight(e.weight) << "\n";
}

template <class Net>
void save_network(const std::string& path, const Net& net) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  write_network(os, net);
  if (!os) throw io_error("write failed: " + path);
}

namespace detail {

struct ParsedHeader {
  bool directed = false;
  std::size_t n = 0;
};

inline ParsedHeader parse_header(const std::string& line) {
  std::istringstream iss(line);
  std::string kind, nfield;
  iss >> kind >> nfield;
  ParsedHeader h;
  if (kind == "directed")
    h.directed = true;
  else if (kind == "undirected")
    h.directed = false;
  else
    throw io_error("bad network header: " + line);
  if (nfield.rfind("n=", 0) != 0) throw io_error("bad network header: " + line);
  h.n = parse_index(nfield.substr(2));
  return h;
}

template <class OnEntry>
void read_entries(std::istream& is, OnEntry&& on_entry) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw io_error("malformed entry line: " + line);
    on_entry(parse_index(line.substr(0, c1)), parse_index(line.substr(c1 + 1, c2 - c1 - 1)),
             parse_weight(line.substr(c2 + 1)));
  }
}

}  // namespace detail

inline DirectedNetwork load_directed(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  std::string header;
  if (!std::getline(is, header)) throw io_error("empty network file: " + path);
  auto h = detail::parse_header(header);
  if (!h.directed) throw io_error("expected directed network: " + path);
  DirectedNetwork net;
  net.n = h.n;
  detail::read_entries(is, [&](std::size_t i, std::size_t j, double w) {
    net.entries.push_back({i, j, w});
  });
  net.canonicalize();
  return net;
}

inline UndirectedNetwork load_undirected(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  std::string header;
  if (!std::getline(is, header)) throw io_error("empty network file: " + path);
  auto h = detail::parse_header(header);
  if (h.directed) throw io_error("expected undirected network: " + path);
  UndirectedNetwork net;
  net.n = h.n;
  detail::read_entries(is, [&](std::size_t u, std::size_t v, double w) {
    net.edges.push_back({u, v, w});
  });
  net.canonicalize();
  return net;
}

// Header token of a network file, so callers can pick the right loader.
inline bool file_is_directed(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  std::string header;
  if (!std::getline(is, header)) throw io_error("empty network file: " + path);
  return detail::parse_header(header).directed;
}

}  // namespace lsvnet
