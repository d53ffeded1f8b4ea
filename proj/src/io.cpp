#include "sgp/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "sgp/error.hpp"

namespace sgp::io {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    if (pos >= s.size()) break;
    auto end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != '\r') ++end;
    tokens.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  // from_chars rejects a leading '+', which some writers emit.
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view token, std::size_t line_no) {
  return parse_number<std::size_t>(token, line_no);
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw Error(ErrorCode::Io, "cannot format number");
  return std::string(buf.data(), ptr);
}

void write_matrix_market(std::ostream& out, const SignedGraph& g) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.vertex_count() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  // Canonical order (i asc, j asc) with i < j is column-major order of the
  // lower triangle.
  for (const auto& e : g.edges()) {
    out << (e.j + 1) << ' ' << (e.i + 1) << ' ' << format_double(e.w) << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write failed");
}

SignedGraph read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty input");
  ++line_no;
  const auto banner = split_ws(line);
  if (banner.size() != 5 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix") {
    throw Error(ErrorCode::Parse, "missing %%MatrixMarket matrix banner");
  }
  if (lower(banner[2]) != "coordinate") throw Error(ErrorCode::Parse, "only coordinate format is supported");
  const auto field = lower(banner[3]);
  if (field != "real" && field != "integer") throw Error(ErrorCode::Parse, "unsupported field '" + field + "'");
  const auto symmetry = lower(banner[4]);
  const bool general = symmetry == "general";
  if (!general && symmetry != "symmetric") {
    throw Error(ErrorCode::Parse, "unsupported symmetry '" + symmetry + "'");
  }

  std::vector<std::string_view> size_tokens;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    size_tokens = split_ws(t);
    break;
  }
  if (size_tokens.size() != 3) throw Error(ErrorCode::Parse, "missing size line");
  const auto rows = parse_index(size_tokens[0], line_no);
  const auto cols = parse_index(size_tokens[1], line_no);
  const auto nnz = parse_index(size_tokens[2], line_no);
  if (rows != cols) throw Error(ErrorCode::Parse, "matrix is not square");
  const std::size_t n = rows;

  std::map<std::pair<std::size_t, std::size_t>, double> entries;
  std::size_t read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    const auto tokens = split_ws(t);
    if (tokens.size() != 3) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'row col value'");
    const auto r = parse_index(tokens[0], line_no);
    const auto c = parse_index(tokens[1], line_no);
    const auto v = parse_number<double>(tokens[2], line_no);
    if (r == 0 || c == 0 || r > n || c > n) {
      throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(line_no) + ": index outside [1, " + std::to_string(n) + "]");
    }
    auto key = general ? std::pair{r - 1, c - 1} : std::pair{std::min(r, c) - 1, std::max(r, c) - 1};
    if (!entries.emplace(key, v).second) {
      throw Error(ErrorCode::DuplicateEdge, "line " + std::to_string(line_no) + ": repeated entry");
    }
    ++read;
  }
  if (read != nnz) throw Error(ErrorCode::Parse, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(read));
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (!t.empty() && t.front() != '%') throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": trailing data");
  }

  std::vector<Edge> edges;
  if (!general) {
    for (const auto& [key, v] : entries) edges.push_back({key.first, key.second, v});
    return graph_from_edges(n, std::move(edges));
  }

  for (const auto& [key, v] : entries) {
    const auto [i, j] = key;
    if (i == j) {
      edges.push_back({i, j, v});  // rejected as a self-loop below
      continue;
    }
    if (i > j) {
      if (!entries.contains({j, i})) {
        throw Error(ErrorCode::Asymmetric, "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") has no transpose");
      }
      continue;
    }
    const auto it = entries.find({j, i});
    const double a = v;
    const double b = it == entries.end() ? 0.0 : it->second;
    if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
      throw Error(ErrorCode::Asymmetric, "entries (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") and transpose differ");
    }
    const double w = 0.5 * (a + b);
    if (w != 0.0) edges.push_back({i, j, w});
  }
  return graph_from_edges(n, std::move(edges));
}

void write_edge_csv(std::ostream& out, const SignedGraph& g) {
  out << "i,j,w\n";
  for (const auto& e : g.edges()) out << e.i << ',' << e.j << ',' << format_double(e.w) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed");
}

SignedGraph read_edge_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty input");
  ++line_no;
  std::string header;
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') header.push_back(c);
  }
  if (lower(header) != "i,j,w") throw Error(ErrorCode::Parse, "expected header 'i,j,w'");

  std::vector<Edge> edges;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    std::array<std::string_view, 3> fields{};
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = t.find(',', start);
      if (count == fields.size()) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": too many fields");
      fields[count++] = trim(t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != 3) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 3 fields");
    Edge e{parse_index(fields[0], line_no), parse_index(fields[1], line_no), parse_number<double>(fields[2], line_no)};
    n = std::max({n, e.i + 1, e.j + 1});
    edges.push_back(e);
  }
  return graph_from_edges(n, std::move(edges));
}

namespace {

enum class Format { MatrixMarket, EdgeCsv };

Format format_for(const std::filesystem::path& path) {
  const auto ext = lower(path.extension().string());
  if (ext == ".mtx") return Format::MatrixMarket;
  if (ext == ".csv") return Format::EdgeCsv;
  throw Error(ErrorCode::InvalidArgument, "unknown graph file extension '" + ext + "' (use .mtx or .csv)");
}

}  // namespace

SignedGraph load_graph(const std::filesystem::path& path) {
  const auto format = format_for(path);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return format == Format::MatrixMarket ? read_matrix_market(in) : read_edge_csv(in);
}

void save_graph(const std::filesystem::path& path, const SignedGraph& g) {
  const auto format = format_for(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  if (format == Format::MatrixMarket) {
    write_matrix_market(out, g);
  } else {
    write_edge_csv(out, g);
  }
}

}  // namespace sgp::io
