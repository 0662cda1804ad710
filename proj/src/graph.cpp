#include "pprloc/graph.hpp"

#include "pprloc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace pprloc {

namespace {

std::optional<long long> as_integer(const std::string& s) {
  long long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return value;
}

}  // namespace

std::size_t DanglingIndicator::count() const {
  return static_cast<std::size_t>(std::count(d.begin(), d.end(), 1));
}

void canonical_sort(std::vector<std::string>& labels) {
  std::vector<long long> keys;
  keys.reserve(labels.size());
  for (const auto& l : labels) {
    auto v = as_integer(l);
    if (!v) {
      std::sort(labels.begin(), labels.end());
      return;
    }
    keys.push_back(*v);
  }
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // "01" and "1" are distinct labels with the same value; fall back to text.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return labels[a] < labels[b];
  });
  std::vector<std::string> sorted;
  sorted.reserve(labels.size());
  for (auto i : order) sorted.push_back(std::move(labels[i]));
  labels = std::move(sorted);
}

DirectedGraph::DirectedGraph(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("no nodes");
  canonical_sort(labels_);
  std::map<std::string_view, NodeIndex> index;
  for (NodeIndex i = 0; i < labels_.size(); ++i) {
    if (!index.emplace(labels_[i], i).second)
      throw DomainError("duplicate node label '" + labels_[i] + "'");
  }
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) throw DomainError("edge references unknown node '" + l + "'");
    return it->second;
  };
  edges_.reserve(edges.size());
  for (const auto& [s, t] : edges) edges_.emplace_back(lookup(s), lookup(t));
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  out_.resize(labels_.size());
  for (const auto& [s, t] : edges_) out_[s].push_back(t);
}

std::optional<NodeIndex> DirectedGraph::find(std::string_view label) const {
  for (NodeIndex i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

AdjacencyView DirectedGraph::adjacency() const {
  const auto n = node_count();
  AdjacencyView view;
  view.n = n;
  view.a.assign(n * n, 0);
  view.kout.assign(n, 0);
  for (const auto& [s, t] : edges_) {
    view.a[s * n + t] = 1;
    ++view.kout[s];
  }
  return view;
}

DanglingIndicator DirectedGraph::dangling_indicator() const {
  DanglingIndicator ind;
  ind.d.resize(node_count());
  for (NodeIndex i = 0; i < node_count(); ++i) ind.d[i] = out_[i].empty() ? 1 : 0;
  return ind;
}

DirectedGraph parse_edge_list(std::string_view text) {
  std::vector<std::string> labels;
  std::map<std::string, bool, std::less<>> seen;
  std::vector<std::pair<std::string, std::string>> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.size() != 2)
      throw ParseError("expected 2 tokens \"src dst\", found " + std::to_string(tokens.size()),
                       line_no);
    for (const auto& tok : tokens)
      if (seen.emplace(tok, true).second) labels.push_back(tok);
    edges.emplace_back(tokens[0], tokens[1]);
    if (end == text.size()) break;
  }
  if (labels.empty()) throw ParseError("no nodes");
  return DirectedGraph(std::move(labels), edges);
}

DirectedGraph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  auto token = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError("node labels must be strings or integers");
  };
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
    throw ParseError("graph JSON needs a \"nodes\" array");
  std::vector<std::string> labels;
  for (const auto& v : doc["nodes"]) labels.push_back(token(v));
  if (labels.empty()) throw ParseError("no nodes");

  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a [source, target] pair");
      edges.emplace_back(token(e[0]), token(e[1]));
    }
  }
  return DirectedGraph(std::move(labels), edges);
}

std::string to_edge_list(const DirectedGraph& g) {
  std::string out;
  for (const auto& [s, t] : g.edges()) {
    out += g.label(s);
    out += ' ';
    out += g.label(t);
    out += '\n';
  }
  return out;
}

std::string to_graph_json(const DirectedGraph& g) {
  nlohmann::json doc;
  doc["nodes"] = g.labels();
  auto edges = nlohmann::json::array();
  for (const auto& [s, t] : g.edges()) edges.push_back({g.label(s), g.label(t)});
  doc["edges"] = std::move(edges);
  return doc.dump();
}

DirectedGraph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (format == GraphFormat::Auto) {
    bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    format = json ? GraphFormat::Json : GraphFormat::EdgeList;
  }
  return format == GraphFormat::Json ? parse_graph_json(buf.str()) : parse_edge_list(buf.str());
}

}  // namespace pprloc
