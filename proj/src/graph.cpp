// Copyright 2026 The DTIM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dtim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>
#include <string_view>

#include "dtim/errors.hpp"

namespace dtim {

SocialGraph SocialGraph::FromEdges(std::size_t node_count,
                                   std::vector<Edge> edges,
                                   std::vector<std::uint64_t> original_ids) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw DomainError("node count exceeds 32-bit id range");
  }
  if (original_ids.empty()) {
    original_ids.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) original_ids[i] = i;
  } else if (original_ids.size() != node_count) {
    throw DomainError("original id table size does not match node count");
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.source >= node_count || e.destination >= node_count) {
      throw DomainError("edge endpoint out of range");
    }
    if (e.source == e.destination) throw DomainError("self-loop in edge set");
    if (i > 0 && edges[i - 1] == e) throw DomainError("duplicate edge");
  }

  SocialGraph g;
  g.original_ids_ = std::move(original_ids);
  g.edges_ = std::move(edges);
  const std::size_t n = node_count;
  const std::size_t m = g.edges_.size();

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.destination + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.out_targets_.resize(m);
  g.in_sources_.resize(m);
  g.in_edge_ids_.resize(m);
  std::vector<EdgeId> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  // Edges are sorted by source, so filling in-slots in edge order leaves every
  // in-adjacency sorted ascending.
  for (EdgeId id = 0; id < m; ++id) {
    const Edge& e = g.edges_[id];
    g.out_targets_[id] = e.destination;
    const EdgeId slot = cursor[e.destination]++;
    g.in_sources_[slot] = e.source;
    g.in_edge_ids_[slot] = id;
  }
  return g;
}

std::optional<EdgeId> SocialGraph::find_edge(NodeId source,
                                             NodeId destination) const {
  if (source >= node_count()) return std::nullopt;
  auto out = out_neighbors(source);
  auto it = std::lower_bound(out.begin(), out.end(), destination);
  if (it == out.end() || *it != destination) return std::nullopt;
  return static_cast<EdgeId>(out_offsets_[source] + (it - out.begin()));
}

std::optional<NodeId> SocialGraph::find_node(std::uint64_t original_id) const {
  // Ids produced by LoadEdgeList are sorted; fall back to a scan otherwise.
  if (std::is_sorted(original_ids_.begin(), original_ids_.end())) {
    auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(),
                               original_id);
    if (it != original_ids_.end() && *it == original_id) {
      return static_cast<NodeId>(it - original_ids_.begin());
    }
    return std::nullopt;
  }
  auto it = std::find(original_ids_.begin(), original_ids_.end(), original_id);
  if (it == original_ids_.end()) return std::nullopt;
  return static_cast<NodeId>(it - original_ids_.begin());
}

std::uint64_t SocialGraph::content_hash() const {
  std::ostringstream out;
  out << node_count() << ' ' << edge_count() << '\n';
  for (std::uint64_t id : original_ids_) out << id << '\n';
  WriteEdgeList(*this, out);
  return Fnv1a64(out.str());
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::uint64_t ParseId(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      token.empty()) {
    throw ParseError(line_no, "invalid node id '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

EdgeListLoad LoadEdgeList(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  EdgeListLoad result;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = Trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    std::size_t sep = rest.find_first_of(" \t,");
    if (sep == std::string_view::npos) {
      throw ParseError(line_no, "expected two node ids");
    }
    std::string_view first = rest.substr(0, sep);
    std::string_view second = rest.substr(sep + 1);
    second = Trim(second);
    if (!second.empty() && second.front() == ',') {
      second = Trim(second.substr(1));
    }
    if (second.find_first_of(" \t,") != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two node ids");
    }
    std::uint64_t u = ParseId(first, line_no);
    std::uint64_t v = ParseId(second, line_no);
    if (u == v) {
      ++result.self_loops_dropped;
      continue;
    }
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw EmptyGraphError("edge list contains no edges");

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&ids](std::uint64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.push_back({dense(u), dense(v)});
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  result.duplicates_dropped = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  const std::size_t n = ids.size();
  result.graph = SocialGraph::FromEdges(n, std::move(edges), std::move(ids));
  return result;
}

EdgeListLoad LoadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return LoadEdgeList(in);
}

void WriteEdgeList(const SocialGraph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) {
    out << g.original_id(e.source) << ' ' << g.original_id(e.destination)
        << '\n';
  }
}

std::string SerializeEdgeList(const SocialGraph& g) {
  std::ostringstream out;
  WriteEdgeList(g, out);
  return out.str();
}

namespace {

std::vector<double> Betweenness(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (NodeId w : g.out_neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : g.in_neighbors(w)) {
        if (dist[v] >= 0 && dist[v] + 1 == dist[w]) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

// Batagelj-Zaversnik bucket peeling on the undirected projection.
std::vector<std::size_t> Coreness(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.source].push_back(e.destination);
    adj[e.destination].push_back(e.source);
  }
  std::size_t max_degree = 0;
  std::vector<std::size_t> degree(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& a = adj[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    degree[v] = a.size();
    max_degree = std::max(max_degree, degree[v]);
  }
  std::vector<std::size_t> bin(max_degree + 1, 0);
  for (std::size_t d : degree) ++bin[d];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<NodeId> vert(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[degree[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_degree; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = vert[i];
    for (NodeId u : adj[v]) {
      if (degree[u] > degree[v]) {
        std::size_t du = degree[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        NodeId w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --degree[u];
      }
    }
  }
  return degree;
}

}  // namespace

CentralityStats ComputeCentrality(const SocialGraph& g) {
  CentralityStats stats;
  stats.outdegree.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    stats.outdegree[v] = g.out_degree(v);
  }
  stats.betweenness = Betweenness(g);
  stats.coreness = Coreness(g);
  return stats;
}

}  // namespace dtim
