#include "ndnfw/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace ndnfw {

Topology
Topology::fromParents(const std::vector<NodeSpec>& nodes)
{
  if (nodes.empty()) {
    throw TopologyInvalid("topology has no nodes");
  }
  if (!nodes.front().second.empty()) {
    throw TopologyInvalid("first node '" + nodes.front().first + "' must be the root");
  }

  Topology topo;
  std::map<std::string, NodeId> ids;
  for (const auto& [label, parent] : nodes) {
    if (label.empty()) {
      throw TopologyInvalid("empty node label");
    }
    if (!ids.emplace(label, static_cast<NodeId>(ids.size())).second) {
      throw TopologyInvalid("duplicate node '" + label + "'");
    }
    topo.m_nodes.push_back({label, std::nullopt, 0, {}});
  }
  for (size_t i = 1; i < nodes.size(); ++i) {
    const auto& parent = nodes[i].second;
    if (parent.empty()) {
      throw TopologyInvalid("node '" + nodes[i].first + "' has no parent; only one root allowed");
    }
    auto it = ids.find(parent);
    if (it == ids.end()) {
      throw TopologyInvalid("node '" + nodes[i].first + "' has unknown parent '" + parent + "'");
    }
    if (it->second == i) {
      throw TopologyInvalid("node '" + nodes[i].first + "' is its own parent");
    }
    topo.m_nodes[i].parent = it->second;
    topo.m_nodes[it->second].children.push_back(static_cast<NodeId>(i));
  }

  // ranks by BFS from the root; anything unreached sits on a cycle
  std::vector<bool> seen(topo.size(), false);
  std::deque<NodeId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    NodeId id = queue.front();
    queue.pop_front();
    for (NodeId child : topo.m_nodes[id].children) {
      topo.m_nodes[child].rank = topo.m_nodes[id].rank + 1;
      seen[child] = true;
      queue.push_back(child);
    }
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw TopologyInvalid("node '" + topo.m_nodes[i].label + "' is part of a cycle");
    }
  }

  constexpr unsigned inf = std::numeric_limits<unsigned>::max();
  topo.m_distance.assign(topo.size(), std::vector<unsigned>(topo.size(), inf));
  for (NodeId src = 0; src < topo.size(); ++src) {
    auto& dist = topo.m_distance[src];
    dist[src] = 0;
    std::deque<NodeId> bfs{src};
    while (!bfs.empty()) {
      NodeId id = bfs.front();
      bfs.pop_front();
      for (NodeId next : topo.neighbors(id)) {
        if (dist[next] == inf) {
          dist[next] = dist[id] + 1;
          bfs.push_back(next);
        }
      }
    }
  }
  return topo;
}

std::optional<NodeId>
Topology::find(const std::string& label) const
{
  for (NodeId id = 0; id < m_nodes.size(); ++id) {
    if (m_nodes[id].label == label) {
      return id;
    }
  }
  return std::nullopt;
}

NodeId
Topology::require(const std::string& label) const
{
  auto id = find(label);
  if (!id) {
    throw TopologyInvalid("unknown node '" + label + "'");
  }
  return *id;
}

unsigned
Topology::maxRank() const noexcept
{
  unsigned best = 0;
  for (const auto& n : m_nodes) {
    best = std::max(best, n.rank);
  }
  return best;
}

std::vector<NodeId>
Topology::pathToRoot(NodeId id) const
{
  std::vector<NodeId> path{id};
  while (auto p = m_nodes.at(path.back()).parent) {
    path.push_back(*p);
  }
  return path;
}

std::vector<NodeId>
Topology::neighbors(NodeId id) const
{
  std::vector<NodeId> out;
  const auto& n = m_nodes.at(id);
  if (n.parent) {
    out.push_back(*n.parent);
  }
  out.insert(out.end(), n.children.begin(), n.children.end());
  return out;
}

bool
Topology::adjacent(NodeId a, NodeId b) const
{
  return m_nodes.at(a).parent == b || m_nodes.at(b).parent == a;
}

bool
Topology::linksInterfere(NodeId childA, NodeId childB) const
{
  NodeId a[] = {childA, *m_nodes.at(childA).parent};
  NodeId b[] = {childB, *m_nodes.at(childB).parent};
  for (NodeId x : a) {
    for (NodeId y : b) {
      if (m_distance[x][y] <= 2) {
        return true;
      }
    }
  }
  return false;
}

std::vector<NodeSpec>
Topology::specs() const
{
  std::vector<NodeSpec> out;
  for (const auto& n : m_nodes) {
    out.emplace_back(n.label, n.parent ? m_nodes[*n.parent].label : std::string{});
  }
  return out;
}

Topology
buildPaperTopology()
{
  return Topology::fromParents({
    {"gw", ""},
    {"n1", "gw"}, {"n2", "n1"}, {"n3", "n2"}, {"n4", "n3"},
    {"n5", "n4"}, {"n6", "n5"}, {"n7", "n6"},
    {"b1", "gw"}, {"b2", "b1"}, {"b3", "b2"}, {"b4", "b3"},
    {"b5", "b4"}, {"b6", "b2"}, {"b7", "b3"},
    {"c1", "gw"}, {"c2", "c1"}, {"c3", "c2"}, {"c4", "c3"},
    {"c5", "c1"}, {"c6", "c5"}, {"c7", "c2"},
    {"d1", "n2"}, {"d2", "d1"},
    {"e1", "n3"}, {"e2", "e1"}, {"e3", "e2"},
    {"f1", "n4"}, {"f2", "f1"},
    {"g1", "n5"},
    {"h1", "b5"},
  });
}

Topology
buildLineTopology(size_t hops)
{
  std::vector<NodeSpec> specs{{"gw", ""}};
  for (size_t i = 1; i <= hops; ++i) {
    specs.emplace_back("n" + std::to_string(i), i == 1 ? "gw" : "n" + std::to_string(i - 1));
  }
  return Topology::fromParents(specs);
}

} // namespace ndnfw
