#ifndef NDNFW_TOPOLOGY_HPP
#define NDNFW_TOPOLOGY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ndnfw {

using NodeId = uint32_t;

class TopologyInvalid : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct TopologyNode
{
  std::string label;
  std::optional<NodeId> parent;
  unsigned rank = 0;
  std::vector<NodeId> children;
};

/// (label, parent label); an empty parent marks the root.
using NodeSpec = std::pair<std::string, std::string>;

/**
 * Static DODAG rooted at the gateway (node 0, rank 0).
 *
 * A link is identified by its child endpoint, since every non-root node has
 * exactly one parent. Two links interfere when some endpoint of one is within
 * two hops of some endpoint of the other, i.e. they share a node's 2-hop
 * broadcast domain.
 */
class Topology
{
public:
  /// Node ids follow the order of @p nodes after the root, which must come
  /// first. Throws TopologyInvalid on unknown parents, duplicates or cycles.
  static Topology
  fromParents(const std::vector<NodeSpec>& nodes);

  size_t
  size() const noexcept
  {
    return m_nodes.size();
  }

  const TopologyNode&
  node(NodeId id) const
  {
    return m_nodes.at(id);
  }

  const std::string&
  label(NodeId id) const
  {
    return m_nodes.at(id).label;
  }

  std::optional<NodeId>
  parent(NodeId id) const
  {
    return m_nodes.at(id).parent;
  }

  unsigned
  rank(NodeId id) const
  {
    return m_nodes.at(id).rank;
  }

  std::optional<NodeId>
  find(const std::string& label) const;

  /// Like find(), throwing TopologyInvalid for unknown labels.
  NodeId
  require(const std::string& label) const;

  unsigned
  maxRank() const noexcept;

  /// @p id first, root last.
  std::vector<NodeId>
  pathToRoot(NodeId id) const;

  /// Parent (if any) followed by children.
  std::vector<NodeId>
  neighbors(NodeId id) const;

  bool
  adjacent(NodeId a, NodeId b) const;

  unsigned
  hopDistance(NodeId a, NodeId b) const
  {
    return m_distance.at(a).at(b);
  }

  /// Whether the links above @p childA and @p childB share a medium.
  bool
  linksInterfere(NodeId childA, NodeId childB) const;

  /// Every node's spec, root first; reproduces this topology via fromParents().
  std::vector<NodeSpec>
  specs() const;

private:
  std::vector<TopologyNode> m_nodes;
  std::vector<std::vector<unsigned>> m_distance;
};

/**
 * Testbed-like preset: gateway plus 30 devices. The long path n1..n7 holds
 * ranks 1..7; the remaining 23 devices hang off shorter branches:
 *
 *   gw - n1 - n2 - n3 - n4 - n5 - n6 - n7
 *   n2 - d1 - d2;  n3 - e1 - e2 - e3;  n4 - f1 - f2;  n5 - g1
 *   gw - b1 - b2 - b3 - b4 - b5 - h1;  b2 - b6;  b3 - b7
 *   gw - c1 - c2 - c3 - c4;  c1 - c5 - c6;  c2 - c7
 */
Topology
buildPaperTopology();

/// gw - n1 - ... - n<hops>
Topology
buildLineTopology(size_t hops);

} // namespace ndnfw

#endif // NDNFW_TOPOLOGY_HPP
