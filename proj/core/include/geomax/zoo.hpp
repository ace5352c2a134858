#pragma once

// Closed-form reference states and qubit graph states.

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geomax/state.hpp"

namespace geomax {

/// Undirected simple graph on vertices 0..vertices-1.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws Error on self-loops, out-of-range or repeated edges.
  void validate() const;
};

/// (|0..0> + |1..1> + ... + |d-1..d-1>) / sqrt(d) on n parties.
PureState ghz(int n, int d = 2);
/// Equal superposition of the n single-excitation qubit basis states.
PureState w_state(int n);
/// sum_j |jj> / sqrt(d).
PureState bell_qudit(int d);

/// Four-qubit state (GHZ + w GHZ_34 + w^2 GHZ_24)/sqrt(3), w = exp(2 pi i/3),
/// where GHZ_ij has bit flips on parties i and j (1-based). LU-equivalent to
/// the Higuchi-Sudbery M state.
PureState m_tilde();

/// Totally antisymmetric state of n parties with local dimension n.
PureState antisymmetric(int n);

/// sum_{ij} |i>|j>|i+j mod d> / d.
PureState ame_3d(int d);
/// The nine-term AME(4,3) state.
PureState ame_43();
/// sum_{ijl} w^{il} |i>|j>|i+j>|l+j>|l> / d^{3/2}, w = exp(2 pi i/d).
PureState ame_5d(int d);
/// Three-ququad state with eight terms, G = 7/8.
PureState phi_34();

/// (|011> + w|110> + w^2|101>)/sqrt(3); spans with W the maximally entangled
/// two-dimensional three-qubit subspace.
PureState v_state();
/// (|01> - |10>)/sqrt(2) on two qutrits.
PureState chi_1();
/// (|20> + |02> + sqrt(6)(|21> + |12>))/sqrt(14) on two qutrits.
PureState chi_2();

/// CZ_{ab} for every edge applied to |+>^{(x)|V|}.
PureState graph_state(const Graph& g);

/// Edge-list text: '#' comments, an optional `vertices N` line, an optional
/// `groups a,b c,d ...` line, then one `u v` pair per line (0-based).
struct EdgeListFile {
  Graph graph;
  std::vector<std::vector<int>> groups;
};
EdgeListFile parse_edge_list(std::string_view text);
std::string format_edge_list(const Graph& g);

struct NamedGraph {
  std::string name;
  Graph graph;
  /// Consecutive vertex groups forming one party each; empty for one qubit per party.
  std::vector<std::vector<int>> groups;
};

/// bell, ghz_star_3, ring5, g6, fano, ame44_pairs, parsed from the shipped
/// edge-list files.
const std::vector<NamedGraph>& named_graphs();
const NamedGraph& named_graph(std::string_view name);

/// Graph state of a named graph with its party grouping applied.
PureState named_graph_state(std::string_view name);

struct ZooEntry {
  std::string name;
  std::string description;
  std::function<PureState()> make;
};

/// Everything `geomax zoo list` shows, in display order.
const std::vector<ZooEntry>& zoo_catalog();
/// Throws Error for unknown names.
PureState zoo_state(std::string_view name);

}  // namespace geomax
