#include "geomax/zoo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "graph_data.hpp"

namespace geomax {

namespace {

using Term = std::pair<std::vector<int>, complex>;

PureState from_terms(SystemShape shape, const std::vector<Term>& terms) {
  CVector amps(shape.total_dim());
  for (const auto& [digits, c] : terms) amps[shape.ravel(digits)] += c;
  return PureState(std::move(shape), std::move(amps)).normalized();
}

complex root_of_unity(int k, int d) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
  return {std::cos(a), std::sin(a)};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

}  // namespace

void Graph::validate() const {
  require(vertices >= 1, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < vertices && v < vertices,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    require(u != v, "self-loop on vertex " + std::to_string(u));
    require(seen.insert(std::minmax(u, v)).second,
            "repeated edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
}

PureState ghz(int n, int d) {
  require(n >= 2 && d >= 2, "ghz needs n >= 2 and d >= 2");
  std::vector<Term> terms;
  for (int j = 0; j < d; ++j) terms.push_back({std::vector<int>(static_cast<std::size_t>(n), j), 1.0});
  return from_terms(SystemShape::uniform(n, d), terms);
}

PureState w_state(int n) {
  require(n >= 2, "w_state needs n >= 2");
  std::vector<Term> terms;
  for (int k = 0; k < n; ++k) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    digits[static_cast<std::size_t>(k)] = 1;
    terms.push_back({digits, 1.0});
  }
  return from_terms(SystemShape::uniform(n, 2), terms);
}

PureState bell_qudit(int d) { return ghz(2, d); }

PureState m_tilde() {
  const complex w = root_of_unity(1, 3);
  const complex w2 = root_of_unity(2, 3);
  return from_terms(SystemShape::uniform(4, 2), {
                                                    {{0, 0, 0, 0}, 1.0},
                                                    {{1, 1, 1, 1}, 1.0},
                                                    {{0, 0, 1, 1}, w},
                                                    {{1, 1, 0, 0}, w},
                                                    {{0, 1, 0, 1}, w2},
                                                    {{1, 0, 1, 0}, w2},
                                                });
}

PureState antisymmetric(int n) {
  require(n >= 2, "antisymmetric needs n >= 2");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    terms.push_back({perm, inversions % 2 == 0 ? 1.0 : -1.0});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return from_terms(SystemShape::uniform(n, n), terms);
}

PureState ame_3d(int d) {
  require(d >= 2, "ame_3d needs d >= 2");
  std::vector<Term> terms;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) terms.push_back({{i, j, (i + j) % d}, 1.0});
  }
  return from_terms(SystemShape::uniform(3, d), terms);
}

PureState ame_43() {
  std::vector<Term> terms;
  for (const char* s : {"0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210"}) {
    terms.push_back({{s[0] - '0', s[1] - '0', s[2] - '0', s[3] - '0'}, 1.0});
  }
  return from_terms(SystemShape::uniform(4, 3), terms);
}

PureState ame_5d(int d) {
  require(d >= 2, "ame_5d needs d >= 2");
  std::vector<Term> terms;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) terms.push_back({{i, j, (i + j) % d, (l + j) % d, l}, root_of_unity(i * l, d)});
    }
  }
  return from_terms(SystemShape::uniform(5, d), terms);
}

PureState phi_34() {
  std::vector<Term> terms;
  for (const char* s : {"022", "033", "120", "131", "212", "203", "310", "301"}) {
    terms.push_back({{s[0] - '0', s[1] - '0', s[2] - '0'}, 1.0});
  }
  return from_terms(SystemShape::uniform(3, 4), terms);
}

PureState v_state() {
  return from_terms(SystemShape::uniform(3, 2), {
                                                    {{0, 1, 1}, 1.0},
                                                    {{1, 1, 0}, root_of_unity(1, 3)},
                                                    {{1, 0, 1}, root_of_unity(2, 3)},
                                                });
}

PureState chi_1() {
  return from_terms(SystemShape::uniform(2, 3), {{{0, 1}, 1.0}, {{1, 0}, -1.0}});
}

PureState chi_2() {
  const double s6 = std::sqrt(6.0);
  return from_terms(SystemShape::uniform(2, 3), {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{2, 1}, s6}, {{1, 2}, s6}});
}

PureState graph_state(const Graph& g) {
  g.validate();
  const auto shape = SystemShape::uniform(g.vertices, 2);
  const double amp = 1.0 / std::sqrt(static_cast<double>(shape.total_dim()));
  CVector amps(shape.total_dim(), complex{amp});
  for (auto [a, b] : g.edges) {
    const std::size_t ma = shape.stride(a);
    const std::size_t mb = shape.stride(b);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if ((i / ma) % 2 == 1 && (i / mb) % 2 == 1) amps[i] = -amps[i];
    }
  }
  return PureState(shape, std::move(amps));
}

EdgeListFile parse_edge_list(std::string_view text) {
  EdgeListFile out;
  int declared = -1;
  int max_vertex = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "vertices") {
      if (!(ls >> declared) || declared < 1) fail("bad vertex count");
    } else if (first == "groups") {
      std::string tok;
      while (ls >> tok) {
        std::vector<int> group;
        std::istringstream gs(tok);
        std::string item;
        while (std::getline(gs, item, ',')) {
          int v = 0;
          const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
          if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) fail("bad group entry '" + item + "'");
          group.push_back(v);
        }
        out.groups.push_back(std::move(group));
      }
    } else {
      int u = 0, v = 0;
      const auto r1 = std::from_chars(first.data(), first.data() + first.size(), u);
      if (r1.ec != std::errc{} || r1.ptr != first.data() + first.size()) fail("expected 'u v'");
      std::string rest;
      if (!(ls >> v)) fail("expected 'u v'");
      if (ls >> rest) fail("trailing characters");
      out.graph.edges.emplace_back(u, v);
      max_vertex = std::max({max_vertex, u, v});
    }
  }
  out.graph.vertices = declared >= 0 ? declared : max_vertex + 1;
  out.graph.validate();
  return out;
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "vertices " << g.vertices << '\n';
  for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
  return os.str();
}

const std::vector<NamedGraph>& named_graphs() {
  static const std::vector<NamedGraph> graphs = [] {
    std::vector<NamedGraph> out;
    for (const auto& [name, text] : detail::embedded_graph_files()) {
      auto parsed = parse_edge_list(text);
      out.push_back({std::string(name), std::move(parsed.graph), std::move(parsed.groups)});
    }
    return out;
  }();
  return graphs;
}

const NamedGraph& named_graph(std::string_view name) {
  for (const auto& g : named_graphs()) {
    if (g.name == name) return g;
  }
  throw Error("unknown graph '" + std::string(name) + "'");
}

PureState named_graph_state(std::string_view name) {
  const auto& g = named_graph(name);
  PureState s = graph_state(g.graph);
  return g.groups.empty() ? s : regroup(s, g.groups);
}

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog = [] {
    std::vector<ZooEntry> c = {
        {"bell", "two-qubit Bell state (|00>+|11>)/sqrt2", [] { return bell_qudit(2); }},
        {"ghz3", "three-qubit GHZ state", [] { return ghz(3); }},
        {"w3", "three-qubit W state", [] { return w_state(3); }},
        {"v3", "three-qubit V state, partner of W in the maximal subspace", [] { return v_state(); }},
        {"m_tilde", "four-qubit phased GHZ superposition (M state)", [] { return m_tilde(); }},
        {"psi3", "three-qutrit antisymmetric state", [] { return antisymmetric(3); }},
        {"psi4", "four-ququad antisymmetric state", [] { return antisymmetric(4); }},
        {"ame3_3", "AME(3,3) sum |i>|j>|i+j>", [] { return ame_3d(3); }},
        {"ame3_4", "AME(3,4) sum |i>|j>|i+j>", [] { return ame_3d(4); }},
        {"phi34", "three-ququad AME state with G = 7/8", [] { return phi_34(); }},
        {"ame43", "AME(4,3)", [] { return ame_43(); }},
        {"ame5_2", "AME(5,2) from the five-party construction", [] { return ame_5d(2); }},
        {"ame5_3", "AME(5,3)", [] { return ame_5d(3); }},
        {"ame5_4", "AME(5,4)", [] { return ame_5d(4); }},
        {"chi1", "two-qutrit embedded singlet", [] { return chi_1(); }},
        {"chi2", "two-qutrit partner of chi1 in the maximal subspace", [] { return chi_2(); }},
    };
    for (int d = 3; d <= 10; ++d) {
      c.push_back({"bell" + std::to_string(d), "two-qudit Bell state, d = " + std::to_string(d),
                   [d] { return bell_qudit(d); }});
    }
    for (const auto& g : named_graphs()) {
      const std::string name = g.name;
      c.push_back({"graph:" + name, "graph state of the '" + name + "' graph", [name] { return named_graph_state(name); }});
    }
    return c;
  }();
  return catalog;
}

PureState zoo_state(std::string_view name) {
  for (const auto& e : zoo_catalog()) {
    if (e.name == name) return e.make();
  }
  throw Error("unknown zoo state '" + std::string(name) + "'");
}

}  // namespace geomax
