#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "pmdiam/error.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"
#include "pmdiam/skeleton.hpp"

namespace pmdiam {

using Rational = boost::rational<long long>;
using IncidenceVector = std::vector<Rational>;

inline constexpr std::size_t kDefaultCircuitEdgeCap = 16;
inline constexpr std::size_t kDefaultWalkStateCap = 200'000;

/// {x : sum_{e ∋ v} x_e = 1 for all v, -x_e <= 0 for all e}, variables in
/// edge order.
struct HalfspaceSystem {
  std::size_t num_variables = 0;
  std::vector<std::vector<int>> equality_rows;
  std::vector<int> equality_rhs;
  std::vector<std::vector<int>> inequality_rows;  // row . x <= rhs
  std::vector<int> inequality_rhs;

  bool contains(const IncidenceVector& x) const {
    if (x.size() != num_variables) return false;
    auto dot = [&](const std::vector<int>& row) {
      Rational s = 0;
      for (std::size_t e = 0; e < num_variables; ++e) {
        if (row[e] != 0) s += Rational(row[e]) * x[e];
      }
      return s;
    };
    for (std::size_t i = 0; i < equality_rows.size(); ++i) {
      if (dot(equality_rows[i]) != Rational(equality_rhs[i])) return false;
    }
    for (std::size_t i = 0; i < inequality_rows.size(); ++i) {
      if (dot(inequality_rows[i]) > Rational(inequality_rhs[i])) return false;
    }
    return true;
  }

  /// One constraint per line with exact integer coefficients, e.g.
  /// "x0 + x3 = 1" and "-x2 <= 0"; a comment header names the variables.
  std::string to_lp(const BipartiteGraph& g) const {
    std::ostringstream os;
    for (std::size_t e = 0; e < num_variables; ++e) {
      const auto& ed = g.edge(static_cast<int>(e));
      os << "# x" << e << " = {" << g.name(ed.left) << "," << g.name(ed.right) << "}\n";
    }
    auto write_row = [&](const std::vector<int>& row) {
      bool first = true;
      for (std::size_t e = 0; e < row.size(); ++e) {
        if (row[e] == 0) continue;
        const int c = row[e];
        if (first) {
          os << (c < 0 ? "-" : "");
        } else {
          os << (c < 0 ? " - " : " + ");
        }
        if (std::abs(c) != 1) os << std::abs(c) << " ";
        os << "x" << e;
        first = false;
      }
      if (first) os << "0";
    };
    for (std::size_t i = 0; i < equality_rows.size(); ++i) {
      write_row(equality_rows[i]);
      os << " = " << equality_rhs[i] << "\n";
    }
    for (std::size_t i = 0; i < inequality_rows.size(); ++i) {
      write_row(inequality_rows[i]);
      os << " <= " << inequality_rhs[i] << "\n";
    }
    return os.str();
  }
};

inline HalfspaceSystem pmp_halfspaces(const BipartiteGraph& g) {
  HalfspaceSystem sys;
  sys.num_variables = g.num_edges();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> row(g.num_edges(), 0);
    for (int e : g.incident_edges(static_cast<int>(v))) row[static_cast<std::size_t>(e)] = 1;
    sys.equality_rows.push_back(std::move(row));
    sys.equality_rhs.push_back(1);
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::vector<int> row(g.num_edges(), 0);
    row[e] = -1;
    sys.inequality_rows.push_back(std::move(row));
    sys.inequality_rhs.push_back(0);
  }
  return sys;
}

inline IncidenceVector incidence_vector(const BipartiteGraph& g, const PerfectMatching& m) {
  IncidenceVector x(g.num_edges(), Rational(0));
  for (const auto& e : m.edges(g)) x[static_cast<std::size_t>(*g.edge_index(e.left, e.right))] = 1;
  return x;
}

/// Integer kernel direction with coprime entries and a positive first
/// nonzero entry.
struct CircuitVector {
  std::vector<long long> coefficients;

  std::vector<int> support() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < coefficients.size(); ++e) {
      if (coefficients[e] != 0) out.push_back(static_cast<int>(e));
    }
    return out;
  }

  IncidenceVector as_rational(int sign = 1) const {
    IncidenceVector out;
    out.reserve(coefficients.size());
    for (long long c : coefficients) out.emplace_back(sign * c);
    return out;
  }

  friend bool operator==(const CircuitVector&, const CircuitVector&) = default;
  friend auto operator<=>(const CircuitVector&, const CircuitVector&) = default;
};

inline CircuitVector normalize_circuit(const std::vector<Rational>& direction) {
  long long lcm = 1;
  for (const auto& r : direction) lcm = std::lcm(lcm, r.denominator());
  std::vector<long long> ints;
  ints.reserve(direction.size());
  long long gcd = 0;
  for (const auto& r : direction) {
    ints.push_back(r.numerator() * (lcm / r.denominator()));
    gcd = std::gcd(gcd, ints.back());
  }
  if (gcd == 0) throw Error(Errc::invalid_parameter, "zero vector is not a circuit");
  auto first = std::find_if(ints.begin(), ints.end(), [](long long c) { return c != 0; });
  const long long scale = *first < 0 ? -gcd : gcd;
  for (auto& c : ints) c /= scale;
  return {std::move(ints)};
}

namespace detail {

/// Kernel of the degree system restricted to the edge columns in `support`.
/// Returns the direction when the kernel is one-dimensional.
inline std::optional<std::vector<Rational>> unique_kernel_direction(const BipartiteGraph& g,
                                                                    const std::vector<int>& support) {
  const std::size_t rows = g.num_vertices();
  const std::size_t cols = support.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    const auto& e = g.edge(support[c]);
    a[static_cast<std::size_t>(e.left)][c] = 1;
    a[static_cast<std::size_t>(e.right)][c] = 1;
  }
  std::vector<int> pivot_col_of_row;
  std::vector<char> is_pivot(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].numerator() == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& val : a[r]) val *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].numerator() == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = 1;
    ++r;
  }
  if (cols - r != 1) return std::nullopt;
  const auto free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), 0) - is_pivot.begin());
  std::vector<Rational> x(cols, Rational(0));
  x[free_col] = 1;
  for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col_of_row[i])] = -a[i][free_col];
  return x;
}

}  // namespace detail

/**
 * All circuits up to sign by brute force over edge supports: a support
 * qualifies when the degree system restricted to it has a one-dimensional
 * kernel spanned by a full-support vector; qualifying supports are then
 * filtered to the inclusion-minimal ones.
 */
inline std::vector<CircuitVector> enumerate_circuits(const BipartiteGraph& g,
                                                     std::size_t edge_cap = kDefaultCircuitEdgeCap) {
  const std::size_t m = g.num_edges();
  if (m > edge_cap || m > 30) {
    throw Error(Errc::cap_exceeded, "support enumeration limited to " + std::to_string(edge_cap) + " edges");
  }
  std::vector<std::pair<std::uint32_t, CircuitVector>> found;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    std::vector<int> support;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1U) support.push_back(static_cast<int>(e));
    }
    auto dir = detail::unique_kernel_direction(g, support);
    if (!dir) continue;
    if (std::any_of(dir->begin(), dir->end(), [](const Rational& r) { return r.numerator() == 0; })) continue;
    std::vector<Rational> full(m, Rational(0));
    for (std::size_t i = 0; i < support.size(); ++i) full[static_cast<std::size_t>(support[i])] = (*dir)[i];
    found.emplace_back(mask, normalize_circuit(full));
  }
  std::vector<CircuitVector> out;
  for (const auto& [mask, circuit] : found) {
    const bool minimal = std::none_of(found.begin(), found.end(), [&, mask = mask](const auto& other) {
      return other.first != mask && (other.first & mask) == other.first;
    });
    if (minimal) out.push_back(circuit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every simple cycle of g, each listed once in canonical form.
inline std::vector<Cycle> enumerate_cycles(const BipartiteGraph& g) {
  const int n = static_cast<int>(g.num_vertices());
  std::vector<Cycle> out;
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(n));
  std::function<void(int, int)> dfs = [&](int start, int u) {
    for (int w : g.neighbors(u)) {
      if (w == start && path.size() >= 4 && path[1] < path.back()) out.emplace_back(g, path);
      if (w <= start || on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      dfs(start, w);
      path.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Alternating +1/-1 vector around a cycle.
inline CircuitVector cycle_circuit(const BipartiteGraph& g, const Cycle& c) {
  std::vector<Rational> dir(g.num_edges(), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto [u, v] = c.edge_at(i);
    dir[static_cast<std::size_t>(*g.edge_index(u, v))] = i % 2 == 0 ? 1 : -1;
  }
  return normalize_circuit(dir);
}

inline std::vector<CircuitVector> circuits_from_cycles(const BipartiteGraph& g) {
  std::vector<CircuitVector> out;
  for (const auto& c : enumerate_cycles(g)) out.push_back(cycle_circuit(g, c));
  std::sort(out.begin(), out.end());
  return out;
}

/// x + alpha * direction with alpha > 0 maximal subject to x >= 0.
inline IncidenceVector circuit_move(const HalfspaceSystem& sys, const IncidenceVector& x,
                                    const IncidenceVector& direction) {
  if (!sys.contains(x)) throw Error(Errc::precondition_violation, "point is not in the polytope");
  if (direction.size() != sys.num_variables) throw Error(Errc::invalid_parameter, "direction has wrong dimension");
  std::optional<Rational> alpha;
  for (std::size_t e = 0; e < direction.size(); ++e) {
    if (direction[e].numerator() >= 0) continue;
    const Rational limit = x[e] / -direction[e];
    if (!alpha || limit < *alpha) alpha = limit;
  }
  if (!alpha) throw Error(Errc::unbounded_direction, "no nonnegativity constraint limits the step");
  if (alpha->numerator() == 0) throw Error(Errc::zero_step, "direction is infeasible at the point");
  IncidenceVector out = x;
  for (std::size_t e = 0; e < out.size(); ++e) out[e] += *alpha * direction[e];
  return out;
}

inline IncidenceVector circuit_move(const HalfspaceSystem& sys, const IncidenceVector& x, const CircuitVector& c,
                                    int sign = 1) {
  return circuit_move(sys, x, c.as_rational(sign));
}

/// Points reachable from x by one circuit move along either sign of any circuit.
inline std::set<IncidenceVector> one_step_set(const HalfspaceSystem& sys, const IncidenceVector& x,
                                              const std::vector<CircuitVector>& circuits) {
  std::set<IncidenceVector> out;
  for (const auto& c : circuits) {
    for (int sign : {1, -1}) {
      try {
        out.insert(circuit_move(sys, x, c, sign));
      } catch (const Error& err) {
        if (err.code() != Errc::zero_step) throw;
      }
    }
  }
  return out;
}

enum class CircuitMethod { support_enumeration, cycle_construction };

inline std::vector<CircuitVector> circuits_of(const BipartiteGraph& g, CircuitMethod method) {
  return method == CircuitMethod::support_enumeration ? enumerate_circuits(g) : circuits_from_cycles(g);
}

inline std::set<IncidenceVector> one_step_set(const BipartiteGraph& g, const PerfectMatching& m,
                                              CircuitMethod method = CircuitMethod::cycle_construction) {
  return one_step_set(pmp_halfspaces(g), incidence_vector(g, m), circuits_of(g, method));
}

/// Directed graph of circuit moves over every point reachable from the
/// polytope's vertices. Points 0..num_vertices-1 are the incidence vectors of
/// the enumerated perfect matchings, in enumeration order.
struct CircuitWalkGraph {
  std::vector<IncidenceVector> points;
  std::vector<std::vector<int>> moves;
  std::size_t num_vertices = 0;
};

inline CircuitWalkGraph build_circuit_walk_graph(const BipartiteGraph& g, const std::vector<CircuitVector>& circuits,
                                                 std::size_t matching_cap = kDefaultMatchingCap,
                                                 std::size_t state_cap = kDefaultWalkStateCap) {
  const auto sys = pmp_halfspaces(g);
  CircuitWalkGraph w;
  std::map<IncidenceVector, int> index;
  for (const auto& m : enumerate_perfect_matchings(g, matching_cap)) {
    index.emplace(incidence_vector(g, m), static_cast<int>(w.points.size()));
    w.points.push_back(incidence_vector(g, m));
  }
  if (w.points.empty()) throw Error(Errc::no_perfect_matching, "graph has no perfect matching");
  if (w.points.size() > state_cap) throw Error(Errc::cap_exceeded, "too many circuit-walk states");
  w.num_vertices = w.points.size();
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    std::vector<int> targets;
    for (const auto& p : one_step_set(sys, w.points[i], circuits)) {
      auto [it, inserted] = index.emplace(p, static_cast<int>(w.points.size()));
      if (inserted) {
        if (w.points.size() >= state_cap) throw Error(Errc::cap_exceeded, "too many circuit-walk states");
        w.points.push_back(p);
      }
      targets.push_back(it->second);
    }
    std::sort(targets.begin(), targets.end());
    w.moves.push_back(std::move(targets));
  }
  return w;
}

inline int circuit_diameter_small(const CircuitWalkGraph& w) {
  int best = 0;
  for (std::size_t s = 0; s < w.num_vertices; ++s) {
    const auto dist = bfs_distances(w.moves, static_cast<int>(s));
    for (std::size_t t = 0; t < w.num_vertices; ++t) {
      if (dist[t] < 0) throw Error(Errc::disconnected_skeleton, "vertex unreachable by circuit walks");
      best = std::max(best, dist[t]);
    }
  }
  return best;
}

inline int circuit_diameter_small(const BipartiteGraph& g, CircuitMethod method = CircuitMethod::cycle_construction) {
  return circuit_diameter_small(build_circuit_walk_graph(g, circuits_of(g, method)));
}

/// Shortest c-monotone circuit walk from vertex `start` to a c-optimal vertex.
inline int monotone_circuit_distance(const CircuitWalkGraph& w, const CostFunction& c, int start) {
  std::vector<Rational> cost;
  cost.reserve(w.points.size());
  for (const auto& p : w.points) {
    Rational s = 0;
    for (std::size_t e = 0; e < p.size(); ++e) s += p[e] * Rational(c.weights[e]);
    cost.push_back(s);
  }
  const Rational optimum = *std::min_element(cost.begin(), cost.begin() + static_cast<long>(w.num_vertices));
  std::vector<int> dist(w.points.size(), -1);
  std::deque<int> queue{start};
  dist[static_cast<std::size_t>(start)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const auto su = static_cast<std::size_t>(u);
    if (su < w.num_vertices && cost[su] == optimum) return dist[su];
    for (int v : w.moves[su]) {
      const auto sv = static_cast<std::size_t>(v);
      if (dist[sv] == -1 && cost[sv] <= cost[su]) {
        dist[sv] = dist[su] + 1;
        queue.push_back(v);
      }
    }
  }
  throw Error(Errc::unreachable_optimum, "no monotone circuit walk reaches a c-optimal vertex");
}

}  // namespace pmdiam
