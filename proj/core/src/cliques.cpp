#include "csmanet/cliques.hpp"

#include <algorithm>

namespace csmanet {

namespace {

struct BronKerbosch {
  const ContentionGraph& g;
  std::vector<Clique>& out;
  std::vector<int> current;

  bool connected(int a, int b) const {
    const auto nbrs = g.neighbors(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  // P and X are sorted candidate / excluded sets of vertex indexes.
  void expand(std::vector<int> p, std::vector<int> x) {
    if (p.empty() && x.empty()) {
      Clique c;
      c.reserve(current.size());
      for (int v : current) c.push_back(g.id_of(v));
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    // Pivot: vertex of P ∪ X with most neighbors in P.
    int pivot = -1;
    int best = -1;
    for (const auto* side : {&p, &x}) {
      for (int u : *side) {
        int cnt = 0;
        for (int v : p) {
          if (connected(u, v)) ++cnt;
        }
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    }
    std::vector<int> branch;
    for (int v : p) {
      if (!connected(pivot, v)) branch.push_back(v);
    }
    for (int v : branch) {
      std::vector<int> p2, x2;
      for (int u : p) {
        if (connected(v, u)) p2.push_back(u);
      }
      for (int u : x) {
        if (connected(v, u)) x2.push_back(u);
      }
      current.push_back(v);
      expand(std::move(p2), std::move(x2));
      current.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }
};

} // namespace

std::vector<Clique> enumerate_maximal_cliques(const ContentionGraph& g) {
  std::vector<Clique> out;
  std::vector<int> all(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  BronKerbosch bk{g, out, {}};
  bk.expand(std::move(all), {});
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace csmanet
