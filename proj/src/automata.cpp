#include "ge/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ge {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_same_alphabet(const Nbw& a, const Nbw& b) {
  if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("alphabet mismatch");
}

}  // namespace

void Nbw::validate() const {
  if (static_cast<int>(trans.size()) != state_count)
    throw std::invalid_argument("transition table size mismatch");
  for (const auto& per_state : trans) {
    if (per_state.size() != alphabet.letter_count())
      throw std::invalid_argument("transition row does not cover the alphabet");
    for (const auto& targets : per_state)
      for (int t : targets)
        if (t < 0 || t >= state_count) throw std::invalid_argument("transition target out of range");
  }
  for (int q : initial)
    if (q < 0 || q >= state_count) throw std::invalid_argument("initial state out of range");
  for (const auto& set : acceptance)
    for (int q : set)
      if (q < 0 || q >= state_count) throw std::invalid_argument("acceptance state out of range");
  if (has_annotation() &&
      (atom_mask.size() != static_cast<std::size_t>(state_count) || atom_val.size() != atom_mask.size()))
    throw std::invalid_argument("annotation size mismatch");
}

void Dfw::validate() const {
  if (static_cast<int>(trans.size()) != state_count || static_cast<int>(accepting.size()) != state_count)
    throw std::invalid_argument("dfw table size mismatch");
  if (initial < 0 || initial >= state_count) throw std::invalid_argument("dfw initial out of range");
  for (const auto& row : trans) {
    if (row.size() != alphabet.letter_count())
      throw std::invalid_argument("dfw transition function not total");
    for (int t : row)
      if (t < 0 || t >= state_count) throw std::invalid_argument("dfw target out of range");
  }
}

int Dfw::run(const std::vector<Letter>& word) const {
  int s = initial;
  for (Letter l : word) s = trans[s][l];
  return s;
}

// ---------------------------------------------------------------------------
// Product / union / projection
// ---------------------------------------------------------------------------

Nbw nbw_product(const Nbw& a, const Nbw& b, bool prune_inconsistent) {
  check_same_alphabet(a, b);
  const bool annotate = a.has_annotation() && b.has_annotation();
  auto consistent = [&](int qa, int qb) {
    if (!annotate || !prune_inconsistent) return true;
    Letter common = a.atom_mask[qa] & b.atom_mask[qb];
    return (a.atom_val[qa] & common) == (b.atom_val[qb] & common);
  };

  Nbw p;
  p.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> states;
  auto state_of = [&](int qa, int qb) {
    auto [it, inserted] = index.try_emplace({qa, qb}, static_cast<int>(states.size()));
    if (inserted) states.push_back({qa, qb});
    return it->second;
  };

  std::deque<int> work;
  for (int qa : a.initial)
    for (int qb : b.initial)
      if (consistent(qa, qb)) {
        int s = state_of(qa, qb);
        if (s == static_cast<int>(states.size()) - 1) work.push_back(s);
        p.initial.push_back(s);
      }
  p.initial = sorted_unique(p.initial);

  std::vector<std::vector<std::vector<int>>> trans;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    auto [qa, qb] = states[s];
    if (static_cast<int>(trans.size()) <= s) trans.resize(states.size());
    trans[s].resize(p.alphabet.letter_count());
    for (Letter l = 0; l < p.alphabet.letter_count(); ++l) {
      for (int ta : a.trans[qa][l])
        for (int tb : b.trans[qb][l]) {
          if (!consistent(ta, tb)) continue;
          std::size_t before = states.size();
          int t = state_of(ta, tb);
          if (states.size() > before) work.push_back(t);
          trans[s][l].push_back(t);
        }
      trans[s][l] = sorted_unique(std::move(trans[s][l]));
    }
  }
  trans.resize(states.size());
  for (auto& row : trans) row.resize(p.alphabet.letter_count());

  p.state_count = static_cast<int>(states.size());
  p.trans = std::move(trans);
  p.acceptance.assign(a.acceptance.size() + b.acceptance.size(), {});
  for (int s = 0; s < p.state_count; ++s) {
    auto [qa, qb] = states[s];
    for (std::size_t j = 0; j < a.acceptance.size(); ++j)
      if (std::binary_search(a.acceptance[j].begin(), a.acceptance[j].end(), qa))
        p.acceptance[j].push_back(s);
    for (std::size_t j = 0; j < b.acceptance.size(); ++j)
      if (std::binary_search(b.acceptance[j].begin(), b.acceptance[j].end(), qb))
        p.acceptance[a.acceptance.size() + j].push_back(s);
  }
  if (annotate) {
    p.atom_mask.resize(p.state_count);
    p.atom_val.resize(p.state_count);
    for (int s = 0; s < p.state_count; ++s) {
      auto [qa, qb] = states[s];
      p.atom_mask[s] = a.atom_mask[qa] | b.atom_mask[qb];
      p.atom_val[s] = a.atom_val[qa] | b.atom_val[qb];
    }
  }
  return p;
}

Nbw nbw_union(const std::vector<const Nbw*>& parts) {
  if (parts.empty()) throw std::invalid_argument("union of zero automata");
  for (const Nbw* part : parts) check_same_alphabet(*parts.front(), *part);

  Nbw u;
  u.alphabet = parts.front()->alphabet;
  std::size_t sets = 0;
  for (const Nbw* part : parts) sets = std::max(sets, part->acceptance.size());
  u.acceptance.assign(sets, {});
  bool annotate = true;
  for (const Nbw* part : parts) annotate = annotate && part->has_annotation();

  int offset = 0;
  for (const Nbw* part : parts) {
    for (int q : part->initial) u.initial.push_back(q + offset);
    for (const auto& row : part->trans) {
      u.trans.push_back(row);
      for (auto& targets : u.trans.back())
        for (int& t : targets) t += offset;
    }
    // Missing acceptance sets are padded with the whole component, which any
    // run staying inside it satisfies vacuously.
    for (std::size_t j = 0; j < sets; ++j) {
      if (j < part->acceptance.size()) {
        for (int q : part->acceptance[j]) u.acceptance[j].push_back(q + offset);
      } else {
        for (int q = 0; q < part->state_count; ++q) u.acceptance[j].push_back(q + offset);
      }
    }
    if (annotate) {
      u.atom_mask.insert(u.atom_mask.end(), part->atom_mask.begin(), part->atom_mask.end());
      u.atom_val.insert(u.atom_val.end(), part->atom_val.begin(), part->atom_val.end());
    }
    offset += part->state_count;
  }
  u.state_count = offset;
  return u;
}

Nbw exists_project(const Nbw& a, const SignalPartition& sig) {
  if (!(a.alphabet == sig.joint_alphabet()))
    throw std::invalid_argument("projection expects a joint-alphabet automaton");
  Nbw b;
  b.alphabet = sig.input_alphabet();
  b.state_count = a.state_count;
  b.initial = a.initial;
  b.acceptance = a.acceptance;
  b.trans.assign(a.state_count, {});
  for (int q = 0; q < a.state_count; ++q) {
    b.trans[q].resize(b.alphabet.letter_count());
    for (Letter i = 0; i < b.alphabet.letter_count(); ++i) {
      std::vector<int> targets;
      for (Letter o = 0; o < sig.output_letter_count(); ++o) {
        const auto& t = a.trans[q][sig.zip(i, static_cast<Letter>(o))];
        targets.insert(targets.end(), t.begin(), t.end());
      }
      b.trans[q][i] = sorted_unique(std::move(targets));
    }
  }
  if (a.has_annotation()) {
    b.atom_mask.resize(a.state_count);
    b.atom_val.resize(a.state_count);
    for (int q = 0; q < a.state_count; ++q) {
      b.atom_mask[q] = a.atom_mask[q] & sig.input_mask();
      b.atom_val[q] = a.atom_val[q] & sig.input_mask();
    }
  }
  return b;
}

Nbw lift_to_joint(const Nbw& a, const SignalPartition& sig) {
  if (!(a.alphabet == sig.input_alphabet()))
    throw std::invalid_argument("lift expects an input-alphabet automaton");
  Nbw b;
  b.alphabet = sig.joint_alphabet();
  b.state_count = a.state_count;
  b.initial = a.initial;
  b.acceptance = a.acceptance;
  b.atom_mask = a.atom_mask;
  b.atom_val = a.atom_val;
  b.trans.assign(a.state_count, {});
  for (int q = 0; q < a.state_count; ++q) {
    b.trans[q].resize(b.alphabet.letter_count());
    for (Letter l = 0; l < b.alphabet.letter_count(); ++l)
      b.trans[q][l] = a.trans[q][sig.project_input(l)];
  }
  return b;
}

// ---------------------------------------------------------------------------
// Degeneralization and dualization
// ---------------------------------------------------------------------------

Nbw degeneralize(const Nbw& a) {
  Nbw d;
  d.alphabet = a.alphabet;
  if (a.acceptance.size() <= 1) {
    d = a;
    if (d.acceptance.empty()) {
      std::vector<int> all(d.state_count);
      for (int q = 0; q < d.state_count; ++q) all[q] = q;
      d.acceptance.push_back(std::move(all));
    }
    return d;
  }
  const int k = static_cast<int>(a.acceptance.size());
  auto in_set = [&](int q, int j) {
    return std::binary_search(a.acceptance[j].begin(), a.acceptance[j].end(), q);
  };
  d.state_count = a.state_count * k;
  auto id = [&](int q, int j) { return q * k + j; };
  d.trans.assign(d.state_count, {});
  for (int q = 0; q < a.state_count; ++q)
    for (int j = 0; j < k; ++j) {
      int next_j = in_set(q, j) ? (j + 1) % k : j;
      auto& row = d.trans[id(q, j)];
      row.resize(a.alphabet.letter_count());
      for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
        row[l].reserve(a.trans[q][l].size());
        for (int t : a.trans[q][l]) row[l].push_back(id(t, next_j));
      }
    }
  for (int q : a.initial) d.initial.push_back(id(q, 0));
  std::vector<int> acc;
  for (int q : a.acceptance[k - 1]) acc.push_back(id(q, k - 1));
  d.acceptance.push_back(sorted_unique(std::move(acc)));
  if (a.has_annotation()) {
    d.atom_mask.resize(d.state_count);
    d.atom_val.resize(d.state_count);
    for (int q = 0; q < a.state_count; ++q)
      for (int j = 0; j < k; ++j) {
        d.atom_mask[id(q, j)] = a.atom_mask[q];
        d.atom_val[id(q, j)] = a.atom_val[q];
      }
  }
  return d;
}

Ucw dualize(const Nbw& a) {
  Ucw u;
  u.structure = degeneralize(a);
  u.dual = std::make_shared<Nbw>(a);
  return u;
}

// ---------------------------------------------------------------------------
// Rank-based complementation
// ---------------------------------------------------------------------------

Nbw complement_nbw(const Nbw& a) {
  if (a.acceptance.size() != 1)
    throw std::invalid_argument("complement_nbw expects a degeneralized (plain Buchi) automaton");
  const int n = a.state_count;
  const int max_rank = 2 * std::max(n, 1);
  auto accepting = [&](int q) {
    return std::binary_search(a.acceptance[0].begin(), a.acceptance[0].end(), q);
  };

  // States are pairs (ranking, obligation set). rank[q] == -1 means q is not
  // on any run; accepting states carry even ranks only.
  struct KvState {
    std::vector<int> rank;
    std::vector<char> owing;
  };
  std::map<std::pair<std::vector<int>, std::vector<char>>, int> index;
  std::vector<KvState> states;
  auto state_of = [&](std::vector<int> rank, std::vector<char> owing) {
    auto key = std::make_pair(rank, owing);
    auto [it, inserted] = index.try_emplace(std::move(key), static_cast<int>(states.size()));
    if (inserted) states.push_back({std::move(rank), std::move(owing)});
    return it->second;
  };

  Nbw c;
  c.alphabet = a.alphabet;
  {
    std::vector<int> rank(n, -1);
    for (int q : a.initial) rank[q] = accepting(q) ? max_rank - max_rank % 2 : max_rank;
    c.initial.push_back(state_of(std::move(rank), std::vector<char>(n, 0)));
  }

  std::deque<int> work{c.initial.begin(), c.initial.end()};
  std::vector<std::vector<std::vector<int>>> trans;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    if (static_cast<int>(trans.size()) <= s) trans.resize(states.size());
    trans[s].resize(c.alphabet.letter_count());
    for (Letter l = 0; l < c.alphabet.letter_count(); ++l) {
      const KvState st = states[s];
      // Rank caps for the successor level.
      std::vector<int> cap(n, -1);
      for (int q = 0; q < n; ++q) {
        if (st.rank[q] < 0) continue;
        for (int t : a.trans[q][l])
          cap[t] = cap[t] < 0 ? st.rank[q] : std::min(cap[t], st.rank[q]);
      }
      std::vector<int> dom;
      for (int q = 0; q < n; ++q)
        if (cap[q] >= 0) dom.push_back(q);
      bool owing_phase = std::any_of(st.owing.begin(), st.owing.end(), [](char c) { return c != 0; });
      std::vector<char> owing_reach(n, 0);
      if (owing_phase) {
        for (int q = 0; q < n; ++q)
          if (st.owing[q])
            for (int t : a.trans[q][l]) owing_reach[t] = 1;
      }
      // Enumerate every covering ranking of the successor level.
      std::vector<int> rank(n, -1);
      auto emit = [&] {
        std::vector<char> owing(n, 0);
        for (int q : dom) {
          bool even = rank[q] % 2 == 0;
          if (owing_phase)
            owing[q] = owing_reach[q] && even;
          else
            owing[q] = even;
        }
        std::size_t before = states.size();
        int t = state_of(rank, std::move(owing));
        if (states.size() > before) work.push_back(t);
        trans[s][l].push_back(t);
      };
      auto enumerate = [&](auto&& self, std::size_t i) -> void {
        if (i == dom.size()) {
          emit();
          return;
        }
        int q = dom[i];
        for (int r = 0; r <= cap[q]; ++r) {
          if (accepting(q) && r % 2 == 1) continue;
          rank[q] = r;
          self(self, i + 1);
        }
        rank[q] = -1;
      };
      enumerate(enumerate, 0);
      trans[s][l] = sorted_unique(std::move(trans[s][l]));
    }
  }
  trans.resize(states.size());
  for (auto& row : trans) row.resize(c.alphabet.letter_count());

  c.state_count = static_cast<int>(states.size());
  c.trans = std::move(trans);
  std::vector<int> acc;
  for (int s = 0; s < c.state_count; ++s)
    if (std::none_of(states[s].owing.begin(), states[s].owing.end(), [](char x) { return x != 0; }))
      acc.push_back(s);
  c.acceptance.push_back(std::move(acc));
  return c;
}

// ---------------------------------------------------------------------------
// Subset construction
// ---------------------------------------------------------------------------

Dfw subset_construct(const Nbw& a) {
  Dfw d;
  d.alphabet = a.alphabet;
  std::map<StateSet, int> index;
  auto state_of = [&](StateSet s) {
    auto [it, inserted] = index.try_emplace(std::move(s), static_cast<int>(d.macro.size()));
    if (inserted) d.macro.push_back(it->first);
    return it->second;
  };
  d.initial = state_of(sorted_unique(a.initial));
  std::deque<int> work{d.initial};
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    if (static_cast<int>(d.trans.size()) <= s) d.trans.resize(d.macro.size());
    d.trans[s].resize(a.alphabet.letter_count());
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
      std::vector<int> targets;
      for (int q : d.macro[s]) {
        const auto& t = a.trans[q][l];
        targets.insert(targets.end(), t.begin(), t.end());
      }
      std::size_t before = d.macro.size();
      int t = state_of(sorted_unique(std::move(targets)));
      if (d.macro.size() > before) work.push_back(t);
      d.trans[s][l] = t;
    }
  }
  d.trans.resize(d.macro.size());
  for (auto& row : d.trans) row.resize(a.alphabet.letter_count());
  d.state_count = static_cast<int>(d.macro.size());
  d.accepting.assign(d.state_count, 0);
  return d;
}

// ---------------------------------------------------------------------------
// Emptiness, liveness, membership
// ---------------------------------------------------------------------------

namespace {

// Shared SCC machinery over an explicit letter-labeled graph.
struct Graph {
  int n = 0;
  std::vector<std::vector<std::pair<Letter, int>>> adj;
  std::vector<std::vector<char>> in_set;  // [set][node]
  std::vector<int> initial;
};

struct SccResult {
  std::vector<int> comp;        // node -> component id
  int count = 0;
  std::vector<char> nontrivial; // component has an internal edge
};

SccResult tarjan(const Graph& g) {
  SccResult r;
  r.comp.assign(g.n, -1);
  std::vector<int> idx(g.n, -1), low(g.n, 0);
  std::vector<char> on_stack(g.n, 0);
  std::vector<int> stack;
  int next_index = 0;

  // Iterative Tarjan to keep deep tableau graphs off the call stack.
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < g.n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < g.adj[f.v].size()) {
        int w = g.adj[f.v][f.edge++].second;
        if (idx[w] == -1) {
          idx[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          int c = r.count++;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            r.comp[w] = c;
            if (w == f.v) break;
          }
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  r.nontrivial.assign(r.count, 0);
  for (int v = 0; v < g.n; ++v)
    for (auto [l, w] : g.adj[v])
      if (r.comp[v] == r.comp[w]) r.nontrivial[r.comp[v]] = 1;
  return r;
}

// Components containing a cycle that can visit every acceptance set.
std::vector<char> good_components(const Graph& g, const SccResult& scc) {
  std::vector<char> good(scc.count, 1);
  for (int c = 0; c < scc.count; ++c) good[c] = scc.nontrivial[c];
  for (const auto& set : g.in_set) {
    std::vector<char> hit(scc.count, 0);
    for (int v = 0; v < g.n; ++v)
      if (set[v]) hit[scc.comp[v]] = 1;
    for (int c = 0; c < scc.count; ++c) good[c] = good[c] && hit[c];
  }
  return good;
}

std::vector<char> live_nodes(const Graph& g) {
  SccResult scc = tarjan(g);
  std::vector<char> good = good_components(g, scc);
  // Backward closure: a node is live iff it reaches a good component.
  std::vector<std::vector<int>> radj(g.n);
  for (int v = 0; v < g.n; ++v)
    for (auto [l, w] : g.adj[v]) radj[w].push_back(v);
  std::vector<char> live(g.n, 0);
  std::deque<int> work;
  for (int v = 0; v < g.n; ++v)
    if (good[scc.comp[v]]) {
      live[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    for (int u : radj[v])
      if (!live[u]) {
        live[u] = 1;
        work.push_back(u);
      }
  }
  return live;
}

Graph graph_of(const Nbw& a) {
  Graph g;
  g.n = a.state_count;
  g.adj.assign(g.n, {});
  for (int q = 0; q < a.state_count; ++q)
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      for (int t : a.trans[q][l]) g.adj[q].push_back({l, t});
  g.in_set.assign(a.acceptance.size(), std::vector<char>(g.n, 0));
  for (std::size_t j = 0; j < a.acceptance.size(); ++j)
    for (int q : a.acceptance[j]) g.in_set[j][q] = 1;
  g.initial = a.initial;
  return g;
}

// Shortest letter path from `from` to a goal node (BFS), restricted to an
// optional node mask. With allow_empty the empty path counts; otherwise a
// returning edge can rediscover `from` itself, which closes cycles.
bool bfs_path(const Graph& g, int from, const std::vector<char>* allowed,
              const std::vector<char>& goal, bool allow_empty, std::vector<Letter>& letters,
              int& reached) {
  if (allow_empty && goal[from]) {
    reached = from;
    return true;
  }
  std::vector<int> prev_node(g.n, -1);
  std::vector<Letter> prev_letter(g.n, 0);
  std::vector<char> seen(g.n, 0);
  std::deque<int> work{from};
  seen[from] = 1;
  int goal_node = -1, goal_pred = -1;
  Letter goal_letter = 0;
  while (!work.empty() && goal_node < 0) {
    int v = work.front();
    work.pop_front();
    for (auto [l, w] : g.adj[v]) {
      if (allowed && !(*allowed)[w]) continue;
      if (goal[w]) {
        goal_node = w;
        goal_pred = v;
        goal_letter = l;
        break;
      }
      if (seen[w]) continue;
      seen[w] = 1;
      prev_node[w] = v;
      prev_letter[w] = l;
      work.push_back(w);
    }
  }
  if (goal_node < 0) return false;
  std::vector<Letter> rev{goal_letter};
  for (int v = goal_pred; v != from; v = prev_node[v]) rev.push_back(prev_letter[v]);
  std::reverse(rev.begin(), rev.end());
  letters.insert(letters.end(), rev.begin(), rev.end());
  reached = goal_node;
  return true;
}

}  // namespace

std::vector<char> live_state_mask(const Nbw& a) { return live_nodes(graph_of(a)); }

StateSet live_states(const Nbw& a) {
  auto mask = live_state_mask(a);
  StateSet out;
  for (int q = 0; q < a.state_count; ++q)
    if (mask[q]) out.push_back(q);
  return out;
}

bool is_empty(const Nbw& a) {
  auto live = live_state_mask(a);
  return std::none_of(a.initial.begin(), a.initial.end(), [&](int q) { return live[q]; });
}

bool is_universal(const Nbw& a) {
  UniversalityOracle oracle(a);
  return oracle.universal_from(sorted_unique(a.initial));
}

bool lasso_member(const Nbw& a, const Lasso& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  const std::size_t positions = w.size();
  // Product with the loop automaton of w; single letter per position.
  Graph g;
  g.n = a.state_count * static_cast<int>(positions);
  g.adj.assign(g.n, {});
  auto id = [&](int q, std::size_t pos) { return q * static_cast<int>(positions) + static_cast<int>(pos); };
  for (int q = 0; q < a.state_count; ++q)
    for (std::size_t pos = 0; pos < positions; ++pos) {
      Letter l = w.at(pos);
      if (l >= a.alphabet.letter_count()) throw std::invalid_argument("alphabet mismatch");
      for (int t : a.trans[q][l]) g.adj[id(q, pos)].push_back({l, id(t, w.step(pos))});
    }
  g.in_set.assign(a.acceptance.size(), std::vector<char>(g.n, 0));
  for (std::size_t j = 0; j < a.acceptance.size(); ++j)
    for (int q : a.acceptance[j])
      for (std::size_t pos = 0; pos < positions; ++pos) g.in_set[j][id(q, pos)] = 1;
  auto live = live_nodes(g);
  return std::any_of(a.initial.begin(), a.initial.end(), [&](int q) { return live[id(q, 0)]; });
}

std::optional<Lasso> emptiness_witness(const Nbw& a) {
  Graph g = graph_of(a);
  SccResult scc = tarjan(g);
  std::vector<char> good = good_components(g, scc);
  auto live = live_nodes(g);

  int start = -1;
  for (int q : a.initial)
    if (live[q]) {
      start = q;
      break;
    }
  if (start < 0) return std::nullopt;

  // Prefix: walk from an initial state into a good component.
  std::vector<char> in_good(g.n, 0);
  for (int v = 0; v < g.n; ++v) in_good[v] = good[scc.comp[v]];
  Lasso w;
  int anchor = start;
  if (!in_good[start]) {
    if (!bfs_path(g, start, nullptr, in_good, false, w.prefix, anchor)) return std::nullopt;
  }

  // Loop: within the component, visit a representative of each acceptance
  // set and close the cycle back at the anchor.
  std::vector<char> comp_mask(g.n, 0);
  for (int v = 0; v < g.n; ++v) comp_mask[v] = scc.comp[v] == scc.comp[anchor];
  int cursor = anchor;
  for (const auto& set : g.in_set) {
    std::vector<char> goal(g.n, 0);
    bool has_goal = false;
    for (int v = 0; v < g.n; ++v)
      if (comp_mask[v] && set[v]) {
        goal[v] = 1;
        has_goal = true;
      }
    if (!has_goal) return std::nullopt;  // good component would have it; defensive
    int reached = cursor;
    if (!bfs_path(g, cursor, &comp_mask, goal, true, w.loop, reached)) return std::nullopt;
    cursor = reached;
  }
  {
    std::vector<char> goal(g.n, 0);
    goal[anchor] = 1;
    int reached = cursor;
    bool need_step = w.loop.empty();  // a loop must contain at least one letter
    if (cursor != anchor || need_step) {
      if (!bfs_path(g, cursor, &comp_mask, goal, false, w.loop, reached)) return std::nullopt;
    }
  }
  w.tag = LassoTag::Joint;
  return w;
}

// ---------------------------------------------------------------------------
// Trim + bisimulation quotient
// ---------------------------------------------------------------------------

Nbw reduce(const Nbw& a) {
  // Forward-reachable and live states only.
  std::vector<char> reach(a.state_count, 0);
  std::deque<int> work;
  for (int q : a.initial)
    if (!reach[q]) {
      reach[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l)
      for (int t : a.trans[q][l])
        if (!reach[t]) {
          reach[t] = 1;
          work.push_back(t);
        }
  }
  auto live = live_state_mask(a);
  std::vector<int> keep_index(a.state_count, -1);
  std::vector<int> kept;
  for (int q = 0; q < a.state_count; ++q)
    if (reach[q] && live[q]) {
      keep_index[q] = static_cast<int>(kept.size());
      kept.push_back(q);
    }

  const int m = static_cast<int>(kept.size());
  // Partition refinement on (acceptance signature, annotation, successor classes).
  std::vector<int> cls(m, 0);
  {
    std::map<std::vector<int>, int> sig_index;
    for (int i = 0; i < m; ++i) {
      int q = kept[i];
      std::vector<int> sig;
      for (const auto& set : a.acceptance)
        sig.push_back(std::binary_search(set.begin(), set.end(), q) ? 1 : 0);
      if (a.has_annotation()) {
        sig.push_back(static_cast<int>(a.atom_mask[q]));
        sig.push_back(static_cast<int>(a.atom_val[q]));
      }
      auto [it, inserted] = sig_index.try_emplace(std::move(sig), static_cast<int>(sig_index.size()));
      cls[i] = it->second;
    }
  }
  while (true) {
    std::map<std::pair<int, std::vector<std::vector<int>>>, int> sig_index;
    std::vector<int> next(m, 0);
    for (int i = 0; i < m; ++i) {
      int q = kept[i];
      std::vector<std::vector<int>> succ(a.alphabet.letter_count());
      for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
        for (int t : a.trans[q][l])
          if (keep_index[t] >= 0) succ[l].push_back(cls[keep_index[t]]);
        succ[l] = sorted_unique(std::move(succ[l]));
      }
      auto key = std::make_pair(cls[i], std::move(succ));
      auto [it, inserted] = sig_index.try_emplace(std::move(key), static_cast<int>(sig_index.size()));
      next[i] = it->second;
    }
    bool changed = next != cls;
    cls = std::move(next);
    if (!changed) break;
  }

  int class_count = m == 0 ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  Nbw r;
  r.alphabet = a.alphabet;
  r.state_count = class_count;
  r.trans.assign(class_count, std::vector<std::vector<int>>(a.alphabet.letter_count()));
  std::vector<int> rep(class_count, -1);
  for (int i = 0; i < m; ++i)
    if (rep[cls[i]] < 0) rep[cls[i]] = kept[i];
  for (int c = 0; c < class_count; ++c) {
    int q = rep[c];
    for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
      std::vector<int> targets;
      for (int t : a.trans[q][l])
        if (keep_index[t] >= 0) targets.push_back(cls[keep_index[t]]);
      r.trans[c][l] = sorted_unique(std::move(targets));
    }
  }
  for (int q : a.initial)
    if (keep_index[q] >= 0) r.initial.push_back(cls[keep_index[q]]);
  r.initial = sorted_unique(std::move(r.initial));
  r.acceptance.assign(a.acceptance.size(), {});
  for (std::size_t j = 0; j < a.acceptance.size(); ++j) {
    std::vector<int> set;
    for (int c = 0; c < class_count; ++c)
      if (std::binary_search(a.acceptance[j].begin(), a.acceptance[j].end(), rep[c]))
        set.push_back(c);
    r.acceptance[j] = std::move(set);
  }
  if (a.has_annotation()) {
    r.atom_mask.resize(class_count);
    r.atom_val.resize(class_count);
    for (int c = 0; c < class_count; ++c) {
      r.atom_mask[c] = a.atom_mask[rep[c]];
      r.atom_val[c] = a.atom_val[rep[c]];
    }
  }
  return r;
}

}  // namespace ge
