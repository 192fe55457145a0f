#include "ge/automata.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ge {

// Universality via transition profiles. A profile of a finite word records,
// per state pair (q,q'), whether the word admits a path q -> q' and whether
// some such path passes through the acceptance set. Profiles of all nonempty
// words form a finite monoid generated by the letter profiles under
// composition. A lasso u.v^w with idempotent loop profile E is accepted from
// q0 iff some q with an alpha-cycle E(q,q) is reachable via u (or u.v), so
// universality from a state set reduces to intersecting precomputed "good
// origin" sets, one per realized (prefix, idempotent loop) pattern.

namespace {

struct Profile {
  // Bit-matrix rows; words_per_row 64-bit blocks per row.
  std::vector<std::uint64_t> path;
  std::vector<std::uint64_t> via;

  bool operator==(const Profile& o) const { return path == o.path && via == o.via; }
};

struct ProfileHash {
  std::size_t operator()(const Profile& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    auto mixin = [&h](const std::vector<std::uint64_t>& v) {
      for (std::uint64_t x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
    };
    mixin(p.path);
    mixin(p.via);
    return h;
  }
};

}  // namespace

struct UniversalityOracle::Impl {
  int n = 0;
  int words = 0;
  int copies = 1;                 // degeneralization factor; state q maps to q*copies
  bool trivially_empty = false;   // no states at all: only relevant corner
  bool has_rejector = false;      // some pattern rejects every origin
  std::vector<std::vector<std::uint64_t>> good_antichain;  // minimal good-origin sets

  std::uint64_t* row(Profile& p, bool via, int q) const {
    return (via ? p.via : p.path).data() + static_cast<std::size_t>(q) * words;
  }
  const std::uint64_t* row(const Profile& p, bool via, int q) const {
    return (via ? p.via : p.path).data() + static_cast<std::size_t>(q) * words;
  }

  Profile compose(const Profile& a, const Profile& b) const {
    Profile c;
    c.path.assign(static_cast<std::size_t>(n) * words, 0);
    c.via.assign(static_cast<std::size_t>(n) * words, 0);
    for (int q = 0; q < n; ++q) {
      const std::uint64_t* ap = row(a, false, q);
      const std::uint64_t* av = row(a, true, q);
      std::uint64_t* cp = row(c, false, q);
      std::uint64_t* cv = row(c, true, q);
      for (int blk = 0; blk < words; ++blk) {
        std::uint64_t bits = ap[blk];
        while (bits) {
          int mid = blk * 64 + __builtin_ctzll(bits);
          bits &= bits - 1;
          const std::uint64_t* bp = row(b, false, mid);
          const std::uint64_t* bv = row(b, true, mid);
          for (int w = 0; w < words; ++w) {
            cp[w] |= bp[w];
            cv[w] |= bv[w];
          }
        }
        std::uint64_t vbits = av[blk];
        while (vbits) {
          int mid = blk * 64 + __builtin_ctzll(vbits);
          vbits &= vbits - 1;
          const std::uint64_t* bp = row(b, false, mid);
          std::uint64_t* target = cv;
          for (int w = 0; w < words; ++w) target[w] |= bp[w];
        }
      }
    }
    return c;
  }

  void build(const Nbw& input, std::size_t profile_cap) {
    Nbw a = degeneralize(input);
    n = a.state_count;
    copies = input.acceptance.size() > 1 ? static_cast<int>(input.acceptance.size()) : 1;
    words = (n + 63) / 64;
    // Keep the profile pool inside a fixed byte budget regardless of n.
    std::size_t bytes_per_profile = static_cast<std::size_t>(n) * words * 16 + 64;
    profile_cap = std::min(profile_cap,
                           std::max<std::size_t>(2000, (std::size_t{512} << 20) / bytes_per_profile));
    if (n == 0) {
      // No states: the language is empty, every nonempty origin query fails.
      trivially_empty = true;
      return;
    }
    std::vector<char> acc(n, 0);
    for (int q : a.acceptance[0]) acc[q] = 1;

    auto set_bit = [&](std::vector<std::uint64_t>& rows, int q, int t) {
      rows[static_cast<std::size_t>(q) * words + t / 64] |= std::uint64_t{1} << (t % 64);
    };

    std::vector<Profile> pool;
    std::unordered_map<Profile, int, ProfileHash> index;
    std::deque<int> work;
    std::vector<int> letters;
    auto add = [&](Profile p) {
      auto it = index.find(p);
      if (it != index.end()) return it->second;
      if (pool.size() >= profile_cap)
        throw std::runtime_error("universality oracle: profile cap exceeded");
      int id = static_cast<int>(pool.size());
      index.emplace(p, id);
      pool.push_back(std::move(p));
      work.push_back(id);
      return id;
    };

    for (Letter l = 0; l < a.alphabet.letter_count(); ++l) {
      Profile p;
      p.path.assign(static_cast<std::size_t>(n) * words, 0);
      p.via.assign(static_cast<std::size_t>(n) * words, 0);
      for (int q = 0; q < n; ++q)
        for (int t : a.trans[q][l]) {
          set_bit(p.path, q, t);
          if (acc[q] || acc[t]) set_bit(p.via, q, t);
        }
      letters.push_back(add(std::move(p)));
    }

    while (!work.empty()) {
      int id = work.front();
      work.pop_front();
      for (int l : letters) {
        Profile next = compose(pool[id], pool[l]);
        add(std::move(next));
      }
    }

    // Idempotent loop profiles and their alpha-cycle target sets.
    struct LoopInfo {
      std::vector<std::uint64_t> targets;  // states from which an alpha-cycle diagonal is reachable
    };
    std::vector<LoopInfo> loops;
    for (const Profile& e : pool) {
      if (!(compose(e, e) == e)) continue;
      std::vector<std::uint64_t> diag(words, 0);
      bool any = false;
      for (int q = 0; q < n; ++q)
        if (row(e, true, q)[q / 64] & (std::uint64_t{1} << (q % 64))) {
          diag[q / 64] |= std::uint64_t{1} << (q % 64);
          any = true;
        }
      LoopInfo info;
      info.targets.assign(words, 0);
      if (any) {
        for (int q = 0; q < n; ++q) {
          bool hits = false;
          const std::uint64_t* pr = row(e, false, q);
          for (int w = 0; w < words && !hits; ++w) hits = (pr[w] & diag[w]) != 0;
          if (hits || (diag[q / 64] & (std::uint64_t{1} << (q % 64))))
            info.targets[q / 64] |= std::uint64_t{1} << (q % 64);
        }
      }
      loops.push_back(std::move(info));
    }

    // Good-origin set per (prefix profile, loop): origins whose prefix row
    // reaches the loop's target set. The identity prefix stands for u = eps.
    auto note_good = [&](std::vector<std::uint64_t> good) {
      bool empty = std::all_of(good.begin(), good.end(), [](std::uint64_t x) { return x == 0; });
      if (empty) {
        has_rejector = true;
        return;
      }
      for (const auto& kept : good_antichain) {
        bool kept_subset = true;
        for (int w = 0; w < words && kept_subset; ++w) kept_subset = (kept[w] & ~good[w]) == 0;
        if (kept_subset) return;  // an existing constraint is at least as strong
      }
      std::erase_if(good_antichain, [&](const std::vector<std::uint64_t>& kept) {
        for (int w = 0; w < words; ++w)
          if (good[w] & ~kept[w]) return false;
        return true;
      });
      good_antichain.push_back(std::move(good));
    };

    for (const LoopInfo& loop : loops) {
      // u = eps: origin must itself reach the diagonal within the loop.
      note_good(loop.targets);
      for (const Profile& p : pool) {
        std::vector<std::uint64_t> good(words, 0);
        for (int q = 0; q < n; ++q) {
          const std::uint64_t* pr = row(p, false, q);
          bool hits = false;
          for (int w = 0; w < words && !hits; ++w) hits = (pr[w] & loop.targets[w]) != 0;
          if (hits) good[q / 64] |= std::uint64_t{1} << (q % 64);
        }
        note_good(std::move(good));
      }
    }
  }

  bool universal_from(const StateSet& origin) const {
    if (trivially_empty || has_rejector) return false;
    std::vector<std::uint64_t> mask(words, 0);
    for (int q : origin) {
      // Counter-0 degeneralized copy of the original state.
      int deg = q * copies;
      mask[deg / 64] |= std::uint64_t{1} << (deg % 64);
    }
    for (const auto& good : good_antichain) {
      bool intersects = false;
      for (int w = 0; w < words && !intersects; ++w) intersects = (mask[w] & good[w]) != 0;
      if (!intersects) return false;
    }
    return true;
  }
};

UniversalityOracle::UniversalityOracle(const Nbw& a, std::size_t profile_cap)
    : impl_(std::make_unique<Impl>()) {
  impl_->build(a, profile_cap);
}

UniversalityOracle::~UniversalityOracle() = default;
UniversalityOracle::UniversalityOracle(UniversalityOracle&&) noexcept = default;
UniversalityOracle& UniversalityOracle::operator=(UniversalityOracle&&) noexcept = default;

bool UniversalityOracle::universal_from(const StateSet& initial) const {
  return impl_->universal_from(initial);
}

}  // namespace ge
