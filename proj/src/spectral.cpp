#include "spectile/spectral.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace spectile {

i64 character_pairing(const Group& g, i64 lambda, i64 s) {
  i64 N = g.exponent();
  if (g.cyclic()) return (lambda % N) * (s % N) % N;
  auto lc = g.coords_of(lambda);
  auto sc = g.coords_of(s);
  i64 acc = 0;
  for (size_t i = 0; i < lc.size(); i++) {
    i64 ni = g.orders()[i];
    acc = (acc + lc[i] * sc[i] % N * (N / ni)) % N;
  }
  return acc;
}

bool fourier_zero(const WeightedSet& s, i64 lambda) {
  const Group& g = s.group();
  i64 N = g.exponent();
  std::vector<i64> c(static_cast<size_t>(N), 0);
  bool any = false;
  for (i64 x = 0; x < g.size(); x++) {
    i64 w = s.weight(x);
    if (w == 0) continue;
    any = true;
    c[static_cast<size_t>(character_pairing(g, lambda, x))] += w;
  }
  if (!any) return true;
  IntPoly p{std::move(c)};
  if (p.is_zero()) return true;
  return poly_divides_monic(cyclotomic(N), p);
}

namespace {

// For cyclic groups the zero set is a union of order classes: lambda is a
// Fourier zero iff Phi_{ord(lambda)} divides the mask polynomial.
std::vector<char> zero_bitmap(const WeightedSet& s) {
  const Group& g = s.group();
  std::vector<char> zero(static_cast<size_t>(g.size()), 0);
  if (s.empty()) {
    std::fill(zero.begin(), zero.end(), 1);
    return zero;
  }
  if (g.cyclic()) {
    i64 n = g.order();
    MaskPoly m = mask_poly(s);
    std::vector<i64> ds = divisors_of(n);
    std::vector<char> div_ok(ds.size(), 0);
    for (size_t i = 0; i < ds.size(); i++) div_ok[i] = divides(m, ds[i]) ? 1 : 0;
    for (i64 x = 0; x < n; x++) {
      i64 ord = n / gcd_i64(n, x);
      size_t j = static_cast<size_t>(std::lower_bound(ds.begin(), ds.end(), ord) - ds.begin());
      zero[static_cast<size_t>(x)] = div_ok[j];
    }
    return zero;
  }
  for (i64 x = 0; x < g.size(); x++) zero[static_cast<size_t>(x)] = fourier_zero(s, x) ? 1 : 0;
  return zero;
}

struct CliqueGraph {
  i64 nv = 0;
  size_t words = 0;
  std::vector<uint64_t> adj;  // nv rows of `words` u64s
  std::vector<i64> label;     // vertex -> group element

  bool edge(i64 u, i64 v) const {
    return adj[static_cast<size_t>(u) * words + static_cast<size_t>(v) / 64] >> (v % 64) & 1;
  }
};

// orthogonality graph restricted to the zero set, vertices sorted by
// descending degree (canonical tie-break) for the clique search
CliqueGraph build_graph(const Group& g, const std::vector<char>& zero) {
  std::vector<i64> verts;
  for (i64 x = 1; x < g.size(); x++)
    if (zero[static_cast<size_t>(x)]) verts.push_back(x);
  i64 nv = static_cast<i64>(verts.size());
  std::vector<std::vector<char>> a(static_cast<size_t>(nv), std::vector<char>(static_cast<size_t>(nv), 0));
  std::vector<i64> deg(static_cast<size_t>(nv), 0);
  for (i64 i = 0; i < nv; i++)
    for (i64 j = i + 1; j < nv; j++) {
      i64 d = g.sub(verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)]);
      if (zero[static_cast<size_t>(d)]) {
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(j)][static_cast<size_t>(i)] = 1;
        deg[static_cast<size_t>(i)]++;
        deg[static_cast<size_t>(j)]++;
      }
    }
  std::vector<i64> order(static_cast<size_t>(nv));
  for (i64 i = 0; i < nv; i++) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](i64 x, i64 y) {
    if (deg[static_cast<size_t>(x)] != deg[static_cast<size_t>(y)])
      return deg[static_cast<size_t>(x)] > deg[static_cast<size_t>(y)];
    return verts[static_cast<size_t>(x)] < verts[static_cast<size_t>(y)];
  });
  CliqueGraph cg;
  cg.nv = nv;
  cg.words = static_cast<size_t>((nv + 63) / 64);
  cg.adj.assign(static_cast<size_t>(nv) * cg.words, 0);
  cg.label.resize(static_cast<size_t>(nv));
  for (i64 i = 0; i < nv; i++) cg.label[static_cast<size_t>(i)] = verts[static_cast<size_t>(order[static_cast<size_t>(i)])];
  for (i64 i = 0; i < nv; i++)
    for (i64 j = 0; j < nv; j++)
      if (a[static_cast<size_t>(order[static_cast<size_t>(i)])][static_cast<size_t>(order[static_cast<size_t>(j)])])
        cg.adj[static_cast<size_t>(i) * cg.words + static_cast<size_t>(j) / 64] |= uint64_t{1} << (j % 64);
  return cg;
}

struct CliqueSearch {
  const CliqueGraph& g;
  i64 target;                 // clique size wanted (excluding the implicit 0)
  std::vector<i64> current;
  std::vector<std::vector<i64>> found;
  size_t max_found;
  bool stop = false;

  CliqueSearch(const CliqueGraph& gg, i64 t, size_t mf) : g(gg), target(t), max_found(mf) {}

  static i64 popcount_all(const std::vector<uint64_t>& m) {
    i64 c = 0;
    for (uint64_t w : m) c += __builtin_popcountll(w);
    return c;
  }

  // greedy coloring upper bound on the clique number of the candidate set
  i64 color_bound(const std::vector<uint64_t>& cand) const {
    std::vector<uint64_t> rest = cand;
    i64 colors = 0;
    while (popcount_all(rest) > 0) {
      colors++;
      std::vector<uint64_t> avail = rest;
      while (true) {
        i64 v = -1;
        for (size_t wi = 0; wi < avail.size(); wi++)
          if (avail[wi]) {
            v = static_cast<i64>(wi * 64 + static_cast<size_t>(__builtin_ctzll(avail[wi])));
            break;
          }
        if (v < 0) break;
        avail[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
        rest[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
        for (size_t k = 0; k < avail.size(); k++)
          avail[k] &= ~g.adj[static_cast<size_t>(v) * g.words + k];
      }
    }
    return colors;
  }

  void run(std::vector<uint64_t>& cand) {
    if (stop) return;
    if (static_cast<i64>(current.size()) == target) {
      found.push_back(current);
      if (found.size() >= max_found) stop = true;
      return;
    }
    i64 need = target - static_cast<i64>(current.size());
    if (popcount_all(cand) < need) return;
    if (color_bound(cand) < need) return;
    for (size_t wi = 0; wi < cand.size() && !stop; wi++) {
      uint64_t w = cand[wi];
      while (w && !stop) {
        int b = __builtin_ctzll(w);
        w &= w - 1;
        i64 v = static_cast<i64>(wi * 64 + static_cast<size_t>(b));
        cand[wi] &= ~(uint64_t{1} << b);
        std::vector<uint64_t> next(cand.size());
        bool nonempty = false;
        for (size_t k = 0; k < cand.size(); k++) {
          next[k] = cand[k] & g.adj[static_cast<size_t>(v) * g.words + k];
          nonempty |= next[k] != 0;
        }
        (void)nonempty;
        current.push_back(v);
        run(next);
        current.pop_back();
      }
    }
  }
};

std::vector<std::vector<i64>> spectra_search(const WeightedSet& s, size_t max_count) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("spectrum search: needs a nonempty set");
  const Group& g = s.group();
  i64 size = s.total();
  if (size == 1) return {{0}};
  auto zero = zero_bitmap(s);
  CliqueGraph cg = build_graph(g, zero);
  if (cg.nv < size - 1) return {};
  CliqueSearch cs(cg, size - 1, max_count);
  std::vector<uint64_t> cand(cg.words, 0);
  for (i64 v = 0; v < cg.nv; v++) cand[static_cast<size_t>(v) / 64] |= uint64_t{1} << (v % 64);
  cs.run(cand);
  std::vector<std::vector<i64>> out;
  for (auto& clq : cs.found) {
    std::vector<i64> spec{0};
    for (i64 v : clq) spec.push_back(cg.label[static_cast<size_t>(v)]);
    std::sort(spec.begin(), spec.end());
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

std::vector<i64> zero_set(const WeightedSet& s) {
  // 0 shows up only when the total weight vanishes; the bitmap already
  // evaluates the trivial character honestly
  auto zero = zero_bitmap(s);
  std::vector<i64> out;
  for (i64 x = 0; x < s.group().size(); x++)
    if (zero[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

bool verify_spectral_pair(const WeightedSet& s, const std::vector<i64>& lambda) {
  if (!s.is_set()) return false;
  if (static_cast<i64>(lambda.size()) != s.total()) return false;
  std::vector<i64> lam = lambda;
  std::sort(lam.begin(), lam.end());
  if (std::adjacent_find(lam.begin(), lam.end()) != lam.end()) return false;
  auto zero = zero_bitmap(s);
  const Group& g = s.group();
  for (size_t i = 0; i < lam.size(); i++)
    for (size_t j = i + 1; j < lam.size(); j++) {
      i64 d = g.sub(lam[i], lam[j]);
      if (!zero[static_cast<size_t>(d)]) return false;
    }
  return true;
}

std::optional<SpectralCertificate> is_spectral(const WeightedSet& s) {
  auto found = spectra_search(s, 1);
  if (found.empty()) return std::nullopt;
  return SpectralCertificate{found[0]};
}

std::vector<std::vector<i64>> enumerate_spectra(const WeightedSet& s, std::size_t max_count) {
  return spectra_search(s, max_count);
}

std::optional<std::vector<std::vector<i64>>> log_hadamard_search(i64 k, i64 t) {
  if (k < 1 || t < 2 || !is_prime(t)) throw std::invalid_argument("log_hadamard_search: need k >= 1 and prime t");
  if (k == 1) return std::vector<std::vector<i64>>{{0}};
  if (k % t != 0) return std::nullopt;  // balanced rows need t | k
  // candidate rows: first entry 0, each symbol exactly k/t times
  std::vector<std::vector<i64>> cands;
  std::vector<i64> row(static_cast<size_t>(k), 0);
  i64 quota = k / t;
  std::vector<i64> count(static_cast<size_t>(t), 0);
  count[0] = 1;  // leading zero
  auto balanced_diff = [&](const std::vector<i64>& a, const std::vector<i64>& b) {
    std::vector<i64> c(static_cast<size_t>(t), 0);
    for (i64 i = 0; i < k; i++) c[static_cast<size_t>(((a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]) % t + t) % t)]++;
    for (i64 v : c)
      if (v != quota) return false;
    return true;
  };
  std::function<void(i64)> gen = [&](i64 pos) {
    if (pos == k) {
      cands.push_back(row);
      return;
    }
    for (i64 sym = 0; sym < t; sym++) {
      if (count[static_cast<size_t>(sym)] == quota) continue;
      count[static_cast<size_t>(sym)]++;
      row[static_cast<size_t>(pos)] = sym;
      gen(pos + 1);
      count[static_cast<size_t>(sym)]--;
    }
    row[static_cast<size_t>(pos)] = 0;
  };
  gen(1);
  // rows after the zero row are strictly increasing: valid matrices are
  // stable under row permutation so this loses nothing
  std::vector<std::vector<i64>> rows{std::vector<i64>(static_cast<size_t>(k), 0)};
  std::function<bool(size_t)> dfs = [&](size_t lo) {
    if (static_cast<i64>(rows.size()) == k) return true;
    for (size_t    ci = lo; ci < cands.size(); ci++) {
      bool ok = true;
      for (size_t r = 1; r < rows.size() && ok; r++) ok = balanced_diff(cands[ci], rows[r]);
      if (!ok) continue;
      rows.push_back(cands[ci]);
      if (dfs(ci + 1)) return true;
      rows.pop_back();
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return rows;
}

}  // namespace spectile
