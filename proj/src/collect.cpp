#include "propd2/collect.hpp"

namespace propd2 {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int ipow(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

TruncationParams TruncationParams::make(int p, const Int& q, int cls, int mod_exp) {
  if (!is_prime(p)) throw WordError("p must be prime");
  if (cls < 1) throw WordError("class must be >= 1");
  TruncationParams t;
  t.p = p;
  t.q = q;
  t.cls = cls;
  int m = 0;
  if (q != 0) {
    Int v = q;
    while (v > 1 && v % p == 0) {
      v /= p;
      ++m;
    }
    if (v != 1 || m < 1) throw WordError("q must be 0 or a positive power of p");
  }
  t.mod_exp = mod_exp >= 1 ? mod_exp : (q != 0 ? m * (cls + 1) + 2 : cls + 3);
  t.modulus = ipow(p, t.mod_exp);
  return t;
}

int TruncationParams::q_exp() const {
  if (q == 0) throw WordError("q_exp undefined for q = 0");
  int m = 0;
  Int v = q;
  while (v > 1) {
    v /= p;
    ++m;
  }
  return m;
}

NilpotentQuotient::NilpotentQuotient(GeneratorSet gens, TruncationParams params)
    : gens_(gens), params_(params), basis_(gens.rank(), params.cls) {}

int NilpotentQuotient::min_weight(const NormalWord& w) const {
  int mw = params_.cls + 1;
  for (const auto& [idx, e] : w)
    if (basis_.weight(idx) < mw) mw = basis_.weight(idx);
  return mw;
}

// ---- normal word arithmetic -------------------------------------------------

NormalWord NilpotentQuotient::nw_mul_letter(NormalWord a, int idx, const Int& e) const {
  if (e == 0) return a;
  // split a = prefix . suffix with suffix indices > idx, then
  // a . c^e = prefix . c^e . suffix . [suffix, c^e].
  size_t cut = a.size();
  while (cut > 0 && a[cut - 1].first > idx) --cut;
  NormalWord suffix(a.begin() + cut, a.end());
  a.erase(a.begin() + cut, a.end());
  if (!a.empty() && a.back().first == idx) {
    a.back().second += e;
    if (a.back().second == 0) a.pop_back();
  } else {
    a.push_back({idx, e});
  }
  if (suffix.empty()) return a;
  NormalWord corr = seq_comm(suffix, {{idx, e}});
  a.insert(a.end(), suffix.begin(), suffix.end());
  return nw_mul(std::move(a), corr);
}

NormalWord NilpotentQuotient::nw_mul(NormalWord a, const NormalWord& b) const {
  for (const auto& [idx, e] : b) a = nw_mul_letter(std::move(a), idx, e);
  return a;
}

NormalWord NilpotentQuotient::nw_inverse(const NormalWord& a) const {
  NormalWord r;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    r = nw_mul_letter(std::move(r), it->first, -it->second);
  return r;
}

NormalWord NilpotentQuotient::nw_power(const NormalWord& a, Int k) const {
  if (k < 0) return nw_power(nw_inverse(a), -k);
  if (a.size() == 1) return k == 0 ? NormalWord{} : NormalWord{{a[0].first, a[0].second * k}};
  NormalWord r;
  NormalWord base = a;
  while (k > 0) {
    if ((k & 1) != 0) r = nw_mul(std::move(r), base);
    k >>= 1;
    if (k > 0) base = nw_mul(base, base);
  }
  return r;
}

// [u, v] for unnormalized letter sequences, via the product identities
// [uv,w] = [u,w][[u,w],v][v,w] and [u,vw] = [u,w][u,v][[u,v],w].
NormalWord NilpotentQuotient::seq_comm(const NormalWord& u, const NormalWord& v) const {
  if (u.empty() || v.empty()) return {};
  if (min_weight(u) + min_weight(v) > params_.cls) return {};
  if (u.size() == 1 && v.size() == 1) {
    auto [a, x] = u[0];
    auto [b, y] = v[0];
    if (a == b) return {};
    if (a > b) return comm_pow(a, x, b, y);
    return nw_inverse(comm_pow(b, y, a, x));
  }
  if (u.size() > 1) {
    NormalWord head{u[0]};
    NormalWord tail(u.begin() + 1, u.end());
    NormalWord K = seq_comm(head, v);
    NormalWord mid = seq_comm(K, tail);
    return nw_mul(nw_mul(std::move(K), mid), seq_comm(tail, v));
  }
  NormalWord v0{v[0]};
  NormalWord vp(v.begin() + 1, v.end());
  NormalWord A = seq_comm(u, vp);
  NormalWord B = seq_comm(u, v0);
  NormalWord C = seq_comm(B, vp);
  return nw_mul(nw_mul(std::move(A), B), C);
}

NormalWord NilpotentQuotient::comm_pow(int j, const Int& a, int i, const Int& e) const {
  if (a == 0 || e == 0) return {};
  if (basis_.weight(j) + basis_.weight(i) > params_.cls) return {};
  // [U^{-1}, v] = U [U,v]^{-1} U^{-1} with U = c_j^{-a}; likewise on the right.
  if (a < 0) {
    NormalWord X = nw_inverse(comm_pow(j, -a, i, e));
    return nw_mul(nw_mul({{j, -a}}, X), {{j, a}});
  }
  if (e < 0) {
    NormalWord X = nw_inverse(comm_pow(j, a, i, -e));
    return nw_mul(nw_mul({{i, -e}}, X), {{i, e}});
  }
  if (a == 1 && e == 1) return comm_basic(j, i);
  if (a > 1) {
    if ((a & 1) == 0) {
      // [u^2k, v] = K [K, u^k] K with K = [u^k, v]
      Int k = a >> 1;
      NormalWord K = comm_pow(j, k, i, e);
      NormalWord mid = seq_comm(K, {{j, k}});
      return nw_mul(nw_mul(K, mid), K);
    }
    NormalWord K = comm_pow(j, a - 1, i, e);
    NormalWord mid = seq_comm(K, {{j, 1}});
    return nw_mul(nw_mul(std::move(K), mid), comm_pow(j, 1, i, e));
  }
  // a == 1, e > 1
  if ((e & 1) == 0) {
    Int k = e >> 1;
    NormalWord T = comm_pow(j, a, i, k);
    NormalWord C = seq_comm(T, {{i, k}});
    return nw_mul(nw_mul(T, T), C);
  }
  NormalWord A = comm_pow(j, a, i, e - 1);
  NormalWord B = comm_pow(j, a, i, 1);
  NormalWord C = seq_comm(B, {{i, e - 1}});
  return nw_mul(nw_mul(std::move(A), B), C);
}

NormalWord NilpotentQuotient::comm_basic(int j, int i) const {
  if (basis_.weight(j) + basis_.weight(i) > params_.cls) return {};
  if (auto idx = basis_.definition(j, i)) return {{*idx, 1}};
  auto it = comm_cache_.find({j, i});
  if (it != comm_cache_.end()) return it->second;
  // c_j = [c_A, c_B] = A^{-1} B^{-1} A B; commute the unnormalized sequence.
  const BasicCommutator& c = basis_.entry(j);
  NormalWord seq{{c.left, -1}, {c.right, -1}, {c.left, 1}, {c.right, 1}};
  NormalWord r = seq_comm(seq, {{i, 1}});
  comm_cache_[{j, i}] = r;
  return r;
}

// ---- public interface -------------------------------------------------------

MalcevElement NilpotentQuotient::collect(const FreeWord& w) const {
  if (!(w.gens() == gens_)) throw WordError("collect: word over wrong generator set");
  NormalWord r;
  for (const Letter& l : w.letters()) r = nw_mul_letter(std::move(r), l.gen - 1, l.exp);
  return from_normal(r);
}

MalcevElement NilpotentQuotient::identity() const {
  MalcevElement e;
  e.coords.assign(basis_.size(), 0);
  return e;
}

NormalWord NilpotentQuotient::to_normal(const MalcevElement& a) const {
  NormalWord w;
  for (int i = 0; i < basis_.size(); ++i)
    if (a.coords[i] != 0) w.push_back({i, a.coords[i]});
  return w;
}

MalcevElement NilpotentQuotient::from_normal(const NormalWord& w) const {
  MalcevElement a = identity();
  for (const auto& [idx, e] : w) a.coords[idx] = e;
  return a;
}

MalcevElement NilpotentQuotient::multiply(const MalcevElement& a, const MalcevElement& b) const {
  return from_normal(nw_mul(to_normal(a), to_normal(b)));
}

MalcevElement NilpotentQuotient::power(const MalcevElement& a, const Int& k) const {
  return from_normal(nw_power(to_normal(a), k));
}

MalcevElement NilpotentQuotient::commutator(const MalcevElement& a,
                                            const MalcevElement& b) const {
  return from_normal(seq_comm(to_normal(a), to_normal(b)));
}

MalcevElement NilpotentQuotient::inverse(const MalcevElement& a) const {
  return from_normal(nw_inverse(to_normal(a)));
}

std::vector<Int> NilpotentQuotient::reduced_coords(const MalcevElement& a) const {
  std::vector<Int> r(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) {
    Int c = a.coords[i] % params_.modulus;
    if (c < 0) c += params_.modulus;
    r[i] = c;
  }
  return r;
}

bool NilpotentQuotient::equal(const MalcevElement& a, const MalcevElement& b) const {
  return reduced_coords(a) == reduced_coords(b);
}

int NilpotentQuotient::filtration_weight(const MalcevElement& a) const {
  int j = 1;
  while (j <= params_.cls) {
    // test membership in G_{j+1}
    bool in = true;
    for (int i = 0; i < basis_.size() && in; ++i) {
      int w = basis_.weight(i);
      if (w > j) continue;
      if (params_.q == 0) {
        if (a.coords[i] % params_.modulus != 0) in = false;
      } else {
        if (a.coords[i] % ipow(params_.q, j + 1 - w) != 0) in = false;
      }
    }
    if (!in) break;
    ++j;
  }
  return j;
}

std::vector<std::pair<int, int>> NilpotentQuotient::gr_basis(int j) const {
  if (j < 1 || j > params_.cls) throw WordError("gr_basis: j out of range");
  std::vector<std::pair<int, int>> b;
  for (int i = 0; i < basis_.size(); ++i) {
    int w = basis_.weight(i);
    if (w == j || (params_.q != 0 && w < j)) b.push_back({j - w, i});
  }
  return b;
}

Int NilpotentQuotient::gr_modulus() const {
  return params_.q != 0 ? params_.q : params_.modulus;
}

GradedElement NilpotentQuotient::project_gr(const MalcevElement& a, int j) const {
  if (filtration_weight(a) < j) throw WordError("project_gr: element not in G_j");
  GradedElement g;
  g.j = j;
  Int mod = gr_modulus();
  for (auto [piexp, idx] : gr_basis(j)) {
    Int c = a.coords[idx];
    if (piexp > 0) c /= ipow(params_.q, piexp);
    c %= mod;
    if (c < 0) c += mod;
    g.coeffs.push_back(c);
  }
  return g;
}

}  // namespace propd2
