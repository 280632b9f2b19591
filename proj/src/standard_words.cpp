#include "propd2/standard_words.hpp"

namespace propd2 {

namespace {

Int ipow(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

Int mod_reduce(Int v, const Int& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}

Int inv_mod(const Int& u, const Int& mod) {
  Int r0 = mod, r1 = mod_reduce(u, mod), x0 = 0, x1 = 1;
  while (r1 != 0) {
    Int qt = r0 / r1;
    Int r2 = r0 - qt * r1, x2 = x0 - qt * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  if (r0 != 1) throw WordError("inv_mod: not a unit");
  return mod_reduce(x0, mod);
}

// solve W^T c = a mod `mod`, W invertible mod p (unit-pivot elimination)
std::vector<Int> solve_unimodular(std::vector<std::vector<Int>> w, std::vector<Int> a,
                                  const Int& mod, int p) {
  int n = static_cast<int>(a.size());
  for (auto& row : w)
    for (auto& e : row) e = mod_reduce(e, mod);
  for (auto& e : a) e = mod_reduce(e, mod);
  std::vector<int> pivot_col(n, -1);
  std::vector<bool> used(n, false);
  for (int r = 0; r < n; ++r) {
    int pc = -1;
    for (int c = 0; c < n; ++c)
      if (!used[c] && w[r][c] % p != 0) {
        pc = c;
        break;
      }
    if (pc < 0) throw WordError("weight-1 matrix not invertible mod p");
    used[pc] = true;
    pivot_col[r] = pc;
    Int iv = inv_mod(w[r][pc], mod);
    for (int c = 0; c < n; ++c) w[r][c] = mod_reduce(w[r][c] * iv, mod);
    a[r] = mod_reduce(a[r] * iv, mod);
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == r || w[r2][pc] == 0) continue;
      Int f = w[r2][pc];
      for (int c = 0; c < n; ++c) w[r2][c] = mod_reduce(w[r2][c] - f * w[r][c], mod);
      a[r2] = mod_reduce(a[r2] - f * a[r], mod);
    }
  }
  std::vector<Int> x(n, 0);
  for (int r = 0; r < n; ++r) x[pivot_col[r]] = a[r];
  return x;
}

}  // namespace

OrientationCharacter OrientationCharacter::trivial(int p) {
  OrientationCharacter c;
  c.p = p;
  c.kind = Kind::Trivial;
  return c;
}

OrientationCharacter OrientationCharacter::up(int p, int m) {
  if (m < 1) throw WordError("Up(m) requires m >= 1");
  // U_2^(1) = U_2^[2]: normalize to the minus_power presentation
  if (p == 2 && m == 1) return minus_power(2);
  OrientationCharacter c;
  c.p = p;
  c.kind = Kind::Up;
  c.param = m;
  return c;
}

OrientationCharacter OrientationCharacter::minus_times(int f) {
  if (f < 2) throw WordError("minus_times requires f >= 2");
  OrientationCharacter c;
  c.p = 2;
  c.kind = Kind::MinusTimes;
  c.param = f;
  return c;
}

OrientationCharacter OrientationCharacter::minus_power(int f) {
  if (f < 2) throw WordError("minus_power requires f >= 2");
  OrientationCharacter c;
  c.p = 2;
  c.kind = Kind::MinusPower;
  c.param = f;
  return c;
}

Int OrientationCharacter::q() const {
  switch (kind) {
    case Kind::Trivial:
      return 0;
    case Kind::Up:
      return ipow(p, param);
    default:
      return 2;
  }
}

bool StandardWordSpec::defined() const {
  Int qv = chi.q();
  if (qv != 2) {
    // n even; the x_1^q block needs x_1 unless q = 0
    return n % 2 == 0 && (n >= 2 || qv == 0);
  }
  switch (chi.kind) {
    case OrientationCharacter::Kind::MinusPower:
      return n % 2 == 0 && n >= 2;
    case OrientationCharacter::Kind::MinusTimes:
      return (n % 2 == 0 && n >= 4) || (n % 2 == 1 && n >= 3);
    default:
      return false;
  }
}

FreeWord build_r1(const StandardWordSpec& spec, const std::vector<FreeWord>& basis) {
  if (!spec.defined()) throw WordError("undefined standard word");
  if (static_cast<int>(basis.size()) != spec.n + spec.b)
    throw WordError("build_r1: basis size mismatch");
  const GeneratorSet g = basis.empty() ? GeneratorSet(spec.n, spec.b) : basis[0].gens();
  auto X = [&](int i) { return basis[i - 1]; };
  Int qv = spec.chi.q();
  FreeWord r(g);
  int comm_from = 1;  // [x_c, x_{c+1}][x_{c+2}, ...] starts here
  if (qv != 2) {
    if (spec.n >= 2) r = power(X(1), qv);
  } else if (spec.chi.kind == OrientationCharacter::Kind::MinusPower) {
    r = power(X(1), 2 + ipow(2, spec.chi.param));
  } else if (spec.n % 2 == 0) {
    // x_1^2 [x_1,x_2] x_3^{2^f} [x_3,x_4]...
    r = multiply(multiply(power(X(1), 2), commutator(X(1), X(2))),
                 power(X(3), ipow(2, spec.chi.param)));
    comm_from = 3;
  } else {
    // x_1^2 x_2^{2^f} [x_2,x_3]...
    r = multiply(power(X(1), 2), power(X(2), ipow(2, spec.chi.param)));
    comm_from = 2;
  }
  for (int i = comm_from; i + 1 <= spec.n; i += 2) r = multiply(r, commutator(X(i), X(i + 1)));
  for (int i = spec.n + 1; i <= spec.n + spec.b; ++i) r = multiply(r, basis[i - 1]);
  return r;
}

FreeWord boundary_product(const std::vector<FreeWord>& basis, int n,
                          const std::vector<Int>& lambda) {
  if (static_cast<int>(lambda.size()) != n)
    throw WordError("boundary_product: one lambda per internal generator");
  const GeneratorSet g = basis.empty() ? GeneratorSet(0, 0) : basis[0].gens();
  FreeWord r(g);
  for (int i = 0; i < n; ++i) {
    if (lambda[i] % 4 != 0) throw WordError("boundary_product: lambda_i not divisible by 4");
    r = multiply(r, power(basis[i], lambda[i]));
  }
  return r;
}

Int q_invariant(const FreeWord& r, int p) {
  NilpotentQuotient nq(r.gens(), TruncationParams::make(p, p, 2));
  auto m = nq.collect(r);
  int rank = r.gens().rank();
  bool all_zero = true;
  int minval = -1;
  for (int g = 0; g < rank; ++g) {
    const Int& c = m.coords[g];
    if (c == 0) continue;
    all_zero = false;
    int v = 0;
    Int y = c < 0 ? -c : c;
    while (y % p == 0) {
      y /= p;
      ++v;
    }
    if (minval < 0 || v < minval) minval = v;
  }
  if (all_zero) return 0;
  if (minval < 1) throw WordError("q_invariant: word not in F^p[F,F]");
  return ipow(p, minval);
}

CupForm cup_form(const FreeWord& r, int p) {
  const GeneratorSet gens = r.gens();
  int n = gens.rank();
  NilpotentQuotient nq(gens, TruncationParams::make(p, p, 2));
  auto m = nq.collect(r);
  for (int g = 0; g < n; ++g)
    if (m.coords[g] % p != 0) throw WordError("cup_form: word not in F^p[F,F]");
  if (nq.filtration_weight(m) != 2)
    throw WordError("cup_form: word trivial in G_2/G_3");

  CupForm f;
  f.matrix.assign(n, std::vector<int>(n, 0));
  if (p == 2) {
    // diagonal: cup square of x_i*, read from the x_i^{2.odd} part
    for (int g = 0; g < n; ++g)
      f.matrix[g][g] = static_cast<int>(mod_reduce(m.coords[g] / 2, 2));
  }
  const HallBasis& h = nq.basis();
  for (int idx = n; idx < h.size(); ++idx) {
    // entry [x_j, x_i] with j > i; its coefficient c contributes -c to (i,j)
    int j = h.entry(idx).left, i = h.entry(idx).right;
    Int c = mod_reduce(m.coords[idx], p);
    f.matrix[i][j] = static_cast<int>(mod_reduce(-c, p));
    f.matrix[j][i] = static_cast<int>(c);
    if (p == 2) f.matrix[i][j] = f.matrix[j][i] = static_cast<int>(c);
  }

  // determinant mod p
  auto a = f.matrix;
  Int det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (a[row][col] % p != 0) {
        piv = row;
        break;
      }
    if (piv < 0) {
      det = 0;
      break;
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = mod_reduce(det * a[col][col], p);
    Int iv = inv_mod(a[col][col], p);
    for (int row = col + 1; row < n; ++row) {
      Int fq = mod_reduce(Int(a[row][col]) * iv, p);
      if (fq == 0) continue;
      for (int c2 = col; c2 < n; ++c2)
        a[row][c2] = static_cast<int>(mod_reduce(a[row][c2] - fq * a[col][c2], p));
    }
  }
  f.nondegenerate = (mod_reduce(det, p) != 0);
  return f;
}

PairPresentation PairPresentation::make(GeneratorSet gens, FreeWord s0) {
  std::vector<FreeWord> per;
  for (int i = gens.n + 1; i <= gens.rank(); ++i) per.push_back(FreeWord::generator(gens, i));
  return make(gens, std::move(s0), std::move(per));
}

PairPresentation PairPresentation::make(GeneratorSet gens, FreeWord s0,
                                        std::vector<FreeWord> peripherals) {
  if (static_cast<int>(peripherals.size()) != gens.b)
    throw WordError("pair: one peripheral word per s-generator");
  for (const auto& w : peripherals)
    if (w.is_identity()) throw WordError("pair: trivial peripheral word");
  PairPresentation p;
  p.gens = gens;
  p.s0 = std::move(s0);
  p.peripherals = std::move(peripherals);
  return p;
}

namespace {

// Try one candidate basis: require an invertible weight-1 matrix, rescale
// the peripheral slots so zeta_i(s0) = 1, and test s0 = r_1(B) mod G_3.
std::optional<std::vector<FreeWord>> try_basis(const NilpotentQuotient& nq,
                                               const StandardWordSpec& spec,
                                               const MalcevElement& s0c,
                                               std::vector<FreeWord> images) {
  int rank = spec.n + spec.b;
  const Int& mod = nq.params().modulus;
  std::vector<std::vector<Int>> wt(rank, std::vector<Int>(rank));
  std::vector<MalcevElement> collected;
  for (int k = 0; k < rank; ++k) {
    collected.push_back(nq.collect(images[k]));
    for (int g = 0; g < rank; ++g) wt[k][g] = collected[k].coords[g];
  }
  std::vector<Int> a(rank);
  for (int g = 0; g < rank; ++g) a[g] = s0c.coords[g];
  std::vector<Int> zeta;
  try {
    // s0_ab = sum_k zeta_k . images[k]_ab : solve the transpose system
    std::vector<std::vector<Int>> wtt(rank, std::vector<Int>(rank));
    for (int k = 0; k < rank; ++k)
      for (int g = 0; g < rank; ++g) wtt[g][k] = wt[k][g];
    zeta = solve_unimodular(wtt, a, mod, nq.params().p);
  } catch (const WordError&) {
    return std::nullopt;
  }
  for (int k = spec.n; k < rank; ++k) {
    if (zeta[k] % nq.params().p == 0) return std::nullopt;
    // s0 involves S_k^{zeta_k}; take that power as the new generator
    images[k] = power(images[k], zeta[k]);
  }
  FreeWord r = build_r1(spec, images);
  auto diff = nq.multiply(nq.inverse(nq.collect(r)), s0c);
  if (nq.filtration_weight(diff) < 3) return std::nullopt;
  return images;
}

}  // namespace

std::variant<InitResult, InitFailure> initialize_mod3(
    const PairPresentation& pair, const OrientationCharacter& chi,
    const std::optional<std::vector<FreeWord>>& seed) {
  const int n = pair.gens.n, b = pair.gens.b, rank = n + b;
  StandardWordSpec spec{n, b, chi};
  if (!spec.defined())
    return InitFailure{InitFailure::Kind::DegenerateForm, "standard word undefined for (n, chi)"};
  Int q = chi.q();
  int p = chi.p;
  NilpotentQuotient nq(pair.gens, TruncationParams::make(p, q, 2));
  auto s0c = nq.collect(pair.s0);

  // homology obstruction: s0 = x^{p mu} s_1^{l_1}...s_b^{l_b} mod G^p[G,G]
  // with the l_i units, peripheral abelianizations on their own generators
  for (int i = 0; i < b; ++i) {
    auto pc = nq.collect(pair.peripherals[i]);
    for (int g = 0; g < rank; ++g) {
      if (g == n + i) {
        if (pc.coords[g] % p == 0)
          throw WordError("peripheral word does not generate mod p");
      } else if (pc.coords[g] != 0) {
        throw WordError("peripheral word abelianization off its own generator");
      }
    }
  }
  for (int g = 0; g < rank; ++g) {
    bool bad = g < n ? (s0c.coords[g] % p != 0) : (s0c.coords[g] % p == 0);
    if (bad)
      return InitFailure{InitFailure::Kind::HomologyObstruction,
                         "s0 is not congruent to s_1...s_b modulo G^p[G,G]"};
  }

  // peripheral slots start from the given peripheral words
  auto base_images = identity_images(pair.gens);
  for (int i = 0; i < b; ++i) base_images[n + i] = pair.peripherals[i];

  if (seed) {
    if (static_cast<int>(seed->size()) != rank) throw WordError("seed basis size mismatch");
    if (auto got = try_basis(nq, spec, s0c, *seed)) return InitResult{*got};
  }
  if (auto got = try_basis(nq, spec, s0c, base_images)) return InitResult{*got};

  // exhaustive search over G/G_3 images, canonical order, small ranks only
  if (q == 0 || rank > 2)
    return InitFailure{InitFailure::Kind::BoundExhausted,
                       "no seed basis and exhaustive search unsupported here"};
  Int q2 = q * q;
  const HallBasis& h = nq.basis();
  std::vector<int> w2;  // weight-2 entry indices
  for (int i = rank; i < h.size(); ++i) w2.push_back(i);
  // per-slot candidate counts: internal slots range over all of G/G_3,
  // peripheral slots over powers s_i^u (u unit mod q^2) times G_2 parts
  Int total = 1;
  for (int k = 0; k < rank; ++k) {
    Int slot = k < n ? ipow(q2, rank) : q2;
    for (size_t i = 0; i < w2.size(); ++i) slot *= q;
    total *= slot;
  }
  if (total > (Int(1) << 20))
    return InitFailure{InitFailure::Kind::BoundExhausted, "search space above the 2^20 gate"};

  // odometer over per-slot candidates
  struct Slot {
    std::vector<Int> lim;  // digit limits
    std::vector<Int> cur;
  };
  std::vector<Slot> slots(rank);
  for (int k = 0; k < rank; ++k) {
    Slot s;
    if (k < n)
      for (int g = 0; g < rank; ++g) s.lim.push_back(q2);
    else
      s.lim.push_back(q2);
    for (size_t i = 0; i < w2.size(); ++i) s.lim.push_back(q);
    s.cur.assign(s.lim.size(), 0);
    slots[k] = s;
  }
  auto slot_word = [&](int k) {
    const Slot& s = slots[k];
    FreeWord w(pair.gens);
    size_t d = 0;
    if (k < n) {
      for (int g = 1; g <= rank; ++g) w = multiply(w, FreeWord::generator(pair.gens, g, s.cur[d++]));
    } else {
      w = power(base_images[k], s.cur[d++]);
    }
    for (int idx : w2) w = multiply(w, power(h.word(idx, pair.gens), s.cur[d++]));
    return w;
  };
  auto advance = [&]() {
    for (int k = rank - 1; k >= 0; --k) {
      Slot& s = slots[k];
      for (int d = static_cast<int>(s.lim.size()) - 1; d >= 0; --d) {
        if (++s.cur[d] < s.lim[d]) return true;
        s.cur[d] = 0;
      }
    }
    return false;
  };
  do {
    std::vector<FreeWord> cand;
    for (int k = 0; k < rank; ++k) cand.push_back(slot_word(k));
    bool skip = false;
    for (int k = 0; k < rank && !skip; ++k)
      if (cand[k].is_identity()) skip = true;
    if (skip) continue;
    if (auto got = try_basis(nq, spec, s0c, cand)) return InitResult{*got};
  } while (advance());
  return InitFailure{InitFailure::Kind::DegenerateForm,
                     "no standard-form basis exists modulo G_3"};
}

}  // namespace propd2
