#include "propd2/normalizer.hpp"

#include <sstream>

namespace propd2 {

namespace {

Int ipow(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

std::vector<GradedElement> peripheral_classes(const NilpotentQuotient& nq,
                                              const std::vector<FreeWord>& basis) {
  const GeneratorSet& g = nq.gens();
  std::vector<GradedElement> sigma;
  for (int i = 0; i < g.b; ++i)
    sigma.push_back(nq.project_gr(nq.collect(basis[g.n + i]), 1));
  return sigma;
}

/// Lift one t-block of the solver output to a word: the gr_{j-1} basis entry
/// (piexp, idx) with coefficient c contributes hall_word(idx)^{q^piexp . c}.
FreeWord lift_t(const NilpotentQuotient& nq, int j, const std::vector<Int>& x, int offset) {
  const GeneratorSet& g = nq.gens();
  auto grb = nq.gr_basis(j - 1);
  FreeWord t(g);
  for (size_t d = 0; d < grb.size(); ++d) {
    const Int& c = x[offset + d];
    if (c == 0) continue;
    Int e = c;
    if (nq.params().q != 0)
      for (int a = 0; a < grb[d].first; ++a) e *= nq.params().q;
    t = multiply(t, power(nq.basis().word(grb[d].second, g), e));
  }
  return t;
}

void apply_step(const GeneratorSet& g, std::vector<FreeWord>& basis, std::vector<Int>& lambda,
                const StepRecord& rec) {
  for (int i = 0; i < g.n; ++i) basis[i] = multiply(basis[i], rec.t[i]);
  for (int i = 0; i < g.b; ++i) {
    FreeWord s = basis[g.n + i];
    if (!rec.eps.empty() && rec.eps[i]) s = power(s, 1 + ipow(2, rec.j - 1));
    basis[g.n + i] = conjugate(s, rec.t[g.n + i]);
  }
  for (int i = 0; i < g.n; ++i)
    if (!rec.alpha.empty() && rec.alpha[i]) lambda[i] += ipow(2, rec.j - 1);
}

void append_word(std::ostringstream& os, const FreeWord& w) {
  for (const auto& l : w.letters()) os << l.gen << '^' << l.exp << '.';
  os << ';';
}

}  // namespace

MalcevElement collect_standard(const NilpotentQuotient& nq, const StandardWordSpec& spec,
                               const std::vector<FreeWord>& basis,
                               const std::vector<Int>& lambda) {
  FreeWord w = build_r1(spec, basis);
  bool have_lambda = false;
  for (const Int& l : lambda)
    if (l != 0) have_lambda = true;
  if (have_lambda) w = multiply(boundary_product(basis, spec.n, lambda), w);
  return nq.collect(w);
}

std::variant<StepOutcome, NormalizeFailure> refine_step(const NilpotentQuotient& nq,
                                                        const Graded& gr,
                                                        const StandardWordSpec& spec,
                                                        const MalcevElement& s0,
                                                        const NormalizeState& state) {
  const GeneratorSet& g = nq.gens();
  const int j = state.j;
  if (nq.filtration_weight(state.residual) < j)
    throw WordError("refine_step: residual below current depth");
  auto target = nq.project_gr(state.residual, j);
  auto dm = delta_matrix(gr, g.n, g.b, j, peripheral_classes(nq, state.basis));
  auto sol = solve_linear(dm, target.coeffs);
  if (!sol.solved) {
    NormalizeFailure f;
    f.stage = NormalizeFailure::Stage::Refinement;
    f.step_j = j;
    f.reason = "delta_{j-1} has no solution against the residual";
    return f;
  }

  StepRecord rec;
  rec.j = j;
  for (int k = 0; k < g.n + g.b; ++k) rec.t.push_back(lift_t(nq, j, sol.x, k * dm.t_block));
  if (dm.augmented) {
    int base = (g.n + g.b) * dm.t_block;
    for (int i = 0; i < g.b; ++i) rec.eps.push_back(static_cast<int>(sol.x[base + i] % 2));
    for (int i = 0; i < g.n; ++i)
      rec.alpha.push_back(static_cast<int>(sol.x[base + g.b + i] % 2));
  }

  StepOutcome out;
  out.state = state;
  apply_step(g, out.state.basis, out.state.lambda, rec);
  out.state.residual = nq.multiply(
      nq.inverse(collect_standard(nq, spec, out.state.basis, out.state.lambda)), s0);
  out.state.j = j + 1;
  if (nq.filtration_weight(out.state.residual) < j + 1)
    throw WordError("refine_step: update failed to raise the residual weight");
  out.record = std::move(rec);
  return out;
}

std::variant<BasisChangeCertificate, NormalizeFailure> normalize_to_depth(
    const PairPresentation& pair, const OrientationCharacter& chi, int J,
    const std::optional<std::vector<FreeWord>>& seed) {
  if (J < 3) throw WordError("normalize_to_depth: J >= 3 required");
  const GeneratorSet& g = pair.gens;
  StandardWordSpec spec{g.n, g.b, chi};
  auto init = initialize_mod3(pair, chi, seed);
  if (std::holds_alternative<InitFailure>(init)) {
    NormalizeFailure f;
    f.stage = NormalizeFailure::Stage::Initialization;
    f.init = std::get<InitFailure>(init);
    f.reason = f.init->reason;
    return f;
  }

  NilpotentQuotient nq(g, TruncationParams::make(chi.p, chi.q(), J + 1));
  Graded gr(nq);
  auto s0 = nq.collect(pair.s0);

  BasisChangeCertificate cert;
  cert.spec = spec;
  cert.depth = J;
  cert.initial_basis = std::get<InitResult>(init).basis;
  cert.lambda.assign(g.n, 0);

  NormalizeState state;
  state.basis = cert.initial_basis;
  state.lambda.assign(g.n, 0);
  state.residual = nq.multiply(nq.inverse(collect_standard(nq, spec, state.basis, state.lambda)), s0);
  state.j = 3;
  for (int j = 3; j <= J; ++j) {
    auto out = refine_step(nq, gr, spec, s0, state);
    if (std::holds_alternative<NormalizeFailure>(out)) return std::get<NormalizeFailure>(out);
    auto& ok = std::get<StepOutcome>(out);
    cert.steps.push_back(ok.record);
    state = std::move(ok.state);
  }
  cert.final_basis = state.basis;
  cert.lambda = state.lambda;
  cert.transcript_hash = certificate_hash(cert);
  return cert;
}

bool verify_certificate(const BasisChangeCertificate& cert, const PairPresentation& pair,
                        const OrientationCharacter& chi) {
  const GeneratorSet& g = pair.gens;
  if (cert.spec.n != g.n || cert.spec.b != g.b)
    throw WordError("verify_certificate: generator sets disagree");
  if (cert.depth < 3 || static_cast<int>(cert.steps.size()) != cert.depth - 2)
    throw WordError("verify_certificate: malformed step list");
  int rank = g.rank();
  if (static_cast<int>(cert.initial_basis.size()) != rank ||
      static_cast<int>(cert.final_basis.size()) != rank ||
      static_cast<int>(cert.lambda.size()) != g.n)
    throw WordError("verify_certificate: malformed bases");
  for (size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& st = cert.steps[k];
    if (st.j != static_cast<int>(k) + 3 || static_cast<int>(st.t.size()) != rank)
      throw WordError("verify_certificate: malformed step");
    bool aug = !st.eps.empty() || !st.alpha.empty();
    if (aug && (static_cast<int>(st.eps.size()) != g.b ||
                static_cast<int>(st.alpha.size()) != g.n))
      throw WordError("verify_certificate: malformed step");
  }
  for (const Int& l : cert.lambda)
    if (l % 4 != 0) return false;
  if (cert.transcript_hash != certificate_hash(cert)) return false;

  NilpotentQuotient nq(g, TruncationParams::make(chi.p, chi.q(), cert.depth + 1));
  // each t_i lives in G_{j-1}
  for (const auto& st : cert.steps)
    for (const auto& t : st.t)
      if (nq.filtration_weight(nq.collect(t)) < st.j - 1) return false;

  // replay the updates; the recorded final basis must match exactly
  auto basis = cert.initial_basis;
  std::vector<Int> lambda(g.n, 0);
  for (const auto& st : cert.steps) apply_step(g, basis, lambda, st);
  if (basis != cert.final_basis || lambda != cert.lambda) return false;

  // final basis is a basis: weight-1 matrix invertible mod p (row reduction)
  {
    int p = chi.p;
    std::vector<std::vector<Int>> m(rank, std::vector<Int>(rank));
    for (int k = 0; k < rank; ++k) {
      auto c = nq.collect(basis[k]);
      for (int gidx = 0; gidx < rank; ++gidx) {
        m[k][gidx] = c.coords[gidx] % p;
        if (m[k][gidx] < 0) m[k][gidx] += p;
      }
    }
    std::vector<bool> used(rank, false);
    for (int r = 0; r < rank; ++r) {
      int pc = -1;
      for (int c = 0; c < rank && pc < 0; ++c)
        if (!used[c] && m[r][c] != 0) pc = c;
      if (pc < 0) return false;
      used[pc] = true;
      for (int r2 = r + 1; r2 < rank; ++r2) {
        if (m[r2][pc] == 0) continue;
        Int f = m[r2][pc];
        for (int c = 0; c < rank; ++c) {
          // scale-free elimination over F_p
          m[r2][c] = ((m[r2][c] * m[r][pc] - f * m[r][c]) % p + p) % p;
        }
      }
    }
  }

  auto w = collect_standard(nq, cert.spec, cert.final_basis, cert.lambda);
  auto diff = nq.multiply(nq.inverse(w), nq.collect(pair.s0));
  return nq.filtration_weight(diff) >= cert.depth + 1;
}

CapResult cap_off(const PairPresentation& pair, int i) {
  const GeneratorSet& g = pair.gens;
  if (i < 1 || i > g.b) throw WordError("cap_off: peripheral index out of range");
  int killed = g.n + i;
  if (pair.peripherals[i - 1] != FreeWord::generator(g, killed))
    throw WordError("cap_off: peripheral is not a designated basis generator");

  CapResult res;
  if (g.b == 1 && g.n == 0) {
    res.kind = CapResult::Kind::TwoPeripherals;
    return res;
  }

  GeneratorSet ng(g.n, g.b - 1);
  std::vector<Letter> mapped;
  for (const auto& l : pair.s0.letters()) {
    if (l.gen == killed) continue;
    mapped.push_back({l.gen > killed ? l.gen - 1 : l.gen, l.exp});
  }
  FreeWord capped = FreeWord::reduce(ng, mapped);
  if (g.b == 1) {
    res.kind = CapResult::Kind::OneRelator;
    res.relator = capped;
  } else {
    res.kind = CapResult::Kind::Pair;
    res.pair = PairPresentation::make(ng, capped);
  }
  return res;
}

std::string certificate_hash(const BasisChangeCertificate& cert) {
  std::ostringstream os;
  os << cert.spec.n << ',' << cert.spec.b << ',' << static_cast<int>(cert.spec.chi.kind) << ','
     << cert.spec.chi.param << ',' << cert.spec.chi.p << '|' << cert.depth << '|';
  for (const auto& w : cert.initial_basis) append_word(os, w);
  os << '|';
  for (const auto& st : cert.steps) {
    os << st.j << ':';
    for (const auto& t : st.t) append_word(os, t);
    for (int e : st.eps) os << e;
    for (int a : st.alpha) os << a;
    os << '|';
  }
  for (const auto& w : cert.final_basis) append_word(os, w);
  os << '|';
  for (const Int& l : cert.lambda) os << l << ',';

  std::string s = os.str();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

}  // namespace propd2
