#include "propd2/json_io.hpp"

namespace propd2 {

namespace {

Int int_from_string(const std::string& s) {
  if (s.empty()) throw WordError("empty integer string");
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw WordError("bad integer string: " + s);
  }
}

ordered_json letters_to_json(const FreeWord& w) {
  ordered_json arr = ordered_json::array();
  for (const auto& l : w.letters()) arr.push_back({l.gen, l.exp.str()});
  return arr;
}

FreeWord letters_from_json(const GeneratorSet& g, const ordered_json& arr) {
  std::vector<Letter> raw;
  for (const auto& e : arr)
    raw.push_back({e.at(0).get<int>(), int_from_string(e.at(1).get<std::string>())});
  return FreeWord::reduce(g, raw);
}

}  // namespace

ordered_json word_to_json(const FreeWord& w) {
  return {{"n", w.gens().n}, {"b", w.gens().b}, {"word", letters_to_json(w)}};
}

FreeWord word_from_json(const ordered_json& j) {
  GeneratorSet g(j.at("n").get<int>(), j.at("b").get<int>());
  return letters_from_json(g, j.at("word"));
}

ordered_json malcev_to_json(const NilpotentQuotient& nq, const MalcevElement& m) {
  const HallBasis& h = nq.basis();
  ordered_json hall = ordered_json::array();
  for (int i = 0; i < h.size(); ++i) {
    const auto& e = h.entry(i);
    if (e.is_generator())
      hall.push_back({e.weight, e.gen});
    else
      hall.push_back({e.weight, ordered_json::array({e.left, e.right})});
  }
  ordered_json coords = ordered_json::array();
  for (const Int& c : nq.reduced_coords(m)) coords.push_back(c.str());
  return {{"hall", hall}, {"coords", coords}};
}

ordered_json chi_to_json(const OrientationCharacter& chi) {
  static const char* names[] = {"trivial", "up", "minus_times", "minus_power"};
  return {{"kind", names[static_cast<int>(chi.kind)]}, {"param", chi.param}, {"p", chi.p}};
}

OrientationCharacter chi_from_json(const ordered_json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int param = j.at("param").get<int>();
  int p = j.at("p").get<int>();
  if (kind == "trivial") return OrientationCharacter::trivial(p);
  if (kind == "up") return OrientationCharacter::up(p, param);
  if (kind == "minus_times") return OrientationCharacter::minus_times(param);
  if (kind == "minus_power") return OrientationCharacter::minus_power(param);
  throw WordError("unknown orientation character kind: " + kind);
}

OrientationCharacter chi_from_string(const std::string& s, int p) {
  std::string kind = s;
  int param = 0;
  if (auto pos = s.find(':'); pos != std::string::npos) {
    kind = s.substr(0, pos);
    param = std::stoi(s.substr(pos + 1));
  }
  return chi_from_json(ordered_json{{"kind", kind}, {"param", param}, {"p", p}});
}

ordered_json pair_to_json(const PairPresentation& pair) {
  ordered_json per = ordered_json::array();
  for (const auto& w : pair.peripherals) per.push_back(letters_to_json(w));
  return {{"n", pair.gens.n},
          {"b", pair.gens.b},
          {"s0", letters_to_json(pair.s0)},
          {"peripherals", per}};
}

PairPresentation pair_from_json(const ordered_json& j) {
  GeneratorSet g(j.at("n").get<int>(), j.at("b").get<int>());
  FreeWord s0 = letters_from_json(g, j.at("s0"));
  if (!j.contains("peripherals")) return PairPresentation::make(g, s0);
  std::vector<FreeWord> per;
  for (const auto& e : j.at("peripherals")) per.push_back(letters_from_json(g, e));
  return PairPresentation::make(g, s0, std::move(per));
}

ordered_json certificate_to_json(const BasisChangeCertificate& cert) {
  auto words = [](const std::vector<FreeWord>& ws) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : ws) arr.push_back(letters_to_json(w));
    return arr;
  };
  ordered_json steps = ordered_json::array();
  for (const auto& st : cert.steps)
    steps.push_back({{"j", st.j}, {"t", words(st.t)}, {"eps", st.eps}, {"alpha", st.alpha}});
  ordered_json lambda = ordered_json::array();
  for (const Int& l : cert.lambda) lambda.push_back(l.str());
  return {{"n", cert.spec.n},
          {"b", cert.spec.b},
          {"chi", chi_to_json(cert.spec.chi)},
          {"depth", cert.depth},
          {"initial_basis", words(cert.initial_basis)},
          {"steps", steps},
          {"final_basis", words(cert.final_basis)},
          {"lambda", lambda},
          {"hash", cert.transcript_hash}};
}

BasisChangeCertificate certificate_from_json(const ordered_json& j) {
  BasisChangeCertificate cert;
  GeneratorSet g(j.at("n").get<int>(), j.at("b").get<int>());
  cert.spec = {g.n, g.b, chi_from_json(j.at("chi"))};
  cert.depth = j.at("depth").get<int>();
  auto words = [&](const ordered_json& arr) {
    std::vector<FreeWord> ws;
    for (const auto& e : arr) ws.push_back(letters_from_json(g, e));
    return ws;
  };
  cert.initial_basis = words(j.at("initial_basis"));
  for (const auto& e : j.at("steps")) {
    StepRecord st;
    st.j = e.at("j").get<int>();
    st.t = words(e.at("t"));
    st.eps = e.at("eps").get<std::vector<int>>();
    st.alpha = e.at("alpha").get<std::vector<int>>();
    cert.steps.push_back(std::move(st));
  }
  cert.final_basis = words(j.at("final_basis"));
  for (const auto& e : j.at("lambda")) cert.lambda.push_back(int_from_string(e.get<std::string>()));
  cert.transcript_hash = j.at("hash").get<std::string>();
  return cert;
}

ordered_json graph_to_json(const DecompositionGraph& g) {
  ordered_json verts = ordered_json::array();
  for (auto [n, b] : g.labels) verts.push_back({{"n", n}, {"b", b}});
  ordered_json edges = ordered_json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"vertices", verts}, {"edges", edges}};
}

DecompositionGraph graph_from_json(const ordered_json& j) {
  DecompositionGraph g;
  for (const auto& v : j.at("vertices"))
    g.labels.push_back({v.at("n").get<int>(), v.at("b").get<int>()});
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return g;
}

ordered_json delta_to_json(const DeltaMap& dm) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : dm.rows) {
    ordered_json r = ordered_json::array();
    for (const Int& x : row) r.push_back(x.str());
    rows.push_back(r);
  }
  return {{"j", dm.j},       {"n", dm.n},           {"b", dm.b},
          {"augmented", dm.augmented}, {"t_block", dm.t_block}, {"mod", dm.mod.str()},
          {"rows", rows}};
}

ordered_json cupform_to_json(const CupForm& f) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : f.matrix) rows.push_back(row);
  return {{"matrix", rows}, {"nondegenerate", f.nondegenerate}};
}

}  // namespace propd2
