// Python bindings: a thin JSON-string API over the C++ core.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "propd2/json_io.hpp"

namespace py = pybind11;
using namespace propd2;

namespace {

ordered_json parse(const std::string& s) {
  try {
    return ordered_json::parse(s);
  } catch (const std::exception& e) {
    throw WordError(std::string("malformed JSON: ") + e.what());
  }
}

std::string collect_word(const std::string& word_json, int p, const std::string& q,
                         int cls, int mod_exp) {
  auto w = word_from_json(parse(word_json));
  NilpotentQuotient nq(w.gens(), TruncationParams::make(p, Int(q), cls, mod_exp));
  return malcev_to_json(nq, nq.collect(w)).dump();
}

std::string standard_word(int n, int b, const std::string& chi, int p) {
  auto c = chi_from_string(chi, p);
  GeneratorSet g(n, b);
  return word_to_json(build_r1({n, b, c}, identity_images(g))).dump();
}

std::string check_demushkin(const std::string& word_json, int p) {
  auto w = word_from_json(parse(word_json));
  auto f = cup_form(w, p);
  ordered_json out = {{"q_invariant", q_invariant(w, p).str()},
                      {"matrix", cupform_to_json(f).at("matrix")},
                      {"demushkin", f.nondegenerate}};
  return out.dump();
}

std::string normalize(const std::string& pair_json, const std::string& chi, int p, int depth,
                      const std::optional<std::string>& seed_json) {
  auto pair = pair_from_json(parse(pair_json));
  auto c = chi_from_string(chi, p);
  std::optional<std::vector<FreeWord>> seed;
  if (seed_json) {
    std::vector<FreeWord> ws;
    for (const auto& e : parse(*seed_json)) {
      std::vector<Letter> raw;
      for (const auto& l : e) raw.push_back({l.at(0).get<int>(), Int(l.at(1).get<std::string>())});
      ws.push_back(FreeWord::reduce(pair.gens, raw));
    }
    seed = std::move(ws);
  }
  auto res = normalize_to_depth(pair, c, depth, seed);
  if (std::holds_alternative<NormalizeFailure>(res)) {
    const auto& f = std::get<NormalizeFailure>(res);
    ordered_json out = {{"failure", f.reason},
                        {"stage", f.stage == NormalizeFailure::Stage::Initialization
                                      ? "initialization"
                                      : "refinement"},
                        {"step", f.step_j},
                        {"conclusive", f.conclusive()}};
    return out.dump();
  }
  return certificate_to_json(std::get<BasisChangeCertificate>(res)).dump();
}

bool verify(const std::string& cert_json, const std::string& pair_json) {
  auto cert = certificate_from_json(parse(cert_json));
  auto pair = pair_from_json(parse(pair_json));
  return verify_certificate(cert, pair, cert.spec.chi);
}

std::string cap(const std::string& pair_json, int index) {
  auto res = cap_off(pair_from_json(parse(pair_json)), index);
  switch (res.kind) {
    case CapResult::Kind::Pair:
      return ordered_json{{"kind", "pair"}, {"pair", pair_to_json(*res.pair)}}.dump();
    case CapResult::Kind::OneRelator:
      return ordered_json{{"kind", "one_relator"}, {"relator", word_to_json(*res.relator)}}.dump();
    default:
      return ordered_json{{"kind", "two_peripherals"}}.dump();
  }
}

std::string graphs(int genus, int boundary, int max_edges, bool pants) {
  auto gs = enumerate_graphs(genus, boundary, max_edges, pants);
  ordered_json arr = ordered_json::array();
  for (const auto& g : gs) arr.push_back(graph_to_json(g));
  return ordered_json{{"count", gs.size()}, {"graphs", arr}}.dump();
}

std::string downset_py(const std::string& graph_json, int genus, int boundary) {
  auto g = graph_from_json(parse(graph_json));
  ordered_json entries = ordered_json::array();
  for (const auto& e : downset(g, genus, boundary))
    entries.push_back(
        {{"subset", e.subset}, {"graph", graph_to_json(e.result)}, {"valid", e.valid}});
  return ordered_json{{"entries", entries}}.dump();
}

std::string collapse_py(const std::string& graph_json, const std::vector<int>& subset) {
  return graph_to_json(collapse(graph_from_json(parse(graph_json)), subset)).dump();
}

std::string dot_py(const std::string& graph_json) {
  return to_dot(graph_from_json(parse(graph_json)));
}

std::string hall_py(int rank, int weight) {
  HallBasis h(rank, weight);
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < h.size(); ++i) {
    const auto& e = h.entry(i);
    if (e.is_generator())
      entries.push_back({e.weight, e.gen});
    else
      entries.push_back({e.weight, ordered_json::array({e.left, e.right})});
  }
  return ordered_json{{"rank", rank}, {"weight", weight}, {"dims", h.dims()}, {"entries", entries}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_propd2, m) {
  m.doc() = "exact computation in nilpotent quotients of free pro-p groups";
  py::register_exception<WordError>(m, "WordError");
  m.def("collect_word", &collect_word, py::arg("word_json"), py::arg("p"), py::arg("q"),
        py::arg("cls"), py::arg("mod_exp") = -1);
  m.def("standard_word", &standard_word, py::arg("n"), py::arg("b"), py::arg("chi"), py::arg("p"));
  m.def("check_demushkin", &check_demushkin, py::arg("word_json"), py::arg("p"));
  m.def("normalize", &normalize, py::arg("pair_json"), py::arg("chi"), py::arg("p"),
        py::arg("depth") = 5, py::arg("seed_json") = std::nullopt);
  m.def("verify", &verify, py::arg("cert_json"), py::arg("pair_json"));
  m.def("cap", &cap, py::arg("pair_json"), py::arg("index"));
  m.def("graphs", &graphs, py::arg("genus"), py::arg("boundary"), py::arg("max_edges"),
        py::arg("pants") = false);
  m.def("downset", &downset_py, py::arg("graph_json"), py::arg("genus"), py::arg("boundary"));
  m.def("collapse", &collapse_py, py::arg("graph_json"), py::arg("subset"));
  m.def("to_dot", &dot_py, py::arg("graph_json"));
  m.def("hall_basis", &hall_py, py::arg("rank"), py::arg("weight"));
}
