#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "propd2/json_io.hpp"

using namespace propd2;

namespace {

ordered_json read_stdin_json() {
  ordered_json j;
  try {
    std::cin >> j;
  } catch (const std::exception& e) {
    throw WordError(std::string("malformed JSON on standard input: ") + e.what());
  }
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int threads_cap() {
  const char* env = std::getenv("PROP_PD2_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation in nilpotent quotients of free pro-p groups"};
  app.require_subcommand(1);
  (void)threads_cap();  // all operations are sequential; the cap is >= 1

  int p = 3, cls = 2, n = 0, b = 0, depth = 5, genus = 2, boundary = 0, max_edges = 1;
  int mod_exp = -1, cap_index = 1, rank = 2, weight = 3, dump_delta = 0;
  std::string q_str = "0", chi_str = "trivial", seed_file, dot_file;
  bool pants = false;

  auto* c_hall = app.add_subcommand("hall", "Hall basis of basic commutators");
  c_hall->add_option("--rank", rank)->required();
  c_hall->add_option("--weight", weight)->required();

  auto* c_collect = app.add_subcommand("collect", "collect a word (word JSON on stdin)");
  c_collect->add_option("--p", p)->required();
  c_collect->add_option("--q", q_str)->required();
  c_collect->add_option("--class", cls)->required();
  c_collect->add_option("--mod", mod_exp);
  c_collect->add_option("--dump-delta", dump_delta);

  auto* c_r1 = app.add_subcommand("r1", "standard word r_1(n, b, chi)");
  c_r1->add_option("--n", n)->required();
  c_r1->add_option("--b", b)->required();
  c_r1->add_option("--chi", chi_str)->required();
  c_r1->add_option("--p", p)->required();

  auto* c_dem = app.add_subcommand("check-demushkin", "cup form of a one-relator word (stdin)");
  c_dem->add_option("--p", p)->required();

  auto* c_norm = app.add_subcommand("normalize", "normalize a pair (pair JSON on stdin)");
  c_norm->add_option("--p", p)->required();
  c_norm->add_option("--q", q_str);
  c_norm->add_option("--n", n);
  c_norm->add_option("--b", b);
  c_norm->add_option("--chi", chi_str)->required();
  c_norm->add_option("--depth", depth);
  c_norm->add_option("--seed-basis", seed_file);

  auto* c_verify = app.add_subcommand("verify", "verify {certificate, pair} JSON from stdin");

  auto* c_cap = app.add_subcommand("cap", "cap off a peripheral (pair JSON on stdin)");
  c_cap->add_option("--index", cap_index)->required();

  auto* c_graphs = app.add_subcommand("graphs", "enumerate decomposition graphs");
  c_graphs->add_option("--genus", genus)->required();
  c_graphs->add_option("--boundary", boundary)->required();
  c_graphs->add_option("--max-edges", max_edges)->required();
  c_graphs->add_flag("--pants", pants);
  c_graphs->add_option("--dot", dot_file);

  auto* c_down = app.add_subcommand("downset", "collapse lattice (graph JSON on stdin)");
  c_down->add_option("--genus", genus)->required();
  c_down->add_option("--boundary", boundary)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_hall) {
      HallBasis h(rank, weight);
      ordered_json entries = ordered_json::array();
      for (int i = 0; i < h.size(); ++i) {
        const auto& e = h.entry(i);
        if (e.is_generator())
          entries.push_back({e.weight, e.gen});
        else
          entries.push_back({e.weight, ordered_json::array({e.left, e.right})});
      }
      emit({{"rank", rank}, {"weight", weight}, {"dims", h.dims()}, {"entries", entries}});
      return 0;
    }

    if (*c_collect) {
      auto w = word_from_json(read_stdin_json());
      auto params = TruncationParams::make(p, Int(q_str), cls, mod_exp);
      NilpotentQuotient nq(w.gens(), params);
      ordered_json out = {{"p", p},
                          {"q", params.q.str()},
                          {"class", cls},
                          {"mod_exp", params.mod_exp},
                          {"element", malcev_to_json(nq, nq.collect(w))}};
      if (dump_delta >= 3) {
        Graded gr(nq);
        std::vector<GradedElement> sigma;
        for (int i = 1; i <= w.gens().b; ++i) sigma.push_back(gr.generator_class(w.gens().n + i));
        out["delta"] = delta_to_json(delta_matrix(gr, w.gens().n, w.gens().b, dump_delta, sigma));
      }
      emit(out);
      return 0;
    }

    if (*c_r1) {
      auto chi = chi_from_string(chi_str, p);
      GeneratorSet g(n, b);
      emit(word_to_json(build_r1({n, b, chi}, identity_images(g))));
      return 0;
    }

    if (*c_dem) {
      auto w = word_from_json(read_stdin_json());
      auto f = cup_form(w, p);
      ordered_json out = cupform_to_json(f);
      out = {{"q_invariant", q_invariant(w, p).str()},
             {"matrix", out.at("matrix")},
             {"demushkin", f.nondegenerate}};
      emit(out);
      return f.nondegenerate ? 0 : 1;
    }

    if (*c_norm) {
      auto pair = pair_from_json(read_stdin_json());
      auto chi = chi_from_string(chi_str, p);
      std::optional<std::vector<FreeWord>> seed;
      if (!seed_file.empty()) {
        std::ifstream in(seed_file);
        if (!in) throw WordError("cannot open seed basis file: " + seed_file);
        ordered_json sj;
        in >> sj;
        std::vector<FreeWord> ws;
        for (const auto& e : sj) {
          std::vector<Letter> raw;
          for (const auto& l : e) raw.push_back({l.at(0).get<int>(), Int(l.at(1).get<std::string>())});
          ws.push_back(FreeWord::reduce(pair.gens, raw));
        }
        seed = std::move(ws);
      }
      auto out = normalize_to_depth(pair, chi, depth, seed);
      if (std::holds_alternative<NormalizeFailure>(out)) {
        const auto& f = std::get<NormalizeFailure>(out);
        emit({{"failure", f.reason},
              {"stage", f.stage == NormalizeFailure::Stage::Initialization ? "initialization"
                                                                           : "refinement"},
              {"step", f.step_j},
              {"conclusive", f.conclusive()}});
        return f.conclusive() ? 1 : 2;
      }
      emit(certificate_to_json(std::get<BasisChangeCertificate>(out)));
      return 0;
    }

    if (*c_verify) {
      auto j = read_stdin_json();
      auto cert = certificate_from_json(j.at("certificate"));
      auto pair = pair_from_json(j.at("pair"));
      bool ok = verify_certificate(cert, pair, cert.spec.chi);
      emit({{"valid", ok}});
      return ok ? 0 : 1;
    }

    if (*c_cap) {
      auto pair = pair_from_json(read_stdin_json());
      auto res = cap_off(pair, cap_index);
      switch (res.kind) {
        case CapResult::Kind::Pair:
          emit({{"kind", "pair"}, {"pair", pair_to_json(*res.pair)}});
          break;
        case CapResult::Kind::OneRelator:
          emit({{"kind", "one_relator"}, {"relator", word_to_json(*res.relator)}});
          break;
        case CapResult::Kind::TwoPeripherals:
          emit({{"kind", "two_peripherals"}});
          break;
      }
      return 0;
    }

    if (*c_graphs) {
      auto gs = enumerate_graphs(genus, boundary, max_edges, pants);
      ordered_json arr = ordered_json::array();
      std::string dot;
      for (const auto& g : gs) {
        arr.push_back(graph_to_json(g));
        dot += to_dot(g);
      }
      if (!dot_file.empty()) {
        std::ofstream out(dot_file);
        if (!out) throw WordError("cannot open DOT output file: " + dot_file);
        out << dot;
      }
      emit({{"count", gs.size()}, {"graphs", arr}});
      return 0;
    }

    if (*c_down) {
      auto g = graph_from_json(read_stdin_json());
      ordered_json entries = ordered_json::array();
      for (const auto& e : downset(g, genus, boundary))
        entries.push_back(
            {{"subset", e.subset}, {"graph", graph_to_json(e.result)}, {"valid", e.valid}});
      emit({{"entries", entries}});
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
