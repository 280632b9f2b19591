#pragma once

#include "propd2/graded.hpp"
#include "propd2/standard_words.hpp"

namespace propd2 {

/// One refinement round: the correction data solving delta_{j-1} at depth j.
struct StepRecord {
  int j = 3;
  std::vector<FreeWord> t;  // n+b words, each of filtration weight >= j-1
  std::vector<int> eps;     // b bits, q = 2 only
  std::vector<int> alpha;   // n bits, q = 2 only
};

/// Audit trail of a successful normalization: the final congruence is
/// s0 = e(B_J, lambda) . r_1(B_J) mod G_{J+1}, with lambda = 0 when q != 2.
struct BasisChangeCertificate {
  StandardWordSpec spec;
  int depth = 3;  // J
  std::vector<FreeWord> initial_basis;
  std::vector<StepRecord> steps;  // j = 3..J consecutively
  std::vector<FreeWord> final_basis;
  std::vector<Int> lambda;  // n entries, each divisible by 4
  std::string transcript_hash;
};

struct NormalizeState {
  std::vector<FreeWord> basis;
  std::vector<Int> lambda;  // n entries
  MalcevElement residual;   // (e . r_1(B))^{-1} s0, weight >= j
  int j = 3;
};

struct NormalizeFailure {
  enum class Stage { Initialization, Refinement };
  Stage stage = Stage::Initialization;
  int step_j = 0;
  std::optional<InitFailure> init;
  std::string reason;

  bool conclusive() const {
    return stage == Stage::Refinement || (init && init->conclusive());
  }
};

/// e(B, lambda) . r_1(B) collected in nq.
MalcevElement collect_standard(const NilpotentQuotient& nq, const StandardWordSpec& spec,
                               const std::vector<FreeWord>& basis,
                               const std::vector<Int>& lambda);

struct StepOutcome {
  NormalizeState state;
  StepRecord record;
};

/// One round of successive approximation: solve delta_{j-1} against the
/// weight-j residual and apply the basis update x_i -> x_i t_i,
/// s_i -> (s_i^{1+2^{j-1} eps_i})^{t_{n+i}}, lambda += 2^{j-1} alpha.
std::variant<StepOutcome, NormalizeFailure> refine_step(const NilpotentQuotient& nq,
                                                        const Graded& gr,
                                                        const StandardWordSpec& spec,
                                                        const MalcevElement& s0,
                                                        const NormalizeState& state);

std::variant<BasisChangeCertificate, NormalizeFailure> normalize_to_depth(
    const PairPresentation& pair, const OrientationCharacter& chi, int J,
    const std::optional<std::vector<FreeWord>>& seed = std::nullopt);

/// Solver-free check: replays the step updates from the initial basis,
/// compares with the recorded final basis, re-checks invertibility of the
/// weight-1 matrix mod p and the final congruence mod G_{J+1}.
bool verify_certificate(const BasisChangeCertificate& cert, const PairPresentation& pair,
                        const OrientationCharacter& chi);

struct CapResult {
  enum class Kind { Pair, OneRelator, TwoPeripherals };
  Kind kind = Kind::Pair;
  std::optional<PairPresentation> pair;  // Kind::Pair
  std::optional<FreeWord> relator;       // Kind::OneRelator, feed to cup_form
};

/// Kill peripheral generator i (1-based); requires the peripheral word to be
/// the designated generator s_{n+i}.  b = 1 with n = 0 is the G = S0 = S1
/// terminal; b = 1 with n > 0 yields the one-relator capped word.
CapResult cap_off(const PairPresentation& pair, int i);

/// FNV-1a 64-bit over a canonical transcript serialization.
std::string certificate_hash(const BasisChangeCertificate& cert);

}  // namespace propd2
