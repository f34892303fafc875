#include "gptlab/thermo.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gptlab/entropy.hpp"
#include "gptlab/rng.hpp"

using namespace gptlab;
using Eigen::VectorXd;

namespace {

constexpr double kBoltzmann = 1.380649e-23;

State classical_state(std::initializer_list<double> probs) {
  VectorXd coords(static_cast<int>(probs.size()));
  int i = 0;
  for (double p : probs) coords(i++) = p;
  return make_state(StateSpace::classical(coords.size()), coords);
}

double ledger_step_sum(const ProtocolLedger& ledger,
                       double LedgerStep::*field) {
  double total = 0.0;
  for (const LedgerStep& s : ledger.steps) total += s.*field;
  return total;
}

}  // namespace

TEST_CASE("the synthesis ledger recovers work and grows entropy") {
  const State w = classical_state({0.5, 0.3, 0.2});
  const ProtocolLedger ledger = von_neumann_run(w, 10, 300.0);

  REQUIRE(ledger.box_counts.size() == 3);
  CHECK(ledger.box_counts[0] == 5);
  CHECK(ledger.box_counts[1] == 3);
  CHECK(ledger.box_counts[2] == 2);
  CHECK(std::accumulate(ledger.box_counts.begin(), ledger.box_counts.end(), 0) ==
        10);

  const double shannon = 1.0296530140645737;
  CHECK(ledger.totals.entropy_initial == doctest::Approx(0.0));
  CHECK(ledger.totals.entropy_final ==
        doctest::Approx(10.0 * shannon).epsilon(1e-12));
  CHECK(ledger.per_system_entropy() == doctest::Approx(shannon).epsilon(1e-12));
  CHECK(ledger.totals.work ==
        doctest::Approx(-3000.0 * shannon).epsilon(1e-12));
  CHECK(ledger.totals.heat == doctest::Approx(ledger.totals.work));
  CHECK_FALSE(ledger.decomposition_dependent);

  // Step columns add up to the recorded totals.
  CHECK(ledger_step_sum(ledger, &LedgerStep::work_in) ==
        doctest::Approx(ledger.totals.work));
  CHECK(ledger_step_sum(ledger, &LedgerStep::heat_out) ==
        doctest::Approx(ledger.totals.heat));
  CHECK(ledger_step_sum(ledger, &LedgerStep::gpt_entropy_delta) ==
        doctest::Approx(ledger.totals.entropy_final -
                        ledger.totals.entropy_initial));

  // Work is recovered on every expansion stage, never spent.
  for (const LedgerStep& s : ledger.steps) CHECK(s.work_in <= 0.0);
}

TEST_CASE("physical constants scale the qubit ledger") {
  const State w = maximally_mixed(StateSpace::quantum_c(2));
  const ProtocolLedger ledger = von_neumann_run(w, 1000, 300.0, kBoltzmann);
  CHECK(ledger.box_counts[0] == 500);
  CHECK(ledger.box_counts[1] == 500);
  const double expected_work = -1000.0 * kBoltzmann * 300.0 * std::log(2.0);
  CHECK(ledger.totals.work / expected_work ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ledger.per_system_entropy() / (kBoltzmann * std::log(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weight rounding assigns the residual to the heaviest component") {
  const State w = classical_state({0.62, 0.25, 0.13});
  const ProtocolLedger ledger = von_neumann_run(w, 7, 300.0);
  // round(0.62*7)=4, round(0.25*7)=2, round(0.13*7)=1 already sums to 7
  CHECK(ledger.box_counts[0] == 4);
  CHECK(ledger.box_counts[1] == 2);
  CHECK(ledger.box_counts[2] == 1);
  const VectorXd& rounded = ledger.rounded_weights;
  CHECK(rounded.sum() == doctest::Approx(1.0));
  CHECK(ledger.totals.entropy_final ==
        doctest::Approx(7.0 * renyi(rounded, 1.0)).epsilon(1e-12));

  const State skew = classical_state({0.9, 0.07, 0.03});
  const ProtocolLedger tiny = von_neumann_run(skew, 3, 300.0);
  CHECK(std::accumulate(tiny.box_counts.begin(), tiny.box_counts.end(), 0) == 3);
  CHECK(tiny.box_counts[0] == 3);  // 2.7 rounds to 3 and absorbs the residual

  CHECK_THROWS_AS(von_neumann_run(w, 0, 300.0), DomainError);
}

TEST_CASE("merging distinguishable gases reproduces the chained entropy") {
  const StateSpace space = StateSpace::quantum_c(4);
  const auto frame = random_frame_states(space, 3);
  std::vector<State> components;
  components.push_back(
      make_state(space, 0.5 * (frame[0].coords + frame[1].coords)));
  components.push_back(
      make_state(space, 0.5 * (frame[2].coords + frame[3].coords)));
  VectorXd weights(2);
  weights << 0.5, 0.5;

  const ProtocolLedger ledger = petz_run(space, components, weights, 100, 1.0);
  CHECK(ledger.box_counts[0] == 50);
  CHECK(ledger.totals.entropy_initial ==
        doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-10));
  CHECK(ledger.per_system_entropy() ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(ledger.decomposition_dependent);

  // Overlapping components cannot be merged loss free.
  const State a = random_state(space, 5, Purity::Pure);
  const State b = random_state(space, 6, Purity::Pure);
  CHECK_THROWS_AS(petz_run(space, {a, b}, weights, 100, 1.0), DomainError);
}

TEST_CASE("the square model needs assigned component entropies") {
  const StateSpace sq = StateSpace::gbit();
  const auto corners = random_frame_states(sq, 11);
  VectorXd weights(2);
  weights << 0.25, 0.75;

  const ProtocolLedger bare = petz_run(sq, corners, weights, 100, 1.0);
  CHECK(bare.decomposition_dependent);
  CHECK(bare.totals.entropy_initial == doctest::Approx(0.0));
  const double mixing = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(bare.per_system_entropy() == doctest::Approx(mixing).epsilon(1e-10));

  const std::vector<double> assigned = {0.4, 0.9};
  const ProtocolLedger tagged =
      petz_run(sq, corners, weights, 100, 1.0, 1.0, assigned);
  CHECK(tagged.totals.entropy_initial ==
        doctest::Approx(25.0 * 0.4 + 75.0 * 0.9).epsilon(1e-10));
  CHECK(tagged.per_system_entropy() ==
        doctest::Approx(0.25 * 0.4 + 0.75 * 0.9 + mixing).epsilon(1e-10));
}

TEST_CASE("candidate entropy of the square center depends on the path") {
  const GbitDemoTable table = gbit_demo({0.1, 0.25, 0.5, 0.75, 0.9});
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[2].p == doctest::Approx(0.5));
  CHECK(table.rows[2].candidate_entropy ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(table.rows[1].candidate_entropy ==
        doctest::Approx(1.2554823251787536).epsilon(1e-12));
  CHECK(table.spread == doctest::Approx(0.3680642071).epsilon(1e-8));
  CHECK(table.spread > 0.12);

  // Corner entropies shift rows but cannot flatten the column.
  const GbitDemoTable shifted =
      gbit_demo({0.1, 0.25, 0.5, 0.75, 0.9}, {1.7, 0.2, 0.9, 1.1}, 1.0);
  CHECK(shifted.spread > 0.0);

  // Two symmetric weights can tie; three distinct ones cannot.
  const GbitDemoTable pair = gbit_demo({0.25, 0.75});
  CHECK(pair.spread == doctest::Approx(0.0));

  CHECK_THROWS_AS(gbit_demo({}), DomainError);
  CHECK_THROWS_AS(gbit_demo({0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(gbit_demo({0.5, 1.0}), DomainError);
}

TEST_CASE("projective measurement and mixing never lower entropy") {
  const StateSpace space = StateSpace::quantum_c(3);
  const State w = random_state(space, 21, Purity::Mixed);
  const ProjectiveInstrument inst = random_instrument(space, 22, 2);
  const SecondLawCheck check = second_law_projective(w, inst);
  CHECK(check.after >= check.before - 1e-9);

  std::vector<State> parts;
  for (std::uint64_t s : {31, 32, 33})
    parts.push_back(random_state(space, s, Purity::Mixed));
  const VectorXd weights = Rng(34).dirichlet(3);
  const MixingCheck mixing = second_law_mixing(space, parts, weights);
  CHECK(mixing.mixed >= mixing.averaged - 1e-9);

  const double gain = mixing_entropy_gain(space, parts, {2, 3, 5});
  CHECK(gain >= -1e-8);
  CHECK_THROWS_AS(mixing_entropy_gain(space, parts, {2, 3}), DimensionError);
  CHECK_THROWS_AS(mixing_entropy_gain(space, parts, {0, 0, 0}), DomainError);
}
