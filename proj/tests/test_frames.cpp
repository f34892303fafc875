#include "gptlab/frames.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace gptlab;
using Eigen::VectorXd;

namespace {

std::vector<StateSpace> zoo() {
  return {StateSpace::classical(3), StateSpace::quantum_c(3),
          StateSpace::quantum_r(3), StateSpace::quantum_h(2),
          StateSpace::bloch(3)};
}

State square_state(double x, double y) {
  VectorXd c(3);
  c << 1.0, x, y;
  return make_state(StateSpace::gbit(), c);
}

}  // namespace

TEST_CASE("a partial frame gets an identifying measurement with a completion effect") {
  for (const StateSpace& space : zoo()) {
    if (space.frame_rank() < 3) continue;
    CAPTURE(space.name());
    const Frame frame = make_frame(space, random_frame_states(space, 31, 2));
    CHECK_FALSE(frame.maximal());
    REQUIRE(frame.measurement.size() == 3);  // two members plus the leftover
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double expect = (i == j) ? 1.0 : 0.0;
        CHECK(frame.measurement.effects()[i](frame.states[j]) ==
              doctest::Approx(expect).epsilon(1e-8));
      }
    }
    const VectorXd p = frame.measurement.outcome_distribution(frame.states[0]);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("maximal frames measure themselves") {
  for (const StateSpace& space : zoo()) {
    CAPTURE(space.name());
    const Frame frame = random_maximal_frame(space, 5);
    CHECK(frame.maximal());
    const Measurement m = frame_measurement(frame);
    REQUIRE(m.size() == frame.size());
    for (int i = 0; i < m.size(); ++i)
      CHECK((m.effects()[static_cast<std::size_t>(i)].coords -
             frame.states[static_cast<std::size_t>(i)].coords)
                .cwiseAbs()
                .maxCoeff() == 0.0);
    const State w = random_state(space, 8, Purity::Mixed);
    const VectorXd p = m.outcome_distribution(w);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
  const StateSpace q = StateSpace::quantum_c(3);
  CHECK_THROWS_AS(frame_measurement(make_frame(q, random_frame_states(q, 4, 2))),
                  DomainError);
}

TEST_CASE("frame construction rejects malformed input") {
  const StateSpace space = StateSpace::quantum_c(2);
  CHECK_THROWS_AS(make_frame(space, {}), DomainError);
  CHECK_THROWS_AS(make_frame(space, {maximally_mixed(space)}), DomainError);
  const State pure = random_state(space, 3, Purity::Pure);
  CHECK_THROWS_AS(make_frame(space, {pure, pure}), DomainError);
  auto three = random_frame_states(space, 4);
  three.push_back(random_state(space, 5, Purity::Pure));
  CHECK_THROWS_AS(make_frame(space, three), DomainError);
  State half = pure;
  half.coords *= 0.5;
  CHECK_THROWS_AS(make_frame(space, {half}), DomainError);
}

TEST_CASE("completion reaches full rank deterministically") {
  for (const StateSpace& space : zoo()) {
    CAPTURE(space.name());
    const Frame partial = make_frame(space, random_frame_states(space, 41, 1));
    const Frame full = complete_frame(partial);
    CHECK(full.maximal());
    CHECK((full.states[0].coords - partial.states[0].coords)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    for (std::size_t i = 0; i < full.states.size(); ++i)
      for (std::size_t j = i + 1; j < full.states.size(); ++j)
        CHECK(std::abs(inner(full.states[i], full.states[j])) < 1e-8);

    const Frame again = complete_frame(partial);
    for (std::size_t i = 0; i < full.states.size(); ++i)
      CHECK((full.states[i].coords - again.states[i].coords)
                .cwiseAbs()
                .maxCoeff() == 0.0);

    CHECK(complete_frame(full).size() == full.size());
  }
  const State corner = square_state(0.0, 0.0);
  CHECK_THROWS_AS(complete_frame(make_frame(StateSpace::gbit(), {corner})),
                  PostulateError);
}

TEST_CASE("distinguishability matches orthogonality on the inner product models") {
  const StateSpace space = StateSpace::quantum_c(3);
  const auto frame = random_frame_states(space, 6, 3);
  const auto yes = are_distinguishable(space, frame);
  CHECK(yes.distinguishable);
  REQUIRE(yes.witness.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      CHECK(yes.witness->effects()[i](frame[j]) ==
            doctest::Approx(expect).epsilon(1e-8));
    }
  }

  // Mixed states with orthogonal supports work too.
  const StateSpace cl = StateSpace::classical(4);
  VectorXd lowc(4), highc(4);
  lowc << 0.5, 0.5, 0.0, 0.0;
  highc << 0.0, 0.0, 0.25, 0.75;
  const auto mixed = are_distinguishable(
      cl, {make_state(cl, lowc), make_state(cl, highc)});
  CHECK(mixed.distinguishable);

  const State a = random_state(space, 7, Purity::Pure);
  const State b = random_state(space, 8, Purity::Pure);
  REQUIRE(std::abs(inner(a, b)) > 1e-6);  // generic pure states overlap
  const auto no = are_distinguishable(space, {a, b});
  CHECK_FALSE(no.distinguishable);
  CHECK_FALSE(no.witness.has_value());

  CHECK_THROWS_AS(are_distinguishable(space, {a}), DomainError);
}

TEST_CASE("the square model distinguishes exactly the opposite side pairs") {
  const StateSpace sq = StateSpace::gbit();
  const auto opposite =
      are_distinguishable(sq, {square_state(0.0, 0.3), square_state(1.0, 0.9)});
  CHECK(opposite.distinguishable);
  REQUIRE(opposite.witness.has_value());
  CHECK(opposite.witness->effects()[0](square_state(0.0, 0.3)) ==
        doctest::Approx(1.0));
  CHECK(opposite.witness->effects()[0](square_state(1.0, 0.9)) ==
        doctest::Approx(0.0));

  const auto same_side =
      are_distinguishable(sq, {square_state(0.0, 0.2), square_state(0.4, 0.8)});
  CHECK_FALSE(same_side.distinguishable);

  const auto triple = are_distinguishable(
      sq, {square_state(0.0, 0.0), square_state(1.0, 0.0), square_state(0.5, 1.0)});
  CHECK_FALSE(triple.distinguishable);

  // Corner pairs sharing one side are still readable through the other axis.
  const auto corners =
      are_distinguishable(sq, {square_state(1.0, 0.0), square_state(1.0, 1.0)});
  CHECK(corners.distinguishable);
}
