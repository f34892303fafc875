// Acceptance gate for the laboratory: ten numbered criteria, one line of
// output each, nonzero exit when any of them fails. Run through ctest or
// directly; the CLI binary path is compiled in for the determinism check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gptlab/entropy.hpp"
#include "gptlab/frames.hpp"
#include "gptlab/interference.hpp"
#include "gptlab/rng.hpp"
#include "gptlab/spectral.hpp"
#include "gptlab/state_space.hpp"
#include "gptlab/thermo.hpp"

using namespace gptlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int g_failed = 0;

void report(int index, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", index, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

bool rel_ok(double a, double b, double tolerance) {
  if (a == b) return true;
  return std::abs(a - b) <= tolerance * std::max(std::abs(a), std::abs(b));
}

std::vector<StateSpace> all_spaces() {
  std::vector<StateSpace> v;
  for (int n : {2, 3, 4}) v.push_back(StateSpace::classical(n));
  for (int n : {2, 3, 4}) v.push_back(StateSpace::quantum_c(n));
  for (int n : {2, 3, 4}) v.push_back(StateSpace::quantum_r(n));
  for (int n : {2, 3}) v.push_back(StateSpace::quantum_h(n));
  for (int d : {2, 3, 4, 5}) v.push_back(StateSpace::bloch(d));
  return v;
}

double binary_entropy(double x) {
  double s = 0.0;
  for (double t : {x, 1.0 - x})
    if (t > 0.0) s -= t * std::log(t);
  return s;
}

// 1. The maximally mixed state carries log N on every listed space and the
// ball model reproduces the binary entropy of its radius.
void criterion_1() {
  double worst_mixed = 0.0;
  for (const StateSpace& space : all_spaces()) {
    if (space.kind() == Kind::Bloch) continue;
    const double s = spectral_entropy(maximally_mixed(space), 1.0);
    worst_mixed =
        std::max(worst_mixed, std::abs(s - std::log(space.frame_rank())));
  }
  double worst_ball = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const StateSpace space = StateSpace::bloch(d);
    Rng rng = Rng::derive(101, static_cast<std::uint64_t>(d));
    for (int i = 0; i < 100; ++i) {
      const double r = rng.uniform();
      VectorXd dir = rng.gaussian_vector(d);
      dir.normalize();
      VectorXd x(d + 1);
      x(0) = 1.0;
      x.tail(d) = r * dir;
      const double s = spectral_entropy(make_state(space, x), 1.0);
      worst_ball = std::max(
          worst_ball, std::abs(s - binary_entropy(0.5 * (1.0 + r))));
    }
  }
  const bool pass = worst_mixed <= 1e-9 && worst_ball <= 1e-9;
  report(1, pass,
         "maximally mixed entropy matches log N (worst " + num(worst_mixed) +
             ") and ball radii give binary entropy (worst " + num(worst_ball) +
             ")");
}

// 2. Diagonalization on 500 observables per space: reconstruction, unit
// resolution, projector algebra, and stability under a symmetry shuffle.
void criterion_2() {
  const std::vector<StateSpace> spaces = all_spaces();
  double worst_rec = 0.0, worst_unit = 0.0, worst_proj = 0.0,
         worst_shuffle = 0.0;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(202, si);
    for (int k = 0; k < 500; ++k) {
      const Observable x = random_observable(space, master.next_u64());
      const SpectralDecomposition dec = diagonalize(x);

      worst_rec = std::max(worst_rec, (dec.reconstruct() - x.coords).norm());

      VectorXd unit_sum = VectorXd::Zero(space.ambient_dim());
      for (const VectorXd& u : dec.projective_units) unit_sum += u;
      worst_unit = std::max(
          worst_unit,
          (unit_sum - space.unit_effect()).lpNorm<Eigen::Infinity>());

      std::vector<MatrixXd> ps;
      for (int j = 0; j < dec.faces(); ++j) ps.push_back(dec.projector(j));
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
          const MatrixXd prod = ps[i] * ps[j];
          const MatrixXd target = (i == j) ? ps[i] : MatrixXd::Zero(
                                                        prod.rows(), prod.cols());
          worst_proj = std::max(worst_proj, (prod - target).norm());
        }
      }

      const MatrixXd s = random_symmetry(space, master.next_u64());
      const SpectralDecomposition dec2 =
          diagonalize(Observable{space, s * x.coords});
      if (dec2.faces() != dec.faces() ||
          dec2.multiplicities != dec.multiplicities) {
        worst_shuffle = 1.0;
      } else {
        for (int j = 0; j < dec.faces(); ++j) {
          const std::size_t ju = static_cast<std::size_t>(j);
          worst_shuffle = std::max(
              worst_shuffle,
              std::abs(dec2.eigenvalues[ju] - dec.eigenvalues[ju]));
          worst_shuffle = std::max(
              worst_shuffle, (s * dec.projective_units[ju] -
                              dec2.projective_units[ju])
                                 .lpNorm<Eigen::Infinity>());
        }
      }
    }
  }
  const bool pass = worst_rec <= 1e-8 && worst_unit <= 1e-9 &&
                    worst_proj <= 1e-8 && worst_shuffle <= 1e-8;
  report(2, pass,
         "500 observables per space: reconstruction " + num(worst_rec) +
             ", unit resolution " + num(worst_unit) + ", projector algebra " +
             num(worst_proj) + ", shuffle stability " + num(worst_shuffle));
}

// 3. Fine-grained measurements never beat the spectral weights, the
// eigenframe attains them, and the decomposition optimizer stays above
// them up to tolerance, for five orders on 200 states per space.
void criterion_3() {
  const std::array<double, 5> alphas = {0.0, 0.5, 1.0, 2.0, kInf};
  const std::vector<StateSpace> spaces = all_spaces();
  double worst_fine = 0.0;    // most negative H_alpha(q) - S_alpha
  double worst_attain = 0.0;  // eigenframe deviation from S_alpha
  double worst_opt = -kInf;   // largest optimizer value above S_alpha
  bool major_ok = true;
  bool residual_ok = true;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(303, si);
    for (int k = 0; k < 200; ++k) {
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const StateDecomposition sd = spectral_decompose_state(w);
      const VectorXd& p = sd.weights;
      std::array<double, 5> s{};
      for (std::size_t a = 0; a < alphas.size(); ++a) s[a] = renyi(p, alphas[a]);

      const VectorXd q0 = sd.frame.measurement.outcome_distribution(w);
      for (std::size_t a = 0; a < alphas.size(); ++a)
        worst_attain =
            std::max(worst_attain, std::abs(renyi(q0, alphas[a]) - s[a]));

      for (int f = 0; f < 3; ++f) {
        const Frame frame = random_maximal_frame(space, master.next_u64());
        const VectorXd q = frame.measurement.outcome_distribution(w);
        major_ok = major_ok && majorizes(p, q);
        for (std::size_t a = 0; a < alphas.size(); ++a)
          worst_fine = std::min(worst_fine, renyi(q, alphas[a]) - s[a]);
      }

      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const DecompositionSearch ds =
            decomposition_entropy(w, alphas[a], 2, 0, master.next_u64());
        worst_opt = std::max(worst_opt, ds.value - s[a]);
        residual_ok = residual_ok && ds.residual <= 1e-7;
      }
    }
  }
  const bool pass = worst_fine >= -1e-8 && major_ok && worst_attain <= 1e-9 &&
                    worst_opt <= 1e-6 && residual_ok;
  report(3, pass,
         "200 states per space: fine-grained floor " + num(worst_fine) +
             ", eigenframe attainment " + num(worst_attain) +
             ", optimizer excess " + num(worst_opt) +
             (major_ok ? "" : ", majorization failed") +
             (residual_ok ? "" : ", residual budget exceeded"));
}

// 4. The decomposition optimizer pins the order two and order infinity
// entropies within 2e-5 at budget 100, with a median under two seconds
// per state.
void criterion_4() {
  std::vector<StateSpace> spaces;
  for (int n : {2, 3, 4}) spaces.push_back(StateSpace::quantum_c(n));
  for (int n : {2, 3}) spaces.push_back(StateSpace::quantum_r(n));
  for (int d : {2, 3, 4, 5}) spaces.push_back(StateSpace::bloch(d));
  double worst_gap = 0.0;
  double worst_median = 0.0;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(404, si);
    std::vector<double> seconds;
    for (int k = 0; k < 50; ++k) {
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const double s2 = spectral_entropy(w, 2.0);
      const double si_ = spectral_entropy(w, kInf);
      const auto t0 = std::chrono::steady_clock::now();
      const DecompositionSearch d2 =
          decomposition_entropy(w, 2.0, 100, 0, master.next_u64());
      const DecompositionSearch di =
          decomposition_entropy(w, kInf, 100, 0, master.next_u64());
      const auto t1 = std::chrono::steady_clock::now();
      seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
      worst_gap = std::max(worst_gap, std::abs(d2.value - s2));
      worst_gap = std::max(worst_gap, std::abs(di.value - si_));
    }
    std::sort(seconds.begin(), seconds.end());
    worst_median =
        std::max(worst_median, 0.5 * (seconds[24] + seconds[25]));
  }
  const bool pass = worst_gap <= 2e-5 && worst_median <= 2.0;
  report(4, pass,
         "budget 100 optimizer within " + num(worst_gap) +
             " of the order 2 and infinity entropies, worst median " +
             num(worst_median) + " s per state");
}

// 5. Ten thousand random instances per space with zero violations of the
// Klein inequality, the projective second law, and mixing concavity.
void criterion_5() {
  const std::vector<StateSpace> spaces = all_spaces();
  long violations = 0;
  double min_margin = kInf;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(505, si);
    for (int k = 0; k < 10000; ++k) {
      try {
        const State a = random_state(space, master.next_u64(), Purity::Mixed);
        const State b = random_state(space, master.next_u64(), Purity::Mixed);
        const double kl = klein_check(a, b);
        if (std::isfinite(kl)) min_margin = std::min(min_margin, kl);

        const ProjectiveInstrument inst =
            random_instrument(space, master.next_u64(), 2);
        const SecondLawCheck slc = second_law_projective(a, inst);
        min_margin = std::min(min_margin, slc.after - slc.before);

        const std::vector<State> parts = {
            a, b, random_state(space, master.next_u64(), Purity::Mixed)};
        const VectorXd wts = Rng(master.next_u64()).dirichlet(3);
        const MixingCheck mc = second_law_mixing(space, parts, wts);
        min_margin = std::min(min_margin, mc.mixed - mc.averaged);
      } catch (const InvariantViolation&) {
        ++violations;
      }
    }
  }
  const bool pass = violations == 0 && min_margin >= -1e-9;
  report(5, pass,
         std::to_string(violations) +
             " violations over 10000 instances per space, smallest margin " +
             num(min_margin));
}

// 6. The synthesis ledger totals equal the rounded-weight entropy formulas
// to 1e-8 relative, and the merge ledger reproduces the block-mixture
// identity.
void criterion_6() {
  const std::vector<StateSpace> spaces = all_spaces();
  bool pass = true;
  double worst = 0.0;
  const auto track = [&](double a, double b, double tolerance) {
    if (!rel_ok(a, b, tolerance)) pass = false;
    if (a != b)
      worst = std::max(worst, std::abs(a - b) /
                                  std::max(std::abs(a), std::abs(b)));
  };
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(606, si);
    for (int rep = 0; rep < 2; ++rep) {
      const double kb = rep == 0 ? 1.0 : 1.380649e-23;
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const ProtocolLedger led = von_neumann_run(w, 1000, 300.0, kb);
      int total = 0;
      double expected_work = 0.0;
      for (int c : led.box_counts) {
        total += c;
        const double pt = c / 1000.0;
        if (pt > 0.0) expected_work += pt * 1000.0 * kb * 300.0 * std::log(pt);
      }
      if (total != 1000) pass = false;
      track(led.totals.work, expected_work, 1e-8);
      track(led.totals.heat, expected_work, 1e-8);
      track(led.totals.entropy_final, -expected_work / 300.0, 1e-8);
      if (std::abs(led.totals.entropy_initial) >
          1e-12 * std::max(1.0, std::abs(led.totals.entropy_final)))
        pass = false;
      double delta_sum = 0.0;
      for (const LedgerStep& st : led.steps) delta_sum += st.gpt_entropy_delta;
      track(delta_sum, led.totals.entropy_final - led.totals.entropy_initial,
            1e-8);
    }

    const ProjectiveInstrument inst =
        random_instrument(space, master.next_u64(), 2);
    std::vector<State> comps;
    for (int j = 0; j < inst.size(); ++j)
      comps.push_back(make_state(
          space, inst.units[static_cast<std::size_t>(j)] /
                     static_cast<double>(inst.ranks[static_cast<std::size_t>(j)])));
    const VectorXd wts = Rng(master.next_u64()).dirichlet(inst.size());
    const ProtocolLedger led = petz_run(space, comps, wts, 1000, 300.0);
    double rhs = renyi(led.rounded_weights, 1.0);
    double initial_rhs = 0.0;
    for (int j = 0; j < inst.size(); ++j) {
      const double pt = led.rounded_weights(j);
      if (pt > 0.0) {
        const double sj =
            spectral_entropy(comps[static_cast<std::size_t>(j)], 1.0);
        rhs += pt * sj;
        initial_rhs += 1000.0 * pt * sj;
      }
    }
    track(led.per_system_entropy(), rhs, 1e-8);
    track(led.totals.entropy_initial, initial_rhs, 1e-8);
  }
  report(6, pass,
         "ledger totals match the rounded-weight formulas, worst relative "
         "deviation " +
             num(worst));
}

// 7. The square model demonstration: visible spread on the default grid
// and a strictly positive spread under random corner entropies.
void criterion_7() {
  const std::vector<double> grid = {0.1, 0.25, 0.5, 0.75, 0.9};
  const GbitDemoTable plain = gbit_demo(grid);
  const double kb = 1.380649e-23;
  const GbitDemoTable scaled = gbit_demo(grid, {0.0, 0.0, 0.0, 0.0}, kb);
  double min_spread = kInf;
  Rng rng(707);
  for (int k = 0; k < 100; ++k) {
    std::array<double, 4> pe{};
    for (double& e : pe) e = 2.0 * rng.uniform();
    min_spread = std::min(min_spread, gbit_demo(grid, pe).spread);
  }
  const bool pass =
      plain.spread > 0.12 && scaled.spread > 0.12 * kb && min_spread > 0.0;
  report(7, pass,
         "default grid spread " + num(plain.spread) +
             " kB, smallest spread over 100 corner assignments " +
             num(min_spread));
}

// 8. Third-order interference vanishes on every three-block partition of
// maximal frames up to rank four, classical exactly, while the pairwise
// defect stays visible on the complex model.
void criterion_8() {
  std::vector<StateSpace> spaces;
  for (int n : {3, 4}) spaces.push_back(StateSpace::classical(n));
  for (int n : {3, 4}) spaces.push_back(StateSpace::quantum_c(n));
  for (int n : {3, 4}) spaces.push_back(StateSpace::quantum_r(n));
  spaces.push_back(StateSpace::quantum_h(3));
  double worst_i3 = 0.0;
  double worst_residual = 0.0;
  bool classical_exact = true;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(808, si);
    for (int f = 0; f < 3; ++f) {
      const Frame frame = random_maximal_frame(space, master.next_u64());
      const int r = space.frame_rank();
      for (int a = 1; a <= r - 2; ++a) {
        for (int b = 1; a + b <= r - 1; ++b) {
          const int c = r - a - b;
          std::vector<std::vector<State>> blocks(3);
          int at = 0;
          for (int i = 0; i < a; ++i)
            blocks[0].push_back(frame.states[static_cast<std::size_t>(at++)]);
          for (int i = 0; i < b; ++i)
            blocks[1].push_back(frame.states[static_cast<std::size_t>(at++)]);
          for (int i = 0; i < c; ++i)
            blocks[2].push_back(frame.states[static_cast<std::size_t>(at++)]);
          const InterferenceReport rep =
              sorkin_i3(space, blocks, 4, master.next_u64());
          worst_i3 = std::max(worst_i3, rep.i3_operator_norm);
          for (double res : rep.state_residuals)
            worst_residual = std::max(worst_residual, res);
          if (space.kind() == Kind::Classical)
            classical_exact =
                classical_exact && rep.i3_operator_norm == 0.0;
        }
      }
    }
  }
  const StateSpace qc3 = StateSpace::quantum_c(3);
  double min_pair = kInf;
  Rng prng = Rng::derive(808, 99);
  for (int f = 0; f < 3; ++f) {
    const Frame frame = random_maximal_frame(qc3, prng.next_u64());
    min_pair = std::min(
        min_pair,
        pairwise_defect(qc3, {frame.states[0]}, {frame.states[1]}));
  }
  const Frame cf = random_maximal_frame(StateSpace::classical(3), 5);
  const double classical_pair =
      pairwise_defect(StateSpace::classical(3), {cf.states[0]},
                      {cf.states[1]});
  const bool pass = worst_i3 <= 1e-8 && worst_residual <= 1e-8 &&
                    classical_exact && min_pair > 0.1 &&
                    classical_pair == 0.0;
  report(8, pass,
         "largest three-slit defect " + num(worst_i3) +
             ", classical exactly zero " +
             (classical_exact ? "yes" : "no") +
             ", smallest complex pairwise defect " + num(min_pair));
}

// 9. The order-zero gap stays closed under the term sweep and face
// projections of pure states stay pure after normalization.
void criterion_9() {
  const std::vector<StateSpace> spaces = all_spaces();
  double worst_gap = -kInf;
  double min_gap = kInf;
  bool pure_ok = true;
  long checked = 0;
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const StateSpace& space = spaces[si];
    Rng master = Rng::derive(909, si);
    for (int k = 0; k < 100; ++k) {
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const double gap = max_entropy_gap(w, 12, master.next_u64());
      worst_gap = std::max(worst_gap, gap);
      min_gap = std::min(min_gap, gap);
    }
    for (int k = 0; k < 1000; ++k) {
      const ProjectiveInstrument inst =
          random_instrument(space, master.next_u64());
      const State pure = random_state(space, master.next_u64(), Purity::Pure);
      const int face =
          Rng(master.next_u64()).uniform_int(inst.size());
      const VectorXd y = inst.project(pure, face);
      const double n = space.norm_of(y);
      if (n <= 1e-4) continue;
      ++checked;
      pure_ok = pure_ok && is_pure(make_state(space, y / n), 1e-7);
    }
  }
  const bool pass =
      worst_gap <= 1e-6 && min_gap >= -1e-9 && pure_ok && checked >= 5000;
  report(9, pass,
         "largest order-zero gap " + num(worst_gap) + ", smallest " +
             num(min_gap) + ", purity preserved on " +
             std::to_string(checked) + " projections: " +
             (pure_ok ? "yes" : "no"));
}

std::string read_file(const std::filesystem::path& path, bool& ok) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    ok = false;
    return {};
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 10. Repeated CLI runs with fixed seeds produce byte-identical CSV files.
void criterion_10() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "gptlab-acceptance";
  std::error_code ec;
  fs::remove_all(root, ec);
  const std::string cli = GPTLAB_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  bool pass = true;
  const std::string entropy_args =
      "--task entropy --space quantum-c:3 --alpha 0,1,2,inf --seed 42 "
      "--states 8 --budget 40";
  pass = pass &&
         run(entropy_args + " --out \"" + (root / "e1").string() + "\"") == 0;
  pass = pass &&
         run(entropy_args + " --out \"" + (root / "e2").string() + "\"") == 0;
  const std::string demo_args = "--task gbit-demo";
  pass = pass &&
         run(demo_args + " --out \"" + (root / "g1").string() + "\"") == 0;
  pass = pass &&
         run(demo_args + " --out \"" + (root / "g2").string() + "\"") == 0;
  pass = pass && run("--task property-suite --space bloch:4 --seeds 1000 "
                     "--out \"" +
                     (root / "p1").string() + "\"") == 0;
  bool files = true;
  const std::string e1 = read_file(root / "e1" / "results.csv", files);
  const std::string e2 = read_file(root / "e2" / "results.csv", files);
  const std::string g1 = read_file(root / "g1" / "results.csv", files);
  const std::string g2 = read_file(root / "g2" / "results.csv", files);
  pass = pass && files && !e1.empty() && e1 == e2 && !g1.empty() && g1 == g2;
  fs::remove_all(root, ec);
  report(10, pass,
         files ? "repeated runs produced byte-identical CSV output"
               : "expected CSV files were not written");
}

}  // namespace

int main() {
  const std::array<void (*)(), 10> criteria = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i) + 1, false,
             std::string("unexpected exception: ") + e.what());
    }
  }
  if (g_failed == 0) {
    std::printf("all 10 criteria passed\n");
    return 0;
  }
  std::printf("%d of 10 criteria failed\n", g_failed);
  return 1;
}
