#include "gptlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

namespace gptlab {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

Json vector_to_json(const VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a coordinate array");
  VectorXd v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("coordinates must be numbers");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.count(it.key()) == 0)
      throw ConfigError("unknown field \"" + it.key() + "\" in " + what);
  }
}

}  // namespace

std::string csv_real(double x) {
  if (x == 0.0) x = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Json json_real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number or inf/-inf/nan");
}

Json space_to_json(const StateSpace& space) {
  Json j;
  j["kind"] = kind_name(space.kind());
  if (space.kind() == Kind::Bloch)
    j["d"] = space.param();
  else if (space.kind() != Kind::Gbit)
    j["N"] = space.param();
  return j;
}

StateSpace space_from_json(const Json& j) {
  if (j.is_string()) return StateSpace::parse(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("space descriptor must be an object");
  reject_unknown_keys(j, {"kind", "N", "d"}, "space descriptor");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("space descriptor needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "gbit") return StateSpace::gbit();
  const char* key = (kind == "bloch") ? "d" : "N";
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ConfigError("space descriptor needs an integer \"" +
                      std::string(key) + "\"");
  return StateSpace::parse(kind + ":" + std::to_string(j[key].get<int>()));
}

Json state_to_json(const State& w) {
  Json j;
  j["space"] = space_to_json(w.space);
  j["coords"] = vector_to_json(w.coords);
  if (w.space.has_matrix_view()) {
    const MatrixXcd m = w.space.to_matrix(w.coords);
    Json flat = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        flat.push_back(m(r, c).real());
        flat.push_back(m(r, c).imag());
      }
    }
    j["matrix"] = std::move(flat);
  }
  return j;
}

State state_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("state must be an object");
  reject_unknown_keys(j, {"space", "coords", "matrix"}, "state");
  if (!j.contains("space")) throw ConfigError("state needs a space descriptor");
  const StateSpace space = space_from_json(j["space"]);
  if (j.contains("coords"))
    return make_state(space, vector_from_json(j["coords"]));
  if (!j.contains("matrix"))
    throw ConfigError("state needs coords or a matrix");
  if (!space.has_matrix_view())
    throw ConfigError("matrix form is only valid for the matrix kinds");
  const Json& flat = j["matrix"];
  const int n = space.matrix_dim();
  if (!flat.is_array() || static_cast<int>(flat.size()) != 2 * n * n)
    throw ConfigError("matrix must hold " + std::to_string(2 * n * n) +
                      " interleaved entries");
  MatrixXcd m(n, n);
  std::size_t k = 0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = flat[k++].get<double>();
      const double im = flat[k++].get<double>();
      m(r, c) = {re, im};
    }
  }
  return make_state(space, space.from_matrix(m));
}

Json frame_to_json(const Frame& frame) {
  Json j;
  j["space"] = space_to_json(frame.space);
  Json states = Json::array();
  for (const State& w : frame.states) states.push_back(vector_to_json(w.coords));
  j["states"] = std::move(states);
  return j;
}

Frame frame_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("frame must be an object");
  reject_unknown_keys(j, {"space", "states"}, "frame");
  if (!j.contains("space") || !j.contains("states"))
    throw ConfigError("frame needs a space and a state list");
  const StateSpace space = space_from_json(j["space"]);
  std::vector<State> states;
  for (const Json& coords : j["states"])
    states.push_back(make_state(space, vector_from_json(coords)));
  return make_frame(space, std::move(states));
}

Json decomposition_to_json(const SpectralDecomposition& dec) {
  Json j;
  j["space"] = space_to_json(dec.space);
  j["eigenvalues"] = Json::array();
  j["multiplicities"] = Json::array();
  j["projective_units"] = Json::array();
  for (int f = 0; f < dec.faces(); ++f) {
    j["eigenvalues"].push_back(dec.eigenvalues[static_cast<std::size_t>(f)]);
    j["multiplicities"].push_back(dec.multiplicities[static_cast<std::size_t>(f)]);
    j["projective_units"].push_back(
        vector_to_json(dec.projective_units[static_cast<std::size_t>(f)]));
  }
  return j;
}

Json entropy_report_to_json(const EntropyReport& report) {
  Json j;
  j["alpha"] = json_real(report.alpha);
  j["spectral"] = json_real(report.spectral);
  j["measurement_best"] = json_real(report.measurement_best);
  j["decomposition_best"] = json_real(report.decomposition_best);
  j["gap_measurement"] = json_real(report.gap_measurement);
  j["gap_decomposition"] = json_real(report.gap_decomposition);

  Json m;
  m["examined"] = report.measurement.examined;
  if (report.measurement.best) {
    Json effects = Json::array();
    for (const Effect& e : report.measurement.best->effects())
      effects.push_back(vector_to_json(e.coords));
    m["effects"] = std::move(effects);
  }
  j["measurement"] = std::move(m);

  Json d;
  d["restarts"] = report.decomposition.restarts;
  d["residual"] = json_real(report.decomposition.residual);
  d["weights"] = vector_to_json(report.decomposition.weights);
  Json parts = Json::array();
  for (const State& w : report.decomposition.parts)
    parts.push_back(vector_to_json(w.coords));
  d["parts"] = std::move(parts);
  j["decomposition"] = std::move(d);
  return j;
}

Json ledger_to_json(const ProtocolLedger& ledger) {
  Json j;
  j["n_boxes"] = ledger.n_boxes;
  j["temperature"] = ledger.temperature;
  j["boltzmann"] = ledger.boltzmann;
  j["ideal_weights"] = vector_to_json(ledger.ideal_weights);
  j["rounded_weights"] = vector_to_json(ledger.rounded_weights);
  j["box_counts"] = ledger.box_counts;
  j["decomposition_dependent"] = ledger.decomposition_dependent;
  Json steps = Json::array();
  for (const LedgerStep& s : ledger.steps) {
    Json step;
    step["label"] = s.label;
    step["work_in"] = s.work_in;
    step["heat_out"] = s.heat_out;
    step["gpt_entropy_delta"] = s.gpt_entropy_delta;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["totals"] = {{"work", ledger.totals.work},
                 {"heat", ledger.totals.heat},
                 {"entropy_initial", ledger.totals.entropy_initial},
                 {"entropy_final", ledger.totals.entropy_final}};
  j["per_system_entropy"] = ledger.per_system_entropy();
  return j;
}

Json gbit_demo_to_json(const GbitDemoTable& table) {
  Json j;
  j["boltzmann"] = table.boltzmann;
  j["pure_entropies"] = table.pure_entropies;
  Json rows = Json::array();
  for (const GbitDemoRow& r : table.rows)
    rows.push_back({{"p", r.p}, {"candidate_entropy", r.candidate_entropy}});
  j["rows"] = std::move(rows);
  j["spread"] = table.spread;
  return j;
}

Json interference_to_json(const InterferenceReport& report) {
  Json j;
  j["space"] = report.space_name;
  j["block_sizes"] = report.block_sizes;
  j["i3_operator_norm"] = json_real(report.i3_operator_norm);
  j["state_residuals"] = Json::array();
  for (double r : report.state_residuals) j["state_residuals"].push_back(r);
  j["s0_gap"] = json_real(report.s0_gap);
  return j;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw DomainError("csv row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string Csv::dump() const {
  const auto field = [](const std::string& cell) -> std::string {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  };
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i)
    out += (i ? "," : "") + field(header_[i]);
  out += '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out += (i ? "," : "") + field(r[i]);
    out += '\n';
  }
  return out;
}

void Csv::save(const std::string& path) const { write_text_file(path, dump()); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << content;
  if (!f.good()) throw ConfigError("failed writing " + path);
}

}  // namespace gptlab
