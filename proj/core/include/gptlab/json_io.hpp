#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gptlab/entropy.hpp"
#include "gptlab/frames.hpp"
#include "gptlab/interference.hpp"
#include "gptlab/spectral.hpp"
#include "gptlab/state_space.hpp"
#include "gptlab/thermo.hpp"

namespace gptlab {

using Json = nlohmann::json;

// 12-significant-digit decimal rendering used for every CSV number; byte
// stable for a given double. Non-finite values render as inf/-inf/nan.
std::string csv_real(double x);

// Plain double for finite values; the strings "inf", "-inf", "nan"
// otherwise, since JSON numbers cannot carry them.
Json json_real(double x);
double real_from_json(const Json& j);

Json space_to_json(const StateSpace& space);
StateSpace space_from_json(const Json& j);

// States carry their space descriptor and coordinate array; the matrix
// kinds additionally embed the matrix view, row major with real and
// imaginary parts interleaved.
Json state_to_json(const State& w);
State state_from_json(const Json& j);

Json frame_to_json(const Frame& frame);
Frame frame_from_json(const Json& j);

Json decomposition_to_json(const SpectralDecomposition& dec);
Json entropy_report_to_json(const EntropyReport& report);
Json ledger_to_json(const ProtocolLedger& ledger);
Json gbit_demo_to_json(const GbitDemoTable& table);
Json interference_to_json(const InterferenceReport& report);

// Row-oriented CSV builder: UTF-8, header row, comma separated, '.'
// decimal separator, minimal quoting.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);

  void row(std::vector<std::string> cells);
  int rows() const { return static_cast<int>(rows_.size()); }

  std::string dump() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gptlab
