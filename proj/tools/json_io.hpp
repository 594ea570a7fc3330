// JSON conversions for the command-line front end.
#pragma once

#include <string>

#include <json.hpp>

#include "qsample/classical_error.hpp"
#include "qsample/entropy.hpp"
#include "qsample/privacy_amplification.hpp"
#include "qsample/quantum.hpp"
#include "qsample/quantum_sampling.hpp"
#include "qsample/security_bounds.hpp"
#include "qsample/strategy.hpp"
#include "qsample/transcript.hpp"

namespace qsample::io {

using nlohmann::json;

// {"kind", "n", "k", "p"}; k and p are optional on input.
SamplingStrategy strategy_from_json(const json& j);
json strategy_to_json(const json& config);

json to_json(const ErrorEstimate& e);
json to_json(const SecurityReport& r);
json to_json(const Transcript& t);
json to_json(const PaReport& r);
json to_json(const SqrtBoundReport& r);

// {"dims": [...], "amplitudes": [re, im, re, im, ...]}
json state_to_json(const PureState& state);
PureState state_from_json(const json& j);

// 4 x 4 complex matrix as rows of [re, im] pairs.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json bits_json(const Bits& bits);

json read_file(const std::string& path);

}  // namespace qsample::io
