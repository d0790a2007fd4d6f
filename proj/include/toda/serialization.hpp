#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "toda/flow.hpp"
#include "toda/jacobi.hpp"
#include "toda/lax.hpp"
#include "toda/tnn.hpp"
#include "toda/verify.hpp"

namespace toda {

using Json = nlohmann::json;

// std::runtime_error if the file cannot be opened or parsed.
Json read_json_file(const std::string& path);

// {"n": int, "a": [...], "b": [...]}; "n" is optional on input but must
// match when present.
Json to_json(const LaxMatrix& l);
LaxMatrix lax_from_json(const Json& j);

// Dense matrix for TNN checks: either {"matrix": [[...], ...]} or the Lax form.
Matrix matrix_from_json(const Json& j);

Json to_json(const Matrix& m);

// {"f": [...]}; normalized on read. A bare array is accepted as well.
Json to_json(const JacobiPoint& p);
JacobiPoint point_from_json(const Json& j);

// {"lambdas": [...]} or a bare array.
Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

Json to_json(const TauSequence& t);

// Witness indices are emitted 1-based.
Json to_json(const TnnReport& r);

Json to_json(const Trajectory& t);
// Header t,a1..aN,b1..b{N-1}; a final "# blowup t=<value>" line when truncated.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

Json to_json(const VerificationReport& r);

}  // namespace toda
