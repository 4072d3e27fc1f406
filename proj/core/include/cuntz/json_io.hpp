#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "cuntz/atomic.hpp"
#include "cuntz/measure.hpp"
#include "cuntz/monic_system.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/report.hpp"
#include "cuntz/scalar.hpp"
#include "cuntz/step_function.hpp"
#include "cuntz/universal.hpp"

// JSON forms. Rationals are strings "p/q" (integers may be numbers).
// Radicals are [[coeff, radicand], ...]. A scalar is a rational, a radical,
// a number (approximate), {"re": .., "im": ..} or {"p": |z|^2, "arg": t}.
// Words are digit strings. Step functions are
//   {"depth": d, "values": {"00": s, ...}} or {"depth": d, "values": [s, ...]},
//   {"constant": s} or {"indicator": "01"}.
// Measures carry a "type": markov {"T", "lambda": "auto" | [..]},
// product {"p"}, atomic_tail {"c", "q", "L"}, table {"N", "masses"},
// pushforward_section {"i", "of"}, pushforward_shift {"of"},
// restrict_then_shift {"i", "of"}.
// Systems are {"measure", "f": [..]}, {"derive": "markov", "measure"},
// {"derive": "kakutani", "z": [..]} or a bare Markov/product measure.
namespace cuntz::json_io {

using json = nlohmann::json;

json load_file(const std::string& path);

Rational rational_from_json(const json& j);
RadicalSum radical_from_json(const json& j);
Scalar scalar_from_json(const json& j);
Word word_from_json(const json& j, const Alphabet& alphabet);
TailPoint tail_point_from_json(const json& j, int tail_letter, const Alphabet& alphabet);
StepFunction step_function_from_json(const json& j, const Alphabet& alphabet);
Measure measure_from_json(const json& j);
AtomicTailSpec atomic_spec_from_json(const json& j);
MarkovSpec markov_spec_from_json(const json& j);
MonicSystem system_from_json(const json& j);
SigmaVector sigma_vector_from_json(const json& j);

json to_json(const Rational& q);
json to_json(const RadicalSum& r);
json to_json(const Scalar& s);
json to_json(const StepFunction& f);
json to_json(const TailPoint& p);
json to_json(const AtomVector& v);
json to_json(const Report& report);

}  // namespace cuntz::json_io
