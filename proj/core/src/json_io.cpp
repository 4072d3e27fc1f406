#include "cuntz/json_io.hpp"

#include <cmath>
#include <fstream>

#include "cuntz/error.hpp"

namespace cuntz::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<Rational> rational_list(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const json& e : j) out.push_back(rational_from_json(e));
  return out;
}

bool is_radical_form(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& t) {
           return t.is_array() && t.size() == 2;
         });
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

RadicalSum radical_from_json(const json& j) {
  if (!is_radical_form(j)) return RadicalSum(rational_from_json(j));
  std::vector<std::pair<Rational, std::int64_t>> terms;
  for (const json& t : j) {
    if (!t[1].is_number_integer()) throw ParseError("radicand must be an integer");
    terms.emplace_back(rational_from_json(t[0]), t[1].get<std::int64_t>());
  }
  return RadicalSum::from_terms(terms);
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_float()) return Scalar::approx(j.get<double>());
  if (j.is_string() || j.is_number_integer() || j.is_array()) return Scalar(radical_from_json(j));
  if (j.is_object()) {
    if (j.contains("arg")) {
      double modulus = std::sqrt(rational_from_json(field(j, "p")).to_double());
      return Scalar::approx(std::polar(modulus, field(j, "arg").get<double>()));
    }
    Scalar re = j.contains("re") ? scalar_from_json(j.at("re")) : Scalar();
    Scalar im = j.contains("im") ? scalar_from_json(j.at("im")) : Scalar();
    return re + Scalar::i() * im;
  }
  throw ParseError("unrecognized scalar " + j.dump());
}

Word word_from_json(const json& j, const Alphabet& alphabet) {
  if (!j.is_string()) throw ParseError("a word is a digit string");
  return Word::parse(j.get<std::string>(), alphabet);
}

TailPoint tail_point_from_json(const json& j, int tail_letter, const Alphabet& alphabet) {
  if (j.is_string()) return TailPoint(word_from_json(j, alphabet), tail_letter);
  TailPoint p(word_from_json(field(j, "prefix"), alphabet), tail_letter);
  if (j.contains("tail") && j.at("tail").get<int>() != tail_letter) {
    throw ParseError("tail letter does not match the measure");
  }
  return p;
}

StepFunction step_function_from_json(const json& j, const Alphabet& alphabet) {
  if (j.is_object() && j.contains("constant")) {
    return StepFunction::constant(alphabet, scalar_from_json(j.at("constant")));
  }
  if (j.is_object() && j.contains("indicator")) {
    const json& ind = j.at("indicator");
    if (ind.is_array()) {
      std::vector<Word> words;
      for (const json& w : ind) words.push_back(word_from_json(w, alphabet));
      return StepFunction::indicator(alphabet, words);
    }
    return StepFunction::indicator(alphabet, word_from_json(ind, alphabet));
  }
  const int depth = int_field(j, "depth");
  const json& values = field(j, "values");
  const std::int64_t count = alphabet.power(depth);
  std::vector<Scalar> table(static_cast<std::size_t>(count));
  if (values.is_array()) {
    if (static_cast<std::int64_t>(values.size()) != count) {
      throw ParseError("step function needs " + std::to_string(count) + " values");
    }
    for (std::size_t k = 0; k < values.size(); ++k) table[k] = scalar_from_json(values[k]);
  } else if (values.is_object()) {
    std::vector<bool> seen(static_cast<std::size_t>(count));
    for (const auto& [key, value] : values.items()) {
      Word w = Word::parse(key, alphabet);
      if (w.size() != depth) throw ParseError("word " + key + " does not have length " + std::to_string(depth));
      const auto idx = static_cast<std::size_t>(w.index(alphabet));
      table[idx] = scalar_from_json(value);
      seen[idx] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw ParseError("step function table is incomplete");
    }
  } else {
    throw ParseError("\"values\" must be an array or an object");
  }
  return StepFunction(alphabet, depth, std::move(table));
}

MarkovSpec markov_spec_from_json(const json& j) {
  const json& t = field(j, "T");
  if (!t.is_array()) throw ParseError("\"T\" must be a matrix");
  RationalMatrix transition;
  for (const json& row : t) transition.push_back(rational_list(row));
  std::optional<std::vector<Rational>> lambda;
  if (j.contains("lambda") && !(j.at("lambda").is_string() && j.at("lambda") == "auto")) {
    lambda = rational_list(j.at("lambda"));
  }
  return MarkovSpec::create(std::move(transition), std::move(lambda));
}

AtomicTailSpec atomic_spec_from_json(const json& j) {
  const int L = j.contains("L") ? int_field(j, "L") : 8;
  return AtomicTailSpec::create(int_field(j, "c"), rational_list(field(j, "q")), L);
}

Measure measure_from_json(const json& j) {
  const json& type_field = field(j, "type");
  if (!type_field.is_string()) throw ParseError("\"type\" must be a string");
  const std::string type = type_field.get<std::string>();
  if (type == "markov") return Measure::markov(markov_spec_from_json(j));
  if (type == "product") return Measure::product(ProductSpec::create(rational_list(field(j, "p"))));
  if (type == "atomic_tail") return Measure::atomic_tail(atomic_spec_from_json(j));
  if (type == "table") {
    Alphabet alphabet(int_field(j, "N"));
    std::map<Word, Rational> masses;
    for (const auto& [key, value] : field(j, "masses").items()) {
      masses.emplace(Word::parse(key, alphabet), rational_from_json(value));
    }
    return Measure::table(alphabet, std::move(masses));
  }
  if (type == "pushforward_section") {
    return pushforward_section(measure_from_json(field(j, "of")), int_field(j, "i"));
  }
  if (type == "pushforward_shift") return pushforward_shift(measure_from_json(field(j, "of")));
  if (type == "restrict_then_shift") {
    return restrict_then_shift(measure_from_json(field(j, "of")), int_field(j, "i"));
  }
  throw ParseError("unknown measure type \"" + type + "\"");
}

MonicSystem system_from_json(const json& j) {
  if (j.is_object() && j.contains("derive")) {
    const std::string how = j.at("derive").get<std::string>();
    if (how == "markov") return markov_monic_system(measure_from_json(field(j, "measure")));
    if (how == "kakutani") {
      std::vector<Scalar> z;
      for (const json& e : field(j, "z")) z.push_back(scalar_from_json(e));
      return kakutani_monic_system(z);
    }
    throw ParseError("unknown derivation \"" + how + "\"");
  }
  if (j.is_object() && j.contains("type")) return markov_monic_system(measure_from_json(j));
  Measure mu = measure_from_json(field(j, "measure"));
  std::vector<StepFunction> fs;
  for (const json& f : field(j, "f")) fs.push_back(step_function_from_json(f, mu.alphabet()));
  return MonicSystem(mu, std::move(fs));
}

SigmaVector sigma_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a sigma vector is a list of terms");
  SigmaVector out;
  for (const json& t : j) {
    Measure mu = measure_from_json(field(t, "measure"));
    Scalar c = t.contains("coeff") ? scalar_from_json(t.at("coeff")) : Scalar(1);
    out.terms.push_back({c, step_function_from_json(field(t, "f"), mu.alphabet()), mu});
  }
  return out;
}

json to_json(const Rational& q) { return q.str(); }

json to_json(const RadicalSum& r) {
  if (r.is_rational()) return r.as_rational().str();
  json out = json::array();
  for (const auto& t : r.terms()) out.push_back(json::array({t.coeff.str(), t.radicand}));
  return out;
}

json to_json(const Scalar& s) {
  if (!s.is_exact()) {
    std::complex<double> z = s.to_complex();
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
  }
  if (s.is_real()) return to_json(s.exact().re);
  return json{{"re", to_json(s.exact().re)}, {"im", to_json(s.exact().im)}};
}

json to_json(const StepFunction& f) {
  json values = json::object();
  for (std::int64_t idx = 0; idx < f.alphabet().power(f.depth()); ++idx) {
    values[Word::from_index(idx, f.depth(), f.alphabet()).str()] = to_json(f.at(idx));
  }
  return json{{"depth", f.depth()}, {"values", values}};
}

json to_json(const TailPoint& p) {
  return json{{"prefix", p.prefix().str()}, {"tail", p.tail_letter()}};
}

json to_json(const AtomVector& v) {
  json entries = json::array();
  for (const auto& [p, s] : v.entries) {
    if (!s.is_zero()) entries.push_back(json{{"atom", p.str()}, {"value", to_json(s)}});
  }
  return json{{"tail", v.tail_letter}, {"bound", v.bound}, {"entries", entries}};
}

json to_json(const Report& report) {
  json clauses = json::array();
  for (const Clause& c : report.clauses) {
    json entry{{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) entry["witness"] = c.witness;
    if (!c.detail.empty()) entry["detail"] = c.detail;
    clauses.push_back(entry);
  }
  json out{{"pass", report.pass()}, {"clauses", clauses}};
  if (!report.notes.empty()) out["notes"] = report.notes;
  return out;
}

}  // namespace cuntz::json_io
