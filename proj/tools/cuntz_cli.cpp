// cuntz: JSON-in, JSON-out front end. Exit codes: 0 pass, 1 check failure,
// 2 usage or parse error.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "cuntz/atomic.hpp"
#include "cuntz/classify.hpp"
#include "cuntz/error.hpp"
#include "cuntz/json_io.hpp"
#include "cuntz/measure.hpp"
#include "cuntz/monic_system.hpp"
#include "cuntz/universal.hpp"

namespace {

using cuntz::json_io::json;
namespace jio = cuntz::json_io;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string spec, a, b, word, left, right, function, h, kind = "section";
  int depth = 4;
  int max_depth = 10;
  int letter = 0;
  int trials = 20;
  int jobs = 1;
  int bound = 8;
  std::uint64_t seed = 0;
  double tol = cuntz::kDefaultTolerance;
  bool approx = false;
};

void log(const std::string& line) { std::cerr << "cuntz: " << line << '\n'; }

json load(const std::string& path, const char* flag) {
  if (path.empty()) throw cuntz::ParseError(std::string("missing ") + flag);
  return jio::load_file(path);
}

// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
json inline_or_file(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      throw cuntz::ParseError(e.what());
    }
  }
  return jio::load_file(arg);
}

cuntz::MarkovSpec markov_of(const cuntz::Measure& mu) {
  const cuntz::MarkovSpec* spec = mu.markov_spec();
  if (!spec) throw cuntz::ValidationError("a Markov or product measure is required");
  return *spec;
}

cuntz::MonicSystem system_of(const json& j, const Options& opt) {
  cuntz::MonicSystem sys = jio::system_from_json(j);
  return opt.approx ? sys.to_approx() : sys;
}

json merge_report(json out, const cuntz::Report& report) {
  json r = jio::to_json(report);
  out["pass"] = r["pass"];
  out["clauses"] = r["clauses"];
  if (r.contains("notes")) out["notes"] = r["notes"];
  return out;
}

json fixed_space_json(const cuntz::FixedSpaceResult& fs) {
  return json{{"dimension", fs.dimension},
              {"structural_dimension", fs.structural_dimension},
              {"predicted_dimension", fs.predicted_dimension},
              {"max_residual", fs.max_residual},
              {"method_agreement", fs.method_agreement}};
}

// ---- measure ----

json measure_eval(const Options& opt) {
  cuntz::Measure mu = jio::measure_from_json(load(opt.spec, "--spec"));
  cuntz::Word w = cuntz::Word::parse(opt.word, mu.alphabet());
  return json{{"word", w.str()}, {"mass", mu.mass(w).str()}, {"pass", true}};
}

json measure_pushforward(const Options& opt) {
  cuntz::Measure mu = jio::measure_from_json(load(opt.spec, "--spec"));
  cuntz::Measure pushed = opt.kind == "shift"      ? cuntz::pushforward_shift(mu)
                          : opt.kind == "restrict" ? cuntz::restrict_then_shift(mu, opt.letter)
                          : opt.kind == "section"
                              ? cuntz::pushforward_section(mu, opt.letter)
                              : throw cuntz::ParseError("--kind must be section, shift or restrict");
  json masses = json::object();
  for (int len = 0; len <= opt.depth; ++len) {
    for (const cuntz::Word& w : cuntz::all_words(mu.alphabet(), len)) masses[w.str()] = pushed.mass(w).str();
  }
  return json{{"measure", pushed.describe()}, {"masses", masses}, {"pass", true}};
}

json measure_rn(const Options& opt) {
  cuntz::Measure nu = jio::measure_from_json(load(opt.a, "--a"));
  cuntz::Measure mu = jio::measure_from_json(load(opt.b, "--b"));
  try {
    cuntz::RnDerivative rn = cuntz::rn_derivative(nu, mu, opt.depth);
    return json{{"density", jio::to_json(rn.density)}, {"exact", rn.exact}, {"pass", rn.exact}};
  } catch (const cuntz::NotAbsolutelyContinuous& e) {
    return json{{"pass", false},
                {"clauses", json::array({json{{"name", "absolute_continuity"},
                                              {"pass", false},
                                              {"witness", e.witness()},
                                              {"detail", e.what()}}})}};
  }
}

json measure_affinity(const Options& opt) {
  cuntz::Measure mu = jio::measure_from_json(load(opt.a, "--a"));
  cuntz::Measure nu = jio::measure_from_json(load(opt.b, "--b"));
  std::vector<double> seq = cuntz::affinity_sequence(mu, nu, opt.max_depth, opt.jobs);
  bool nonincreasing = true;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (seq[k] > seq[k - 1] * (1.0 + 1e-12)) nonincreasing = false;
  }
  return json{{"affinities", seq}, {"nonincreasing", nonincreasing}, {"pass", nonincreasing}};
}

json measure_consistency(const Options& opt) {
  cuntz::Measure mu = jio::measure_from_json(load(opt.spec, "--spec"));
  cuntz::ConsistencyReport r = cuntz::consistency_check(mu, opt.depth);
  json out{{"pass", r.pass}};
  if (r.witness) out["witness"] = r.witness->str();
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

// ---- rep ----

json rep_verify(const Options& opt) {
  cuntz::MonicSystem sys = system_of(load(opt.spec, "--spec"), opt);
  cuntz::Report report = cuntz::validate_monic_system(sys, opt.depth, opt.tol);
  cuntz::Report cuntz_report = cuntz::cuntz_relations_check(sys, opt.depth, opt.trials, opt.seed, opt.tol);
  for (auto& c : cuntz_report.clauses) report.clauses.push_back(std::move(c));
  return merge_report(json::object(), report);
}

json rep_apply(const Options& opt) {
  cuntz::MonicSystem sys = system_of(load(opt.spec, "--spec"), opt);
  const cuntz::Alphabet& alphabet = sys.alphabet();
  cuntz::StepFunction f = opt.function.empty()
                              ? cuntz::StepFunction::constant(alphabet, cuntz::Scalar(1))
                              : jio::step_function_from_json(inline_or_file(opt.function), alphabet);
  if (opt.approx) f = f.to_approx();
  cuntz::Word I = cuntz::Word::parse(opt.left, alphabet);
  cuntz::Word J = cuntz::Word::parse(opt.right, alphabet);
  return json{{"result", jio::to_json(cuntz::apply_word_operator(sys, I, J, f))}, {"pass", true}};
}

// ---- classify ----

json classify_irreducible(const Options& opt) {
  cuntz::MarkovSpec spec = markov_of(jio::measure_from_json(load(opt.spec, "--spec")));
  cuntz::IrreducibilityResult r = cuntz::irreducibility_check(spec);
  json out = fixed_space_json(r.fixed_space);
  out["irreducible"] = r.irreducible;
  out["pass"] = r.irreducible;
  return out;
}

json classify_disjoint(const Options& opt) {
  cuntz::MarkovSpec a = markov_of(jio::measure_from_json(load(opt.a, "--a")));
  cuntz::MarkovSpec b = markov_of(jio::measure_from_json(load(opt.b, "--b")));
  cuntz::DisjointnessResult r = cuntz::disjointness_check(a, b);
  json out = fixed_space_json(r.fixed_space);
  out["disjoint"] = r.disjoint;
  out["affinity_nonincreasing"] = r.affinity_nonincreasing;
  out["singular_depth"] = r.singular_depth ? json(*r.singular_depth) : json(nullptr);
  out["pass"] = r.disjoint && r.fixed_space.dimension == 0;
  return out;
}

json classify_equivalent(const Options& opt) {
  cuntz::MonicSystem a = system_of(load(opt.a, "--a"), opt);
  cuntz::MonicSystem b = system_of(load(opt.b, "--b"), opt);
  std::optional<cuntz::StepFunction> h;
  if (!opt.h.empty()) h = jio::step_function_from_json(inline_or_file(opt.h), a.alphabet());
  cuntz::EquivalenceVerdict v = cuntz::equivalence_check(a, b, h, opt.depth, opt.tol);
  json out = merge_report(json::object(), v.report);
  out["verdict"] = cuntz::to_string(v.verdict);
  out["equivalent"] = v.verdict == cuntz::Equivalence::kEquivalent;
  if (v.certificate) out["certificate"] = jio::to_json(*v.certificate);
  if (!v.detail.empty()) out["detail"] = v.detail;
  out["pass"] = v.verdict != cuntz::Equivalence::kInconclusive;
  return out;
}

json classify_commutant(const Options& opt) {
  cuntz::MonicSystem sys = system_of(load(opt.spec, "--spec"), opt);
  std::vector<cuntz::StepFunction> basis = cuntz::commutant_basis(sys, opt.depth);
  json elements = json::array();
  bool constants = basis.size() == 1;
  for (const cuntz::StepFunction& f : basis) {
    elements.push_back(jio::to_json(f));
    for (std::int64_t idx = 0; idx < f.alphabet().power(f.depth()) && constants; ++idx) {
      const cuntz::Word w = cuntz::Word::from_index(idx, f.depth(), f.alphabet());
      if (!sys.measure().mass(w).is_zero() && !(f.at(idx) == cuntz::Scalar(1))) constants = false;
    }
  }
  return json{{"dimension", basis.size()}, {"constants_only", constants}, {"basis", elements},
              {"pass", constants}};
}

// ---- universal ----

json universal_intertwine(const Options& opt) {
  cuntz::MonicSystem sys = system_of(load(opt.spec, "--spec"), opt);
  return merge_report(json::object(),
                      cuntz::intertwine_check(sys, opt.depth, opt.trials, opt.seed, opt.tol));
}

std::vector<cuntz::Measure> measures_of(const Options& opt) {
  std::vector<cuntz::Measure> out{jio::measure_from_json(load(opt.spec, "--spec"))};
  if (!opt.b.empty()) out.push_back(jio::measure_from_json(load(opt.b, "--b")));
  return out;
}

json universal_isometry(const Options& opt) {
  return merge_report(json::object(), cuntz::universal_relations_check(measures_of(opt), opt.depth,
                                                                       opt.trials, opt.seed, opt.tol));
}

json universal_pvm(const Options& opt) {
  std::vector<cuntz::Measure> measures = measures_of(opt);
  std::mt19937_64 rng(opt.seed);
  cuntz::Report report;
  report.add("pvm_covariance", true);
  for (int t = 0; t < opt.trials; ++t) {
    const cuntz::Measure& mu = measures[static_cast<std::size_t>(t) % measures.size()];
    cuntz::SigmaVector x = cuntz::SigmaVector::one_term(
        cuntz::random_step_function(mu.alphabet(), opt.depth, rng, true), mu);
    cuntz::Report r = cuntz::pvm_covariance_check(x, opt.depth, opt.tol);
    if (!r.pass()) {
      report.clauses.front() = r.clauses.front();
      break;
    }
  }
  return merge_report(json::object(), report);
}

// ---- atomic ----

json atomic_report(const Options& opt) {
  cuntz::AtomicTailSpec spec = jio::atomic_spec_from_json(load(opt.spec, "--spec"));
  const int L = opt.bound > 0 ? opt.bound : spec.truncation;
  cuntz::AtomicMonicity m = cuntz::atomic_monicity_report(spec, L);
  cuntz::Report report = m.report;
  for (auto& c : cuntz::atomic_cuntz_check(spec, L).clauses) report.clauses.push_back(std::move(c));
  json out = merge_report(json::object(), report);
  out["monic"] = m.monic;
  out["L"] = L;
  out["atoms"] = m.atom_count;
  out["distinguishable"] = m.distinguishable;
  out["span_rank"] = m.span_rank;
  out["partial_mass"] = m.partial_mass.str();
  out["tail_mass"] = m.tail_mass.str();
  out["normalizer"] = spec.normalizer.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monic representations of the Cuntz algebra: measures, systems and checks"};
  app.require_subcommand(1);
  Options opt;
  std::string command;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec, "JSON spec file");
    sub->add_option("--a", opt.a, "first JSON spec file");
    sub->add_option("--b", opt.b, "second JSON spec file");
    sub->add_option("--depth", opt.depth, "resolution depth");
    sub->add_option("--max-depth", opt.max_depth, "largest depth of a sequence");
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
    sub->add_option("--trials", opt.trials, "random trials");
    sub->add_option("--jobs", opt.jobs, "worker threads for enumeration");
    sub->add_option("--tol", opt.tol, "tolerance for approximate identities");
    sub->add_flag("--approx", opt.approx, "floating-point mode");
  };

  std::vector<std::pair<std::string, std::function<json(const Options&)>>> handlers;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help,
                  std::function<json(const Options&)> fn) {
    CLI::App* sub = group->add_subcommand(name, help);
    common(sub);
    const std::string full = group->get_name() + " " + name;
    sub->callback([&command, full] { command = full; });
    handlers.emplace_back(full, std::move(fn));
    return sub;
  };

  CLI::App* measure = app.add_subcommand("measure", "cylinder measures")->require_subcommand(1);
  leaf(measure, "eval", "mass of a cylinder", measure_eval)->add_option("--word", opt.word)->required();
  CLI::App* push = leaf(measure, "pushforward", "pushforward masses up to --depth", measure_pushforward);
  push->add_option("--letter", opt.letter, "letter i");
  push->add_option("--kind", opt.kind, "section | shift | restrict");
  leaf(measure, "rn", "d(a)/d(b) at --depth", measure_rn);
  leaf(measure, "affinity", "Hellinger affinities for depths 1..--max-depth", measure_affinity);
  leaf(measure, "consistency", "Kolmogorov consistency up to --depth", measure_consistency);

  CLI::App* rep = app.add_subcommand("rep", "monic representations")->require_subcommand(1);
  leaf(rep, "verify", "monic system clauses and Cuntz relations", rep_verify);
  CLI::App* apply = leaf(rep, "apply", "S_I S_J^* applied to a step function", rep_apply);
  apply->add_option("--left", opt.left, "word I");
  apply->add_option("--right", opt.right, "word J");
  apply->add_option("--function", opt.function, "step function JSON or file (default 1)");

  CLI::App* classify = app.add_subcommand("classify", "irreducibility and equivalence")->require_subcommand(1);
  leaf(classify, "irreducible", "fixed-point space of a Markov spec", classify_irreducible);
  leaf(classify, "disjoint", "fixed-point space of a Markov pair", classify_disjoint);
  leaf(classify, "equivalent", "equivalence of two monic systems", classify_equivalent)
      ->add_option("--certificate", opt.h, "certificate step function JSON or file");
  leaf(classify, "commutant", "finite-depth commutant basis", classify_commutant);

  CLI::App* universal = app.add_subcommand("universal", "sigma-functions")->require_subcommand(1);
  leaf(universal, "intertwine", "embedding into the universal representation", universal_intertwine);
  leaf(universal, "isometry", "universal Cuntz relations", universal_isometry);
  leaf(universal, "pvm-covariance", "P(C(iI)) = S_i P(C(I)) S_i^*", universal_pvm);

  CLI::App* atomic = app.add_subcommand("atomic", "atomic-tail measures")->require_subcommand(1);
  leaf(atomic, "report", "monicity and mass accounting", atomic_report)
      ->add_option("--bound", opt.bound, "truncation bound L");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  std::function<json(const Options&)> handler;
  for (auto& [name, fn] : handlers) {
    if (name == command) handler = fn;
  }
  const auto start = std::chrono::steady_clock::now();
  json out;
  int code = kExitPass;
  try {
    out = handler(opt);
    code = out.value("pass", true) ? kExitPass : kExitFail;
  } catch (const cuntz::ParseError& e) {
    log(std::string("parse error: ") + e.what());
    return kExitUsage;
  } catch (const cuntz::ValidationError& e) {
    log(std::string("invalid input: ") + e.what());
    return kExitUsage;
  } catch (const cuntz::Error& e) {
    log(std::string("check failed: ") + e.what());
    out = json{{"pass", false}, {"error", e.what()}};
    code = kExitFail;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json echo = json::array();
  for (int k = 1; k < argc; ++k) echo.push_back(argv[k]);
  out["command"] = echo;
  out["mode"] = opt.approx ? "approx" : "exact";
  out["elapsed_ms"] = ms;
  std::cout << out.dump(2) << '\n';
  log(command + (code == kExitPass ? ": pass" : ": FAIL"));
  return code;
}
