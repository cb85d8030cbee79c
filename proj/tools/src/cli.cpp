#include "qmvtm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qmvtm/error.hpp"
#include "qmvtm/harness.hpp"
#include "qmvtm/io.hpp"

namespace qmvtm {

namespace {

namespace fs = std::filesystem;

std::string format_witness(const Violation& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.witness.size(); ++i) out += (i ? ", " : "") + v.witness[i];
  return out + ")";
}

void print_report(const AxiomReport& r, std::ostream& out) {
  out << r.family << ' ' << (r.pass ? "pass" : "fail");
  if (!r.pass) {
    const auto& v = r.violations.front();
    out << "  " << v.axiom << " at " << format_witness(v) << ": lhs " << v.lhs << ", rhs " << v.rhs;
  }
  out << '\n';
}

struct AlgebraSource {
  AlgebraPtr algebra;
  std::optional<PartialEffectTable> effect;
};

AlgebraSource open_algebra(const std::string& ref) {
  if (!fs::exists(ref)) {
    if (auto builtin = make_builtin(ref)) return {builtin, std::nullopt};
    throw LoadError("no such file or builtin algebra '" + ref + "'");
  }
  const std::string text = read_file(ref);
  if (is_effect_table_document(text)) {
    PartialEffectTable table = load_effect_table(text);
    AlgebraPtr ext;
    if (check_axioms(table).pass) ext = std::make_shared<const FiniteAlgebra>(extend_effect(table));
    return {ext, std::move(table)};
  }
  return {std::make_shared<const FiniteAlgebra>(load_algebra(text)), std::nullopt};
}

int algebra_check(const std::string& file, const std::string& family, bool json, std::ostream& out) {
  const AlgebraSource src = open_algebra(file);
  std::vector<AxiomReport> reports;
  std::vector<AxiomFamily> families;
  bool want_effect = false;
  if (family == "all") {
    families = algebra_families();
    want_effect = src.effect.has_value();
  } else {
    auto f = parse_family(family);
    if (!f) throw InvalidArgument("unknown family '" + family + "'");
    if (*f == AxiomFamily::Effect) {
      if (!src.effect) throw InvalidArgument("EFFECT needs a partial effect table file");
      want_effect = true;
    } else {
      families.push_back(*f);
    }
  }
  if (want_effect) reports.push_back(check_axioms(*src.effect));
  if (!families.empty() && !src.algebra) {
    throw InvalidArgument("effect table fails the effect axioms; no extension to check");
  }
  for (auto f : families) {
    try {
      reports.push_back(check_axioms(*src.algebra, f));
    } catch (const PrerequisiteMissing& e) {
      if (family != "all") throw;
      AxiomReport skipped;
      skipped.family = std::string(to_string(f));
      skipped.add({"prerequisite", {}, e.what(), ""});
      reports.push_back(std::move(skipped));
    }
  }
  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    if (json) {
      out << report_to_json(r) << '\n';
    } else {
      print_report(r, out);
    }
  }
  return pass ? exit_ok : exit_violated;
}

Budget make_budget(std::size_t max_steps, bool no_prune) { return Budget{max_steps, !no_prune}; }

Mode require_mode(const std::string& text) {
  auto mode = parse_mode(text);
  if (!mode) throw InvalidArgument("mode must be depth or width");
  return *mode;
}

int run_machine(const std::string& file, const std::string& input, const std::string& mode_text,
                std::size_t max_steps, bool no_prune, bool json, std::ostream& out) {
  const Machine m = load_machine_file(file);
  const Word word = parse_word(m, input);
  const EvalResult r = evaluate(m, word, require_mode(mode_text), make_budget(max_steps, no_prune));
  if (json) {
    out << eval_result_to_json(m, r) << '\n';
  } else {
    out << m.algebra().name_of(r.value);
    if (!r.defined) out << " (undefined: no halting path)";
    if (!r.complete) out << " (incomplete after " << max_steps << " steps)";
    out << '\n';
  }
  return r.complete ? exit_ok : exit_inconclusive;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!(file << text << '\n')) throw LoadError("cannot write '" + path + "'");
}

int transform(const std::string& file, const std::string& kind, std::size_t cap, const std::string& output,
              std::ostream& out) {
  const Machine m = load_machine_file(file);
  std::optional<TransformResult> result;
  if (kind == "initial") {
    result.emplace(classicalize_initial(m));
  } else if (kind == "final") {
    result.emplace(classicalize_final(m));
  } else if (kind == "both") {
    result.emplace(classicalize_both(m));
  } else if (kind == "transitions-width") {
    result.emplace(classicalize_transitions_width(m, cap));
  } else if (kind == "transitions-depth") {
    result.emplace(classicalize_transitions_depth(m, cap));
  } else {
    throw InvalidArgument("unknown transform kind '" + kind + "'");
  }
  const std::string text = machine_to_json(result->machine);
  if (output.empty()) {
    out << text << '\n';
    return exit_ok;
  }
  write_file(output, text);
  write_file(output + ".sidecar.json", sidecar_to_json(result->sidecar));
  out << result->machine.name() << ": " << result->sidecar.states << " states, " << result->sidecar.transitions
      << " transitions";
  if (result->sidecar.closure_size) out << ", closure " << *result->sidecar.closure_size;
  out << '\n';
  return exit_ok;
}

std::vector<Word> read_inputs(const Machine& m, const std::string& file) {
  std::istringstream in(read_file(file));
  std::vector<Word> words;
  for (std::string line; std::getline(in, line);) {
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty() || line.front() == '#') continue;
    words.push_back(parse_word(m, line));
  }
  return words;
}

int equiv(const std::string& f1, const std::string& f2, const std::string& mode_text, const std::string& inputs,
          std::size_t max_len, std::size_t max_steps, bool encode, std::ostream& out) {
  const Machine m1 = load_machine_file(f1);
  const Machine m2 = load_machine_file(f2);
  const Mode mode = require_mode(mode_text);
  std::vector<Word> words;
  if (!inputs.empty()) {
    words = read_inputs(m1, inputs);
  } else {
    words = enumerate_words(m1.def().input_alphabet, max_len);
  }
  InputEncoder encoder;
  if (encode) {
    const std::string path = f2 + ".sidecar.json";
    if (!fs::exists(path)) throw LoadError("--encode needs '" + path + "'");
    Sidecar sidecar = load_sidecar(read_file(path));
    encoder = [sidecar = std::move(sidecar)](const Word& w) { return sidecar.encode(w); };
  }
  const EquivReport r = equiv_check(m1, m2, mode, words, Budget{max_steps, true}, encoder);
  for (const auto& o : r.outcomes) {
    out << format_word(o.input) << '\t' << o.first_value << '\t' << o.second_value << '\t'
        << (!o.compared ? "incomplete" : o.holds ? "equal" : "UNEQUAL") << '\n';
  }
  for (const auto* w : r.witnesses()) {
    out << "witness: " << format_word(w->input) << " gives " << w->first_value << " vs " << w->second_value
        << '\n';
  }
  out << "verdict: " << to_string(r.verdict) << '\n';
  return exit_code(r.verdict);
}

int verify(const std::string& suite, bool json, std::ostream& out) {
  if (suite != "corpus") throw InvalidArgument("unknown suite '" + suite + "'");
  const CorpusReport report = verify_corpus();
  out << (json ? report.to_json() + "\n" : report.to_table());
  return exit_code(report.verdict);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"E-valued Turing machines over finite QMV algebras", "qmvtm"};
  app.require_subcommand(1);

  auto* algebra = app.add_subcommand("algebra", "Algebra utilities");
  algebra->require_subcommand(1);
  auto* check = algebra->add_subcommand("check", "Check axiom families of an algebra file or builtin");
  std::string algebra_file, family = "all";
  bool algebra_json = false;
  check->add_option("file", algebra_file, "Algebra JSON file or builtin expression")->required();
  check->add_option("--family", family, "Axiom family or 'all'");
  check->add_flag("--json", algebra_json, "One JSON report per line");

  auto* run = app.add_subcommand("run", "Evaluate a machine on one input");
  std::string machine_file, input, mode = "depth";
  std::size_t max_steps = 500;
  bool no_prune = false, run_json = false;
  run->add_option("machine", machine_file, "Machine JSON file")->required();
  run->add_option("input", input, "Input word")->required();
  run->add_option("--mode", mode, "depth or width");
  run->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);
  run->add_flag("--no-prune", no_prune, "Disable dominance pruning");
  run->add_flag("--json", run_json, "Print the result as JSON");

  auto* tr = app.add_subcommand("transform", "Apply a classicalization transform");
  std::string kind, output;
  std::size_t cap = 256;
  tr->add_option("machine", machine_file, "Machine JSON file")->required();
  tr->add_option("--kind", kind, "initial|final|both|transitions-width|transitions-depth")->required();
  tr->add_option("--cap", cap, "Closure size limit")->check(CLI::PositiveNumber);
  tr->add_option("-o,--output", output, "Output machine file; a sidecar is written next to it");

  auto* eq = app.add_subcommand("equiv", "Compare two machines on a set of inputs");
  std::string second_file, inputs_file;
  std::size_t max_len = 4;
  bool encode = false;
  eq->add_option("first", machine_file, "Machine JSON file")->required();
  eq->add_option("second", second_file, "Machine JSON file")->required();
  eq->add_option("--mode", mode, "depth or width");
  auto* inputs_opt = eq->add_option("--inputs", inputs_file, "File with one input word per line");
  eq->add_option("--max-len", max_len, "Enumerate all inputs up to this length")->excludes(inputs_opt);
  eq->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);
  eq->add_flag("--encode", encode, "Re-encode inputs of the second machine using its sidecar");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  bool verify_json = false;
  ver->add_option("suite", suite, "Suite name (corpus)")->required();
  ver->add_flag("--json", verify_json, "Print the report as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (*check) return algebra_check(algebra_file, family, algebra_json, out);
    if (*run) return run_machine(machine_file, input, mode, max_steps, no_prune, run_json, out);
    if (*tr) return transform(machine_file, kind, cap, output, out);
    if (*eq) return equiv(machine_file, second_file, mode, inputs_file, max_len, max_steps, encode, out);
    if (*ver) return verify(suite, verify_json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace qmvtm
