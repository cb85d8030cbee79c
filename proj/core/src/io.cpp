#include "qmvtm/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmvtm/error.hpp"

namespace qmvtm {

using json = nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LoadError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw LoadError(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw LoadError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T optional_field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  return field<T>(doc, key);
}

FiniteAlgebra algebra_from_json(const json& doc) {
  if (doc.contains("oplus")) {
    PartialEffectTable t = load_effect_table(doc.dump());
    try {
      return extend_effect(t);
    } catch (const InvalidArgument& e) {
      throw LoadError(e.what());
    }
  }
  return FiniteAlgebra(field<std::string>(doc, "name"),
                       field<std::vector<std::string>>(doc, "carrier"),
                       field<std::string>(doc, "zero"), field<std::string>(doc, "one"),
                       field<std::vector<std::vector<std::string>>>(doc, "boxplus"),
                       field<std::vector<std::string>>(doc, "complement"));
}

json algebra_json(const FiniteAlgebra& A) {
  json doc;
  doc["name"] = A.name();
  doc["carrier"] = A.carrier();
  doc["zero"] = A.carrier()[A.zero_index()];
  doc["one"] = A.carrier()[A.one_index()];
  json rows = json::array();
  for (std::size_t a = 0; a < A.size(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < A.size(); ++b) {
      row.push_back(A.carrier()[A.plus(static_cast<FiniteAlgebra::Index>(a), static_cast<FiniteAlgebra::Index>(b))]);
    }
    rows.push_back(std::move(row));
  }
  doc["boxplus"] = std::move(rows);
  json comp = json::array();
  for (std::size_t a = 0; a < A.size(); ++a) {
    comp.push_back(A.carrier()[A.comp(static_cast<FiniteAlgebra::Index>(a))]);
  }
  doc["complement"] = std::move(comp);
  return doc;
}

}  // namespace

AlgebraResolver default_resolver(std::filesystem::path base_dir) {
  return [base_dir = std::move(base_dir)](std::string_view ref) -> AlgebraPtr {
    if (auto builtin = make_builtin(ref)) return builtin;
    std::filesystem::path path(ref);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return std::make_shared<const FiniteAlgebra>(load_algebra(read_file(path)));
  };
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FiniteAlgebra load_algebra(std::string_view text) { return algebra_from_json(parse_json(text)); }

bool is_effect_table_document(std::string_view text) {
  const json doc = parse_json(text);
  return doc.is_object() && doc.contains("oplus");
}

PartialEffectTable load_effect_table(std::string_view text) {
  const json doc = parse_json(text);
  PartialEffectTable t;
  t.name = field<std::string>(doc, "name");
  t.carrier = field<std::vector<std::string>>(doc, "carrier");
  auto index = [&](const std::string& name, const char* where) -> std::uint16_t {
    auto it = std::find(t.carrier.begin(), t.carrier.end(), name);
    if (it == t.carrier.end()) {
      throw LoadError(std::string(where) + ": '" + name + "' is not a carrier element");
    }
    return static_cast<std::uint16_t>(it - t.carrier.begin());
  };
  t.zero = index(field<std::string>(doc, "zero"), "zero");
  t.one = index(field<std::string>(doc, "one"), "one");
  const json& rows = doc.at("oplus");
  const std::size_t k = t.carrier.size();
  if (!rows.is_array() || rows.size() != k) throw LoadError("oplus: expected " + std::to_string(k) + " rows");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != k) {
      throw LoadError("oplus: every row needs " + std::to_string(k) + " entries");
    }
    for (const auto& cell : row) {
      if (cell.is_null()) {
        t.oplus.emplace_back(std::nullopt);
      } else if (cell.is_string()) {
        t.oplus.emplace_back(index(cell.get<std::string>(), "oplus"));
      } else {
        throw LoadError("oplus: entries must be element names or null");
      }
    }
  }
  return t;
}

MachineDef load_machine_def(std::string_view text, const AlgebraResolver& resolver) {
  const json doc = parse_json(text);
  MachineDef def;
  def.name = field<std::string>(doc, "name");
  if (!doc.contains("algebra")) throw LoadError("missing field 'algebra'");
  const json& alg = doc.at("algebra");
  if (alg.is_string()) {
    try {
      def.algebra = resolver(alg.get<std::string>());
    } catch (const LoadError& e) {
      throw LoadError("unknown algebra reference '" + alg.get<std::string>() + "': " + e.what());
    }
  } else if (alg.is_object()) {
    def.algebra = std::make_shared<const FiniteAlgebra>(algebra_from_json(alg));
  } else {
    throw LoadError("field 'algebra' must be a name, a path or an inline object");
  }
  const FiniteAlgebra& A = *def.algebra;
  auto value = [&](const json& v, const std::string& where) {
    if (!v.is_string()) throw LoadError(where + ": value must be an element name");
    auto e = A.find(v.get<std::string>());
    if (!e) throw LoadError(where + ": '" + v.get<std::string>() + "' is not an element of " + A.name());
    return *e;
  };
  def.states = field<std::vector<std::string>>(doc, "states");
  def.input_alphabet = field<std::vector<std::string>>(doc, "input_alphabet");
  def.tape_alphabet = field<std::vector<std::string>>(doc, "tape_alphabet");
  def.blank = field<std::string>(doc, "blank");
  for (const char* key : {"initial", "final"}) {
    if (!doc.contains(key)) continue;
    if (!doc.at(key).is_object()) throw LoadError(std::string("field '") + key + "' must be an object");
    auto& target = std::string_view(key) == "initial" ? def.initial : def.final;
    for (const auto& [q, v] : doc.at(key).items()) target[q] = value(v, std::string(key) + "." + q);
  }
  if (doc.contains("transitions")) {
    const json& list = doc.at("transitions");
    if (!list.is_array()) throw LoadError("field 'transitions' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const json& t = list[i];
      const std::string where = "transitions[" + std::to_string(i) + "]";
      try {
        TransitionDef td;
        td.from = field<std::string>(t, "from");
        td.read = field<std::string>(t, "read");
        td.to = field<std::string>(t, "to");
        td.write = field<std::string>(t, "write");
        auto move = parse_move(field<std::string>(t, "move"));
        if (!move) throw LoadError("move must be L, S or R");
        td.move = *move;
        td.value = value(t.contains("value") ? t.at("value") : json(A.carrier()[A.one_index()]), where);
        def.transitions.push_back(std::move(td));
      } catch (const LoadError& e) {
        throw LoadError(where + ": " + e.what());
      }
    }
  }
  return def;
}

Machine load_machine(std::string_view text, const AlgebraResolver& resolver) {
  MachineDef def = load_machine_def(text, resolver);
  const AxiomReport report = validate_machine(def);
  if (!report.pass) {
    std::string msg = "invalid machine '" + def.name + "':";
    for (const auto& v : report.violations) {
      msg += " [" + v.axiom + " at " + (v.witness.empty() ? "" : v.witness.front()) +
             (v.lhs.empty() ? "" : ": " + v.lhs) + "]";
    }
    throw LoadError(msg);
  }
  return Machine(std::move(def));
}

AlgebraPtr load_algebra_reference(std::string_view reference) {
  return default_resolver()(reference);
}

Machine load_machine_file(const std::filesystem::path& path) {
  return load_machine(read_file(path), default_resolver(path.parent_path()));
}

std::string algebra_to_json(const FiniteAlgebra& algebra) { return algebra_json(algebra).dump(2); }

std::string effect_table_to_json(const PartialEffectTable& t) {
  json doc;
  doc["name"] = t.name;
  doc["carrier"] = t.carrier;
  doc["zero"] = t.carrier[t.zero];
  doc["one"] = t.carrier[t.one];
  json rows = json::array();
  for (std::uint16_t a = 0; a < t.size(); ++a) {
    json row = json::array();
    for (std::uint16_t b = 0; b < t.size(); ++b) {
      auto s = t.sum(a, b);
      row.push_back(s ? json(t.carrier[*s]) : json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  doc["oplus"] = std::move(rows);
  return doc.dump(2);
}

std::string machine_to_json(const Machine& m) {
  const auto& def = m.def();
  const auto& A = m.algebra();
  json doc;
  doc["name"] = def.name;
  auto builtin = make_builtin(A.name());
  if (builtin && builtin->id() == A.id()) {
    doc["algebra"] = A.name();
  } else {
    doc["algebra"] = algebra_json(A);
  }
  doc["states"] = def.states;
  doc["input_alphabet"] = def.input_alphabet;
  doc["tape_alphabet"] = def.tape_alphabet;
  doc["blank"] = def.blank;
  json initial = json::object();
  for (const auto& [q, v] : def.initial) initial[q] = A.name_of(v);
  json final = json::object();
  for (const auto& [q, v] : def.final) final[q] = A.name_of(v);
  doc["initial"] = std::move(initial);
  doc["final"] = std::move(final);
  json transitions = json::array();
  for (const auto& t : def.transitions) {
    transitions.push_back({{"from", t.from},
                           {"read", t.read},
                           {"to", t.to},
                           {"write", t.write},
                           {"move", std::string(1, to_char(t.move))},
                           {"value", A.name_of(t.value)}});
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(2);
}

std::string eval_result_to_json(const Machine& m, const EvalResult& r) {
  json doc = {{"value", m.algebra().name_of(r.value)},
              {"complete", r.complete},
              {"defined", r.defined},
              {"levels", r.levels},
              {"paths", r.paths},
              {"pruned", r.pruned}};
  return doc.dump();
}

std::string sidecar_to_json(const Sidecar& s) {
  json doc;
  doc["kind"] = s.kind;
  doc["source"] = s.source;
  doc["closure_size"] = s.closure_size ? json(*s.closure_size) : json(nullptr);
  doc["input_encoding"] = s.input_encoding;
  doc["states"] = s.states;
  doc["transitions"] = s.transitions;
  return doc.dump(2);
}

Sidecar load_sidecar(std::string_view text) {
  const json doc = parse_json(text);
  Sidecar s;
  s.kind = field<std::string>(doc, "kind");
  s.source = optional_field<std::string>(doc, "source", "");
  if (doc.contains("closure_size") && !doc.at("closure_size").is_null()) {
    s.closure_size = field<std::size_t>(doc, "closure_size");
  }
  s.input_encoding = optional_field<std::map<std::string, std::string>>(doc, "input_encoding", {});
  s.states = optional_field<std::size_t>(doc, "states", 0);
  s.transitions = optional_field<std::size_t>(doc, "transitions", 0);
  return s;
}

std::string report_to_json(const AxiomReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  json doc = {{"family", report.family}, {"pass", report.pass}, {"violations", std::move(violations)}};
  return doc.dump();
}

Word parse_word(const Machine& machine, std::string_view text) {
  Word tokens;
  std::string current;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += ch;
  }
  tokens.push_back(std::move(current));
  if (tokens.size() == 1 && !machine.has_symbol(tokens.front())) {
    Word chars;
    for (char ch : tokens.front()) chars.emplace_back(1, ch);
    return chars;
  }
  return tokens;
}

std::string format_word(const Word& word) {
  const bool single = std::all_of(word.begin(), word.end(), [](const auto& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i && !single) out += ',';
    out += word[i];
  }
  return out;
}

}  // namespace qmvtm
