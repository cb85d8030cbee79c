#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "qmvtm/algebra.hpp"
#include "qmvtm/machine.hpp"
#include "qmvtm/semantics.hpp"
#include "qmvtm/transforms.hpp"

namespace qmvtm {

/// Resolves the "algebra" reference of a machine file to an algebra.
using AlgebraResolver = std::function<AlgebraPtr(std::string_view reference)>;

/// Builtin expressions first, then JSON files relative to `base_dir`.
AlgebraResolver default_resolver(std::filesystem::path base_dir = {});

// All loaders throw LoadError; JSON syntax errors report the byte offset.

/// Total algebra JSON; a document with "oplus" instead of "boxplus" is read as
/// an effect table and extended.
FiniteAlgebra load_algebra(std::string_view text);
PartialEffectTable load_effect_table(std::string_view text);
/// True when the document carries an "oplus" table.
bool is_effect_table_document(std::string_view text);
MachineDef load_machine_def(std::string_view text, const AlgebraResolver& resolver);
Machine load_machine(std::string_view text, const AlgebraResolver& resolver);

/// Reads a file; throws LoadError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Algebra from a builtin expression or a JSON file path.
AlgebraPtr load_algebra_reference(std::string_view reference);
Machine load_machine_file(const std::filesystem::path& path);

// Serializers produce key-sorted, pretty-printed JSON.
std::string algebra_to_json(const FiniteAlgebra& algebra);
std::string effect_table_to_json(const PartialEffectTable& table);
/// Builtin algebras are written by name, all others inline.
std::string machine_to_json(const Machine& machine);
std::string eval_result_to_json(const Machine& machine, const EvalResult& result);
std::string sidecar_to_json(const Sidecar& sidecar);
Sidecar load_sidecar(std::string_view text);
std::string report_to_json(const AxiomReport& report);

/// Parses a command-line input string. Symbols are separated by commas at
/// parenthesis depth 0; a single token that is not a tape symbol of the
/// machine is split into characters.
Word parse_word(const Machine& machine, std::string_view text);
std::string format_word(const Word& word);

}  // namespace qmvtm
