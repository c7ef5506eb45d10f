#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/aig.hpp"
#include "skolem/circuit.hpp"

namespace skolem {

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedHeader,
    Syntax,
    DanglingLiteral,
    LatchPresent,
    OutputCount,
    NoSymbolForPartition,
    UnknownSymbol,
    WrongQuantifierShape,
    ArityMismatch,
    UndeclaredVariable,
    UnsupportedFormat,
  };

  ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Contents of an ASCII AIGER file without latches. Input k (0-based) is
/// variable k + 1, matching the file's own numbering.
struct AigerModel {
  Aig aig;
  std::vector<VarId> inputs;
  std::vector<Aig::Lit> outputs;
  std::map<VarId, std::string> input_names;
  std::vector<std::string> output_names;
};

AigerModel read_aiger(std::string_view text);

/// Decides from a symbol name whether an input is an output variable of the
/// relation.
using OutputSelector = std::function<bool(std::string_view name)>;

/// Selects names matching the ECMAScript regular expression `pattern`.
OutputSelector name_pattern(const std::string& pattern);

/// Single-output AIGER file as a spec; every input needs a symbol so that
/// `is_output` can place it in X or Y.
Spec parse_aiger(std::string_view text, const OutputSelector& is_output);

/// Prenex 2QBF "forall Y exists X. CNF" as a spec with the CNF matrix as its
/// circuit. Existential variable k is named "xk", universal variable k "yk".
Spec parse_qdimacs(std::string_view text);

/// AIGER text for `outputs` of `aig`. Inputs are listed in the order given,
/// then the AND gates reachable from the outputs in topological order.
std::string write_aiger(const Aig& aig, std::span<const VarId> inputs, std::span<const Aig::Lit> outputs,
                        const std::map<VarId, std::string>& input_names,
                        std::span<const std::string> output_names);

/// The spec circuit as single-output AIGER, inputs in X then Y order.
std::string write_spec_aiger(const Spec& spec);

enum class SkolemFormat { Aiger, Verilog };

SkolemFormat parse_skolem_format(std::string_view name);

/// One output per spec output (in X order) over the spec inputs (in Y
/// order), named after the spec variables.
std::string write_skolem(const Spec& spec, const std::map<VarId, Circuit>& functions, SkolemFormat format);

/// Reads Skolem functions written by write_skolem(Aiger), matching inputs
/// and outputs to the spec by name.
std::map<VarId, Circuit> read_skolem_aiger(std::string_view text, const Spec& spec);

/// Loads a spec by extension: .aag as AIGER, .qdimacs/.qdm/.cnf as QDIMACS.
Spec load_spec(const std::filesystem::path& path, const OutputSelector& is_output);

std::string read_file(const std::filesystem::path& path);

}  // namespace skolem
