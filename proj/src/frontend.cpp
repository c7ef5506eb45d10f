#include "skolem/frontend.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "skolem/nnf.hpp"

namespace skolem {

namespace {

using Kind = ParseError::Kind;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T to_number(std::string_view s, Kind kind, const std::string& context) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(kind, context + ": expected a number, got '" + std::string(s) + "'");
  return value;
}

std::uint32_t aiger_number(std::string_view s, std::size_t line_no) {
  return to_number<std::uint32_t>(s, Kind::Syntax, "line " + std::to_string(line_no));
}

}  // namespace

AigerModel read_aiger(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(Kind::MalformedHeader, "empty AIGER file");
  const auto head = tokens(lines[0]);
  if (head.size() != 6 || head[0] != "aag")
    throw ParseError(Kind::MalformedHeader, "expected header 'aag M I L O A'");
  std::uint32_t hdr[5];
  for (int k = 0; k < 5; ++k) hdr[k] = to_number<std::uint32_t>(head[k + 1], Kind::MalformedHeader, "header");
  const auto [max_var, n_in, n_latch, n_out, n_and] = std::tuple{hdr[0], hdr[1], hdr[2], hdr[3], hdr[4]};
  if (n_latch != 0) throw ParseError(Kind::LatchPresent, "latches are not supported");
  if (std::uint64_t{n_in} + n_and > max_var)
    throw ParseError(Kind::MalformedHeader, "M is smaller than I + L + A");
  if (lines.size() < 1 + std::size_t{n_in} + n_out + n_and)
    throw ParseError(Kind::MalformedHeader, "file shorter than its header declares");

  enum class Def : std::uint8_t { None, Input, And };
  std::vector<Def> def(max_var + 1, Def::None);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fanins(max_var + 1);
  AigerModel model;
  std::vector<std::uint32_t> file_inputs;

  std::size_t ln = 1;
  auto check_lit = [&](std::uint32_t lit, std::size_t line_no) {
    if ((lit >> 1) > max_var)
      throw ParseError(Kind::DanglingLiteral,
                       "line " + std::to_string(line_no) + ": literal " + std::to_string(lit) + " exceeds M");
  };
  auto define = [&](std::uint32_t lit, Def kind, std::size_t line_no) {
    if (lit & 1u || lit < 2)
      throw ParseError(Kind::Syntax, "line " + std::to_string(line_no) + ": definition needs a positive variable");
    check_lit(lit, line_no);
    if (def[lit >> 1] != Def::None)
      throw ParseError(Kind::Syntax, "line " + std::to_string(line_no) + ": variable defined twice");
    def[lit >> 1] = kind;
  };

  for (std::uint32_t k = 0; k < n_in; ++k, ++ln) {
    const auto t = tokens(lines[ln]);
    if (t.size() != 1) throw ParseError(Kind::Syntax, "line " + std::to_string(ln + 1) + ": expected one literal");
    const std::uint32_t lit = aiger_number(t[0], ln + 1);
    define(lit, Def::Input, ln + 1);
    file_inputs.push_back(lit >> 1);
  }
  std::vector<std::uint32_t> out_lits;
  for (std::uint32_t k = 0; k < n_out; ++k, ++ln) {
    const auto t = tokens(lines[ln]);
    if (t.size() != 1) throw ParseError(Kind::Syntax, "line " + std::to_string(ln + 1) + ": expected one literal");
    const std::uint32_t lit = aiger_number(t[0], ln + 1);
    check_lit(lit, ln + 1);
    out_lits.push_back(lit);
  }
  for (std::uint32_t k = 0; k < n_and; ++k, ++ln) {
    const auto t = tokens(lines[ln]);
    if (t.size() != 3) throw ParseError(Kind::Syntax, "line " + std::to_string(ln + 1) + ": expected an AND gate");
    const std::uint32_t lhs = aiger_number(t[0], ln + 1);
    const std::uint32_t r0 = aiger_number(t[1], ln + 1);
    const std::uint32_t r1 = aiger_number(t[2], ln + 1);
    define(lhs, Def::And, ln + 1);
    check_lit(r0, ln + 1);
    check_lit(r1, ln + 1);
    fanins[lhs >> 1] = {r0, r1};
  }

  // Symbol table, up to an optional comment section.
  std::map<std::uint32_t, std::string> in_sym;
  std::map<std::uint32_t, std::string> out_sym;
  for (; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    if (line == "c" || line.starts_with("c ")) break;
    if (line.empty()) continue;
    const char kind = line[0];
    const std::size_t space = line.find(' ');
    if ((kind != 'i' && kind != 'o' && kind != 'l') || space == std::string_view::npos || space < 2)
      throw ParseError(Kind::Syntax, "line " + std::to_string(ln + 1) + ": bad symbol entry");
    if (kind == 'l') throw ParseError(Kind::LatchPresent, "latch symbol present");
    const auto pos = aiger_number(line.substr(1, space - 1), ln + 1);
    const std::string name(line.substr(space + 1));
    if (kind == 'i') {
      if (pos >= n_in) throw ParseError(Kind::Syntax, "input symbol index out of range");
      in_sym[pos] = name;
    } else {
      if (pos >= n_out) throw ParseError(Kind::Syntax, "output symbol index out of range");
      out_sym[pos] = name;
    }
  }

  for (std::uint32_t k = 0; k < n_in; ++k) {
    const VarId v = file_inputs[k];
    model.inputs.push_back(v);
    model.aig.input(v);
    if (auto it = in_sym.find(k); it != in_sym.end()) model.input_names[v] = it->second;
  }

  // Gates may be listed in any order; build them depth first, rejecting cycles.
  std::vector<Aig::Lit> image(max_var + 1, Aig::kFalse);
  std::vector<std::uint8_t> state(max_var + 1, 0);  // 0 new, 1 open, 2 done
  state[0] = 2;
  for (VarId v : file_inputs) {
    image[v] = model.aig.input(v);
    state[v] = 2;
  }
  auto resolve = [&](std::uint32_t lit) { return image[lit >> 1] ^ (lit & 1u); };
  auto build = [&](std::uint32_t root_var) {
    std::vector<std::uint32_t> stack{root_var};
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      if (state[v] == 2) {
        stack.pop_back();
        continue;
      }
      if (def[v] == Def::None)
        throw ParseError(Kind::DanglingLiteral, "variable " + std::to_string(v) + " is used but never defined");
      const auto [a, b] = fanins[v];
      if (state[v] == 0) {
        state[v] = 1;
        for (std::uint32_t child : {a >> 1, b >> 1}) {
          if (state[child] == 1) throw ParseError(Kind::Syntax, "combinational cycle through variable " +
                                                                    std::to_string(child));
          if (state[child] == 0) stack.push_back(child);
        }
        continue;
      }
      image[v] = model.aig.make_and(resolve(a), resolve(b));
      state[v] = 2;
      stack.pop_back();
    }
  };
  for (std::uint32_t lit : out_lits) {
    build(lit >> 1);
    model.outputs.push_back(resolve(lit));
  }
  for (std::uint32_t k = 0; k < n_out; ++k) {
    auto it = out_sym.find(k);
    model.output_names.push_back(it == out_sym.end() ? std::string{} : it->second);
  }
  return model;
}

OutputSelector name_pattern(const std::string& pattern) {
  std::regex re;
  try {
    re = std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw ParseError(Kind::Syntax, "bad output name pattern '" + pattern + "': " + e.what());
  }
  return [re](std::string_view name) { return std::regex_search(name.begin(), name.end(), re); };
}

Spec parse_aiger(std::string_view text, const OutputSelector& is_output) {
  AigerModel m = read_aiger(text);
  if (m.outputs.size() != 1)
    throw ParseError(Kind::OutputCount, "expected exactly one output, found " + std::to_string(m.outputs.size()));
  Spec spec;
  for (VarId v : m.inputs) {
    auto it = m.input_names.find(v);
    if (it == m.input_names.end())
      throw ParseError(Kind::NoSymbolForPartition, "input variable " + std::to_string(v) + " has no symbol");
    (is_output(it->second) ? spec.outputs : spec.inputs).push_back(v);
  }
  spec.names = std::move(m.input_names);
  spec.circuit = to_nnf(m.aig, m.outputs[0]);
  return spec;
}

Spec parse_qdimacs(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t ln = 0;
  auto skip_comments = [&] {
    while (ln < lines.size() && (lines[ln].empty() || lines[ln][0] == 'c')) ++ln;
  };
  skip_comments();
  if (ln == lines.size()) throw ParseError(Kind::MalformedHeader, "missing 'p cnf' line");
  const auto head = tokens(lines[ln]);
  if (head.size() != 4 || head[0] != "p" || head[1] != "cnf")
    throw ParseError(Kind::MalformedHeader, "expected 'p cnf V C'");
  const auto n_vars = to_number<std::uint32_t>(head[2], Kind::MalformedHeader, "p-line");
  const auto n_clauses = to_number<std::uint64_t>(head[3], Kind::MalformedHeader, "p-line");
  ++ln;

  // Quantifier blocks; consecutive lines with the same quantifier merge.
  std::vector<std::pair<char, std::vector<VarId>>> blocks;
  std::set<VarId> declared;
  for (skip_comments(); ln < lines.size(); ++ln, skip_comments()) {
    const auto t = tokens(lines[ln]);
    if (t.empty() || (t[0] != "a" && t[0] != "e")) break;
    if (t.back() != "0") throw ParseError(Kind::Syntax, "quantifier line must end in 0");
    const char q = t[0][0];
    if (blocks.empty() || blocks.back().first != q) blocks.push_back({q, {}});
    for (std::size_t k = 1; k + 1 < t.size(); ++k) {
      const auto v = to_number<std::int64_t>(t[k], Kind::Syntax, "line " + std::to_string(ln + 1));
      if (v <= 0 || v > n_vars)
        throw ParseError(Kind::ArityMismatch, "quantified variable " + std::to_string(v) + " outside 1.." +
                                                  std::to_string(n_vars));
      if (!declared.insert(static_cast<VarId>(v)).second)
        throw ParseError(Kind::WrongQuantifierShape, "variable " + std::to_string(v) + " quantified twice");
      blocks.back().second.push_back(static_cast<VarId>(v));
    }
  }
  if (blocks.size() != 2 || blocks[0].first != 'a' || blocks[1].first != 'e')
    throw ParseError(Kind::WrongQuantifierShape, "expected one universal block followed by one existential block");

  CircuitBuilder b;
  std::vector<NodeId> clauses;
  std::vector<NodeId> current;
  std::uint64_t seen = 0;
  for (; ln < lines.size(); ++ln) {
    if (lines[ln].empty() || lines[ln][0] == 'c') continue;
    for (std::string_view tok : tokens(lines[ln])) {
      const auto lit = to_number<std::int64_t>(tok, Kind::Syntax, "line " + std::to_string(ln + 1));
      if (lit == 0) {
        clauses.push_back(b.make_or(std::move(current)));
        current.clear();
        ++seen;
        continue;
      }
      const auto v = static_cast<VarId>(lit < 0 ? -lit : lit);
      if (v > n_vars) throw ParseError(Kind::ArityMismatch, "literal " + std::to_string(lit) + " exceeds V");
      if (!declared.contains(v))
        throw ParseError(Kind::UndeclaredVariable, "variable " + std::to_string(v) + " is not quantified");
      current.push_back(b.literal(v, lit > 0));
    }
  }
  if (!current.empty()) throw ParseError(Kind::Syntax, "last clause is not terminated by 0");
  if (seen != n_clauses)
    throw ParseError(Kind::ArityMismatch, "p-line declares " + std::to_string(n_clauses) + " clauses, found " +
                                              std::to_string(seen));

  Spec spec;
  spec.inputs = blocks[0].second;
  spec.outputs = blocks[1].second;
  for (VarId y : spec.inputs) spec.names[y] = "y" + std::to_string(y);
  for (VarId x : spec.outputs) spec.names[x] = "x" + std::to_string(x);
  spec.circuit = b.build(b.make_and(std::move(clauses)));
  return spec;
}

std::string write_aiger(const Aig& aig, std::span<const VarId> inputs, std::span<const Aig::Lit> outputs,
                        const std::map<VarId, std::string>& input_names,
                        std::span<const std::string> output_names) {
  // Gates reachable from the outputs; AIG indices are already topological.
  std::vector<char> used(aig.num_nodes(), 0);
  std::vector<std::uint32_t> stack;
  for (Aig::Lit o : outputs) stack.push_back(Aig::index(o));
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (n == 0 || used[n]) continue;
    used[n] = 1;
    const auto& info = aig.info(n);
    if (info.is_input) continue;
    stack.push_back(Aig::index(info.fanin0));
    stack.push_back(Aig::index(info.fanin1));
  }

  std::unordered_map<VarId, std::uint32_t> input_index;
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n)
    if (aig.info(n).is_input) input_index.emplace(aig.info(n).var, n);

  std::vector<std::uint32_t> file_var(aig.num_nodes(), 0);
  std::uint32_t next = 1;
  for (VarId v : inputs) {
    auto it = input_index.find(v);
    if (it != input_index.end()) file_var[it->second] = next;
    ++next;
  }
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n) {
    if (!used[n]) continue;
    if (aig.info(n).is_input) {
      if (file_var[n] == 0) throw std::invalid_argument("AIG output depends on an unlisted input");
      continue;
    }
    file_var[n] = next++;
  }
  auto lit = [&](Aig::Lit l) { return 2 * file_var[Aig::index(l)] + (l & 1u); };

  std::ostringstream out;
  const std::size_t n_and = next - 1 - inputs.size();
  out << "aag " << next - 1 << ' ' << inputs.size() << " 0 " << outputs.size() << ' ' << n_and << '\n';
  for (std::size_t k = 0; k < inputs.size(); ++k) out << 2 * (k + 1) << '\n';
  for (Aig::Lit o : outputs) out << lit(o) << '\n';
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n) {
    if (!used[n] || aig.info(n).is_input) continue;
    std::uint32_t a = lit(aig.info(n).fanin0), b = lit(aig.info(n).fanin1);
    if (a < b) std::swap(a, b);
    out << 2 * file_var[n] << ' ' << a << ' ' << b << '\n';
  }
  for (std::size_t k = 0; k < inputs.size(); ++k)
    if (auto it = input_names.find(inputs[k]); it != input_names.end()) out << 'i' << k << ' ' << it->second << '\n';
  for (std::size_t k = 0; k < output_names.size(); ++k)
    if (!output_names[k].empty()) out << 'o' << k << ' ' << output_names[k] << '\n';
  return out.str();
}

std::string write_spec_aiger(const Spec& spec) {
  Aig aig;
  std::vector<VarId> order(spec.outputs);
  order.insert(order.end(), spec.inputs.begin(), spec.inputs.end());
  std::map<VarId, Aig::Lit> leaves;
  for (VarId v : order) leaves[v] = aig.input(v);
  const Aig::Lit root = add_circuit(aig, spec.circuit, leaves);
  std::map<VarId, std::string> names;
  for (VarId v : order) names[v] = spec.name_of(v);
  const std::string out_name = "F";
  return write_aiger(aig, order, std::span(&root, 1), names, std::span(&out_name, 1));
}

SkolemFormat parse_skolem_format(std::string_view name) {
  if (name == "aiger" || name == "aag") return SkolemFormat::Aiger;
  if (name == "verilog" || name == "v") return SkolemFormat::Verilog;
  throw ParseError(Kind::UnsupportedFormat, "unsupported output format '" + std::string(name) + "'");
}

namespace {

std::string verilog_identifier(const std::string& name, std::set<std::string>& taken) {
  std::string id;
  for (char c : name) id += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (id.empty() || std::isdigit(static_cast<unsigned char>(id[0]))) id = "v_" + id;
  std::string unique = id;
  for (int k = 1; taken.contains(unique); ++k) unique = id + "_" + std::to_string(k);
  taken.insert(unique);
  return unique;
}

std::string write_verilog(const Spec& spec, const Aig& aig, std::span<const Aig::Lit> roots) {
  std::set<std::string> taken{"skolem"};
  std::map<VarId, std::string> ident;
  for (VarId y : spec.inputs) ident[y] = verilog_identifier(spec.name_of(y), taken);
  std::vector<std::string> out_ident;
  for (VarId x : spec.outputs) out_ident.push_back(verilog_identifier(spec.name_of(x), taken));

  std::vector<char> used(aig.num_nodes(), 0);
  std::vector<std::uint32_t> stack;
  for (Aig::Lit r : roots) stack.push_back(Aig::index(r));
  while (!stack.empty()) {
    const std::uint32_t n = stack.back();
    stack.pop_back();
    if (n == 0 || used[n]) continue;
    used[n] = 1;
    if (aig.info(n).is_input) continue;
    stack.push_back(Aig::index(aig.info(n).fanin0));
    stack.push_back(Aig::index(aig.info(n).fanin1));
  }
  std::vector<std::string> wire(aig.num_nodes());
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n) {
    if (!used[n]) continue;
    wire[n] = aig.info(n).is_input ? ident.at(aig.info(n).var) : verilog_identifier("n" + std::to_string(n), taken);
  }
  auto ref = [&](Aig::Lit l) -> std::string {
    if (Aig::index(l) == 0) return l == Aig::kTrue ? "1'b1" : "1'b0";
    return (Aig::complemented(l) ? "~" : "") + wire[Aig::index(l)];
  };

  std::ostringstream out;
  out << "module skolem(";
  bool first = true;
  for (VarId y : spec.inputs) out << (first ? "" : ", ") << ident[y], first = false;
  for (const auto& o : out_ident) out << (first ? "" : ", ") << o, first = false;
  out << ");\n";
  for (VarId y : spec.inputs) out << "  input " << ident[y] << ";\n";
  for (const auto& o : out_ident) out << "  output " << o << ";\n";
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n)
    if (used[n] && !aig.info(n).is_input) out << "  wire " << wire[n] << ";\n";
  for (std::uint32_t n = 1; n < aig.num_nodes(); ++n)
    if (used[n] && !aig.info(n).is_input)
      out << "  assign " << wire[n] << " = " << ref(aig.info(n).fanin0) << " & " << ref(aig.info(n).fanin1)
          << ";\n";
  for (std::size_t k = 0; k < roots.size(); ++k) out << "  assign " << out_ident[k] << " = " << ref(roots[k]) << ";\n";
  out << "endmodule\n";
  return out.str();
}

}  // namespace

std::string write_skolem(const Spec& spec, const std::map<VarId, Circuit>& functions, SkolemFormat format) {
  Aig aig;
  std::map<VarId, Aig::Lit> leaves;
  for (VarId y : spec.inputs) leaves[y] = aig.input(y);
  std::vector<Aig::Lit> roots;
  for (VarId x : spec.outputs) {
    auto it = functions.find(x);
    if (it == functions.end()) throw std::invalid_argument("no function for output " + spec.name_of(x));
    for (VarId v : it->second.support())
      if (!spec.is_input(v)) throw std::invalid_argument("function for " + spec.name_of(x) + " reads a non-input");
    roots.push_back(add_circuit(aig, it->second, leaves));
  }
  if (format == SkolemFormat::Verilog) return write_verilog(spec, aig, roots);
  std::map<VarId, std::string> names;
  for (VarId y : spec.inputs) names[y] = spec.name_of(y);
  std::vector<std::string> out_names;
  for (VarId x : spec.outputs) out_names.push_back(spec.name_of(x));
  return write_aiger(aig, spec.inputs, roots, names, out_names);
}

std::map<VarId, Circuit> read_skolem_aiger(std::string_view text, const Spec& spec) {
  const AigerModel m = read_aiger(text);
  std::map<std::string, VarId> by_name;
  for (VarId v : spec.outputs) by_name[spec.name_of(v)] = v;
  for (VarId v : spec.inputs) by_name[spec.name_of(v)] = v;

  // Re-key file inputs to spec input ids.
  Aig aig;
  std::map<VarId, Aig::Lit> leaves;
  for (VarId fv : m.inputs) {
    auto n = m.input_names.find(fv);
    if (n == m.input_names.end())
      throw ParseError(Kind::NoSymbolForPartition, "Skolem file input " + std::to_string(fv) + " has no symbol");
    auto it = by_name.find(n->second);
    if (it == by_name.end() || !spec.is_input(it->second))
      throw ParseError(Kind::UnknownSymbol, "Skolem file input '" + n->second + "' is not a spec input");
    leaves[fv] = aig.input(it->second);
  }
  std::map<VarId, Circuit> out;
  for (std::size_t k = 0; k < m.outputs.size(); ++k) {
    auto it = by_name.find(m.output_names[k]);
    if (it == by_name.end() || !spec.is_output(it->second))
      throw ParseError(Kind::UnknownSymbol, "Skolem file output '" + m.output_names[k] + "' is not a spec output");
    // Copy the output cone into the re-keyed AIG.
    const Circuit in_file = to_nnf(m.aig, m.outputs[k]);
    out[it->second] = to_nnf(aig, add_circuit(aig, in_file, leaves));
  }
  for (VarId x : spec.outputs)
    if (!out.contains(x)) throw ParseError(Kind::OutputCount, "Skolem file lacks output " + spec.name_of(x));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(Kind::Syntax, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Spec load_spec(const std::filesystem::path& path, const OutputSelector& is_output) {
  const std::string ext = path.extension().string();
  const std::string text = read_file(path);
  if (ext == ".aag") return parse_aiger(text, is_output);
  if (ext == ".qdimacs" || ext == ".qdm" || ext == ".cnf") return parse_qdimacs(text);
  if (ext == ".aig") throw ParseError(Kind::UnsupportedFormat, "binary AIGER is not supported; use .aag");
  throw ParseError(Kind::UnsupportedFormat, "unknown spec file extension '" + ext + "'");
}

}  // namespace skolem
