#include "ksobs/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ksobs/analysis.hpp"
#include "ksobs/certificate.hpp"
#include "ksobs/colouring.hpp"
#include "ksobs/datasets.hpp"
#include "ksobs/loops.hpp"

namespace ksobs::cli {

namespace {

struct Common {
  std::string dataset;
  std::string contexts;  // empty: the command's default
  bool complete = true;
  std::string mode = "auto";
  std::vector<std::string> signatures;
  double phi = 0.3;
  std::optional<double> alpha;
  std::optional<double> beta;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("dataset", c.dataset, "built-in name or ray-set JSON file")->required();
  cmd->add_option("--contexts", c.contexts, "declared or discovered contexts")
      ->check(CLI::IsMember({"declared", "discovered"}));
  cmd->add_flag("--complete,!--no-complete", c.complete, "complete (n-1)-cliques with their missing ray");
  cmd->add_option("--mode", c.mode, "scalar mode")->check(CLI::IsMember({"auto", "exact", "approx"}));
  cmd->add_option("--signatures", c.signatures, "degenerate signatures such as 2-1 or 2-2");
  cmd->add_option("--phi", c.phi, "cg10: phi in radians");
  cmd->add_option("--alpha", c.alpha, "cg10: alpha (with --beta)");
  cmd->add_option("--beta", c.beta, "cg10: beta (with --alpha)");
}

RaySet resolve(const Common& c, std::ostream& err) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), c.dataset) != names.end()) {
    return builtin(c.dataset, Cg10Params{c.phi, c.alpha, c.beta});
  }
  if (std::filesystem::is_regular_file(c.dataset)) {
    auto loaded = load(c.dataset);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    return std::move(loaded.set);
  }
  throw Error(ErrorCode::UnknownDataset, "'" + c.dataset + "' is neither a built-in ray set nor a file");
}

AnalysisOptions options_for(const Common& c, const RaySet& set, bool prefer_declared) {
  AnalysisOptions o;
  if (c.contexts == "declared") {
    o.source = ContextSource::Declared;
  } else if (c.contexts == "discovered") {
    o.source = ContextSource::Discovered;
  } else {
    o.source = prefer_declared && !set.contexts.empty() ? ContextSource::Declared : ContextSource::Discovered;
  }
  o.complete = c.complete;
  o.mode = c.mode == "exact" ? ScalarMode::Exact : c.mode == "approx" ? ScalarMode::Approx : ScalarMode::Auto;
  if (!c.signatures.empty()) {
    std::vector<Signature> sigs;
    for (const auto& s : c.signatures) sigs.push_back(parse_signature(s));
    o.signatures = std::move(sigs);
  }
  return o;
}

const char* source_name(const RaySet& set, const AnalysisOptions& o) {
  if (set.is_graph() || o.source == ContextSource::Declared) return "declared";
  return o.complete ? "discovered, completed" : "discovered";
}

void print_summary(std::ostream& out, const RaySet& set, const AnalysisOptions& o, const Analysis& a) {
  out << "dataset: " << set.name << " (" << set.labels.size() << " rays, dim " << set.dim << ", " << a.scalars
      << ")\n";
  out << "contexts: " << a.frame.contexts.size() << " (" << source_name(set, o) << ")\n";
  const auto aux = a.frame.auxiliary_labels();
  out << "auxiliary rays: " << aux.size();
  if (!aux.empty()) {
    out << " (";
    for (std::size_t i = 0; i < aux.size(); ++i) out << (i ? " " : "") << aux[i];
    out << ")";
  }
  out << "\n";
  const std::size_t m = a.poset.maximal_count();
  out << "algebras: " << m << " maximal, " << a.poset.algebras.size() - m << " degenerate, "
      << a.poset.edges.size() << " inclusions\n";
}

Json summary_json(const RaySet& set, const AnalysisOptions& o, const Analysis& a) {
  return {{"name", set.name},
          {"dim", set.dim},
          {"scalars", a.scalars},
          {"rays", set.labels.size()},
          {"contexts", a.frame.contexts.size()},
          {"context_source", source_name(set, o)},
          {"auxiliary", a.frame.auxiliary_labels()},
          {"maximal_algebras", a.poset.maximal_count()},
          {"degenerate_algebras", a.poset.algebras.size() - a.poset.maximal_count()}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::InvalidParams, "failed writing " + path);
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "ksobs";
  for (const auto& a : args) s += " " + a;
  return s;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --------------------------------------------------------------- check

int cmd_check(const Common& c, const std::string& out_path, const std::vector<std::string>& args,
              std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  const RaySet set = resolve(c, err);
  const auto opts = options_for(c, set, false);
  const Analysis a = analyze(set, opts);
  const auto result = search_global(a.poset);
  const bool sat = std::holds_alternative<Sat>(result);

  print_summary(out, set, opts, a);
  if (const auto* s = std::get_if<Sat>(&result)) {
    out << "search: " << s->nodes << " nodes, global element found\n";
  } else {
    const auto& u = std::get<Unsat>(result);
    out << "search: " << u.nodes << " nodes, exhaustive\n";
    for (const auto& r : u.roots) {
      out << "  " << a.poset.projectors[static_cast<std::size_t>(r.atom)].label << " = 1: ";
      if (r.refutation) {
        out << "refuted by propagation in " << r.refutation->steps.size() << " steps\n";
      } else {
        out << "exhausted after " << r.nodes << " nodes\n";
      }
    }
  }
  out << (sat ? "SAT" : "UNSAT") << "\n";

  if (!out_path.empty()) {
    const auto contexts = poset_context_list(a.poset);
    const std::string cert_path = out_path + ".cert.json";
    Json report = {{"command", join(args)},
                   {"dataset", summary_json(set, opts, a)},
                   {"verdict", sat ? "sat" : "unsat"},
                   {"certificate", std::filesystem::path(cert_path).filename().string()}};
    write_file(out_path, report.dump(2) + "\n");
    Json cert = search_json(result, contexts, a.poset);
    write_file(cert_path, cert.dump(2) + "\n");
  }
  err << "elapsed: " << std::fixed << std::setprecision(1) << clock.ms() << " ms\n";
  return sat ? kPositive : kNegative;
}

// ----------------------------------------------------------- propagate

std::pair<ProjectorId, bool> parse_assignment(const std::string& text, const WPoset& poset) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos || eq + 2 != text.size() || (text[eq + 1] != '0' && text[eq + 1] != '1')) {
    throw Error(ErrorCode::InvalidParams, "expected ray=0 or ray=1, got '" + text + "'");
  }
  const auto label = text.substr(0, eq);
  auto p = poset.find_projector(label);
  if (!p) throw Error(ErrorCode::UnknownProjector, "unknown ray '" + label + "'");
  return {*p, text[eq + 1] == '1'};
}

void print_trace(std::ostream& out, const PropagationTrace& trace, const std::vector<Context>& contexts,
                 const WPoset& poset) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    std::ostringstream line;
    line << std::setw(4) << i << "  " << std::left << std::setw(18) << to_string(s.rule) << " ";
    std::string where = "-";
    if (s.context >= 0) where = "[" + contexts[static_cast<std::size_t>(s.context)].label + "]";
    line << std::setw(16) << where << " V(" << poset.projectors[static_cast<std::size_t>(s.subject)].label
         << ")=" << (s.value ? 1 : 0);
    if (!s.premises.empty()) {
      line << "  <-";
      for (int p : s.premises) line << " " << p;
    }
    out << line.str() << "\n";
  }
}

void print_values(std::ostream& out, const char* heading, const PartialValuation& v, const WPoset& poset) {
  out << heading << ":";
  for (const auto& [p, value] : v.assigned()) {
    if (poset.projectors[static_cast<std::size_t>(p)].rank != 1) continue;
    out << " " << poset.projectors[static_cast<std::size_t>(p)].label << "=" << (value ? 1 : 0);
  }
  out << "\n";
}

Json certificate_doc(const RaySet& set, const std::vector<Context>& contexts, const WPoset& poset,
                     const PropagationTrace& trace) {
  Json doc = {{"dataset", set.name}, {"contexts", contexts_json(contexts, poset)}};
  const Json steps = trace_json(trace, poset);
  for (const auto& [k, v] : steps.items()) doc[k] = v;
  return doc;
}

int cmd_propagate(const Common& c, const std::vector<std::string>& assigns, const std::string& predict,
                  const std::string& replay_path, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  const RaySet set = resolve(c, err);
  const auto opts = options_for(c, set, false);
  const Analysis a = analyze(set, opts);
  const auto contexts = maximal_context_list(a.poset);
  const std::size_t n = a.poset.projectors.size();
  print_summary(out, set, opts, a);

  if (!replay_path.empty()) {
    std::ifstream f(replay_path, std::ios::binary);
    if (!f) throw ParseError(0, "cannot read " + replay_path);
    Json doc;
    try {
      doc = Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.byte, e.what());
    }
    const auto trace = trace_from_json(doc, contexts, a.poset);
    if (auto problem = replay(contexts, trace, n)) {
      out << "replay: " << *problem << "\nREPLAY-FAILED\n";
      return kNegative;
    }
    out << "replay: " << trace.steps.size() << " steps check, outcome "
        << (trace.outcome == Outcome::Contradiction ? "contradiction" : "fixpoint") << "\nREPLAY-OK\n";
    return kPositive;
  }

  std::vector<std::pair<ProjectorId, bool>> initial;
  for (const auto& s : assigns) initial.push_back(parse_assignment(s, a.poset));

  if (!predict.empty()) {
    const auto predicted = parse_assignment(predict, a.poset);
    const auto result = verify_dps(contexts, initial, predicted, n);
    out << "assume " << a.poset.projectors[static_cast<std::size_t>(predicted.first)].label << "="
        << (predicted.second ? 0 : 1) << ":\n";
    const PropagationTrace* trace = nullptr;
    int code = kPositive;
    if (const auto* v = std::get_if<Verified>(&result)) {
      trace = &v->trace;
      print_trace(out, v->trace, contexts, a.poset);
      if (v->search_nodes) out << "no colouring extends it (" << *v->search_nodes << " search nodes)\n";
      out << "VERIFIED\n";
    } else {
      const auto& nf = std::get<NotForced>(result);
      trace = &nf.trace;
      print_trace(out, nf.trace, contexts, a.poset);
      print_values(out, "witness", nf.witness, a.poset);
      out << "NOT-FORCED\n";
      code = kNegative;
    }
    if (!out_path.empty()) write_file(out_path, certificate_doc(set, contexts, a.poset, *trace).dump(2) + "\n");
    return code;
  }

  const auto prop = propagate(contexts, initial, n);
  print_trace(out, prop.trace, contexts, a.poset);
  if (!out_path.empty()) write_file(out_path, certificate_doc(set, contexts, a.poset, prop.trace).dump(2) + "\n");
  if (prop.trace.outcome == Outcome::Contradiction) {
    out << "CONTRADICTION\n";
    return kNegative;
  }
  print_values(out, "values", prop.valuation, a.poset);
  out << "FIXPOINT\n";
  return kPositive;
}

// ---------------------------------------------------------------- loops

std::string node_label(const WPoset& poset, const DegenerateNode& d) {
  std::string s;
  for (AlgebraId m : d.members) s += (s.empty() ? "" : " + ") + poset.algebra_label(m);
  return s;
}

std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') q += '\\';
    q += ch;
  }
  return q + "\"";
}

std::string dot_text(const std::string& name, const WPoset& poset, const InclusionGraph& g) {
  std::ostringstream s;
  s << "graph " << quoted(name) << " {\n";
  s << "  node [fontname=\"Helvetica\", fontsize=10];\n";
  for (AlgebraId m : g.maximals) {
    s << "  m" << m << " [shape=square, label=" << quoted(poset.algebra_label(m)) << "];\n";
  }
  for (const auto& d : g.degenerates) {
    s << "  d" << d.id() << " [shape=diamond, label=" << quoted(node_label(poset, d)) << "];\n";
  }
  for (const auto& d : g.degenerates) {
    for (AlgebraId p : d.parents) s << "  d" << d.id() << " -- m" << p << ";\n";
  }
  s << "}\n";
  return s.str();
}

int cmd_loops(const Common& c, std::size_t max_maximals, const std::string& dot_path, std::ostream& out,
              std::ostream& err) {
  if (max_maximals < 2) throw Error(ErrorCode::InvalidParams, "--max-maximals must be at least 2");
  const RaySet set = resolve(c, err);
  const auto opts = options_for(c, set, true);
  const Analysis a = analyze(set, opts);
  print_summary(out, set, opts, a);
  const auto g = reduce(a.poset);
  out << "reduced graph: " << g.maximals.size() << " maximal, " << g.degenerates.size() << " degenerate, "
      << g.edge_count() << " inclusions\n";

  const auto loops = enumerate_loops(g, max_maximals);
  out << "loops with at most " << max_maximals << " maximal algebras: " << loops.size() << "\n";
  std::map<std::size_t, std::size_t> by_size;
  for (const auto& l : loops) ++by_size[l.maximal_count()];
  for (const auto& [k, count] : by_size) {
    out << "  " << k << " maximal (" << 2 * k << " algebras): " << count << "\n";
  }
  const auto shortest = min_loop(g);
  out << "min loop: " << (shortest ? std::to_string(*shortest) + " algebras" : std::string("none")) << "\n";

  std::map<AlgebraId, const DegenerateNode*> nodes;
  for (const auto& d : g.degenerates) nodes[d.id()] = &d;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    out << "loop " << i + 1 << ":";
    for (std::size_t k = 0; k < loops[i].cycle.size(); ++k) {
      const AlgebraId id = loops[i].cycle[k];
      out << (k ? " - " : " ") << (k % 2 == 0 ? "<" + node_label(a.poset, *nodes.at(id)) + ">"
                                              : "[" + a.poset.algebra_label(id) + "]");
    }
    out << "\n";
  }
  if (!dot_path.empty()) write_file(dot_path, dot_text(set.name, a.poset, g));
  return kPositive;
}

int cmd_export_dot(const Common& c, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const RaySet set = resolve(c, err);
  const auto opts = options_for(c, set, true);
  const Analysis a = analyze(set, opts);
  const auto text = dot_text(set.name, a.poset, inclusion_graph(a.poset));
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return kPositive;
}

int cmd_lift(const Common& c, int dim, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const RaySet set = resolve(c, err);
  const RaySet lifted = lift(set, dim);
  if (out_path.empty()) {
    out << to_json_text(lifted);
  } else {
    save(lifted, out_path);
    out << "lifted " << set.name << " to dimension " << dim << ": " << lifted.labels.size() << " rays -> "
        << out_path << "\n";
  }
  return kPositive;
}

int cmd_dump(const Common& c, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const RaySet set = resolve(c, err);
  if (out_path.empty()) {
    out << to_json_text(set);
  } else {
    save(set, out_path);
  }
  return kPositive;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kochen-Specker colouring, propagation and loop analysis over ray sets", "ksobs"};
  app.require_subcommand(1);

  Common common;
  std::string out_path;

  auto* check = app.add_subcommand("check", "search for a global valuation; prints SAT or UNSAT");
  add_common(check, common);
  check->add_option("--out", out_path, "write a JSON report here and its certificate to <out>.cert.json");

  std::vector<std::string> assigns;
  std::string predict;
  std::string replay_path;
  auto* prop = app.add_subcommand("propagate", "propagate ray values through the maximal contexts");
  add_common(prop, common);
  prop->add_option("--assign", assigns, "ray=bit, repeatable");
  prop->add_option("--predict", predict, "ray=bit to verify as a definite prediction");
  prop->add_option("--replay", replay_path, "check a certificate written by --out");
  prop->add_option("--out", out_path, "write the trace certificate here");

  std::size_t max_maximals = 6;
  std::string dot_path;
  auto* loops = app.add_subcommand("loops", "loops of the reduced inclusion graph");
  add_common(loops, common);
  loops->add_option("--max-maximals", max_maximals, "largest loop to list, in maximal algebras");
  loops->add_option("--dot", dot_path, "write the reduced graph as DOT");

  auto* dot = app.add_subcommand("export-dot", "inclusion diagram as DOT");
  add_common(dot, common);
  dot->add_option("--out", out_path, "output file (default stdout)");

  int lift_dim = 0;
  auto* lift_cmd = app.add_subcommand("lift", "embed the ray set in a higher dimension");
  add_common(lift_cmd, common);
  lift_cmd->add_option("--dim", lift_dim, "target dimension")->required();
  lift_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* dump = app.add_subcommand("dump", "write a ray set as JSON");
  add_common(dump, common);
  dump->add_option("--out", out_path, "output file (default stdout)");

  app.add_subcommand("datasets", "list the built-in ray sets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(common, out_path, args, out, err);
    if (prop->parsed()) return cmd_propagate(common, assigns, predict, replay_path, out_path, out, err);
    if (loops->parsed()) return cmd_loops(common, max_maximals, dot_path, out, err);
    if (dot->parsed()) return cmd_export_dot(common, out_path, out, err);
    if (lift_cmd->parsed()) return cmd_lift(common, lift_dim, out_path, out, err);
    if (dump->parsed()) return cmd_dump(common, out_path, out, err);
    for (const auto& name : builtin_names()) out << name << "\n";
    return kPositive;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace ksobs::cli
