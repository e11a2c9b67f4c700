#include "lamgraph/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lamgraph/builders.hpp"
#include "lamgraph/conjugacy.hpp"
#include "lamgraph/fischer.hpp"
#include "lamgraph/invariants.hpp"
#include "lamgraph/io.hpp"
#include "lamgraph/synchronization.hpp"

namespace lamgraph {

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Yes: return kExitYes;
    case Verdict::No: return kExitNo;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitInternal;
}

std::string emit_json(nlohmann::json j, const char* kind) {
  j["schema"] = "lamgraph/1";
  j["kind"] = kind;
  return j.dump(2) + "\n";
}

// Shared option state; exactly one leaf command runs per invocation.
struct Args {
  std::string spec, graph, lgs, matrix, ck, data, left, right, beta, out;
  std::string format;  // per-command default, resolved by fmt()
  std::string kind;
  int depth = 0;
  int level = 0;
  int word_bound = 0;
  long n = 1;
  bool condition_i = false;
};

std::string fmt(const Args& a, const char* def) { return a.format.empty() ? def : a.format; }

void deliver(const Args& a, const std::string& text) {
  if (a.out.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(a.out, text);
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "verdict: " << to_string(r.verdict) << "\n";
  out << "certified depth: " << r.certified_depth << "\n";
  out << "exact: " << (r.exact ? "yes" : "no") << "\n";
  if (!r.detail.empty()) out << "detail: " << r.detail << "\n";
  for (const std::string& w : r.witness) out << "witness: " << w << "\n";
  return out.str();
}

int deliver_report(const Args& a, const Report& r) {
  deliver(a, fmt(a, "json") == "json" ? report_to_json(r) : report_text(r));
  return verdict_exit(r.verdict);
}

std::string format_entropy(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(12) << v;
  return out.str();
}

std::string lgs_output(const LambdaGraphTruncation& lgs, const std::string& format) {
  return format == "dot" ? lgs_to_dot(lgs) : lgs_to_json(lgs);
}

std::string graph_output(const LabeledGraph& g, const std::string& format) {
  return format == "dot" ? graph_to_dot(g) : graph_to_json(g);
}

SubshiftSpec load_spec(const std::string& path) { return subshift_from_json(read_text_file(path)); }
LabeledGraph load_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }
LambdaGraphTruncation load_lgs(const std::string& path) { return lgs_from_json(read_text_file(path)); }

// ---- leaf commands ------------------------------------------------------

int run_subshift_info(const Args& a) {
  const SubshiftSpec s = load_spec(a.spec);
  const int depth = a.depth > 0 ? a.depth : 6;
  std::vector<std::size_t> counts;
  for (int l = 1; l <= depth; ++l) counts.push_back(s.admissible_words(l).size());
  const Report irr = s.is_irreducible(depth);

  if (fmt(a, "text") == "json") {
    nlohmann::json j;
    j["backend"] = s.backend_name();
    j["alphabet"] = s.alphabet().names();
    j["word_counts"] = counts;
    j["irreducible"] = {{"verdict", to_string(irr.verdict)}, {"certified_depth", irr.certified_depth}};
    deliver(a, emit_json(std::move(j), "subshift-info"));
    return kExitYes;
  }
  std::ostringstream out;
  out << "backend: " << s.backend_name() << "\n";
  out << "alphabet:";
  for (const std::string& n : s.alphabet().names()) out << " " << n;
  out << "\nword counts (l = 1.." << depth << "):";
  for (std::size_t c : counts) out << " " << c;
  out << "\nirreducible: " << to_string(irr.verdict) << " (depth " << irr.certified_depth << ")\n";
  deliver(a, out.str());
  return kExitYes;
}

int run_subshift_words(const Args& a) {
  const SubshiftSpec s = load_spec(a.spec);
  const std::vector<Word> words = s.admissible_words(a.depth);
  if (fmt(a, "text") == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Word& w : words) {
      nlohmann::json jw = nlohmann::json::array();
      for (Symbol x : w) jw.push_back(s.alphabet().name(x));
      arr.push_back(std::move(jw));
    }
    nlohmann::json j;
    j["depth"] = a.depth;
    j["words"] = std::move(arr);
    deliver(a, emit_json(std::move(j), "words"));
    return kExitYes;
  }
  std::ostringstream out;
  for (const Word& w : words) out << s.alphabet().word_str(w) << "\n";
  deliver(a, out.str());
  return kExitYes;
}

int run_subshift_entropy(const Args& a) {
  const SubshiftSpec s = load_spec(a.spec);
  const EntropyResult e = entropy(s);
  if (fmt(a, "text") == "json") {
    nlohmann::json j;
    j["value"] = e.value;
    j["error"] = e.error;
    j["method"] = e.method;
    deliver(a, emit_json(std::move(j), "entropy"));
    return kExitYes;
  }
  deliver(a, "entropy = " + format_entropy(e.value) + " (" + e.method + ")\n");
  return kExitYes;
}

int run_min(const Args& a) {
  const SubshiftSpec s = load_spec(a.spec);
  SyncSearchParams params;
  params.word_length_bound = a.word_bound;
  deliver(a, lgs_output(build_min_lgs(s, a.level, params), fmt(a, "json")));
  return kExitYes;
}

int run_fischer(const Args& a) {
  const SubshiftSpec s = a.graph.empty() ? load_spec(a.spec)
                                         : SubshiftSpec::sofic_graph(load_graph(a.graph));
  deliver(a, graph_output(fischer_cover(s), fmt(a, "json")));
  return kExitYes;
}

int run_ck_matrix(const Args& a) {
  const CKMatrix m = ck_matrix(load_graph(a.graph));
  if (fmt(a, "text") == "text") {
    std::ostringstream out;
    for (const auto& row : m.entries) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
      out << "\n";
    }
    deliver(a, out.str());
  } else {
    deliver(a, ck_matrix_to_json(m));
  }
  return kExitYes;
}

int run_kgroups(const Args& a) {
  const KGroupResult k = a.matrix.empty()
                             ? ck_kgroups(ck_matrix_from_json(read_text_file(a.ck)))
                             : kgroups_of_matrix(matrix_from_json(read_text_file(a.matrix)));
  if (fmt(a, "text") == "text")
    deliver(a, "K0 = " + k.k0_str() + ", K1 = " + k.k1_str() + "\n");
  else
    deliver(a, kgroups_to_json(k));
  return kExitYes;
}

int run_beta_expand(const Args& a) {
  const BetaNumber beta = parse_beta(a.beta);
  const int depth = a.depth > 0 ? a.depth : 16;
  const ExpansionOfOne d1 = expansion_of_one(beta, depth);
  const Digits zeta = zeta_beta(beta, depth);
  auto digits_str = [](const Digits& d) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.size(); ++i) out << (i ? " " : "") << d[i];
    return out.str();
  };
  if (fmt(a, "text") == "json") {
    nlohmann::json j;
    j["beta"] = beta.display;
    j["d1"] = d1.digits;
    j["d1_terminates"] = d1.terminates;
    if (d1.terminates) j["d1_length"] = d1.m;
    j["zeta"] = zeta;
    deliver(a, emit_json(std::move(j), "beta-expansion"));
    return kExitYes;
  }
  std::ostringstream out;
  out << "d(1, beta): " << digits_str(d1.digits);
  if (d1.terminates)
    out << " (terminates, m = " << d1.m << ")\n";
  else
    out << " (no termination within " << depth << " digits)\n";
  out << "zeta(beta): " << digits_str(zeta) << "\n";
  deliver(a, out.str());
  return kExitYes;
}

int run_beta_classify(const Args& a) {
  const BetaNumber beta = parse_beta(a.beta);
  const int depth = a.depth > 0 ? a.depth : 24;
  const BetaClassification c = classify_beta(beta, depth);
  if (fmt(a, "text") == "json") {
    nlohmann::json j;
    j["beta"] = beta.display;
    j["class"] = to_string(c.cls);
    j["depth"] = c.depth;
    j["witness_k"] = c.witness_k;
    j["witness_l"] = c.witness_l;
    j["detail"] = c.detail;
    deliver(a, emit_json(std::move(j), "beta-class"));
  } else {
    std::string line;
    switch (c.cls) {
      case BetaClass::FullShift: line = "full shift (" + c.detail + ")"; break;
      case BetaClass::SFT: line = "shift of finite type (" + c.detail + ")"; break;
      case BetaClass::StrictlySofic: line = "strictly sofic (" + c.detail + ")"; break;
      case BetaClass::NonSoficProven: line = "non-sofic (proven: rational denominator growth)"; break;
      case BetaClass::NonSoficUpTo:
        line = "not sofic up to depth " + std::to_string(c.depth) + " (" + c.detail + ")";
        break;
    }
    deliver(a, line + "\n");
  }
  return c.cls == BetaClass::NonSoficUpTo ? kExitUnknown : kExitYes;
}

int run_beta_lgs(const Args& a) {
  deliver(a, lgs_output(beta_lgs(parse_beta(a.beta), a.level), fmt(a, "json")));
  return kExitYes;
}

int run_builder_markov_dyck(const Args& a) {
  deliver(a, lgs_output(markov_dyck_lgs(matrix_from_json(read_text_file(a.matrix)), a.level),
                        fmt(a, "json")));
  return kExitYes;
}

int run_conjugacy_check(const Args& a) {
  const SubshiftSpec left = load_spec(a.left);
  const SubshiftSpec right = load_spec(a.right);
  const ConjugacyJob job =
      conjugacy_job_from_json(read_text_file(a.data), left.alphabet(), right.alphabet());

  auto check_name = [](ConjugacyJob::Check c) {
    switch (c) {
      case ConjugacyJob::Check::OneSided: return "conj";
      case ConjugacyJob::Check::Eventual: return "eventual";
      case ConjugacyJob::Check::Coe: return "coe";
      case ConjugacyJob::Check::Substitution: return "substitution";
    }
    return "?";
  };
  auto want = [&](ConjugacyJob::Check c) {
    if (job.check != c)
      throw SchemaError("--kind " + a.kind + " does not match data check '" +
                        check_name(job.check) + "'");
  };
  Report r;
  if (a.kind == "conj") {
    want(ConjugacyJob::Check::OneSided);
    r = check_one_sided_conjugacy(left, right, job.fwd, job.bwd, a.depth);
  } else if (a.kind == "eventual") {
    want(ConjugacyJob::Check::Eventual);
    r = check_eventual_conjugacy(left, right, job.eventual, a.depth);
  } else if (a.kind == "substitution") {
    want(ConjugacyJob::Check::Substitution);
    r = check_substitution_morphism(left, right, job.substitution, a.depth);
  } else {
    want(ConjugacyJob::Check::Coe);
    r = check_coe(job.coe, left, right, a.depth);
  }
  return deliver_report(a, r);
}

int run_validate(const Args& a) {
  const LambdaGraphTruncation lgs = load_lgs(a.lgs);
  const ValidationReport v = validate(lgs);
  Report cond;
  if (a.condition_i) cond = check_condition_I(lgs, a.depth > 0 ? a.depth : lgs.depth());

  if (fmt(a, "text") == "json") {
    nlohmann::json j;
    j["left_resolving"] = v.left_resolving;
    j["predecessor_separated"] = v.predecessor_separated;
    j["local_property"] = v.local_property;
    j["essential"] = v.essential;
    j["failures"] = v.failures;
    if (a.condition_i)
      j["condition_i"] = {{"verdict", to_string(cond.verdict)},
                          {"certified_depth", cond.certified_depth},
                          {"detail", cond.detail}};
    deliver(a, emit_json(std::move(j), "validation"));
  } else {
    std::ostringstream out;
    auto flag = [&](const char* name, bool ok) { out << name << ": " << (ok ? "yes" : "no") << "\n"; };
    flag("left resolving", v.left_resolving);
    flag("predecessor separated", v.predecessor_separated);
    flag("local property", v.local_property);
    flag("essential", v.essential);
    for (const std::string& f : v.failures) out << "failure: " << f << "\n";
    if (a.condition_i)
      out << "condition (I): " << to_string(cond.verdict) << " (depth " << cond.certified_depth
          << ")\n";
    deliver(a, out.str());
  }
  if (!v.ok()) return kExitNo;
  return a.condition_i ? verdict_exit(cond.verdict) : kExitYes;
}

int run_export(const Args& a) {
  const int sources = (a.spec.empty() ? 0 : 1) + (a.graph.empty() ? 0 : 1) + (a.lgs.empty() ? 0 : 1);
  if (sources != 1)
    throw SchemaError("export needs exactly one of --spec, --graph, --lgs");
  if (!a.graph.empty()) {
    deliver(a, graph_output(load_graph(a.graph), fmt(a, "json")));
  } else if (!a.lgs.empty()) {
    deliver(a, lgs_output(load_lgs(a.lgs), fmt(a, "json")));
  } else {
    const SubshiftSpec s = load_spec(a.spec);
    if (fmt(a, "json") == "dot") {
      if (!s.graph()) throw SchemaError("dot export needs a graph-backed subshift");
      deliver(a, graph_to_dot(*s.graph()));
    } else {
      deliver(a, subshift_to_json(s));
    }
  }
  return kExitYes;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  Args a;
  int rc = kExitYes;

  CLI::App app{"lamgraph: lambda-graph systems, subshift languages, and their invariants"};
  app.require_subcommand(1);

  const auto json_dot = CLI::IsMember({"json", "dot"});
  const auto json_text = CLI::IsMember({"json", "text"});
  const auto text_json = CLI::IsMember({"text", "json"});

  // subshift
  CLI::App* subshift = app.add_subcommand("subshift", "inspect a subshift language");
  subshift->require_subcommand(1);
  CLI::App* sub_info = subshift->add_subcommand("info", "backend, word counts, irreducibility");
  sub_info->add_option("--spec", a.spec, "subshift JSON")->required();
  sub_info->add_option("--depth", a.depth, "inspection depth (default 6)");
  sub_info->add_option("--format", a.format)->check(text_json);
  sub_info->add_option("--out", a.out, "write to file instead of stdout");
  sub_info->callback([&] { rc = run_subshift_info(a); });

  CLI::App* sub_words = subshift->add_subcommand("words", "list admissible words of a length");
  sub_words->add_option("--spec", a.spec, "subshift JSON")->required();
  sub_words->add_option("--depth", a.depth, "word length")->required();
  sub_words->add_option("--format", a.format)->check(text_json);
  sub_words->add_option("--out", a.out);
  sub_words->callback([&] { rc = run_subshift_words(a); });

  CLI::App* sub_entropy = subshift->add_subcommand("entropy", "topological entropy");
  sub_entropy->add_option("--spec", a.spec, "subshift JSON")->required();
  sub_entropy->add_option("--format", a.format)->check(text_json);
  sub_entropy->add_option("--out", a.out);
  sub_entropy->callback([&] { rc = run_subshift_entropy(a); });

  // min
  CLI::App* min = app.add_subcommand("min", "minimal lambda-graph truncation of a subshift");
  min->add_option("--spec", a.spec, "subshift JSON")->required();
  min->add_option("--level", a.level, "truncation depth")->required();
  min->add_option("--word-bound", a.word_bound, "synchronizing-word search bound");
  min->add_option("--format", a.format, "json|dot")->check(json_dot);
  min->add_option("--out", a.out);
  min->callback([&] { rc = run_min(a); });

  // fischer
  CLI::App* fischer = app.add_subcommand("fischer", "left Fischer cover of an irreducible sofic shift");
  fischer->add_option("--graph", a.graph, "labeled graph JSON");
  fischer->add_option("--spec", a.spec, "subshift JSON");
  fischer->add_option("--format", a.format, "json|dot")->check(json_dot);
  fischer->add_option("--out", a.out);
  fischer->callback([&] {
    if (a.graph.empty() == a.spec.empty())
      throw SchemaError("fischer needs exactly one of --graph, --spec");
    rc = run_fischer(a);
  });

  // ck-matrix
  CLI::App* ckm = app.add_subcommand("ck-matrix", "symbol-vertex transition matrix of a labeled graph");
  ckm->add_option("--graph", a.graph, "labeled graph JSON")->required();
  ckm->add_option("--format", a.format, "text|json")->check(json_text);
  ckm->add_option("--out", a.out);
  ckm->callback([&] { rc = run_ck_matrix(a); });

  // kgroups
  CLI::App* kg = app.add_subcommand("kgroups", "K-groups of id - M^T via Smith normal form");
  kg->add_option("--matrix", a.matrix, "matrix JSON");
  kg->add_option("--ck", a.ck, "ck-matrix JSON");
  kg->add_option("--format", a.format, "text|json")->check(json_text);
  kg->add_option("--out", a.out);
  kg->callback([&] {
    if (a.matrix.empty() == a.ck.empty())
      throw SchemaError("kgroups needs exactly one of --matrix, --ck");
    rc = run_kgroups(a);
  });

  // beta
  CLI::App* beta = app.add_subcommand("beta", "beta-shift expansions, classification, builder");
  beta->require_subcommand(1);
  CLI::App* beta_expand = beta->add_subcommand("expand", "expansion of 1 and quasi-greedy digits");
  beta_expand->add_option("--beta", a.beta, "beta value, e.g. 2, 3/2, golden")->required();
  beta_expand->add_option("--depth", a.depth, "digit count (default 16)");
  beta_expand->add_option("--format", a.format)->check(text_json);
  beta_expand->add_option("--out", a.out);
  beta_expand->callback([&] { rc = run_beta_expand(a); });

  CLI::App* beta_classify = beta->add_subcommand("classify", "full shift / SFT / sofic / non-sofic");
  beta_classify->add_option("--beta", a.beta)->required();
  beta_classify->add_option("--depth", a.depth, "b-values inspected (default 24)");
  beta_classify->add_option("--format", a.format)->check(text_json);
  beta_classify->add_option("--out", a.out);
  beta_classify->callback([&] { rc = run_beta_classify(a); });

  CLI::App* beta_lgs_cmd = beta->add_subcommand("lgs", "canonical beta-shift truncation");
  beta_lgs_cmd->add_option("--beta", a.beta)->required();
  beta_lgs_cmd->add_option("--level", a.level, "truncation depth")->required();
  beta_lgs_cmd->add_option("--format", a.format, "json|dot")->check(json_dot);
  beta_lgs_cmd->add_option("--out", a.out);
  beta_lgs_cmd->callback([&] { rc = run_beta_lgs(a); });

  // builders
  CLI::App* builders = app.add_subcommand("builders", "hand-verified lambda-graph truncations");
  builders->require_subcommand(1);
  CLI::App* b_dyck = builders->add_subcommand("dyck", "Dyck shift D_n");
  b_dyck->add_option("--n", a.n, "bracket count")->required();
  b_dyck->add_option("--level", a.level)->required();
  b_dyck->add_option("--format", a.format, "json|dot")->check(json_dot);
  b_dyck->add_option("--out", a.out);
  b_dyck->callback([&] { rc = (deliver(a, lgs_output(dyck_lgs(static_cast<int>(a.n), a.level), fmt(a, "json"))), kExitYes); });

  CLI::App* b_md = builders->add_subcommand("markov-dyck", "Markov-Dyck shift of a 0/1 matrix");
  b_md->add_option("--matrix", a.matrix, "matrix JSON")->required();
  b_md->add_option("--level", a.level)->required();
  b_md->add_option("--format", a.format, "json|dot")->check(json_dot);
  b_md->add_option("--out", a.out);
  b_md->callback([&] { rc = run_builder_markov_dyck(a); });

  CLI::App* b_motzkin = builders->add_subcommand("motzkin", "Motzkin shift M_n");
  b_motzkin->add_option("--n", a.n, "bracket count")->required();
  b_motzkin->add_option("--level", a.level)->required();
  b_motzkin->add_option("--format", a.format, "json|dot")->check(json_dot);
  b_motzkin->add_option("--out", a.out);
  b_motzkin->callback([&] { rc = (deliver(a, lgs_output(motzkin_lgs(static_cast<int>(a.n), a.level), fmt(a, "json"))), kExitYes); });

  CLI::App* b_beta = builders->add_subcommand("beta", "beta-shift truncation");
  b_beta->add_option("--beta", a.beta)->required();
  b_beta->add_option("--level", a.level)->required();
  b_beta->add_option("--format", a.format, "json|dot")->check(json_dot);
  b_beta->add_option("--out", a.out);
  b_beta->callback([&] { rc = run_beta_lgs(a); });

  // conjugacy
  CLI::App* conjugacy = app.add_subcommand("conjugacy", "finite-depth conjugacy checks");
  conjugacy->require_subcommand(1);
  CLI::App* check = conjugacy->add_subcommand("check", "run a supplied candidate through a checker");
  check->add_option("--kind", a.kind, "conj|eventual|coe|substitution")
      ->required()
      ->check(CLI::IsMember({"conj", "eventual", "coe", "substitution"}));
  check->add_option("--left", a.left, "left subshift JSON")->required();
  check->add_option("--right", a.right, "right subshift JSON")->required();
  check->add_option("--data", a.data, "conjugacy-data JSON")->required();
  check->add_option("--depth", a.depth, "verification depth")->required();
  check->add_option("--format", a.format, "json|text")->check(json_text);
  check->add_option("--out", a.out);
  check->callback([&] { rc = run_conjugacy_check(a); });

  // validate
  CLI::App* val = app.add_subcommand("validate", "structural axioms of a lambda-graph truncation");
  val->add_option("--lgs", a.lgs, "lgs JSON")->required();
  val->add_flag("--condition-i", a.condition_i, "also check the aperiodicity condition (I)");
  val->add_option("--depth", a.depth, "condition (I) depth (default: truncation depth)");
  val->add_option("--format", a.format)->check(text_json);
  val->add_option("--out", a.out);
  val->callback([&] { rc = run_validate(a); });

  // export
  CLI::App* exp = app.add_subcommand("export", "re-emit an artifact as json or dot");
  exp->add_option("--spec", a.spec, "subshift JSON");
  exp->add_option("--graph", a.graph, "labeled graph JSON");
  exp->add_option("--lgs", a.lgs, "lgs JSON");
  exp->add_option("--format", a.format, "json|dot")->check(json_dot);
  exp->add_option("--out", a.out);
  exp->callback([&] { rc = run_export(a); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "lamgraph: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lamgraph: internal error: %s\n", e.what());
    return kExitInternal;
  }
  return rc;
}

}  // namespace lamgraph
