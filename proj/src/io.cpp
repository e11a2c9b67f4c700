#include "lamgraph/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace lamgraph {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "lamgraph/1";

// ---- guarded field access -------------------------------------------------

const json& need(const json& o, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::string need_str(const json& o, const char* key) {
  const json& v = need(o, key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

long long need_int(const json& o, const char* key) {
  const json& v = need(o, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

bool need_bool(const json& o, const char* key) {
  const json& v = need(o, key);
  if (!v.is_boolean()) throw SchemaError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

const json& need_array(const json& o, const char* key) {
  const json& v = need(o, key);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<std::string> string_list(const json& a, const char* what) {
  std::vector<std::string> out;
  for (const json& v : a) {
    if (!v.is_string()) throw SchemaError(std::string(what) + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json parse_checked(const std::string& text, const char* kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top-level JSON value must be an object");
  if (need_str(j, "schema") != kSchema)
    throw SchemaError("unsupported schema '" + need_str(j, "schema") + "' (want lamgraph/1)");
  if (need_str(j, "kind") != kind)
    throw SchemaError("expected kind '" + std::string(kind) + "', found '" + need_str(j, "kind") + "'");
  return j;
}

std::string emit(json j, const char* kind) {
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j.dump(2) + "\n";
}

// ---- words and alphabets ----------------------------------------------------

json word_names(const Word& w, const Alphabet& a) {
  json out = json::array();
  for (Symbol s : w) out.push_back(a.name(s));
  return out;
}

Word word_of(const json& arr, const Alphabet& a, const char* what) {
  if (!arr.is_array()) throw SchemaError(std::string(what) + " must be an array of symbol names");
  return a.parse_word(string_list(arr, what));  // Alphabet::at rejects unknown names
}

Alphabet alphabet_of(const json& o) {
  return Alphabet(string_list(need_array(o, "alphabet"), "alphabet"));
}

// ---- labeled graphs ---------------------------------------------------------

json edge_list(const std::vector<LabeledEdge>& edges, const Alphabet& a) {
  json out = json::array();
  for (const LabeledEdge& e : edges)
    out.push_back(json{{"src", e.src}, {"dst", e.dst}, {"label", a.name(e.label)}});
  return out;
}

std::vector<LabeledEdge> edges_of(const json& arr, const Alphabet& a, int src_count,
                                  int dst_count) {
  std::vector<LabeledEdge> out;
  for (const json& e : arr) {
    if (!e.is_object()) throw SchemaError("edges must be objects");
    LabeledEdge le;
    le.src = static_cast<int>(need_int(e, "src"));
    le.dst = static_cast<int>(need_int(e, "dst"));
    le.label = a.at(need_str(e, "label"));
    if (le.src < 0 || le.src >= src_count || le.dst < 0 || le.dst >= dst_count)
      throw SchemaError("edge endpoint out of range");
    out.push_back(le);
  }
  return out;
}

json graph_obj(const LabeledGraph& g) {
  json j;
  j["alphabet"] = g.alphabet.names();
  j["vertices"] = g.vertex_names;
  j["edges"] = edge_list(g.edges, g.alphabet);
  return j;
}

LabeledGraph graph_of(const json& j) {
  LabeledGraph g;
  g.alphabet = alphabet_of(j);
  g.vertex_names = string_list(need_array(j, "vertices"), "vertices");
  g.edges = edges_of(need_array(j, "edges"), g.alphabet, g.vertex_count(), g.vertex_count());
  return g;
}

// ---- lambda-graph truncations -----------------------------------------------

json lgs_obj(const LambdaGraphTruncation& lgs) {
  json levels = json::array();
  for (std::size_t l = 0; l < lgs.vertex_names.size(); ++l) {
    json level;
    level["vertices"] = lgs.vertex_names[l];
    level["iota"] = l == 0 ? json::array() : json(lgs.iota[l - 1]);
    levels.push_back(std::move(level));
  }
  json edges = json::array();
  for (int l = 0; l < lgs.depth(); ++l) edges.push_back(edge_list(lgs.edges[l], lgs.alphabet));
  json j;
  j["alphabet"] = lgs.alphabet.names();
  j["levels"] = std::move(levels);
  j["edges"] = std::move(edges);
  if (!lgs.representatives.empty()) {
    json reps = json::array();
    for (const auto& level : lgs.representatives) {
      json per_level = json::array();
      for (const Word& w : level) per_level.push_back(word_names(w, lgs.alphabet));
      reps.push_back(std::move(per_level));
    }
    j["representatives"] = std::move(reps);
  }
  return j;
}

LambdaGraphTruncation lgs_of(const json& j) {
  LambdaGraphTruncation lgs;
  lgs.alphabet = alphabet_of(j);
  const json& levels = need_array(j, "levels");
  if (levels.empty()) throw SchemaError("levels must be nonempty");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const json& level = levels[l];
    if (!level.is_object()) throw SchemaError("levels must contain objects");
    lgs.vertex_names.push_back(string_list(need_array(level, "vertices"), "vertices"));
    const json& iota = need_array(level, "iota");
    if (l == 0) {
      if (!iota.empty()) throw SchemaError("level 0 cannot carry a projection");
      continue;
    }
    std::vector<int> proj;
    for (const json& v : iota) {
      if (!v.is_number_integer()) throw SchemaError("iota entries must be integers");
      proj.push_back(v.get<int>());
    }
    lgs.iota.push_back(std::move(proj));
  }
  const json& edges = need_array(j, "edges");
  if (edges.size() + 1 != levels.size())
    throw SchemaError("edge block count must be level count minus one");
  for (std::size_t l = 0; l < edges.size(); ++l) {
    if (!edges[l].is_array()) throw SchemaError("edge blocks must be arrays");
    lgs.edges.push_back(edges_of(edges[l], lgs.alphabet, lgs.level_size(static_cast<int>(l)),
                                 lgs.level_size(static_cast<int>(l) + 1)));
  }
  if (j.contains("representatives")) {
    const json& reps = j["representatives"];
    if (!reps.is_array()) throw SchemaError("representatives must be an array");
    for (const json& level : reps) {
      if (!level.is_array()) throw SchemaError("representatives must contain arrays");
      std::vector<Word> words;
      for (const json& w : level) words.push_back(word_of(w, lgs.alphabet, "representative"));
      lgs.representatives.push_back(std::move(words));
    }
  }
  lgs.check_well_formed();
  return lgs;
}

// ---- sliding-map tables -----------------------------------------------------

json blockmap_obj(const BlockMap& m, const Alphabet& src, const Alphabet& dst) {
  std::vector<std::pair<Word, Symbol>> rows(m.table.begin(), m.table.end());
  std::sort(rows.begin(), rows.end());
  json table = json::array();
  for (const auto& [from, to] : rows)
    table.push_back(json{{"from", word_names(from, src)}, {"to", dst.name(to)}});
  return json{{"window", m.window}, {"table", std::move(table)}};
}

BlockMap blockmap_of(const json& j, const Alphabet& src, const Alphabet& dst) {
  if (!j.is_object()) throw SchemaError("block map must be an object");
  BlockMap m;
  m.window = static_cast<int>(need_int(j, "window"));
  if (m.window < 1) throw SchemaError("block map window must be positive");
  for (const json& row : need_array(j, "table")) {
    if (!row.is_object()) throw SchemaError("block map rows must be objects");
    Word from = word_of(need(row, "from"), src, "block map key");
    if (static_cast<int>(from.size()) != m.window)
      throw SchemaError("block map key length must equal the window");
    if (!m.table.emplace(std::move(from), dst.at(need_str(row, "to"))).second)
      throw SchemaError("duplicate block map key");
  }
  return m;
}

json headmap_obj(const HeadMap& m, const Alphabet& src, const Alphabet& dst) {
  std::vector<std::pair<Word, Word>> rows(m.table.begin(), m.table.end());
  std::sort(rows.begin(), rows.end());
  json table = json::array();
  for (const auto& [from, to] : rows)
    table.push_back(json{{"from", word_names(from, src)}, {"to", word_names(to, dst)}});
  return json{{"window", m.window}, {"target_len", m.target_len}, {"table", std::move(table)}};
}

HeadMap headmap_of(const json& j, const Alphabet& src, const Alphabet& dst) {
  if (!j.is_object()) throw SchemaError("head map must be an object");
  HeadMap m;
  m.window = static_cast<int>(need_int(j, "window"));
  m.target_len = static_cast<int>(need_int(j, "target_len"));
  if (m.window < 1 || m.target_len < 0) throw SchemaError("head map shape out of range");
  for (const json& row : need_array(j, "table")) {
    if (!row.is_object()) throw SchemaError("head map rows must be objects");
    Word from = word_of(need(row, "from"), src, "head map key");
    Word to = word_of(need(row, "to"), dst, "head map value");
    if (static_cast<int>(from.size()) != m.window ||
        static_cast<int>(to.size()) != m.target_len)
      throw SchemaError("head map row lengths must match window and target_len");
    if (!m.table.emplace(std::move(from), std::move(to)).second)
      throw SchemaError("duplicate head map key");
  }
  return m;
}

json cocycle_obj(const CocycleMap& m, const Alphabet& labels) {
  std::vector<std::pair<Word, long>> rows(m.table.begin(), m.table.end());
  std::sort(rows.begin(), rows.end());
  json table = json::array();
  for (const auto& [from, value] : rows)
    table.push_back(json{{"from", word_names(from, labels)}, {"value", value}});
  return json{{"window", m.window}, {"table", std::move(table)}};
}

CocycleMap cocycle_of(const json& j, const Alphabet& labels) {
  if (!j.is_object()) throw SchemaError("cocycle must be an object");
  CocycleMap m;
  m.window = static_cast<int>(need_int(j, "window"));
  if (m.window < 0) throw SchemaError("cocycle window must be nonnegative");
  for (const json& row : need_array(j, "table")) {
    if (!row.is_object()) throw SchemaError("cocycle rows must be objects");
    Word from = word_of(need(row, "from"), labels, "cocycle key");
    if (static_cast<int>(from.size()) != m.window)
      throw SchemaError("cocycle key length must equal the window");
    if (!m.table.emplace(std::move(from), static_cast<long>(need_int(row, "value"))).second)
      throw SchemaError("duplicate cocycle key");
  }
  return m;
}

std::vector<int> int_list(const json& a, const char* what) {
  std::vector<int> out;
  for (const json& v : a) {
    if (!v.is_number_integer()) throw SchemaError(std::string(what) + " must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

// ---- DOT helpers --------------------------------------------------------------

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

// ---- labeled graphs -----------------------------------------------------------

std::string graph_to_json(const LabeledGraph& g) { return emit(graph_obj(g), "graph"); }

LabeledGraph graph_from_json(const std::string& text) {
  return graph_of(parse_checked(text, "graph"));
}

// ---- subshift specs -------------------------------------------------------------

std::string subshift_to_json(const SubshiftSpec& s) {
  json backend;
  const std::string name = s.backend_name();
  if (name == "forbidden") {
    backend["kind"] = "forbidden";
    json words = json::array();
    for (const Word& w : *s.forbidden_origin()) words.push_back(word_names(w, s.alphabet()));
    backend["forbidden"] = std::move(words);
  } else if (name == "sofic") {
    backend["kind"] = "sofic";
    const LabeledGraph& g = *s.graph();
    backend["vertices"] = g.vertex_names;
    backend["edges"] = edge_list(g.edges, g.alphabet);
  } else if (name == "dyck") {
    backend["kind"] = "dyck";
    backend["n"] = s.bracket_monoid()->rank();
  } else if (name == "motzkin") {
    backend["kind"] = "motzkin";
    backend["n"] = s.bracket_monoid()->rank();
  } else if (name == "markov_dyck") {
    backend["kind"] = "markov_dyck";
    backend["matrix"] = s.bracket_monoid()->matrix();
  } else if (name == "beta") {
    backend["kind"] = "beta";
    backend["beta"] = s.beta()->display;
  } else {
    throw SchemaError("subshift backend '" + name + "' has no JSON form");
  }
  json j;
  j["alphabet"] = s.alphabet().names();
  j["backend"] = std::move(backend);
  return emit(std::move(j), "subshift");
}

SubshiftSpec subshift_from_json(const std::string& text) {
  const json j = parse_checked(text, "subshift");
  const Alphabet alphabet = alphabet_of(j);
  const json& backend = need(j, "backend");
  if (!backend.is_object()) throw SchemaError("backend must be an object");
  const std::string kind = need_str(backend, "kind");

  auto check_alphabet = [&](const SubshiftSpec& s) {
    if (s.alphabet() != alphabet)
      throw SchemaError("alphabet does not match the canonical alphabet of backend '" + kind + "'");
    return s;
  };

  if (kind == "forbidden") {
    std::vector<Word> words;
    for (const json& w : need_array(backend, "forbidden"))
      words.push_back(word_of(w, alphabet, "forbidden word"));
    return SubshiftSpec::forbidden_words(alphabet, std::move(words));
  }
  if (kind == "sofic") {
    LabeledGraph g;
    g.alphabet = alphabet;
    g.vertex_names = string_list(need_array(backend, "vertices"), "vertices");
    g.edges = edges_of(need_array(backend, "edges"), alphabet, g.vertex_count(), g.vertex_count());
    return SubshiftSpec::sofic_graph(std::move(g));
  }
  if (kind == "dyck")
    return check_alphabet(SubshiftSpec::dyck_full(static_cast<std::size_t>(need_int(backend, "n"))));
  if (kind == "motzkin")
    return check_alphabet(SubshiftSpec::motzkin(static_cast<std::size_t>(need_int(backend, "n"))));
  if (kind == "markov_dyck") {
    const json& rows = need_array(backend, "matrix");
    BinMatrix m;
    for (const json& row : rows) {
      if (!row.is_array()) throw SchemaError("matrix rows must be arrays");
      m.push_back(int_list(row, "matrix row"));
    }
    return check_alphabet(SubshiftSpec::markov_dyck(std::move(m)));
  }
  if (kind == "beta")
    return check_alphabet(SubshiftSpec::beta_shift(parse_beta(need_str(backend, "beta"))));
  throw SchemaError("unknown backend kind '" + kind + "'");
}

// ---- lambda-graph truncations -----------------------------------------------------

std::string lgs_to_json(const LambdaGraphTruncation& lgs) { return emit(lgs_obj(lgs), "lgs"); }

LambdaGraphTruncation lgs_from_json(const std::string& text) {
  return lgs_of(parse_checked(text, "lgs"));
}

// ---- matrices -----------------------------------------------------------------------

std::string matrix_to_json(const BinMatrix& m) {
  json j;
  j["rows"] = m;
  return emit(std::move(j), "matrix");
}

BinMatrix matrix_from_json(const std::string& text) {
  const json j = parse_checked(text, "matrix");
  BinMatrix m;
  for (const json& row : need_array(j, "rows")) {
    if (!row.is_array()) throw SchemaError("matrix rows must be arrays");
    m.push_back(int_list(row, "matrix row"));
    if (m.back().size() != m.front().size()) throw SchemaError("matrix rows must have equal length");
  }
  return m;
}

std::string ck_matrix_to_json(const CKMatrix& m) {
  json index = json::array();
  for (const auto& [sym, v] : m.index)
    index.push_back(json{{"symbol", m.alphabet.name(sym)}, {"vertex", m.vertex_names[v]}});
  json j;
  j["alphabet"] = m.alphabet.names();
  j["vertices"] = m.vertex_names;
  j["index"] = std::move(index);
  j["entries"] = m.entries;
  return emit(std::move(j), "ck-matrix");
}

CKMatrix ck_matrix_from_json(const std::string& text) {
  const json j = parse_checked(text, "ck-matrix");
  CKMatrix m;
  m.alphabet = alphabet_of(j);
  m.vertex_names = string_list(need_array(j, "vertices"), "vertices");
  std::map<std::string, int> vertex_index;
  for (std::size_t i = 0; i < m.vertex_names.size(); ++i)
    if (!vertex_index.emplace(m.vertex_names[i], static_cast<int>(i)).second)
      throw SchemaError("duplicate vertex name '" + m.vertex_names[i] + "'");
  for (const json& row : need_array(j, "index")) {
    if (!row.is_object()) throw SchemaError("index entries must be objects");
    auto it = vertex_index.find(need_str(row, "vertex"));
    if (it == vertex_index.end()) throw SchemaError("index references unknown vertex");
    m.index.emplace_back(m.alphabet.at(need_str(row, "symbol")), it->second);
  }
  for (const json& row : need_array(j, "entries")) {
    if (!row.is_array()) throw SchemaError("entries rows must be arrays");
    m.entries.push_back(int_list(row, "entries row"));
    for (int v : m.entries.back())
      if (v != 0 && v != 1) throw SchemaError("entries must be 0/1");
    if (m.entries.back().size() != m.index.size())
      throw SchemaError("entries must be square of index size");
  }
  if (m.entries.size() != m.index.size()) throw SchemaError("entries must be square of index size");
  return m;
}

// ---- K-groups -------------------------------------------------------------------------

std::string kgroups_to_json(const KGroupResult& k) {
  json torsion = json::array();
  for (const mpz_class& d : k.k0_torsion) {
    if (d.fits_slong_p())
      torsion.push_back(d.get_si());
    else
      torsion.push_back(d.get_str());
  }
  json j;
  j["k0"] = json{{"free", k.k0_free_rank}, {"torsion", std::move(torsion)}};
  j["k1"] = json{{"free", k.k1_free_rank}};
  return emit(std::move(j), "kgroups");
}

KGroupResult kgroups_from_json(const std::string& text) {
  const json j = parse_checked(text, "kgroups");
  const json& k0 = need(j, "k0");
  const json& k1 = need(j, "k1");
  if (!k0.is_object() || !k1.is_object()) throw SchemaError("k0 and k1 must be objects");
  KGroupResult k;
  k.k0_free_rank = static_cast<int>(need_int(k0, "free"));
  k.k1_free_rank = static_cast<int>(need_int(k1, "free"));
  for (const json& d : need_array(k0, "torsion")) {
    if (d.is_number_integer()) {
      k.k0_torsion.emplace_back(static_cast<long>(d.get<long long>()));
    } else if (d.is_string()) {
      try {
        k.k0_torsion.emplace_back(d.get<std::string>());
      } catch (const std::invalid_argument&) {
        throw SchemaError("torsion entries must be integers");
      }
    } else {
      throw SchemaError("torsion entries must be integers");
    }
  }
  return k;
}

// ---- reports --------------------------------------------------------------------------

std::string report_to_json(const Report& r) {
  json j;
  switch (r.verdict) {
    case Verdict::Yes: j["verdict"] = "yes"; break;
    case Verdict::No: j["verdict"] = "no"; break;
    case Verdict::Unknown: j["verdict"] = "unknown"; break;
  }
  j["certified_depth"] = r.certified_depth;
  j["exact"] = r.exact;
  j["detail"] = r.detail;
  j["witness"] = r.witness;
  return emit(std::move(j), "report");
}

Report report_from_json(const std::string& text) {
  const json j = parse_checked(text, "report");
  Report r;
  const std::string v = need_str(j, "verdict");
  if (v == "yes")
    r.verdict = Verdict::Yes;
  else if (v == "no")
    r.verdict = Verdict::No;
  else if (v == "unknown")
    r.verdict = Verdict::Unknown;
  else
    throw SchemaError("verdict must be yes/no/unknown");
  r.certified_depth = static_cast<int>(need_int(j, "certified_depth"));
  r.exact = need_bool(j, "exact");
  r.detail = need_str(j, "detail");
  r.witness = string_list(need_array(j, "witness"), "witness");
  return r;
}

// ---- conjugacy job payloads --------------------------------------------------------------

std::string conjugacy_job_to_json(const ConjugacyJob& job, const Alphabet& left,
                                  const Alphabet& right) {
  json j;
  switch (job.check) {
    case ConjugacyJob::Check::OneSided:
      j["check"] = "conj";
      j["fwd"] = blockmap_obj(job.fwd, left, right);
      j["bwd"] = blockmap_obj(job.bwd, right, left);
      break;
    case ConjugacyJob::Check::Eventual:
      j["check"] = "eventual";
      j["lag"] = job.eventual.lag;
      j["head_fwd"] = headmap_obj(job.eventual.head_fwd, left, right);
      j["head_bwd"] = headmap_obj(job.eventual.head_bwd, right, left);
      j["tail_fwd"] = blockmap_obj(job.eventual.tail_fwd, left, right);
      j["tail_bwd"] = blockmap_obj(job.eventual.tail_bwd, right, left);
      break;
    case ConjugacyJob::Check::Substitution: {
      j["check"] = "substitution";
      json table = json::array();
      for (const Word& w : job.substitution) table.push_back(word_names(w, right));
      j["table"] = std::move(table);
      break;
    }
    case ConjugacyJob::Check::Coe: {
      const COEData& d = job.coe;
      if (d.lgs1.alphabet != left || d.lgs2.alphabet != right)
        throw SchemaError("orbit-equivalence truncations must use the subshift alphabets");
      j["check"] = "coe";
      j["lgs1"] = lgs_obj(d.lgs1);
      j["lgs2"] = lgs_obj(d.lgs2);
      json code = json::array();
      for (const Word& w : d.code) code.push_back(word_names(w, right));
      j["code"] = std::move(code);
      j["k1"] = cocycle_obj(d.k1, left);
      j["l1"] = cocycle_obj(d.l1, left);
      j["k2"] = cocycle_obj(d.k2, right);
      j["l2"] = cocycle_obj(d.l2, right);
      j["fwd_end_vertex"] = d.fwd_end_vertex;
      j["bwd_end_vertex"] = d.bwd_end_vertex;
      break;
    }
  }
  return emit(std::move(j), "conjugacy-data");
}

ConjugacyJob conjugacy_job_from_json(const std::string& text, const Alphabet& left,
                                     const Alphabet& right) {
  const json j = parse_checked(text, "conjugacy-data");
  const std::string check = need_str(j, "check");
  ConjugacyJob job;
  if (check == "conj") {
    job.check = ConjugacyJob::Check::OneSided;
    job.fwd = blockmap_of(need(j, "fwd"), left, right);
    job.bwd = blockmap_of(need(j, "bwd"), right, left);
    return job;
  }
  if (check == "eventual") {
    job.check = ConjugacyJob::Check::Eventual;
    job.eventual.lag = static_cast<int>(need_int(j, "lag"));
    job.eventual.head_fwd = headmap_of(need(j, "head_fwd"), left, right);
    job.eventual.head_bwd = headmap_of(need(j, "head_bwd"), right, left);
    job.eventual.tail_fwd = blockmap_of(need(j, "tail_fwd"), left, right);
    job.eventual.tail_bwd = blockmap_of(need(j, "tail_bwd"), right, left);
    job.eventual.check_shape();
    return job;
  }
  if (check == "substitution") {
    job.check = ConjugacyJob::Check::Substitution;
    for (const json& w : need_array(j, "table"))
      job.substitution.push_back(word_of(w, right, "substitution image"));
    return job;
  }
  if (check == "coe") {
    job.check = ConjugacyJob::Check::Coe;
    COEData& d = job.coe;
    d.lgs1 = lgs_of(need(j, "lgs1"));
    d.lgs2 = lgs_of(need(j, "lgs2"));
    if (d.lgs1.alphabet != left || d.lgs2.alphabet != right)
      throw SchemaError("orbit-equivalence truncations must use the subshift alphabets");
    for (const json& w : need_array(j, "code")) d.code.push_back(word_of(w, right, "codeword"));
    d.k1 = cocycle_of(need(j, "k1"), left);
    d.l1 = cocycle_of(need(j, "l1"), left);
    d.k2 = cocycle_of(need(j, "k2"), right);
    d.l2 = cocycle_of(need(j, "l2"), right);
    d.fwd_end_vertex = int_list(need_array(j, "fwd_end_vertex"), "fwd_end_vertex");
    for (const json& row : need_array(j, "bwd_end_vertex")) {
      if (!row.is_array()) throw SchemaError("bwd_end_vertex must contain arrays");
      d.bwd_end_vertex.push_back(int_list(row, "bwd_end_vertex row"));
    }
    return job;
  }
  throw SchemaError("unknown check '" + check + "'");
}

// ---- DOT rendering --------------------------------------------------------------------------

std::string graph_to_dot(const LabeledGraph& g) {
  std::ostringstream out;
  out << "digraph lamgraph {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const std::string& v : g.vertex_names) out << "  \"" << dot_escape(v) << "\";\n";
  for (const LabeledEdge& e : g.edges)
    out << "  \"" << dot_escape(g.vertex_names[e.src]) << "\" -> \""
        << dot_escape(g.vertex_names[e.dst]) << "\" [label=\""
        << dot_escape(g.alphabet.name(e.label)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string lgs_to_dot(const LambdaGraphTruncation& lgs) {
  std::ostringstream out;
  out << "digraph lamgraph_lgs {\n  node [shape=box];\n";
  auto node = [](int l, int i) { return "L" + std::to_string(l) + "_" + std::to_string(i); };
  for (std::size_t l = 0; l < lgs.vertex_names.size(); ++l) {
    out << "  subgraph cluster_" << l << " {\n    label=\"level " << l << "\";\n";
    for (std::size_t i = 0; i < lgs.vertex_names[l].size(); ++i)
      out << "    " << node(static_cast<int>(l), static_cast<int>(i)) << " [label=\""
          << dot_escape(lgs.vertex_names[l][i]) << "\"];\n";
    out << "  }\n";
  }
  for (int l = 0; l < lgs.depth(); ++l)
    for (const LabeledEdge& e : lgs.edges[l])
      out << "  " << node(l, e.src) << " -> " << node(l + 1, e.dst) << " [label=\""
          << dot_escape(lgs.alphabet.name(e.label)) << "\"];\n";
  for (int l = 0; l < lgs.depth(); ++l)
    for (std::size_t jv = 0; jv < lgs.iota[l].size(); ++jv)
      out << "  " << node(l + 1, static_cast<int>(jv)) << " -> " << node(l, lgs.iota[l][jv])
          << " [style=dashed, arrowhead=empty, constraint=false];\n";
  out << "}\n";
  return out.str();
}

// ---- file helpers -----------------------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw SchemaError("error while reading '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceLimit("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw ResourceLimit("error while writing '" + path + "'");
}

}  // namespace lamgraph
