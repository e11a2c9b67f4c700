#pragma once

#include <string>

#include "lamgraph/conjugacy.hpp"
#include "lamgraph/fischer.hpp"
#include "lamgraph/invariants.hpp"
#include "lamgraph/lgs.hpp"
#include "lamgraph/subshift.hpp"

namespace lamgraph {

// JSON serialization, schema "lamgraph/1".  Every writer emits an object
// {"schema":"lamgraph/1","kind":<kind>,...} with keys in sorted order and a
// trailing newline, so output is byte-deterministic and re-export after
// import reproduces the input exactly.  Readers reject anything malformed
// with SchemaError (wrong schema tag, wrong kind, missing fields, out-of-range
// indices, unknown symbols).

std::string graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const std::string& text);

// Serializable backends: sofic, forbidden, dyck, markov_dyck, motzkin, beta.
// Oracle and higher-block specs have no faithful JSON form; the writer throws
// SchemaError for them.
std::string subshift_to_json(const SubshiftSpec& s);
SubshiftSpec subshift_from_json(const std::string& text);

std::string lgs_to_json(const LambdaGraphTruncation& lgs);
LambdaGraphTruncation lgs_from_json(const std::string& text);

std::string matrix_to_json(const BinMatrix& m);
BinMatrix matrix_from_json(const std::string& text);

std::string ck_matrix_to_json(const CKMatrix& m);
CKMatrix ck_matrix_from_json(const std::string& text);

std::string kgroups_to_json(const KGroupResult& k);
KGroupResult kgroups_from_json(const std::string& text);

std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

// Payload for `lamgraph conjugacy check --data`.  Exactly one of the four
// blocks is populated, selected by `check`.
struct ConjugacyJob {
  enum class Check { OneSided, Eventual, Coe, Substitution };
  Check check = Check::OneSided;
  BlockMap fwd, bwd;               // one-sided: sliding codes both ways
  EventualConjugacyData eventual;  // eventual: lag + head/tail maps
  COEData coe;                     // orbit equivalence: truncations + cocycles
  std::vector<Word> substitution;  // per left symbol, its image word
};

// Sliding-map tables are stored by symbol name, so both alphabets are needed
// to resolve them (the COE block embeds its own truncations and ignores the
// passed alphabets beyond a consistency check).
std::string conjugacy_job_to_json(const ConjugacyJob& job, const Alphabet& left,
                                  const Alphabet& right);
ConjugacyJob conjugacy_job_from_json(const std::string& text, const Alphabet& left,
                                     const Alphabet& right);

// Graphviz rendering for inspection; not meant to be re-imported.  The
// truncation form draws one cluster per level with dashed projection edges.
std::string graph_to_dot(const LabeledGraph& g);
std::string lgs_to_dot(const LambdaGraphTruncation& lgs);

// File helpers shared by the CLI: read throws SchemaError when the path is
// unreadable, write throws ResourceLimit when the target cannot be written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lamgraph
