#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pma/cocycle.hpp"
#include "pma/group.hpp"
#include "pma/phase.hpp"
#include "pma/rootdatum.hpp"

namespace pma {

// Insertion-ordered so emitted reports keep a stable, readable field order;
// byte determinism comes from dumping the same tree the same way.
using Json = nlohmann::ordered_json;

// Any structural problem with incoming JSON: wrong type, missing or unknown
// field, bad pair/triple key, size mismatch. Unknown fields are rejected
// everywhere so transcription typos in hand-entered data fail loudly
// instead of being silently ignored.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value-level encodings.
//   Phase          {"num": N, "den": D}
//   FinAbGroup     {"moduli": [...], "invariant_factor": bool}
//   GroupElem      {"exp": [...]}
//   CocycleSpec    {"moduli": [...], "a_l": [...],
//                   "a_ij": {"1,2": v, ...}, "a_rst": {"1,2,3": v, ...}}
//   KCochain3      {"f_rrr": [...], "f_rrs": [...], "f_rss": [...], "f_rst": [...]}
//   diagram        {"q_ii": [...], "q_tilde": {"1,2": phase, ...}}
//   RootDatum      {"moduli": [...], "diagram": {...}, "S": [[...]], "X": [[...]]}
// Map keys are 1-based ascending index lists. Writers emit every key; readers
// treat a missing key as zero. Readers canonicalize: phases through
// make_phase, exponents and constants into their canonical residue ranges.
Json phase_json(const Phase& p);
Phase phase_from_json(const Json& j);

Json group_json(const FinAbGroup& G);
// "invariant_factor" may be omitted; when present it must match the value
// recomputed from the moduli.
FinAbGroup group_from_json(const Json& j);

Json elem_json(const GroupElem& a);
GroupElem elem_from_json(const Json& j, const FinAbGroup& G);

Json spec_json(const CocycleSpec& a);
CocycleSpec spec_from_json(const Json& j);

Json kcochain_json(const KCochain3& f, const FinAbGroup& G);
KCochain3 kcochain_from_json(const Json& j, const FinAbGroup& G);

Json diagram_json(const GeneralizedDynkinDiagram& D);
GeneralizedDynkinDiagram diagram_from_json(const Json& j);

Json intmat_json(const IntMat& M);
IntMat intmat_from_json(const Json& j);

// T is not serialized; reading re-solves it, so a datum carrying a
// non-canonical right inverse round-trips to the canonical one (the forced
// constants are the same either way).
Json datum_json(const RootDatum& D);
RootDatum datum_from_json(const Json& j);

// A 3-cochain as its full value table: {"moduli": [...], "values": [phase,
// ...]} with |G|^3 entries in elem_index order, the last argument fastest.
// Writing evaluates the cochain everywhere; budget caps |G|^3.
Json cochain3_json(const Cochain3& phi, std::int64_t budget = default_scan_budget);
Cochain3 cochain3_from_json(const Json& j);

// Top-level files and reports carry {"schema": 1, ...payload fields...}.
// Readers require the version; document writers prepend it.
inline constexpr std::int64_t schema_version = 1;

Json spec_document(const CocycleSpec& a);
CocycleSpec read_spec_document(const Json& doc);

Json table_document(const Cochain3& phi, std::int64_t budget = default_scan_budget);
Cochain3 read_table_document(const Json& doc);

Json datum_document(const RootDatum& D);
RootDatum read_datum_document(const Json& doc);

Json diagram_document(const GeneralizedDynkinDiagram& D);
GeneralizedDynkinDiagram read_diagram_document(const Json& doc);

// {"schema": 1, "cartan_matrix": [[...]]}
Json cartan_document(const IntMat& C);
IntMat read_cartan_document(const Json& doc);

// Parses text, requiring one JSON document and nothing after it.
Json parse_json_text(const std::string& text);

}  // namespace pma
