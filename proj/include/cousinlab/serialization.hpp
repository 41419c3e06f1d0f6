#pragma once

#include "cousinlab/cocycle_probe.hpp"
#include "cousinlab/dispersion.hpp"
#include "cousinlab/fourier_dolbeault.hpp"
#include "cousinlab/ot_invariants.hpp"
#include "cousinlab/period_lattice.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cousinlab {

using json = nlohmann::json;

inline constexpr const char* kSchema = "cousinlab/1";

// Exact entries. A rational is a string "p/q" (or a JSON integer); an
// algebraic real is {"minpoly": [c0, .., cd], "root_in": ["lo", "hi"]}; a
// field element is {"coords": [...]} against the "field" of the enclosing
// object. Floating literals raise SchemaError wherever an exact value is due.
Rational rational_from_json(const json& j, const std::string& where);
Integer integer_from_json(const json& j, const std::string& where);
long small_int_from_json(const json& j, const std::string& where);
json to_json(const Rational& q);
json to_json(const Integer& z);

struct FieldRef {
    FieldPtr K;
    int real_index = 0;
};

FieldRef field_from_json(const json& j, const std::string& where);
json field_to_json(const FieldPtr& K, int real_index);
ExactReal exact_from_json(const json& j, const FieldRef* field, const std::string& where);
// Collects the common field of the entries written through it.
struct EntryWriter {
    FieldPtr K;
    int emb = 0;
    json write(const ExactReal& x);
    void attach_field(json& obj) const;
};

PeriodMatrix period_matrix_from_json(const json& j);
json period_matrix_to_json(const PeriodMatrix& P);

FourierPQForm form_from_json(const json& j, const FieldRef* matrix_field);
json form_to_json(const FourierPQForm& f);

OTDatum ot_datum_from_json(const json& j);

// Intervals are written with exact dyadic endpoints, so a parse reproduces
// the same enclosure bit for bit.
json to_json(const Interval& x);
Interval interval_from_json(const json& j);

// Report payloads. from_json(to_json(r)) serializes back to the same document.
struct DimsReport {
    std::vector<long> boxes;
    // dims[b][p][q] for boxes[b]
    std::vector<std::vector<std::vector<long>>> dims;
    bool box_independent = true;
};

struct SolveReport {
    std::string contraction;
    bool closed = false;
    bool identity_ok = false; // dbar(eta) + harmonic == f
    json eta, harmonic;       // FourierPQForm documents
};

struct CocycleProbeReport {
    WitnessSequence witnesses;
    CocycleReport radii;
};

json to_json(const CousinCertificate& c);
CousinCertificate cousin_from_json(const json& j);
json to_json(const DispersionReport& r);
DispersionReport dispersion_from_json(const json& j);
json to_json(const LiouvilleCertificate& c);
LiouvilleCertificate liouville_from_json(const json& j);
json to_json(const TowerReport& r);
TowerReport tower_from_json(const json& j);
json to_json(const DimsReport& r);
DimsReport dims_from_json(const json& j);
json to_json(const SolveReport& r);
SolveReport solve_from_json(const json& j);
json to_json(const HodgeReport& r);
HodgeReport hodge_from_json(const json& j);
json to_json(const CocycleProbeReport& r);
CocycleProbeReport cocycle_from_json(const json& j);

// {"schema", "kind", "command", "precision_bits", "conventions", "report"}
json envelope(const std::string& kind, const std::string& command, long precision_bits, json report);
// Checks schema and kind, returns the payload.
const json& open_envelope(const json& doc, const std::string& kind);
// Parses the payload with the typed reader for kind and writes it back.
json reserialize(const json& doc);

} // namespace cousinlab
