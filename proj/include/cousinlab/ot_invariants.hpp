#pragma once

#include "cousinlab/number_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cousinlab {

// Field with s >= 1 real and t >= 1 complex places, s totally positive units
// of log rank s, and optionally a rank s+2t lattice (rows are coordinate
// vectors in the power basis) that the units must preserve.
struct OTDatum {
    FieldPtr field;
    std::vector<FieldElement> units;
    std::optional<std::vector<std::vector<Rational>>> lattice;

    int s() const { return field->s(); }
    int t() const { return field->t(); }
};

// Throws PreconditionError naming the first failed check.
void validate(const OTDatum& d);

// rho_{I,J}(u) = prod_{i in I} sigma_i(u) prod_{j in J} conj(sigma_{s+j}(u)),
// I in 1..s+t, J in 1..t, both sorted.
struct CharacterSpec {
    std::vector<int> I, J;
    friend bool operator==(const CharacterSpec& a, const CharacterSpec& b) { return a.I == b.I && a.J == b.J; }
};

// Index set in 1..s+2t of the embeddings whose product the character is;
// conj(sigma_{s+j}) is sigma_{s+t+j}.
std::vector<int> embedding_set(int s, int t, const CharacterSpec& c);

// Exact triviality tests with a memo per embedding set. Safe to share across threads.
class CharacterOracle {
  public:
    explicit CharacterOracle(OTDatum d);
    const OTDatum& datum() const { return d_; }

    bool is_trivial(const CharacterSpec& c);
    // prod_{k in S} sigma_k(u) == 1 for every unit u
    bool product_is_one(const std::vector<int>& S);
    long n_triv(int p, int j);
    std::vector<CharacterSpec> trivial_characters();

  private:
    bool unit_product_is_one(std::size_t unit, const std::vector<int>& S);
    // integer polynomial whose roots are all products of k conjugates of the unit
    const Poly& subset_product_poly(std::size_t unit, int k);

    OTDatum d_;
    std::mutex mu_;
    std::map<std::vector<int>, bool> memo_;
    std::map<std::pair<std::size_t, int>, Poly> polys_;
};

bool character_is_trivial(const OTDatum& d, const CharacterSpec& c);

enum class SimpleType { certified_simple, undetermined };
const char* to_string(SimpleType s);

struct HodgeReport {
    int s = 0, t = 0;
    std::vector<std::vector<long>> h; // h[p][q], 0 <= p, q <= s+t
    std::vector<long> b;              // b_0 .. b_{2s+2t}
    std::vector<std::pair<long, long>> per_degree; // (sum_{p+q=l} h^{p,q}, b_l)
    bool decomposition_ok = false;
    bool condition_C = false;
    bool complement_symmetric = false;
    std::vector<CharacterSpec> trivial;
    SimpleType simple_type = SimpleType::undetermined;
    std::optional<std::string> simple_witness; // generator product with full degree minimal polynomial
    std::optional<bool> simple_consequences_ok; // h^{2,0} = h^{1,1} = 0, h^{0,2} = C(s,2)
    std::vector<std::string> notes;
};

std::vector<std::vector<long>> hodge_diamond(CharacterOracle& o);
std::vector<long> betti(CharacterOracle& o);
bool check_condition_C(CharacterOracle& o);
// b_l against sum of h^{p,q}; returns the per-l table
std::pair<bool, std::vector<std::pair<long, long>>> verify_hodge_decomposition(CharacterOracle& o);
SimpleType simple_type_probe(const OTDatum& d, std::string* witness = nullptr);

// Validates and assembles everything above.
HodgeReport hodge_report(const OTDatum& d);

} // namespace cousinlab
