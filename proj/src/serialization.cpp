#include "cousinlab/serialization.hpp"

#include "cousinlab/errors.hpp"

#include <cmath>
#include <limits>

namespace cousinlab {

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object())
        throw SchemaError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(where + ": missing \"" + key + "\"");
    return *it;
}

const json& array_at(const json& j, const std::string& where) {
    if (!j.is_array())
        throw SchemaError(where + ": expected an array");
    return j;
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean())
        throw SchemaError(where + ": expected true or false");
    return j.get<bool>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string())
        throw SchemaError(where + ": expected a string");
    return j.get<std::string>();
}

json dbl(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

double dbl_from(const json& j, const std::string& where) {
    if (j.is_number())
        return j.get<double>();
    if (j == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (j == "inf")
        return std::numeric_limits<double>::infinity();
    if (j == "-inf")
        return -std::numeric_limits<double>::infinity();
    throw SchemaError(where + ": expected a number");
}

json ints(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& z : v)
        a.push_back(to_json(z));
    return a;
}

std::vector<Integer> ints_from(const json& j, const std::string& where) {
    std::vector<Integer> v;
    for (const auto& e : array_at(j, where))
        v.push_back(integer_from_json(e, where));
    return v;
}

template <class T>
std::vector<T> small_ints_from(const json& j, const std::string& where) {
    std::vector<T> v;
    for (const auto& e : array_at(j, where))
        v.push_back(static_cast<T>(small_int_from_json(e, where)));
    return v;
}

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v)
        a.push_back(to_json(q));
    return a;
}

std::vector<Rational> rationals_from(const json& j, const std::string& where) {
    std::vector<Rational> v;
    for (const auto& e : array_at(j, where))
        v.push_back(rational_from_json(e, where));
    return v;
}

template <class F>
json list(const F& items) {
    json a = json::array();
    for (const auto& x : items)
        a.push_back(to_json(x));
    return a;
}

json optional_ints(const std::optional<std::vector<Integer>>& v) { return v ? ints(*v) : json(nullptr); }

Poly poly_from(const json& j, const std::string& where) {
    auto c = ints_from(j, where);
    if (c.size() < 2)
        throw SchemaError(where + ": polynomial needs degree >= 1");
    if (c.back() == 0)
        throw SchemaError(where + ": leading coefficient is zero");
    return Poly::from_bigints(c);
}

RealMat block_from(const json& j, std::size_t rows, std::size_t cols, const FieldRef* F, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw SchemaError(where + ": expected " + std::to_string(rows) + " rows");
    RealMat out;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw SchemaError(where + ": row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
        std::vector<ExactReal> row;
        for (std::size_t c = 0; c < cols; ++c)
            row.push_back(exact_from_json(j[r][c], F, where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        out.push_back(std::move(row));
    }
    return out;
}

json block_to(const RealMat& A, EntryWriter& w) {
    json rows = json::array();
    for (const auto& row : A) {
        json r = json::array();
        for (const auto& x : row)
            r.push_back(w.write(x));
        rows.push_back(r);
    }
    return rows;
}

ExactComplex complex_from(const json& j, const FieldRef* F, const std::string& where) {
    if (j.is_object() && j.contains("re"))
        return {exact_from_json(member(j, "re", where), F, where + ".re"),
                exact_from_json(member(j, "im", where), F, where + ".im")};
    return ExactComplex(exact_from_json(j, F, where));
}

std::optional<FieldRef> local_field(const json& j, const std::string& where) {
    if (j.is_object() && j.contains("field"))
        return field_from_json(j["field"], where + ".field");
    return std::nullopt;
}

json fit_to(const Fit& f) {
    return {{"log_C", dbl(f.log_C)}, {"slope", dbl(f.slope)}, {"residual", dbl(f.residual)}, {"valid", f.valid}};
}

Fit fit_from(const json& j, const std::string& where) {
    Fit f;
    f.log_C = dbl_from(member(j, "log_C", where), where);
    f.slope = dbl_from(member(j, "slope", where), where);
    f.residual = dbl_from(member(j, "residual", where), where);
    f.valid = boolean(member(j, "valid", where), where);
    return f;
}

template <class E, std::size_t N>
E enum_from(const json& j, const E (&values)[N], const std::string& where) {
    std::string s = text(j, where);
    for (E v : values)
        if (s == to_string(v))
            return v;
    throw SchemaError(where + ": unknown value '" + s + "'");
}

json pairs_to(const std::vector<std::pair<Rational, Rational>>& v, const char* k1, const char* k2) {
    json a = json::array();
    for (const auto& [x, y] : v)
        a.push_back({{k1, to_json(x)}, {k2, to_json(y)}});
    return a;
}

std::vector<std::pair<Rational, Rational>> pairs_from(const json& j, const char* k1, const char* k2,
                                                      const std::string& where) {
    std::vector<std::pair<Rational, Rational>> v;
    for (const auto& e : array_at(j, where))
        v.emplace_back(rational_from_json(member(e, k1, where), where), rational_from_json(member(e, k2, where), where));
    return v;
}

json char_to(const CharIndex& c) { return {{"pi", ints(c.pi)}, {"rho", ints(c.rho)}, {"sigma", ints(c.sigma)}}; }

} // namespace

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<unsigned long long>()))) :
                                        Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_number_float())
        throw SchemaError(where + ": floating literal where an exact value is required");
    if (!j.is_string())
        throw SchemaError(where + ": expected an exact rational string");
    return parse_rational(j.get<std::string>());
}

Integer integer_from_json(const json& j, const std::string& where) {
    Rational q = rational_from_json(j, where);
    if (q.get_den() != 1)
        throw SchemaError(where + ": expected an integer");
    return q.get_num();
}

long small_int_from_json(const json& j, const std::string& where) {
    Integer z = integer_from_json(j, where);
    if (!z.fits_slong_p())
        throw SchemaError(where + ": integer out of range");
    return z.get_si();
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Integer& z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

FieldRef field_from_json(const json& j, const std::string& where) {
    Poly f = poly_from(member(j, "minpoly", where), where + ".minpoly");
    const json& box = member(j, "root_in", where);
    if (!box.is_array() || box.size() != 2)
        throw SchemaError(where + ".root_in: expected [lo, hi]");
    Rational lo = rational_from_json(box[0], where + ".root_in");
    Rational hi = rational_from_json(box[1], where + ".root_in");
    if (lo > hi)
        throw SchemaError(where + ".root_in: lo > hi");
    FieldRef r;
    r.K = field_for(f);
    r.real_index = r.K->real_index_in(lo, hi);
    return r;
}

json field_to_json(const FieldPtr& K, int real_index) {
    const AlgebraicReal& a = K->real_root(real_index);
    return {{"minpoly", ints(K->minpoly().primitive().integer_coeffs())},
            {"root_in", json::array({to_json(a.lo()), to_json(a.hi())})}};
}

ExactReal exact_from_json(const json& j, const FieldRef* field, const std::string& where) {
    if (!j.is_object())
        return ExactReal(rational_from_json(j, where));
    if (j.contains("coords")) {
        if (!field)
            throw SchemaError(where + ": coords entry without an enclosing \"field\"");
        auto c = rationals_from(j["coords"], where + ".coords");
        if (c.empty() || static_cast<int>(c.size()) > field->K->degree())
            throw SchemaError(where + ".coords: need 1..degree coordinates");
        c.resize(field->K->degree(), Rational(0));
        return ExactReal(field->K->element(c), field->real_index);
    }
    if (j.contains("minpoly")) {
        FieldRef r = field_from_json(j, where);
        return ExactReal::from_algebraic(r.K->real_root(r.real_index));
    }
    throw SchemaError(where + ": expected \"p/q\", {minpoly, root_in} or {coords}");
}

json EntryWriter::write(const ExactReal& x) {
    if (x.is_rational())
        return to_json(x.rational());
    if (!K) {
        K = x.field();
        emb = x.embedding();
    } else if (!same_field(K, x.field()) || emb != x.embedding()) {
        throw PreconditionError("entries from different fields cannot share one document");
    }
    return {{"coords", rationals(x.element().coords())}};
}

void EntryWriter::attach_field(json& obj) const {
    if (K)
        obj["field"] = field_to_json(K, emb);
}

PeriodMatrix period_matrix_from_json(const json& j) {
    const std::string where = "period_matrix";
    auto F = local_field(j, where);
    const FieldRef* fp = F ? &*F : nullptr;
    if (j.is_object() && j.contains("alpha"))
        return example_matrix(exact_from_json(j["alpha"], fp, where + ".alpha"));
    if (j.is_object() && j.contains("basis")) {
        long m = small_int_from_json(member(j, "m", where), where + ".m");
        const json& b = array_at(j["basis"], where + ".basis");
        ComplexMat basis;
        for (std::size_t r = 0; r < b.size(); ++r) {
            std::vector<ExactComplex> row;
            for (std::size_t c = 0; c < array_at(b[r], where + ".basis").size(); ++c)
                row.push_back(complex_from(b[r][c], fp, where + ".basis"));
            basis.push_back(std::move(row));
        }
        return normalize(basis, static_cast<int>(m)).P;
    }
    long n = small_int_from_json(member(j, "n", where), where + ".n");
    long m = small_int_from_json(member(j, "m", where), where + ".m");
    if (m < 1 || m > n || n > 64)
        throw SchemaError(where + ": need 1 <= m <= n <= 64");
    std::size_t r = n - m;
    return PeriodMatrix(static_cast<int>(n), static_cast<int>(m), block_from(member(j, "M", where), m, m, fp, where + ".M"),
                        block_from(member(j, "N", where), m, m, fp, where + ".N"),
                        block_from(member(j, "R1", where), r, m, fp, where + ".R1"),
                        block_from(member(j, "R2", where), r, m, fp, where + ".R2"));
}

json period_matrix_to_json(const PeriodMatrix& P) {
    EntryWriter w;
    json j = {{"n", P.n}, {"m", P.m}};
    j["M"] = block_to(P.M, w);
    j["N"] = block_to(P.N, w);
    j["R1"] = block_to(P.R1, w);
    j["R2"] = block_to(P.R2, w);
    w.attach_field(j);
    return j;
}

FourierPQForm form_from_json(const json& j, const FieldRef* matrix_field) {
    const std::string where = "form";
    auto F = local_field(j, where);
    const FieldRef* fp = F ? &*F : matrix_field;
    auto get = [&](const char* k) { return static_cast<int>(small_int_from_json(member(j, k, where), where + "." + k)); };
    int n = get("n"), m = get("m"), p = get("p"), q = get("q");
    int power = j.contains("power") ? get("power") : 0;
    if (m < 1 || m > n || p < 0 || p > n || q < 0 || q > m)
        throw SchemaError(where + ": degrees out of range");
    FourierPQForm f(n, m, p, q, power);
    for (const auto& t : array_at(member(j, "terms", where), where + ".terms")) {
        FourierPQForm::Key k;
        k.c.pi = ints_from(member(t, "pi", where), where + ".pi");
        k.c.rho = ints_from(member(t, "rho", where), where + ".rho");
        k.c.sigma = ints_from(member(t, "sigma", where), where + ".sigma");
        if (static_cast<int>(k.c.pi.size()) != m || static_cast<int>(k.c.rho.size()) != m ||
            static_cast<int>(k.c.sigma.size()) != n - m)
            throw SchemaError(where + ": character has the wrong length");
        k.I = small_ints_from<int>(member(t, "I", where), where + ".I");
        k.J = small_ints_from<int>(member(t, "J", where), where + ".J");
        ExactComplex c(exact_from_json(member(t, "re", where), fp, where + ".re"),
                       exact_from_json(member(t, "im", where), fp, where + ".im"));
        try {
            f.add(k, c);
        } catch (const std::invalid_argument& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    return f;
}

json form_to_json(const FourierPQForm& f) {
    EntryWriter w;
    json j = {{"n", f.n()}, {"m", f.m()}, {"p", f.p()}, {"q", f.q()}, {"power", f.power()}};
    json terms = json::array();
    for (const auto& [k, c] : f.terms()) {
        json t = char_to(k.c);
        t["I"] = k.I;
        t["J"] = k.J;
        t["re"] = w.write(c.re);
        t["im"] = w.write(c.im);
        terms.push_back(t);
    }
    j["terms"] = terms;
    w.attach_field(j);
    return j;
}

OTDatum ot_datum_from_json(const json& j) {
    const std::string where = "input";
    Poly f = poly_from(member(j, "minpoly", where), where + ".minpoly");
    OTDatum d;
    d.field = NumberField::make(f);
    int deg = d.field->degree();
    auto coords = [&](const json& v, const std::string& w) {
        auto c = rationals_from(v, w);
        if (c.empty() || static_cast<int>(c.size()) > deg)
            throw SchemaError(w + ": need 1.." + std::to_string(deg) + " coordinates");
        c.resize(deg, Rational(0));
        return c;
    };
    const json& units = array_at(member(j, "units", where), where + ".units");
    for (std::size_t i = 0; i < units.size(); ++i)
        d.units.push_back(d.field->element(coords(units[i], where + ".units[" + std::to_string(i) + "]")));
    if (j.contains("lattice") && !j["lattice"].is_null()) {
        std::vector<std::vector<Rational>> L;
        for (const auto& row : array_at(j["lattice"], where + ".lattice"))
            L.push_back(coords(row, where + ".lattice"));
        d.lattice = L;
    }
    return d;
}

json to_json(const Interval& x) {
    return {{"lo", to_json(x.lo_rational())}, {"hi", to_json(x.hi_rational())}, {"bits", x.precision()}};
}

Interval interval_from_json(const json& j) {
    const std::string where = "interval";
    long bits = small_int_from_json(member(j, "bits", where), where);
    if (bits < 2 || bits > PrecisionPolicy::global().cap_bits)
        throw SchemaError(where + ": precision out of range");
    Rational lo = rational_from_json(member(j, "lo", where), where);
    Rational hi = rational_from_json(member(j, "hi", where), where);
    if (lo > hi)
        throw SchemaError(where + ": lo > hi");
    return Interval(lo, hi, bits);
}

json to_json(const CousinCertificate& c) {
    json basis = json::array();
    for (const auto& v : c.violation_basis)
        basis.push_back(ints(v));
    return {{"verdict", c.cousin ? "cousin" : "not_cousin"},
            {"sigma", ints(c.sigma)},
            {"tau", ints(c.tau)},
            {"violation_basis", basis}};
}

CousinCertificate cousin_from_json(const json& j) {
    const std::string where = "CousinReport";
    CousinCertificate c;
    std::string v = text(member(j, "verdict", where), where);
    if (v != "cousin" && v != "not_cousin")
        throw SchemaError(where + ": unknown verdict '" + v + "'");
    c.cousin = v == "cousin";
    c.sigma = ints_from(member(j, "sigma", where), where);
    c.tau = ints_from(member(j, "tau", where), where);
    for (const auto& b : array_at(member(j, "violation_basis", where), where))
        c.violation_basis.push_back(ints_from(b, where));
    return c;
}

json to_json(const LiouvilleCertificate& c) {
    json cols = json::array();
    for (const auto& col : c.columns)
        cols.push_back({{"j", col.j}, {"Cj", to_json(col.Cj)}, {"conj_bounds", rationals(col.conj_bounds)}});
    return {{"C", to_json(c.C)},           {"A", c.A},
            {"degree", c.degree},          {"D", to_json(c.D)},
            {"home_embedding", c.home_embedding}, {"columns", cols},
            {"strong", pairs_to(c.strong, "a", "C")}};
}

LiouvilleCertificate liouville_from_json(const json& j) {
    const std::string where = "LiouvilleCertificate";
    LiouvilleCertificate c;
    c.C = rational_from_json(member(j, "C", where), where);
    c.A = static_cast<int>(small_int_from_json(member(j, "A", where), where));
    c.degree = static_cast<int>(small_int_from_json(member(j, "degree", where), where));
    c.D = integer_from_json(member(j, "D", where), where);
    c.home_embedding = static_cast<int>(small_int_from_json(member(j, "home_embedding", where), where));
    for (const auto& col : array_at(member(j, "columns", where), where))
        c.columns.push_back({static_cast<int>(small_int_from_json(member(col, "j", where), where)),
                             rational_from_json(member(col, "Cj", where), where),
                             rationals_from(member(col, "conj_bounds", where), where)});
    c.strong = pairs_from(member(j, "strong", where), "a", "C", where);
    return c;
}

json to_json(const DispersionReport& r) {
    json table = json::array();
    for (const auto& row : r.table)
        table.push_back({{"sigma", ints(row.sigma)},
                         {"norm", row.norm},
                         {"d", to_json(row.dist.d)},
                         {"tau", ints(row.dist.tau)},
                         {"zero", row.dist.zero}});
    json per_a = json::array();
    for (const auto& p : r.per_a)
        per_a.push_back({{"a", to_json(p.a)}, {"min_ratio", to_json(p.min_ratio)}, {"argmin", ints(p.argmin)}});
    json le = json::array();
    for (double x : r.local_exponents)
        le.push_back(dbl(x));
    return {{"table", table},
            {"records", r.records},
            {"per_a", per_a},
            {"min_norm_times_d", to_json(r.min_norm_times_d)},
            {"poly_fit", fit_to(r.poly_fit)},
            {"exp_fit", fit_to(r.exp_fit)},
            {"local_exponents", le},
            {"classification", to_string(r.classification)},
            {"zero_witness", optional_ints(r.zero_witness)},
            {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
            {"note", r.note}};
}

DispersionReport dispersion_from_json(const json& j) {
    const std::string where = "DispersionReport";
    DispersionReport r;
    for (const auto& row : array_at(member(j, "table", where), where)) {
        ScanRow s;
        s.sigma = ints_from(member(row, "sigma", where), where);
        s.norm = small_int_from_json(member(row, "norm", where), where);
        s.dist.d = interval_from_json(member(row, "d", where));
        s.dist.tau = ints_from(member(row, "tau", where), where);
        s.dist.zero = boolean(member(row, "zero", where), where);
        r.table.push_back(std::move(s));
    }
    for (const auto& i : array_at(member(j, "records", where), where)) {
        long v = small_int_from_json(i, where);
        if (v < 0 || static_cast<std::size_t>(v) >= r.table.size())
            throw SchemaError(where + ": record index out of range");
        r.records.push_back(static_cast<std::size_t>(v));
    }
    for (const auto& p : array_at(member(j, "per_a", where), where))
        r.per_a.push_back({rational_from_json(member(p, "a", where), where), interval_from_json(member(p, "min_ratio", where)),
                           ints_from(member(p, "argmin", where), where)});
    r.min_norm_times_d = interval_from_json(member(j, "min_norm_times_d", where));
    r.poly_fit = fit_from(member(j, "poly_fit", where), where);
    r.exp_fit = fit_from(member(j, "exp_fit", where), where);
    for (const auto& x : array_at(member(j, "local_exponents", where), where))
        r.local_exponents.push_back(dbl_from(x, where));
    static const DispersionClass classes[] = {DispersionClass::strong_consistent, DispersionClass::weak_only_consistent,
                                              DispersionClass::liouville_suspect, DispersionClass::rejected_not_cousin};
    r.classification = enum_from(member(j, "classification", where), classes, where);
    if (!member(j, "zero_witness", where).is_null())
        r.zero_witness = ints_from(j["zero_witness"], where);
    if (!member(j, "certificate", where).is_null())
        r.certificate = liouville_from_json(j["certificate"]);
    r.note = text(member(j, "note", where), where);
    return r;
}

json to_json(const TowerReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"k", l.k},
                          {"u_k", to_json(l.u_k)},
                          {"dist_lo", to_json(l.dist_lo)},
                          {"dist_hi", to_json(l.dist_hi)},
                          {"scale", to_json(l.scale)},
                          {"dist_below_two_scale", l.dist_below_two_scale},
                          {"two_scale_below_five", l.two_scale_below_five},
                          {"dist_below_five", l.dist_below_five}});
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"q", to_json(s.q)},
                           {"k", s.k},
                           {"frac_lo", to_json(s.frac_lo)},
                           {"frac_hi", to_json(s.frac_hi)},
                           {"lower_ok", s.lower_ok},
                           {"upper_ok", s.upper_ok}});
    return {{"base", r.base},
            {"u", ints(r.u)},
            {"tail_exponent", r.tail_exponent},
            {"levels", levels},
            {"samples", samples},
            {"weak_bounds_ok", r.weak_bounds_ok},
            {"exhaustive", r.exhaustive}};
}

TowerReport tower_from_json(const json& j) {
    const std::string where = "TowerReport";
    TowerReport r;
    r.base = static_cast<int>(small_int_from_json(member(j, "base", where), where));
    r.u = ints_from(member(j, "u", where), where);
    r.tail_exponent = small_int_from_json(member(j, "tail_exponent", where), where);
    for (const auto& l : array_at(member(j, "levels", where), where))
        r.levels.push_back({static_cast<int>(small_int_from_json(member(l, "k", where), where)),
                            integer_from_json(member(l, "u_k", where), where),
                            rational_from_json(member(l, "dist_lo", where), where),
                            rational_from_json(member(l, "dist_hi", where), where),
                            rational_from_json(member(l, "scale", where), where),
                            boolean(member(l, "dist_below_two_scale", where), where),
                            boolean(member(l, "two_scale_below_five", where), where),
                            boolean(member(l, "dist_below_five", where), where)});
    for (const auto& s : array_at(member(j, "samples", where), where))
        r.samples.push_back({integer_from_json(member(s, "q", where), where),
                             static_cast<int>(small_int_from_json(member(s, "k", where), where)),
                             rational_from_json(member(s, "frac_lo", where), where),
                             rational_from_json(member(s, "frac_hi", where), where),
                             boolean(member(s, "lower_ok", where), where),
                             boolean(member(s, "upper_ok", where), where)});
    r.weak_bounds_ok = boolean(member(j, "weak_bounds_ok", where), where);
    r.exhaustive = static_cast<std::size_t>(small_int_from_json(member(j, "exhaustive", where), where));
    return r;
}

json to_json(const DimsReport& r) {
    return {{"boxes", r.boxes}, {"dims", r.dims}, {"box_independent", r.box_independent}};
}

DimsReport dims_from_json(const json& j) {
    const std::string where = "DolbeaultDims";
    DimsReport r;
    r.boxes = small_ints_from<long>(member(j, "boxes", where), where);
    for (const auto& b : array_at(member(j, "dims", where), where)) {
        std::vector<std::vector<long>> per;
        for (const auto& row : array_at(b, where))
            per.push_back(small_ints_from<long>(row, where));
        r.dims.push_back(per);
    }
    if (r.dims.size() != r.boxes.size())
        throw SchemaError(where + ": one table per box expected");
    r.box_independent = boolean(member(j, "box_independent", where), where);
    return r;
}

json to_json(const SolveReport& r) {
    return {{"contraction", r.contraction},
            {"closed", r.closed},
            {"identity_ok", r.identity_ok},
            {"eta", r.eta},
            {"harmonic", r.harmonic}};
}

SolveReport solve_from_json(const json& j) {
    const std::string where = "DolbeaultSolve";
    SolveReport r;
    r.contraction = text(member(j, "contraction", where), where);
    r.closed = boolean(member(j, "closed", where), where);
    r.identity_ok = boolean(member(j, "identity_ok", where), where);
    // forms are checked by parsing them, then kept as written
    form_from_json(member(j, "eta", where), nullptr);
    form_from_json(member(j, "harmonic", where), nullptr);
    r.eta = j["eta"];
    r.harmonic = j["harmonic"];
    return r;
}

json to_json(const HodgeReport& r) {
    json per = json::array();
    for (const auto& [sum, b] : r.per_degree)
        per.push_back(json::array({sum, b}));
    json triv = json::array();
    for (const auto& c : r.trivial)
        triv.push_back({{"I", c.I}, {"J", c.J}});
    return {{"s", r.s},
            {"t", r.t},
            {"h", r.h},
            {"b", r.b},
            {"per_degree", per},
            {"decomposition_ok", r.decomposition_ok},
            {"condition_C", r.condition_C},
            {"complement_symmetric", r.complement_symmetric},
            {"trivial_characters", triv},
            {"simple_type", to_string(r.simple_type)},
            {"simple_witness", r.simple_witness ? json(*r.simple_witness) : json(nullptr)},
            {"simple_consequences_ok", r.simple_consequences_ok ? json(*r.simple_consequences_ok) : json(nullptr)},
            {"notes", r.notes}};
}

HodgeReport hodge_from_json(const json& j) {
    const std::string where = "HodgeReport";
    HodgeReport r;
    r.s = static_cast<int>(small_int_from_json(member(j, "s", where), where));
    r.t = static_cast<int>(small_int_from_json(member(j, "t", where), where));
    for (const auto& row : array_at(member(j, "h", where), where))
        r.h.push_back(small_ints_from<long>(row, where));
    r.b = small_ints_from<long>(member(j, "b", where), where);
    for (const auto& p : array_at(member(j, "per_degree", where), where)) {
        if (!p.is_array() || p.size() != 2)
            throw SchemaError(where + ": per_degree entries are pairs");
        r.per_degree.emplace_back(small_int_from_json(p[0], where), small_int_from_json(p[1], where));
    }
    r.decomposition_ok = boolean(member(j, "decomposition_ok", where), where);
    r.condition_C = boolean(member(j, "condition_C", where), where);
    r.complement_symmetric = boolean(member(j, "complement_symmetric", where), where);
    for (const auto& c : array_at(member(j, "trivial_characters", where), where))
        r.trivial.push_back({small_ints_from<int>(member(c, "I", where), where), small_ints_from<int>(member(c, "J", where), where)});
    static const SimpleType types[] = {SimpleType::certified_simple, SimpleType::undetermined};
    r.simple_type = enum_from(member(j, "simple_type", where), types, where);
    if (!member(j, "simple_witness", where).is_null())
        r.simple_witness = text(j["simple_witness"], where);
    if (!member(j, "simple_consequences_ok", where).is_null())
        r.simple_consequences_ok = boolean(j["simple_consequences_ok"], where);
    for (const auto& n : array_at(member(j, "notes", where), where))
        r.notes.push_back(text(n, where));
    return r;
}

json to_json(const CocycleProbeReport& r) {
    const auto& w = r.witnesses;
    json items = json::array();
    for (const auto& it : w.items)
        items.push_back({{"k", it.k},
                         {"sigma", ints(it.sigma)},
                         {"tau", ints(it.tau)},
                         {"norm", it.norm},
                         {"d", to_json(it.d)},
                         {"eta", to_json(it.eta)}});
    json radii = json::array();
    for (const auto& e : r.radii.radii)
        radii.push_back({{"x", to_json(e.x)}, {"radius", dbl(e.radius)}, {"lo", dbl(e.lo)}, {"hi", dbl(e.hi)}});
    const auto& c = r.radii;
    return {{"witnesses",
             {{"a", to_json(w.a)},
              {"domain_tag", w.domain_tag},
              {"complete", w.complete},
              {"budget", w.budget},
              {"items", items}}},
            {"radii",
             {{"a", to_json(c.a)},
              {"domain_tag", c.domain_tag},
              {"item_count", c.item_count},
              {"eta_values", list(c.eta_values)},
              {"rho_estimate", dbl(c.rho_estimate)},
              {"rho_error", dbl(c.rho_error)},
              {"rho_le_a", c.rho_le_a},
              {"radii", radii},
              {"radii_increasing", c.radii_increasing},
              {"radii_below_one", c.radii_below_one},
              {"separation_ok", c.separation_ok},
              {"note", c.note}}}};
}

CocycleProbeReport cocycle_from_json(const json& j) {
    const std::string where = "CocycleReport";
    CocycleProbeReport r;
    const json& w = member(j, "witnesses", where);
    r.witnesses.a = rational_from_json(member(w, "a", where), where);
    r.witnesses.domain_tag = small_ints_from<int>(member(w, "domain_tag", where), where);
    r.witnesses.complete = boolean(member(w, "complete", where), where);
    r.witnesses.budget = small_int_from_json(member(w, "budget", where), where);
    for (const auto& it : array_at(member(w, "items", where), where))
        r.witnesses.items.push_back({static_cast<int>(small_int_from_json(member(it, "k", where), where)),
                                     ints_from(member(it, "sigma", where), where), ints_from(member(it, "tau", where), where),
                                     small_int_from_json(member(it, "norm", where), where),
                                     interval_from_json(member(it, "d", where)),
                                     interval_from_json(member(it, "eta", where))});
    const json& c = member(j, "radii", where);
    auto& o = r.radii;
    o.a = rational_from_json(member(c, "a", where), where);
    o.domain_tag = small_ints_from<int>(member(c, "domain_tag", where), where);
    o.item_count = static_cast<std::size_t>(small_int_from_json(member(c, "item_count", where), where));
    for (const auto& e : array_at(member(c, "eta_values", where), where))
        o.eta_values.push_back(interval_from_json(e));
    o.rho_estimate = dbl_from(member(c, "rho_estimate", where), where);
    o.rho_error = dbl_from(member(c, "rho_error", where), where);
    o.rho_le_a = boolean(member(c, "rho_le_a", where), where);
    for (const auto& e : array_at(member(c, "radii", where), where))
        o.radii.push_back({rational_from_json(member(e, "x", where), where), dbl_from(member(e, "radius", where), where),
                           dbl_from(member(e, "lo", where), where), dbl_from(member(e, "hi", where), where)});
    o.radii_increasing = boolean(member(c, "radii_increasing", where), where);
    o.radii_below_one = boolean(member(c, "radii_below_one", where), where);
    o.separation_ok = boolean(member(c, "separation_ok", where), where);
    o.note = text(member(c, "note", where), where);
    return r;
}

json envelope(const std::string& kind, const std::string& command, long precision_bits, json report) {
    return {{"schema", kSchema},
            {"kind", kind},
            {"command", command},
            {"precision_bits", precision_bits},
            {"conventions", {{"vector_norm", "euclidean"}, {"sigma_size", "sum of absolute values"}}},
            {"report", std::move(report)}};
}

const json& open_envelope(const json& doc, const std::string& kind) {
    const std::string where = "document";
    if (member(doc, "schema", where) != kSchema)
        throw SchemaError("document: schema must be \"" + std::string(kSchema) + "\"");
    if (member(doc, "kind", where) != kind)
        throw SchemaError("document: expected kind " + kind);
    return member(doc, "report", where);
}

json reserialize(const json& doc) {
    const std::string where = "document";
    std::string kind = text(member(doc, "kind", where), where);
    std::string command = text(member(doc, "command", where), where);
    long bits = small_int_from_json(member(doc, "precision_bits", where), where);
    const json& r = open_envelope(doc, kind);
    json out;
    if (kind == "CousinReport")
        out = to_json(cousin_from_json(r));
    else if (kind == "DispersionReport")
        out = to_json(dispersion_from_json(r));
    else if (kind == "LiouvilleCertificate")
        out = to_json(liouville_from_json(r));
    else if (kind == "TowerReport")
        out = to_json(tower_from_json(r));
    else if (kind == "DolbeaultDims")
        out = to_json(dims_from_json(r));
    else if (kind == "DolbeaultSolve")
        out = to_json(solve_from_json(r));
    else if (kind == "HodgeReport")
        out = to_json(hodge_from_json(r));
    else if (kind == "CocycleReport")
        out = to_json(cocycle_from_json(r));
    else
        throw SchemaError("document: unknown kind " + kind);
    return envelope(kind, command, bits, std::move(out));
}

} // namespace cousinlab
