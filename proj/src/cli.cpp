#include "cousinlab/cli.hpp"

#include "cousinlab/errors.hpp"
#include "cousinlab/parallel.hpp"
#include "cousinlab/serialization.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

namespace cousinlab {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCommands = {"cousin-check",   "dispersion-scan", "liouville-cert", "tower-check",
                                            "dolbeault-dims", "dolbeault-solve", "ot-hodge",       "cocycle-probe"};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::string join_ints(const std::vector<Integer>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + v[i].get_str();
    return s;
}

std::string join_small(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SchemaError("cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_input(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("input is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SchemaError("input must be a JSON object");
    if (!j.contains("schema") || j["schema"] != kSchema)
        throw SchemaError("input needs \"schema\": \"" + std::string(kSchema) + "\"");
    return j;
}

// Writes through a sibling temporary so that a failed run leaves nothing behind.
void write_atomic(const fs::path& path, const std::string& data) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ResourceError("cannot write '" + tmp.string() + "'");
        out << data;
        if (!out.flush())
            throw ResourceError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
}

const json& section(const json& in, const char* key) {
    if (!in.contains(key))
        throw SchemaError(std::string("input: missing \"") + key + "\"");
    return in[key];
}

std::optional<FieldRef> matrix_field(const json& in) {
    const json& pm = section(in, "period_matrix");
    if (pm.is_object() && pm.contains("field"))
        return field_from_json(pm["field"], "period_matrix.field");
    return std::nullopt;
}

struct Output {
    std::string kind;
    json report;
    std::string csv, table;
};

Output cousin_check(const JobSpec&, const json& in) {
    PeriodMatrix P = period_matrix_from_json(section(in, "period_matrix"));
    CousinCertificate c = is_cousin(P);
    Output o{"CousinReport", to_json(c), "", ""};
    o.csv = "verdict,sigma,tau\n" + std::string(c.cousin ? "cousin" : "not_cousin") + "," + join_ints(c.sigma) + "," +
            join_ints(c.tau) + "\n";
    o.table = "verdict: " + std::string(c.cousin ? "cousin" : "not_cousin") + "\n";
    if (!c.cousin)
        o.table += "witness sigma: " + join_ints(c.sigma) + "\nwitness tau: " + join_ints(c.tau) + "\n";
    return o;
}

Output dispersion_scan_cmd(const JobSpec& job, const json& in) {
    DispersionQuery q{period_matrix_from_json(section(in, "period_matrix")), job.max_sigma, job.a_grid,
                      job.precision_bits, job.skip_cousin_check, job.certificate};
    DispersionReport r = dispersion_scan(q);
    Output o{"DispersionReport", to_json(r), "", ""};
    std::ostringstream csv;
    if (job.plot) {
        // record minima, for external plotting
        csv << "norm,log10_d\n";
        for (auto i : r.records) {
            const auto& row = r.table[i];
            if (!row.dist.zero)
                csv << row.norm << "," << num(std::log10(row.dist.d.mid_double())) << "\n";
        }
    } else {
        csv << "sigma,norm,d_lo,d_hi,tau\n";
        for (const auto& row : r.table)
            csv << join_ints(row.sigma) << "," << row.norm << "," << num(row.dist.d.lo_double()) << ","
                << num(row.dist.d.hi_double()) << "," << join_ints(row.dist.tau) << "\n";
    }
    o.csv = csv.str();
    std::ostringstream t;
    t << "classification: " << to_string(r.classification) << " (heuristic unless certified)\n";
    t << "rows: " << r.table.size() << ", records: " << r.records.size() << "\n";
    t << "min |sigma| d: [" << num(r.min_norm_times_d.lo_double()) << ", " << num(r.min_norm_times_d.hi_double())
      << "]\n";
    for (const auto& p : r.per_a)
        t << "a = " << to_string(p.a) << ": min d / a^|sigma| >= " << num(p.min_ratio.lo_double()) << " at sigma "
          << join_ints(p.argmin) << "\n";
    if (r.poly_fit.valid)
        t << "poly fit: A = " << num(r.poly_fit.slope) << ", residual " << num(r.poly_fit.residual) << "\n";
    if (r.exp_fit.valid)
        t << "exp fit: log a = " << num(r.exp_fit.slope) << ", residual " << num(r.exp_fit.residual) << "\n";
    if (r.certificate)
        t << "certificate: d (1+|sigma|)^" << -r.certificate->A << " >= " << to_string(r.certificate->C) << "\n";
    if (!r.note.empty())
        t << "note: " << r.note << "\n";
    o.table = t.str();
    return o;
}

Output liouville_cmd(const JobSpec& job, const json& in) {
    LiouvilleCertificate c = liouville_certificate(period_matrix_from_json(section(in, "period_matrix")), job.a_grid);
    Output o{"LiouvilleCertificate", to_json(c), "", ""};
    o.csv = "a,C_a\n";
    for (const auto& [a, C] : c.strong)
        o.csv += to_string(a) + "," + to_string(C) + "\n";
    std::ostringstream t;
    t << "d(sigma) >= C (1 + |sigma|)^" << c.A << "\nC = " << to_string(c.C) << " (~" << num(c.C.get_d()) << ")\n";
    t << "degree " << c.degree << ", denominator D = " << c.D.get_str() << ", home embedding " << c.home_embedding
      << "\n";
    for (const auto& [a, C] : c.strong)
        t << "a = " << to_string(a) << ": C(a) = " << num(C.get_d()) << "\n";
    o.table = t.str();
    return o;
}

Output tower_cmd(const JobSpec& job, const json& in) {
    const json& t = section(in, "tower");
    long base = small_int_from_json(section(t, "base"), "tower.base");
    if (base < 2 || base > 1000)
        throw SchemaError("tower.base must lie in 2..1000");
    Integer q_max = integer_from_json(section(t, "q_max"), "tower.q_max");
    long samples = t.contains("samples") ? small_int_from_json(t["samples"], "tower.samples") : 1000;
    if (samples < 1)
        throw SchemaError("tower.samples must be positive");
    TowerReport r = tower_alpha_check(static_cast<int>(base), q_max, static_cast<std::size_t>(samples), job.seed,
                                      job.precision_bits);
    Output o{"TowerReport", to_json(r), "", ""};
    std::ostringstream csv;
    csv << "q,k,frac_lo,frac_hi,lower_ok,upper_ok\n";
    for (const auto& s : r.samples)
        csv << s.q.get_str() << "," << s.k << "," << num(s.frac_lo.get_d()) << "," << num(s.frac_hi.get_d()) << ","
            << s.lower_ok << "," << s.upper_ok << "\n";
    o.csv = csv.str();
    std::ostringstream tb;
    tb << "base " << r.base << ", tail exponent " << r.tail_exponent << "\n";
    for (const auto& l : r.levels)
        tb << "k = " << l.k << ", q = " << l.u_k.get_str() << ": inf_p |q alpha - p| in [" << num(l.dist_lo.get_d())
           << ", " << num(l.dist_hi.get_d()) << "], below 5^-q: " << (l.dist_below_five ? "yes" : "no") << "\n";
    tb << r.samples.size() << " samples, weak bounds " << (r.weak_bounds_ok ? "hold" : "FAIL") << "\n";
    o.table = tb.str();
    return o;
}

Output dims_cmd(const JobSpec& job, const json& in) {
    PeriodMatrix P = period_matrix_from_json(section(in, "period_matrix"));
    DimsReport r;
    r.boxes = job.boxes.empty() ? std::vector<long>{1} : job.boxes;
    for (long b : r.boxes) {
        if (b < 0 || b > 20)
            throw SchemaError("--box values must lie in 0..20");
        std::vector<std::vector<long>> d(P.n + 1, std::vector<long>(P.m + 1));
        for (int p = 0; p <= P.n; ++p)
            for (int q = 0; q <= P.m; ++q)
                d[p][q] = cohomology_dims(P, p, q, b);
        if (!r.dims.empty() && d != r.dims.front())
            r.box_independent = false;
        r.dims.push_back(d);
    }
    Output o{"DolbeaultDims", to_json(r), "", ""};
    std::ostringstream csv, t;
    csv << "box,p,q,dim\n";
    for (std::size_t i = 0; i < r.boxes.size(); ++i) {
        t << "box " << r.boxes[i] << " (rows p, columns q):\n";
        for (std::size_t p = 0; p < r.dims[i].size(); ++p) {
            for (std::size_t q = 0; q < r.dims[i][p].size(); ++q) {
                csv << r.boxes[i] << "," << p << "," << q << "," << r.dims[i][p][q] << "\n";
                t << std::setw(6) << r.dims[i][p][q];
            }
            t << "\n";
        }
    }
    t << "box independent: " << (r.box_independent ? "yes" : "no") << "\n";
    o.csv = csv.str();
    o.table = t.str();
    return o;
}

Output solve_cmd(const JobSpec& job, const json& in) {
    PeriodMatrix P = period_matrix_from_json(section(in, "period_matrix"));
    auto F = matrix_field(in);
    FourierPQForm f = form_from_json(section(in, "form"), F ? &*F : nullptr);
    if (f.n() != P.n || f.m() != P.m)
        throw SchemaError("form dimensions do not match the period matrix");
    Contraction kind = job.unconjugated ? Contraction::unconjugated : Contraction::hermitian;
    SolveReport r;
    r.contraction = job.unconjugated ? "unconjugated" : "hermitian";
    r.closed = dbar(f, P).is_zero();
    FourierPQForm eta = homotopy_eta(f, P, kind);
    FourierPQForm h = harmonic_part(f);
    r.identity_ok = dbar(eta, P) + h == f;
    r.eta = form_to_json(eta);
    r.harmonic = form_to_json(h);
    Output o{"DolbeaultSolve", to_json(r), "", ""};
    std::ostringstream csv;
    csv << "part,pi,rho,sigma,I,J,re,im\n";
    auto rows = [&](const char* part, const FourierPQForm& g) {
        for (const auto& [k, c] : g.terms()) {
            std::vector<int> I(k.I.begin(), k.I.end()), J(k.J.begin(), k.J.end());
            csv << part << "," << join_ints(k.c.pi) << "," << join_ints(k.c.rho) << "," << join_ints(k.c.sigma) << ","
                << join_small(I) << "," << join_small(J) << "," << c.re.to_string() << "," << c.im.to_string() << "\n";
        }
    };
    rows("eta", eta);
    rows("harmonic", h);
    o.csv = csv.str();
    o.table = "contraction: " + r.contraction + "\neta terms: " + std::to_string(eta.terms().size()) +
              "\nharmonic terms: " + std::to_string(h.terms().size()) +
              "\ndbar(eta) + harmonic == f: " + (r.identity_ok ? "yes" : "no") + "\n";
    return o;
}

std::string diamond(const HodgeReport& r) {
    int n = r.s + r.t;
    std::ostringstream t;
    const int w = 4;
    for (int l = 2 * n; l >= 0; --l) {
        int lo = std::max(0, l - n), hi = std::min(l, n);
        int count = hi - lo + 1;
        t << std::string(static_cast<std::size_t>((n + 1 - count) * w / 2), ' ');
        for (int p = hi; p >= lo; --p)
            t << std::setw(w) << r.h[p][l - p];
        t << "\n";
    }
    return t.str();
}

Output hodge_cmd(const JobSpec&, const json& in) {
    HodgeReport r = hodge_report(ot_datum_from_json(in));
    Output o{"HodgeReport", to_json(r), "", ""};
    o.csv = "I,J\n";
    for (const auto& c : r.trivial)
        o.csv += join_small(c.I) + "," + join_small(c.J) + "\n";
    std::ostringstream t;
    t << "s = " << r.s << ", t = " << r.t << "\nHodge diamond (h^{p,q}, top row p + q = " << 2 * (r.s + r.t)
      << "):\n"
      << diamond(r) << "Betti:";
    for (long b : r.b)
        t << " " << b;
    t << "\nCondition C: " << (r.condition_C ? "yes" : "no") << "\nsimple type: " << to_string(r.simple_type);
    if (r.simple_witness)
        t << " (" << *r.simple_witness << ")";
    t << "\n";
    for (const auto& n : r.notes)
        t << "note: " << n << "\n";
    o.table = t.str();
    return o;
}

WitnessSequence synthetic_witnesses(const json& w) {
    const std::string where = "witnesses";
    WitnessSequence s;
    s.a = rational_from_json(section(w, "a"), where + ".a");
    if (!(s.a > 0 && s.a < 1))
        throw SchemaError(where + ".a must lie strictly inside (0, 1)");
    const json& items = section(w, "items");
    if (!items.is_array())
        throw SchemaError(where + ".items must be an array");
    int k = 0;
    for (const auto& it : items) {
        WitnessItem x;
        x.k = ++k;
        for (const auto& e : section(it, "sigma"))
            x.sigma.push_back(integer_from_json(e, where + ".sigma"));
        if (x.sigma.empty())
            throw SchemaError(where + ": empty sigma");
        x.norm = l1_norm(x.sigma).get_si();
        Rational eta = rational_from_json(section(it, "eta"), where + ".eta");
        if (eta <= 0)
            throw SchemaError(where + ": eta must be positive");
        x.eta = Interval(eta, 128);
        // only eta enters the radius estimate; d defaults to eta
        x.d = it.contains("d") ? Interval(rational_from_json(it["d"], where + ".d"), 128) : x.eta;
        if (!s.items.empty() && x.norm <= s.items.back().norm)
            throw SchemaError(where + ": |sigma| must increase strictly");
        s.items.push_back(std::move(x));
    }
    s.domain_tag.assign(s.items.empty() ? 0 : s.items.front().sigma.size(), 1);
    if (w.contains("domain_tag"))
        s.domain_tag = w["domain_tag"].get<std::vector<int>>();
    s.complete = true;
    s.budget = s.items.empty() ? 0 : s.items.back().norm;
    return s;
}

Output cocycle_cmd(const JobSpec& job, const json& in) {
    CocycleProbeReport r;
    if (in.contains("witnesses")) {
        r.witnesses = synthetic_witnesses(in["witnesses"]);
        if (job.a && *job.a != r.witnesses.a)
            throw SchemaError("--a disagrees with witnesses.a");
    } else {
        if (!job.a)
            throw SchemaError("cocycle-probe needs --a");
        PeriodMatrix P = period_matrix_from_json(section(in, "period_matrix"));
        r.witnesses = find_witnesses(P, *job.a, job.k_max, job.max_sigma, job.skip_cousin_check);
    }
    std::vector<Rational> xs = job.xs.empty() ? std::vector<Rational>{ratio(1, 4), ratio(1, 2), ratio(3, 4)} : job.xs;
    r.radii = radius_report(xs, r.witnesses);
    Output o{"CocycleReport", to_json(r), "", ""};
    std::ostringstream csv, t;
    csv << "x,radius,lo,hi\n";
    for (const auto& e : r.radii.radii)
        csv << to_string(e.x) << "," << num(e.radius) << "," << num(e.lo) << "," << num(e.hi) << "\n";
    t << "items: " << r.radii.item_count << ", rho ~ " << num(r.radii.rho_estimate) << " +- " << num(r.radii.rho_error)
      << "\n";
    for (const auto& e : r.radii.radii)
        t << "x = " << to_string(e.x) << ": radius ~ " << num(e.radius) << " in [" << num(e.lo) << ", " << num(e.hi)
          << "]\n";
    t << "separated: " << (r.radii.separation_ok ? "yes" : "no") << "\n" << r.radii.note << "\n";
    o.csv = csv.str();
    o.table = t.str();
    return o;
}

std::string render(const JobSpec& job, const Output& o) {
    if (job.format == "csv")
        return o.csv;
    if (job.format == "table")
        return o.table;
    return envelope(o.kind, job.command, job.precision_bits, o.report).dump(2) + "\n";
}

std::string execute_on(const JobSpec& job, const json& in) {
    PrecisionPolicy::global().start_bits = job.precision_bits;
    thread_setting() = job.threads;
    Output o;
    if (job.command == "cousin-check")
        o = cousin_check(job, in);
    else if (job.command == "dispersion-scan")
        o = dispersion_scan_cmd(job, in);
    else if (job.command == "liouville-cert")
        o = liouville_cmd(job, in);
    else if (job.command == "tower-check")
        o = tower_cmd(job, in);
    else if (job.command == "dolbeault-dims")
        o = dims_cmd(job, in);
    else if (job.command == "dolbeault-solve")
        o = solve_cmd(job, in);
    else if (job.command == "ot-hodge")
        o = hodge_cmd(job, in);
    else if (job.command == "cocycle-probe")
        o = cocycle_cmd(job, in);
    else
        throw SchemaError("unknown command '" + job.command + "'");
    return render(job, o);
}

void validate_job(const JobSpec& job) {
    if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
        throw SchemaError("unknown command '" + job.command + "'");
    if (job.format != "json" && job.format != "csv" && job.format != "table")
        throw SchemaError("--format must be json, csv or table");
    if (job.precision_bits < 64 || job.precision_bits > PrecisionPolicy::global().cap_bits)
        throw SchemaError("--precision-bits must lie in [64, " + std::to_string(PrecisionPolicy::global().cap_bits) +
                          "]");
    if (job.input_path.empty())
        throw SchemaError("--input is required");
    if (!fs::is_regular_file(job.input_path))
        throw SchemaError("input file '" + job.input_path + "' does not exist");
    if (!job.output_path.empty()) {
        fs::path parent = fs::path(job.output_path).parent_path();
        if (!parent.empty() && !fs::is_directory(parent))
            throw SchemaError("output directory '" + parent.string() + "' does not exist");
    }
    if (job.max_sigma < 1)
        throw SchemaError("--max-sigma must be positive");
    if (job.k_max < 1)
        throw SchemaError("--k-max must be positive");
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

json rationals_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v)
        a.push_back(to_string(q));
    return a;
}

} // namespace

Rational parse_flag_number(const std::string& s) {
    static const std::regex decimal(R"(^([+-]?)(\d+)\.(\d+)$)");
    std::smatch m;
    if (std::regex_match(s, m, decimal)) {
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, m[3].str().size());
        Rational q(Integer(m[2].str() + m[3].str(), 10), scale);
        q.canonicalize();
        return m[1] == "-" ? Rational(-q) : q;
    }
    return parse_rational(s);
}

JobSpec parse_job(const std::vector<std::string>& args_in) {
    std::vector<std::string> args = args_in;
    if (args.size() >= 2 && ((args[0] == "ot" && args[1] == "hodge") || (args[0] == "cocycle" && args[1] == "probe") ||
                             (args[0] == "dolbeault" && (args[1] == "dims" || args[1] == "solve")))) {
        args[0] += "-" + args[1];
        args.erase(args.begin() + 1);
    }
    JobSpec job;
    std::string a_grid, a, xs, boxes;
    CLI::App app{"cousinlab"};
    app.add_option("command", job.command, "one of: cousin-check dispersion-scan liouville-cert tower-check "
                                           "dolbeault-dims dolbeault-solve ot-hodge cocycle-probe")
        ->required();
    app.add_option("--input", job.input_path, "input JSON document (cousinlab/1)");
    app.add_option("--output", job.output_path, "output file (default stdout)");
    app.add_option("--precision-bits", job.precision_bits, "starting working precision");
    app.add_option("--format", job.format, "json, csv or table");
    app.add_option("--seed", job.seed, "seed for sampled checks");
    app.add_option("--threads", job.threads, "worker cap, 0 = hardware concurrency");
    app.add_option("--max-sigma", job.max_sigma, "largest |sigma| scanned");
    app.add_option("--a-grid", a_grid, "comma separated values of a in (0, 1)");
    app.add_option("--a", a, "decay parameter for cocycle-probe");
    app.add_option("--xs", xs, "comma separated exponents x in (0, 1)");
    app.add_option("--box", boxes, "comma separated truncation boxes");
    app.add_option("--k-max", job.k_max, "number of witness items wanted");
    app.add_flag("--certificate", job.certificate, "attach the norm certificate to a scan");
    app.add_flag("--skip-cousin-check", job.skip_cousin_check, "scan even if the lattice is not Cousin");
    app.add_flag("--unconjugated", job.unconjugated, "use the unconjugated contraction");
    app.add_flag("--plot", job.plot, "csv: two-column record minima instead of the full table");
    app.add_flag("--no-cache", job.no_cache, "ignore COUSINLAB_CACHE_DIR");
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw SchemaError(std::string("command line: ") + e.what());
    }
    for (const auto& s : split_list(a_grid))
        job.a_grid.push_back(parse_flag_number(s));
    for (const auto& q : job.a_grid)
        if (!(q > 0 && q < 1))
            throw SchemaError("--a-grid values must lie strictly inside (0, 1)");
    if (!a.empty())
        job.a = parse_flag_number(a);
    for (const auto& s : split_list(xs))
        job.xs.push_back(parse_flag_number(s));
    for (const auto& s : split_list(boxes)) {
        Rational b = parse_rational(s);
        if (b.get_den() != 1 || !b.get_num().fits_slong_p())
            throw SchemaError("--box values must be integers");
        job.boxes.push_back(b.get_num().get_si());
    }
    return job;
}

std::string execute(const JobSpec& job) {
    validate_job(job);
    return execute_on(job, load_input(job.input_path));
}

std::string cache_key(const JobSpec& job, const std::string& canonical_input) {
    json k = {{"command", job.command},
              {"input", canonical_input},
              {"precision_bits", job.precision_bits},
              {"format", job.format},
              {"seed", job.seed},
              {"max_sigma", job.max_sigma},
              {"a_grid", rationals_json(job.a_grid)},
              {"a", job.a ? json(to_string(*job.a)) : json(nullptr)},
              {"xs", rationals_json(job.xs)},
              {"boxes", job.boxes},
              {"k_max", job.k_max},
              {"certificate", job.certificate},
              {"skip_cousin_check", job.skip_cousin_check},
              {"unconjugated", job.unconjugated},
              {"plot", job.plot}};
    return sha256_hex(kSchema + std::string("\n") + k.dump());
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    long saved_bits = PrecisionPolicy::global().start_bits;
    unsigned saved_threads = thread_setting();
    int status = 0;
    try {
        validate_job(job);
        json in = load_input(job.input_path);
        std::string text;
        const char* dir = std::getenv("COUSINLAB_CACHE_DIR");
        fs::path cached;
        if (dir && *dir && !job.no_cache) {
            cached = fs::path(dir) / (cache_key(job, in.dump()) + ".out");
            if (fs::is_regular_file(cached))
                text = read_file(cached.string());
        }
        if (text.empty()) {
            text = execute_on(job, in);
            if (!cached.empty()) {
                fs::create_directories(cached.parent_path());
                write_atomic(cached, text);
            }
        }
        if (job.output_path.empty())
            out << text << std::flush;
        else
            write_atomic(job.output_path, text);
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        status = 2;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        status = 3;
    } catch (const PrecisionCapError& e) {
        err << "undecided at the precision cap: " << e.what() << "\n";
        status = 4;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        status = 5;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        status = 1;
    }
    PrecisionPolicy::global().start_bits = saved_bits;
    thread_setting() = saved_threads;
    return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobSpec job;
    try {
        job = parse_job(args);
    } catch (const CLI::CallForHelp&) {
        out << "usage: cousinlab <command> --input FILE [--output FILE] [--format json|csv|table]\n"
               "       [--precision-bits N] [--seed N] [--threads N] [--max-sigma N] [--a-grid LIST]\n"
               "       [--a A] [--xs LIST] [--box LIST] [--k-max N] [--certificate]\n"
               "       [--skip-cousin-check] [--unconjugated] [--plot] [--no-cache]\n"
               "commands: cousin-check dispersion-scan liouville-cert tower-check dolbeault-dims\n"
               "          dolbeault-solve ot-hodge cocycle-probe\n";
        return 0;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "schema error: " << e.what() << "\n";
        return 2;
    }
    return run(job, out, err);
}

} // namespace cousinlab
