#pragma once

#include "cousinlab/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cousinlab {

// One invocation. Commands: cousin-check, dispersion-scan, liouville-cert,
// tower-check, dolbeault-dims, dolbeault-solve, ot-hodge, cocycle-probe.
struct JobSpec {
    std::string command;
    std::string input_path;
    std::string output_path; // empty: stdout
    long precision_bits = 256;
    std::string format = "json"; // json, csv or table
    unsigned long seed = 0;
    unsigned threads = 0;
    long max_sigma = 100;
    std::vector<Rational> a_grid;
    std::optional<Rational> a;
    std::vector<Rational> xs;
    std::vector<long> boxes;
    int k_max = 10;
    bool certificate = false;
    bool skip_cousin_check = false;
    bool unconjugated = false;
    bool plot = false;
    bool no_cache = false;
};

// Exact value of a flag: "p/q" or a plain decimal such as 0.25 (read as 1/4).
Rational parse_flag_number(const std::string& s);

// argv without the program name. "ot hodge" and "cocycle probe" are accepted
// for ot-hodge and cocycle-probe. Throws SchemaError on bad flags.
JobSpec parse_job(const std::vector<std::string>& args);

// Computes the output document for a job without touching the cache.
std::string execute(const JobSpec& job);

// Hex SHA-256 over the canonical input document, the command, the precision
// and every flag that can change the output.
std::string cache_key(const JobSpec& job, const std::string& canonical_input);

// Validates, consults COUSINLAB_CACHE_DIR, computes and writes the output.
// Returns the exit status: 0 ok, 2 schema, 3 precondition, 4 precision cap,
// 5 resource limit, 1 anything else. Nothing is written on failure.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cousinlab
