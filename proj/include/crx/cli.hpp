#pragma once

#include "crx/catalog.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crx {

struct ParseError : std::runtime_error {
    ParseError(const std::string& source, std::size_t line, const std::string& msg)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line(line) {}
    std::size_t line;
};

// Parsed triangulation file. Representation presets keep their name so that
// --lambda can rebuild them.
struct Document {
    std::string source = "<input>";
    FieldPtr field = Field::rationals();
    Triangulation tri;
    Representation rep;
    Deformation defo;
    std::vector<AlgebraVector> stab;
    bool stab_auto = true;
    std::string preset;  // "", "trivial", "s2xs1_nonparabolic", "s2xs1_parabolic"
    Scalar lambda{2};
    std::optional<std::array<std::size_t, 2>> distinguished;
    std::vector<std::string> dset;
};

Document parse_document(std::istream& in, const std::string& source);
Document load_document(const std::string& path);
std::string format_document(const Document& d);
Document document_from(const ClosedExample& ex);

// Rebuilds representation, deformation and stabilizer for a preset.
void set_lambda(Document& d, const Scalar& lambda);
// New vertex coordinates, everything else kept.
Document with_zeta(const Document& d, const std::map<int, Scalar>& zeta);

FieldPtr parse_field_spec(const std::string& spec);
std::string field_spec(const FieldPtr& f);

struct RunConfig {
    std::uint64_t seed = 1;
    int trials = 5;
    bool json = false;
    unsigned parallelism = 1;
    std::optional<FieldPtr> field;
    std::optional<Scalar> lambda;
    int moves = 5;
    std::optional<std::pair<std::size_t, std::size_t>> corrupt_f3;
};

enum ExitCode { kOk = 0, kInputError = 1, kMathFailure = 2, kInternal = 3 };

struct Report {
    int code = kOk;
    std::string text;
    std::string json;  // serialized, schema 1
};

Report cmd_invariant(const Document& doc, const RunConfig& cfg);
Report cmd_lens_invariant(const LensSpec& spec, const std::vector<std::string>& dset, const RunConfig& cfg);
Report cmd_verify(const Document& doc, const RunConfig& cfg);
Report cmd_pachner_fuzz(const Document& doc, const RunConfig& cfg);
Report cmd_table1(long p, long q, long rep_k, const RunConfig& cfg);
// Emits a catalog object in the text format; lens uses `lens`.
Report cmd_catalog(const std::string& name, const LensSpec& lens, const RunConfig& cfg);

}  // namespace crx
