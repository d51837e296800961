#include "crx/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace crx;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');)
        if (!x.empty()) out.push_back(x);
    return out;
}

int emit(const Report& r, bool json) {
    std::cout << (json ? r.json : r.text);
    return r.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-ratio torsion invariants of triangulated 3-manifolds"};
    app.require_subcommand(1);

    std::string file, field, lambda, dset, corrupt;
    RunConfig cfg;
    long p = 7, q = 1, n = 1, rep_k = 0;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", cfg.seed, "seed for random vertex coordinates");
        c->add_flag("--json", cfg.json, "JSON report");
        c->add_option("--field", field, "field for random draws: rationals | real_cyclotomic P | number_field [c0, ...]");
        c->add_option("--parallelism", cfg.parallelism, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* inv = app.add_subcommand("invariant", "compute the invariant of a triangulation file, or a lens relative invariant");
    inv->add_option("file", file, "triangulation file");
    inv->add_option("--lambda", lambda, "override lambda of the s2xs1_nonparabolic preset");
    inv->add_option("--p", p, "lens p");
    inv->add_option("--q", q, "lens q");
    inv->add_option("--n", n, "lens n");
    inv->add_option("--rep-k", rep_k, "lens representation: trace 2cos(2 pi k/p), 0 trivial");
    inv->add_option("--dset", dset, "boundary edges e1,e2,e3,e4 for a relative run");
    common(inv);

    auto* ver = app.add_subcommand("verify", "run the verification suites on a triangulation file");
    ver->add_option("file", file, "triangulation file")->required();
    ver->add_option("--lambda", lambda, "override lambda");
    ver->add_option("--trials", cfg.trials, "zeta redraws");
    ver->add_option("--corrupt-f3", corrupt, "debug: add 1 to f3 entry ROW,COL");
    common(ver);

    auto* fuzz = app.add_subcommand("pachner-fuzz", "random 2-3 and 1-4 moves with ratio and invariance checks");
    fuzz->add_option("file", file, "triangulation file")->required();
    fuzz->add_option("--lambda", lambda, "override lambda");
    fuzz->add_option("--moves", cfg.moves, "number of moves")->check(CLI::NonNegativeNumber);
    common(fuzz);

    auto* t1 = app.add_subcommand("table1", "lens-space boundary subset search");
    t1->add_option("--p", p, "p");
    t1->add_option("--q", q, "q");
    t1->add_option("--rep-k", rep_k, "representation parameter");
    common(t1);

    std::string name;
    auto* cat = app.add_subcommand("catalog", "print a catalog object in the text format");
    cat->add_option("name", name, "s2xs1_nonparabolic | s2xs1_parabolic | doubled_tetrahedron | lens")->required();
    cat->add_option("--lambda", lambda, "lambda for s2xs1_nonparabolic");
    cat->add_option("--p", p, "lens p");
    cat->add_option("--q", q, "lens q");
    cat->add_option("--n", n, "lens n");
    cat->add_option("--rep-k", rep_k, "lens representation parameter");
    common(cat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        Document doc;
        try {
            if (!field.empty()) cfg.field = parse_field_spec(field);
            if (!lambda.empty()) cfg.lambda = Scalar::parse(lambda, cfg.field.value_or(nullptr));
            if (!corrupt.empty()) {
                auto rc = split_commas(corrupt);
                if (rc.size() != 2) throw CatalogError("--corrupt-f3 expects ROW,COL");
                cfg.corrupt_f3 = std::make_pair(std::stoul(rc[0]), std::stoul(rc[1]));
            }
            if (!file.empty()) {
                doc = load_document(file);
                if (!dset.empty()) doc.dset = split_commas(dset);
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        }

        LensSpec lens{p, q, n, rep_k};
        Report r;
        try {
            if (*inv) {
                if (!file.empty())
                    r = cmd_invariant(doc, cfg);
                else if (!dset.empty())
                    r = cmd_lens_invariant(lens, split_commas(dset), cfg);
                else
                    throw CatalogError("invariant needs a file or --dset for a lens space");
            } else if (*ver)
                r = cmd_verify(doc, cfg);
            else if (*fuzz)
                r = cmd_pachner_fuzz(doc, cfg);
            else if (*t1)
                r = cmd_table1(p, q, rep_k, cfg);
            else
                r = cmd_catalog(name, lens, cfg);
        } catch (const ParseError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        } catch (const CatalogError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        } catch (const TriangulationError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        } catch (const GenericityError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        } catch (const NotAcyclic& e) {
            std::cerr << "not acyclic: " << e.what() << "\n";
            return kMathFailure;
        } catch (const TorsionError& e) {
            std::cerr << "torsion failure: " << e.what() << "\n";
            return kMathFailure;
        } catch (const ComplexError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kInputError;
        }
        return emit(r, cfg.json);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
