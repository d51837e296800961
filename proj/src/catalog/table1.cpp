#include "crx/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace crx {

namespace {

// One (draw, n) evaluation: det(D rows) = c * det(W_D), W = copy rows times a
// nullspace basis of the interior rows.
struct Slice {
    std::map<std::string, std::vector<Scalar>> w;
    std::map<std::string, Scalar> copy_z2;
    Scalar c, interior_prod;
    std::size_t dimension = 0, tetrahedra = 0;
};

Scalar small_det(const Slice& s, const std::vector<std::string>& D) {
    Matrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = s.w.at(D[i])[j];
    return det(m);
}

Slice evaluate_slice(const Table1Options& opt, long n, const std::array<Scalar, 4>& zeta) {
    LensExample L = make_lens({opt.p, opt.q, n, opt.rep_k}, zeta);
    std::vector<std::size_t> all(L.rel.boundary.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    Matrix rows = relative_rows(L.tri, L.rep, L.rel, all);
    std::size_t ni = L.rel.interior_edges.size();
    std::vector<std::size_t> ir(ni), cols(rows.cols);
    for (std::size_t i = 0; i < ni; ++i) ir[i] = i;
    for (std::size_t j = 0; j < rows.cols; ++j) cols[j] = j;
    auto N = nullspace(rows.submatrix(ir, cols));
    if (N.size() != 4) throw CatalogError("interior rows have corank " + std::to_string(N.size()) + ", expected 4");

    Slice s;
    s.dimension = L.dimension;
    s.tetrahedra = L.rel.interior_tets.size();
    for (std::size_t d = 0; d < all.size(); ++d) {
        const std::string& name = L.rel.boundary[d].name;
        std::vector<Scalar> w(4);
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < rows.cols; ++k) w[j] += rows.at(ni + d, k) * N[j][k];
        s.w[name] = w;
        Scalar z = copy_zeta(L.tri, L.rep, L.rel.boundary[d]);
        s.copy_z2[name] = z * z;
    }
    s.interior_prod = Scalar(1);
    for (auto e : L.rel.interior_edges) {
        Scalar z = edge_zeta(L.tri, L.rep, e);
        s.interior_prod *= z * z;
    }
    auto names = copy_names(L);
    std::vector<std::string> D(4);
    std::vector<bool> pick(names.size(), false);
    std::fill(pick.begin(), pick.begin() + 4, true);
    do {
        D.clear();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (pick[i]) D.push_back(names[i]);
        Scalar sd = small_det(s, D);
        if (!sd.is_zero()) {
            Scalar full = det(build_relative_f3(L.tri, L.rep, L.rel, dset_indices(L, D)));
            s.c = full / sd;
            return s;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    s.c = Scalar(0);
    return s;
}

Scalar slice_value(const Slice& s, const std::vector<std::string>& D) {
    Scalar v = s.c * small_det(s, D);
    if (v.is_zero()) return v;
    Scalar prod = s.interior_prod;
    for (auto& d : D) prod *= s.copy_z2.at(d);
    return v / prod;
}

// Each component is a separate invariant, so each carries its own sign.
bool proportional(const std::vector<Scalar>& v, const std::vector<Scalar>& target) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!equal_up_to_sign(v[i], target[i])) return false;
    return true;
}

bool one_sign(const std::vector<Scalar>& v, const std::vector<Scalar>& target) {
    for (int sign : {1, -1}) {
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i) ok = v[i] == Scalar(sign) * target[i];
        if (ok) return true;
    }
    return false;
}

}  // namespace

Table1Result table1_search(const Table1Options& opt) {
    Table1Result res;
    res.p = opt.p;
    res.q = opt.q;
    std::vector<long> ns;
    for (long n = 1; n <= std::min<long>(3, opt.p - 1); ++n) ns.push_back(n);
    if (ns.empty()) throw CatalogError("p must be at least 2");
    FieldPtr field = real_cyclotomic_field(opt.p);
    std::mt19937_64 rng(opt.seed);

    int draws = std::max(1, opt.draws);
    std::vector<std::map<int, Scalar>> zetas(static_cast<std::size_t>(draws));
    std::vector<std::vector<Slice>> slices(static_cast<std::size_t>(draws), std::vector<Slice>(ns.size()));
    for (int d = 0; d < draws; ++d) {
        for (int attempt = 0;; ++attempt) {
            auto z = random_zetas(rng, 4, field);
            std::array<Scalar, 4> za{z[0], z[1], z[2], z[3]};
            std::atomic<std::size_t> next{0};
            std::exception_ptr err;
            std::mutex mu;
            auto worker = [&] {
                for (std::size_t j; (j = next++) < ns.size();) {
                    try {
                        slices[d][j] = evaluate_slice(opt, ns[j], za);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(mu);
                        if (!err) err = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            unsigned workers = std::max(1u, std::min<unsigned>(opt.parallelism, static_cast<unsigned>(ns.size())));
            for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            if (!err) {
                for (int i = 0; i < 4; ++i) zetas[d][i + 1] = za[i];
                break;
            }
            try {
                std::rethrow_exception(err);
            } catch (const GenericityError&) {
                if (attempt >= 20) throw;
            }
        }
    }

    res.dimension = slices[0][0].dimension;
    res.tetrahedra = slices[0][0].tetrahedra;
    res.square = res.dimension == res.tetrahedra;
    for (auto& [name, w] : slices[0][0].w) res.copies.push_back(name);

    auto monos = table1_candidate_monomials();
    auto reference = table1_reference(opt.p, opt.q);
    for (auto& r : reference) res.rows.push_back({r, {}, {}, {}});

    // values[d][n]
    std::vector<bool> pick(res.copies.size(), false);
    std::fill(pick.begin(), pick.begin() + std::min<std::size_t>(4, pick.size()), true);
    do {
        std::vector<std::string> D;
        for (std::size_t i = 0; i < pick.size(); ++i)
            if (pick[i]) D.push_back(res.copies[i]);
        ++res.subsets;
        std::vector<std::vector<Scalar>> vals(static_cast<std::size_t>(draws));
        bool zero = true;
        for (int d = 0; d < draws; ++d)
            for (std::size_t j = 0; j < ns.size(); ++j) {
                vals[d].push_back(slice_value(slices[d][j], D));
                if (!vals[d].back().is_zero()) zero = false;
            }
        if (zero) {
            ++res.zero_subsets;
            continue;
        }
        Table1Subset sub{D, vals[0], {}};
        for (std::size_t mi = 0; mi < monos.size(); ++mi) {
            std::vector<std::vector<Scalar>> quo(static_cast<std::size_t>(draws));
            for (int d = 0; d < draws; ++d) {
                Scalar m = eval_monomial(monos[mi], zetas[d]);
                for (auto& v : vals[d]) quo[d].push_back(v / m);
            }
            bool constant = true;
            for (int d = 1; d < draws && constant; ++d) constant = proportional(quo[d], quo[0]);
            if (constant) sub.constants.emplace_back(mi, quo[0]);
        }
        for (auto& row : res.rows) {
            if (ns.size() != 3) break;
            std::vector<Scalar> triple{Scalar(row.row.triple[0]), Scalar(row.row.triple[1]), Scalar(row.row.triple[2])};
            for (auto& [mi, q] : sub.constants) {
                if (!proportional(q, triple)) continue;
                if (monos[mi] == row.row.monomial) {
                    row.with_monomial.push_back(D);
                    if (one_sign(q, triple)) row.single_sign.push_back(D);
                }
                else
                    row.other.emplace_back(D, mi);
            }
        }
        res.nonzero.push_back(std::move(sub));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return res;
}

}  // namespace crx
