#include "greensphere/modlin.hpp"

#include <algorithm>
#include <sstream>

namespace greensphere {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw DomainError("IntMat: dimension mismatch in product");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const BigInt& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("IntMat: dimension mismatch");
    IntMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMat IntMat::hcat(const IntMat& o) const {
    if (rows_ != o.rows_ && cols_ != 0 && o.cols_ != 0)
        throw DomainError("IntMat::hcat: row mismatch");
    int rows = std::max(rows_, o.rows_);
    IntMat r(rows, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    return r;
}

std::vector<BigInt> IntMat::apply(const std::vector<BigInt>& x) const {
    if (int(x.size()) != cols_) throw DomainError("IntMat::apply: size mismatch");
    std::vector<BigInt> y(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

std::string IntMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

std::vector<BigInt> SnfResult::diagonal() const {
    std::vector<BigInt> out;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
}

namespace {

struct SnfWork {
    IntMat w, u, uinv, v;

    explicit SnfWork(const IntMat& m)
        : w(m),
          u(IntMat::identity(m.rows())),
          uinv(IntMat::identity(m.rows())),
          v(IntMat::identity(m.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < w.cols(); ++c) std::swap(w.at(i, c), w.at(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < w.rows(); ++r) std::swap(w.at(r, i), w.at(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    // row i += c * row j
    void add_row(int i, int j, const BigInt& c) {
        if (c == 0) return;
        for (int col = 0; col < w.cols(); ++col) w.at(i, col) += c * w.at(j, col);
        for (int col = 0; col < u.cols(); ++col) u.at(i, col) += c * u.at(j, col);
        for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, j) -= c * uinv.at(r, i);
    }
    // col i += c * col j
    void add_col(int i, int j, const BigInt& c) {
        if (c == 0) return;
        for (int r = 0; r < w.rows(); ++r) w.at(r, i) += c * w.at(r, j);
        for (int r = 0; r < v.rows(); ++r) v.at(r, i) += c * v.at(r, j);
    }
    void neg_row(int i) {
        for (int c = 0; c < w.cols(); ++c) w.at(i, c) = -w.at(i, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
    }

    void diagonalize() {
        int n = std::min(w.rows(), w.cols());
        for (int p = 0; p < n; ++p) {
            if (!select_pivot(p)) break;
            reduce_block(p);
        }
        for (int p = 0; p < n; ++p)
            if (w.at(p, p) < 0) neg_row(p);
    }

    bool select_pivot(int p) {
        int bi = -1, bj = -1;
        BigInt best;
        for (int i = p; i < w.rows(); ++i)
            for (int j = p; j < w.cols(); ++j) {
                if (w.at(i, j) == 0) continue;
                BigInt a = abs(w.at(i, j));
                if (bi < 0 || a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return false;
        swap_rows(p, bi);
        swap_cols(p, bj);
        return true;
    }

    void reduce_block(int p) {
        for (;;) {
            bool dirty = false;
            for (int i = p + 1; i < w.rows(); ++i) {
                if (w.at(i, p) == 0) continue;
                BigInt q = w.at(i, p) / w.at(p, p);
                add_row(i, p, -q);
                if (w.at(i, p) != 0) {
                    swap_rows(p, i);  // strict remainder becomes the new pivot
                    dirty = true;
                }
            }
            for (int j = p + 1; j < w.cols(); ++j) {
                if (w.at(p, j) == 0) continue;
                BigInt q = w.at(p, j) / w.at(p, p);
                add_col(j, p, -q);
                if (w.at(p, j) != 0) {
                    swap_cols(p, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // pull in any entry the pivot does not divide yet
            bool fixed = true;
            for (int i = p + 1; i < w.rows() && fixed; ++i)
                for (int j = p + 1; j < w.cols() && fixed; ++j)
                    if (w.at(i, j) % w.at(p, p) != 0) {
                        add_row(p, i, 1);
                        fixed = false;
                    }
            if (fixed) return;
        }
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
    SnfWork work(m);
    work.diagonalize();
    // enforce the divisibility chain d_i | d_{i+1}
    int n = std::min(m.rows(), m.cols());
    for (;;) {
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i) {
            const BigInt &a = work.w.at(i, i), &b = work.w.at(i + 1, i + 1);
            bool bad = (a == 0 && b != 0) || (a != 0 && b % a != 0);
            if (bad) {
                work.add_col(i, i + 1, 1);
                SnfWork redo(work.w);
                redo.diagonalize();
                redo.u = redo.u * work.u;
                redo.uinv = work.uinv * redo.uinv;
                redo.v = work.v * redo.v;
                work = std::move(redo);
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    return SnfResult{work.w, work.u, work.v};
}

namespace {

// Same as smith_normal_form but keeps u^{-1} as well.
struct FullSnf {
    IntMat d, u, uinv, v;
};

FullSnf snf_full(const IntMat& m) {
    SnfWork work(m);
    work.diagonalize();
    int n = std::min(m.rows(), m.cols());
    for (;;) {
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i) {
            const BigInt &a = work.w.at(i, i), &b = work.w.at(i + 1, i + 1);
            bool bad = (a == 0 && b != 0) || (a != 0 && b % a != 0);
            if (bad) {
                work.add_col(i, i + 1, 1);
                SnfWork redo(work.w);
                redo.diagonalize();
                redo.u = redo.u * work.u;
                redo.uinv = work.uinv * redo.uinv;
                redo.v = work.v * redo.v;
                work = std::move(redo);
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    return FullSnf{work.w, work.u, work.uinv, work.v};
}

int snf_rank(const IntMat& d) {
    int n = std::min(d.rows(), d.cols()), r = 0;
    for (int i = 0; i < n; ++i)
        if (d.at(i, i) != 0) ++r;
    return r;
}

}  // namespace

IntMat kernel(const IntMat& m) {
    if (m.cols() == 0) return IntMat(0, 0);
    if (m.rows() == 0) return IntMat::identity(m.cols());
    FullSnf s = snf_full(m);
    int r = snf_rank(s.d);
    IntMat basis(m.cols(), m.cols() - r);
    for (int j = r; j < m.cols(); ++j)
        for (int i = 0; i < m.cols(); ++i) basis.at(i, j - r) = s.v.at(i, j);
    return basis;
}

long long FGModule::torsion_log2_order() const {
    long long t = 0;
    for (int e : torsion) t += e;
    return t;
}

FGModule FGModule::direct_sum(const FGModule& o) const {
    FGModule r;
    r.free_rank = free_rank + o.free_rank;
    r.torsion = torsion;
    r.torsion.insert(r.torsion.end(), o.torsion.begin(), o.torsion.end());
    std::sort(r.torsion.begin(), r.torsion.end());
    r.basis_names = basis_names;
    r.basis_names.insert(r.basis_names.end(), o.basis_names.begin(), o.basis_names.end());
    return r;
}

std::string FGModule::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < free_rank; ++i) {
        os << (first ? "" : " + ") << "Z2";
        first = false;
    }
    for (int e : torsion) {
        os << (first ? "" : " + ") << "Z/2^" << e;
        first = false;
    }
    return os.str();
}

IntMat FGModule::presentation() const {
    int g = generator_count();
    IntMat rels(g, int(torsion.size()));
    for (size_t t = 0; t < torsion.size(); ++t)
        rels.at(free_rank + int(t), int(t)) = BigInt(1) << unsigned(torsion[t]);
    return rels;
}

FGModule quotient_module(const IntMat& rels, int ambient) {
    if (ambient == 0) return FGModule::zero();
    if (rels.cols() == 0 || rels.rows() == 0) return FGModule::free(ambient);
    if (rels.rows() != ambient) throw DomainError("quotient_module: ambient mismatch");
    SnfResult s = smith_normal_form(rels);
    FGModule out;
    int n = std::min(rels.rows(), rels.cols());
    int nonzero = 0;
    std::vector<int> tor;
    for (int i = 0; i < n; ++i) {
        const BigInt& d = s.d.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        int e = val2(d);
        if (e > 0) tor.push_back(e);
    }
    out.free_rank = ambient - nonzero;
    std::sort(tor.begin(), tor.end());
    out.torsion = std::move(tor);
    return out;
}

FGModule cokernel(const IntMat& m, int ambient_rank) {
    return quotient_module(m, ambient_rank);
}

namespace {

// Basis (independent columns) of the column span of g, via SNF.
IntMat column_basis(const IntMat& g) {
    if (g.cols() == 0 || g.rows() == 0 || g.is_zero()) return IntMat(g.rows(), 0);
    FullSnf s = snf_full(g);
    int r = snf_rank(s.d);
    IntMat basis(g.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < g.rows(); ++i) basis.at(i, j) = s.uinv.at(i, j) * s.d.at(j, j);
    return basis;
}

// Exact integral solve A x = b; returns nullopt if unsolvable over Z.
std::optional<std::vector<BigInt>> solve_exact(const FullSnf& s, int cols,
                                               const std::vector<BigInt>& b) {
    std::vector<BigInt> ub = s.u.apply(b);
    int n = std::min(s.d.rows(), s.d.cols());
    std::vector<BigInt> z(cols);
    for (int i = 0; i < int(ub.size()); ++i) {
        const BigInt d = i < n ? s.d.at(i, i) : BigInt(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            z[i] = ub[i] / d;
        }
    }
    return s.v.apply(z);
}

IntMat solve_columns_exact(const IntMat& basis, const IntMat& vecs, const char* what) {
    FullSnf s = snf_full(basis);
    IntMat coords(basis.cols(), vecs.cols());
    for (int j = 0; j < vecs.cols(); ++j) {
        std::vector<BigInt> b(vecs.rows());
        for (int i = 0; i < vecs.rows(); ++i) b[i] = vecs.at(i, j);
        auto x = solve_exact(s, basis.cols(), b);
        if (!x) throw VerificationError(std::string("internal: vector outside lattice in ") + what);
        for (int i = 0; i < basis.cols(); ++i) coords.at(i, j) = (*x)[i];
    }
    return coords;
}

// Lattice {x : f x in span(rels_target)}, as an independent-column basis.
IntMat preimage_lattice(const IntMat& f, const IntMat& rels_target) {
    IntMat block = f.hcat(rels_target.cols() ? rels_target : IntMat(f.rows(), 0));
    IntMat ker = kernel(block);
    IntMat proj(f.cols(), ker.cols());
    for (int j = 0; j < ker.cols(); ++j)
        for (int i = 0; i < f.cols(); ++i) proj.at(i, j) = ker.at(i, j);
    return column_basis(proj);
}

}  // namespace

KerCoker hom_ker_coker(const IntMat& f, const IntMat& rels_source, const IntMat& rels_target) {
    KerCoker out;

    // cokernel: target generators modulo image and target relations
    IntMat cok_rels = f.hcat(rels_target);
    out.coker = quotient_module(cok_rels, f.rows());
    if (f.rows() > 0 && cok_rels.cols() > 0) {
        FullSnf s = snf_full(cok_rels);
        int n = std::min(s.d.rows(), s.d.cols());
        std::vector<int> picks;
        for (int i = 0; i < f.rows(); ++i) {
            BigInt d = i < n ? s.d.at(i, i) : BigInt(0);
            if (d == 0 || val2(d) > 0) picks.push_back(i);
        }
        out.coker_lifts = IntMat(f.rows(), int(picks.size()));
        for (size_t j = 0; j < picks.size(); ++j)
            for (int i = 0; i < f.rows(); ++i) out.coker_lifts.at(i, int(j)) = s.uinv.at(i, picks[j]);
    } else {
        out.coker_lifts = IntMat::identity(f.rows());
    }

    // kernel: preimage of the target relations, modulo source relations
    out.ker_lattice = preimage_lattice(f, rels_target);
    if (out.ker_lattice.cols() == 0) {
        out.ker = FGModule::zero();
        return out;
    }
    if (rels_source.cols() == 0) {
        out.ker = FGModule::free(out.ker_lattice.cols());
        return out;
    }
    IntMat coords = solve_columns_exact(out.ker_lattice, rels_source, "hom_ker_coker");
    out.ker = quotient_module(coords, out.ker_lattice.cols());
    return out;
}

KerCoker ker_coker_endo(const FGModule& m, const ModuleMap& phi) {
    if (phi.matrix.rows() != m.generator_count() || phi.matrix.cols() != m.generator_count())
        throw DomainError("ker_coker_endo: matrix size does not match module");
    IntMat rels = m.presentation();
    return hom_ker_coker(phi.matrix, rels, rels);
}

FGModule c2_cohomology(const FGModule& m, const ModuleMap& sigma, int n) {
    int g = m.generator_count();
    if (sigma.matrix.rows() != g || sigma.matrix.cols() != g)
        throw DomainError("c2_cohomology: sigma size mismatch");
    if (n < 0) throw DomainError("c2_cohomology: negative degree");
    IntMat rels = m.presentation();
    IntMat sq = sigma.matrix * sigma.matrix - IntMat::identity(g);
    for (int j = 0; j < g; ++j) {
        std::vector<BigInt> col(g);
        for (int i = 0; i < g; ++i) col[i] = sq.at(i, j);
        bool zero = true;
        for (auto& x : col) zero = zero && x == 0;
        if (!zero && !solve_2local(rels, IntMat(g, 0), col, 64).has_value())
            throw DomainError("c2_cohomology: sigma^2 != id");
    }

    IntMat plus = sigma.matrix, minus = sigma.matrix;
    for (int i = 0; i < g; ++i) {
        plus.at(i, i) += 1;
        minus.at(i, i) -= 1;
    }
    if (n == 0) return hom_ker_coker(minus, rels, rels).ker;

    const IntMat& ker_of = (n % 2 == 1) ? plus : minus;
    const IntMat& img_of = (n % 2 == 1) ? minus : plus;
    IntMat lattice = preimage_lattice(ker_of, rels);
    if (lattice.cols() == 0) return FGModule::zero();
    IntMat sub = img_of.hcat(rels);
    IntMat coords = solve_columns_exact(lattice, sub, "c2_cohomology");
    return quotient_module(coords, lattice.cols());
}

std::optional<std::vector<Scalar>> solve_2local(const IntMat& f, const IntMat& rels,
                                                const std::vector<BigInt>& b, int precision) {
    IntMat a = f.hcat(rels);
    if (a.cols() == 0) {
        for (const auto& x : b)
            if (x != 0 && val2(x) < precision) return std::nullopt;
        return std::vector<Scalar>();
    }
    FullSnf s = snf_full(a);
    std::vector<BigInt> ub = s.u.apply(b);
    int n = std::min(s.d.rows(), s.d.cols());
    BigInt mod = BigInt(1) << unsigned(precision);
    std::vector<BigInt> z(a.cols());
    for (int i = 0; i < int(ub.size()); ++i) {
        BigInt d = i < n ? s.d.at(i, i) : BigInt(0);
        if (d == 0) {
            if (ub[i] != 0 && val2(ub[i]) < precision) return std::nullopt;
            continue;
        }
        if (ub[i] == 0) continue;
        int vd = val2(d), vb = val2(ub[i]);
        if (vb < vd) {
            if (vb >= precision) continue;
            return std::nullopt;
        }
        Scalar odd_d(d >> unsigned(vd), precision);
        Scalar shifted(ub[i] >> unsigned(vd), precision);
        z[i] = (shifted * odd_d.inverse()).value() % mod;
    }
    std::vector<BigInt> x = s.v.apply(z);
    std::vector<Scalar> out;
    out.reserve(f.cols());
    for (int i = 0; i < f.cols(); ++i) out.emplace_back(x[i], precision);
    return out;
}

bool subgroup_contains(const IntMat& gens, const IntMat& rels, const std::vector<BigInt>& b,
                       int precision) {
    return solve_2local(gens, rels, b, precision).has_value();
}

bool subgroups_equal(const IntMat& a, const IntMat& b, const IntMat& rels, int precision) {
    for (int j = 0; j < b.cols(); ++j) {
        std::vector<BigInt> col(b.rows());
        for (int i = 0; i < b.rows(); ++i) col[i] = b.at(i, j);
        if (!subgroup_contains(a, rels, col, precision)) return false;
    }
    for (int j = 0; j < a.cols(); ++j) {
        std::vector<BigInt> col(a.rows());
        for (int i = 0; i < a.rows(); ++i) col[i] = a.at(i, j);
        if (!subgroup_contains(b, rels, col, precision)) return false;
    }
    return true;
}

FGModule subgroup_module(const IntMat& gens, const IntMat& rels) {
    IntMat lattice = column_basis(gens.hcat(rels));
    if (lattice.cols() == 0) return FGModule::zero();
    if (rels.cols() == 0) return FGModule::free(lattice.cols());
    IntMat coords = solve_columns_exact(lattice, rels, "subgroup_module");
    return quotient_module(coords, lattice.cols());
}

int rank_mod2(const IntMat& m) {
    std::vector<std::vector<bool>> rows(m.rows(), std::vector<bool>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = bit_test(m.at(i, j), 0);
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (rows[i][col]) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = 0; i < m.rows(); ++i)
            if (i != rank && rows[i][col])
                for (int j = col; j < m.cols(); ++j) rows[i][j] = rows[i][j] ^ rows[rank][j];
        ++rank;
    }
    return rank;
}

}  // namespace greensphere
