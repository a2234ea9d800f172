#include "homdim/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace homdim {

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw Error("IntMatrix: negative dimension");
    if (a_.size() != size_t(rows) * size_t(cols)) throw Error("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error("IntMatrix multiply: dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Int& bkj = o.at(k, j);
                if (bkj != 0) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("IntMatrix add: shape mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + (-o); }

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
    return r;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (int(x.size()) != cols_) throw Error("IntMatrix apply: dimension mismatch");
    IntVec y(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::pow(unsigned long e) const {
    if (rows_ != cols_) throw Error("IntMatrix pow: square matrix required");
    IntMatrix base = *this, acc = identity(rows_);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw Error("IntMatrix hconcat: row mismatch");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

IntMatrix IntMatrix::column(int j) const {
    IntMatrix c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    if (b.at(k, l) != 0)
                        r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row_multiple(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < cols_; ++j)
        if (at(src, j) != 0) at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col_multiple(int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < rows_; ++i)
        if (at(i, src) != 0) at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(int i) {
    for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(int j) {
    for (int i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// Position of the smallest-magnitude nonzero entry of d in the trailing
// submatrix starting at (s, s); keeps coefficient growth in check.
bool find_pivot(const IntMatrix& d, int s, int& pi, int& pj) {
    bool found = false;
    Int best = 0;
    for (int i = s; i < d.rows(); ++i)
        for (int j = s; j < d.cols(); ++j) {
            const Int& x = d.at(i, j);
            if (x == 0) continue;
            Int ax = abs(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

namespace {

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SmithDecomposition s;
    s.u = IntMatrix::identity(a.rows());
    s.v = IntMatrix::identity(a.cols());
    s.d = a;
    IntMatrix& d = s.d;

    // phase 1: diagonalize with global smallest-magnitude pivots; coefficient
    // growth stays moderate because the pivot never exceeds any trailing entry
    const int nmin = std::min(a.rows(), a.cols());
    for (int k = 0; k < nmin; ++k) {
        int pi, pj;
        if (!find_pivot(d, k, pi, pj)) break;
        d.swap_rows(k, pi);
        s.u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        s.v.swap_cols(k, pj);

        for (;;) {
            bool clean = true;
            for (int i = k + 1; i < d.rows(); ++i) {
                if (d.at(i, k) == 0) continue;
                Int q = d.at(i, k) / d.at(k, k);
                d.add_row_multiple(i, k, -q);
                s.u.add_row_multiple(i, k, -q);
                if (d.at(i, k) != 0) {
                    // remainder smaller than the pivot: promote it
                    d.swap_rows(k, i);
                    s.u.swap_rows(k, i);
                    clean = false;
                }
            }
            for (int j = k + 1; j < d.cols(); ++j) {
                if (d.at(k, j) == 0) continue;
                Int q = d.at(k, j) / d.at(k, k);
                d.add_col_multiple(j, k, -q);
                s.v.add_col_multiple(j, k, -q);
                if (d.at(k, j) != 0) {
                    d.swap_cols(k, j);
                    s.v.swap_cols(k, j);
                    clean = false;
                }
            }
            if (clean) break;
        }
        if (d.at(k, k) < 0) {
            d.negate_row(k);
            s.u.negate_row(k);
        }
    }

    // move zero diagonal entries behind the nonzero ones
    {
        int put = 0;
        for (int k = 0; k < nmin; ++k) {
            if (d.at(k, k) == 0) continue;
            if (k != put) {
                d.swap_rows(k, put);
                s.u.swap_rows(k, put);
                d.swap_cols(k, put);
                s.v.swap_cols(k, put);
            }
            ++put;
        }
        s.rank = put;
    }

    // phase 2: repair divisibility pairwise on the diagonal; each fix touches
    // a 2x2 block that is zero off-diagonal, so nothing fills in
    for (bool dirty = true; dirty;) {
        dirty = false;
        for (int i = 0; i + 1 < s.rank; ++i) {
            const Int& ai = d.at(i, i);
            const Int& bj = d.at(i + 1, i + 1);
            if (bj % ai == 0) continue;
            dirty = true;
            Int x, y;
            Int g = ext_gcd(ai, bj, x, y);
            Int au = ai / g, bu = bj / g;
            Int lcm = au * bj;
            // diag(a, b) = L^{-1} diag(g, lcm) R^{-1} with
            // L = [[x, y], [-b/g, a/g]], R = [[1, -y b/g], [1, x a/g]]
            IntMatrix urow_i(1, s.u.cols()), urow_j(1, s.u.cols());
            for (int c = 0; c < s.u.cols(); ++c) {
                urow_i.at(0, c) = x * s.u.at(i, c) + y * s.u.at(i + 1, c);
                urow_j.at(0, c) = -bu * s.u.at(i, c) + au * s.u.at(i + 1, c);
            }
            for (int c = 0; c < s.u.cols(); ++c) {
                s.u.at(i, c) = urow_i.at(0, c);
                s.u.at(i + 1, c) = urow_j.at(0, c);
            }
            IntMatrix vcol_i(s.v.rows(), 1), vcol_j(s.v.rows(), 1);
            for (int r = 0; r < s.v.rows(); ++r) {
                vcol_i.at(r, 0) = s.v.at(r, i) + s.v.at(r, i + 1);
                vcol_j.at(r, 0) = -(y * bu) * s.v.at(r, i) + (x * au) * s.v.at(r, i + 1);
            }
            for (int r = 0; r < s.v.rows(); ++r) {
                s.v.at(r, i) = vcol_i.at(r, 0);
                s.v.at(r, i + 1) = vcol_j.at(r, 0);
            }
            d.at(i, i) = g;
            d.at(i + 1, i + 1) = lcm;
        }
    }
    return s;
}

std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b,
                                   const std::optional<Int>& modulus) {
    if (int(b.size()) != a.rows()) throw Error("solve_linear: dimension mismatch");
    if (modulus) {
        if (*modulus <= 0) throw Error("solve_linear: modulus must be positive");
        // solve [A | m I] (x; y) = b over Z, return x mod m
        IntMatrix aug = a.hconcat(IntMatrix::identity(a.rows()).scaled(*modulus));
        auto sol = solve_linear(aug, b, std::nullopt);
        if (!sol) return std::nullopt;
        IntVec x(sol->begin(), sol->begin() + a.cols());
        for (Int& xi : x) {
            xi %= *modulus;
            if (xi < 0) xi += *modulus;
        }
        return x;
    }

    const SmithDecomposition snf = smith_normal_form(a);
    IntVec c = snf.u.apply(b);
    IntVec y(a.cols(), Int(0));
    for (int i = 0; i < a.rows(); ++i) {
        Int di = snf.diag(i);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        }
    }
    return snf.v.apply(y);
}

CokernelPresentation cokernel_presentation(const IntMatrix& a) {
    // rows of A are relations among the cols generators of Z^cols
    const SmithDecomposition snf = smith_normal_form(a);
    CokernelPresentation p;
    p.free_rank = a.cols() - snf.rank;
    for (int i = 0; i < snf.rank; ++i)
        if (snf.diag(i) > 1) p.torsion.push_back(snf.diag(i));
    return p;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    const SmithDecomposition snf = smith_normal_form(a);
    const int n = a.cols();
    IntMatrix k(n, n - snf.rank);
    for (int j = snf.rank; j < n; ++j)
        for (int i = 0; i < n; ++i) k.at(i, j - snf.rank) = snf.v.at(i, j);
    return k;
}

IntMatrix column_span_basis(const IntMatrix& a) {
    const SmithDecomposition snf = smith_normal_form(a);
    // im(A) = U^{-1} * im(D); basis vectors d_i * (U^{-1} e_i), i < rank
    IntMatrix uinv = unimodular_inverse(snf.u);
    IntMatrix b(a.rows(), snf.rank);
    for (int j = 0; j < snf.rank; ++j)
        for (int i = 0; i < a.rows(); ++i) b.at(i, j) = uinv.at(i, j) * snf.diag(j);
    return b;
}

int rank_of(const IntMatrix& a) { return smith_normal_form(a).rank; }

IntMatrix unimodular_inverse(const IntMatrix& u) {
    if (u.rows() != u.cols()) throw Error("unimodular_inverse: square matrix required");
    const SmithDecomposition snf = smith_normal_form(u);
    for (int i = 0; i < u.rows(); ++i)
        if (snf.diag(i) != 1) throw Error("unimodular_inverse: matrix is not unimodular");
    // U_s * U * V_s = I  =>  U^{-1} = V_s * U_s
    return snf.v * snf.u;
}

LinearSolver::LinearSolver(IntMatrix a) : a_(std::move(a)), snf_(smith_normal_form(a_)) {}

std::optional<IntVec> LinearSolver::solve(const IntVec& b) const {
    if (int(b.size()) != a_.rows()) throw Error("LinearSolver: dimension mismatch");
    IntVec c = snf_.u.apply(b);
    IntVec y(a_.cols(), Int(0));
    for (int i = 0; i < a_.rows(); ++i) {
        Int di = snf_.diag(i);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        }
    }
    return snf_.v.apply(y);
}

QuotientPresentation::QuotientPresentation(int n, const IntMatrix& sublattice) : n_(n) {
    if (sublattice.rows() != n) throw Error("QuotientPresentation: ambient dimension mismatch");
    const SmithDecomposition snf = smith_normal_form(sublattice);
    u_ = snf.u;
    uinv_ = unimodular_inverse(u_);
    orders_.assign(n, Int(0));
    for (int i = 0; i < snf.rank; ++i) orders_[i] = snf.diag(i);
    for (int i = 0; i < n; ++i) {
        if (orders_[i] == 1) continue;
        gens_.push_back(i);
        if (orders_[i] == 0)
            ++free_rank_;
        else
            torsion_.push_back(orders_[i]);
    }
    // surviving torsion generators come first in SNF order, then free ones;
    // reorder gens_ so torsion precedes free for stable presentations
    std::stable_sort(gens_.begin(), gens_.end(), [&](int a, int b) {
        bool ta = orders_[a] != 0, tb = orders_[b] != 0;
        if (ta != tb) return ta;
        return a < b;
    });
}

IntVec QuotientPresentation::generator_rep(int gen_index) const {
    IntVec rep(n_);
    for (int i = 0; i < n_; ++i) rep[i] = uinv_.at(i, gen_index);
    return rep;
}

IntVec QuotientPresentation::coordinates(const IntVec& x) const {
    if (int(x.size()) != n_) throw Error("QuotientPresentation: dimension mismatch");
    IntVec c = u_.apply(x);
    for (int i = 0; i < n_; ++i) {
        if (orders_[i] != 0) {
            c[i] %= orders_[i];
            if (c[i] < 0) c[i] += orders_[i];
        }
    }
    return c;
}

IntVec QuotientPresentation::class_vector(const IntVec& x) const {
    IntVec c = coordinates(x);
    IntVec out;
    out.reserve(gens_.size());
    for (int g : gens_) out.push_back(c[g]);
    return out;
}

bool QuotientPresentation::is_zero_class(const IntVec& x) const {
    for (const Int& c : class_vector(x))
        if (c != 0) return false;
    return true;
}

}  // namespace homdim
