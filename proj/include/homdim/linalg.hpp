#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homdim {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a computation would exceed a configured rank/size bound.
/// Carries the offending size estimate so callers can report it.
struct ResourceLimit : Error {
    long long estimate;
    ResourceLimit(const std::string& what, long long est) : Error(what), estimate(est) {}
};

Int gcd(const Int& a, const Int& b);

/// Dense integer matrix, row-major, exact arithmetic throughout.
/// Empty shapes (0 rows or 0 cols) are legal and denote zero maps.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw Error("IntMatrix: negative dimension");
    }
    IntMatrix(int rows, int cols, std::vector<Int> entries);

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Int& c) const;

    IntVec apply(const IntVec& x) const;       // this * x
    IntMatrix pow(unsigned long e) const;      // square matrices only

    /// Columns of `o` appended on the right.
    IntMatrix hconcat(const IntMatrix& o) const;
    IntMatrix column(int j) const;

    static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const Int& c);   // row dst += c * row src
    void add_col_multiple(int dst, int src, const Int& c);
    void negate_row(int i);
    void negate_col(int j);

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithDecomposition {
    IntMatrix u, d, v;
    int rank = 0;

    Int diag(int i) const { return (i < d.rows() && i < d.cols()) ? d.at(i, i) : Int(0); }
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Solves A x = b exactly over Z, or over Z/modulus when a modulus is given.
/// Returns nullopt iff no solution exists. Throws on dimension mismatch.
std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b,
                                   const std::optional<Int>& modulus = std::nullopt);

/// Presentation of Z^cols / (row span of A): free rank and the nontrivial
/// invariant factors > 1 in divisibility order.
struct CokernelPresentation {
    int free_rank = 0;
    IntVec torsion;
    bool operator==(const CokernelPresentation& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
};

CokernelPresentation cokernel_presentation(const IntMatrix& a);

/// Basis for {x : A x = 0} as matrix columns.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis for the column span of A (a full-column-rank matrix with identical span).
IntMatrix column_span_basis(const IntMatrix& a);

int rank_of(const IntMatrix& a);

IntMatrix unimodular_inverse(const IntMatrix& u);

/// Reusable solver for many right-hand sides against one matrix.
class LinearSolver {
public:
    explicit LinearSolver(IntMatrix a);
    const IntMatrix& matrix() const { return a_; }
    std::optional<IntVec> solve(const IntVec& b) const;
    bool solvable(const IntVec& b) const { return solve(b).has_value(); }

private:
    IntMatrix a_;
    SmithDecomposition snf_;
};

/// Coordinates in the abelian group Z^n / (column span of L), presented by SNF.
/// Generator i has order d_i (0 meaning infinite); coordinates are reduced mod d_i.
class QuotientPresentation {
public:
    QuotientPresentation() = default;
    /// L's columns generate the subgroup being quotiented out of Z^n.
    QuotientPresentation(int n, const IntMatrix& sublattice);

    int ambient_dim() const { return n_; }
    /// Orders of all n generators in the normalized basis (0 = infinite).
    const IntVec& orders() const { return orders_; }
    int free_rank() const { return free_rank_; }
    const IntVec& torsion() const { return torsion_; }

    /// Indices of generators that survive (order != 1), torsion first.
    const std::vector<int>& generator_indices() const { return gens_; }
    /// A representative in Z^n for normalized generator index i.
    IntVec generator_rep(int gen_index) const;

    /// Full normalized coordinate vector of x (length n, reduced mod orders).
    IntVec coordinates(const IntVec& x) const;
    /// Coordinates restricted to surviving generators, in generator_indices() order.
    IntVec class_vector(const IntVec& x) const;
    bool is_zero_class(const IntVec& x) const;

private:
    int n_ = 0;
    IntMatrix u_, uinv_;
    IntVec orders_;
    int free_rank_ = 0;
    IntVec torsion_;
    std::vector<int> gens_;
};

}  // namespace homdim
