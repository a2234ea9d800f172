#pragma once

#include <map>
#include <set>
#include <vector>

#include "homdim/linalg.hpp"

namespace homdim {

/// Cochain complex of free Z-modules C^0 -> C^1 -> ... -> C^D given by sparse
/// integer differentials. Gaussian elimination of unit pivots shrinks the
/// complex to a chain-equivalent one; the elimination log supports exact
/// transport of cochains in both directions, so cohomology presentations,
/// class coordinates and coboundary tests can run on the small complex.
class ReducedComplex {
public:
    struct Triplet {
        int row, col;
        Int val;
    };

    /// dims[k] = rank of C^k; diffs[k] = entries of d^k : C^k -> C^{k+1}
    /// (so diffs has one fewer element than dims).
    ReducedComplex(std::vector<int> dims, const std::vector<std::vector<Triplet>>& diffs,
                   int dense_limit = 700);

    int num_degrees() const { return int(dims_.size()); }
    int original_dim(int k) const { return dims_[size_t(k)]; }
    int reduced_dim(int k) const { return int(index_of_[size_t(k)].size()); }
    /// Reduced d^k as a dense matrix (reduced_dim(k+1) x reduced_dim(k)).
    const IntMatrix& reduced_diff(int k) const { return reduced_[size_t(k)]; }

    /// Original coordinates -> reduced coordinates (chain map).
    IntVec project(int k, const IntVec& x) const;
    /// Reduced coordinates -> original coordinates (chain map, section of
    /// project up to chain homotopy; exact section on cohomology).
    IntVec include(int k, const IntVec& xr) const;

    long eliminations() const { return long(log_.size()); }

private:
    struct Step {
        int deg;    // pivot lives in d^deg at (row r, col c)
        int r, c;
        int p;      // +1 or -1
        std::vector<std::pair<int, Int>> col_entries;  // column c without row r
        std::vector<std::pair<int, Int>> row_entries;  // row r without column c
    };

    std::vector<int> dims_;
    std::vector<Step> log_;
    std::vector<std::vector<int>> index_of_;   // per degree: alive original indices, sorted
    std::vector<std::map<int, int>> rank_of_;  // per degree: original index -> reduced index
    std::vector<IntMatrix> reduced_;
};

}  // namespace homdim
