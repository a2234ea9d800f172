#pragma once

#include <utility>
#include <vector>

#include "homdim/group_model.hpp"

namespace homdim {

/// Sparse matrix over a cyclic group ring, stored by columns.
/// Column j holds the image of basis vector j: sum of entry * e_row.
struct RingMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, GroupRingElement>>> col;

    RingMat() = default;
    RingMat(int r, int c) : rows(r), cols(c), col(size_t(c)) {}

    void add_entry(int r, int c, GroupRingElement e) { col[size_t(c)].emplace_back(r, std::move(e)); }
    bool is_zero() const;
};

/// Composite a * b; entries of b are pushed through push_b first when given
/// (used for squares psi_{k-1} * d_k where d_k has domain-ring coefficients).
RingMat ring_mat_mul(const RingMat& a, const RingMat& b, const GroupHom* push_b = nullptr);

bool ring_mat_equal(const RingMat& a, const RingMat& b);

/// Projective resolution of Z over Z[Z_n].
///
/// Periodic: rank-1 free modules with differentials alternating (t-1), N.
/// Bar: normalized bar resolution, degree-k module free on k-tuples of
/// nontrivial elements; rank (n-1)^k.
/// n = 1 degenerates to Z in degree 0 with nothing above.
class Resolution {
public:
    enum class Kind { Periodic, Bar };

    static Resolution periodic(const GroupSpec& g, int top_degree);
    static Resolution bar(const GroupSpec& g, int top_degree, long rank_limit = 25000);

    Kind kind() const { return kind_; }
    const GroupSpec& group() const { return group_; }
    int top_degree() const { return top_; }
    int rank(int k) const;
    /// Differential P_k -> P_{k-1}, 1 <= k <= top.
    const RingMat& diff(int k) const;
    /// The single ring element of a periodic differential.
    GroupRingElement periodic_delta(int k) const;

    // bar tuple indexing: digits are elements of {1..n-1}, first letter most
    // significant in base n-1
    std::vector<int> bar_tuple(int k, int index) const;
    int bar_index(const std::vector<int>& tuple) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::Periodic;
    GroupSpec group_;
    int top_ = 0;
    std::vector<int> ranks_;
    std::vector<RingMat> diffs_;  // diffs_[k] valid for k >= 1
};

/// Checks d_k d_{k+1} = 0 exactly over the group ring for all degrees.
void verify_dd_zero(const Resolution& r);

/// Checks exactness of the underlying integer complex in degrees 1..top-1
/// and that degree 0 augments onto Z. Dense; guarded by a size limit.
void verify_exactness(const Resolution& r, int max_total_dim = 800);

/// phi-equivariant chain map psi_k : P_k(source group) -> P_k(target group)
/// covering the identity of Z. Coefficients live over the target group ring.
struct ChainMap {
    Resolution source, target;
    GroupHom hom;
    std::vector<RingMat> psi;  // psi[k], 0 <= k <= min top degree

    int top_degree() const { return int(psi.size()) - 1; }
    /// Single ring element of a rank-1 -> rank-1 degree (periodic cases).
    GroupRingElement element(int k) const;
};

GroupHom identity_hom(const GroupSpec& g);

/// Builds the chain map induced by phi, degree by degree. Supported shapes:
/// periodic -> periodic (verified closed form), periodic -> bar (via the bar
/// contracting homotopy), bar -> bar (tuple-wise application of phi).
ChainMap induced_chain_map(const GroupHom& phi, const Resolution& r_dom, const Resolution& r_cod);

/// Chain maps A -> B and B -> A over the same group covering the identity,
/// built by lifting through exact resolutions.
std::pair<ChainMap, ChainMap> comparison_maps(const Resolution& a, const Resolution& b);

ChainMap compose_chain_maps(const ChainMap& outer, const ChainMap& inner);

/// Re-verifies every commuting square with independent ring arithmetic and
/// that degree 0 covers the identity of Z. Throws on failure.
void verify_chain_map(const ChainMap& cm);

}  // namespace homdim
