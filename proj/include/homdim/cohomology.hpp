#pragma once

#include <memory>
#include <optional>

#include "homdim/resolutions.hpp"
#include "homdim/sparse_reduce.hpp"

namespace homdim {

struct CohomologyOptions {
    int dense_limit = 700;        // max dimension surviving reduction
    long bar_rank_limit = 25000;  // max free rank per bar degree
    int module_dim_limit = 320;   // max coefficient-module rank for pullbacks
};

/// Presented cohomology group with representative cocycles. Cochain
/// coordinates are "cover coordinates": blocks of module representatives,
/// one block of size cover_rank per free generator of P_k.
struct CohomologyGroup {
    GroupSpec group;
    int degree = 0;
    int free_rank = 0;
    IntVec torsion;  // invariant factors > 1 in divisibility order
    std::vector<IntVec> representatives;
    IntVec generator_orders;  // per representative: 0 for Z, else the torsion order

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string describe() const;
};

/// Cochain complex Hom(P_*, M) with exact integer cohomology.
///
/// Periodic resolutions use the direct lattice method on dense matrices;
/// bar resolutions go through a free mapping-cone complex (to absorb the
/// coefficient relations) plus unit-pivot sparse reduction. The two paths
/// share only the Smith kernel, which keeps them usable as cross-checks.
class CochainEngine {
public:
    CochainEngine(Resolution r, GModule m, CohomologyOptions opts = {});
    ~CochainEngine();
    CochainEngine(CochainEngine&&) noexcept;

    const Resolution& resolution() const { return res_; }
    const GModule& module() const { return mod_; }
    /// Highest degree with a computable cohomology group.
    int max_degree() const { return res_.top_degree() - 1; }
    int cochain_dim(int k) const;

    const CohomologyGroup& cohomology(int k) const;
    bool is_cocycle(int k, const IntVec& x) const;
    /// Requires a cocycle; decides membership in coboundaries + relations.
    bool is_coboundary(int k, const IntVec& x) const;
    /// Coordinates of a cocycle in the presentation of cohomology(k).
    IntVec class_vector(int k, const IntVec& x) const;
    bool is_zero_class(int k, const IntVec& x) const;

private:
    struct Degree;
    Resolution res_;
    GModule mod_;
    CohomologyOptions opts_;
    bool cone_mode_ = false;

    // dense mode
    std::vector<IntMatrix> d_;         // d^k: C^k -> C^{k+1}, k = 0..top-1
    std::vector<IntMatrix> rel_;       // relation columns per degree (cover dim x s*rank)
    // cone mode: coefficient presentation 0 -> K -> F -> M -> 0 by honest
    // integral representations; F = M's cover when the action has exact
    // order n, else the free cover Z[G]^g
    std::unique_ptr<ReducedComplex> cone_;
    int cover_dim_ = 0;                // rank of F
    IntMatrix cover_sigma_, cover_pi_; // section Z^g -> F and projection F -> Z^g
    IntMatrix rel_basis_;              // injective basis of K inside F
    std::unique_ptr<LinearSolver> rel_solver_;
    std::vector<int> cone_xdim_;       // F-block dimension per cone degree
    std::vector<std::vector<ReducedComplex::Triplet>> xdiff_;  // plain d^k blocks on F

    IntVec to_cover(int k, const IntVec& x) const;
    IntVec from_cover(int k, const IntVec& x) const;

    mutable std::vector<std::unique_ptr<Degree>> degrees_;

    const Degree& degree_data(int k) const;
    IntVec cone_lift(int k, const IntVec& x) const;    // x |-> (x, -w) coordinates
    IntVec strip_cone(int k, const IntVec& v) const;   // keep the x block
    void check_degree(int k) const;
};

/// Dense integer matrices of the cochain complex d^0 .. d^{top-1}.
std::vector<IntMatrix> cochain_matrices(const Resolution& r, const GModule& m);

CohomologyGroup cohomology_group(const Resolution& r, const GModule& m, int k,
                                 CohomologyOptions opts = {});

/// Pullback of a degree-k cochain along a chain map (f goes to f o psi_k).
/// The result is a cochain over the source resolution with the module acting
/// through the chain map's homomorphism.
IntVec cochain_pullback(const ChainMap& cm, const GModule& m_target, int k, const IntVec& f);

/// Matrix of the induced map H^k(target side, M) -> H^k(source side, M via
/// phi) in the chosen presentations, with a zero-map verdict.
struct InducedMap {
    CohomologyGroup source_group;  // codomain-side cohomology (the map's domain)
    CohomologyGroup target_group;  // domain-side cohomology (the map's range)
    IntMatrix matrix;              // columns indexed by source generators
    bool zero = true;
};

InducedMap induced_on_cohomology(const ChainMap& cm, const GModule& m, int k,
                                 CohomologyOptions opts = {});

/// Same, against prebuilt engines (the engines must match the chain map's
/// target and source resolutions).
InducedMap induced_on_cohomology(const ChainMap& cm, const CochainEngine& lambda_side,
                                 const CochainEngine& gamma_side, int k);

/// Cohomology class: a cocycle on a named resolution kind of its group.
struct CohomologyClass {
    GroupSpec group;
    Resolution::Kind res_kind = Resolution::Kind::Periodic;
    int degree = 0;
    GModule module;
    IntVec cochain;
};

/// Free-abelian tensor product with diagonal action.
GModule tensor_product_module(const GModule& a, const GModule& b);

/// Transfer a class to another resolution of the same group by pulling back
/// along a comparison chain map whose target carries the class.
CohomologyClass transfer_class(const ChainMap& cm, const CohomologyClass& cls);

/// Cup product of bar classes via the front-face/back-face diagonal;
/// free-abelian coefficients only, output coefficients are the tensor.
CohomologyClass cup_product(const Resolution& bar, const CohomologyClass& x,
                            const CohomologyClass& y);

/// beta in H^1(G, I(G)) on the periodic resolution: the cocycle sending the
/// degree-1 generator to t - 1.
CohomologyClass berstein_schwarz_class(const GroupSpec& g);

/// The same class represented on the bar resolution: [t^a] goes to t^a - 1.
CohomologyClass berstein_schwarz_bar_class(const GroupSpec& g);

/// Value of the k-fold cup power of beta on one bar tuple.
IntVec bs_power_value(const GroupSpec& g, const std::vector<int>& tuple);

struct BsPullback {
    int power;
    bool nonzero;
    CohomologyClass pulled;  // on the domain's periodic resolution
    ChainMap lift;           // periodic(domain) -> bar(codomain), the lift used
    GModule coeff_module;    // I(codomain)^{tensor k}
};

/// Computes phi*(beta^k) for a cyclic-to-cyclic homomorphism and decides
/// nonvanishing by a coboundary-membership test on the domain side.
BsPullback bs_power_pullback(const GroupHom& phi, int k, CohomologyOptions opts = {});

}  // namespace homdim
