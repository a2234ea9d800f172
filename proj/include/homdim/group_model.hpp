#pragma once

#include <string>
#include <variant>
#include <vector>

#include "homdim/linalg.hpp"

namespace homdim {

/// Freely reduced word: (generator index, nonzero exponent) pairs with no
/// two adjacent letters sharing a generator.
struct Word {
    struct Letter {
        int gen;
        Int exp;
        bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
    };
    std::vector<Letter> letters;

    bool empty() const { return letters.empty(); }
    bool operator==(const Word& o) const { return letters == o.letters; }

    Word inverse() const;
    std::string to_string(const std::vector<std::string>& names) const;
};

Word reduce_word(const Word& w);
Word concat_words(const Word& a, const Word& b);
Word word_power(const Word& w, const Int& e);

struct CyclicGroup {
    Int order;  // >= 1
};
struct FreeGroup {
    int rank;  // >= 0
};
struct FpGroup {
    std::vector<std::string> generators;
    std::vector<Word> relators;  // freely reduced words over the generators
};

class GroupSpec {
public:
    GroupSpec() : v_(CyclicGroup{1}) {}
    explicit GroupSpec(CyclicGroup c);
    explicit GroupSpec(FreeGroup f);
    explicit GroupSpec(FpGroup f);

    static GroupSpec cyclic(const Int& n) { return GroupSpec(CyclicGroup{n}); }
    static GroupSpec free_group(int rank) { return GroupSpec(FreeGroup{rank}); }
    static GroupSpec trivial() { return cyclic(1); }

    bool is_cyclic() const { return std::holds_alternative<CyclicGroup>(v_); }
    bool is_free() const { return std::holds_alternative<FreeGroup>(v_); }
    bool is_fp() const { return std::holds_alternative<FpGroup>(v_); }
    bool is_trivial() const;

    Int cyclic_order() const;
    int free_rank() const;
    const FpGroup& fp() const;

    int generator_count() const;
    std::vector<std::string> generator_names() const;
    std::vector<Word> relators() const;

    bool operator==(const GroupSpec& o) const;
    std::string to_string() const;

private:
    std::variant<CyclicGroup, FreeGroup, FpGroup> v_;
};

/// Homomorphism given by generator images (words over the codomain).
/// For a cyclic domain the single image of t is stored like any other.
class GroupHom {
public:
    GroupHom(GroupSpec domain, GroupSpec codomain, std::vector<Word> images);

    const GroupSpec& domain() const { return dom_; }
    const GroupSpec& codomain() const { return cod_; }
    const std::vector<Word>& images() const { return images_; }

    bool is_cyclic_to_cyclic() const { return dom_.is_cyclic() && cod_.is_cyclic(); }
    /// Multiplier d of t |-> s^d, cyclic-to-cyclic only.
    Int multiplier() const;
    bool is_epimorphism() const;
    bool is_trivial_map() const;

    /// Image of a domain word in the codomain (cyclic: exponent sum mod m,
    /// free: free reduction). Undecidable codomains are rejected.
    Word apply(const Word& w) const;

    std::string to_string() const;

private:
    GroupSpec dom_, cod_;
    std::vector<Word> images_;
    void validate() const;
};

/// t |-> s^d from Z_n to Z_m; rejects non-homomorphisms (m must divide d*n).
GroupHom make_cyclic_hom(const Int& n, const Int& m, const Int& d);

GroupHom compose(const GroupHom& outer, const GroupHom& inner);

/// Corestriction onto the image subgroup; cyclic-to-cyclic only.
/// The downstream use of cd/cat equality across corestriction is recorded
/// by certificate metadata, not assumed silently here.
GroupHom restrict_to_image(const GroupHom& phi);

/// Element of Z[Z_n]: coefficient of t^i at index i.
class GroupRingElement {
public:
    GroupRingElement() = default;
    GroupRingElement(GroupSpec group, IntVec coeffs);
    static GroupRingElement zero(const GroupSpec& g);
    static GroupRingElement one(const GroupSpec& g);
    static GroupRingElement generator_power(const GroupSpec& g, const Int& e);

    const GroupSpec& group() const { return group_; }
    const IntVec& coeffs() const { return coeffs_; }
    Int order() const { return group_.cyclic_order(); }

    bool is_zero() const;
    Int augmentation() const;  // sum of coefficients

    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator-() const;
    GroupRingElement scaled(const Int& c) const;
    bool operator==(const GroupRingElement& o) const;

    /// Matrix of left multiplication by this element on Z[Z_n] (circulant).
    IntMatrix regular_representation() const;

    std::string to_string() const;

private:
    GroupSpec group_;
    IntVec coeffs_;
};

/// Cyclic convolution mod t^n = 1.
GroupRingElement ring_multiply(const GroupRingElement& a, const GroupRingElement& b);

/// N = 1 + t + ... + t^{n-1}.
GroupRingElement norm_element(const Int& n);

/// Push coefficients through a cyclic-to-cyclic hom: t^i |-> s^{d i}.
GroupRingElement hom_image(const GroupHom& phi, const GroupRingElement& a);

/// Module over a group: underlying abelian group Z^g modulo the row span of
/// `relations` (rows are relation vectors), with the distinguished generator
/// acting by `action` on representatives.
class GModule {
public:
    GModule() = default;
    GModule(GroupSpec group, IntMatrix relations, IntMatrix action, std::string label = {});

    const GroupSpec& group() const { return group_; }
    const IntMatrix& relations() const { return relations_; }
    const IntMatrix& action() const { return action_; }
    const std::string& label() const { return label_; }

    int cover_rank() const { return action_.cols(); }
    bool is_free() const { return relations_.rows() == 0; }

    /// Matrix of a group-ring element acting on representatives.
    IntMatrix act(const GroupRingElement& r) const;
    IntMatrix act_power(const Int& e) const;  // action^e, e >= 0 reduced mod order

    /// Relation lattice as matrix columns (transposed relations), plus an
    /// injective basis used by cone constructions.
    IntMatrix relation_columns() const { return relations_.transpose(); }
    IntMatrix relation_basis() const;  // injective: basis of the relation lattice
    /// Action induced on the relation basis coordinates (R X = A R).
    IntMatrix relation_action(const IntMatrix& relation_basis) const;

    /// Checks the action preserves the relation lattice and has order
    /// dividing n on the cokernel; throws on violation.
    void validate() const;

    std::string to_string() const;

private:
    GroupSpec group_;
    IntMatrix relations_;  // rows are relations over Z^{cover_rank}
    IntMatrix action_;
    std::string label_;
};

GModule trivial_module_Z(const GroupSpec& g);
GModule trivial_module_Zm(const GroupSpec& g, const Int& m);
GModule regular_module(const GroupSpec& g);  // Z[Z_n] with t acting by the cycle

/// I(Z_n): rank n-1 with basis b_i = t^i - t^{i-1} (i = 1..n-1), so the
/// generator acts by b_i |-> b_{i+1} and b_{n-1} |-> -(b_1 + ... + b_{n-1}).
GModule augmentation_ideal(const GroupSpec& g);

/// Expand t^a - 1 in the augmentation-ideal basis: b_1 + ... + b_a.
IntVec aug_ideal_coords(const Int& n, const Int& a);

/// k-fold tensor power with diagonal action; free-abelian modules only.
GModule tensor_power(const GModule& m, int k);

/// Same underlying group, generator acting via phi(t); records provenance.
GModule pullback_module(const GModule& m, const GroupHom& phi);

/// Fixed test-module family for a cyclic group, used wherever "for any
/// module M" statements are spot-checked at family scale.
std::vector<GModule> standard_module_family(const GroupSpec& g);

}  // namespace homdim
