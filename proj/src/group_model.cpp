#include "homdim/group_model.hpp"

#include <algorithm>
#include <sstream>

namespace homdim {

Word Word::inverse() const {
    Word w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        w.letters.push_back({it->gen, -it->exp});
    return w;
}

std::string Word::to_string(const std::vector<std::string>& names) const {
    if (letters.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& l : letters) {
        if (!first) os << " ";
        first = false;
        os << (l.gen < int(names.size()) ? names[l.gen] : "g" + std::to_string(l.gen));
        if (l.exp != 1) os << "^" << l.exp;
    }
    return os.str();
}

Word reduce_word(const Word& w) {
    Word r;
    for (const auto& l : w.letters) {
        if (l.exp == 0) continue;
        if (!r.letters.empty() && r.letters.back().gen == l.gen) {
            r.letters.back().exp += l.exp;
            if (r.letters.back().exp == 0) r.letters.pop_back();
        } else {
            r.letters.push_back(l);
        }
    }
    return r;
}

Word concat_words(const Word& a, const Word& b) {
    Word w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return reduce_word(w);
}

Word word_power(const Word& w, const Int& e) {
    Word base = e < 0 ? w.inverse() : w;
    Int n = abs(e);
    Word acc;
    for (Int i = 0; i < n; ++i) acc = concat_words(acc, base);
    return acc;
}

GroupSpec::GroupSpec(CyclicGroup c) : v_(std::move(c)) {
    if (std::get<CyclicGroup>(v_).order < 1) throw Error("cyclic group: order must be >= 1");
}

GroupSpec::GroupSpec(FreeGroup f) : v_(std::move(f)) {
    if (std::get<FreeGroup>(v_).rank < 0) throw Error("free group: rank must be >= 0");
}

GroupSpec::GroupSpec(FpGroup f) : v_(std::move(f)) {
    const auto& fp = std::get<FpGroup>(v_);
    for (const Word& r : fp.relators) {
        if (!(reduce_word(r) == r)) throw Error("fp group: relator is not freely reduced");
        for (const auto& l : r.letters)
            if (l.gen < 0 || l.gen >= int(fp.generators.size()))
                throw Error("fp group: relator uses undeclared generator");
    }
}

bool GroupSpec::is_trivial() const {
    if (is_cyclic()) return cyclic_order() == 1;
    if (is_free()) return free_rank() == 0;
    return false;  // fp triviality is not decided
}

Int GroupSpec::cyclic_order() const {
    if (!is_cyclic()) throw Error("cyclic_order: not a cyclic group");
    return std::get<CyclicGroup>(v_).order;
}

int GroupSpec::free_rank() const {
    if (!is_free()) throw Error("free_rank: not a free group");
    return std::get<FreeGroup>(v_).rank;
}

const FpGroup& GroupSpec::fp() const {
    if (!is_fp()) throw Error("fp: not a finitely presented group");
    return std::get<FpGroup>(v_);
}

int GroupSpec::generator_count() const {
    if (is_cyclic()) return 1;
    if (is_free()) return free_rank();
    return int(fp().generators.size());
}

std::vector<std::string> GroupSpec::generator_names() const {
    if (is_cyclic()) return {"t"};
    if (is_fp()) return fp().generators;
    std::vector<std::string> names;
    for (int i = 0; i < free_rank(); ++i) {
        if (i < 26)
            names.push_back(std::string(1, char('a' + i)));
        else
            names.push_back("g" + std::to_string(i));
    }
    return names;
}

std::vector<Word> GroupSpec::relators() const {
    if (is_free()) return {};
    if (is_fp()) return fp().relators;
    // cyclic n: relator t^n
    Word r;
    r.letters.push_back({0, cyclic_order()});
    return {r};
}

bool GroupSpec::operator==(const GroupSpec& o) const {
    if (is_cyclic() && o.is_cyclic()) return cyclic_order() == o.cyclic_order();
    if (is_free() && o.is_free()) return free_rank() == o.free_rank();
    if (is_fp() && o.is_fp()) {
        return fp().generators == o.fp().generators && fp().relators == o.fp().relators;
    }
    return false;
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    if (is_cyclic())
        os << "cyclic:" << cyclic_order();
    else if (is_free())
        os << "free:" << free_rank();
    else {
        os << "fp{gens=";
        const auto& f = fp();
        for (size_t i = 0; i < f.generators.size(); ++i) os << (i ? "," : "") << f.generators[i];
        os << "; rels=[";
        for (size_t i = 0; i < f.relators.size(); ++i)
            os << (i ? ", " : "") << f.relators[i].to_string(f.generators);
        os << "]}";
    }
    return os.str();
}

namespace {

// exponent sum of a word in a cyclic codomain, reduced to [0, m)
Int cyclic_eval(const Word& w, const Int& m) {
    Int s = 0;
    for (const auto& l : w.letters) s += l.exp;
    s %= m;
    if (s < 0) s += m;
    return s;
}

}  // namespace

GroupHom::GroupHom(GroupSpec domain, GroupSpec codomain, std::vector<Word> images)
    : dom_(std::move(domain)), cod_(std::move(codomain)), images_(std::move(images)) {
    if (int(images_.size()) != dom_.generator_count())
        throw Error("GroupHom: one image per domain generator required");
    for (Word& w : images_) {
        w = reduce_word(w);
        int ngen = cod_.generator_count();
        for (const auto& l : w.letters)
            if (l.gen < 0 || l.gen >= ngen) throw Error("GroupHom: image uses undeclared codomain generator");
    }
    validate();
}

void GroupHom::validate() const {
    if (cod_.is_fp())
        throw Error("GroupHom: fp codomains are unsupported (word problem undecidable)");
    for (const Word& rel : dom_.relators()) {
        Word img;
        for (const auto& l : rel.letters) img = concat_words(img, word_power(images_[l.gen], l.exp));
        if (cod_.is_cyclic()) {
            if (cyclic_eval(img, cod_.cyclic_order()) != 0)
                throw Error("GroupHom: relator image is not the identity in the codomain");
        } else {
            if (!img.empty()) throw Error("GroupHom: relator image is not the identity in the codomain");
        }
    }
}

Int GroupHom::multiplier() const {
    if (!is_cyclic_to_cyclic()) throw Error("multiplier: cyclic-to-cyclic hom required");
    return cyclic_eval(images_[0], cod_.cyclic_order());
}

bool GroupHom::is_epimorphism() const {
    if (cod_.is_trivial()) return true;
    if (cod_.is_cyclic()) {
        // images generate Z_m iff the gcd of their exponent sums is prime to m
        Int m = cod_.cyclic_order();
        Int g = m;
        for (const Word& w : images_) g = homdim::gcd(g, cyclic_eval(w, m));
        return homdim::gcd(g, m) == 1;
    }
    throw Error("is_epimorphism: undecided for this codomain (use folding)");
}

bool GroupHom::is_trivial_map() const {
    if (cod_.is_cyclic()) {
        for (const Word& w : images_)
            if (cyclic_eval(w, cod_.cyclic_order()) != 0) return false;
        return true;
    }
    for (const Word& w : images_)
        if (!w.empty()) return false;
    return true;
}

Word GroupHom::apply(const Word& w) const {
    Word img;
    for (const auto& l : w.letters) img = concat_words(img, word_power(images_[l.gen], l.exp));
    if (cod_.is_cyclic()) {
        Word out;
        Int e = cyclic_eval(img, cod_.cyclic_order());
        if (e != 0) out.letters.push_back({0, e});
        return out;
    }
    return img;
}

std::string GroupHom::to_string() const {
    std::ostringstream os;
    os << "hom{dom=" << dom_.to_string() << "; cod=" << cod_.to_string() << "; images=[";
    auto names = cod_.generator_names();
    for (size_t i = 0; i < images_.size(); ++i) os << (i ? ", " : "") << images_[i].to_string(names);
    os << "]}";
    return os.str();
}

GroupHom make_cyclic_hom(const Int& n, const Int& m, const Int& d) {
    if (n < 1 || m < 1) throw Error("make_cyclic_hom: orders must be >= 1");
    if ((d * n) % m != 0) {
        std::ostringstream os;
        os << "make_cyclic_hom: t |-> s^" << d << " is not a homomorphism Z_" << n << " -> Z_" << m
           << " (" << m << " does not divide " << d * n << ")";
        throw Error(os.str());
    }
    Word img;
    Int dd = d % m;
    if (dd < 0) dd += m;
    if (dd != 0) img.letters.push_back({0, dd});
    return GroupHom(GroupSpec::cyclic(n), GroupSpec::cyclic(m), {img});
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (!(inner.codomain() == outer.domain())) throw Error("compose: codomain/domain mismatch");
    std::vector<Word> images;
    for (const Word& w : inner.images()) images.push_back(outer.apply(w));
    return GroupHom(inner.domain(), outer.codomain(), images);
}

GroupHom restrict_to_image(const GroupHom& phi) {
    if (!phi.is_cyclic_to_cyclic()) throw Error("restrict_to_image: cyclic-to-cyclic hom required");
    Int m = phi.codomain().cyclic_order();
    Int d = phi.multiplier();
    Int g = homdim::gcd(d, m);
    if (d == 0) return make_cyclic_hom(phi.domain().cyclic_order(), 1, 0);
    Int m2 = m / g;       // order of the image subgroup <s^d> = <s^g>
    Int d2 = d / g;       // s^d = (s^g)^{d/g}
    return make_cyclic_hom(phi.domain().cyclic_order(), m2, d2);
}

GroupRingElement::GroupRingElement(GroupSpec group, IntVec coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
    if (!group_.is_cyclic()) throw Error("GroupRingElement: cyclic groups only");
    if (Int(coeffs_.size()) != group_.cyclic_order())
        throw Error("GroupRingElement: coefficient vector length must equal the group order");
}

GroupRingElement GroupRingElement::zero(const GroupSpec& g) {
    return GroupRingElement(g, IntVec(size_t(g.cyclic_order()), Int(0)));
}

GroupRingElement GroupRingElement::one(const GroupSpec& g) { return generator_power(g, 0); }

GroupRingElement GroupRingElement::generator_power(const GroupSpec& g, const Int& e) {
    Int n = g.cyclic_order();
    IntVec c(size_t(n), Int(0));
    Int i = e % n;
    if (i < 0) i += n;
    c[size_t(i)] = 1;
    return GroupRingElement(g, c);
}

bool GroupRingElement::is_zero() const {
    for (const Int& c : coeffs_)
        if (c != 0) return false;
    return true;
}

Int GroupRingElement::augmentation() const {
    Int s = 0;
    for (const Int& c : coeffs_) s += c;
    return s;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    if (!(group_ == o.group_)) throw Error("group ring: group mismatch");
    IntVec c(coeffs_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
    return GroupRingElement(group_, c);
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const { return *this + (-o); }

GroupRingElement GroupRingElement::operator-() const {
    IntVec c(coeffs_);
    for (Int& x : c) x = -x;
    return GroupRingElement(group_, c);
}

GroupRingElement GroupRingElement::scaled(const Int& k) const {
    IntVec c(coeffs_);
    for (Int& x : c) x *= k;
    return GroupRingElement(group_, c);
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    return group_ == o.group_ && coeffs_ == o.coeffs_;
}

IntMatrix GroupRingElement::regular_representation() const {
    const size_t n = coeffs_.size();
    IntMatrix m(static_cast<int>(n), static_cast<int>(n));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) m.at(int((i + j) % n), int(j)) = coeffs_[i];
    return m;
}

std::string GroupRingElement::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (any) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        Int a = abs(coeffs_[i]);
        any = true;
        if (i == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (!any) os << "0";
    return os.str();
}

GroupRingElement ring_multiply(const GroupRingElement& a, const GroupRingElement& b) {
    if (!(a.group() == b.group())) throw Error("ring_multiply: group mismatch");
    const size_t n = a.coeffs().size();
    IntVec c(n, Int(0));
    for (size_t i = 0; i < n; ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (b.coeffs()[j] == 0) continue;
            c[(i + j) % n] += a.coeffs()[i] * b.coeffs()[j];
        }
    }
    return GroupRingElement(a.group(), c);
}

GroupRingElement norm_element(const Int& n) {
    if (n < 1) throw Error("norm_element: order must be >= 1");
    return GroupRingElement(GroupSpec::cyclic(n), IntVec(size_t(n), Int(1)));
}

GroupRingElement hom_image(const GroupHom& phi, const GroupRingElement& a) {
    if (!phi.is_cyclic_to_cyclic()) throw Error("hom_image: cyclic-to-cyclic hom required");
    if (!(a.group() == phi.domain())) throw Error("hom_image: element not over the domain");
    Int m = phi.codomain().cyclic_order();
    Int d = phi.multiplier();
    IntVec c(size_t(m), Int(0));
    Int n = a.order();
    for (Int i = 0; i < n; ++i) {
        const Int& ci = a.coeffs()[size_t(i)];
        if (ci == 0) continue;
        Int j = (d * i) % m;
        c[size_t(j)] += ci;
    }
    return GroupRingElement(phi.codomain(), c);
}

GModule::GModule(GroupSpec group, IntMatrix relations, IntMatrix action, std::string label)
    : group_(std::move(group)), relations_(std::move(relations)), action_(std::move(action)),
      label_(std::move(label)) {
    if (action_.rows() != action_.cols()) throw Error("GModule: action matrix must be square");
    if (relations_.cols() != action_.cols() && relations_.rows() != 0)
        throw Error("GModule: relations and action must agree on the generator count");
    if (relations_.rows() == 0 && relations_.cols() != action_.cols())
        relations_ = IntMatrix(0, action_.cols());
}

IntMatrix GModule::act(const GroupRingElement& r) const {
    if (!(r.group() == group_)) throw Error("GModule::act: group mismatch");
    const int g = cover_rank();
    IntMatrix sum(g, g);
    IntMatrix p = IntMatrix::identity(g);
    Int n = r.order();
    for (Int i = 0; i < n; ++i) {
        const Int& c = r.coeffs()[size_t(i)];
        if (c != 0) sum = sum + p.scaled(c);
        if (i + 1 < n) p = p * action_;
    }
    return sum;
}

IntMatrix GModule::act_power(const Int& e) const {
    Int n = group_.cyclic_order();
    Int r = e % n;
    if (r < 0) r += n;
    return action_.pow(r.convert_to<unsigned long>());
}

IntMatrix GModule::relation_basis() const {
    if (relations_.rows() == 0) return IntMatrix(cover_rank(), 0);
    return column_span_basis(relations_.transpose());
}

IntMatrix GModule::relation_action(const IntMatrix& rb) const {
    // solve R X = A R column by column; exact because the action preserves
    // the relation lattice and R is injective
    if (rb.cols() == 0) return IntMatrix(0, 0);
    LinearSolver solver(rb);
    IntMatrix target = action_ * rb;
    IntMatrix x(rb.cols(), rb.cols());
    for (int j = 0; j < rb.cols(); ++j) {
        IntVec col(target.rows());
        for (int i = 0; i < target.rows(); ++i) col[i] = target.at(i, j);
        auto sol = solver.solve(col);
        if (!sol) throw Error("GModule: action does not preserve the relation lattice");
        for (int i = 0; i < rb.cols(); ++i) x.at(i, j) = (*sol)[i];
    }
    return x;
}

void GModule::validate() const {
    if (!group_.is_cyclic()) throw Error("GModule: cyclic groups only");
    IntMatrix rb = relation_basis();
    relation_action(rb);  // throws if the lattice is not preserved
    // action^n = identity on the cokernel
    Int n = group_.cyclic_order();
    IntMatrix p = act_power(n) - IntMatrix::identity(cover_rank());
    if (rb.cols() == 0) {
        if (!p.is_zero()) throw Error("GModule: action^n is not the identity");
        return;
    }
    LinearSolver solver(rb);
    for (int j = 0; j < p.cols(); ++j) {
        IntVec col(p.rows());
        for (int i = 0; i < p.rows(); ++i) col[i] = p.at(i, j);
        if (!solver.solvable(col)) throw Error("GModule: action^n is not the identity on the cokernel");
    }
}

std::string GModule::to_string() const {
    if (!label_.empty()) return label_;
    std::ostringstream os;
    os << "module{rels=" << relations_.to_string() << "; action=" << action_.to_string() << "}";
    return os.str();
}

GModule trivial_module_Z(const GroupSpec& g) {
    return GModule(g, IntMatrix(0, 1), IntMatrix::identity(1), "Z");
}

GModule trivial_module_Zm(const GroupSpec& g, const Int& m) {
    IntMatrix rel(1, 1);
    rel.at(0, 0) = m;
    std::ostringstream os;
    os << "Z/" << m;
    return GModule(g, rel, IntMatrix::identity(1), os.str());
}

GModule regular_module(const GroupSpec& g) {
    Int n = g.cyclic_order();
    int ni = n.convert_to<int>();
    IntMatrix a(ni, ni);
    for (int i = 0; i < ni; ++i) a.at((i + 1) % ni, i) = 1;
    std::ostringstream os;
    os << "Z[Z_" << n << "]";
    return GModule(g, IntMatrix(0, ni), a, os.str());
}

GModule augmentation_ideal(const GroupSpec& g) {
    Int n = g.cyclic_order();
    int r = n.convert_to<int>() - 1;
    IntMatrix a(r, r);
    for (int i = 0; i + 1 < r; ++i) a.at(i + 1, i) = 1;
    if (r > 0)
        for (int i = 0; i < r; ++i) a.at(i, r - 1) = -1;
    std::ostringstream os;
    os << "I(Z_" << n << ")";
    return GModule(g, IntMatrix(0, r), a, os.str());
}

IntVec aug_ideal_coords(const Int& n, const Int& a) {
    int r = n.convert_to<int>() - 1;
    IntVec v(size_t(r), Int(0));
    Int e = a % n;
    if (e < 0) e += n;
    for (Int i = 1; i <= e; ++i) v[size_t(i - 1)] += 1;
    return v;
}

GModule tensor_power(const GModule& m, int k) {
    if (k < 0) throw Error("tensor_power: k must be >= 0");
    if (!m.is_free())
        throw Error("tensor_power: unsupported input (torsion module); free-abelian modules only");
    IntMatrix a = IntMatrix::identity(1);
    for (int i = 0; i < k; ++i) a = IntMatrix::kronecker(a, m.action());
    std::ostringstream os;
    os << m.to_string() << "^(x" << k << ")";
    return GModule(m.group(), IntMatrix(0, a.cols()), a, os.str());
}

GModule pullback_module(const GModule& m, const GroupHom& phi) {
    if (!(m.group() == phi.codomain())) throw Error("pullback_module: module not over the codomain");
    if (!phi.is_cyclic_to_cyclic()) throw Error("pullback_module: cyclic-to-cyclic hom required");
    IntMatrix a = m.act_power(phi.multiplier());
    std::ostringstream os;
    os << m.to_string() << " via " << phi.domain().to_string();
    return GModule(phi.domain(), m.relations(), a, os.str());
}

std::vector<GModule> standard_module_family(const GroupSpec& g) {
    Int n = g.cyclic_order();
    std::vector<GModule> fam;
    fam.push_back(trivial_module_Z(g));
    fam.push_back(trivial_module_Zm(g, n));
    fam.push_back(regular_module(g));
    fam.push_back(augmentation_ideal(g));
    // Z/n^2 with the generator acting as the unit n+1, which has order
    // exactly n mod n^2
    if (n > 1) {
        IntMatrix rel(1, 1), act(1, 1);
        rel.at(0, 0) = n * n;
        act.at(0, 0) = n + 1;
        std::ostringstream os;
        os << "Z/" << n * n << " (x" << n + 1 << ")";
        fam.push_back(GModule(g, rel, act, os.str()));
    }
    return fam;
}

}  // namespace homdim
