#include "homdim/cohomology.hpp"

#include <algorithm>
#include <sstream>

namespace homdim {

std::string CohomologyGroup::describe() const {
    std::ostringstream os;
    bool any = false;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        any = true;
    }
    for (const Int& t : torsion) {
        if (any) os << " + ";
        os << "Z/" << t;
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

namespace {

// cache of act(t^a) for a = 0..n-1
std::vector<IntMatrix> action_powers(const IntMatrix& a, long n) {
    std::vector<IntMatrix> p;
    p.reserve(size_t(n));
    p.push_back(IntMatrix::identity(a.rows()));
    for (long i = 1; i < n; ++i) p.push_back(p.back() * a);
    return p;
}

IntMatrix act_element(const std::vector<IntMatrix>& pows, const GroupRingElement& e) {
    const int g = pows[0].rows();
    IntMatrix out(g, g);
    for (size_t a = 0; a < e.coeffs().size(); ++a) {
        const Int& c = e.coeffs()[a];
        if (c == 0) continue;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                if (pows[a].at(i, j) != 0) out.at(i, j) += c * pows[a].at(i, j);
    }
    return out;
}

// dense cochain differential d^k: blocks act(D_ij) at (row j, col i) for each
// entry (i, elt) in column j of the resolution differential d_{k+1}
IntMatrix dense_cochain_diff(const Resolution& r, const std::vector<IntMatrix>& pows, int g,
                             int k) {
    const RingMat& d = r.diff(k + 1);
    IntMatrix out(g * d.cols, g * d.rows);
    for (int j = 0; j < d.cols; ++j)
        for (const auto& [i, elt] : d.col[size_t(j)]) {
            IntMatrix blk = act_element(pows, elt);
            for (int a = 0; a < g; ++a)
                for (int b = 0; b < g; ++b)
                    if (blk.at(a, b) != 0) out.at(j * g + a, i * g + b) += blk.at(a, b);
        }
    return out;
}

void emit_cochain_triplets(const Resolution& r, const std::vector<IntMatrix>& pows, int g, int k,
                           int row_off, int col_off, int sign,
                           std::vector<ReducedComplex::Triplet>& out) {
    const RingMat& d = r.diff(k + 1);
    for (int j = 0; j < d.cols; ++j)
        for (const auto& [i, elt] : d.col[size_t(j)]) {
            IntMatrix blk = act_element(pows, elt);
            for (int a = 0; a < g; ++a)
                for (int b = 0; b < g; ++b)
                    if (blk.at(a, b) != 0)
                        out.push_back({row_off + j * g + a, col_off + i * g + b,
                                       sign > 0 ? blk.at(a, b) : -blk.at(a, b)});
        }
}

IntVec apply_triplets(const std::vector<ReducedComplex::Triplet>& t, int out_dim, const IntVec& x) {
    IntVec y(size_t(out_dim), Int(0));
    for (const auto& [row, col, val] : t)
        if (x[size_t(col)] != 0) y[size_t(row)] += val * x[size_t(col)];
    return y;
}

IntVec kron_vec(const IntVec& u, const IntVec& v) {
    IntVec out(u.size() * v.size(), Int(0));
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) out[i * v.size() + j] = u[i] * v[j];
    }
    return out;
}

}  // namespace

struct CochainEngine::Degree {
    CohomologyGroup group;
    // lattice route (dense mode and cone degree 0): explicit cocycle basis
    IntMatrix cocycle_basis;  // columns, in working coordinates
    std::unique_ptr<LinearSolver> cocycle_solver;
    std::unique_ptr<LinearSolver> boundary_solver;
    QuotientPresentation pres;
    // torsion route (cone mode, degree >= 1): H^k is finite for a finite
    // group, so it equals the torsion of coker(d^{k-1}); pres presents that
    // cokernel and only its torsion generators are cohomology generators
    bool torsion_route = false;
    int torsion_count = 0;
};

CochainEngine::~CochainEngine() = default;
CochainEngine::CochainEngine(CochainEngine&&) noexcept = default;

CochainEngine::CochainEngine(Resolution r, GModule m, CohomologyOptions opts)
    : res_(std::move(r)), mod_(std::move(m)), opts_(opts) {
    if (!(res_.group() == mod_.group()))
        throw Error("CochainEngine: module group does not match the resolution");
    const int g = mod_.cover_rank();
    const long n = res_.group().cyclic_order().convert_to<long>();
    const int top = res_.top_degree();
    std::vector<IntMatrix> pows = action_powers(mod_.action(), std::max(n, 1L));

    cone_mode_ = res_.kind() == Resolution::Kind::Bar;
    degrees_.resize(size_t(top));

    if (!cone_mode_) {
        rel_basis_ = mod_.relation_basis();
        d_.reserve(size_t(top));
        rel_.reserve(size_t(top) + 1);
        for (int k = 0; k < top; ++k) d_.push_back(dense_cochain_diff(res_, pows, g, k));
        const int s = rel_basis_.cols();
        for (int k = 0; k <= top; ++k) {
            IntMatrix rb(g * res_.rank(k), s * res_.rank(k));
            for (int blk = 0; blk < res_.rank(k); ++blk)
                for (int a = 0; a < g; ++a)
                    for (int b = 0; b < s; ++b) rb.at(blk * g + a, blk * s + b) = rel_basis_.at(a, b);
            rel_.push_back(std::move(rb));
        }
        return;
    }

    // Cone over a coefficient presentation 0 -> K -> F -> M -> 0 by honest
    // integral representations of the group (the cochain differentials on F
    // and K must square to zero exactly, not just modulo relations). When the
    // module's own cover action has exact order n it serves as F directly;
    // otherwise F is the free cover Z[G]^g with its invariant kernel lattice.
    bool honest =
        mod_.action().pow(size_t(n) < 64 ? static_cast<unsigned long>(std::max(n, 1L)) : 1) ==
        IntMatrix::identity(g);
    if (n >= 64) honest = false;  // avoid huge probe powers; the free cover always works
    IntMatrix cover_action;
    if (honest) {
        cover_dim_ = g;
        cover_action = mod_.action();
        rel_basis_ = mod_.relation_basis();
        cover_sigma_ = IntMatrix::identity(g);
        cover_pi_ = IntMatrix::identity(g);
    } else {
        const int ni = int(n);
        cover_dim_ = g * ni;
        // e_(i,a) |-> e_(i,a+1 mod n), layout index i*n + a
        cover_action = IntMatrix(cover_dim_, cover_dim_);
        for (int i = 0; i < g; ++i)
            for (int a = 0; a < ni; ++a) cover_action.at(i * ni + (a + 1) % ni, i * ni + a) = 1;
        // pi: e_(i,a) |-> A^a e_i;  sigma: e_i |-> e_(i,0)
        cover_pi_ = IntMatrix(g, cover_dim_);
        cover_sigma_ = IntMatrix(cover_dim_, g);
        for (int i = 0; i < g; ++i) cover_sigma_.at(i * ni + 0, i) = 1;
        {
            IntMatrix apow = IntMatrix::identity(g);
            for (int a = 0; a < ni; ++a) {
                for (int i = 0; i < g; ++i)
                    for (int b = 0; b < g; ++b) cover_pi_.at(b, i * ni + a) = apow.at(b, i);
                apow = mod_.action() * apow;
            }
        }
        // kernel lattice of Z^{ng} -> Z^g -> M: x-part span of ker [pi | -rel]
        IntMatrix mrel = mod_.relation_basis();
        IntMatrix f = cover_pi_.hconcat(-mrel);
        IntMatrix kerf = kernel_basis(f);
        IntMatrix gens(cover_dim_, kerf.cols());
        for (int j = 0; j < kerf.cols(); ++j)
            for (int i = 0; i < cover_dim_; ++i) gens.at(i, j) = kerf.at(i, j);
        rel_basis_ = column_span_basis(gens);
    }
    const int s = rel_basis_.cols();
    if (s > 0) rel_solver_ = std::make_unique<LinearSolver>(rel_basis_);
    std::vector<IntMatrix> cover_pows = action_powers(cover_action, std::max(n, 1L));
    std::vector<IntMatrix> rel_pows;
    if (s > 0) {
        // restriction of the cover action to the kernel lattice basis
        LinearSolver rs(rel_basis_);
        IntMatrix target = cover_action * rel_basis_;
        IntMatrix arel(s, s);
        for (int j = 0; j < s; ++j) {
            IntVec col(size_t(target.rows()));
            for (int i = 0; i < target.rows(); ++i) col[size_t(i)] = target.at(i, j);
            auto sol = rs.solve(col);
            if (!sol) throw Error("internal: cover action does not preserve the kernel lattice");
            for (int i = 0; i < s; ++i) arel.at(i, j) = (*sol)[size_t(i)];
        }
        rel_pows = action_powers(arel, std::max(n, 1L));
    }

    const int K = top - 1;
    const int cg = cover_dim_;
    std::vector<int> dims(size_t(K) + 2);
    cone_xdim_.resize(size_t(K) + 2);
    for (int k = 0; k <= K; ++k) {
        cone_xdim_[size_t(k)] = cg * res_.rank(k);
        dims[size_t(k)] = cg * res_.rank(k) + s * res_.rank(k + 1);
    }
    cone_xdim_[size_t(K) + 1] = cg * res_.rank(K + 1);
    dims[size_t(K) + 1] = cg * res_.rank(K + 1);

    std::vector<std::vector<ReducedComplex::Triplet>> diffs(size_t(K) + 1);
    xdiff_.resize(size_t(K) + 1);
    for (int k = 0; k <= K; ++k) {
        auto& t = diffs[size_t(k)];
        emit_cochain_triplets(res_, cover_pows, cg, k, 0, 0, +1, t);
        xdiff_[size_t(k)] = t;  // the plain d^k block on F, used for cocycle tests
        if (s > 0) {
            // K-block: C^{k+1}(K) -> C^{k+1}(F), the lattice inclusion per block
            for (int blk = 0; blk < res_.rank(k + 1); ++blk)
                for (int a = 0; a < cg; ++a)
                    for (int b = 0; b < s; ++b)
                        if (rel_basis_.at(a, b) != 0)
                            t.push_back({blk * cg + a, cone_xdim_[size_t(k)] + blk * s + b,
                                         rel_basis_.at(a, b)});
            if (k < K) {
                // -d^{k+1} on the kernel side
                emit_cochain_triplets(res_, rel_pows, s, k + 1, cg * res_.rank(k + 1),
                                      cone_xdim_[size_t(k)], -1, t);
            }
        }
    }
    cone_ = std::make_unique<ReducedComplex>(dims, diffs, opts_.dense_limit);
}

IntVec CochainEngine::to_cover(int k, const IntVec& x) const {
    const int g = mod_.cover_rank();
    if (cover_dim_ == g) return x;
    IntVec out(size_t(cover_dim_) * res_.rank(k), Int(0));
    for (int blk = 0; blk < res_.rank(k); ++blk)
        for (int i = 0; i < g; ++i)
            for (int a = 0; a < cover_dim_; ++a)
                if (cover_sigma_.at(a, i) != 0)
                    out[size_t(blk * cover_dim_ + a)] += cover_sigma_.at(a, i) * x[size_t(blk * g + i)];
    return out;
}

IntVec CochainEngine::from_cover(int k, const IntVec& x) const {
    const int g = mod_.cover_rank();
    if (cover_dim_ == g) return x;
    IntVec out(size_t(g) * res_.rank(k), Int(0));
    for (int blk = 0; blk < res_.rank(k); ++blk)
        for (int a = 0; a < cover_dim_; ++a) {
            if (x[size_t(blk * cover_dim_ + a)] == 0) continue;
            for (int i = 0; i < g; ++i)
                if (cover_pi_.at(i, a) != 0)
                    out[size_t(blk * g + i)] += cover_pi_.at(i, a) * x[size_t(blk * cover_dim_ + a)];
        }
    return out;
}

void CochainEngine::check_degree(int k) const {
    if (k < 0 || k > max_degree()) {
        std::ostringstream os;
        os << "degree " << k << " out of range (resolution supports 0.." << max_degree() << ")";
        throw Error(os.str());
    }
}

int CochainEngine::cochain_dim(int k) const {
    check_degree(k);
    return mod_.cover_rank() * res_.rank(k);
}

IntVec CochainEngine::cone_lift(int k, const IntVec& x) const {
    const int cg = cover_dim_;
    const int s = rel_basis_.cols();
    IntVec xf = to_cover(k, x);
    if (s == 0) return xf;
    IntVec out(size_t(cone_xdim_[size_t(k)] + s * res_.rank(k + 1)), Int(0));
    std::copy(xf.begin(), xf.end(), out.begin());
    IntVec dx = apply_triplets(xdiff_[size_t(k)], cg * res_.rank(k + 1), xf);
    for (int blk = 0; blk < res_.rank(k + 1); ++blk) {
        IntVec rhs(static_cast<size_t>(cg));
        for (int a = 0; a < cg; ++a) rhs[size_t(a)] = dx[size_t(blk * cg + a)];
        auto w = rel_solver_->solve(rhs);
        if (!w) throw Error("cone lift: cochain is not a cocycle modulo the relations");
        for (int b = 0; b < s; ++b) out[size_t(cone_xdim_[size_t(k)] + blk * s + b)] = -(*w)[size_t(b)];
    }
    return out;
}

IntVec CochainEngine::strip_cone(int k, const IntVec& v) const {
    return IntVec(v.begin(), v.begin() + cone_xdim_[size_t(k)]);
}

const CochainEngine::Degree& CochainEngine::degree_data(int k) const {
    check_degree(k);
    auto& slot = degrees_[size_t(k)];
    if (slot) return *slot;

    auto deg = std::make_unique<Degree>();
    CohomologyGroup& grp = deg->group;
    grp.group = res_.group();
    grp.degree = k;

    if (cone_mode_ && k >= 1) {
        // torsion route: H^k = torsion(coker(d^{k-1})) on the reduced complex
        deg->torsion_route = true;
        deg->pres = QuotientPresentation(cone_->reduced_dim(k), cone_->reduced_diff(k - 1));
        deg->torsion_count = int(deg->pres.torsion().size());
        grp.free_rank = 0;
        grp.torsion = deg->pres.torsion();
        const auto& gens = deg->pres.generator_indices();
        for (int t = 0; t < deg->torsion_count; ++t) {
            int gi = gens[size_t(t)];
            IntVec rep = from_cover(k, strip_cone(k, cone_->include(k, deg->pres.generator_rep(gi))));
            grp.representatives.push_back(rep);
            grp.generator_orders.push_back(deg->pres.orders()[size_t(gi)]);
        }
        // an infinite-order class would contradict |G|-torsion of H^k
        for (size_t t = size_t(deg->torsion_count); t < gens.size(); ++t) {
            IntVec drep = cone_->reduced_diff(k).apply(deg->pres.generator_rep(gens[t]));
            bool zero = true;
            for (const Int& v : drep)
                if (v != 0) zero = false;
            if (zero) throw Error("internal: infinite-order cohomology class for a finite group");
        }
        slot = std::move(deg);
        return *slot;
    }

    IntMatrix f, b;
    if (!cone_mode_) {
        // cocycles: x with d^k x = rel w for some w
        const IntMatrix& rel_next = rel_[size_t(k) + 1];
        f = d_[size_t(k)].hconcat(-rel_next);
        IntMatrix kerf = kernel_basis(f);
        IntMatrix gens(cochain_dim(k), kerf.cols());
        for (int j = 0; j < kerf.cols(); ++j)
            for (int i = 0; i < cochain_dim(k); ++i) gens.at(i, j) = kerf.at(i, j);
        deg->cocycle_basis = column_span_basis(gens);
        b = (k > 0) ? d_[size_t(k) - 1].hconcat(rel_[size_t(k)])
                    : IntMatrix(cochain_dim(k), 0).hconcat(rel_[size_t(k)]);
    } else {
        f = cone_->reduced_diff(k);
        deg->cocycle_basis = kernel_basis(f);
        b = IntMatrix(cone_->reduced_dim(k), 0);
    }

    deg->cocycle_solver = std::make_unique<LinearSolver>(deg->cocycle_basis);
    deg->boundary_solver = std::make_unique<LinearSolver>(b);

    // express coboundary generators in the cocycle basis
    IntMatrix c(deg->cocycle_basis.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        IntVec col(size_t(b.rows()));
        for (int i = 0; i < b.rows(); ++i) col[size_t(i)] = b.at(i, j);
        auto sol = deg->cocycle_solver->solve(col);
        if (!sol) throw Error("internal: coboundary outside the cocycle lattice");
        for (int i = 0; i < c.rows(); ++i) c.at(i, j) = (*sol)[size_t(i)];
    }
    deg->pres = QuotientPresentation(deg->cocycle_basis.cols(), c);

    grp.free_rank = deg->pres.free_rank();
    grp.torsion = deg->pres.torsion();
    for (int gi : deg->pres.generator_indices()) {
        IntVec rep_z = deg->pres.generator_rep(gi);
        IntVec rep = deg->cocycle_basis.apply(rep_z);
        if (cone_mode_) rep = from_cover(k, strip_cone(k, cone_->include(k, rep)));
        grp.representatives.push_back(rep);
        grp.generator_orders.push_back(deg->pres.orders()[size_t(gi)]);
    }
    slot = std::move(deg);
    return *slot;
}

const CohomologyGroup& CochainEngine::cohomology(int k) const { return degree_data(k).group; }

bool CochainEngine::is_cocycle(int k, const IntVec& x) const {
    check_degree(k);
    if (int(x.size()) != cochain_dim(k)) throw Error("is_cocycle: dimension mismatch");
    const int s = rel_basis_.cols();
    if (!cone_mode_) {
        IntVec dx = d_[size_t(k)].apply(x);
        if (s == 0) {
            for (const Int& v : dx)
                if (v != 0) return false;
            return true;
        }
        LinearSolver rel_next(rel_[size_t(k) + 1]);
        return rel_next.solvable(dx);
    }
    const int cg = cover_dim_;
    IntVec dx = apply_triplets(xdiff_[size_t(k)], cg * res_.rank(k + 1), to_cover(k, x));
    if (s == 0) {
        for (const Int& v : dx)
            if (v != 0) return false;
        return true;
    }
    for (int blk = 0; blk < res_.rank(k + 1); ++blk) {
        IntVec rhs(static_cast<size_t>(cg));
        for (int a = 0; a < cg; ++a) rhs[size_t(a)] = dx[size_t(blk * cg + a)];
        if (!rel_solver_->solvable(rhs)) return false;
    }
    return true;
}

bool CochainEngine::is_coboundary(int k, const IntVec& x) const {
    if (!is_cocycle(k, x)) throw Error("is_coboundary: input is not a cocycle");
    const Degree& deg = degree_data(k);
    IntVec v = cone_mode_ ? cone_->project(k, cone_lift(k, x)) : x;
    if (deg.torsion_route) return deg.pres.is_zero_class(v);
    return deg.boundary_solver->solvable(v);
}

IntVec CochainEngine::class_vector(int k, const IntVec& x) const {
    if (!is_cocycle(k, x)) throw Error("class_vector: input is not a cocycle");
    const Degree& deg = degree_data(k);
    IntVec v = cone_mode_ ? cone_->project(k, cone_lift(k, x)) : x;
    if (deg.torsion_route) {
        IntVec full = deg.pres.class_vector(v);
        for (size_t i = size_t(deg.torsion_count); i < full.size(); ++i)
            if (full[i] != 0)
                throw Error("internal: cocycle with nonzero free coordinate in coker(d^{k-1})");
        full.resize(size_t(deg.torsion_count));
        return full;
    }
    auto y = deg.cocycle_solver->solve(v);
    if (!y) throw Error("internal: cocycle outside the cocycle lattice");
    return deg.pres.class_vector(*y);
}

bool CochainEngine::is_zero_class(int k, const IntVec& x) const {
    for (const Int& c : class_vector(k, x))
        if (c != 0) return false;
    return true;
}

std::vector<IntMatrix> cochain_matrices(const Resolution& r, const GModule& m) {
    if (!(r.group() == m.group())) throw Error("cochain_matrices: group mismatch");
    const int g = m.cover_rank();
    const long n = r.group().cyclic_order().convert_to<long>();
    long worst = 0;
    for (int k = 0; k <= r.top_degree(); ++k) worst = std::max(worst, long(g) * r.rank(k));
    if (worst > 4000) throw ResourceLimit("cochain_matrices: dense complex too large", worst);
    std::vector<IntMatrix> pows = action_powers(m.action(), std::max(n, 1L));
    std::vector<IntMatrix> out;
    for (int k = 0; k + 1 <= r.top_degree(); ++k) out.push_back(dense_cochain_diff(r, pows, g, k));
    return out;
}

CohomologyGroup cohomology_group(const Resolution& r, const GModule& m, int k,
                                 CohomologyOptions opts) {
    CochainEngine engine(r, m, opts);
    return engine.cohomology(k);
}

IntVec cochain_pullback(const ChainMap& cm, const GModule& m_target, int k, const IntVec& f) {
    if (k > cm.top_degree()) throw Error("cochain_pullback: degree above the chain map");
    const int g = m_target.cover_rank();
    const RingMat& psi = cm.psi[size_t(k)];
    if (int(f.size()) != g * psi.rows) throw Error("cochain_pullback: dimension mismatch");
    IntVec out(size_t(g * psi.cols), Int(0));
    for (int i = 0; i < psi.cols; ++i)
        for (const auto& [j, elt] : psi.col[size_t(i)]) {
            IntMatrix blk = m_target.act(elt);
            for (int a = 0; a < g; ++a) {
                if (f[size_t(j * g + a)] == 0) continue;
                for (int b = 0; b < g; ++b)
                    if (blk.at(b, a) != 0) out[size_t(i * g + b)] += blk.at(b, a) * f[size_t(j * g + a)];
            }
        }
    return out;
}

InducedMap induced_on_cohomology(const ChainMap& cm, const GModule& m, int k,
                                 CohomologyOptions opts) {
    if (!(m.group() == cm.hom.codomain()))
        throw Error("induced_on_cohomology: module must live over the codomain");
    CochainEngine lambda_side(cm.target, m, opts);
    CochainEngine gamma_side(cm.source, pullback_module(m, cm.hom), opts);
    return induced_on_cohomology(cm, lambda_side, gamma_side, k);
}

InducedMap induced_on_cohomology(const ChainMap& cm, const CochainEngine& lambda_side,
                                 const CochainEngine& gamma_side, int k) {
    InducedMap out;
    out.source_group = lambda_side.cohomology(k);
    out.target_group = gamma_side.cohomology(k);
    const int cols = int(out.source_group.representatives.size());
    const int rows = int(out.target_group.representatives.size());
    out.matrix = IntMatrix(rows, cols);
    out.zero = true;
    for (int j = 0; j < cols; ++j) {
        IntVec pulled =
            cochain_pullback(cm, lambda_side.module(), k, out.source_group.representatives[size_t(j)]);
        IntVec cls = gamma_side.class_vector(k, pulled);
        for (int i = 0; i < rows; ++i) {
            out.matrix.at(i, j) = cls[size_t(i)];
            if (cls[size_t(i)] != 0) out.zero = false;
        }
    }
    return out;
}

GModule tensor_product_module(const GModule& a, const GModule& b) {
    if (!(a.group() == b.group())) throw Error("tensor_product_module: group mismatch");
    if (!a.is_free() || !b.is_free())
        throw Error("tensor_product_module: unsupported input (torsion module)");
    IntMatrix act = IntMatrix::kronecker(a.action(), b.action());
    std::ostringstream os;
    os << a.to_string() << " (x) " << b.to_string();
    return GModule(a.group(), IntMatrix(0, act.cols()), act, os.str());
}

CohomologyClass transfer_class(const ChainMap& cm, const CohomologyClass& cls) {
    if (!(cm.target.group() == cls.group) || cm.target.kind() != cls.res_kind)
        throw Error("transfer_class: chain map target does not carry the class");
    CohomologyClass out;
    out.group = cm.source.group();
    out.res_kind = cm.source.kind();
    out.degree = cls.degree;
    out.module = cls.module;
    out.cochain = cochain_pullback(cm, cls.module, cls.degree, cls.cochain);
    return out;
}

CohomologyClass cup_product(const Resolution& bar, const CohomologyClass& x,
                            const CohomologyClass& y) {
    if (bar.kind() != Resolution::Kind::Bar) throw Error("cup_product: bar resolution required");
    if (!(x.group == y.group) || !(bar.group() == x.group))
        throw Error("cup_product: classes must live over the bar resolution's group");
    if (x.res_kind != Resolution::Kind::Bar || y.res_kind != Resolution::Kind::Bar)
        throw Error("cup_product: transfer classes to the bar resolution first");
    if (!x.module.is_free() || !y.module.is_free())
        throw Error("cup_product: torsion coefficient tensor unsupported");
    const int p = x.degree, q = y.degree;
    if (p + q > bar.top_degree()) throw Error("cup_product: bar resolution degree too small");

    const long n = bar.group().cyclic_order().convert_to<long>();
    const int g1 = x.module.cover_rank(), g2 = y.module.cover_rank();

    CohomologyClass out;
    out.group = x.group;
    out.res_kind = Resolution::Kind::Bar;
    out.degree = p + q;
    out.module = tensor_product_module(x.module, y.module);
    out.cochain.assign(size_t(bar.rank(p + q)) * g1 * g2, Int(0));

    for (int idx = 0; idx < bar.rank(p + q); ++idx) {
        std::vector<int> t = bar.bar_tuple(p + q, idx);
        std::vector<int> front(t.begin(), t.begin() + p), back(t.begin() + p, t.end());
        long prefix = 0;
        for (int gi : front) prefix = (prefix + gi) % n;

        IntVec xv(static_cast<size_t>(g1));
        int xi = bar.bar_index(front);
        for (int a = 0; a < g1; ++a) xv[size_t(a)] = x.cochain[size_t(xi * g1 + a)];
        IntVec yv(static_cast<size_t>(g2));
        int yi = bar.bar_index(back);
        for (int a = 0; a < g2; ++a) yv[size_t(a)] = y.cochain[size_t(yi * g2 + a)];
        IntVec shifted = y.module.act_power(prefix).apply(yv);

        IntVec val = kron_vec(xv, shifted);
        for (size_t a = 0; a < val.size(); ++a) out.cochain[size_t(idx) * val.size() + a] = val[a];
    }
    return out;
}

CohomologyClass berstein_schwarz_class(const GroupSpec& g) {
    if (!g.is_cyclic()) throw Error("berstein_schwarz_class: cyclic groups only");
    CohomologyClass cls;
    cls.group = g;
    cls.res_kind = Resolution::Kind::Periodic;
    cls.degree = 1;
    cls.module = augmentation_ideal(g);
    cls.cochain = g.is_trivial() ? IntVec{} : aug_ideal_coords(g.cyclic_order(), 1);
    return cls;
}

CohomologyClass berstein_schwarz_bar_class(const GroupSpec& g) {
    if (!g.is_cyclic()) throw Error("berstein_schwarz_bar_class: cyclic groups only");
    const long n = g.cyclic_order().convert_to<long>();
    CohomologyClass cls;
    cls.group = g;
    cls.res_kind = Resolution::Kind::Bar;
    cls.degree = 1;
    cls.module = augmentation_ideal(g);
    cls.cochain.assign(size_t(n - 1) * size_t(n - 1), Int(0));
    for (long a = 1; a < n; ++a) {
        IntVec v = aug_ideal_coords(g.cyclic_order(), a);
        for (long b = 0; b + 1 < n; ++b) cls.cochain[size_t((a - 1) * (n - 1) + b)] = v[size_t(b)];
    }
    return cls;
}

IntVec bs_power_value(const GroupSpec& g, const std::vector<int>& tuple) {
    const Int n = g.cyclic_order();
    IntVec acc{Int(1)};
    Int prefix = 0;
    for (int gi : tuple) {
        // t^prefix (t^{g_i} - 1) expanded in the augmentation-ideal basis
        IntVec hi = aug_ideal_coords(n, prefix + gi);
        IntVec lo = aug_ideal_coords(n, prefix);
        for (size_t a = 0; a < hi.size(); ++a) hi[a] -= lo[a];
        acc = kron_vec(acc, hi);
        prefix = (prefix + gi) % n;
    }
    return acc;
}

BsPullback bs_power_pullback(const GroupHom& phi, int k, CohomologyOptions opts) {
    if (!phi.is_cyclic_to_cyclic()) throw Error("bs_power_pullback: cyclic-to-cyclic hom required");
    if (k < 1) throw Error("bs_power_pullback: power must be >= 1");
    const Int m = phi.codomain().cyclic_order();

    double dim_est = 1;
    for (int i = 0; i < k; ++i) dim_est *= std::max<double>(m.convert_to<double>() - 1, 0);
    if (dim_est > double(opts.module_dim_limit)) {
        std::ostringstream os;
        os << "bs_power_pullback: coefficient module rank " << dim_est << " exceeds limit "
           << opts.module_dim_limit;
        throw ResourceLimit(os.str(), long(dim_est));
    }

    GModule coeff = tensor_power(augmentation_ideal(phi.codomain()), k);
    Resolution per_dom = Resolution::periodic(phi.domain(), k + 1);
    Resolution bar_cod = Resolution::bar(phi.codomain(), k, opts.bar_rank_limit);
    ChainMap lift = induced_chain_map(phi, per_dom, bar_cod);

    const int gdim = coeff.cover_rank();
    IntVec w(size_t(gdim), Int(0));
    if (per_dom.rank(k) == 1) {
        const RingMat& psik = lift.psi[size_t(k)];
        for (const auto& [tidx, elt] : psik.col[0]) {
            IntVec val = bs_power_value(phi.codomain(), bar_cod.bar_tuple(k, tidx));
            IntVec moved = coeff.act(elt).apply(val);
            for (int a = 0; a < gdim; ++a) w[size_t(a)] += moved[size_t(a)];
        }
    }

    GModule pulled_mod = pullback_module(coeff, phi);
    CohomologyClass pulled{phi.domain(), Resolution::Kind::Periodic, k, pulled_mod, w};

    CochainEngine engine(per_dom, pulled_mod, opts);
    if (!engine.is_cocycle(k, w)) throw Error("internal: pulled power of beta is not a cocycle");
    bool nonzero = !engine.is_coboundary(k, w);
    return BsPullback{k, nonzero, std::move(pulled), std::move(lift), std::move(coeff)};
}

}  // namespace homdim
