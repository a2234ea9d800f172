#include "homdim/resolutions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homdim {

bool RingMat::is_zero() const {
    for (const auto& c : col)
        for (const auto& [r, e] : c)
            if (!e.is_zero()) return false;
    return true;
}

RingMat ring_mat_mul(const RingMat& a, const RingMat& b, const GroupHom* push_b) {
    if (a.cols != b.rows) throw Error("ring_mat_mul: dimension mismatch");
    RingMat out(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        std::map<int, GroupRingElement> acc;
        for (const auto& [l, be] : b.col[size_t(j)]) {
            GroupRingElement blj = push_b ? hom_image(*push_b, be) : be;
            if (blj.is_zero()) continue;
            for (const auto& [i, ae] : a.col[size_t(l)]) {
                GroupRingElement prod = ring_multiply(ae, blj);
                auto it = acc.find(i);
                if (it == acc.end())
                    acc.emplace(i, prod);
                else
                    it->second = it->second + prod;
            }
        }
        for (auto& [i, e] : acc)
            if (!e.is_zero()) out.add_entry(i, j, e);
    }
    return out;
}

bool ring_mat_equal(const RingMat& a, const RingMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (int j = 0; j < a.cols; ++j) {
        std::map<int, GroupRingElement> da, db;
        for (const auto& [i, e] : a.col[size_t(j)]) {
            auto it = da.find(i);
            if (it == da.end())
                da.emplace(i, e);
            else
                it->second = it->second + e;
        }
        for (const auto& [i, e] : b.col[size_t(j)]) {
            auto it = db.find(i);
            if (it == db.end())
                db.emplace(i, e);
            else
                it->second = it->second + e;
        }
        for (const auto& [i, e] : da) {
            auto it = db.find(i);
            if (it == db.end()) {
                if (!e.is_zero()) return false;
            } else if (!(e == it->second))
                return false;
        }
        for (const auto& [i, e] : db)
            if (da.find(i) == da.end() && !e.is_zero()) return false;
    }
    return true;
}

Resolution Resolution::periodic(const GroupSpec& g, int top_degree) {
    if (!g.is_cyclic()) throw Error("periodic resolution: cyclic groups only");
    if (top_degree < 1) throw Error("periodic resolution: top degree must be >= 1");
    Int n = g.cyclic_order();

    Resolution r;
    r.kind_ = Kind::Periodic;
    r.group_ = g;
    r.top_ = top_degree;
    r.ranks_.assign(size_t(top_degree) + 1, 1);
    r.diffs_.resize(size_t(top_degree) + 1);

    if (n == 1) {
        // degenerate: Z in degree 0, zero above
        for (int k = 1; k <= top_degree; ++k) {
            r.ranks_[size_t(k)] = 0;
            r.diffs_[size_t(k)] = RingMat(k == 1 ? 1 : 0, 0);
        }
        return r;
    }

    GroupRingElement tm1 = GroupRingElement::generator_power(g, 1) - GroupRingElement::one(g);
    GroupRingElement nrm = norm_element(n);
    for (int k = 1; k <= top_degree; ++k) {
        RingMat d(1, 1);
        d.add_entry(0, 0, (k % 2 == 1) ? tm1 : nrm);
        r.diffs_[size_t(k)] = std::move(d);
    }
    return r;
}

Resolution Resolution::bar(const GroupSpec& g, int top_degree, long rank_limit) {
    if (!g.is_cyclic()) throw Error("bar resolution: finite (cyclic) groups only");
    if (top_degree < 1) throw Error("bar resolution: top degree must be >= 1");
    long n = g.cyclic_order().convert_to<long>();

    Resolution r;
    r.kind_ = Kind::Bar;
    r.group_ = g;
    r.top_ = top_degree;
    r.ranks_.resize(size_t(top_degree) + 1);
    r.diffs_.resize(size_t(top_degree) + 1);

    long rk = 1;
    for (int k = 0; k <= top_degree; ++k) {
        if (rk > rank_limit) {
            std::ostringstream os;
            os << "bar resolution for Z_" << n << " needs rank " << rk << " in degree " << k
               << " (limit " << rank_limit << ")";
            throw ResourceLimit(os.str(), rk);
        }
        r.ranks_[size_t(k)] = int(rk);
        rk *= (n - 1);
    }

    for (int k = 1; k <= top_degree; ++k) {
        RingMat d(r.ranks_[size_t(k - 1)], r.ranks_[size_t(k)]);
        for (int idx = 0; idx < r.ranks_[size_t(k)]; ++idx) {
            std::vector<int> t = r.bar_tuple(k, idx);
            std::map<int, GroupRingElement> acc;
            auto add = [&](int row, const GroupRingElement& e) {
                auto it = acc.find(row);
                if (it == acc.end())
                    acc.emplace(row, e);
                else
                    it->second = it->second + e;
            };
            // g_1 . [g_2 | ... | g_k]
            {
                std::vector<int> head(t.begin() + 1, t.end());
                add(r.bar_index(head), GroupRingElement::generator_power(g, t[0]));
            }
            // inner faces: multiply adjacent entries, drop when the product is 1
            Int sign = -1;
            for (int i = 0; i + 1 < k; ++i) {
                int prod = int((long(t[size_t(i)]) + t[size_t(i) + 1]) % n);
                if (prod != 0) {
                    std::vector<int> face;
                    face.reserve(size_t(k) - 1);
                    for (int j = 0; j < k; ++j) {
                        if (j == i + 1) continue;
                        face.push_back(j == i ? prod : t[size_t(j)]);
                    }
                    add(r.bar_index(face), GroupRingElement::one(g).scaled(sign));
                }
                sign = -sign;
            }
            // last face: drop g_k
            {
                std::vector<int> tail(t.begin(), t.end() - 1);
                add(r.bar_index(tail), GroupRingElement::one(g).scaled(sign));
            }
            for (auto& [row, e] : acc)
                if (!e.is_zero()) d.add_entry(row, idx, e);
        }
        r.diffs_[size_t(k)] = std::move(d);
    }
    return r;
}

int Resolution::rank(int k) const {
    if (k < 0 || k > top_) throw Error("Resolution::rank: degree out of range");
    return ranks_[size_t(k)];
}

const RingMat& Resolution::diff(int k) const {
    if (k < 1 || k > top_) throw Error("Resolution::diff: degree out of range");
    return diffs_[size_t(k)];
}

GroupRingElement Resolution::periodic_delta(int k) const {
    if (kind_ != Kind::Periodic) throw Error("periodic_delta: periodic resolution required");
    Int n = group_.cyclic_order();
    if (n == 1) return GroupRingElement::zero(group_);
    if (k % 2 == 1)
        return GroupRingElement::generator_power(group_, 1) - GroupRingElement::one(group_);
    return norm_element(n);
}

std::vector<int> Resolution::bar_tuple(int k, int index) const {
    long base = group_.cyclic_order().convert_to<long>() - 1;
    std::vector<int> t(static_cast<size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
        t[size_t(i)] = int(index % base) + 1;
        index = int(index / base);
    }
    return t;
}

int Resolution::bar_index(const std::vector<int>& tuple) const {
    long base = group_.cyclic_order().convert_to<long>() - 1;
    long idx = 0;
    for (int gi : tuple) idx = idx * base + (gi - 1);
    return int(idx);
}

std::string Resolution::describe() const {
    std::ostringstream os;
    os << (kind_ == Kind::Periodic ? "periodic" : "bar") << " resolution of Z over Z["
       << group_.to_string() << "], degrees 0.." << top_;
    return os.str();
}

void verify_dd_zero(const Resolution& r) {
    for (int k = 1; k + 1 <= r.top_degree(); ++k) {
        RingMat dd = ring_mat_mul(r.diff(k), r.diff(k + 1));
        if (!dd.is_zero()) {
            std::ostringstream os;
            os << "dd != 0 at degree " << k + 1 << " in " << r.describe();
            throw Error(os.str());
        }
    }
}

namespace {

// dense underlying integer matrix via the regular representation (each ring
// element acts as an n x n circulant)
IntMatrix underlying_matrix(const RingMat& m, const Int& n) {
    int ni = n.convert_to<int>();
    IntMatrix out(m.rows * ni, m.cols * ni);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, e] : m.col[size_t(j)]) {
            IntMatrix blk = e.regular_representation();
            for (int a = 0; a < ni; ++a)
                for (int b = 0; b < ni; ++b)
                    if (blk.at(a, b) != 0) out.at(i * ni + a, j * ni + b) += blk.at(a, b);
        }
    return out;
}

}  // namespace

void verify_exactness(const Resolution& r, int max_total_dim) {
    Int n = r.group().cyclic_order();
    int ni = n.convert_to<int>();
    long total = 0;
    for (int k = 0; k <= r.top_degree(); ++k) total += long(r.rank(k)) * ni;
    if (total > max_total_dim) {
        std::ostringstream os;
        os << "exactness check skipped: underlying dimension " << total << " exceeds "
           << max_total_dim;
        throw ResourceLimit(os.str(), total);
    }

    // degree 0 augments onto Z and the composite with d_1 vanishes
    {
        IntMatrix d1 = underlying_matrix(r.diff(1), n);
        IntMatrix aug(1, ni * r.rank(0));
        for (int j = 0; j < aug.cols(); ++j) aug.at(0, j) = 1;
        if (!(aug * d1).is_zero()) throw Error("degree 0 does not augment onto Z");
    }

    for (int k = 1; k + 1 <= r.top_degree(); ++k) {
        IntMatrix dk = underlying_matrix(r.diff(k), n);
        IntMatrix dk1 = underlying_matrix(r.diff(k + 1), n);
        IntMatrix ker = kernel_basis(dk);
        // express the columns of d_{k+1} in the kernel basis and require the
        // presented quotient to be trivial
        LinearSolver solver(ker);
        IntMatrix c(ker.cols(), dk1.cols());
        for (int j = 0; j < dk1.cols(); ++j) {
            IntVec colv(dk1.rows());
            for (int i = 0; i < dk1.rows(); ++i) colv[i] = dk1.at(i, j);
            auto sol = solver.solve(colv);
            if (!sol) throw Error("image is not contained in the kernel");
            for (int i = 0; i < ker.cols(); ++i) c.at(i, j) = (*sol)[i];
        }
        QuotientPresentation q(ker.cols(), c);
        if (q.free_rank() != 0 || !q.torsion().empty()) {
            std::ostringstream os;
            os << "resolution not exact at degree " << k << " (homology rank " << q.free_rank()
               << ", torsion count " << q.torsion().size() << ")";
            throw Error(os.str());
        }
    }
}

GroupRingElement ChainMap::element(int k) const {
    const RingMat& m = psi[size_t(k)];
    if (m.rows > 1 || m.cols != 1) throw Error("ChainMap::element: rank-1 degree required");
    if (m.rows == 0) return GroupRingElement::zero(target.group());
    for (const auto& [i, e] : m.col[0])
        if (i == 0) return e;
    return GroupRingElement::zero(target.group());
}

GroupHom identity_hom(const GroupSpec& g) {
    std::vector<Word> imgs;
    for (int i = 0; i < g.generator_count(); ++i) {
        Word w;
        if (!(g.is_cyclic() && g.is_trivial())) w.letters.push_back({i, 1});
        imgs.push_back(w);
    }
    return GroupHom(g, g, imgs);
}

namespace {

// sparse element of a free module over the target ring: basis index -> coefficient
using SparseRingVec = std::map<int, GroupRingElement>;

SparseRingVec scale_by_element(const SparseRingVec& v, const GroupRingElement& c) {
    SparseRingVec out;
    for (const auto& [j, e] : v) {
        GroupRingElement prod = ring_multiply(c, e);
        if (!prod.is_zero()) out.emplace(j, prod);
    }
    return out;
}

// contracting homotopy of the normalized bar resolution: lambda * [T] goes to
// [lambda | T], tuples led by the identity are dropped
SparseRingVec bar_homotopy(const Resolution& bar, int k, const SparseRingVec& v) {
    long n = bar.group().cyclic_order().convert_to<long>();
    SparseRingVec out;
    for (const auto& [idx, e] : v) {
        std::vector<int> t = bar.bar_tuple(k, idx);
        std::vector<int> ext(size_t(k) + 1);
        std::copy(t.begin(), t.end(), ext.begin() + 1);
        for (long a = 1; a < n; ++a) {
            const Int& c = e.coeffs()[size_t(a)];
            if (c == 0) continue;
            ext[0] = int(a);
            int row = bar.bar_index(ext);
            GroupRingElement add = GroupRingElement::one(bar.group()).scaled(c);
            auto it = out.find(row);
            if (it == out.end())
                out.emplace(row, add);
            else
                it->second = it->second + add;
        }
    }
    return out;
}

RingMat column_to_mat(int rows, const SparseRingVec& v) {
    RingMat m(rows, 1);
    for (const auto& [i, e] : v)
        if (!e.is_zero()) m.add_entry(i, 0, e);
    return m;
}

ChainMap periodic_to_periodic(const GroupHom& phi, const Resolution& rd, const Resolution& rc) {
    Int n = phi.domain().cyclic_order();
    Int m = phi.codomain().cyclic_order();
    int top = std::min(rd.top_degree(), rc.top_degree());

    ChainMap cm{rd, rc, phi, {}};
    cm.psi.resize(size_t(top) + 1);

    if (m == 1 || n == 1) {
        // a degenerate side forces zero maps above degree 0
        RingMat p0(rc.rank(0), rd.rank(0));
        p0.add_entry(0, 0, GroupRingElement::one(rc.group()));
        cm.psi[0] = std::move(p0);
        for (int k = 1; k <= top; ++k) cm.psi[size_t(k)] = RingMat(rc.rank(k), rd.rank(k));
        return cm;
    }

    // closed form a_0 = 1, a_1 = 1 + s + ... + s^{d-1}, a_{k+2} = (d n / m) a_k;
    // verify_chain_map re-checks every square afterwards
    Int d = phi.multiplier();
    GroupSpec cod = rc.group();
    std::vector<GroupRingElement> a(size_t(top) + 1, GroupRingElement::zero(cod));
    a[0] = GroupRingElement::one(cod);
    if (top >= 1) {
        IntVec c(size_t(m.convert_to<long>()), Int(0));
        for (Int i = 0; i < d; ++i) c[size_t(((i) % m).convert_to<long>())] += 1;
        a[1] = GroupRingElement(cod, c);
    }
    Int factor = d * n / m;
    for (int k = 2; k <= top; ++k) a[size_t(k)] = a[size_t(k) - 2].scaled(factor);

    for (int k = 0; k <= top; ++k) {
        RingMat p(rc.rank(k), rd.rank(k));
        if (rd.rank(k) == 1 && rc.rank(k) == 1 && !a[size_t(k)].is_zero())
            p.add_entry(0, 0, a[size_t(k)]);
        cm.psi[size_t(k)] = std::move(p);
    }
    return cm;
}

ChainMap periodic_to_bar(const GroupHom& phi, const Resolution& rd, const Resolution& rc) {
    int top = std::min(rd.top_degree(), rc.top_degree());
    ChainMap cm{rd, rc, phi, {}};
    cm.psi.resize(size_t(top) + 1);

    SparseRingVec cur;
    cur.emplace(0, GroupRingElement::one(rc.group()));  // psi_0: e |-> []
    cm.psi[0] = column_to_mat(rc.rank(0), cur);

    for (int k = 1; k <= top; ++k) {
        if (rd.rank(k) == 0) {
            cm.psi[size_t(k)] = RingMat(rc.rank(k), 0);
            cur.clear();
            continue;
        }
        GroupRingElement dk = hom_image(phi, rd.periodic_delta(k));
        SparseRingVec img = scale_by_element(cur, dk);
        cur = bar_homotopy(rc, k - 1, img);
        cm.psi[size_t(k)] = column_to_mat(rc.rank(k), cur);
    }
    return cm;
}

ChainMap bar_to_bar(const GroupHom& phi, const Resolution& rd, const Resolution& rc) {
    Int m = phi.codomain().cyclic_order();
    Int d = phi.multiplier();
    int top = std::min(rd.top_degree(), rc.top_degree());
    ChainMap cm{rd, rc, phi, {}};
    cm.psi.resize(size_t(top) + 1);
    for (int k = 0; k <= top; ++k) {
        RingMat p(rc.rank(k), rd.rank(k));
        for (int idx = 0; idx < rd.rank(k); ++idx) {
            std::vector<int> t = rd.bar_tuple(k, idx);
            std::vector<int> img(t.size());
            bool degenerate = false;
            for (size_t i = 0; i < t.size(); ++i) {
                Int e = (d * t[i]) % m;
                if (e == 0) {
                    degenerate = true;
                    break;
                }
                img[i] = e.convert_to<int>();
            }
            if (!degenerate) p.add_entry(rc.bar_index(img), idx, GroupRingElement::one(rc.group()));
        }
        cm.psi[size_t(k)] = std::move(p);
    }
    return cm;
}

ChainMap bar_to_periodic(const GroupHom& phi, const Resolution& rd, const Resolution& rc) {
    // lift degree by degree: for each tuple solve delta_k * x = psi_{k-1}(dT)
    // over the regular representation of the target ring
    if (!(phi.domain() == phi.codomain()) || phi.multiplier() != 1)
        throw Error("bar -> periodic chain maps are built for the identity only");
    int top = std::min(rd.top_degree(), rc.top_degree());
    GroupSpec g = rc.group();
    int ni = g.cyclic_order().convert_to<int>();

    ChainMap cm{rd, rc, phi, {}};
    cm.psi.resize(size_t(top) + 1);
    {
        RingMat p0(1, 1);
        p0.add_entry(0, 0, GroupRingElement::one(g));
        cm.psi[0] = std::move(p0);
    }
    for (int k = 1; k <= top; ++k) {
        LinearSolver solver(rc.periodic_delta(k).regular_representation());
        RingMat p(rc.rank(k), rd.rank(k));
        const RingMat& bar_d = rd.diff(k);
        for (int idx = 0; idx < rd.rank(k); ++idx) {
            GroupRingElement rhs = GroupRingElement::zero(g);
            for (const auto& [row, e] : bar_d.col[size_t(idx)])
                for (const auto& [pi, pe] : cm.psi[size_t(k) - 1].col[size_t(row)])
                    if (pi == 0) rhs = rhs + ring_multiply(pe, e);
            IntVec b(static_cast<size_t>(ni));
            for (int i = 0; i < ni; ++i) b[size_t(i)] = rhs.coeffs()[size_t(i)];
            auto sol = solver.solve(b);
            if (!sol) throw Error("bar -> periodic lift infeasible (resolution not exact?)");
            GroupRingElement x(g, *sol);
            if (!x.is_zero()) p.add_entry(0, idx, x);
        }
        cm.psi[size_t(k)] = std::move(p);
    }
    return cm;
}

}  // namespace

ChainMap induced_chain_map(const GroupHom& phi, const Resolution& rd, const Resolution& rc) {
    if (!(rd.group() == phi.domain()) || !(rc.group() == phi.codomain()))
        throw Error("induced_chain_map: resolution groups must match the homomorphism");
    ChainMap cm = [&] {
        if (rd.kind() == Resolution::Kind::Periodic && rc.kind() == Resolution::Kind::Periodic)
            return periodic_to_periodic(phi, rd, rc);
        if (rd.kind() == Resolution::Kind::Periodic && rc.kind() == Resolution::Kind::Bar)
            return periodic_to_bar(phi, rd, rc);
        if (rd.kind() == Resolution::Kind::Bar && rc.kind() == Resolution::Kind::Bar)
            return bar_to_bar(phi, rd, rc);
        return bar_to_periodic(phi, rd, rc);
    }();
    verify_chain_map(cm);
    return cm;
}

std::pair<ChainMap, ChainMap> comparison_maps(const Resolution& a, const Resolution& b) {
    if (!(a.group() == b.group())) throw Error("comparison_maps: same group required");
    GroupHom id = identity_hom(a.group());
    return {induced_chain_map(id, a, b), induced_chain_map(id, b, a)};
}

ChainMap compose_chain_maps(const ChainMap& outer, const ChainMap& inner) {
    if (!(inner.hom.codomain() == outer.hom.domain()))
        throw Error("compose_chain_maps: homomorphisms do not compose");
    ChainMap cm{inner.source, outer.target, compose(outer.hom, inner.hom), {}};
    int top = std::min(outer.top_degree(), inner.top_degree());
    cm.psi.resize(size_t(top) + 1);
    for (int k = 0; k <= top; ++k)
        cm.psi[size_t(k)] = ring_mat_mul(outer.psi[size_t(k)], inner.psi[size_t(k)], &outer.hom);
    return cm;
}

void verify_chain_map(const ChainMap& cm) {
    // degree 0 covers the identity of Z: augmentation of each psi_0 column is 1
    const RingMat& p0 = cm.psi[0];
    for (int j = 0; j < p0.cols; ++j) {
        Int aug = 0;
        for (const auto& [i, e] : p0.col[size_t(j)]) aug += e.augmentation();
        if (aug != 1) throw Error("chain map: degree 0 does not cover the identity of Z");
    }
    for (int k = 1; k <= cm.top_degree(); ++k) {
        RingMat lhs = ring_mat_mul(cm.target.diff(k), cm.psi[size_t(k)]);
        RingMat rhs = ring_mat_mul(cm.psi[size_t(k) - 1], cm.source.diff(k), &cm.hom);
        if (!ring_mat_equal(lhs, rhs)) {
            std::ostringstream os;
            os << "chain map square fails at degree " << k;
            throw Error(os.str());
        }
    }
}

}  // namespace homdim
