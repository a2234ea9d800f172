#include "homdim/sparse_reduce.hpp"

#include <algorithm>
#include <sstream>

namespace homdim {

namespace {

struct WorkMat {
    // column-major values plus row support for pivot bookkeeping
    std::vector<std::map<int, Int>> cols;
    std::vector<std::set<int>> rows;

    void init(int ncols, int nrows) {
        cols.assign(size_t(ncols), {});
        rows.assign(size_t(nrows), {});
    }
    void add(int r, int c, const Int& v) {
        auto& col = cols[size_t(c)];
        auto it = col.find(r);
        if (it == col.end()) {
            if (v != 0) {
                col.emplace(r, v);
                rows[size_t(r)].insert(c);
            }
        } else {
            it->second += v;
            if (it->second == 0) {
                col.erase(it);
                rows[size_t(r)].erase(c);
            }
        }
    }
    void kill_col(int c) {
        for (const auto& [r, v] : cols[size_t(c)]) rows[size_t(r)].erase(c);
        cols[size_t(c)].clear();
    }
    void kill_row(int r) {
        for (int c : rows[size_t(r)]) cols[size_t(c)].erase(r);
        rows[size_t(r)].clear();
    }
};

}  // namespace

ReducedComplex::ReducedComplex(std::vector<int> dims,
                               const std::vector<std::vector<Triplet>>& diffs, int dense_limit)
    : dims_(std::move(dims)) {
    const int nd = int(dims_.size());
    if (int(diffs.size()) + 1 != nd) throw Error("ReducedComplex: need one differential per gap");

    std::vector<WorkMat> d(static_cast<size_t>(nd - 1));
    for (int k = 0; k + 1 < nd; ++k) {
        d[size_t(k)].init(dims_[size_t(k)], dims_[size_t(k) + 1]);
        for (const Triplet& t : diffs[size_t(k)]) d[size_t(k)].add(t.row, t.col, t.val);
    }
    std::vector<std::vector<char>> alive(static_cast<size_t>(nd));
    for (int k = 0; k < nd; ++k) alive[size_t(k)].assign(size_t(dims_[size_t(k)]), 1);

    // waves of unit-pivot eliminations, cheapest fill first
    struct Cand {
        long cost;
        int deg, r, c;
    };
    for (;;) {
        std::vector<Cand> wave;
        for (int k = 0; k + 1 < nd; ++k)
            for (int c = 0; c < dims_[size_t(k)]; ++c)
                for (const auto& [r, v] : d[size_t(k)].cols[size_t(c)])
                    if (v == 1 || v == -1)
                        wave.push_back({long(d[size_t(k)].cols[size_t(c)].size() - 1) *
                                            long(d[size_t(k)].rows[size_t(r)].size() - 1),
                                        k, r, c});
        if (wave.empty()) break;
        std::sort(wave.begin(), wave.end(),
                  [](const Cand& a, const Cand& b) { return a.cost < b.cost; });

        for (const Cand& cand : wave) {
            if (!alive[size_t(cand.deg)][size_t(cand.c)] ||
                !alive[size_t(cand.deg) + 1][size_t(cand.r)])
                continue;
            WorkMat& m = d[size_t(cand.deg)];
            auto it = m.cols[size_t(cand.c)].find(cand.r);
            if (it == m.cols[size_t(cand.c)].end() || (it->second != 1 && it->second != -1))
                continue;
            const int p = it->second.convert_to<int>();

            Step step;
            step.deg = cand.deg;
            step.r = cand.r;
            step.c = cand.c;
            step.p = p;
            for (const auto& [i, v] : m.cols[size_t(cand.c)])
                if (i != cand.r) step.col_entries.emplace_back(i, v);
            for (int j : m.rows[size_t(cand.r)])
                if (j != cand.c) step.row_entries.emplace_back(j, m.cols[size_t(j)].at(cand.r));

            // rank-one update: col_j -= (v_rj / p) * col_c on rows != r
            for (const auto& [j, vrj] : step.row_entries) {
                Int f = vrj * p;  // vrj / p with p = +-1
                for (const auto& [i, vic] : step.col_entries) m.add(i, j, -f * vic);
            }
            m.kill_col(cand.c);
            m.kill_row(cand.r);
            if (cand.deg >= 1) d[size_t(cand.deg) - 1].kill_row(cand.c);
            if (cand.deg + 2 < nd) d[size_t(cand.deg) + 1].kill_col(cand.r);
            alive[size_t(cand.deg)][size_t(cand.c)] = 0;
            alive[size_t(cand.deg) + 1][size_t(cand.r)] = 0;
            log_.push_back(std::move(step));
        }
    }

    // compact the surviving complex into dense matrices
    index_of_.resize(size_t(nd));
    rank_of_.resize(size_t(nd));
    for (int k = 0; k < nd; ++k) {
        for (int i = 0; i < dims_[size_t(k)]; ++i)
            if (alive[size_t(k)][size_t(i)]) {
                rank_of_[size_t(k)][i] = int(index_of_[size_t(k)].size());
                index_of_[size_t(k)].push_back(i);
            }
        if (reduced_dim(k) > dense_limit) {
            std::ostringstream os;
            os << "complex reduction stalled: degree " << k << " still has dimension "
               << reduced_dim(k) << " (limit " << dense_limit << ")";
            throw ResourceLimit(os.str(), reduced_dim(k));
        }
    }
    reduced_.resize(size_t(nd - 1));
    for (int k = 0; k + 1 < nd; ++k) {
        IntMatrix mk(reduced_dim(k + 1), reduced_dim(k));
        for (int c = 0; c < dims_[size_t(k)]; ++c) {
            if (!alive[size_t(k)][size_t(c)]) continue;
            int cc = rank_of_[size_t(k)].at(c);
            for (const auto& [r, v] : d[size_t(k)].cols[size_t(c)])
                mk.at(rank_of_[size_t(k) + 1].at(r), cc) = v;
        }
        reduced_[size_t(k)] = std::move(mk);
    }
}

IntVec ReducedComplex::project(int k, const IntVec& x) const {
    if (int(x.size()) != dims_[size_t(k)]) throw Error("ReducedComplex::project: dimension mismatch");
    std::map<int, Int> v;
    for (int i = 0; i < int(x.size()); ++i)
        if (x[size_t(i)] != 0) v[i] = x[size_t(i)];

    for (const Step& s : log_) {
        if (s.deg == k) {
            v.erase(s.c);
        } else if (s.deg + 1 == k) {
            auto it = v.find(s.r);
            if (it == v.end()) continue;
            Int xr = it->second;
            v.erase(it);
            // x_i -= x_r * col[i] / p
            for (const auto& [i, w] : s.col_entries) {
                Int delta = -xr * w * s.p;
                auto jt = v.find(i);
                if (jt == v.end()) {
                    if (delta != 0) v.emplace(i, delta);
                } else {
                    jt->second += delta;
                    if (jt->second == 0) v.erase(jt);
                }
            }
        }
    }
    IntVec out(size_t(reduced_dim(k)), Int(0));
    for (const auto& [i, w] : v) out[size_t(rank_of_[size_t(k)].at(i))] = w;
    return out;
}

IntVec ReducedComplex::include(int k, const IntVec& xr) const {
    if (int(xr.size()) != reduced_dim(k)) throw Error("ReducedComplex::include: dimension mismatch");
    std::map<int, Int> v;
    for (int i = 0; i < reduced_dim(k); ++i)
        if (xr[size_t(i)] != 0) v[index_of_[size_t(k)][size_t(i)]] = xr[size_t(i)];

    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        const Step& s = *it;
        if (s.deg == k) {
            // x_c = -(sum_j row[j] * x_j) / p
            Int acc = 0;
            for (const auto& [j, w] : s.row_entries) {
                auto jt = v.find(j);
                if (jt != v.end()) acc += w * jt->second;
            }
            if (acc != 0) v[s.c] = -acc * s.p;
        }
        // at degree s.deg + 1 the eliminated coordinate r stays zero
    }
    IntVec out(size_t(dims_[size_t(k)]), Int(0));
    for (const auto& [i, w] : v) out[size_t(i)] = w;
    return out;
}

}  // namespace homdim
