#include "rrsched/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

namespace rrsched {

WeightedGraph::WeightedGraph(int node_count) : n_(node_count) {
    if (node_count < 2) throw std::invalid_argument("graph needs at least two nodes");
    const std::size_t slots = static_cast<std::size_t>(node_count) * (node_count - 1) / 2;
    weight_.assign(slots, 0.0);
    present_.assign(slots, 0);
}

WeightedGraph WeightedGraph::complete(int node_count, double weight) {
    WeightedGraph g(node_count);
    for (int u = 0; u < node_count; ++u)
        for (int v = u + 1; v < node_count; ++v) g.add_edge(u, v, weight);
    return g;
}

int WeightedGraph::edge_slot(int u, int v) const {
    if (u > v) std::swap(u, v);
    if (u < 0 || u == v || v >= n_) throw std::invalid_argument("invalid edge");
    return match_index(n_, Match{u, v});
}

void WeightedGraph::add_edge(int u, int v, double weight) {
    const int s = edge_slot(u, v);
    weight_[s] = weight;
    present_[s] = 1;
}

void WeightedGraph::set_weight(int u, int v, double weight) {
    const int s = edge_slot(u, v);
    if (!present_[s]) throw std::invalid_argument("edge not present");
    weight_[s] = weight;
}

void WeightedGraph::delete_edge(int u, int v) { present_[edge_slot(u, v)] = 0; }

bool WeightedGraph::has_edge(int u, int v) const { return present_[edge_slot(u, v)] != 0; }

double WeightedGraph::weight(int u, int v) const {
    const int s = edge_slot(u, v);
    if (!present_[s]) throw std::invalid_argument("edge not present");
    return weight_[s];
}

std::vector<std::tuple<int, int, double>> WeightedGraph::edges() const {
    std::vector<std::tuple<int, int, double>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v) {
            const int s = edge_slot(u, v);
            if (present_[s]) out.emplace_back(u, v, weight_[s]);
        }
    return out;
}

namespace detail {

// Maximum-weight matching via the primal-dual blossom method, after
// Galil's exposition. Works on integral weights; dual adjustments stay
// half-integral, so everything below is exact integer arithmetic.
// Computes a maximum-cardinality matching of maximum weight. 128-bit
// weights leave headroom for the lexicographic tie-breaking perturbation
// applied by the caller.
using BlossomWeight = __int128;

class BlossomMatcher {
public:
    BlossomMatcher(int nvertex, const std::vector<std::tuple<int, int, BlossomWeight>>& edges)
        : nv_(nvertex), edges_(edges) {
        const int ne = static_cast<int>(edges_.size());
        BlossomWeight maxweight = 0;
        for (const auto& [i, j, w] : edges_) maxweight = std::max(maxweight, w);
        endpoint_.resize(2 * ne);
        neighbend_.resize(nv_);
        for (int k = 0; k < ne; ++k) {
            const auto& [i, j, w] = edges_[k];
            endpoint_[2 * k] = i;
            endpoint_[2 * k + 1] = j;
            neighbend_[i].push_back(2 * k + 1);
            neighbend_[j].push_back(2 * k);
        }
        mate_.assign(nv_, -1);
        label_.assign(2 * nv_, 0);
        labelend_.assign(2 * nv_, -1);
        inblossom_.resize(nv_);
        for (int v = 0; v < nv_; ++v) inblossom_[v] = v;
        blossomparent_.assign(2 * nv_, -1);
        blossomchilds_.assign(2 * nv_, {});
        blossombase_.assign(2 * nv_, -1);
        for (int v = 0; v < nv_; ++v) blossombase_[v] = v;
        blossomendps_.assign(2 * nv_, {});
        bestedge_.assign(2 * nv_, -1);
        blossombestedges_.assign(2 * nv_, {});
        has_bestedges_.assign(2 * nv_, false);
        for (int b = 2 * nv_ - 1; b >= nv_; --b) unusedblossoms_.push_back(b);
        dualvar_.assign(2 * nv_, 0);
        for (int v = 0; v < nv_; ++v) dualvar_[v] = maxweight;
        allowedge_.assign(ne, false);
    }

    std::vector<int> run() {
        for (int t = 0; t < nv_; ++t) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv_; b < 2 * nv_; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();

            for (int v = 0; v < nv_; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    for (const int p : neighbend_[v]) {
                        const int k = p / 2;
                        const int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        if (!allowedge_[k]) {
                            const BlossomWeight kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = true;
                            } else if (label_[inblossom_[w]] == 1) {
                                const int b = inblossom_[v];
                                if (bestedge_[b] == -1 || kslack < slack(bestedge_[b]))
                                    bestedge_[b] = k;
                            } else if (label_[inblossom_[w]] == 0) {
                                if (bestedge_[w] == -1 || kslack < slack(bestedge_[w]))
                                    bestedge_[w] = k;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        }
                    }
                }
                if (augmented) break;

                int deltatype = -1;
                BlossomWeight delta = 0;
                int deltaedge = -1, deltablossom = -1;
                for (int v = 0; v < nv_; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        const BlossomWeight d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * nv_; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        const BlossomWeight d = slack(bestedge_[b]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = nv_; b < 2 * nv_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    // no further progress: max-cardinality optimum reached;
                    // do a last update so the duals verify optimality
                    deltatype = 1;
                    BlossomWeight dmin = dualvar_[0];
                    for (int v = 1; v < nv_; ++v) dmin = std::min(dmin, dualvar_[v]);
                    delta = std::max<BlossomWeight>(0, dmin);
                }

                for (int v = 0; v < nv_; ++v) {
                    const int lab = label_[inblossom_[v]];
                    if (lab == 1)
                        dualvar_[v] -= delta;
                    else if (lab == 2)
                        dualvar_[v] += delta;
                }
                for (int b = nv_; b < 2 * nv_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1)
                            dualvar_[b] += delta;
                        else if (label_[b] == 2)
                            dualvar_[b] -= delta;
                    }
                }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = std::get<0>(edges_[deltaedge]);
                    if (label_[inblossom_[i]] == 0) i = std::get<1>(edges_[deltaedge]);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    const int i = std::get<0>(edges_[deltaedge]);
                    queue_.push_back(i);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;

            for (int b = nv_; b < 2 * nv_; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
                    dualvar_[b] == 0)
                    expand_blossom(b, true);
        }

        std::vector<int> mate(nv_, -1);
        for (int v = 0; v < nv_; ++v)
            if (mate_[v] >= 0) mate[v] = endpoint_[mate_[v]];
        return mate;
    }

private:
    BlossomWeight slack(int k) const {
        const auto& [i, j, w] = edges_[k];
        return dualvar_[i] + dualvar_[j] - 2 * w;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < nv_) {
            out.push_back(b);
        } else {
            for (const int t : blossomchilds_[b]) blossom_leaves(t, out);
        }
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue_.insert(queue_.end(), leaves.begin(), leaves.end());
        } else if (t == 2) {
            const int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Traces back from v and w to find a common ancestor (a new blossom
    // base) or detect an augmenting path (returns -1).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] |= 4;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (const int b : path) label_[b] &= ~4;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = std::get<0>(edges_[k]);
        int w = std::get<1>(edges_[k]);
        const int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        const int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;

        std::vector<int> path;
        std::vector<int> endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;

        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (const int leaf : leaves) {
            if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
            inblossom_[leaf] = b;
        }

        std::vector<int> bestedgeto(2 * nv_, -1);
        for (const int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[child]) {
                std::vector<int> child_leaves;
                blossom_leaves(child, child_leaves);
                for (const int leaf : child_leaves) {
                    std::vector<int> lst;
                    lst.reserve(neighbend_[leaf].size());
                    for (const int p : neighbend_[leaf]) lst.push_back(p / 2);
                    nblists.push_back(std::move(lst));
                }
            } else {
                nblists.push_back(blossombestedges_[child]);
            }
            for (const auto& nblist : nblists) {
                for (const int ek : nblist) {
                    int i = std::get<0>(edges_[ek]);
                    int j = std::get<1>(edges_[ek]);
                    if (inblossom_[j] == b) std::swap(i, j);
                    const int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 &&
                        (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj])))
                        bestedgeto[bj] = ek;
                }
            }
            blossombestedges_[child].clear();
            has_bestedges_[child] = false;
            bestedge_[child] = -1;
        }
        blossombestedges_[b].clear();
        for (const int ek : bestedgeto)
            if (ek != -1) blossombestedges_[b].push_back(ek);
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (const int ek : blossombestedges_[b])
            if (bestedge_[b] == -1 || slack(ek) < slack(bestedge_[b])) bestedge_[b] = ek;
    }

    void expand_blossom(int b, bool endstage) {
        for (const int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < nv_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (const int leaf : leaves) inblossom_[leaf] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            const int nchilds = static_cast<int>(blossomchilds_[b].size());
            int j = 0;
            while (blossomchilds_[b][j] != entrychild) ++j;
            int jstep, endptrick;
            if (j & 1) {
                j -= nchilds;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto child_at = [&](int idx) { return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds]; };
            auto endp_at = [&](int idx) { return blossomendps_[b][(idx % nchilds + nchilds) % nchilds]; };
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endp_at(j - endptrick) / 2] = true;
                j += jstep;
                p = endp_at(j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            const int bv = child_at(j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (child_at(j) != entrychild) {
                const int bw = child_at(j);
                if (label_[bw] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bw, leaves);
                int lv = -1;
                for (const int leaf : leaves)
                    if (label_[leaf] != 0) {
                        lv = leaf;
                        break;
                    }
                if (lv >= 0) {
                    label_[lv] = 0;
                    label_[endpoint_[mate_[blossombase_[bw]]]] = 0;
                    assign_label(lv, 2, labelend_[lv]);
                }
                j += jstep;
            }
        }
        label_[b] = -1;
        labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= nv_) augment_blossom(t, v);
        const int nchilds = static_cast<int>(blossomchilds_[b].size());
        int i = 0;
        while (blossomchilds_[b][i] != t) ++i;
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= nchilds;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto child_at = [&](int idx) { return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds]; };
        auto endp_at = [&](int idx) { return blossomendps_[b][(idx % nchilds + nchilds) % nchilds]; };
        while (j != 0) {
            j += jstep;
            int tt = child_at(j);
            const int p = endp_at(j - endptrick) ^ endptrick;
            if (tt >= nv_) augment_blossom(tt, endpoint_[p]);
            j += jstep;
            tt = child_at(j);
            if (tt >= nv_) augment_blossom(tt, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(blossomchilds_[b].begin(), blossomchilds_[b].begin() + i,
                    blossomchilds_[b].end());
        std::rotate(blossomendps_[b].begin(), blossomendps_[b].begin() + i,
                    blossomendps_[b].end());
        blossombase_[b] = blossombase_[blossomchilds_[b][0]];
    }

    void augment_matching(int k) {
        const int v0 = std::get<0>(edges_[k]);
        const int w0 = std::get<1>(edges_[k]);
        const std::pair<int, int> starts[2] = {{v0, 2 * k + 1}, {w0, 2 * k}};
        for (const auto& [sv, sp] : starts) {
            int s = sv;
            int p = sp;
            while (true) {
                const int bs = inblossom_[s];
                if (bs >= nv_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                const int t = endpoint_[labelend_[bs]];
                const int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= nv_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int nv_;
    std::vector<std::tuple<int, int, BlossomWeight>> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<BlossomWeight> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

std::vector<int> max_weight_matching_int(
    int node_count, const std::vector<std::tuple<int, int, std::int64_t>>& edges) {
    if (edges.empty()) return std::vector<int>(node_count, -1);
    std::vector<std::tuple<int, int, BlossomWeight>> wide;
    wide.reserve(edges.size());
    for (const auto& [i, j, w] : edges) wide.emplace_back(i, j, w);
    return BlossomMatcher(node_count, wide).run();
}

}  // namespace detail

std::optional<std::pair<PerfectMatching, double>> max_weight_perfect_matching(
    const WeightedGraph& g) {
    const int n = g.nodes();
    if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even node count");

    const auto raw = g.edges();
    // scale to integers at 1e-9 granularity, then perturb so equal-weight
    // optima resolve to the lexicographically smallest edge set: shifting
    // by the rank count and adding 2^(rank count - 1 - rank) makes early
    // canonical edges strictly preferable without disturbing the true
    // optimum. Beyond 100 ranks the powers outgrow even 128-bit headroom,
    // so large graphs fall back to a plain (still deterministic) -rank
    // perturbation.
    using detail::BlossomWeight;
    const int nranks = n * (n - 1) / 2;
    std::int64_t maxabs = 0;
    for (const auto& [u, v, w] : raw)
        maxabs = std::max(maxabs, std::abs(static_cast<std::int64_t>(std::llround(w * 1e9))));
    const bool lex =
        nranks <= 100 &&
        static_cast<BlossomWeight>(maxabs) < (static_cast<BlossomWeight>(1) << (120 - nranks));
    std::vector<std::tuple<int, int, BlossomWeight>> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v, w] : raw) {
        const auto scaled =
            static_cast<BlossomWeight>(static_cast<std::int64_t>(std::llround(w * 1e9)));
        const int rank = match_index(n, Match{u, v});
        const BlossomWeight perturbed =
            lex ? (scaled << nranks) + (static_cast<BlossomWeight>(1) << (nranks - 1 - rank))
                : scaled * (nranks + 1) - rank;
        edges.emplace_back(u, v, perturbed);
    }

    std::vector<int> mate(n, -1);
    if (!edges.empty()) mate = detail::BlossomMatcher(n, edges).run();
    PerfectMatching pm;
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
        if (mate[v] == -1) return std::nullopt;
        if (v < mate[v]) {
            pm.push_back(Match{v, mate[v]});
            total += g.weight(v, mate[v]);
        }
    }
    std::sort(pm.begin(), pm.end());
    return std::make_pair(std::move(pm), total);
}

std::vector<PerfectMatching> enumerate_perfect_matchings(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and positive");
    if (n > 12) throw std::invalid_argument("enumeration guarded to n <= 12");
    std::vector<PerfectMatching> out;
    PerfectMatching current;
    std::vector<char> used(n, 0);
    std::function<void()> rec = [&] {
        int lo = 0;
        while (lo < n && used[lo]) ++lo;
        if (lo == n) {
            out.push_back(current);
            return;
        }
        used[lo] = 1;
        for (int v = lo + 1; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            current.push_back(Match{lo, v});
            rec();
            current.pop_back();
            used[v] = 0;
        }
        used[lo] = 0;
    };
    rec();
    return out;
}

WeightedGraph apply_decisions(const WeightedGraph& g,
                              const std::vector<BranchDecision>& decisions) {
    for (std::size_t a = 0; a < decisions.size(); ++a)
        for (std::size_t b = a + 1; b < decisions.size(); ++b) {
            const auto& da = decisions[a];
            const auto& db = decisions[b];
            if (da.match == db.match && da.kind != db.kind)
                throw std::invalid_argument("contradictory decisions on the same match");
            if (da.kind == DecisionKind::Enforce && db.kind == DecisionKind::Enforce &&
                da.match != db.match &&
                (da.match.i == db.match.i || da.match.i == db.match.j ||
                 da.match.j == db.match.i || da.match.j == db.match.j))
                throw std::invalid_argument("two enforced matches share a team");
        }

    WeightedGraph out = g;
    for (const auto& d : decisions) {
        if (d.kind == DecisionKind::Forbid) {
            out.delete_edge(d.match.i, d.match.j);
        } else {
            for (int v = 0; v < g.nodes(); ++v) {
                for (const int u : {d.match.i, d.match.j}) {
                    if (v == u) continue;
                    if (Match{std::min(u, v), std::max(u, v)} == d.match) continue;
                    out.delete_edge(std::min(u, v), std::max(u, v));
                }
            }
        }
    }
    return out;
}

}  // namespace rrsched
