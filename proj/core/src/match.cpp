#include "graphrw/match.hpp"

#include <algorithm>
#include <map>

namespace graphrw {

namespace {

// Bucket key for multi-edge matching: (edge type, image incidence).
using Bucket = std::pair<int, std::vector<int>>;

struct Search {
    const Graph& pat;
    const Graph& host;
    const MonoSearch& opt;
    std::vector<Morphism>& out;
    GraphPtr pat_ptr, host_ptr;

    std::vector<int> vmap;        // pattern vertex -> host vertex or -1
    std::vector<char> host_used;  // host vertex occupied

    bool done() const {
        return opt.limit >= 0 && static_cast<int>(out.size()) >= opt.limit;
    }

    // Host edges available per bucket, recomputed against a full vertex map.
    bool assign_edges() {
        std::map<Bucket, std::vector<int>> pat_buckets, host_buckets;
        for (int pe = 0; pe < pat.n_edges(); ++pe) {
            std::vector<int> img;
            for (int u : pat.edges[pe].ends) img.push_back(vmap[u]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            pat_buckets[{pat.edges[pe].type, img}].push_back(pe);
        }
        for (int he = 0; he < host.n_edges(); ++he)
            host_buckets[{host.edges[he].type, host.edges[he].ends}].push_back(he);

        std::vector<int> emap(pat.n_edges(), -1);
        // Respect edge pins.
        if (!opt.pin_e.empty())
            for (int pe = 0; pe < pat.n_edges(); ++pe)
                if (opt.pin_e[pe] >= 0) emap[pe] = opt.pin_e[pe];

        // Enumerate injective assignments bucket by bucket, smallest host
        // edge ids first, emitting complete maps recursively.
        std::vector<std::pair<std::vector<int>, std::vector<int>>> work;  // (pat edges, host edges)
        for (auto& [key, pes] : pat_buckets) {
            auto it = host_buckets.find(key);
            if (it == host_buckets.end()) return false;
            work.push_back({pes, it->second});
        }

        std::vector<char> host_edge_used(host.n_edges(), 0);
        for (int pe = 0; pe < pat.n_edges(); ++pe)
            if (emap[pe] >= 0) {
                if (host_edge_used[emap[pe]]) return false;
                host_edge_used[emap[pe]] = 1;
            }

        bool any = false;
        std::function<void(size_t, size_t)> rec = [&](size_t wi, size_t pi) {
            if (done()) return;
            if (wi == work.size()) {
                Morphism m;
                m.dom = pat_ptr;
                m.cod = host_ptr;
                m.v = vmap;
                m.e = emap;
                if (opt.edge_reflecting && !m.is_edge_reflecting()) return;
                out.push_back(std::move(m));
                any = true;
                return;
            }
            auto& [pes, hes] = work[wi];
            if (pi == pes.size()) { rec(wi + 1, 0); return; }
            int pe = pes[pi];
            if (emap[pe] >= 0) {
                // Pinned: verify bucket membership.
                if (std::find(hes.begin(), hes.end(), emap[pe]) == hes.end()) return;
                rec(wi, pi + 1);
                return;
            }
            for (int he : hes) {
                if (host_edge_used[he]) continue;
                host_edge_used[he] = 1;
                emap[pe] = he;
                rec(wi, pi + 1);
                emap[pe] = -1;
                host_edge_used[he] = 0;
                if (done()) return;
            }
        };
        rec(0, 0);
        return any;
    }

    // Cheap pruning: every fully-assigned bucket must have enough host edges.
    bool feasible_so_far(int upto) {
        std::map<Bucket, int> need;
        for (int pe = 0; pe < pat.n_edges(); ++pe) {
            bool ready = true;
            for (int u : pat.edges[pe].ends)
                if (u > upto || vmap[u] < 0) { ready = false; break; }
            if (!ready) continue;
            std::vector<int> img;
            for (int u : pat.edges[pe].ends) img.push_back(vmap[u]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            need[{pat.edges[pe].type, img}]++;
        }
        if (need.empty()) return true;
        std::map<Bucket, int> have;
        for (int he = 0; he < host.n_edges(); ++he)
            have[{host.edges[he].type, host.edges[he].ends}]++;
        for (auto& [k, n] : need) {
            auto it = have.find(k);
            if (it == have.end() || it->second < n) return false;
        }
        return true;
    }

    void rec(int pv) {
        if (done()) return;
        if (pv == pat.n_vertices()) {
            assign_edges();
            return;
        }
        if (vmap[pv] >= 0) {  // pinned
            if (feasible_so_far(pv)) rec(pv + 1);
            return;
        }
        for (int hv = 0; hv < host.n_vertices(); ++hv) {
            if (host_used[hv] || host.vtype[hv] != pat.vtype[pv]) continue;
            vmap[pv] = hv;
            host_used[hv] = 1;
            if (feasible_so_far(pv)) rec(pv + 1);
            vmap[pv] = -1;
            host_used[hv] = 0;
            if (done()) return;
        }
    }
};

}  // namespace

std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host,
                                      const MonoSearch& opt) {
    std::vector<Morphism> out;
    Search s{*pattern, *host, opt, out, pattern, host};
    s.vmap.assign(pattern->n_vertices(), -1);
    s.host_used.assign(host->n_vertices(), 0);
    if (!opt.pin_v.empty()) {
        for (int pv = 0; pv < pattern->n_vertices(); ++pv) {
            int hv = opt.pin_v[pv];
            if (hv < 0) continue;
            if (pattern->vtype[pv] != host->vtype[hv]) return out;
            if (s.host_used[hv]) return out;  // pins must be injective
            s.vmap[pv] = hv;
            s.host_used[hv] = 1;
        }
    }
    s.rec(0);
    return out;
}

std::vector<Morphism> extensions(const Morphism& f, const Morphism& h) {
    MonoSearch opt;
    opt.pin_v.assign(f.cod->n_vertices(), -1);
    opt.pin_e.assign(f.cod->n_edges(), -1);
    for (size_t x = 0; x < f.v.size(); ++x) {
        int tgt = h.v[x];
        int& slot = opt.pin_v[f.v[x]];
        if (slot >= 0 && slot != tgt) return {};
        slot = tgt;
    }
    for (size_t x = 0; x < f.e.size(); ++x) {
        int tgt = h.e[x];
        int& slot = opt.pin_e[f.e[x]];
        if (slot >= 0 && slot != tgt) return {};
        slot = tgt;
    }
    return enumerate_monos(f.cod, h.cod, opt);
}

std::vector<Morphism> automorphisms(const GraphPtr& g) {
    return enumerate_monos(g, g);  // same finite size: monos are isos
}

}  // namespace graphrw
