#pragma once

#include <algorithm>
#include <vector>

#include "iif/numfield.hpp"

namespace iif::detail {

struct Cluster {
    std::vector<int> idx;
    Cx mean{0, 0};
    double radius = 0;
};

/// Deterministic single-linkage clustering of points in the plane with an
/// absolute linking threshold. Cluster representatives are arithmetic means;
/// output sorted by (Re, Im) of the mean.
inline std::vector<Cluster> single_linkage(const std::vector<Cx>& pts, double tol) {
    int n = int(pts.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(pts[size_t(i)] - pts[size_t(j)]) <= tol) {
                int a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<Cluster> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (slot[root] < 0) {
            slot[root] = int(out.size());
            out.push_back({});
        }
        Cluster& c = out[size_t(slot[root])];
        c.idx.push_back(i);
        c.mean += pts[size_t(i)];
    }
    for (Cluster& c : out) {
        c.mean /= double(c.idx.size());
        for (int i : c.idx) c.radius = std::max(c.radius, std::abs(pts[size_t(i)] - c.mean));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
        return a.mean.imag() < b.mean.imag();
    });
    return out;
}

}  // namespace iif::detail
