#include "friable/optimizer.hpp"
#include "friable/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace friable {

namespace {

template <class T>
T lmin(std::initializer_list<T> xs) {
    return *std::min_element(xs.begin(), xs.end());
}
template <class T>
T lmax(std::initializer_list<T> xs) {
    return *std::max_element(xs.begin(), xs.end());
}

template <class T>
struct SavingsT {
    T s1, s2, s3, s4;
};

template <class T>
SavingsT<T> savings_t(T a, T b) {
    const T one(1), two(2), four(4), eight(8);
    const T quarter = one / four;
    SavingsT<T> s;
    s.s1 = lmin<T>({(one - a) / four, b / two, (one - b) / two});
    s.s2 = lmin<T>({a / two, quarter - b / eight, b / two, (one - b) / two});
    s.s3 = lmin<T>({lmax<T>({(one - b) / four, (one - a) / four - b / eight}), b / four,
                    (one - a) / four});
    s.s4 = lmin<T>({b / four, one - T(3) * b / four});
    return s;
}

template <class T>
std::string label_t(T a, T b) {
    const auto s = savings_t(a, b);
    const T zero(0);
    if (s.s3 > std::max(s.s1, s.s2) && s.s3 > zero)
        return "E3";
    if (s.s1 > s.s2 && s.s1 > zero)
        return "E1";
    if (s.s2 > zero)
        return "E2";
    if (s.s4 > zero)
        return "E4";
    return "";
}

// c0 + ca * alpha + cb * beta
struct Affine {
    Rational c0, ca, cb;
    Rational at(const RationalPoint& p) const { return c0 + ca * p.alpha + cb * p.beta; }
};

Affine operator-(const Affine& f, const Affine& g) {
    return {f.c0 - g.c0, f.ca - g.ca, f.cb - g.cb};
}

std::vector<Affine> pieces() {
    const Rational z(0), one(1);
    return {
        {Rational(1, 4), Rational(-1, 4), z},  // (1-a)/4
        {z, z, Rational(1, 2)},                // b/2
        {Rational(1, 2), z, Rational(-1, 2)},  // (1-b)/2
        {z, Rational(1, 2), z},                // a/2
        {Rational(1, 4), z, Rational(-1, 8)},  // 1/4 - b/8
        {Rational(1, 4), z, Rational(-1, 4)},  // (1-b)/4
        {Rational(1, 4), Rational(-1, 4), Rational(-1, 8)},
        {z, z, Rational(1, 4)},                // b/4
        {one, z, Rational(-3, 4)},             // 1 - 3b/4
        {z, z, z},
    };
}

using Poly = std::vector<RationalPoint>;

int sign_of(const Rational& r) { return r < Rational(0) ? -1 : (r > Rational(0) ? 1 : 0); }

Rational area2(const Poly& p) {
    Rational s(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        s = s + (u.alpha * v.beta - v.alpha * u.beta);
    }
    return s;
}

// Splits a convex polygon by line f = 0 into its f >= 0 and f <= 0 parts.
std::pair<Poly, Poly> split(const Poly& p, const Affine& f) {
    Poly pos, neg;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % n];
        const Rational fu = f.at(u), fv = f.at(v);
        const int su = sign_of(fu), sv = sign_of(fv);
        if (su >= 0)
            pos.push_back(u);
        if (su <= 0)
            neg.push_back(u);
        if (su * sv < 0) {
            const Rational t = fu / (fu - fv);
            const RationalPoint w{u.alpha + t * (v.alpha - u.alpha), u.beta + t * (v.beta - u.beta)};
            pos.push_back(w);
            neg.push_back(w);
        }
    }
    return {pos, neg};
}

bool nondegenerate(const Poly& p) { return p.size() >= 3 && area2(p) != Rational(0); }

std::vector<Poly> arrangement() {
    std::vector<Affine> lines;
    const auto ps = pieces();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const Affine d = ps[i] - ps[j];
            if (d.ca == Rational(0) && d.cb == Rational(0))
                continue;
            lines.push_back(d);
        }
    std::vector<Poly> cells{{{0, 0}, {1, 0}, {1, 2}, {0, 2}}};
    for (const auto& f : lines) {
        std::vector<Poly> next;
        for (const auto& c : cells) {
            auto [pos, neg] = split(c, f);
            const bool a = nondegenerate(pos), b = nondegenerate(neg);
            if (a && b) {
                next.push_back(std::move(pos));
                next.push_back(std::move(neg));
            } else {
                next.push_back(c);
            }
        }
        cells = std::move(next);
    }
    return cells;
}

RationalPoint centroid(const Poly& p) {
    Rational sa(0), sb(0);
    for (const auto& v : p) {
        sa = sa + v.alpha;
        sb = sb + v.beta;
    }
    const Rational n(static_cast<std::int64_t>(p.size()));
    return {sa / n, sb / n};
}

bool on_open_segment(const RationalPoint& p, const RationalPoint& u, const RationalPoint& v) {
    const Rational cross = (v.alpha - u.alpha) * (p.beta - u.beta) - (v.beta - u.beta) * (p.alpha - u.alpha);
    if (cross != Rational(0))
        return false;
    const Rational dot = (p.alpha - u.alpha) * (v.alpha - u.alpha) + (p.beta - u.beta) * (v.beta - u.beta);
    const Rational len = (v.alpha - u.alpha) * (v.alpha - u.alpha) + (v.beta - u.beta) * (v.beta - u.beta);
    return dot > Rational(0) && dot < len;
}

struct PointLess {
    bool operator()(const RationalPoint& a, const RationalPoint& b) const {
        if (a.alpha != b.alpha)
            return a.alpha < b.alpha;
        return a.beta < b.beta;
    }
};

using Edge = std::pair<RationalPoint, RationalPoint>;

struct EdgeLess {
    bool operator()(const Edge& x, const Edge& y) const {
        PointLess lt;
        if (lt(x.first, y.first))
            return true;
        if (lt(y.first, x.first))
            return false;
        return lt(x.second, y.second);
    }
};

// Boundary of a union of cells: edges are cut at every arrangement vertex
// lying on them, then shared edges (which appear once in each direction)
// cancel.
Poly merge_cells(const std::vector<const Poly*>& cells, const std::set<RationalPoint, PointLess>& vertices) {
    std::map<Edge, int, EdgeLess> count;
    for (const Poly* c : cells) {
        for (std::size_t i = 0; i < c->size(); ++i) {
            const auto& u = (*c)[i];
            const auto& v = (*c)[(i + 1) % c->size()];
            std::vector<RationalPoint> inner;
            for (const auto& w : vertices)
                if (on_open_segment(w, u, v))
                    inner.push_back(w);
            const Rational du = v.alpha - u.alpha, dv = v.beta - u.beta;
            std::sort(inner.begin(), inner.end(), [&](const auto& x, const auto& y) {
                return (x.alpha - u.alpha) * du + (x.beta - u.beta) * dv <
                       (y.alpha - u.alpha) * du + (y.beta - u.beta) * dv;
            });
            RationalPoint prev = u;
            inner.push_back(v);
            for (const auto& w : inner) {
                const auto rev = count.find({w, prev});
                if (rev != count.end()) {
                    if (--rev->second == 0)
                        count.erase(rev);
                } else {
                    ++count[{prev, w}];
                }
                prev = w;
            }
        }
    }
    std::map<RationalPoint, RationalPoint, PointLess> next;
    for (const auto& [e, k] : count) {
        if (k != 1 || next.count(e.first))
            throw std::logic_error("region boundary is not a simple loop");
        next[e.first] = e.second;
    }
    if (next.empty())
        return {};
    Poly loop;
    RationalPoint start = next.begin()->first, cur = start;
    do {
        loop.push_back(cur);
        cur = next.at(cur);
        if (loop.size() > next.size())
            throw std::logic_error("region boundary is not a simple loop");
    } while (!(cur == start));
    if (loop.size() != next.size())
        throw std::logic_error("region is not connected");

    Poly out;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = loop[(i + n - 1) % n];
        const auto& b = loop[i];
        const auto& c = loop[(i + 1) % n];
        const Rational cross = (b.alpha - a.alpha) * (c.beta - b.beta) - (b.beta - a.beta) * (c.alpha - b.alpha);
        if (cross != Rational(0))
            out.push_back(b);
    }
    const auto first = std::min_element(out.begin(), out.end(), PointLess{});
    std::rotate(out.begin(), first, out.end());
    return out;
}

double seg_distance(double pa, double pb, const RationalPoint& u, const RationalPoint& v) {
    const double ua = u.alpha.to_double(), ub = u.beta.to_double();
    const double da = v.alpha.to_double() - ua, db = v.beta.to_double() - ub;
    const double len = da * da + db * db;
    double t = len > 0 ? ((pa - ua) * da + (pb - ub) * db) / len : 0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(pa - (ua + t * da), pb - (ub + t * db));
}

bool contains_tol(const RegionPolygon& poly, double a, double b, double tol) {
    const auto& v = poly.vertices;
    if (v.size() < 3)
        return false;
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if (seg_distance(a, b, v[j], v[i]) <= tol)
            return true;
        const double ai = v[i].alpha.to_double(), bi = v[i].beta.to_double();
        const double aj = v[j].alpha.to_double(), bj = v[j].beta.to_double();
        if ((bi > b) != (bj > b) && a < (aj - ai) * (b - bi) / (bj - bi) + ai)
            inside = !inside;
    }
    return inside;
}

bool strictly_inside(const RegionPolygon& poly, double a, double b, double tol) {
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        if (seg_distance(a, b, v[j], v[i]) <= tol)
            return false;
    return contains_tol(poly, a, b, 0);
}

} // namespace

Savings region_savings(double alpha, double beta) {
    const auto s = savings_t(alpha, beta);
    return {s.s1, s.s2, s.s3, s.s4};
}

std::string best_bound(double alpha, double beta) { return label_t(alpha, beta); }

bool polygon_contains(const RegionPolygon& poly, double alpha, double beta) {
    return contains_tol(poly, alpha, beta, 1e-12);
}

const RegionPolygon* RegionSet::find(const std::string& name) const {
    for (const auto& p : polygons)
        if (p.name == name)
            return &p;
    return nullptr;
}

RegionSet figure1_regions(double eps_grid) {
    if (!(eps_grid > 0 && eps_grid <= 0.01))
        throw std::domain_error("grid spacing must lie in (0, 0.01]");

    const auto cells = arrangement();
    std::set<RationalPoint, PointLess> vertices;
    for (const auto& c : cells)
        vertices.insert(c.begin(), c.end());

    std::map<std::string, std::vector<const Poly*>> groups;
    for (const auto& c : cells) {
        const auto m = centroid(c);
        const auto name = label_t(m.alpha, m.beta);
        if (!name.empty())
            groups[name].push_back(&c);
    }

    RegionSet out;
    for (const char* name : {"E1", "E2", "E3", "E4"}) {
        RegionPolygon poly{name, {}};
        const auto it = groups.find(name);
        if (it != groups.end())
            poly.vertices = merge_cells(it->second, vertices);
        out.polygons.push_back(std::move(poly));
    }

    const auto na = static_cast<std::size_t>(std::ceil(1.0 / eps_grid - 1e-9));
    const auto nb = 2 * na;
    std::vector<std::string> labels(na * nb);
    parallel_for(nb, 0, [&](std::size_t j) {
        for (std::size_t i = 0; i < na; ++i) {
            const double a = (static_cast<double>(i) + 0.5) / static_cast<double>(na);
            const double b = 2 * (static_cast<double>(j) + 0.5) / static_cast<double>(nb);
            labels[j * na + i] = label_t(a, b);
        }
    });
    out.grid_cells = labels.size();
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < na; ++i) {
            const double a = (static_cast<double>(i) + 0.5) / static_cast<double>(na);
            const double b = 2 * (static_cast<double>(j) + 0.5) / static_cast<double>(nb);
            const auto& name = labels[j * na + i];
            bool ok;
            if (name.empty()) {
                ok = true;
                for (const auto& p : out.polygons)
                    if (strictly_inside(p, a, b, 1e-9))
                        ok = false;
            } else {
                ok = contains_tol(*out.find(name), a, b, 1e-9);
            }
            if (!ok)
                ++out.grid_mismatches;
        }

    for (const auto& p : out.polygons)
        for (const auto& v : p.vertices) {
            const double va = v.alpha.to_double(), vb = v.beta.to_double();
            double best = INFINITY;
            for (std::size_t j = 0; j < nb; ++j)
                for (std::size_t i = 0; i < na; ++i) {
                    if (labels[j * na + i] != p.name)
                        continue;
                    // distance to the closed grid cell, not its centre
                    const double a0 = static_cast<double>(i) / static_cast<double>(na);
                    const double b0 = 2 * static_cast<double>(j) / static_cast<double>(nb);
                    const double h = 1.0 / static_cast<double>(na);
                    const double da = std::max({a0 - va, 0.0, va - (a0 + h)});
                    const double db = std::max({b0 - vb, 0.0, vb - (b0 + h)});
                    best = std::min(best, std::hypot(da, db));
                }
            out.max_vertex_gap = std::max(out.max_vertex_gap, best);
        }
    return out;
}

} // namespace friable
