#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cla/local_algebra.hpp"
#include "cla/polynomial.hpp"
#include "cla/uni.hpp"

namespace cla {

// A point of P^1 in the canonical coordinate of an exceptional divisor.
struct PPoint {
    bool inf = false;
    Rat v;

    static PPoint at(const Rat& x) { return {false, x}; }
    static PPoint infinity() { return {true, Rat(0)}; }

    bool operator<(const PPoint& o) const {
        if (inf != o.inf) return !inf;  // finite points first, then infinity
        if (inf) return false;
        return v < o.v;
    }
    bool operator==(const PPoint& o) const {
        return inf == o.inf && (inf || v == o.v);
    }

    std::string to_string() const { return inf ? "inf" : format_rational(v); }
};

// An affine chart of the blown-up surface.  hx, hy express the original
// coordinates through the chart's; the total transform is f(hx, hy).
struct Chart {
    int id = 0;
    int parent = -1;
    VarList vars;
    Poly hx, hy;
    Poly total;

    // Tracked divisor occurrence: the divisor is the line {axis-var = c};
    // its points are parameterized by the other variable, and to_canonical
    // maps that parameter to the divisor's canonical P^1 coordinate.
    struct Occurrence {
        int divisor;
        int axis;  // 0: {u = c}, 1: {v = c}
        Rat c;
        Moebius to_canonical;
    };
    std::vector<Occurrence> divisors;
    std::vector<std::pair<Rat, Rat>> blown;  // centers already blown here
};

struct ResolutionGraph {
    struct Divisor {
        int id;
        long long m;       // order of the pulled-back function
        long long p;       // order of the pulled-back Jacobian ideal
        int self_int;
        int chi_open;      // Euler characteristic of the open stratum
    };
    struct Edge {
        int i, j;
        long long m_gcd;
    };
    struct StrictCluster {
        int divisor;
        int degree;        // number of geometric attachment points
        std::string position;
    };

    bool smooth = false;   // no resolution needed: the germ is regular
    bool snc = false;
    int blow_ups = 0;
    std::vector<Divisor> divisors;
    std::vector<Edge> edges;
    std::vector<StrictCluster> strict;
};

struct Stratum {
    std::vector<std::string> labels;  // e.g. {"E1"} or {"E2","E3"} or {"S1","E3"}
    bool over_origin;
    long long m_gcd;
    long long chi;
};

namespace detail {

inline long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// restriction of a two-variable polynomial to {axis-var = c}, as a
// univariate polynomial in the other variable
inline UniPoly restrict_to_axis(const Poly& p, int axis, const Rat& c) {
    UniPoly out;
    for (const auto& [e, coeff] : p.terms()) {
        int ea = e[axis], ep = e[1 - axis];
        Rat scaled = coeff;
        for (int k = 0; k < ea; ++k) scaled *= c;
        if (scaled == 0) continue;
        if (static_cast<std::size_t>(ep) >= out.c.size())
            out.c.resize(ep + 1, Rat(0));
        out.c[ep] += scaled;
    }
    out.trim();
    return out;
}

inline Poly axis_poly(const VarList& vars, int axis, const Rat& c) {
    Poly p = Poly::variable(vars, axis);
    return p - Poly::constant(vars, c);
}

} // namespace detail

// Iterated point blow-ups of a plane-curve germ, with every divisor tracked
// through the charts where it is a (possibly shifted) coordinate axis.
class BlowupSurface {
public:
    explicit BlowupSurface(const Poly& f) : f_(f) {
        if (f.num_vars() != 2)
            throw input_error("resolution needs a polynomial in two variables");
        fx_ = f.derivative(0);
        fy_ = f.derivative(1);
        Chart root;
        root.id = 0;
        root.vars = f.vars();
        root.hx = Poly::variable(root.vars, 0);
        root.hy = Poly::variable(root.vars, 1);
        root.total = f;
        charts_.push_back(std::move(root));
    }

    struct DivisorState {
        int id;
        long long m = 0, p = 0;
        int self_int = -1;
        int birth_child1 = -1, birth_child2 = -1;
        bool chart_consistent = true;
    };

    struct EdgeState {
        int i, j;
        PPoint ti, tj;   // crossing position on each divisor
        int chart;       // a chart where both divisors are tracked axes
        Rat pu, pv;      // the crossing point in that chart
    };

    const std::vector<Chart>& charts() const { return charts_; }
    const std::vector<DivisorState>& divisors() const { return divisors_; }
    const std::vector<EdgeState>& edges() const { return edges_; }
    int blow_ups() const { return blow_ups_; }

    // Blow up the (rational) point (a, b) of a chart; returns the ids of
    // the two child charts.  Substitutions after translating the center to
    // the origin: (u, v) = (a + U, b + U V) and (u, v) = (a + U V, b + V).
    std::pair<int, int> blow_up_point(int chart_id, const Rat& a, const Rat& b) {
        Chart& c = charts_[chart_id];
        int newdiv = static_cast<int>(divisors_.size());

        // divisors through the center, as seen by this chart's occurrences
        std::vector<Chart::Occurrence> through;
        for (const auto& occ : c.divisors) {
            const Rat& fixed = occ.axis == 0 ? a : b;
            if (occ.c == fixed) through.push_back(occ);
        }

        auto child_vars = [&](int id) {
            return make_vars({"u" + std::to_string(id), "v" + std::to_string(id)});
        };

        Chart c1, c2;
        c1.id = static_cast<int>(charts_.size());
        c2.id = c1.id + 1;
        c1.parent = c2.parent = chart_id;
        c1.vars = child_vars(c1.id);
        c2.vars = child_vars(c2.id);

        Poly U1 = Poly::variable(c1.vars, 0), V1 = Poly::variable(c1.vars, 1);
        Poly U2 = Poly::variable(c2.vars, 0), V2 = Poly::variable(c2.vars, 1);
        std::vector<Poly> sub1 = {Poly::constant(c1.vars, a) + U1,
                                  Poly::constant(c1.vars, b) + U1 * V1};
        std::vector<Poly> sub2 = {Poly::constant(c2.vars, a) + U2 * V2,
                                  Poly::constant(c2.vars, b) + V2};
        c1.hx = c.hx.substitute(sub1);
        c1.hy = c.hy.substitute(sub1);
        c2.hx = c.hx.substitute(sub2);
        c2.hy = c.hy.substitute(sub2);
        c1.total = f_.substitute({c1.hx, c1.hy});
        c2.total = f_.substitute({c2.hx, c2.hy});

        // exceptional divisor of this blow-up
        c1.divisors.push_back({newdiv, 0, Rat(0), Moebius::identity()});
        c2.divisors.push_back({newdiv, 1, Rat(0), Moebius::inversion()});

        // propagate the parent's tracked occurrences
        for (const auto& occ : c.divisors) {
            if (occ.axis == 0) {
                if (occ.c == a) {
                    // strict transform visible in child2 as {U = 0}, its
                    // parameter V sits at parent parameter b + V
                    c2.divisors.push_back(
                        {occ.divisor, 0, Rat(0),
                         compose(occ.to_canonical, Moebius::affine(1, b))});
                } else {
                    // untouched: {U = c - a} in child1
                    c1.divisors.push_back(
                        {occ.divisor, 0, occ.c - a,
                         compose(occ.to_canonical, Moebius::affine(occ.c - a, b))});
                }
            } else {
                if (occ.c == b) {
                    c1.divisors.push_back(
                        {occ.divisor, 1, Rat(0),
                         compose(occ.to_canonical, Moebius::affine(1, a))});
                } else {
                    c2.divisors.push_back(
                        {occ.divisor, 1, occ.c - b,
                         compose(occ.to_canonical, Moebius::affine(occ.c - b, a))});
                }
            }
        }

        // orders of the pulled-back function and Jacobian generators
        DivisorState ds;
        ds.id = newdiv;
        ds.birth_child1 = c1.id;
        ds.birth_child2 = c2.id;
        long long m1 = c1.total.order_in(0).value_or(0);
        long long m2 = c2.total.order_in(1).value_or(0);
        ds.m = m1;
        ds.chart_consistent = (m1 == m2);
        auto jac_order = [&](const Chart& ch, int axis) -> long long {
            Poly gx = fx_.substitute({ch.hx, ch.hy});
            Poly gy = fy_.substitute({ch.hx, ch.hy});
            long long ox = gx.is_zero() ? -1 : *gx.order_in(axis);
            long long oy = gy.is_zero() ? -1 : *gy.order_in(axis);
            if (ox < 0) return oy;
            if (oy < 0) return ox;
            return std::min(ox, oy);
        };
        long long p1 = jac_order(c1, 0);
        long long p2 = jac_order(c2, 1);
        ds.p = p1;
        ds.chart_consistent = ds.chart_consistent && (p1 == p2);

        // bookkeeping: blown centers, the global blown set, edges
        c.blown.push_back({a, b});
        for (const auto& occ : through) {
            const Rat& param = occ.axis == 0 ? b : a;
            auto t = occ.to_canonical.apply(param);
            blown_.insert({occ.divisor,
                           t ? PPoint::at(*t) : PPoint::infinity()});
        }
        // drop edges between divisors meeting at the center
        if (through.size() > 2)
            throw internal_error("more than two divisors through a center");
        if (through.size() == 2) {
            int di = through[0].divisor, dj = through[1].divisor;
            bool found = false;
            for (std::size_t k = 0; k < edges_.size(); ++k) {
                if ((edges_[k].i == di && edges_[k].j == dj) ||
                    (edges_[k].i == dj && edges_[k].j == di)) {
                    edges_.erase(edges_.begin() + k);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw internal_error("two divisors through a center but no edge");
        }
        for (const auto& occ : through) {
            EdgeState e;
            e.i = newdiv;
            e.j = occ.divisor;
            const Rat& param = occ.axis == 0 ? b : a;
            auto t = occ.to_canonical.apply(param);
            e.tj = t ? PPoint::at(*t) : PPoint::infinity();
            if (occ.axis == 0) {
                // strict partner lives in child2, crossing at its origin
                e.ti = PPoint::infinity();  // canonical coordinate is child1's V
                e.chart = c2.id;
            } else {
                e.ti = PPoint::at(Rat(0));
                e.chart = c1.id;
            }
            e.pu = 0;
            e.pv = 0;
            edges_.push_back(e);
            divisors_[occ.divisor].self_int -= 1;
        }

        int id1 = c1.id, id2 = c2.id;
        divisors_.push_back(ds);
        charts_.push_back(std::move(c1));
        charts_.push_back(std::move(c2));
        ++blow_ups_;
        return {id1, id2};
    }

    struct ScanResult {
        struct Candidate {
            int chart;
            Rat u, v;
            bool operator<(const Candidate& o) const {
                if (chart != o.chart) return chart < o.chart;
                if (u != o.u) return u < o.u;
                return v < o.v;
            }
            bool operator==(const Candidate& o) const {
                return chart == o.chart && u == o.u && v == o.v;
            }
        };
        std::vector<Candidate> bad;
        std::map<int, std::set<PPoint>> strict_points;
        std::map<int, UniPoly> strict_clusters;  // canonical squarefree products
    };

    // One sweep over every tracked occurrence: locates simple-normal-
    // crossing failures (blow-up candidates) and collects the strict
    // transform's attachment data per divisor.
    ScanResult scan() const {
        ScanResult out;
        for (const auto& ch : charts_) {
            for (const auto& occ : ch.divisors) {
                const DivisorState& ds = divisors_[occ.divisor];
                Poly axis_eq = detail::axis_poly(ch.vars, occ.axis, occ.c);
                int ord = ch.total.order_along(axis_eq);
                if (ord != ds.m)
                    throw internal_error("order of the total transform differs "
                                         "between charts of one divisor");
                Poly q = ch.total;
                for (int k = 0; k < ord; ++k)
                    q = *q.divide_exact(axis_eq);
                UniPoly r = detail::restrict_to_axis(q, occ.axis, occ.c);
                if (r.is_zero())
                    throw internal_error("strict restriction vanished on a divisor");

                // divide out the other divisors crossing this occurrence
                Moebius from_canonical = occ.to_canonical.inverse();
                std::vector<std::pair<Rat, int>> crossings;  // local param, id
                for (const auto& e : edges_) {
                    int other = -1;
                    PPoint t_here;
                    if (e.i == occ.divisor) { other = e.j; t_here = e.ti; }
                    if (e.j == occ.divisor) { other = e.i; t_here = e.tj; }
                    if (other < 0) continue;
                    std::optional<Rat> w =
                        t_here.inf ? from_canonical.apply_infinity()
                                   : from_canonical.apply(t_here.v);
                    if (!w) continue;  // crossing not in this chart
                    crossings.push_back({*w, other});
                    UniPoly lin(std::vector<Rat>{-*w, Rat(1)});
                    for (long long k = 0; k < divisors_[other].m; ++k) {
                        auto [qq, rem] = r.divmod(lin);
                        if (!rem.is_zero())
                            throw internal_error(
                                "crossing multiplicity did not divide out");
                        r = qq;
                    }
                }

                // triple points: the strict transform through a crossing
                for (const auto& [w, other] : crossings) {
                    if (r.eval(w) != 0) continue;
                    // repair at the chart recorded with the edge, where both
                    // divisors are tracked
                    for (const auto& e : edges_) {
                        bool match = (e.i == occ.divisor && e.j == other) ||
                                     (e.j == occ.divisor && e.i == other);
                        if (match)
                            out.bad.push_back({e.chart, e.pu, e.pv});
                    }
                }

                // rational attachment / singular points of the strict part;
                // points sitting at a crossing are handled by the triple
                // check above, in a chart where both divisors are tracked
                RationalRoots rr = uni_rational_roots(r);
                for (const auto& [root, mult] : rr.roots) {
                    bool at_crossing = false;
                    for (const auto& [w, other] : crossings)
                        at_crossing = at_crossing || (w == root);
                    if (at_crossing) continue;
                    auto t = occ.to_canonical.apply(root);
                    PPoint cp = t ? PPoint::at(*t) : PPoint::infinity();
                    if (blown_.count({occ.divisor, cp})) continue;
                    if (mult >= 2) {
                        Rat bu = occ.axis == 0 ? occ.c : root;
                        Rat bv = occ.axis == 0 ? root : occ.c;
                        out.bad.push_back({ch.id, bu, bv});
                    } else {
                        out.strict_points[occ.divisor].insert(cp);
                    }
                }

                // irrational part: simple clusters are fine, multiple ones
                // would need a non-rational center
                if (rr.cofactor.degree() >= 1) {
                    UniPoly sq = uni_gcd(rr.cofactor, rr.cofactor.derivative());
                    if (sq.degree() >= 1)
                        throw input_error(
                            "resolution would need a blow-up at a non-rational "
                            "point; only rational centers are supported");
                    UniPoly canon = uni_primitive(
                        uni_moebius(rr.cofactor, from_canonical));
                    auto& acc = out.strict_clusters[occ.divisor];
                    if (acc.is_zero()) {
                        acc = canon;
                    } else {
                        UniPoly g = uni_gcd(acc, canon);
                        auto [extra, rem] = canon.divmod(g);
                        if (!rem.is_zero())
                            throw internal_error("cluster merge failed");
                        acc = uni_primitive(acc * extra);
                    }
                }
            }
        }
        std::sort(out.bad.begin(), out.bad.end());
        out.bad.erase(std::unique(out.bad.begin(), out.bad.end()), out.bad.end());
        return out;
    }

private:
    Poly f_, fx_, fy_;
    std::vector<Chart> charts_;
    std::vector<DivisorState> divisors_;
    std::vector<EdgeState> edges_;
    std::set<std::pair<int, PPoint>> blown_;
    int blow_ups_ = 0;
};

struct ResolutionOptions {
    int blow_up_budget = 300;
    int extra_smooth_blow_ups = 0;  // resolution-independence perturbation
};

inline ResolutionGraph embedded_resolution(const Poly& f,
                                           const ResolutionOptions& opts = {}) {
    if (f.num_vars() != 2)
        throw input_error("embedded resolution supports exactly two variables");
    if (f.is_zero() || f.constant_term() != 0)
        throw input_error("the input must vanish at the origin");

    ResolutionGraph graph;
    Poly fx = f.derivative(0), fy = f.derivative(1);
    if (fx.constant_term() != 0 || fy.constant_term() != 0) {
        graph.smooth = true;
        graph.snc = true;
        return graph;
    }
    {
        MilnorData md = milnor_number(f);
        if (!md.isolated())
            throw input_error("f must be reduced: the critical locus at the "
                              "origin is not isolated");
    }

    BlowupSurface surface(f);
    surface.blow_up_point(0, Rat(0), Rat(0));

    BlowupSurface::ScanResult scan_data;
    while (true) {
        if (surface.blow_ups() > opts.blow_up_budget)
            throw resource_error("blow-up budget exceeded");
        scan_data = surface.scan();
        if (scan_data.bad.empty()) break;
        const auto& c = scan_data.bad.front();
        surface.blow_up_point(c.chart, c.u, c.v);
    }

    // optional perturbation: blow up free smooth rational points of the
    // exceptional configuration (the invariants downstream must not move)
    for (int extra = 0; extra < opts.extra_smooth_blow_ups; ++extra) {
        const auto& ds = surface.divisors().front();
        int chart_id = ds.birth_child1;
        const Chart& ch = surface.charts()[chart_id];
        // occupied canonical points on the first divisor
        std::set<PPoint> occupied;
        for (const auto& e : surface.edges()) {
            if (e.i == ds.id) occupied.insert(e.ti);
            if (e.j == ds.id) occupied.insert(e.tj);
        }
        auto sp = scan_data.strict_points.find(ds.id);
        if (sp != scan_data.strict_points.end())
            for (const auto& p : sp->second) occupied.insert(p);
        const Chart::Occurrence* occ = nullptr;
        for (const auto& o : ch.divisors)
            if (o.divisor == ds.id) occ = &o;
        if (!occ) throw internal_error("birth chart lost its divisor");
        Rat t = 0;
        auto cluster = scan_data.strict_clusters.find(ds.id);
        while (true) {
            PPoint cand = PPoint::at(t);
            bool clash = occupied.count(cand) > 0;
            if (!clash && cluster != scan_data.strict_clusters.end())
                clash = cluster->second.eval(t) == 0;
            // also avoid previously blown points
            if (!clash) {
                auto w = occ->to_canonical.inverse().apply(t);
                clash = !w.has_value();
                if (!clash) {
                    for (const auto& b : ch.blown) {
                        Rat bu = occ->axis == 0 ? b.second : b.first;
                        if (bu == *w) clash = true;
                    }
                }
            }
            if (!clash) break;
            t += 1;
        }
        auto w = occ->to_canonical.inverse().apply(t);
        Rat bu = occ->axis == 0 ? occ->c : *w;
        Rat bv = occ->axis == 0 ? *w : occ->c;
        surface.blow_up_point(chart_id, bu, bv);
        while (true) {
            if (surface.blow_ups() > opts.blow_up_budget)
                throw resource_error("blow-up budget exceeded");
            scan_data = surface.scan();
            if (scan_data.bad.empty()) break;
            const auto& c = scan_data.bad.front();
            surface.blow_up_point(c.chart, c.u, c.v);
        }
    }

    // assemble the graph
    graph.snc = true;
    graph.blow_ups = surface.blow_ups();
    std::map<int, int> incidences;
    for (const auto& e : surface.edges()) {
        graph.edges.push_back(
            {e.i, e.j,
             detail::gcd_ll(surface.divisors()[e.i].m, surface.divisors()[e.j].m)});
        incidences[e.i] += 1;
        incidences[e.j] += 1;
    }
    for (const auto& ds : surface.divisors()) {
        if (!ds.chart_consistent)
            throw internal_error("divisor orders differ between charts");
        auto sp = scan_data.strict_points.find(ds.id);
        if (sp != scan_data.strict_points.end()) {
            for (const auto& p : sp->second) {
                graph.strict.push_back({ds.id, 1, "t=" + p.to_string()});
                incidences[ds.id] += 1;
            }
        }
        auto cl = scan_data.strict_clusters.find(ds.id);
        if (cl != scan_data.strict_clusters.end()) {
            graph.strict.push_back({ds.id, cl->second.degree(),
                                    "cluster deg " +
                                        std::to_string(cl->second.degree())});
            incidences[ds.id] += cl->second.degree();
        }
    }
    for (const auto& ds : surface.divisors())
        graph.divisors.push_back({ds.id, ds.m, ds.p, ds.self_int,
                                  2 - incidences[ds.id]});

    // the dual graph of a curve germ resolved by point blow-ups is a tree
    if (graph.edges.size() + 1 != graph.divisors.size())
        throw internal_error("exceptional dual graph is not a tree");
    std::sort(graph.strict.begin(), graph.strict.end(),
              [](const ResolutionGraph::StrictCluster& a,
                 const ResolutionGraph::StrictCluster& b) {
                  if (a.divisor != b.divisor) return a.divisor < b.divisor;
                  return a.position < b.position;
              });
    return graph;
}

// All nonempty strata of the stratified exceptional configuration; strict
// components carry multiplicity one and their one-divisor strata are not
// over the origin.
inline std::vector<Stratum> strata(const ResolutionGraph& g) {
    std::vector<Stratum> out;
    if (g.smooth) return out;
    if (!g.snc) throw input_error("strata need a certified SNC resolution");
    auto elabel = [](int id) { return "E" + std::to_string(id + 1); };
    for (const auto& d : g.divisors)
        out.push_back({{elabel(d.id)}, true, d.m, d.chi_open});
    std::vector<std::string> slabels;
    for (std::size_t k = 0; k < g.strict.size(); ++k)
        slabels.push_back("S" + std::to_string(k + 1));
    for (std::size_t k = 0; k < g.strict.size(); ++k)
        out.push_back({{slabels[k]}, false, 1, 0});
    for (const auto& e : g.edges)
        out.push_back({{elabel(e.i), elabel(e.j)}, true, e.m_gcd, 1});
    for (std::size_t k = 0; k < g.strict.size(); ++k)
        out.push_back({{slabels[k], elabel(g.strict[k].divisor)},
                       true,
                       1,
                       g.strict[k].degree});
    return out;
}

} // namespace cla
