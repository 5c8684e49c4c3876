#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "extended_real.hpp"
#include "rectangulation.hpp"

namespace teich {

// ---------------------------------------------------------------------------
// Quadratic ratio program: maximize (sum a_j x_j)^2 / (sum b_j x_j^2) over
// nonnegative x. Closed form: value sum_j a_j^2 / b_j at x_j proportional to
// a_j / b_j; +infinity when some a_j > 0 has b_j = 0.

struct RatioProgram {
    std::vector<double> a; // nonnegative
    std::vector<double> b; // nonnegative
};

struct RatioOpt {
    ExtReal value;
    std::vector<double> x; // maximizer normalized to sum 1 (finite case)
};

inline RatioOpt optimise_quadratic_ratio(const RatioProgram& prog) {
    if (prog.a.size() != prog.b.size() || prog.a.empty())
        throw InputError("ratio program: size mismatch or empty");
    for (std::size_t j = 0; j < prog.a.size(); ++j)
        if (prog.a[j] < 0 || prog.b[j] < 0)
            throw InputError("ratio program: coefficients must be nonnegative");
    RatioOpt opt;
    double total = 0;
    bool infinite = false;
    std::vector<double> x(prog.a.size(), 0.0);
    for (std::size_t j = 0; j < prog.a.size(); ++j) {
        if (prog.b[j] == 0.0) {
            if (prog.a[j] > 0.0) infinite = true;
            continue;
        }
        total += prog.a[j] * prog.a[j] / prog.b[j];
        x[j] = prog.a[j] / prog.b[j];
    }
    if (infinite) {
        opt.value = ExtReal::infinity();
        return opt;
    }
    double s = 0;
    for (double v : x) s += v;
    if (s > 0)
        for (double& v : x) v /= s;
    opt.value = ExtReal::finite(total);
    opt.x = std::move(x);
    return opt;
}

// ---------------------------------------------------------------------------
// Certified-style lower bound from a weighted-cylinder metric: assigning
// weight theta_j to the cylinder of area a_j gives curves of the class F a
// length of at least sum theta_j i(G_j, F) per unit stretch, hence
// Ext >= (sum theta_j i_j)^2 / (sum theta_j^2 a_j).
inline double lower_bound_witness(const std::vector<double>& areas,
                                  const std::vector<double>& crossings,
                                  const std::vector<double>& theta) {
    if (areas.size() != crossings.size() || areas.size() != theta.size())
        throw InputError("lower bound witness: size mismatch");
    double num = 0, den = 0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        if (theta[j] < 0 || areas[j] <= 0 || crossings[j] < 0)
            throw InputError("lower bound witness: invalid coefficients");
        num += theta[j] * crossings[j];
        den += theta[j] * theta[j] * areas[j];
    }
    if (den == 0) return 0.0;
    return num * num / den;
}

// Optimal choice theta_j = i_j / a_j reproduces the ratio-program value.
inline double lower_bound_witness_optimal(const std::vector<double>& areas,
                                          const std::vector<double>& crossings) {
    std::vector<double> theta(areas.size());
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = crossings[j] / areas[j];
    return lower_bound_witness(areas, crossings, theta);
}

// Probe-family lower bound for the Teichmueller distance
// (1/2) log sup_F Ext_y(F) / Ext_x(F).
inline double distance_lower_from_probes(const std::vector<double>& ext_x,
                                         const std::vector<double>& ext_y) {
    if (ext_x.size() != ext_y.size() || ext_x.empty())
        throw InputError("distance estimate: probe size mismatch");
    double best = 0;
    for (std::size_t j = 0; j < ext_x.size(); ++j) {
        if (ext_x[j] <= 0 || ext_y[j] <= 0)
            throw InputError("distance estimate: nonpositive extremal length");
        best = std::max(best, std::max(ext_y[j] / ext_x[j], ext_x[j] / ext_y[j]));
    }
    return 0.5 * std::log(best);
}

// ---------------------------------------------------------------------------
// Two-sided numeric extremal length of a cylinder core class on a deformed
// square-tiled surface.

struct CurveClassSpec {
    bool horizontal = true; // core direction: (1,0) if true, (0,1) otherwise
    int cylinder_index = 0; // index in the decomposition of that direction
};

struct ExtLenEstimate {
    ExtReal lower, upper;
    bool converged = false;
    int k = 0;
    long iterations = 0;
};

namespace detail {

// k x k grid graph on each rectangle, glued by the origami identifications.
// Corner points of one vertex orbit are a single node.
class GridGraph {
public:
    GridGraph(const Rectangulation& R, int k) : R_(R), k_(k) {
        if (k < 2) throw InputError("grid: k must be >= 2");
        const int n = R.o.n;
        corner_node_.assign(n, -1);
        int next = n * k * k; // regular slots first, orbit nodes appended
        for (int s = 0; s < n; ++s) {
            int rep = R.o.vertex_orbit[s];
            if (corner_node_[rep] == -1) corner_node_[rep] = next++;
            corner_node_[s] = corner_node_[rep];
        }
        node_count_ = next;
        rho_.assign((std::size_t)n * k * k, 1.0);
    }

    int nodes() const { return node_count_; }
    int k() const { return k_; }
    double cell_w() const { return R_.width() / k_; }
    double cell_h() const { return R_.height() / k_; }

    int node(int s, int i, int j) const {
        if (i == k_) {
            s = R_.o.h[s];
            i = 0;
        }
        if (j == k_) {
            s = R_.o.v[s];
            j = 0;
        }
        if (i == 0 && j == 0) return corner_node_[s];
        return (s * k_ + i) * k_ + j;
    }

    double& rho(int s, int ci, int cj) { return rho_[((std::size_t)s * k_ + ci) * k_ + cj]; }
    double rho(int s, int ci, int cj) const {
        return rho_[((std::size_t)s * k_ + ci) * k_ + cj];
    }

    double area() const {
        double a = 0;
        for (double r : rho_) a += r * r;
        return a * cell_w() * cell_h();
    }

    struct Arc {
        int to;
        double cost;
        int du, dv;
        int cs[2], ci[2], cj[2]; // the two adjacent cells
    };

    // Outgoing arcs of a regular node or of every square copy of a corner node.
    void arcs_from(int id, std::vector<Arc>& out) const {
        out.clear();
        if (id >= R_.o.n * k_ * k_) {
            for (int s = 0; s < R_.o.n; ++s)
                if (corner_node_[s] == id) emit_arcs(s, 0, 0, out);
            return;
        }
        int s = id / (k_ * k_);
        int i = (id / k_) % k_;
        int j = id % k_;
        emit_arcs(s, i, j, out);
    }

private:
    void emit_arcs(int s, int i, int j, std::vector<Arc>& out) const {
        const auto& o = R_.o;
        auto cell_above = [&](int sq, int ci, int cj) {
            return std::tuple<int, int, int>(sq, ci, cj);
        };
        // Horizontal arcs: cells below and above the edge at row j.
        auto h_cells = [&](int sq, int ci, int row, Arc& a) {
            auto [s1, c1i, c1j] = cell_above(sq, ci, row < k_ ? row : 0);
            if (row == k_) s1 = o.v[sq], c1j = 0, c1i = ci;
            a.cs[0] = s1;
            a.ci[0] = c1i;
            a.cj[0] = c1j;
            if (row > 0) {
                a.cs[1] = sq;
                a.ci[1] = ci;
                a.cj[1] = row - 1;
            } else {
                a.cs[1] = o.vinv[sq];
                a.ci[1] = ci;
                a.cj[1] = k_ - 1;
            }
        };
        auto v_cells = [&](int sq, int col, int cj, Arc& a) {
            if (col < k_) {
                a.cs[0] = sq;
                a.ci[0] = col;
            } else {
                a.cs[0] = o.h[sq];
                a.ci[0] = 0;
            }
            a.cj[0] = cj;
            if (col > 0) {
                a.cs[1] = sq;
                a.ci[1] = col - 1;
            } else {
                a.cs[1] = o.hinv[sq];
                a.ci[1] = k_ - 1;
            }
            a.cj[1] = cj;
        };
        auto cost_of = [&](double len, const Arc& a) {
            return len * 0.5 *
                   (rho(a.cs[0], a.ci[0], a.cj[0]) + rho(a.cs[1], a.ci[1], a.cj[1]));
        };
        // right
        {
            Arc a{};
            a.to = node(s, i + 1, j);
            a.du = (i + 1 == k_) ? 1 : 0;
            a.dv = 0;
            h_cells(s, i, j, a);
            a.cost = cost_of(cell_w(), a);
            out.push_back(a);
        }
        // left
        {
            Arc a{};
            int ts = s, ti = i - 1;
            a.du = 0;
            if (i == 0) {
                ts = o.hinv[s];
                ti = k_ - 1;
                a.du = -1;
            }
            a.to = node(ts, ti, j);
            a.dv = 0;
            h_cells(ts, ti, j, a);
            a.cost = cost_of(cell_w(), a);
            out.push_back(a);
        }
        // up
        {
            Arc a{};
            a.to = node(s, i, j + 1);
            a.dv = (j + 1 == k_) ? 1 : 0;
            a.du = 0;
            v_cells(s, i, j, a);
            a.cost = cost_of(cell_h(), a);
            out.push_back(a);
        }
        // down
        {
            Arc a{};
            int ts = s, tj = j - 1;
            a.dv = 0;
            if (j == 0) {
                ts = o.vinv[s];
                tj = k_ - 1;
                a.dv = -1;
            }
            a.to = node(ts, i, tj);
            a.du = 0;
            v_cells(ts, i, tj, a);
            a.cost = cost_of(cell_h(), a);
            out.push_back(a);
        }
    }

    const Rectangulation& R_;
    int k_;
    int node_count_ = 0;
    std::vector<int> corner_node_;
    std::vector<double> rho_;
};

struct HomologyCycle {
    double length = 0;
    std::vector<std::array<int, 3>> cells; // cells adjacent to the cycle arcs
    bool found = false;
};

// Shortest grid cycle with prescribed total crossing numbers (a, b) with the
// vertical and horizontal edge systems, searched in a bounded abelian cover
// (documented heuristic: detours beyond the level window are not explored).
inline HomologyCycle shortest_homology_cycle(const GridGraph& g, int a, int b,
                                             const std::vector<int>& starts,
                                             int slack = 1) {
    if (a == 0 && b == 0)
        throw InputError("homology cycle: trivial class");
    const int umin = std::min(0, a) - slack, umax = std::max(0, a) + slack;
    const int vmin = std::min(0, b) - slack, vmax = std::max(0, b) + slack;
    const int LV = vmax - vmin + 1;
    const int LU = umax - umin + 1;
    const std::size_t N = (std::size_t)g.nodes() * LU * LV;
    auto lift = [&](int node, int u, int v) {
        return ((std::size_t)((u - umin) * LV + (v - vmin))) * g.nodes() + node;
    };

    HomologyCycle best;
    double bound = std::numeric_limits<double>::infinity();
    std::vector<double> dist(N);
    std::vector<std::size_t> parent(N);
    std::vector<std::array<int, 6>> pcell(N); // two cells of the arc into a node
    std::vector<GridGraph::Arc> arcs;

    for (int start : starts) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        using QE = std::pair<double, std::size_t>;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        const std::size_t s0 = lift(start, 0, 0);
        const std::size_t goal = lift(start, a, b);
        dist[s0] = 0;
        parent[s0] = s0;
        pq.push({0.0, s0});
        while (!pq.empty()) {
            auto [d, x] = pq.top();
            pq.pop();
            if (d >= bound) break;
            if (d > dist[x]) continue;
            if (x == goal) break;
            const int node = (int)(x % (std::size_t)g.nodes());
            const int lvl = (int)(x / (std::size_t)g.nodes());
            const int u = lvl / LV + umin, v = lvl % LV + vmin;
            g.arcs_from(node, arcs);
            for (const auto& arc : arcs) {
                const int nu = u + arc.du, nv = v + arc.dv;
                if (nu < umin || nu > umax || nv < vmin || nv > vmax) continue;
                const std::size_t y = lift(arc.to, nu, nv);
                const double nd = d + arc.cost;
                if (nd < dist[y] && nd < bound) {
                    dist[y] = nd;
                    parent[y] = x;
                    pcell[y] = {arc.cs[0], arc.ci[0], arc.cj[0],
                                arc.cs[1], arc.ci[1], arc.cj[1]};
                    pq.push({nd, y});
                }
            }
        }
        if (dist[goal] < bound) {
            bound = dist[goal];
            best.found = true;
            best.length = bound;
            best.cells.clear();
            std::size_t cur = goal;
            std::size_t guard = 0;
            while (cur != s0) {
                if (++guard > N) throw Error("homology cycle: broken parent chain");
                const auto& pc = pcell[cur];
                best.cells.push_back({pc[0], pc[1], pc[2]});
                best.cells.push_back({pc[3], pc[4], pc[5]});
                cur = parent[cur];
            }
        }
    }
    return best;
}

} // namespace detail

// Two-sided estimate of Ext at flow time R.t of the core class of a
// horizontal or vertical cylinder. Lower: grid shortest-cycle reweighting,
// keeping the running maximum of L(rho)^2 / A(rho). Upper: reciprocal modulus
// of the fattest isotopic flat cylinder.
inline ExtLenEstimate discrete_ext_length(const Rectangulation& R,
                                          const CurveClassSpec& cls, int k,
                                          long budget = 10000, double tol = 1e-8,
                                          int window = 100, int slack = 1) {
    auto cyls = cylinder_decomposition(R.o, cls.horizontal ? 1 : 0,
                                       cls.horizontal ? 0 : 1);
    if (cls.cylinder_index < 0 || cls.cylinder_index >= (int)cyls.size())
        throw InputError("ext estimate: cylinder index out of range");
    const Cylinder& cyl = cyls[cls.cylinder_index];

    ExtLenEstimate est;
    est.k = k;
    const double mod_inv = cyl.circumference / cyl.height;
    est.upper = ExtReal::finite(cls.horizontal ? mod_inv * std::exp(2.0 * R.t)
                                               : mod_inv * std::exp(-2.0 * R.t));

    // Total crossing numbers of the core with the vertical/horizontal edges.
    const int a = cls.horizontal ? cyl.cycle_len : 0;
    const int b = cls.horizontal ? 0 : cyl.cycle_len;

    detail::GridGraph g(R, k);
    // Any cycle in the class crosses the corresponding edge system, hence
    // visits a left-column (resp. bottom-row) node.
    std::vector<int> starts;
    {
        std::vector<char> seen(g.nodes(), 0);
        for (int s = 0; s < R.o.n; ++s)
            for (int r = 0; r < k; ++r) {
                int id = cls.horizontal ? g.node(s, 0, r) : g.node(s, r, 0);
                if (!seen[id]) {
                    seen[id] = 1;
                    starts.push_back(id);
                }
            }
    }

    double best_obj = 0;
    std::vector<double> history;
    for (long it = 1; it <= budget; ++it) {
        est.iterations = it;
        auto cyc = detail::shortest_homology_cycle(g, a, b, starts, slack);
        if (!cyc.found) break;
        best_obj = std::max(best_obj, cyc.length * cyc.length / g.area());
        history.push_back(best_obj);
        if ((long)history.size() > window &&
            best_obj - history[history.size() - 1 - window] <=
                tol * std::max(1.0, best_obj)) {
            est.converged = true;
            break;
        }
        const double f = 1.0 + 1.0 / std::sqrt((double)it);
        for (const auto& c : cyc.cells) g.rho(c[0], c[1], c[2]) *= f;
    }
    est.lower = ExtReal::finite(best_obj);
    return est;
}

} // namespace teich
