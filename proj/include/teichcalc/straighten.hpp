#pragma once

#include <cstddef>
#include <vector>

#include "rectangulation.hpp"

namespace teich {

struct StraightenResult {
    ChordCurve curve;
    ConditionReport report;
    double dV_before = 0, dV_after = 0;
    double rho_dH_before = 0, rho_dH_after = 0;
    long moves = 0;
};

namespace detail {

inline void remove_zero_chords(std::vector<Chord>& c) {
    std::vector<Chord> out;
    for (const Chord& ch : c)
        if (ch.length() > geom::kTol) out.push_back(ch);
    c.swap(out);
}

// Merge consecutive chords meeting at the same rectangle point, and push
// non-transverse junctions on glued vertical edges along the leaf until one
// side turns horizontal. Pure within-disk homotopies.
inline bool phase_a_pass(const Rectangulation& R, std::vector<Chord>& c, long& moves) {
    const double W = R.width();
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        Chord& a = c[i];
        Chord& b = c[(i + 1) % m];
        // Same rectangle point: concatenation straightens inside the disk.
        if (a.rect == b.rect && geom::near(a.qx, b.px) && geom::near(a.qy, b.py)) {
            if (m == 1 || &a == &b) {
                c.clear(); // single chord closing up inside one disk: contractible
            } else {
                a.qx = b.qx;
                a.qy = b.qy;
                c.erase(c.begin() + (std::ptrdiff_t)((i + 1) % m));
                // An exact out-and-back concatenates to a zero chord.
                remove_zero_chords(c);
            }
            ++moves;
            return true;
        }
        if (junction_transverse(R, a, b)) continue;
        // Non-transverse junction: must be glued across a vertical edge.
        const bool right = geom::near(a.qx, W) && geom::near(b.px, 0.0) &&
                           b.rect == R.o.h[a.rect];
        const bool left = geom::near(a.qx, 0.0) && geom::near(b.px, W) &&
                          b.rect == R.o.hinv[a.rect];
        if ((!right && !left) || !geom::near(a.qy, b.py))
            throw InputError("straighten: unsupported non-transverse junction");
        const int sa = v_sign(a);
        // Local max: slide the junction down; local min: slide it up.
        const double ystar =
            sa > 0 ? std::max(a.py, b.qy) : std::min(a.py, b.qy);
        a.qy = ystar;
        b.py = ystar;
        ++moves;
        remove_zero_chords(c);
        return true;
    }
    return false;
}

// Shift a junction partner endpoint along its (glued-by-translation) edge.
inline void shift_end_x(Chord& prev, double dx) { prev.qx += dx; }
inline void shift_start_x(Chord& next, double dx) { next.px += dx; }

// One move for an atom lying in a horizontal edge whose endpoints are not
// both corner points: slide the atom through the gluing into the neighbouring
// atom and drop it.
inline bool phase_b_pass(const Rectangulation& R, std::vector<Chord>& c, long& moves) {
    const std::size_t m = c.size();
    if (m < 2) return false;
    for (std::size_t i = 0; i < m; ++i) {
        const Chord& ch = c[i];
        if (!in_same_horizontal_edge(R, ch)) continue;
        const bool pc = is_corner(R, ch.px, ch.py);
        const bool qc = is_corner(R, ch.qx, ch.qy);
        if (pc && qc) continue;
        if (!pc) {
            // Walk the edge segment [p, q] into the previous atom's rectangle.
            Chord& prev = c[(i + m - 1) % m];
            shift_end_x(prev, ch.qx - ch.px);
            c.erase(c.begin() + (std::ptrdiff_t)i);
        } else {
            // Mirror: walk [q, p] into the next atom's rectangle.
            Chord& next = c[(i + 1) % m];
            shift_start_x(next, ch.px - ch.qx);
            c.erase(c.begin() + (std::ptrdiff_t)i);
        }
        ++moves;
        remove_zero_chords(c);
        return true;
    }
    return false;
}

// Move a junction lying on a vertical edge by dy; q of `a` and p of `b` move
// together along the glued edge.
inline void move_vertical_junction(Chord& a, Chord& b, double dy) {
    a.qy += dy;
    b.py += dy;
}

// One move for a short atom (length < corner gap) with non-horizontal
// neighbours.
inline bool phase_c_pass(const Rectangulation& R, std::vector<Chord>& c, long& moves) {
    const std::size_t m = c.size();
    if (m < 2) return false;
    const double l = corner_gap(R);
    const double H = R.height();
    for (std::size_t i = 0; i < m; ++i) {
        Chord& ch = c[i];
        if (ch.length() >= l - geom::kTol) continue;
        Chord& prev = c[(i + m - 1) % m];
        Chord& next = c[(i + 1) % m];
        if (prev.horizontal() || next.horizontal()) continue;

        if (ch.h_extent() > geom::kTol && ch.v_extent() > geom::kTol) {
            // One endpoint on a horizontal edge, the other on a vertical edge:
            // slide the horizontal-edge endpoint to the corner next to the
            // vertical edge (changes dV only).
            const bool p_on_h = geom::near(ch.py, 0.0) || geom::near(ch.py, H);
            const bool q_on_h = geom::near(ch.qy, 0.0) || geom::near(ch.qy, H);
            if (p_on_h && !is_corner(R, ch.px, ch.py)) {
                shift_end_x(prev, ch.qx - ch.px);
                ch.px = ch.qx;
            } else if (q_on_h && !is_corner(R, ch.qx, ch.qy)) {
                shift_start_x(next, ch.px - ch.qx);
                ch.qx = ch.px;
            } else {
                throw InputError("straighten: unexpected short-atom configuration");
            }
            ++moves;
            remove_zero_chords(c);
            return true;
        }

        if (ch.h_extent() <= geom::kTol) {
            // Vertical atom along a vertical edge. Move each junction along
            // the edge; direction chosen so the weighted height integral does
            // not increase.
            auto move_end = [&](Chord& atom_end, Chord& neighbour, bool end_is_q) {
                double& jy = end_is_q ? atom_end.qy : atom_end.py;
                double& ny = end_is_q ? neighbour.py : neighbour.qy;
                // A junction at a corner is attached through a different
                // gluing and cannot slide along the vertical edge.
                if (geom::near(jy, 0.0) || geom::near(jy, H)) return false;
                const double far_y = end_is_q ? atom_end.py : atom_end.qy;
                const double n_far = end_is_q ? neighbour.qy : neighbour.py;
                const double rho_j = R.weights[atom_end.rect];
                const double rho_k = R.weights[neighbour.rect];
                double target;
                if (rho_k <= rho_j) {
                    // Shrink the short atom: junction moves toward the far end.
                    const double dir = far_y > jy ? 1.0 : -1.0;
                    target = far_y;
                    // Stop earlier if the neighbour would pass through
                    // horizontal or the junction hits a corner.
                    const double corner = dir > 0 ? H : 0.0;
                    if ((corner - jy) * dir < (target - jy) * dir) target = corner;
                    if ((n_far - ny) * dir > 0 &&
                        (n_far - ny) * dir < (target - jy) * dir)
                        target = jy + (n_far - ny);
                } else {
                    // Grow the short atom: junction moves away from the far
                    // end, shrinking the neighbour.
                    const double dir = far_y > jy ? -1.0 : 1.0;
                    const double corner = dir > 0 ? H : 0.0;
                    target = jy + (n_far - ny); // neighbour horizontal
                    if ((corner - jy) * dir < (target - jy) * dir) target = corner;
                    const double to_len = far_y + dir * l; // atom length reaches l
                    if ((to_len - jy) * dir > 0 &&
                        (to_len - jy) * dir < (target - jy) * dir)
                        target = to_len;
                }
                if (geom::near(target, jy)) return false;
                const double dy = target - jy;
                jy += dy;
                ny += dy;
                return true;
            };
            bool changed = move_end(ch, next, /*end_is_q=*/true);
            if (i < c.size() && ch.length() > geom::kTol && !next.horizontal() &&
                ch.length() < l - geom::kTol)
                changed = move_end(ch, prev, /*end_is_q=*/false) || changed;
            if (!changed) continue;
            ++moves;
            remove_zero_chords(c);
            return true;
        }
    }
    return false;
}

} // namespace detail

// Homotope the closed chord curve to one satisfying the junction conditions:
// (i) consecutive endpoints glued, (ii) transverse junctions, (iii) atoms in
// a horizontal edge only between corner points, (iv) atoms shorter than the
// corner gap have a horizontal neighbour. Preserves the free homotopy class.
inline StraightenResult straighten(const Rectangulation& R, const ChordCurve& curve,
                                   long max_moves = 100000) {
    if (!check_condition_i(R, curve))
        throw InputError("straighten: input violates the junction gluing condition");
    StraightenResult res;
    res.dV_before = total_dV(curve);
    res.rho_dH_before = total_rho_dH(R, curve);
    std::vector<Chord> c = curve.chords;
    detail::remove_zero_chords(c);

    long guard = 0;
    while (true) {
        if (++guard > max_moves)
            throw NonconvergenceError("straighten: move budget exceeded", {});
        if (c.empty()) break;
        if (detail::phase_a_pass(R, c, res.moves)) continue;
        if (detail::phase_b_pass(R, c, res.moves)) continue;
        if (detail::phase_c_pass(R, c, res.moves)) continue;
        break;
    }

    res.curve.chords = std::move(c);
    res.report = check_conditions(R, res.curve);
    res.dV_after = total_dV(res.curve);
    res.rho_dH_after = total_rho_dH(R, res.curve);
    return res;
}

} // namespace teich
