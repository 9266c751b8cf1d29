#include "tilerecon/histogram_planner.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "exec_util.hpp"
#include "tilerecon/path.hpp"

namespace tilerecon {

namespace {

using detail::ExecState;

// All gathering runs in a frame where the histogram faces North and the base
// is a row. to_norm maps user coordinates into that frame.
struct Frame {
    Facing f;

    Coord to_norm(Coord c) const {
        switch (f) {
            case Facing::North: return c;
            case Facing::South: return {-c.x, -c.y};
            case Facing::East: return {-c.y, c.x};
            case Facing::West: return {c.y, -c.x};
        }
        return c;
    }
    Coord from_norm(Coord c) const {
        switch (f) {
            case Facing::North: return c;
            case Facing::South: return {-c.x, -c.y};
            case Facing::East: return {c.y, -c.x};
            case Facing::West: return {-c.y, c.x};
        }
        return c;
    }
    int base_to_norm(int base) const {
        return (f == Facing::North || f == Facing::East) ? base : -base;
    }
};

Configuration map_config(const Configuration& c, auto&& fn) {
    Configuration out;
    for (const Coord& t : c.cells()) out.insert(fn(t));
    return out;
}

Schedule map_schedule(const Schedule& s, auto&& fn) {
    Schedule out;
    out.reserve(s.size());
    for (const Operation& op : s) out.push_back({op.kind, fn(op.at)});
    return out;
}

// Tiles whose whole column down to the base row is occupied.
std::unordered_set<Coord, CoordHash> settled_set(const Configuration& o, int base) {
    std::unordered_set<Coord, CoordHash> settled;
    for (Coord t : o.sorted()) {
        if (t.y < base) continue;
        bool full = true;
        for (int y = base; y < t.y && full; ++y)
            if (!o.contains({t.x, y})) full = false;
        if (full) settled.insert(t);
    }
    return settled;
}

bool is_histogram_on(const Configuration& o, int base) {
    if (o.empty()) return false;
    auto settled = settled_set(o, base);
    if (settled.size() != o.size()) return false;
    // single contiguous base run
    std::vector<int> xs;
    for (const Coord& t : o.cells())
        if (t.y == base) xs.push_back(t.x);
    if (xs.empty()) return false;
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return static_cast<int>(xs.size()) == *hi - *lo + 1;
}

struct CompInfo {
    std::vector<Coord> tiles;  // sorted
    Coord anchor;
};

struct KeelComps {
    Configuration keel;
    std::vector<CompInfo> comps;
};

KeelComps compute_keel_comps(const Configuration& o, int base) {
    KeelComps out;
    auto settled = settled_set(o, base);

    if (!settled.empty()) {
        // Maximal runs of occupied base cells; the longest (leftmost on ties)
        // is the keel. Everything settled above it stays put.
        std::vector<int> xs;
        for (const Coord& t : o.cells())
            if (t.y == base) xs.push_back(t.x);
        std::sort(xs.begin(), xs.end());
        int best_lo = xs[0], best_hi = xs[0];
        int lo = xs[0], hi = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (xs[i] == hi + 1) {
                hi = xs[i];
            } else {
                if (hi - lo > best_hi - best_lo) {
                    best_lo = lo;
                    best_hi = hi;
                }
                lo = hi = xs[i];
            }
        }
        if (hi - lo > best_hi - best_lo) {
            best_lo = lo;
            best_hi = hi;
        }
        for (const Coord& t : settled)
            if (t.x >= best_lo && t.x <= best_hi) out.keel.insert(t);
    } else {
        int ymin = std::numeric_limits<int>::max();
        for (const Coord& t : o.cells()) ymin = std::min(ymin, t.y);
        Configuration bottom;
        for (const Coord& t : o.cells())
            if (t.y == ymin) bottom.insert(t);
        if (bottom.size() != o.size()) out.keel = std::move(bottom);
        // else: a lone flat strip; it is its own single free component.
    }

    // Connected components of the off-keel part.
    std::unordered_set<Coord, CoordHash> seen;
    for (Coord s : o.sorted()) {
        if (out.keel.contains(s) || seen.count(s)) continue;
        std::vector<Coord> comp{s};
        seen.insert(s);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (Coord nb : neighbors4(comp[i])) {
                if (o.contains(nb) && !out.keel.contains(nb) && seen.insert(nb).second)
                    comp.push_back(nb);
            }
        }
        std::sort(comp.begin(), comp.end());
        Coord anchor = comp.front();
        if (!out.keel.empty()) {
            bool found = false;
            for (const Coord& t : comp) {
                for (Coord nb : neighbors4(t)) {
                    if (out.keel.contains(nb)) {
                        anchor = t;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
        out.comps.push_back({std::move(comp), anchor});
    }
    std::sort(out.comps.begin(), out.comps.end(),
              [](const CompInfo& a, const CompInfo& b) { return a.anchor < b.anchor; });
    return out;
}

struct PairRec {
    Coord pick;
    Coord drop;
    std::vector<Coord> loaded;  // robot walk from pickup stance to dropoff stance
    int layer;                  // pick row at record time
};

// One gathered move: does dropping `e` make progress for a tile picked at `t`?
bool makes_progress(Coord t, Coord e, int base, int anchor_x) {
    if (t.y < base) return e.y > t.y || (e.y == t.y && std::abs(e.x - anchor_x) < std::abs(t.x - anchor_x));
    if (e.y < base) return false;
    if (e.y != t.y) return e.y < t.y;
    return std::abs(e.x - anchor_x) < std::abs(t.x - anchor_x);
}

// Candidate drop cells around `support`, best first. Class A cells sit on or
// above the base (gravity order); class B cells below the base exist only
// for configurations still climbing toward it.
std::vector<Coord> drop_menu(const Configuration& occupied, const Configuration& support,
                             Coord pick, int base, int anchor_x) {
    std::vector<Coord> a, b;
    std::unordered_set<Coord, CoordHash> seen;
    for (Coord t : support.sorted()) {
        if (t == pick) continue;
        for (Coord e : neighbors4(t)) {
            if (e == pick || occupied.contains(e)) continue;
            if (!seen.insert(e).second) continue;
            (e.y >= base ? a : b).push_back(e);
        }
    }
    auto key_a = [&](Coord e) { return std::tuple(e.y, std::abs(e.x - anchor_x), e.x); };
    std::sort(a.begin(), a.end(), [&](Coord l, Coord r) { return key_a(l) < key_a(r); });
    auto key_b = [&](Coord e) { return std::tuple(-e.y, std::abs(e.x - anchor_x), e.x); };
    std::sort(b.begin(), b.end(), [&](Coord l, Coord r) { return key_b(l) < key_b(r); });
    if (pick.y < base) a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<Coord> pick_order(const std::vector<Coord>& candidates, int base) {
    std::vector<Coord> below, above;
    for (Coord c : candidates) (c.y < base ? below : above).push_back(c);
    std::sort(below.begin(), below.end(),
              [](Coord a, Coord b) { return std::tuple(a.y, a.x) < std::tuple(b.y, b.x); });
    std::sort(above.begin(), above.end(),
              [](Coord a, Coord b) { return std::tuple(-a.y, a.x) < std::tuple(-b.y, b.x); });
    below.insert(below.end(), above.begin(), above.end());
    return below;
}

// Records the full consumption of every free component, simulating the
// one-by-one order. Each component's sequence depends only on the keel, the
// component itself and its own pile, so any interleaving of component
// sequences stays executable. Returns false when a component jams.
bool scratch_epoch(const Configuration& o0, const KeelComps& kc, int base,
                   std::vector<std::vector<PairRec>>& out) {
    Configuration scratch = o0;
    out.clear();
    out.resize(kc.comps.size());

    for (std::size_t ci = 0; ci < kc.comps.size(); ++ci) {
        const CompInfo& comp = kc.comps[ci];
        const int ax = comp.anchor.x;
        std::unordered_set<Coord, CoordHash> remaining(comp.tiles.begin(), comp.tiles.end());
        Configuration canon = kc.keel;
        for (const Coord& t : comp.tiles) canon.insert(t);

        while (!remaining.empty()) {
            std::vector<Coord> movable;
            for (Coord t : non_articulation_tiles(canon))
                if (remaining.count(t)) movable.push_back(t);

            bool advanced = false;
            for (Coord pick : pick_order(movable, base)) {
                Configuration support = canon;
                support.erase(pick);
                for (Coord drop : drop_menu(scratch, support, pick, base, ax)) {
                    if (!makes_progress(pick, drop, base, ax)) continue;
                    std::vector<Coord> s1, s2;
                    for (Coord nb : neighbors4(pick))
                        if (support.contains(nb)) s1.push_back(nb);
                    for (Coord nb : neighbors4(drop))
                        if (support.contains(nb)) s2.push_back(nb);
                    auto loaded = multi_path(support, s1, s2);
                    if (!loaded) continue;
                    out[ci].push_back({pick, drop, std::move(*loaded), pick.y});
                    scratch.erase(pick);
                    scratch.insert(drop);
                    canon.erase(pick);
                    canon.insert(drop);
                    remaining.erase(pick);
                    advanced = true;
                    break;
                }
                if (advanced) break;
            }
            if (!advanced) return false;
        }
    }
    return true;
}

bool exec_rec(ExecState& st, const PairRec& r) {
    if (!st.tiles.contains(r.pick) || st.tiles.contains(r.drop)) return false;
    if (st.robot == r.pick) {
        Coord off{};
        bool found = false;
        for (Coord nb : neighbors4(r.pick)) {
            if (st.tiles.contains(nb)) {
                off = nb;
                found = true;
                break;
            }
        }
        if (!found) return false;
        st.sched.push_back(Operation::move(off));
        st.robot = off;
    }
    if (!detail::walk_to(st, r.loaded.front())) return false;
    st.sched.push_back(Operation::pickup(r.pick));
    st.tiles.erase(r.pick);
    for (std::size_t i = 1; i < r.loaded.size(); ++i) {
        st.sched.push_back(Operation::move(r.loaded[i]));
        st.robot = r.loaded[i];
    }
    st.sched.push_back(Operation::dropoff(r.drop));
    st.tiles.insert(r.drop);
    return true;
}

void exec_one_by_one(ExecState& st, const std::vector<std::vector<PairRec>>& recs,
                     std::vector<std::size_t>& cursor) {
    for (std::size_t ci = 0; ci < recs.size(); ++ci) {
        while (cursor[ci] < recs[ci].size()) {
            if (!exec_rec(st, recs[ci][cursor[ci]]))
                throw std::runtime_error("histogram gather: recorded move rejected");
            ++cursor[ci];
        }
    }
}

// Round-robin over components, one layer per visit. A move blocked by a tile
// of a not-yet-consumed component is deferred to the next round; stalls fall
// back to sequential execution, which is always unblocked.
void exec_all_at_once(ExecState& st, const std::vector<std::vector<PairRec>>& recs) {
    std::vector<std::size_t> cursor(recs.size(), 0);
    auto done = [&] {
        for (std::size_t ci = 0; ci < recs.size(); ++ci)
            if (cursor[ci] < recs[ci].size()) return false;
        return true;
    };
    while (!done()) {
        bool progressed = false;
        for (std::size_t ci = 0; ci < recs.size(); ++ci) {
            if (cursor[ci] >= recs[ci].size()) continue;
            const int layer = recs[ci][cursor[ci]].layer;
            while (cursor[ci] < recs[ci].size() && recs[ci][cursor[ci]].layer == layer) {
                const PairRec& r = recs[ci][cursor[ci]];
                if (st.tiles.contains(r.drop)) break;  // blocked by a later component
                if (!exec_rec(st, r))
                    throw std::runtime_error("histogram gather: recorded move rejected");
                ++cursor[ci];
                progressed = true;
            }
        }
        if (!progressed) {
            exec_one_by_one(st, recs, cursor);
            return;
        }
    }
}

// Last-resort single move used when a component sequence jams: any removable
// tile, any progressing drop, judged on the whole structure.
bool global_pair(ExecState& st, int base) {
    KeelComps kc = compute_keel_comps(st.tiles, base);
    std::vector<Coord> movable;
    for (Coord t : non_articulation_tiles(st.tiles))
        if (!kc.keel.contains(t)) movable.push_back(t);
    if (movable.empty()) movable = non_articulation_tiles(st.tiles);
    for (Coord pick : pick_order(movable, base)) {
        Configuration support = st.tiles;
        support.erase(pick);
        for (Coord drop : drop_menu(st.tiles, support, pick, base, pick.x)) {
            if (!makes_progress(pick, drop, base, pick.x)) continue;
            if (detail::exec_pair(st, pick, drop)) return true;
        }
    }
    return false;
}

struct GatherResult {
    Configuration histogram;  // normalized frame
    Coord robot;
    Schedule schedule;
};

GatherResult gather(const Configuration& c_norm, int base, FreeComponentStrategy strategy,
                    Coord robot_norm) {
    ExecState st{c_norm, robot_norm, {}};

    BoundingBox bb = bounding_box(c_norm);
    const long span = static_cast<long>(bb.width()) + bb.height() +
                      std::abs(bb.ymin - base) + std::abs(bb.ymax - base) + 8;
    const long guard = 64L * static_cast<long>(c_norm.size()) * span + 1024;
    long pairs_done = 0;

    while (!is_histogram_on(st.tiles, base)) {
        if (c_norm.size() == 1)
            throw std::invalid_argument("to_histogram: a single tile cannot be moved");
        KeelComps kc = compute_keel_comps(st.tiles, base);
        std::vector<std::vector<PairRec>> recs;
        std::size_t before = st.sched.size();
        if (scratch_epoch(st.tiles, kc, base, recs)) {
            if (strategy == FreeComponentStrategy::AllAtOnce) {
                exec_all_at_once(st, recs);
            } else {
                std::vector<std::size_t> cursor(recs.size(), 0);
                exec_one_by_one(st, recs, cursor);
            }
        } else if (!global_pair(st, base)) {
            throw std::runtime_error("histogram gather: stuck configuration");
        }
        if (st.sched.size() == before)
            throw std::runtime_error("histogram gather: epoch made no progress");
        pairs_done += static_cast<long>(st.sched.size() - before);
        if (pairs_done > guard * 8)
            throw std::runtime_error("histogram gather: move budget exhausted");
    }
    return {st.tiles, st.robot, std::move(st.sched)};
}

}  // namespace

BisectorAxis choose_orientation(const Configuration& c_s, const Configuration& c_t) {
    BoundingBox a = bounding_box(c_s);
    BoundingBox b = bounding_box(c_t);
    switch (classify_separation(a, b)) {
        case SeparationCase::HorizontalBisector: return BisectorAxis::Horizontal;
        case SeparationCase::VerticalBisector: return BisectorAxis::Vertical;
        case SeparationCase::Intersecting: return BisectorAxis::Horizontal;
        case SeparationCase::TwoBisectors: {
            int ygap = range_gap(a.ymin, a.ymax, b.ymin, b.ymax);
            int xgap = range_gap(a.xmin, a.xmax, b.xmin, b.xmax);
            return ygap <= xgap ? BisectorAxis::Horizontal : BisectorAxis::Vertical;
        }
    }
    return BisectorAxis::Horizontal;
}

std::vector<FreeComponent> find_free_components(const Configuration& c, int base, Facing f) {
    if (c.empty()) throw std::invalid_argument("find_free_components: empty configuration");
    Frame fr{f};
    Configuration norm = map_config(c, [&](Coord t) { return fr.to_norm(t); });
    int nbase = fr.base_to_norm(base);
    if (is_histogram_on(norm, nbase)) return {};
    KeelComps kc = compute_keel_comps(norm, nbase);
    std::vector<FreeComponent> out;
    for (const CompInfo& ci : kc.comps) {
        FreeComponent fc;
        for (Coord t : ci.tiles) fc.tiles.push_back(fr.from_norm(t));
        std::sort(fc.tiles.begin(), fc.tiles.end());
        fc.anchor = fr.from_norm(ci.anchor);
        out.push_back(std::move(fc));
    }
    std::sort(out.begin(), out.end(),
              [](const FreeComponent& a, const FreeComponent& b) { return a.anchor < b.anchor; });
    return out;
}

HistogramPlan to_histogram(const Configuration& c, int base, Facing f, const Ch2cOptions& opts,
                           Coord robot0) {
    if (c.empty()) throw std::invalid_argument("to_histogram: empty configuration");
    if (!c.contains(robot0)) throw std::invalid_argument("to_histogram: robot not on a tile");
    if (!is_connected(c)) throw std::invalid_argument("to_histogram: configuration disconnected");

    Frame fr{f};
    Configuration norm = map_config(c, [&](Coord t) { return fr.to_norm(t); });
    GatherResult g = gather(norm, fr.base_to_norm(base), opts.strategy, fr.to_norm(robot0));

    HistogramPlan plan;
    plan.base = base;
    plan.facing = f;
    plan.histogram = map_config(g.histogram, [&](Coord t) { return fr.from_norm(t); });
    plan.schedule = map_schedule(g.schedule, [&](Coord t) { return fr.from_norm(t); });
    plan.end_robot = fr.from_norm(g.robot);
    return plan;
}

namespace {

Facing opposite(Facing f) {
    switch (f) {
        case Facing::North: return Facing::South;
        case Facing::South: return Facing::North;
        case Facing::East: return Facing::West;
        case Facing::West: return Facing::East;
    }
    return Facing::South;
}

}  // namespace

TransferResult histogram_transfer(const HistogramPlan& h_s, const HistogramPlan& h_t,
                                  Coord robot) {
    if (h_s.histogram.size() != h_t.histogram.size())
        throw std::invalid_argument("histogram_transfer: tile counts differ");
    if (h_t.facing != opposite(h_s.facing))
        throw std::invalid_argument("histogram_transfer: histograms must face opposing directions");
    if (!h_s.histogram.contains(robot))
        throw std::invalid_argument("histogram_transfer: robot not on the source histogram");

    Frame fr{h_s.facing};
    Configuration target = map_config(h_t.histogram, [&](Coord t) { return fr.to_norm(t); });
    ExecState st{map_config(h_s.histogram, [&](Coord t) { return fr.to_norm(t); }),
                 fr.to_norm(robot),
                 {}};

    TransferResult res;
    auto by_top_left = [](Coord a, Coord b) {
        return std::tuple(-a.y, a.x) < std::tuple(-b.y, b.x);
    };

    const long guard = 64L * static_cast<long>(target.size()) * (target.size() + 16) + 1024;
    long iter = 0;

    while (true) {
        if (++iter > guard) throw std::runtime_error("histogram_transfer: did not converge");

        std::vector<Coord> want, surplus;
        for (Coord t : target.sorted())
            if (!st.tiles.contains(t)) want.push_back(t);
        if (want.empty()) break;
        for (Coord t : st.tiles.sorted())
            if (!target.contains(t)) surplus.push_back(t);
        std::sort(want.begin(), want.end(), by_top_left);
        std::sort(surplus.begin(), surplus.end(), by_top_left);

        std::unordered_set<Coord, CoordHash> movable;
        for (Coord t : non_articulation_tiles(st.tiles)) movable.insert(t);

        // Direct transfer: topmost-leftmost surplus tile into the topmost-
        // leftmost fillable target cell.
        bool acted = false;
        for (Coord pick : surplus) {
            if (!movable.count(pick)) continue;
            for (Coord drop : want) {
                bool supported = false;
                for (Coord nb : neighbors4(drop)) {
                    if (nb != pick && st.tiles.contains(nb)) {
                        supported = true;
                        break;
                    }
                }
                if (!supported) continue;
                if (!detail::exec_pair(st, pick, drop)) continue;
                res.transfer_pairs++;
                acted = true;
                break;
            }
            if (acted) break;
        }
        if (acted) continue;

        // No target touches the structure yet: bridge toward it by re-laying
        // trailing tiles closer (the histogram shift).
        auto dist_to_want = [&](Coord e) {
            int best = std::numeric_limits<int>::max();
            for (Coord t : want) best = std::min(best, manhattan(e, t));
            return best;
        };
        int cur_min = std::numeric_limits<int>::max();
        for (Coord t : st.tiles.sorted()) cur_min = std::min(cur_min, dist_to_want(t));

        for (Coord pick : surplus) {
            if (!movable.count(pick)) continue;
            Configuration support = st.tiles;
            support.erase(pick);
            Coord best{};
            int best_d = std::numeric_limits<int>::max();
            std::unordered_set<Coord, CoordHash> seen;
            for (Coord t : support.sorted()) {
                for (Coord e : neighbors4(t)) {
                    if (e == pick || st.tiles.contains(e)) continue;
                    if (!seen.insert(e).second) continue;
                    int d = dist_to_want(e);
                    if (d < best_d || (d == best_d && e < best)) {
                        best_d = d;
                        best = e;
                    }
                }
            }
            if (best_d < cur_min) {
                if (!detail::exec_pair(st, pick, best)) continue;
                res.shift_pairs++;
                acted = true;
                break;
            }
        }
        if (!acted) throw std::runtime_error("histogram_transfer: no legal move");
    }

    res.schedule = map_schedule(st.sched, [&](Coord t) { return fr.from_norm(t); });
    res.end_robot = fr.from_norm(st.robot);
    return res;
}

Ch2cPlan plan_ch2c(const Configuration& c_s, Coord robot0, const Configuration& c_t,
                   const Ch2cOptions& opts) {
    if (c_s.size() != c_t.size()) throw std::invalid_argument("plan_ch2c: sizes differ");
    if (c_s.empty()) throw std::invalid_argument("plan_ch2c: empty configuration");
    if (!c_s.contains(robot0)) throw std::invalid_argument("plan_ch2c: robot not on start");
    if (!is_connected(c_s) || !is_connected(c_t))
        throw std::invalid_argument("plan_ch2c: configurations must be connected");

    Ch2cPlan plan;
    if (c_s == c_t) return plan;
    if (c_s.size() == 1) {
        plan.status = PlanStatus::Infeasible;
        plan.note = "single tile cannot move itself";
        return plan;
    }

    BoundingBox a = bounding_box(c_s);
    BoundingBox b = bounding_box(c_t);
    BisectorAxis axis;
    switch (opts.orientation) {
        case OrientationChoice::ForceHorizontal: axis = BisectorAxis::Horizontal; break;
        case OrientationChoice::ForceVertical: axis = BisectorAxis::Vertical; break;
        default: axis = choose_orientation(c_s, c_t); break;
    }

    // Bases sit on the goal side of the bisector: the target histogram hangs
    // off its bounding-box line nearest the start, the start histogram lands
    // directly beyond it, columns extending away from each other.
    int base_s, base_t;
    Facing facing_s, facing_t;
    if (axis == BisectorAxis::Horizontal) {
        if (a.ymin > b.ymax) {  // start above target
            base_t = b.ymax;
            facing_t = Facing::South;
            base_s = b.ymax + 1;
            facing_s = Facing::North;
        } else if (b.ymin > a.ymax) {  // start below target
            base_t = b.ymin;
            facing_t = Facing::North;
            base_s = b.ymin - 1;
            facing_s = Facing::South;
        } else {  // overlap adaptation: virtual bisector through the union box
            int m = (std::min(a.ymin, b.ymin) + std::max(a.ymax, b.ymax));
            m = m >= 0 ? m / 2 : -((-m + 1) / 2);
            base_t = m;
            facing_t = Facing::South;
            base_s = m + 1;
            facing_s = Facing::North;
        }
    } else {
        if (a.xmin > b.xmax) {  // start right of target
            base_t = b.xmax;
            facing_t = Facing::West;
            base_s = b.xmax + 1;
            facing_s = Facing::East;
        } else if (b.xmin > a.xmax) {  // start left of target
            base_t = b.xmin;
            facing_t = Facing::East;
            base_s = b.xmin - 1;
            facing_s = Facing::West;
        } else {
            int m = (std::min(a.xmin, b.xmin) + std::max(a.xmax, b.xmax));
            m = m >= 0 ? m / 2 : -((-m + 1) / 2);
            base_t = m;
            facing_t = Facing::West;
            base_s = m + 1;
            facing_s = Facing::East;
        }
    }

    // Phase I: gather the start configuration.
    plan.h_s = to_histogram(c_s, base_s, facing_s, opts, robot0);

    // Phase III is the reverse of gathering the target; build that plan now.
    Coord target_robot = c_t.sorted().front();
    plan.h_t = to_histogram(c_t, base_t, facing_t, opts, target_robot);

    // Phase II: move the source histogram onto the target histogram.
    TransferResult transfer = histogram_transfer(plan.h_s, plan.h_t, plan.h_s.end_robot);
    plan.shift_used = transfer.shift_pairs > 0;

    Schedule& out = plan.schedule;
    out = plan.h_s.schedule;
    plan.phase_begin[0] = 0;
    plan.phase_begin[1] = out.size();
    out.insert(out.end(), transfer.schedule.begin(), transfer.schedule.end());

    // Seam: the reversed build-out starts where the target gather ended.
    if (!plan.h_t.schedule.empty()) {
        auto seam = robot_path(plan.h_t.histogram, transfer.end_robot, plan.h_t.end_robot);
        if (!seam) throw std::runtime_error("plan_ch2c: seam walk failed");
        for (std::size_t i = 1; i < seam->size(); ++i)
            out.push_back(Operation::move((*seam)[i]));
    }
    plan.phase_begin[2] = out.size();

    Schedule phase3 = reverse_schedule(plan.h_t.schedule, target_robot);
    out.insert(out.end(), phase3.begin(), phase3.end());
    plan.phase_begin[3] = out.size();
    return plan;
}

}  // namespace tilerecon
