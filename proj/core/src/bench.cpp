#include "tilerecon/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "tilerecon/glc.hpp"
#include "tilerecon/mwpm.hpp"
#include "tilerecon/tsp.hpp"

namespace tilerecon {

namespace {

const char* strategy_name(FreeComponentStrategy s) {
    return s == FreeComponentStrategy::OneByOne ? "one-by-one" : "all-at-once";
}

const char* orientation_name(OrientationChoice o) {
    switch (o) {
        case OrientationChoice::Auto: return "auto";
        case OrientationChoice::ForceHorizontal: return "h";
        case OrientationChoice::ForceVertical: return "v";
    }
    return "?";
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

struct Cell {
    std::string planner;
    std::string options;
    OrientationChoice orientation;
};

}  // namespace

std::string ExperimentSpec::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json fams = nlohmann::ordered_json::array();
    for (MapFamily f : families) fams.push_back(to_string(f));
    j["families"] = fams;
    j["count"] = count;
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["seed"] = seed;
    j["planners"] = planners;
    j["weights"] = {weights.move_unloaded, weights.move_loaded, weights.pickup, weights.dropoff};
    j["strategy"] = strategy_name(strategy);
    j["orientation"] = orientation_name(orientation);
    j["orientation_compare"] = orientation_compare;
    return j.dump(2);
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentSpec s;
    for (const auto& f : j.at("families")) {
        auto fam = map_family_from_string(f.get<std::string>());
        if (!fam) throw std::invalid_argument("spec: unknown family " + f.get<std::string>());
        s.families.push_back(*fam);
    }
    s.count = j.value("count", 200);
    s.n_min = j.value("n_min", 10);
    s.n_max = j.value("n_max", 60);
    s.seed = j.value("seed", std::uint64_t{1});
    for (const auto& p : j.at("planners")) s.planners.push_back(p.get<std::string>());
    if (j.contains("weights")) {
        auto w = j["weights"];
        s.weights = {w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>(),
                     w.at(3).get<double>()};
    }
    if (j.contains("strategy"))
        s.strategy = j["strategy"] == "all-at-once" ? FreeComponentStrategy::AllAtOnce
                                                    : FreeComponentStrategy::OneByOne;
    if (j.contains("orientation")) {
        std::string o = j["orientation"];
        s.orientation = o == "h"   ? OrientationChoice::ForceHorizontal
                        : o == "v" ? OrientationChoice::ForceVertical
                                   : OrientationChoice::Auto;
    }
    s.orientation_compare = j.value("orientation_compare", false);
    return s;
}

MapInstance ushape_fixture() {
    MapInstance m;
    m.name = "ushape";
    m.family = "fixture";
    m.seed = 0;
    for (int x = 0; x <= 4; ++x) m.start.insert({x, 6});       // bar
    for (int y = 7; y <= 10; ++y) {
        m.start.insert({0, y});                                // left arm
        m.start.insert({4, y});                                // right arm
    }
    for (int x = 0; x <= 4; ++x) {
        m.target.insert({x, 0});
        m.target.insert({x, 1});
    }
    for (int x = 0; x <= 2; ++x) m.target.insert({x, 2});
    m.robot0 = m.start.sorted().front();
    return m;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs) {
    // Deterministic map list: one seed stream, families in spec order.
    SplitMix64 master(spec.seed);
    struct MapJob {
        MapInstance map;
        MapFamily family;
        TourResult tsp;
        int gap_h = 0;
        int gap_v = 0;
    };
    std::vector<MapJob> maps;
    for (MapFamily fam : spec.families) {
        for (int i = 0; i < spec.count; ++i) {
            GenParams p;
            p.family = fam;
            p.seed = master.next();
            p.n_min = spec.n_min;
            p.n_max = spec.n_max;
            MapJob job;
            job.map = generate(p);
            job.family = fam;
            maps.push_back(std::move(job));
        }
    }

    std::vector<Cell> cells;
    for (const std::string& pl : spec.planners) {
        if (pl == "ch2c" && spec.orientation_compare) {
            cells.push_back({pl, std::string("strategy=") + strategy_name(spec.strategy) +
                                     ";orientation=auto",
                             OrientationChoice::Auto});
            cells.push_back({pl, std::string("strategy=") + strategy_name(spec.strategy) +
                                     ";orientation=h",
                             OrientationChoice::ForceHorizontal});
            cells.push_back({pl, std::string("strategy=") + strategy_name(spec.strategy) +
                                     ";orientation=v",
                             OrientationChoice::ForceVertical});
        } else if (pl == "ch2c") {
            cells.push_back({pl, std::string("strategy=") + strategy_name(spec.strategy) +
                                     ";orientation=" + orientation_name(spec.orientation),
                             spec.orientation});
        } else {
            cells.push_back({pl, "", OrientationChoice::Auto});
        }
    }

    std::vector<std::vector<RunRecord>> per_map(maps.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure_what, failure_fixture;
    std::mutex failure_mu;

    auto worker = [&]() {
        for (;;) {
            std::size_t mi = next.fetch_add(1);
            if (mi >= maps.size() || failed.load()) break;
            MapJob& job = maps[mi];
            const MapInstance& m = job.map;

            BoundingBox sb = bounding_box(m.start);
            BoundingBox tb = bounding_box(m.target);
            job.gap_h = range_gap(sb.xmin, sb.xmax, tb.xmin, tb.xmax);
            job.gap_v = range_gap(sb.ymin, sb.ymax, tb.ymin, tb.ymax);
            job.tsp = solve_tour(build_instance(m.start, m.target));

            for (const Cell& cell : cells) {
                RunRecord rec;
                rec.map_id = m.name;
                rec.family = m.family;
                rec.n = m.n();
                rec.planner = cell.planner;
                rec.options = cell.options;
                rec.seed = m.seed;
                rec.tsp_raw = job.tsp.raw_cost;
                rec.tsp_adjusted = job.tsp.adjusted_cost;
                rec.gap_h = job.gap_h;
                rec.gap_v = job.gap_v;

                if (cell.planner == "tsp") {
                    rec.status = "ok";
                    per_map[mi].push_back(std::move(rec));
                    continue;
                }

                auto t0 = std::chrono::steady_clock::now();
                PlanResult pr;
                try {
                    if (cell.planner == "ch2c") {
                        Ch2cOptions opts;
                        opts.strategy = spec.strategy;
                        opts.orientation = cell.orientation;
                        opts.weights = spec.weights;
                        Ch2cPlan cp = plan_ch2c(m.start, m.robot0, m.target, opts);
                        pr = {cp.status, std::move(cp.schedule), cp.note};
                    } else if (cell.planner == "glc") {
                        pr = plan_glc(m.start, m.robot0, m.target);
                    } else if (cell.planner == "mwpm") {
                        pr = plan_mwpm(m.start, m.robot0, m.target);
                    } else {
                        throw std::invalid_argument("unknown planner: " + cell.planner);
                    }
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lk(failure_mu);
                    if (!failed.exchange(true)) {
                        failure_what = std::string("planner threw on ") + m.name + ": " + e.what();
                        failure_fixture = map_to_json(m);
                    }
                    return;
                }
                auto t1 = std::chrono::steady_clock::now();
                rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                rec.status = to_string(pr.status);

                if (pr.status == PlanStatus::Ok) {
                    ValidationReport rep =
                        validate_schedule(m.start, m.robot0, pr.schedule, m.target, spec.weights);
                    if (!rep.ok) {
                        std::lock_guard<std::mutex> lk(failure_mu);
                        if (!failed.exchange(true)) {
                            failure_what = "validator rejected " + cell.planner + " on " + m.name +
                                           ": " + rep.message;
                            nlohmann::ordered_json fx;
                            fx["map"] = nlohmann::ordered_json::parse(map_to_json(m));
                            fx["planner"] = cell.planner;
                            fx["options"] = cell.options;
                            fx["schedule_jsonl"] = schedule_to_jsonl(pr.schedule);
                            failure_fixture = fx.dump(2);
                        }
                        return;
                    }
                    rec.breakdown = rep.breakdown;
                    rec.pairs = rep.breakdown.pickups;
                }
                per_map[mi].push_back(std::move(rec));
            }
        }
    };

    int nthreads = std::max(1, jobs);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw BenchValidationError(failure_what, failure_fixture);

    ExperimentResult result;
    for (auto& v : per_map)
        for (auto& r : v) result.records.push_back(std::move(r));
    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const RunRecord& a, const RunRecord& b) {
                         return std::tuple(a.family, a.seed, a.planner, a.options) <
                                std::tuple(b.family, b.seed, b.planner, b.options);
                     });

    // Deterministic CSV; wall clock goes to the sidecar only.
    std::ostringstream csv, timings;
    csv << "map_id,family,n,planner,options,status,moves_unloaded,moves_loaded,pickups,"
           "dropoffs,total_cost,pairs,tsp_raw,tsp_adjusted,gap_h,gap_v,seed\n";
    timings << "map_id,planner,options,wall_ms\n";
    for (const RunRecord& r : result.records) {
        csv << r.map_id << ',' << r.family << ',' << r.n << ',' << r.planner << ',' << r.options
            << ',' << r.status << ',' << r.breakdown.moves_unloaded << ','
            << r.breakdown.moves_loaded << ',' << r.breakdown.pickups << ','
            << r.breakdown.dropoffs << ',' << fmt_double(r.breakdown.total) << ',' << r.pairs
            << ',' << r.tsp_raw << ',' << r.tsp_adjusted << ',' << r.gap_h << ',' << r.gap_v
            << ',' << r.seed << '\n';
        timings << r.map_id << ',' << r.planner << ',' << r.options << ',' << r.wall_ms << '\n';
    }
    result.csv = csv.str();
    result.timings_csv = timings.str();

    // Summary: per planner cell, then the bisector statistic when both forced
    // orientations were run.
    nlohmann::ordered_json summary;
    {
        struct Agg {
            double total = 0;
            double pairs = 0;
            int ok = 0, incomplete = 0, infeasible = 0;
        };
        std::vector<std::pair<std::string, Agg>> aggs;
        auto agg_for = [&](const std::string& key) -> Agg& {
            for (auto& [k, a] : aggs)
                if (k == key) return a;
            aggs.push_back({key, {}});
            return aggs.back().second;
        };
        for (const RunRecord& r : result.records) {
            if (r.planner == "tsp") continue;
            std::string key = r.planner + (r.options.empty() ? "" : "[" + r.options + "]");
            Agg& a = agg_for(key);
            if (r.status == "ok") {
                a.ok++;
                a.total += r.breakdown.total;
                a.pairs += static_cast<double>(r.pairs);
            } else if (r.status == "incomplete") {
                a.incomplete++;
            } else {
                a.infeasible++;
            }
        }
        nlohmann::ordered_json planners_json;
        for (auto& [key, a] : aggs) {
            nlohmann::ordered_json pj;
            int total_runs = a.ok + a.incomplete + a.infeasible;
            pj["runs"] = total_runs;
            pj["ok"] = a.ok;
            pj["incomplete"] = a.incomplete;
            pj["infeasible"] = a.infeasible;
            pj["failure_rate"] = total_runs ? double(a.incomplete + a.infeasible) / total_runs : 0.0;
            pj["mean_total_cost"] = a.ok ? a.total / a.ok : 0.0;
            pj["mean_pairs"] = a.ok ? a.pairs / a.ok : 0.0;
            planners_json[key] = pj;
        }
        summary["planners"] = planners_json;
    }

    if (spec.orientation_compare) {
        // Scatter of (gap_v - gap_h, cost with horizontal bisector - cost with
        // vertical bisector), plus its Pearson correlation.
        struct Point {
            double x, yh = -1, yv = -1, yauto = -1;
        };
        std::unordered_map<std::string, Point> by_map;
        for (const RunRecord& r : result.records) {
            if (r.planner != "ch2c" || r.status != "ok") continue;
            auto& pt = by_map[r.map_id];
            pt.x = static_cast<double>(r.gap_v - r.gap_h);
            if (r.options.find("orientation=h") != std::string::npos) pt.yh = r.breakdown.total;
            else if (r.options.find("orientation=v") != std::string::npos) pt.yv = r.breakdown.total;
            else pt.yauto = r.breakdown.total;
        }
        std::vector<std::array<double, 2>> pts;
        double sum_auto = 0, sum_h = 0, sum_v = 0;
        int cnt = 0;
        for (const RunRecord& r : result.records) {
            if (r.planner != "ch2c" || r.options.find("orientation=auto") == std::string::npos)
                continue;
            auto it = by_map.find(r.map_id);
            if (it == by_map.end()) continue;
            const Point& pt = it->second;
            if (pt.yh < 0 || pt.yv < 0 || pt.yauto < 0) continue;
            pts.push_back({pt.x, pt.yh - pt.yv});
            sum_auto += pt.yauto;
            sum_h += pt.yh;
            sum_v += pt.yv;
            ++cnt;
        }
        double corr = 0.0;
        if (pts.size() >= 2) {
            double mx = 0, my = 0;
            for (auto& p : pts) {
                mx += p[0];
                my += p[1];
            }
            mx /= pts.size();
            my /= pts.size();
            double sxy = 0, sxx = 0, syy = 0;
            for (auto& p : pts) {
                sxy += (p[0] - mx) * (p[1] - my);
                sxx += (p[0] - mx) * (p[0] - mx);
                syy += (p[1] - my) * (p[1] - my);
            }
            corr = (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;
        }
        nlohmann::ordered_json bc;
        bc["points_gv_minus_gh_vs_cost_h_minus_cost_v"] = pts;
        bc["correlation"] = corr;
        bc["maps"] = cnt;
        bc["mean_cost_auto"] = cnt ? sum_auto / cnt : 0.0;
        bc["mean_cost_h"] = cnt ? sum_h / cnt : 0.0;
        bc["mean_cost_v"] = cnt ? sum_v / cnt : 0.0;
        summary["bisector_compare"] = bc;
    }

    result.summary_json = summary.dump(2);
    return result;
}

}  // namespace tilerecon
