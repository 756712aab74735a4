#include "ampkit/controlplan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ampkit/rng.hpp"

namespace ampkit::plan {

using nlohmann::json;

std::vector<std::vector<double>> sample_configs(const ControlSpaceSpec& spec, std::size_t n, std::uint64_t seed) {
    if (spec.dims() < 1) throw std::invalid_argument("sample_configs: control space needs at least one control");
    if (n < 1) throw std::invalid_argument("sample_configs: need at least one configuration");
    Rng rng = Rng::derive(seed, 0xc0f1);
    std::vector<std::vector<double>> configs(n);
    for (auto& cfg : configs) {
        cfg.resize(static_cast<std::size_t>(spec.dims()));
        for (int k = 0; k < spec.dims(); ++k) {
            const auto& def = spec.controls[static_cast<std::size_t>(k)];
            if (def.discrete) {
                cfg[static_cast<std::size_t>(k)] =
                    static_cast<double>(rng.uniform_int(static_cast<std::uint64_t>(def.levels))) /
                    static_cast<double>(def.levels - 1);
            } else {
                cfg[static_cast<std::size_t>(k)] = rng.uniform01();
            }
        }
    }
    return configs;
}

namespace {

double l1(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
    return acc;
}

} // namespace

DistanceMatrix l1_distance_matrix(const std::vector<std::vector<double>>& configs) {
    if (configs.empty()) throw std::invalid_argument("l1_distance_matrix: empty configuration list");
    const std::size_t dims = configs.front().size();
    for (const auto& c : configs)
        if (c.size() != dims) throw std::invalid_argument("l1_distance_matrix: mixed configuration dimensionality");

    DistanceMatrix m;
    m.n = configs.size();
    m.d.assign(m.n * m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            const double dist = l1(configs[i], configs[j]);
            m.d[i * m.n + j] = dist;
            m.d[j * m.n + i] = dist;
        }
    }
    return m;
}

Tour nearest_neighbor_tour(const DistanceMatrix& dist, std::size_t home_index) {
    const std::size_t n = dist.n;
    if (n == 0) throw std::invalid_argument("solve_tour: empty instance");
    if (home_index >= n) throw std::invalid_argument("solve_tour: home index out of range");

    Tour tour;
    tour.order.reserve(n);
    std::vector<bool> used(n, false);
    std::size_t cur = home_index;
    used[cur] = true;
    tour.order.push_back(cur);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = SIZE_MAX;
        double best_d = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = dist.at(cur, j);
            if (best == SIZE_MAX || d < best_d) { // ties: lowest index, scan order
                best = j;
                best_d = d;
            }
        }
        used[best] = true;
        tour.order.push_back(best);
        cur = best;
    }
    return tour;
}

double tour_length(const Tour& tour, const DistanceMatrix& dist) {
    const std::size_t n = tour.order.size();
    if (n == 0) throw std::invalid_argument("tour_length: empty tour");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) acc += dist.at(tour.order[k], tour.order[k + 1]);
    acc += dist.at(tour.order[n - 1], tour.order[0]);
    return acc;
}

Tour solve_tour(const DistanceMatrix& dist, std::size_t home_index) {
    Tour tour = nearest_neighbor_tour(dist, home_index);
    const std::size_t n = tour.order.size();
    if (n < 4) return tour; // no 2-opt move can change a cycle this small

    // First-improvement 2-opt with the home node pinned at position 0.
    // A move removes edges (i-1, i) and (j, j+1 mod n) and reverses [i..j];
    // accepted only on strict decrease.
    constexpr double kEps = 1e-12;
    constexpr int kMaxPasses = 50;
    auto& ord = tour.order;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool improved = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t a = ord[i - 1];
                const std::size_t b = ord[i];
                const std::size_t c = ord[j];
                const std::size_t e = ord[(j + 1) % n];
                const double delta = dist.at(a, c) + dist.at(b, e) - dist.at(a, b) - dist.at(c, e);
                if (delta < -kEps) {
                    std::reverse(ord.begin() + static_cast<std::ptrdiff_t>(i),
                                 ord.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return tour;
}

std::size_t Session::measure_count() const {
    std::size_t n = 0;
    for (const auto& s : steps)
        if (!s.home) ++n;
    return n;
}

void export_session(const std::filesystem::path& path, const Tour& tour,
                    const std::vector<std::vector<double>>& configs, const ControlSpaceSpec& spec,
                    std::size_t home_index) {
    if (tour.order.empty()) throw std::invalid_argument("export_session: empty tour");
    if (tour.order.size() != configs.size())
        throw std::invalid_argument("export_session: tour and configuration list sizes differ");
    if (tour.order.front() != home_index)
        throw std::invalid_argument("export_session: tour must start at the home configuration");

    std::vector<bool> seen(configs.size(), false);
    for (const auto idx : tour.order) {
        if (idx >= configs.size() || seen[idx]) throw std::invalid_argument("export_session: tour is not a permutation");
        seen[idx] = true;
    }

    const std::size_t dims = static_cast<std::size_t>(spec.dims());
    std::vector<double> per_knob(dims, 0.0);
    double total = 0.0;

    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("session: cannot open for writing: " + path.string());

    // Records: home, each measured configuration in travel order, home again.
    std::vector<const std::vector<double>*> route;
    route.push_back(&configs[tour.order.front()]);
    for (std::size_t k = 1; k < tour.order.size(); ++k) route.push_back(&configs[tour.order[k]]);
    route.push_back(&configs[tour.order.front()]);

    std::vector<json> records;
    for (std::size_t k = 0; k < route.size(); ++k) {
        double travel = 0.0;
        if (k > 0) {
            for (std::size_t c = 0; c < dims; ++c) {
                const double leg = std::abs((*route[k])[c] - (*route[k - 1])[c]);
                per_knob[c] += leg;
                travel += leg;
            }
            total += travel;
        }
        json j;
        j["type"] = "step";
        j["step"] = k + 1;
        j["kind"] = (k == 0 || k + 1 == route.size()) ? "home" : "measure";
        j["values"] = *route[k];
        j["travel_from_prev"] = travel;
        records.push_back(std::move(j));
    }

    json header;
    header["type"] = "header";
    header["version"] = 1;
    header["controls"] = json::array();
    for (const auto& c : spec.controls) {
        json cj;
        cj["name"] = c.name;
        cj["kind"] = c.discrete ? "discrete" : "continuous";
        if (c.discrete) cj["levels"] = c.levels;
        header["controls"].push_back(cj);
    }
    header["total_travel"] = total;
    header["per_control_travel"] = per_knob;
    os << header.dump() << "\n";
    for (const auto& r : records) os << r.dump() << "\n";
    if (!os) throw std::runtime_error("session: write failed: " + path.string());
}

Session read_session(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("session: cannot open: " + path.string());

    Session s;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("session: parse error at line " + std::to_string(line_no) + ": " + e.what());
        }
        const auto type = j.at("type").get<std::string>();
        if (type == "header") {
            for (const auto& cj : j.at("controls")) {
                data::ControlDef c;
                c.name = cj.at("name").get<std::string>();
                c.discrete = cj.at("kind").get<std::string>() == "discrete";
                if (c.discrete) c.levels = cj.at("levels").get<int>();
                s.controls.push_back(std::move(c));
            }
            s.total_travel = j.at("total_travel").get<double>();
            s.per_control_travel = j.at("per_control_travel").get<std::vector<double>>();
            have_header = true;
        } else if (type == "step") {
            if (!have_header) throw std::runtime_error("session: step before header at line " + std::to_string(line_no));
            SessionStep step;
            step.step = j.at("step").get<std::size_t>();
            step.home = j.at("kind").get<std::string>() == "home";
            step.values = j.at("values").get<std::vector<double>>();
            step.travel_from_prev = j.at("travel_from_prev").get<double>();
            if (step.values.size() != s.controls.size())
                throw std::runtime_error("session: step " + std::to_string(step.step) +
                                         " value count does not match control definitions");
            for (const double v : step.values)
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::runtime_error("session: step " + std::to_string(step.step) +
                                             " has control value outside [0,1]");
            s.steps.push_back(std::move(step));
        } else {
            throw std::runtime_error("session: unknown record type '" + type + "'");
        }
    }
    if (!have_header || s.steps.empty()) throw std::runtime_error("session: missing header or steps: " + path.string());
    return s;
}

} // namespace ampkit::plan
