#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ampkit/dataset.hpp"

namespace ampkit::plan {

// Measurement-session planning: draw control configurations uniformly over
// the control space, then order them to minimize total L1 knob travel,
// starting and finishing with all controls at zero.

struct ControlSpaceSpec {
    std::vector<data::ControlDef> controls;
    int dims() const { return static_cast<int>(controls.size()); }
};

// Continuous controls i.i.d. uniform on [0,1]; discrete controls uniform
// over their quantized levels. Deterministic per seed.
std::vector<std::vector<double>> sample_configs(const ControlSpaceSpec& spec, std::size_t n, std::uint64_t seed);

struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> d; // row-major [n x n]
    double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

// D[i][j] = sum_k |c_i[k] - c_j[k]|. All configs must share a dimension.
DistanceMatrix l1_distance_matrix(const std::vector<std::vector<double>>& configs);

struct Tour {
    // Visit order over all node indices; order[0] is the home node, and the
    // cycle closes with an implicit order.back() -> order[0] edge.
    std::vector<std::size_t> order;
};

// Nearest-neighbor construction from `home`, improved by first-improvement
// 2-opt until a full pass finds nothing (capped at 50 passes). The result is
// never longer than the nearest-neighbor tour.
Tour solve_tour(const DistanceMatrix& dist, std::size_t home_index);

// Cycle length including the closing edge back to order[0].
double tour_length(const Tour& tour, const DistanceMatrix& dist);

// Intermediate construction, exposed for the tour-quality properties.
Tour nearest_neighbor_tour(const DistanceMatrix& dist, std::size_t home_index);

struct SessionStep {
    std::size_t step = 0;           // 1-based position in the traversal
    bool home = false;              // true for the virtual start/end node
    std::vector<double> values;
    double travel_from_prev = 0.0;  // L1 distance from the previous record
};

struct Session {
    std::vector<data::ControlDef> controls;
    double total_travel = 0.0;
    std::vector<double> per_control_travel; // travel accumulated per knob
    std::vector<SessionStep> steps;         // home, measurements..., home

    std::size_t measure_count() const;
};

// Writes the traversal as line-delimited JSON. The all-zeros home
// configuration appears as the first and last record (kind "home"); capture
// skips home records, they exist so step travel deltas sum to the tour
// length. Throws on an empty tour.
void export_session(const std::filesystem::path& path, const Tour& tour,
                    const std::vector<std::vector<double>>& configs, const ControlSpaceSpec& spec,
                    std::size_t home_index);

Session read_session(const std::filesystem::path& path);

} // namespace ampkit::plan
