// Series behind the eight published plots.
//
//   1, 3: pair concurrences vs k (W, W-Wbar)
//   2, 4: pair purities vs k (W, W-Wbar)
//   5, 6: c23 vs gamma_t, one column per k (W, W-Wbar)
//   7, 8: c12 vs gamma_t, one column per k (W, W-Wbar)

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfilter/experiments.hpp"
#include "qfilter/report.hpp"

namespace qfilter {

struct FigureOptions {
    int k_points = 201;
    std::optional<std::vector<double>> k_grid; // replaces the k_points grid (figures 1-4)
    double gamma_t_min = 0.0;
    double gamma_t_max = 4.0;
    int gamma_t_points = 401;
    std::vector<double> k_family{0.0, 0.25, 0.5, 0.75, 1.0}; // curves of figures 5-8
};

inline bool valid_figure(int n) { return n >= 1 && n <= 8; }

inline Table figure_table(int n, const FigureOptions& opt = {}) {
    if (!valid_figure(n)) throw contract_error("figure number must be in 1..8, got " + std::to_string(n));
    const bool wwbar = (n == 3 || n == 4 || n == 6 || n == 8);
    const StateName state = wwbar ? StateName::WWbar3 : StateName::W3;
    Table t;

    if (n <= 4) {
        const bool purities = (n == 2 || n == 4);
        t.columns = purities ? std::vector<std::string>{"k", "g12", "g23"} : std::vector<std::string>{"k", "c12", "c23"};
        const auto grid = opt.k_grid ? *opt.k_grid : linspace(0.0, 1.0, opt.k_points);
        for (const auto& r : sweep_filter(state, grid)) {
            if (purities) t.rows.push_back({r.k, r.g12, r.g23});
            else t.rows.push_back({r.k, r.c12, r.c23});
        }
        return t;
    }

    const bool pair23 = (n == 5 || n == 6);
    const std::string prefix = pair23 ? "c23_k" : "c12_k";
    const auto grid = linspace(opt.gamma_t_min, opt.gamma_t_max, opt.gamma_t_points);
    t.columns.push_back("gamma_t");
    std::vector<std::vector<SweepRecord>> curves;
    for (double k : opt.k_family) {
        t.columns.push_back(prefix + format_number(k));
        curves.push_back(sweep_noise_filter(state, k, grid));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        for (const auto& curve : curves) row.push_back(pair23 ? curve[i].c23 : curve[i].c12);
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace qfilter
