#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "defog/image.hpp"
#include "defog/transmittance.hpp"

namespace defog {

struct BenchReport {
    std::string name;
    int width = 0;
    int height = 0;
    double t_full_s = 0.0;  // end-to-end time at downsample factor 1
    double t_fast_s = 0.0;  // at params.downsample_factor
    double speedup = 0.0;   // t_full_s / t_fast_s
};

// Times the end-to-end dehaze at factor 1 and at params.downsample_factor,
// median wall-clock of `repeats` runs each. Runs are strictly serial with
// respect to each other so timings do not contaminate one another.
BenchReport bench_pipeline(const Image& img, const DehazeParams& params,
                           int repeats, const std::string& name = "image");

// Median end-to-end time for a single configuration.
double time_dehaze(const Image& img, const DehazeParams& params, int repeats);

// CSV columns: name,w,h,t_full_s,t_fast_s,speedup
void write_csv(std::ostream& os, const std::vector<BenchReport>& reports);

std::string format_table(const std::vector<BenchReport>& reports);

}  // namespace defog
