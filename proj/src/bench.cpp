#include "defog/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "defog/pipeline.hpp"

namespace defog {

namespace {

double run_once(const Image& img, const DehazeParams& params) {
    const auto start = std::chrono::steady_clock::now();
    volatile double sink = dehaze(img, params).output.r[0];
    (void)sink;
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double time_dehaze(const Image& img, const DehazeParams& params, int repeats) {
    std::vector<double> times;
    times.reserve(repeats);
    for (int i = 0; i < repeats; ++i) times.push_back(run_once(img, params));
    return std::max(median(std::move(times)), 1e-9);
}

BenchReport bench_pipeline(const Image& img, const DehazeParams& params,
                           int repeats, const std::string& name) {
    if (repeats < 1) throw std::invalid_argument("bench_pipeline: repeats must be >= 1");
    DehazeParams full = params;
    full.downsample_factor = 1;

    BenchReport rep;
    rep.name = name;
    rep.width = img.width;
    rep.height = img.height;
    rep.t_full_s = time_dehaze(img, full, repeats);
    rep.t_fast_s = time_dehaze(img, params, repeats);
    rep.speedup = rep.t_full_s / rep.t_fast_s;
    return rep;
}

void write_csv(std::ostream& os, const std::vector<BenchReport>& reports) {
    os << "name,w,h,t_full_s,t_fast_s,speedup\n";
    for (const auto& r : reports) {
        os << r.name << ',' << r.width << ',' << r.height << ','
           << r.t_full_s << ',' << r.t_fast_s << ',' << r.speedup << '\n';
    }
}

std::string format_table(const std::vector<BenchReport>& reports) {
    std::ostringstream os;
    os << "image                size        full[s]    fast[s]    speedup\n";
    for (const auto& r : reports) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-20s %5dx%-5d %9.3f  %9.3f  %8.2f\n",
                      r.name.c_str(), r.width, r.height, r.t_full_s, r.t_fast_s,
                      r.speedup);
        os << buf;
    }
    return os.str();
}

}  // namespace defog
