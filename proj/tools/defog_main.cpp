#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "defog/bench.hpp"
#include "defog/fogsim.hpp"
#include "defog/image_io.hpp"
#include "defog/metrics.hpp"
#include "defog/parallel.hpp"
#include "defog/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoConverge = 3;

struct Triple {
    double r = 0, g = 0, b = 0;
};

Triple parse_triple(const std::string& s, const char* what) {
    Triple t;
    char sep1 = 0, sep2 = 0;
    std::istringstream is(s);
    if (!(is >> t.r >> sep1 >> t.g >> sep2 >> t.b) || sep1 != ',' || sep2 != ',')
        throw CLI::ValidationError(std::string(what) + ": expected r,g,b");
    return t;
}

struct DehazeArgs {
    std::string input;
    std::string output;
    std::string dump_t_prefix;
    std::string dump_dark_prefix;
    std::string betas = "1,1.28,1.61";
    std::string airlight;
    std::string mode = "improved";
    std::string attribution = "window";
    defog::DehazeParams params;
    int window_size = 5;
    bool strict = false;
};

void add_dehaze_flags(CLI::App* cmd, DehazeArgs& a) {
    cmd->add_option("input", a.input, "foggy image (PNG or PPM)")->required();
    cmd->add_option("-o,--output", a.output, "restored image path")->required();
    cmd->add_option("--omega", a.params.omega, "fog retention factor (0,1]")
        ->capture_default_str();
    cmd->add_option("--window", a.window_size, "dark-channel window size (odd)")
        ->capture_default_str();
    cmd->add_option("--downsample", a.params.downsample_factor,
                    "downsample factor for the matting refinement")
        ->capture_default_str();
    cmd->add_option("--lambda", a.params.lambda, "matting data-term weight")
        ->capture_default_str();
    cmd->add_option("--eps", a.params.eps, "matting regularizer")
        ->capture_default_str();
    cmd->add_option("--t0", a.params.t0, "transmittance floor")
        ->capture_default_str();
    cmd->add_option("--betas", a.betas, "attenuation ratios r,g,b")
        ->capture_default_str();
    cmd->add_option("--airlight", a.airlight,
                    "override atmospheric light as r,g,b (skips estimation)");
    cmd->add_option("--mode", a.mode,
                    "improved: per-channel transmittance; he: single-t baseline "
                    "(forces betas 1,1,1 and downsample 1)")
        ->check(CLI::IsMember({"improved", "he"}))
        ->capture_default_str();
    cmd->add_option("--attribution", a.attribution,
                    "dark-channel label source: window or center")
        ->check(CLI::IsMember({"window", "center"}))
        ->capture_default_str();
    cmd->add_option("--cg-tol", a.params.cg_tol, "CG relative tolerance")
        ->capture_default_str();
    cmd->add_option("--cg-maxiter", a.params.cg_max_iter, "CG iteration cap")
        ->capture_default_str();
    cmd->add_option("--dump-t", a.dump_t_prefix,
                    "write t_d and per-channel maps as <prefix>_t*.png");
    cmd->add_option("--dump-dark", a.dump_dark_prefix,
                    "write dark-channel value/label maps as <prefix>_dark*.png");
    cmd->add_flag("--strict", a.strict,
                  "exit with status 3 if the matting solve does not converge");
}

void finalize_params(DehazeArgs& a) {
    if (a.window_size < 1 || a.window_size % 2 == 0)
        throw CLI::ValidationError("--window: size must be odd and >= 1");
    a.params.window_radius = (a.window_size - 1) / 2;
    const Triple b = parse_triple(a.betas, "--betas");
    a.params.betas = defog::BetaRatios{b.r, b.g, b.b};
    a.params.attribution = a.attribution == "center"
                               ? defog::ChannelAttribution::CenterPixel
                               : defog::ChannelAttribution::WindowedMin;
    if (a.mode == "he") {
        a.params.betas = defog::BetaRatios{1.0, 1.0, 1.0};
        a.params.downsample_factor = 1;
    }
}

defog::Airlight airlight_from(const std::string& s) {
    const Triple t = parse_triple(s, "--airlight");
    for (double v : {t.r, t.g, t.b})
        if (!(v > 0.0 && v <= 1.0))
            throw CLI::ValidationError("--airlight: components must be in (0,1]");
    return defog::Airlight{t.r, t.g, t.b};
}

int run_dehaze(DehazeArgs& a) {
    finalize_params(a);
    std::optional<defog::Airlight> airlight;
    if (!a.airlight.empty()) airlight = airlight_from(a.airlight);

    const defog::Image img = defog::load_image(a.input);
    const defog::DehazeResult res = defog::dehaze(img, a.params, airlight);

    if (!res.solve.converged) {
        std::fprintf(stderr,
                     "warning: matting solve stopped at %d iterations, "
                     "relative residual %.3e\n",
                     res.solve.iterations, res.solve.relative_residual);
        if (a.strict) return kExitNoConverge;
    }

    defog::save_image(res.output, a.output);

    if (!a.dump_t_prefix.empty()) {
        defog::save_image(defog::scalar_to_image(res.t_d), a.dump_t_prefix + "_td.png");
        defog::save_image(defog::scalar_to_image(res.t.r), a.dump_t_prefix + "_tr.png");
        defog::save_image(defog::scalar_to_image(res.t.g), a.dump_t_prefix + "_tg.png");
        defog::save_image(defog::scalar_to_image(res.t.b), a.dump_t_prefix + "_tb.png");
    }
    if (!a.dump_dark_prefix.empty()) {
        const auto dark = defog::dark_channel(img, a.params.window_radius,
                                              a.params.attribution);
        defog::save_image(defog::scalar_to_image(dark.values),
                          a.dump_dark_prefix + "_dark.png");
        defog::save_image(defog::channel_map_to_image(res.d),
                          a.dump_dark_prefix + "_darkchan.png");
    }
    return kExitOk;
}

struct FogsimArgs {
    std::string input;
    std::string output;
    std::string depth;
    std::string betas = "1,1.28,1.61";
    std::string airlight = "1,1,1";
    double depth_scale = 1.0;
};

defog::ScalarMap load_depth(const FogsimArgs& a, int w, int h) {
    if (a.depth.rfind("const:", 0) == 0) {
        const double d = std::stod(a.depth.substr(6));
        return defog::ScalarMap(w, h, d);
    }
    const defog::Image dimg = defog::load_image(a.depth);
    if (dimg.width != w || dimg.height != h)
        throw defog::IoError(a.depth + ": depth map dims do not match the scene");
    defog::ScalarMap depth(w, h);
    for (std::size_t i = 0; i < depth.values.size(); ++i) {
        const double gray = (dimg.r[i] + dimg.g[i] + dimg.b[i]) / 3.0;
        depth.values[i] = gray * a.depth_scale;
    }
    return depth;
}

int run_fogsim(const FogsimArgs& a) {
    const Triple b = parse_triple(a.betas, "--betas");

    defog::FogScene scene;
    scene.radiance = defog::load_image(a.input);
    scene.depth = load_depth(a, scene.radiance.width, scene.radiance.height);
    scene.betas = defog::BetaRatios{b.r, b.g, b.b};
    scene.airlight = airlight_from(a.airlight);

    defog::save_image(defog::synthesize(scene), a.output);
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::string> inputs;
    std::string csv_path;
    int repeats = 3;
    defog::DehazeParams params;
};

int run_bench(const BenchArgs& a) {
    std::vector<defog::BenchReport> reports;
    for (const auto& path : a.inputs) {
        const defog::Image img = defog::load_image(path);
        std::string name = path;
        const auto slash = name.find_last_of('/');
        if (slash != std::string::npos) name = name.substr(slash + 1);
        reports.push_back(defog::bench_pipeline(img, a.params, a.repeats, name));
    }
    std::cout << defog::format_table(reports);
    if (!a.csv_path.empty()) {
        std::ofstream os(a.csv_path);
        if (!os) throw defog::IoError(a.csv_path + ": cannot open for writing");
        defog::write_csv(os, reports);
    } else {
        defog::write_csv(std::cout, reports);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    defog::apply_thread_cap_from_env();

    CLI::App app{"Dark-channel-prior dehazing with per-channel transmittance"};
    app.require_subcommand(1);

    DehazeArgs dh;
    CLI::App* dehaze_cmd = app.add_subcommand("dehaze", "remove fog from an image");
    add_dehaze_flags(dehaze_cmd, dh);

    FogsimArgs fs;
    CLI::App* fogsim_cmd =
        app.add_subcommand("fogsim", "synthesize fog over a clean image");
    fogsim_cmd->add_option("input", fs.input, "fog-free scene image")->required();
    fogsim_cmd->add_option("-o,--output", fs.output, "output path")->required();
    fogsim_cmd->add_option("--depth", fs.depth, "depth map image or const:<value>")
        ->required();
    fogsim_cmd->add_option("--depth-scale", fs.depth_scale,
                           "scale applied to depth-map values")
        ->capture_default_str();
    fogsim_cmd->add_option("--betas", fs.betas, "absolute attenuation r,g,b")
        ->capture_default_str();
    fogsim_cmd->add_option("--airlight", fs.airlight, "atmospheric light r,g,b")
        ->capture_default_str();

    BenchArgs bn;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "compare full-resolution vs downsampled pipeline timing");
    bench_cmd->add_option("inputs", bn.inputs, "images to benchmark")->required();
    bench_cmd->add_option("--downsample", bn.params.downsample_factor,
                          "fast-path downsample factor")
        ->capture_default_str();
    bench_cmd->add_option("--repeats", bn.repeats, "runs per timing (median)")
        ->capture_default_str();
    bench_cmd->add_option("--csv", bn.csv_path, "write the report as CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dehaze_cmd->parsed()) return run_dehaze(dh);
        if (fogsim_cmd->parsed()) return run_fogsim(fs);
        if (bench_cmd->parsed()) return run_bench(bn);
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const defog::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}
