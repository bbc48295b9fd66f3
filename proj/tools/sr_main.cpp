#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "wsdsr/color.hpp"
#include "wsdsr/config.hpp"
#include "wsdsr/driver.hpp"
#include "wsdsr/errors.hpp"
#include "wsdsr/eval.hpp"
#include "wsdsr/image_io.hpp"

namespace {

using namespace wsdsr;

Profile parse_profile(const std::string& name) {
    if (name == "y") return Profile::YOnly;
    if (name == "y-ycbcr") return Profile::YYCbCr;
    if (name == "y-rgb") return Profile::YRgb;
    throw InvalidInput("unknown profile '" + name + "' (use y|y-ycbcr|y-rgb)");
}

ParamSet make_params(double scale, const std::string& config_path,
                     const std::vector<std::string>& ablations) {
    ParamSet params = config_path.empty() ? defaults(scale) : load_overrides(config_path, scale);
    for (const std::string& ab : ablations) {
        // Ablation switches reuse the config keys: reuse=off, search=global,
        // wiener2d=dct, ...
        params = apply_overrides_text(dump_config(params) + ab + "\n", scale);
    }
    return params;
}

int cmd_upscale(const std::string& input, const std::string& output, double scale,
                const std::string& profile_name, int iterations, const std::string& config_path,
                bool dump) {
    const ParamSet params = make_params(scale, config_path, {});
    if (dump) {
        std::cout << dump_config(params);
        return 0;
    }
    const Profile profile = parse_profile(profile_name);
    SolveOptions opts;
    opts.forced_iterations = iterations;
    int used = 0;
    opts.iterations_out = &used;

    const MultiPlane img = read_png(input);
    const MultiPlane out = super_resolve_color(img, params, profile, opts);
    MultiPlane quantized = out;
    for (Plane& p : quantized.planes) p = quantize8(p);
    write_png(output, quantized);
    std::fprintf(stderr, "sr: %s -> %s (%dx%d, %d iterations)\n", input.c_str(), output.c_str(),
                 quantized.width(), quantized.height(), used);
    return 0;
}

int cmd_bench(const std::string& dir, double scale, const std::string& profile_name,
              const std::vector<std::string>& ablations, const std::string& config_path,
              const std::string& csv_path, const std::string& oracle_gt, int iterations,
              bool bicubic, bool parallel_images, bool dump) {
    const ParamSet params = make_params(scale, config_path, ablations);
    if (dump) {
        std::cout << dump_config(params);
        return 0;
    }
    EvalOptions opts;
    opts.profile = parse_profile(profile_name);
    opts.method = bicubic ? Method::Bicubic : Method::WsdSr;
    opts.oracle_gt_dir = oracle_gt;
    opts.forced_iterations = iterations;
    opts.parallel_images = parallel_images;
    if (parallel_images)
        std::fprintf(stderr, "sr: parallel image evaluation; timing columns are not meaningful\n");

    const BenchmarkRun run = run_benchmark(dir, params, opts);
    std::cout << text_report(run);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw InvalidInput("cannot open csv output " + csv_path);
        out << csv_report(run);
    }
    return 0;
}

int cmd_psnr(const std::string& a_path, const std::string& b_path, double trim) {
    auto load_luma = [](const std::string& path) {
        const MultiPlane img = read_png(path);
        return img.colorspace == ColorSpace::Rgb ? rgb_luma_plane(img) : img.planes.at(0);
    };
    Plane a = load_luma(a_path);
    Plane b = load_luma(b_path);
    const int border = static_cast<int>(std::floor(trim));
    if (border > 0) {
        a = trim_border(a, border);
        b = trim_border(b, border);
    }
    const double v = psnr(a, b);
    if (std::isinf(v))
        std::cout << "inf\n";
    else
        std::printf("%.4f\n", v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single image super-resolution via collaborative filtering in the similarity domain"};
    app.require_subcommand(1);

    // upscale
    std::string in_path, out_path, profile = "y", config_path;
    double scale = 0.0;
    int iterations = 0;
    bool dump_cfg = false;
    auto* up = app.add_subcommand("upscale", "Super-resolve a PNG image");
    up->add_option("input", in_path, "input PNG")->required();
    up->add_option("-o,--output", out_path, "output PNG")->required();
    up->add_option("--scale", scale, "scale factor (> 1)")->required();
    up->add_option("--profile", profile, "y|y-ycbcr|y-rgb");
    up->add_option("--iterations", iterations, "force the iteration count");
    up->add_option("--config", config_path, "key=value parameter overrides");
    up->add_flag("--dump-config", dump_cfg, "print effective parameters and exit");

    // bench
    std::string bench_dir, csv_path, oracle_gt;
    std::vector<std::string> ablations;
    bool bicubic = false, parallel_images = false;
    auto* bench = app.add_subcommand("bench", "Run the evaluation protocol on a dataset directory");
    bench->add_option("dir", bench_dir, "directory of PNG images")->required();
    bench->add_option("--scale", scale, "scale factor (> 1)")->required();
    bench->add_option("--profile", profile, "y|y-ycbcr|y-rgb");
    bench->add_option("--ablation", ablations,
                      "feature switch, e.g. reuse=off, search=global, wiener2d=dct");
    bench->add_option("--oracle-gt", oracle_gt,
                      "derive match tables from the ground-truth images themselves");
    bench->add_option("--csv", csv_path, "write machine-readable results here");
    bench->add_option("--config", config_path, "key=value parameter overrides");
    bench->add_option("--iterations", iterations, "force the iteration count");
    bench->add_flag("--bicubic", bicubic, "bicubic baseline instead of the solver");
    bench->add_flag("--parallel-images", parallel_images, "evaluate images in parallel");
    bench->add_flag("--dump-config", dump_cfg, "print effective parameters and exit");

    // psnr
    std::string psnr_a, psnr_b;
    double trim = 0.0;
    auto* ps = app.add_subcommand("psnr", "PSNR between two images (luminance)");
    ps->add_option("a", psnr_a, "reference PNG")->required();
    ps->add_option("b", psnr_b, "test PNG")->required();
    ps->add_option("--trim", trim, "trim a border of floor(trim) pixels first");

    CLI11_PARSE(app, argc, argv);

    try {
        if (up->parsed())
            return cmd_upscale(in_path, out_path, scale, profile, iterations, config_path,
                               dump_cfg);
        if (bench->parsed())
            return cmd_bench(bench_dir, scale, profile, ablations, config_path, csv_path,
                             oracle_gt, iterations, bicubic, parallel_images, dump_cfg);
        if (ps->parsed()) return cmd_psnr(psnr_a, psnr_b, trim);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "sr: %s\n", e.what());
        return 1;
    }
    return 0;
}
