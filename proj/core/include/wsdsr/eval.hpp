#pragma once

#include <string>
#include <vector>

#include "wsdsr/config.hpp"
#include "wsdsr/driver.hpp"
#include "wsdsr/image.hpp"

namespace wsdsr {

enum class Method { WsdSr, Bicubic };

struct EvalOptions {
    Profile profile = Profile::YOnly;
    Method method = Method::WsdSr;
    bool oracle_tables = false;  // derive both match tables from the ground truth
    const MultiPlane* oracle_source = nullptr;  // defaults to the image under test
    std::string oracle_gt_dir;   // run_benchmark: per-image oracle source directory
    int forced_iterations = 0;
    bool parallel_images = false;  // faster, but the timing column becomes meaningless
};

struct ImageRecord {
    std::string name;
    bool skipped = false;
    std::string diagnostic;
    double psnr_db = 0.0;  // kPsnrInfinite when the reconstruction is exact
    double solve_seconds = 0.0;
    int iterations = 0;
};

struct BenchmarkRun {
    double scale = 0.0;
    std::vector<ImageRecord> records;
    double mean_psnr = 0.0;  // arithmetic mean; infinite-PSNR images excluded
    int infinite_count = 0;
    int skipped_count = 0;
    double total_solve_seconds = 0.0;
};

/// Runs the nine-step evaluation protocol on one decoded image: luminance,
/// trim to a multiple of the scale, quantize, down-sample, quantize, solve,
/// quantize, trim a border of floor(s), PSNR. Only the solve step is timed.
ImageRecord evaluate_image(const MultiPlane& z_orig, const std::string& name,
                           const ParamSet& params, const EvalOptions& opts = {});

/// Oracle variant: match tables are built once from the ground-truth HR
/// luminance and injected, all match-table recomputation disabled.
ImageRecord oracle_match_run(const MultiPlane& z_orig, const std::string& name,
                             const ParamSet& params);

/// evaluate_image over every dataset image, sorted by name.
BenchmarkRun run_benchmark(const std::string& dir, const ParamSet& params,
                           const EvalOptions& opts = {});

/// Dataset listing: manifest.txt entries when present, otherwise every *.png,
/// sorted by filename.
std::vector<std::string> list_dataset(const std::string& dir);

/// Machine-readable report: name,psnr,time,K. Byte-deterministic apart from
/// the time column.
std::string csv_report(const BenchmarkRun& run);

/// Human-readable table.
std::string text_report(const BenchmarkRun& run);

}  // namespace wsdsr
