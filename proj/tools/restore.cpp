// restore: underwater image restoration CLI.
//
// exit codes: 0 ok, 1 usage, 2 partial batch failure, 3 config error,
// 4 solver divergence, 5 unreadable file, 6 unsupported format,
// 7 empty batch directory

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uwr/config.hpp"
#include "uwr/error.hpp"
#include "uwr/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPartial = 2, kConfig = 3, kDiverged = 4, kUnreadable = 5,
            kFormat = 6, kEmptyBatch = 7 };

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw uwr::IoError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restore degraded underwater images"};
  std::string input, output, config_path, report_path, reference;
  bool dump = false, batch = false;
  app.add_option("input", input, "input image, or a directory with --batch")->required();
  app.add_option("-o,--output", output, "output PNG (single) or summary CSV (batch)");
  app.add_option("-c,--config", config_path, "key = value config file");
  app.add_option("--report", report_path, "write a JSON report here");
  app.add_flag("--dump-intermediates", dump, "also write each pipeline stage");
  app.add_flag("--batch", batch, "process every PNG/JPEG in the input directory");
  app.add_option("--reference", reference,
                 "reference image (single) or directory (batch) for ciede2000");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    uwr::PipelineConfig config = config_path.empty() ? uwr::PipelineConfig{}
                                                     : uwr::load_config(config_path);
    if (dump) config.output.dump_intermediates = true;

    if (batch) {
      std::optional<fs::path> ref;
      if (!reference.empty()) ref = reference;
      const auto result = uwr::run_batch(input, config, ref);
      const fs::path csv = output.empty() ? fs::path(input) / "summary.csv" : fs::path(output);
      write_text(csv, uwr::batch_csv(result));
      if (!report_path.empty()) write_text(report_path, uwr::batch_json(result));
      std::cout << result.rows.size() << " restored, " << result.failures.size()
                << " failed; summary in " << csv.string() << "\n";
      return result.failures.empty() ? kOk : kPartial;
    }

    std::optional<fs::path> out, ref;
    if (!output.empty()) out = output;
    if (!reference.empty()) ref = reference;
    const auto result = uwr::run_single(input, config, out, ref);
    if (!report_path.empty()) write_text(report_path, uwr::single_json(result));
    std::cout << result.output.string() << "  entropy " << result.metrics.entropy << "  uciqe "
              << result.metrics.uciqe;
    if (result.metrics.ciede2000) std::cout << "  ciede2000 " << *result.metrics.ciede2000;
    std::cout << "  iterations " << result.iterations()
              << (result.converged() ? "" : " (not converged)") << "\n";
    return kOk;
  } catch (const uwr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const uwr::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiverged;
  } catch (const uwr::FormatError& e) {
    std::cerr << "unsupported format: " << e.what() << "\n";
    return kFormat;
  } catch (const uwr::EmptyBatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEmptyBatch;
  } catch (const uwr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnreadable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
