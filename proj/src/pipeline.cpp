#include "uwr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "uwr/error.hpp"
#include "uwr/image_io.hpp"

namespace uwr {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineStages run_pipeline(const RgbImage& img, const PipelineConfig& config) {
  config.validate();
  PipelineStages s;
  s.compensated = compensate_channels(img, config.color);
  s.balanced = color_balance(s.compensated, config.color);
  s.illumination = estimate_illumination_stages(s.balanced, config.illumination, config.mask_filter);
  s.transmission = estimate_transmission_stages(s.balanced, s.illumination.illumination,
                                                config.transmission, config.transmission_filter);
  s.restoration = restore(s.balanced, s.illumination.illumination, s.transmission.refined,
                          config.solver);
  s.output = config.output.display == DisplayMode::shaded
                 ? shade(s.restoration.reflectance, s.restoration.illumination, config.output.rho)
                 : s.restoration.reflectance;
  return s;
}

fs::path output_path_for(const fs::path& input, const std::string& suffix) {
  return input.parent_path() / (input.stem().string() + suffix + ".png");
}

int SingleResult::iterations() const {
  int n = 0;
  for (const auto& r : solve) n = std::max(n, r.iterations);
  return n;
}

bool SingleResult::converged() const {
  return std::all_of(solve.begin(), solve.end(), [](const SolveReport& r) { return r.converged; });
}

std::vector<fs::path> dump_intermediates(const PipelineStages& stages, const fs::path& base) {
  const fs::path dir = base.parent_path();
  const std::string stem = base.stem().string();
  std::vector<fs::path> out;
  auto put = [&](const std::string& name, const auto& field) {
    out.push_back(dir / (stem + "_" + name + ".png"));
    write_png(out.back(), field);
  };
  put("compensated", stages.compensated);
  put("balanced", stages.balanced);
  put("L0", stages.illumination.initial);
  put("L", stages.illumination.illumination);
  put("t_raw", stages.transmission.raw);
  put("t", stages.transmission.refined);
  return out;
}

SingleResult run_single(const fs::path& input, const PipelineConfig& config,
                        const std::optional<fs::path>& out,
                        const std::optional<fs::path>& reference) {
  const RgbImage img = read_image(input);
  std::optional<RgbImage> ref;
  if (reference) ref = read_image(*reference);

  const int long_side = std::max(img.width(), img.height());
  if (long_side > config.output.max_side)
    std::cerr << "warning: " << input.string() << " is " << img.width() << "x" << img.height()
              << ", above max_side " << config.output.max_side << "; processing at full size\n";

  const PipelineStages stages = run_pipeline(img, config);

  SingleResult result;
  result.output = out ? *out : output_path_for(input, config.output.suffix);
  const RgbImage written = requantize(stages.output);
  write_png(result.output, written);
  if (config.output.panel) {
    const fs::path panel = result.output.parent_path() /
                           (result.output.stem().string() + "_panel.png");
    write_png(panel, hconcat({&img, &written}));
  }
  if (config.output.dump_intermediates) result.dumps = dump_intermediates(stages, result.output);

  result.metrics = evaluate(written, ref ? &*ref : nullptr);
  result.metrics.path = input.string();
  result.solve = stages.restoration.reports;
  return result;
}

std::vector<fs::path> batch_inputs(const fs::path& dir, const std::string& suffix) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
    const std::string stem = entry.path().stem().string();
    if (stem.size() >= suffix.size() && stem.ends_with(suffix)) continue;
    if (stem.find(suffix + "_") != std::string::npos) continue;  // panels and dumps
    files.push_back(entry.path());
  }
  if (files.empty()) throw EmptyBatchError("no PNG or JPEG images in " + dir.string());
  std::sort(files.begin(), files.end());
  return files;
}

BatchResult run_batch(const fs::path& dir, const PipelineConfig& config,
                      const std::optional<fs::path>& reference_dir, unsigned workers) {
  config.validate();
  const auto files = batch_inputs(dir, config.output.suffix);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(files.size()));

  std::vector<std::optional<BatchRow>> rows(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;

  auto work = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      try {
        std::optional<fs::path> ref;
        if (reference_dir) {
          const fs::path candidate = *reference_dir / files[k].filename();
          if (fs::exists(candidate)) ref = candidate;
        }
        const SingleResult r = run_single(files[k], config, std::nullopt, ref);
        rows[k] = BatchRow{r.metrics, r.iterations(), r.converged()};
      } catch (const std::exception& e) {
        errors[k] = e.what();
        std::lock_guard lock(log);
        std::cerr << "error: " << files[k].string() << ": " << e.what() << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  BatchResult result;
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (rows[k]) result.rows.push_back(std::move(*rows[k]));
    else result.failures.push_back({files[k], errors[k]});
  }
  return result;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct Means {
  double entropy = 0, uciqe = 0, iterations = 0, converged = 0;
  std::optional<double> ciede2000;
};

Means column_means(const std::vector<BatchRow>& rows) {
  Means m;
  if (rows.empty()) return m;
  double de = 0;
  bool all_de = true;
  for (const auto& r : rows) {
    m.entropy += r.metrics.entropy;
    m.uciqe += r.metrics.uciqe;
    m.iterations += r.iterations;
    m.converged += r.converged ? 1.0 : 0.0;
    if (r.metrics.ciede2000) de += *r.metrics.ciede2000;
    else all_de = false;
  }
  const double n = static_cast<double>(rows.size());
  m.entropy /= n;
  m.uciqe /= n;
  m.iterations /= n;
  m.converged /= n;
  if (all_de) m.ciede2000 = de / n;
  return m;
}

json metrics_json(const MetricReport& m) {
  json j = {{"path", m.path}, {"entropy", m.entropy}, {"uciqe", m.uciqe}};
  if (m.ciede2000) j["ciede2000"] = *m.ciede2000;
  return j;
}

json solve_json(const SolveReport& r) {
  json residuals = json::array();
  for (const auto& p : r.residuals)
    residuals.push_back({{"w_grad_r", p.w_grad_r},
                         {"v_div_p", p.v_div_p},
                         {"p_q", p.p_q},
                         {"m_grad_l", p.m_grad_l},
                         {"g_div_m", p.g_div_m}});
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"energy", r.energy},
          {"relative_change", r.relative_change},
          {"residuals", residuals}};
}

}  // namespace

std::string batch_csv(const BatchResult& result) {
  std::string out = "path,entropy,uciqe,ciede2000,iterations,converged\n";
  for (const auto& r : result.rows) {
    out += csv_field(r.metrics.path) + "," + num(r.metrics.entropy) + "," + num(r.metrics.uciqe) +
           "," + (r.metrics.ciede2000 ? num(*r.metrics.ciede2000) : "") + "," +
           std::to_string(r.iterations) + "," + (r.converged ? "1" : "0") + "\n";
  }
  if (!result.rows.empty()) {
    const Means m = column_means(result.rows);
    out += "mean," + num(m.entropy) + "," + num(m.uciqe) + "," +
           (m.ciede2000 ? num(*m.ciede2000) : "") + "," + num(m.iterations) + "," +
           num(m.converged) + "\n";
  }
  return out;
}

std::string batch_json(const BatchResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    json j = metrics_json(r.metrics);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    rows.push_back(j);
  }
  json failures = json::array();
  for (const auto& f : result.failures)
    failures.push_back({{"path", f.path.string()}, {"error", f.message}});
  json doc = {{"images", rows}, {"failures", failures}};
  if (!result.rows.empty()) {
    const Means m = column_means(result.rows);
    json mean = {{"entropy", m.entropy},
                 {"uciqe", m.uciqe},
                 {"iterations", m.iterations},
                 {"converged", m.converged}};
    if (m.ciede2000) mean["ciede2000"] = *m.ciede2000;
    doc["mean"] = mean;
  }
  return doc.dump(2) + "\n";
}

std::string single_json(const SingleResult& result) {
  json channels = json::object();
  const char* names[] = {"r", "g", "b"};
  for (int c = 0; c < 3; ++c) channels[names[c]] = solve_json(result.solve[c]);
  json doc = {{"output", result.output.string()},
              {"metrics", metrics_json(result.metrics)},
              {"solver", channels}};
  return doc.dump(2) + "\n";
}

}  // namespace uwr
