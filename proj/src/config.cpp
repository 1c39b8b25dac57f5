#include "uwr/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "uwr/error.hpp"

namespace uwr {

namespace {

using Slot = std::variant<double*, int*, bool*, std::string*, DisplayMode*>;

std::vector<std::pair<std::string_view, Slot>> slots(PipelineConfig& c) {
  return {
      {"color.d", &c.color.d},
      {"color.phi", &c.color.phi},
      {"color.epsilon_var", &c.color.epsilon_var},
      {"illumination.patch", &c.illumination.patch},
      {"illumination.theta", &c.illumination.theta},
      {"illumination.delta", &c.illumination.delta},
      {"illumination.floor", &c.illumination.floor},
      {"mask_filter.radius", &c.mask_filter.radius},
      {"mask_filter.eps", &c.mask_filter.eps},
      {"transmission.patch", &c.transmission.patch},
      {"transmission.t_min", &c.transmission.t_min},
      {"transmission_filter.radius", &c.transmission_filter.radius},
      {"transmission_filter.eps", &c.transmission_filter.eps},
      {"solver.alpha", &c.solver.alpha},
      {"solver.beta", &c.solver.beta},
      {"solver.gamma", &c.solver.gamma_reg},
      {"solver.mu1", &c.solver.mu[0]},
      {"solver.mu2", &c.solver.mu[1]},
      {"solver.mu3", &c.solver.mu[2]},
      {"solver.mu4", &c.solver.mu[3]},
      {"solver.mu5", &c.solver.mu[4]},
      {"solver.mu6", &c.solver.mu[5]},
      {"solver.max_iters", &c.solver.max_iters},
      {"solver.tol", &c.solver.tol},
      {"solver.eps_grad", &c.solver.eps_grad},
      {"solver.inner_iters", &c.solver.inner_iters},
      {"solver.inner_tol", &c.solver.inner_tol},
      {"output.panel", &c.output.panel},
      {"output.dump_intermediates", &c.output.dump_intermediates},
      {"output.suffix", &c.output.suffix},
      {"output.display", &c.output.display},
      {"output.rho", &c.output.rho},
      {"output.max_side", &c.output.max_side},
  };
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view value, std::string_view key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
  return out;
}

void assign(const Slot& slot, std::string_view value, std::string_view key) {
  std::visit(
      [&](auto* target) {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, double> || std::is_same_v<T, int>) {
          *target = parse_number<T>(value, key);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (value == "true" || value == "1") *target = true;
          else if (value == "false" || value == "0") *target = false;
          else throw ConfigError("expected true/false for " + std::string(key));
        } else if constexpr (std::is_same_v<T, std::string>) {
          *target = std::string(value);
        } else {
          if (value == "reflectance") *target = DisplayMode::reflectance;
          else if (value == "shaded") *target = DisplayMode::shaded;
          else throw ConfigError("expected reflectance|shaded for " + std::string(key));
        }
      },
      slot);
}

std::string render(const Slot& slot) {
  return std::visit(
      [](auto* target) -> std::string {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, double>) {
          char buf[64];
          const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *target);
          return std::string(buf, ptr);
        } else if constexpr (std::is_same_v<T, int>) {
          return std::to_string(*target);
        } else if constexpr (std::is_same_v<T, bool>) {
          return *target ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return *target;
        } else {
          return *target == DisplayMode::shaded ? "shaded" : "reflectance";
        }
      },
      slot);
}

}  // namespace

void PipelineConfig::validate() const {
  color.validate();
  illumination.validate();
  transmission.validate();
  mask_filter.validate();
  transmission_filter.validate();
  solver.validate();
  if (output.suffix.empty()) throw ParameterError("output.suffix must not be empty");
  if (!(output.rho >= 0.0)) throw ParameterError("output.rho must be >= 0");
  if (output.max_side < 1) throw ParameterError("output.max_side must be >= 1");
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  auto table = slots(config);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    bool found = false;
    for (const auto& [name, slot] : table) {
      if (name == key) {
        assign(slot, value, key);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  try {
    config.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const PipelineConfig& config) {
  PipelineConfig copy = config;
  std::string out;
  for (const auto& [name, slot] : slots(copy)) {
    out += name;
    out += " = ";
    out += render(slot);
    out += '\n';
  }
  return out;
}

}  // namespace uwr
