#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgesim/error.hpp"
#include "edgesim/rng.hpp"
#include "edgesim/scenario.hpp"
#include "json_util.hpp"

namespace edgesim {

namespace {

// Measured ViT submodels (memory MB, GFlops, precision).
constexpr std::array<std::array<double, 3>, 3> kVitAttributes{{
    {174.32, 5.70, 0.8417},
    {227.42, 7.56, 0.9413},
    {342.05, 11.29, 0.9894},
}};

// Measured ViT loading times in seconds; row 0 is a fresh load.
constexpr std::array<std::array<double, 4>, 4> kVitLoad{{
    {0.0, 0.68860, 0.87696, 1.05821},
    {0.0, 0.00000, 0.24794, 0.46098},
    {0.0, 0.04238, 0.00000, 0.25082},
    {0.0, 0.04725, 0.04242, 0.00000},
}};

constexpr std::array<const char*, 8> kModelNames{
    "vit", "swin", "deit", "resnet", "mobilenet", "efficientnet", "convnext", "regnet"};

constexpr std::uint64_t kCatalogSeed = 0x5eed'ca7a'1090ULL;

double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

ModelType make_model(const std::string& name, double size_f, double flops_f, double error_f,
                     double time_f) {
  ModelType m;
  m.name = name;
  m.submodels.push_back(Submodel{});
  double prev_size = 0.0, prev_flops = 0.0, prev_precision = 0.0;
  for (std::size_t j = 0; j < kVitAttributes.size(); ++j) {
    const auto& row = kVitAttributes[j];
    double size = round_to(row[0] * size_f, 2);
    double flops = round_to(row[1] * flops_f, 2);
    double precision = round_to(1.0 - (1.0 - row[2]) * error_f, 4);
    // Rounding may collapse neighbours; keep the chain strictly increasing.
    size = std::max(size, round_to(prev_size + 0.01, 2));
    flops = std::max(flops, round_to(prev_flops + 0.01, 2));
    precision = std::min(std::max(precision, round_to(prev_precision + 0.0001, 4)), 1.0);
    Submodel s;
    s.level = static_cast<int>(j) + 1;
    s.size_mb = size;
    s.gflops = flops;
    s.precision = precision;
    s.delta_mb = round_to(size - prev_size, 2);
    m.submodels.push_back(s);
    prev_size = size;
    prev_flops = flops;
    prev_precision = precision;
  }
  m.switch_s.assign(kVitLoad.size(), std::vector<double>(kVitLoad.size(), 0.0));
  for (std::size_t a = 0; a < kVitLoad.size(); ++a) {
    for (std::size_t b = 0; b < kVitLoad.size(); ++b) {
      m.switch_s[a][b] = a == b ? 0.0 : round_to(kVitLoad[a][b] * time_f, 5);
    }
  }
  return m;
}

}  // namespace

ModelCatalog default_catalog(int model_count) {
  if (model_count < 1) throw Error(ErrorCode::InvalidArgument, "model_count must be >= 1");
  std::vector<ModelType> models;
  models.push_back(make_model(kModelNames[0], 1.0, 1.0, 1.0, 1.0));
  Rng rng(kCatalogSeed);
  for (int m = 1; m < model_count; ++m) {
    const double size_f = rng.uniform(0.6, 1.4);
    const double flops_f = rng.uniform(0.6, 1.4);
    const double error_f = rng.uniform(0.6, 1.4);
    const double time_f = rng.uniform(0.6, 1.4);
    const std::string name = static_cast<std::size_t>(m) < kModelNames.size()
                                 ? std::string(kModelNames[static_cast<std::size_t>(m)])
                                 : "model" + std::to_string(m);
    models.push_back(make_model(name, size_f, flops_f, error_f, time_f));
  }
  return ModelCatalog(std::move(models));
}

namespace detail {

json catalog_json(const ModelCatalog& catalog) {
  json models = json::array();
  for (const auto& m : catalog.models()) {
    json subs = json::array();
    for (std::size_t j = 1; j < m.submodels.size(); ++j) {
      const auto& s = m.submodels[j];
      subs.push_back({{"size_mb", s.size_mb},
                      {"gflops", s.gflops},
                      {"precision", s.precision},
                      {"delta_mb", s.delta_mb}});
    }
    models.push_back({{"name", m.name}, {"submodels", subs}, {"switch_s", m.switch_s}});
  }
  return json{{"models", models}};
}

ModelCatalog catalog_from(const json& j) {
  try {
    std::vector<ModelType> models;
    for (const auto& jm : j.at("models")) {
      ModelType m;
      m.name = jm.at("name").get<std::string>();
      m.submodels.push_back(Submodel{});
      int level = 1;
      for (const auto& js : jm.at("submodels")) {
        Submodel s;
        s.level = level++;
        s.size_mb = js.at("size_mb").get<double>();
        s.gflops = js.at("gflops").get<double>();
        s.precision = js.at("precision").get<double>();
        s.delta_mb = js.at("delta_mb").get<double>();
        m.submodels.push_back(s);
      }
      m.switch_s = jm.at("switch_s").get<std::vector<std::vector<double>>>();
      models.push_back(std::move(m));
    }
    return ModelCatalog(std::move(models));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidCatalog, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

}  // namespace detail

std::string catalog_to_json(const ModelCatalog& catalog) {
  return detail::catalog_json(catalog).dump(2) + "\n";
}

ModelCatalog catalog_from_json(const std::string& text) {
  try {
    return detail::catalog_from(detail::json::parse(text));
  } catch (const detail::json::exception& e) {
    throw Error(ErrorCode::InvalidCatalog, e.what());
  }
}

ModelCatalog load_catalog(const std::string& path) { return catalog_from_json(detail::read_file(path)); }

}  // namespace edgesim
