#include "hoover/model_registry.hpp"

#include <cmath>

#include "hoover/benchmarks.hpp"
#include "hoover/error.hpp"

namespace hoover {

double ParamReader::get(const std::string& key, double fallback) {
  used_.insert(key);
  const auto it = params_.find(key);
  if (it == params_.end()) return fallback;
  require(std::isfinite(it->second), ErrorCode::kConfig, model_ + "." + key + " must be finite");
  return it->second;
}

int ParamReader::get_int(const std::string& key, int fallback) {
  const double v = get(key, fallback);
  require(v == std::floor(v) && std::abs(v) < 1e9, ErrorCode::kConfig,
          model_ + "." + key + " must be an integer");
  return static_cast<int>(v);
}

void ParamReader::finish() const {
  std::string unknown;
  for (const auto& [key, value] : params_) {
    if (!used_.contains(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  require(unknown.empty(), ErrorCode::kConfig, "unknown parameter(s) for model " + model_ + ": " + unknown);
}

ModelRegistry& ModelRegistry::instance() {
  static ModelRegistry registry;
  return registry;
}

ModelRegistry::ModelRegistry() { register_benchmarks(*this); }

void ModelRegistry::add(const std::string& name, Factory factory) {
  std::lock_guard lock(mutex_);
  factories_[name] = std::move(factory);
  reserved_.erase(name);
}

void ModelRegistry::reserve(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (!factories_.contains(name)) reserved_.insert(name);
}

NmcModel ModelRegistry::create(const ModelRequest& request) const {
  Factory factory;
  {
    std::lock_guard lock(mutex_);
    if (reserved_.contains(request.name)) {
      fail(ErrorCode::kUnknownModel, "model '" + request.name + "' is reserved but not implemented");
    }
    const auto it = factories_.find(request.name);
    if (it == factories_.end()) fail(ErrorCode::kUnknownModel, "unknown model '" + request.name + "'");
    factory = it->second;
  }
  NmcModel model = factory(request.params, request.time_bound);
  model.validate();
  return model;
}

bool ModelRegistry::contains(const std::string& name) const {
  std::lock_guard lock(mutex_);
  return factories_.contains(name);
}

std::vector<std::string> ModelRegistry::names() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, f] : factories_) out.push_back(name);
  return out;
}

}  // namespace hoover
