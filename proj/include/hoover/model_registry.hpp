#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hoover/nmc_model.hpp"

namespace hoover {

/// Numeric model parameters keyed by name, e.g. {"s": 0.1}.
using ParamBlock = std::map<std::string, double>;

/// Reads parameters with defaults and rejects keys nobody asked for.
class ParamReader {
 public:
  ParamReader(std::string model, const ParamBlock& params) : model_(std::move(model)), params_(params) {}

  double get(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  /// Throws kConfig listing every key that was never read.
  void finish() const;

 private:
  std::string model_;
  const ParamBlock& params_;
  std::set<std::string> used_;
};

struct ModelRequest {
  std::string name;
  ParamBlock params;
  std::optional<int> time_bound;  // overrides the model default when set
};

/// Name -> factory table. Built-in benchmarks are registered on first use;
/// further models plug in through add().
class ModelRegistry {
 public:
  using Factory = std::function<NmcModel(const ParamBlock&, std::optional<int> time_bound)>;

  static ModelRegistry& instance();

  void add(const std::string& name, Factory factory);
  /// Reserves a name that exists in the literature but has no implementation.
  void reserve(const std::string& name);

  NmcModel create(const ModelRequest& request) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  ModelRegistry();

  mutable std::mutex mutex_;
  std::map<std::string, Factory> factories_;
  std::set<std::string> reserved_;
};

inline NmcModel make_model(const ModelRequest& request) {
  return ModelRegistry::instance().create(request);
}

}  // namespace hoover
