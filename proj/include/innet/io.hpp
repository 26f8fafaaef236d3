#pragma once

#include <map>
#include <string>

#include "innet/builder.hpp"
#include "innet/model.hpp"

namespace innet {

void save_model(const NetworkModel& model, const std::string& path);
NetworkModel load_model(const std::string& path);

/// Deterministic per-node trace (no timing columns; timings go to a
/// separate file so identical runs produce identical trace bytes).
void write_trace(const TrainingTrace& trace, const std::string& path);
void write_trace_timing(const TrainingTrace& trace, const std::string& path);

// Flat `key = value` config file with # comments. Last duplicate wins.
class KvConfig {
 public:
  static KvConfig parse_file(const std::string& path);
  static KvConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Expands MATLAB-style "start:step:end" range syntax (or a single number)
/// into an explicit list.
std::vector<double> parse_range(const std::string& spec);

}  // namespace innet
