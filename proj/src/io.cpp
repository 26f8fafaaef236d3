#include "innet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "innet/errors.hpp"

namespace innet {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector vector_from_json(const json& a) {
  Vector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Index>(i)) = a[i];
  return v;
}

Matrix matrix_from_json(const json& rows, Index cols_hint) {
  const Index r = static_cast<Index>(rows.size());
  Index c = cols_hint;
  if (r > 0) c = static_cast<Index>(rows[0].size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_double_csv(std::ostream& os, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, res.ptr - buf);
}

}  // namespace

void save_model(const NetworkModel& model, const std::string& path) {
  json doc;
  doc["format"] = "innet-model-v1";
  doc["activation"] = activation_name(model.activation);
  doc["task"] = model.task == Task::kRegression ? "regression" : "classification";
  doc["output_dim"] = model.beta.cols();
  json nodes = json::array();
  for (const auto& node : model.nodes) {
    json n;
    n["weights"] = vector_to_json(node.weights);
    n["bias"] = node.bias;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  doc["beta"] = matrix_to_json(model.beta);
  json norm;
  norm["x_min"] = vector_to_json(model.norm.x_min);
  norm["x_max"] = vector_to_json(model.norm.x_max);
  norm["scale_outputs"] = model.norm.scale_outputs;
  if (model.norm.scale_outputs) {
    norm["y_min"] = vector_to_json(model.norm.y_min);
    norm["y_max"] = vector_to_json(model.norm.y_max);
  }
  doc["norm"] = std::move(norm);

  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

NetworkModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  NetworkModel model;
  model.activation =
      activation_from_name(doc.at("activation").get<std::string>());
  model.task = doc.at("task").get<std::string>() == "classification"
                   ? Task::kClassification
                   : Task::kRegression;
  for (const auto& n : doc.at("nodes")) {
    HiddenNode node;
    node.weights = vector_from_json(n.at("weights"));
    node.bias = n.at("bias");
    model.nodes.push_back(std::move(node));
  }
  model.beta =
      matrix_from_json(doc.at("beta"), doc.at("output_dim").get<Index>());
  const auto& norm = doc.at("norm");
  model.norm.x_min = vector_from_json(norm.at("x_min"));
  model.norm.x_max = vector_from_json(norm.at("x_max"));
  model.norm.scale_outputs = norm.at("scale_outputs");
  if (model.norm.scale_outputs) {
    model.norm.y_min = vector_from_json(norm.at("y_min"));
    model.norm.y_max = vector_from_json(norm.at("y_max"));
  }
  return model;
}

void write_trace(const TrainingTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "node_index,rmse,score,cos2,gamma,constraint_satisfied,fallback_used\n";
  for (const auto& rec : trace.nodes) {
    out << rec.node_index << ',';
    write_double_csv(out, rec.residual_rmse);
    out << ',';
    write_double_csv(out, rec.selected_score);
    out << ',';
    write_double_csv(out, rec.cos2);
    out << ',';
    write_double_csv(out, rec.gamma);
    out << ',' << (rec.constraint_satisfied ? 1 : 0) << ','
        << (rec.fallback_used ? 1 : 0) << '\n';
  }
}

void write_trace_timing(const TrainingTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "node_index,seconds\n";
  for (const auto& rec : trace.nodes) {
    out << rec.node_index << ',' << rec.elapsed_seconds << '\n';
  }
  out << "total," << trace.wall_seconds << '\n';
}

KvConfig KvConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

KvConfig KvConfig::parse_string(const std::string& text) {
  KvConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    }
    cfg.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

bool KvConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::string KvConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ParseError("config: missing key '" + key + "'");
  return it->second;
}

std::string KvConfig::get_string(const std::string& key,
                                 const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ParseError("config: key '" + key + "' is not a number");
  }
}

long KvConfig::get_long(const std::string& key, long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (const std::exception&) {
    throw ParseError("config: key '" + key + "' is not an integer");
  }
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(trim(tok));
  try {
    if (parts.size() == 1) {
      return {std::stod(parts[0])};
    }
    if (parts.size() == 3) {
      const double start = std::stod(parts[0]);
      const double step = std::stod(parts[1]);
      const double end = std::stod(parts[2]);
      if (step <= 0.0) throw ParseError("range: step must be positive");
      std::vector<double> out;
      // Half-step slack so "1:0.1:3" includes 3 despite rounding.
      for (double v = start; v <= end + step * 0.5; v += step) out.push_back(v);
      return out;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw ParseError("range: expected 'value' or 'start:step:end', got '" + spec +
                   "'");
}

}  // namespace innet
