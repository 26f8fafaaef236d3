#include "innet/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "innet/errors.hpp"
#include "innet/rng.hpp"

namespace innet {

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void write_double(std::ostream& os, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, res.ptr - buf);
}

}  // namespace

CsvSchema parse_schema(const std::string& spec) {
  CsvSchema schema;
  for (const auto& part : split_fields(spec, ',')) {
    const auto kv = trim(part);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ParseError("schema: expected key=value, got '" + kv + "'");
    }
    const std::string key = trim(kv.substr(0, eq));
    const std::string val = trim(kv.substr(eq + 1));
    if (key == "task") {
      if (val == "regression") schema.task = Task::kRegression;
      else if (val == "classification") schema.task = Task::kClassification;
      else throw ParseError("schema: unknown task '" + val + "'");
    } else if (key == "header") {
      schema.header = (val == "1" || val == "true");
    } else if (key == "target") {
      if (val == "last") {
        schema.target_cols.clear();
      } else {
        for (const auto& tok : split_fields(val, '+')) {
          schema.target_cols.push_back(std::stol(tok));
        }
      }
    } else {
      throw ParseError("schema: unknown key '" + key + "'");
    }
  }
  return schema;
}

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::vector<std::vector<double>> raw;
  std::vector<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (lineno == 1 && schema.header) {
      for (const auto& f : split_fields(line, ',')) names.push_back(trim(f));
      continue;
    }
    const auto fields = split_fields(line, ',');
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (const auto& f : fields) {
      const std::string t = trim(f);
      try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": non-numeric cell '" + t + "'");
      }
    }
    raw.push_back(std::move(row));
  }
  if (raw.empty()) {
    throw ParseError(path + ": no data rows");
  }

  std::vector<Index> targets = schema.target_cols;
  if (targets.empty()) targets.push_back(static_cast<Index>(width) - 1);
  for (Index t : targets) {
    if (t < 0 || t >= static_cast<Index>(width)) {
      throw ParseError(path + ": target column " + std::to_string(t) +
                       " out of range");
    }
  }

  const Index n = static_cast<Index>(raw.size());
  std::vector<Index> feature_cols;
  for (Index c = 0; c < static_cast<Index>(width); ++c) {
    if (std::find(targets.begin(), targets.end(), c) == targets.end()) {
      feature_cols.push_back(c);
    }
  }

  Dataset ds;
  ds.task = schema.task;
  ds.x.resize(n, static_cast<Index>(feature_cols.size()));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < static_cast<Index>(feature_cols.size()); ++j) {
      ds.x(i, j) = raw[i][feature_cols[j]];
    }
  }
  if (!names.empty()) {
    for (Index c : feature_cols) ds.feature_names.push_back(names[c]);
  }

  if (schema.task == Task::kRegression) {
    ds.y.resize(n, static_cast<Index>(targets.size()));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < static_cast<Index>(targets.size()); ++j) {
        ds.y(i, j) = raw[i][targets[j]];
      }
    }
  } else {
    // Integer-coded labels in a single column, one-hot encoded over the
    // sorted set of distinct labels.
    if (targets.size() != 1) {
      throw ParseError(path + ": classification expects one target column");
    }
    std::map<long, Index> codes;
    for (Index i = 0; i < n; ++i) {
      codes.emplace(std::lround(raw[i][targets[0]]), 0);
    }
    Index next = 0;
    for (auto& [label, code] : codes) code = next++;
    ds.y = Matrix::Zero(n, next);
    for (Index i = 0; i < n; ++i) {
      ds.y(i, codes.at(std::lround(raw[i][targets[0]]))) = 1.0;
    }
  }
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write '" + path + "'");
  }
  for (Index i = 0; i < ds.rows(); ++i) {
    for (Index j = 0; j < ds.input_dim(); ++j) {
      if (j > 0) out << ',';
      write_double(out, ds.x(i, j));
    }
    if (ds.task == Task::kRegression) {
      for (Index q = 0; q < ds.output_dim(); ++q) {
        out << ',';
        write_double(out, ds.y(i, q));
      }
    } else {
      Index label = 0;
      ds.y.row(i).maxCoeff(&label);
      out << ',' << label;
    }
    out << '\n';
  }
}

std::pair<Dataset, NormParams> normalize(const Dataset& ds) {
  if (ds.rows() == 0) {
    throw ContractError("normalize: empty dataset");
  }
  NormParams p;
  p.x_min = ds.x.colwise().minCoeff();
  p.x_max = ds.x.colwise().maxCoeff();
  p.scale_outputs = (ds.task == Task::kRegression);
  if (p.scale_outputs) {
    p.y_min = ds.y.colwise().minCoeff();
    p.y_max = ds.y.colwise().maxCoeff();
  }
  return {apply_normalization(ds, p), p};
}

namespace {

Matrix scale_columns(const Matrix& m, const Vector& lo, const Vector& hi) {
  Matrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    const double range = hi(j) - lo(j);
    if (range > 0.0) {
      out.col(j) = (m.col(j).array() - lo(j)) / range;
    } else {
      out.col(j).setZero();  // constant feature
    }
  }
  return out;
}

}  // namespace

Dataset apply_normalization(const Dataset& ds, const NormParams& p) {
  if (ds.input_dim() != p.x_min.size()) {
    throw ContractError("apply_normalization: feature count mismatch");
  }
  Dataset out = ds;
  out.x = scale_columns(ds.x, p.x_min, p.x_max);
  if (p.scale_outputs) {
    out.y = scale_columns(ds.y, p.y_min, p.y_max);
  }
  return out;
}

Matrix denormalize_outputs(const Matrix& y, const NormParams& p) {
  if (!p.scale_outputs) return y;
  Matrix out(y.rows(), y.cols());
  for (Index j = 0; j < y.cols(); ++j) {
    out.col(j) = y.col(j).array() * (p.y_max(j) - p.y_min(j)) + p.y_min(j);
  }
  return out;
}

double synth_target(double x) {
  const double a = (x - 0.3) * (x - 0.3) + 0.01;
  const double b = (x - 0.9) * (x - 0.9) + 0.04;
  return 1.0 / a + 1.0 / b - 6.0;
}

Dataset synth_function(Index n, std::uint64_t seed, double noise) {
  if (n < 1) {
    throw ContractError("synth_function: n must be >= 1");
  }
  auto rng = substream(seed, 0x73796e7468ULL);  // dedicated stream tag
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset ds;
  ds.task = Task::kRegression;
  ds.x.resize(n, 1);
  ds.y.resize(n, 1);
  for (Index i = 0; i < n; ++i) {
    const double x = unif(rng);
    ds.x(i, 0) = x;
    ds.y(i, 0) = synth_target(x) + (noise > 0.0 ? noise * gauss(rng) : 0.0);
  }
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, Index train_count,
                                  Index test_count, std::uint64_t seed) {
  if (train_count + test_count > ds.rows()) {
    throw ContractError("split: train + test exceeds dataset size");
  }
  std::vector<Index> idx(ds.rows());
  std::iota(idx.begin(), idx.end(), Index{0});
  // Explicit Fisher-Yates so the partition is stable across platforms.
  auto rng = substream(seed, 0x73706c6974ULL);
  for (Index i = ds.rows() - 1; i > 0; --i) {
    std::uniform_int_distribution<Index> pick(0, i);
    std::swap(idx[i], idx[pick(rng)]);
  }
  auto take = [&](Index offset, Index count) {
    Dataset out;
    out.task = ds.task;
    out.feature_names = ds.feature_names;
    out.x.resize(count, ds.input_dim());
    out.y.resize(count, ds.output_dim());
    for (Index i = 0; i < count; ++i) {
      out.x.row(i) = ds.x.row(idx[offset + i]);
      out.y.row(i) = ds.y.row(idx[offset + i]);
    }
    return out;
  };
  return {take(0, train_count), take(train_count, test_count)};
}

}  // namespace innet
