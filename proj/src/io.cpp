#include "interlacing/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "interlacing/error.hpp"

namespace interlacing {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(Errc::SchemaError, msg); }

double number(const json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex complex_of(const json& j) {
  if (!j.is_array() || j.size() != 2) schema("complex numbers are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

VectorC vector_of(const json& j) {
  if (!j.is_array() || j.empty()) schema("vectors are non-empty arrays of [re, im] pairs");
  VectorC v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_of(j[i]);
  return v;
}

json vector_json(const VectorC& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

MatrixC matrix_of(const json& j) {
  if (!j.is_array() || j.empty()) schema("matrices are non-empty arrays of rows");
  const std::size_t n = j.size();
  MatrixC m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) schema("matrices must be square");
    for (std::size_t c = 0; c < n; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = complex_of(j[r][c]);
  }
  return m;
}

json matrix_json(const MatrixC& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) schema(std::string("missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace

std::string_view kind_name(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::Vectors: return "vectors";
    case InstanceKind::RandomVectors: return "random_vectors";
    case InstanceKind::Matrix: return "matrix";
    case InstanceKind::Covariances: return "covariances";
  }
  return "unknown";
}

std::vector<RandomVectorSpec> Instance::specs() const {
  if (kind != InstanceKind::RandomVectors) schema("expected kind random_vectors");
  std::vector<RandomVectorSpec> out;
  for (const auto& rv : random_vectors) {
    double total = 0.0;
    for (double p : rv.probs) total += p;
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < rv.values.size(); ++j) atoms.push_back(Atom{rv.values[j], rv.probs[j] / total});
    out.emplace_back(std::move(atoms));
  }
  return out;
}

CovarianceList Instance::covariance_list() const {
  if (kind == InstanceKind::RandomVectors) return interlacing::covariances(specs());
  if (kind != InstanceKind::Covariances) schema("expected kind covariances or random_vectors");
  std::vector<HermitianMatrix> mats;
  for (const auto& m : covariances) mats.emplace_back(m);
  return CovarianceList(std::move(mats));
}

HermitianMatrix Instance::hermitian() const {
  if (kind != InstanceKind::Matrix) schema("expected kind matrix");
  return HermitianMatrix(matrix);
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.kind != b.kind) return false;
  auto same_vecs = [](const std::vector<VectorC>& x, const std::vector<VectorC>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].size() != y[i].size() || x[i] != y[i]) return false;
    }
    return true;
  };
  auto same_mat = [](const MatrixC& x, const MatrixC& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x.size() == 0 || x == y);
  };
  switch (a.kind) {
    case InstanceKind::Vectors: return same_vecs(a.vectors, b.vectors);
    case InstanceKind::RandomVectors:
      if (a.random_vectors.size() != b.random_vectors.size()) return false;
      for (std::size_t i = 0; i < a.random_vectors.size(); ++i) {
        if (a.random_vectors[i].probs != b.random_vectors[i].probs) return false;
        if (!same_vecs(a.random_vectors[i].values, b.random_vectors[i].values)) return false;
      }
      return true;
    case InstanceKind::Matrix: return same_mat(a.matrix, b.matrix);
    case InstanceKind::Covariances:
      if (a.covariances.size() != b.covariances.size()) return false;
      for (std::size_t i = 0; i < a.covariances.size(); ++i) {
        if (!same_mat(a.covariances[i], b.covariances[i])) return false;
      }
      return true;
  }
  return false;
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  const json& version = field(doc, "schema_version");
  if (!version.is_string() || version.get<std::string>() != "1") schema("schema_version must be \"1\"");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) schema("kind must be a string");
  const json& payload = field(doc, "payload");

  Instance inst;
  const std::string k = kind.get<std::string>();
  if (k == "vectors") {
    inst.kind = InstanceKind::Vectors;
    const json& vs = field(payload, "vectors");
    if (!vs.is_array() || vs.empty()) schema("vectors must be a non-empty array");
    for (const auto& v : vs) inst.vectors.push_back(vector_of(v));
    for (const auto& v : inst.vectors) {
      if (v.size() != inst.vectors.front().size()) schema("vectors differ in dimension");
    }
  } else if (k == "random_vectors") {
    inst.kind = InstanceKind::RandomVectors;
    const json& rvs = field(payload, "random_vectors");
    if (!rvs.is_array() || rvs.empty()) schema("random_vectors must be a non-empty array");
    Index d = -1;
    for (const auto& rv : rvs) {
      RawRandomVector raw;
      const json& values = field(rv, "values");
      const json& probs = field(rv, "probs");
      if (!values.is_array() || !probs.is_array() || values.empty() || values.size() != probs.size()) {
        schema("values and probs must be non-empty arrays of equal length");
      }
      double total = 0.0;
      for (std::size_t j = 0; j < values.size(); ++j) {
        raw.values.push_back(vector_of(values[j]));
        raw.probs.push_back(number(probs[j], "probability"));
        if (!(raw.probs.back() >= 0.0)) schema("probabilities must be nonnegative");
        total += raw.probs.back();
        if (d < 0) d = raw.values.back().size();
        if (raw.values.back().size() != d) schema("random vector values differ in dimension");
      }
      if (std::abs(total - 1.0) > 1e-9) schema("probabilities must sum to 1");
      inst.random_vectors.push_back(std::move(raw));
    }
  } else if (k == "matrix") {
    inst.kind = InstanceKind::Matrix;
    inst.matrix = matrix_of(field(payload, "matrix"));
  } else if (k == "covariances") {
    inst.kind = InstanceKind::Covariances;
    const json& ms = field(payload, "matrices");
    if (!ms.is_array() || ms.empty()) schema("matrices must be a non-empty array");
    for (const auto& m : ms) inst.covariances.push_back(matrix_of(m));
    for (const auto& m : inst.covariances) {
      if (m.rows() != inst.covariances.front().rows()) schema("covariances differ in dimension");
    }
  } else {
    schema("unknown kind '" + k + "'");
  }
  return inst;
}

std::string emit_instance(const Instance& inst) {
  json payload = json::object();
  switch (inst.kind) {
    case InstanceKind::Vectors: {
      json vs = json::array();
      for (const auto& v : inst.vectors) vs.push_back(vector_json(v));
      payload["vectors"] = std::move(vs);
      break;
    }
    case InstanceKind::RandomVectors: {
      json rvs = json::array();
      for (const auto& rv : inst.random_vectors) {
        json values = json::array();
        for (const auto& v : rv.values) values.push_back(vector_json(v));
        rvs.push_back({{"values", std::move(values)}, {"probs", rv.probs}});
      }
      payload["random_vectors"] = std::move(rvs);
      break;
    }
    case InstanceKind::Matrix: payload["matrix"] = matrix_json(inst.matrix); break;
    case InstanceKind::Covariances: {
      json ms = json::array();
      for (const auto& m : inst.covariances) ms.push_back(matrix_json(m));
      payload["matrices"] = std::move(ms);
      break;
    }
  }
  json doc = {{"schema_version", "1"}, {"kind", std::string(kind_name(inst.kind))}, {"payload", std::move(payload)}};
  return doc.dump(2);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace interlacing
