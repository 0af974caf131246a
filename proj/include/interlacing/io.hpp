#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "interlacing/mixedchar.hpp"

namespace interlacing {

enum class InstanceKind { Vectors, RandomVectors, Matrix, Covariances };

std::string_view kind_name(InstanceKind kind) noexcept;

/// A raw random vector as stored on disk; probabilities are kept verbatim so
/// that emit(parse(text)) reproduces every value.
struct RawRandomVector {
  std::vector<VectorC> values;
  std::vector<double> probs;
};

/// Schema-1 instance file. Only the member matching `kind` is populated.
struct Instance {
  InstanceKind kind = InstanceKind::Vectors;
  std::vector<VectorC> vectors;
  std::vector<RawRandomVector> random_vectors;
  MatrixC matrix;
  std::vector<MatrixC> covariances;

  /// Probabilities summing to 1 within 1e-9 are rescaled to an exact unit sum.
  std::vector<RandomVectorSpec> specs() const;
  CovarianceList covariance_list() const;
  HermitianMatrix hermitian() const;
};

bool operator==(const Instance& a, const Instance& b);

/// Throws ParseError on malformed JSON and SchemaError on a well-formed
/// document that violates schema 1.
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst);
Instance load_instance(const std::filesystem::path& path);

}  // namespace interlacing
