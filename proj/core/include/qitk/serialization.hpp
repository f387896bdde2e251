#pragma once

// JSON encoding of the object types. Matrices are written as
//   {"dims": [...], "re": [[...], ...], "im": [[...], ...]}
// and complex vectors as {"dims": [...], "re": [...], "im": [...]}.
// Real vectors (CPD, BlochVector) carry only "re". Decoding re-validates.

#include <nlohmann/json.hpp>

#include "qitk/objects.hpp"

namespace nlohmann {

template <>
struct adl_serializer<qitk::DimSpec> {
  static void to_json(json& j, const qitk::DimSpec& d);
  static qitk::DimSpec from_json(const json& j);
};

template <>
struct adl_serializer<qitk::PureState> {
  static void to_json(json& j, const qitk::PureState& s);
  static qitk::PureState from_json(const json& j);
};

template <>
struct adl_serializer<qitk::DensityMatrix> {
  static void to_json(json& j, const qitk::DensityMatrix& m);
  static qitk::DensityMatrix from_json(const json& j);
};

template <>
struct adl_serializer<qitk::UnitaryMatrix> {
  static void to_json(json& j, const qitk::UnitaryMatrix& m);
  static qitk::UnitaryMatrix from_json(const json& j);
};

template <>
struct adl_serializer<qitk::HermitianMatrix> {
  static void to_json(json& j, const qitk::HermitianMatrix& m);
  static qitk::HermitianMatrix from_json(const json& j);
};

template <>
struct adl_serializer<qitk::CPD> {
  static void to_json(json& j, const qitk::CPD& p);
  static qitk::CPD from_json(const json& j);
};

template <>
struct adl_serializer<qitk::BlochVector> {
  static void to_json(json& j, const qitk::BlochVector& b);
  static qitk::BlochVector from_json(const json& j);
};

}  // namespace nlohmann
