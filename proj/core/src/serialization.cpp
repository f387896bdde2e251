#include "qitk/serialization.hpp"

namespace nlohmann {
namespace {

using qitk::Complex;
using qitk::ComplexMatrix;
using qitk::ComplexVector;

void put_matrix(json& j, const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

ComplexMatrix get_matrix(const json& j) {
  const auto& re = j.at("re");
  const json im = j.contains("im") ? j.at("im") : json();
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(re.at(0).size()) : 0;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = re.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw qitk::DimensionError("json: ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double x = row.at(static_cast<std::size_t>(c)).get<double>();
      const double y = im.is_null() ? 0.0
                                    : im.at(static_cast<std::size_t>(r))
                                          .at(static_cast<std::size_t>(c))
                                          .get<double>();
      m(r, c) = Complex(x, y);
    }
  }
  return m;
}

void put_vector(json& j, const ComplexVector& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

ComplexVector get_vector(const json& j) {
  const auto& re = j.at("re");
  ComplexVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double y = j.contains("im") ? j.at("im").at(i).get<double>() : 0.0;
    v(static_cast<Eigen::Index>(i)) = Complex(re.at(i).get<double>(), y);
  }
  return v;
}

qitk::RealVector get_real_vector(const json& j) {
  const auto& re = j.at("re");
  qitk::RealVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = re.at(i).get<double>();
  return v;
}

json real_array(const qitk::RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

void adl_serializer<qitk::DimSpec>::to_json(json& j, const qitk::DimSpec& d) { j = d.dims(); }

qitk::DimSpec adl_serializer<qitk::DimSpec>::from_json(const json& j) {
  return qitk::DimSpec(j.get<std::vector<int>>());
}

void adl_serializer<qitk::PureState>::to_json(json& j, const qitk::PureState& s) {
  j = json::object();
  j["dims"] = s.dims();
  put_vector(j, s.amplitudes());
}

qitk::PureState adl_serializer<qitk::PureState>::from_json(const json& j) {
  return qitk::PureState(get_vector(j), j.at("dims").get<qitk::DimSpec>());
}

void adl_serializer<qitk::DensityMatrix>::to_json(json& j, const qitk::DensityMatrix& m) {
  j = json::object();
  j["dims"] = m.dims();
  put_matrix(j, m.matrix());
}

qitk::DensityMatrix adl_serializer<qitk::DensityMatrix>::from_json(const json& j) {
  return qitk::make_density(get_matrix(j), j.at("dims").get<qitk::DimSpec>());
}

void adl_serializer<qitk::UnitaryMatrix>::to_json(json& j, const qitk::UnitaryMatrix& m) {
  j = json::object();
  j["dims"] = m.dims();
  put_matrix(j, m.matrix());
}

qitk::UnitaryMatrix adl_serializer<qitk::UnitaryMatrix>::from_json(const json& j) {
  return qitk::UnitaryMatrix(get_matrix(j), j.at("dims").get<qitk::DimSpec>());
}

void adl_serializer<qitk::HermitianMatrix>::to_json(json& j, const qitk::HermitianMatrix& m) {
  j = json::object();
  j["dims"] = m.dims();
  put_matrix(j, m.matrix());
}

qitk::HermitianMatrix adl_serializer<qitk::HermitianMatrix>::from_json(const json& j) {
  return qitk::HermitianMatrix(get_matrix(j), j.at("dims").get<qitk::DimSpec>());
}

void adl_serializer<qitk::CPD>::to_json(json& j, const qitk::CPD& p) {
  j = json::object();
  j["re"] = real_array(p.probabilities());
}

qitk::CPD adl_serializer<qitk::CPD>::from_json(const json& j) {
  return qitk::CPD(get_real_vector(j));
}

void adl_serializer<qitk::BlochVector>::to_json(json& j, const qitk::BlochVector& b) {
  j = json::object();
  j["re"] = real_array(b.components);
}

qitk::BlochVector adl_serializer<qitk::BlochVector>::from_json(const json& j) {
  return qitk::BlochVector{get_real_vector(j)};
}

}  // namespace nlohmann
