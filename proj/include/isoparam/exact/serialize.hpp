#pragma once

#include <json.hpp>

#include "isoparam/exact/matrix.hpp"

namespace isoparam::exact {

inline nlohmann::json to_json(const BigRational & r) { return r.to_string(); }
inline nlohmann::json to_json(const MPoly & p) { return p.to_string(); }

template<class T>
nlohmann::json to_json(const QuadExt<T> & x)
{
  return nlohmann::json{{"a", to_json(x.a())}, {"b", to_json(x.b())}};
}

template<class T>
nlohmann::json to_json(const ExactMatrix<T> & m)
{
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) { row.push_back(to_json(m(i, j))); }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace isoparam::exact
