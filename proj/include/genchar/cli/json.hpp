#pragma once

#include <json.hpp>

#include "genchar/matrix.hpp"

namespace genchar::cli {

using Json = nlohmann::ordered_json;

/// Exact scalars become canonical "p/q" strings; floats become JSON numbers.
template <Field T>
Json scalar_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.to_string();
  } else {
    return x;
  }
}

template <Field T>
Json vector_json(VectorView<T> v) {
  Json out = Json::array();
  for (const T& x : v) out.push_back(scalar_json(x));
  return out;
}

/// Row arrays.
template <Field T>
Json matrix_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json<T>(m.row(i)));
  return out;
}

}  // namespace genchar::cli
