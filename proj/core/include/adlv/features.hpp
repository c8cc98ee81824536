#pragma once

// Feature schemas and labels of the experiments. Column layouts follow the
// experiment displays; every column is computed from (w, nu) alone.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/adlv.hpp"
#include "adlv/isocrystal.hpp"
#include "adlv/weyl.hpp"

namespace adlv {

enum class Schema {
  kExp1,   // lambda, u(1..n), l(u), l(w)
  kExp3,   // x_ij, l(x), mu, yinv_ij, l(y), l(w)
  kExp4,   // yinv_ij, l(y)
  kExp5,   // l(x), l(y), l(xy), l(yx), l(y*x), l(y<|x)
  kSec46,  // x_ij, mu, yinv_ij, eta_ij, l(w), nu, lambda
  kSec47,  // kSec46 plus dim V_mu(lambda)
};

Schema parse_schema(std::string_view name);
std::string_view schema_name(Schema s);
/// Whether the schema consumes a Newton point.
bool schema_uses_newton(Schema s);
std::vector<std::string> feature_names(Schema s, int n);
std::size_t feature_count(Schema s, int n);

/// Throws std::invalid_argument when nu is given to a schema that forbids
/// it or missing for one that needs it.
std::vector<double> extract_features(Schema s, const AffineElement& w, const NewtonPoint* nu);

/// Appends to `out` instead of allocating.
void append_features(Schema s, const AffineElement& w, const NewtonPoint* nu, std::vector<double>& out);

enum class LabelKind {
  kDim,               // dim X_w(b)
  kDimMinusHalfLen,   // dim X_w(b) - l(w)/2
  kNonemptyPm1,       // +1 nonempty, -1 empty
  kVdNeqDimPm1,       // +1 if d_w(b) != dim, else -1
  kIrr,               // top-dimensional component count
};

LabelKind parse_label(std::string_view name);
std::string_view label_name(LabelKind k);

/// `data` is the table entry at nu, or nullopt when X_w(b) is empty.
/// Throws std::domain_error for DIM-like labels on an empty pair.
double label_value(LabelKind k, const AffineElement& w, const NewtonPoint& nu,
                   const std::optional<ComponentData>& data);

}  // namespace adlv
