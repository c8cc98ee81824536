#include "adlv/features.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

namespace adlv {

namespace {

struct SchemaInfo {
  Schema schema;
  std::string_view name;
  bool newton;
};

constexpr std::array<SchemaInfo, 6> kSchemas{{
    {Schema::kExp1, "EXP1", false},
    {Schema::kExp3, "EXP3", false},
    {Schema::kExp4, "EXP4", false},
    {Schema::kExp5, "EXP5", false},
    {Schema::kSec46, "SEC5_46", true},
    {Schema::kSec47, "SEC5_47", true},
}};

const SchemaInfo& info(Schema s) {
  for (const auto& i : kSchemas) {
    if (i.schema == s) return i;
  }
  throw std::invalid_argument("unknown schema");
}

constexpr std::array<std::pair<LabelKind, std::string_view>, 5> kLabels{{
    {LabelKind::kDim, "DIM"},
    {LabelKind::kDimMinusHalfLen, "DIM_MINUS_HALFLEN"},
    {LabelKind::kNonemptyPm1, "NONEMPTY_PM1"},
    {LabelKind::kVdNeqDimPm1, "VD_NEQ_DIM_PM1"},
    {LabelKind::kIrr, "IRR"},
}};

void root_names(std::vector<std::string>& out, std::string_view prefix, int n) {
  for (const Root& a : positive_roots(n)) {
    out.push_back(std::string(prefix) + std::to_string(a.i + 1) + std::to_string(a.j + 1));
  }
}

void indexed_names(std::vector<std::string>& out, std::string_view prefix, int n) {
  for (int i = 1; i <= n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
}

void push_deltas(std::vector<double>& out, const Permutation& z) {
  for (const Root& a : positive_roots(z.rank())) out.push_back(delta(z, a));
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// dim V_mu(lambda) is called once per pair on large scans; n = 5 keys are tiny.
double cached_multiplicity(std::span<const int> mu, std::span<const int> lambda) {
  static std::mutex mutex;
  static std::map<std::vector<int>, double> cache;
  std::vector<int> key(mu.begin(), mu.end());
  key.insert(key.end(), lambda.begin(), lambda.end());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value = weight_multiplicity(mu, lambda).convert_to<double>();
  std::lock_guard lock(mutex);
  cache.emplace(std::move(key), value);
  return value;
}

}  // namespace

Schema parse_schema(std::string_view name) {
  for (const auto& i : kSchemas) {
    if (i.name == name) return i.schema;
  }
  throw std::invalid_argument("unknown schema '" + std::string(name) + "'");
}

std::string_view schema_name(Schema s) { return info(s).name; }

bool schema_uses_newton(Schema s) { return info(s).newton; }

std::vector<std::string> feature_names(Schema s, int n) {
  std::vector<std::string> out;
  switch (s) {
    case Schema::kExp1:
      indexed_names(out, "lambda", n);
      indexed_names(out, "u", n);
      out.insert(out.end(), {"len_u", "len_w"});
      break;
    case Schema::kExp3:
      root_names(out, "x", n);
      out.push_back("len_x");
      indexed_names(out, "mu", n);
      root_names(out, "yinv", n);
      out.insert(out.end(), {"len_y", "len_w"});
      break;
    case Schema::kExp4:
      root_names(out, "yinv", n);
      out.push_back("len_y");
      break;
    case Schema::kExp5:
      out = {"len_x", "len_y", "len_xy", "len_yx", "len_y_star_x", "len_y_tri_x"};
      break;
    case Schema::kSec46:
    case Schema::kSec47:
      root_names(out, "x", n);
      indexed_names(out, "mu", n);
      root_names(out, "yinv", n);
      root_names(out, "eta", n);
      out.push_back("len_w");
      indexed_names(out, "nu", n);
      indexed_names(out, "lambda", n);
      if (s == Schema::kSec47) out.push_back("mult");
      break;
  }
  return out;
}

std::size_t feature_count(Schema s, int n) { return feature_names(s, n).size(); }

void append_features(Schema s, const AffineElement& w, const NewtonPoint* nu, std::vector<double>& out) {
  const bool wants = schema_uses_newton(s);
  if (wants && nu == nullptr) throw std::invalid_argument(std::string(schema_name(s)) + " needs a Newton point");
  if (!wants && nu != nullptr) throw std::invalid_argument(std::string(schema_name(s)) + " takes no Newton point");
  if (nu != nullptr && nu->rank() != w.rank()) throw std::invalid_argument("Newton point rank differs from w");

  const int n = w.rank();
  if (s == Schema::kExp1) {
    for (int v : w.translation()) out.push_back(v);
    for (int i = 0; i < n; ++i) out.push_back(w.finite()(i) + 1);
    out.push_back(w.finite().length());
    out.push_back(affine_length(w));
    return;
  }

  const Decomposition d = decompose(w);
  const Permutation yinv = d.y.inverse();
  switch (s) {
    case Schema::kExp3:
      push_deltas(out, d.x);
      out.push_back(d.x.length());
      for (int v : d.mu_span()) out.push_back(v);
      push_deltas(out, yinv);
      out.push_back(d.y.length());
      out.push_back(affine_length(w));
      break;
    case Schema::kExp4:
      push_deltas(out, yinv);
      out.push_back(d.y.length());
      break;
    case Schema::kExp5: {
      const DemazurePair dem = demazure_products(d.y, d.x);
      out.push_back(d.x.length());
      out.push_back(d.y.length());
      out.push_back((d.x * d.y).length());
      out.push_back((d.y * d.x).length());
      out.push_back(dem.star.length());
      out.push_back(dem.down.length());
      break;
    }
    case Schema::kSec46:
    case Schema::kSec47: {
      push_deltas(out, d.x);
      for (int v : d.mu_span()) out.push_back(v);
      push_deltas(out, yinv);
      push_deltas(out, d.eta());
      out.push_back(affine_length(w));
      for (const Rational& c : nu->coords()) out.push_back(to_double(c));
      const std::vector<int> lambda = best_integral_approx(*nu);
      for (int v : lambda) out.push_back(v);
      if (s == Schema::kSec47) out.push_back(cached_multiplicity(d.mu_span(), lambda));
      break;
    }
    case Schema::kExp1:
      break;
  }
}

std::vector<double> extract_features(Schema s, const AffineElement& w, const NewtonPoint* nu) {
  std::vector<double> out;
  out.reserve(feature_count(s, w.rank()));
  append_features(s, w, nu, out);
  return out;
}

LabelKind parse_label(std::string_view name) {
  for (const auto& [k, text] : kLabels) {
    if (text == name) return k;
  }
  throw std::invalid_argument("unknown label '" + std::string(name) + "'");
}

std::string_view label_name(LabelKind k) {
  for (const auto& [kind, text] : kLabels) {
    if (kind == k) return text;
  }
  throw std::invalid_argument("unknown label kind");
}

double label_value(LabelKind k, const AffineElement& w, const NewtonPoint& nu,
                   const std::optional<ComponentData>& data) {
  if (k == LabelKind::kNonemptyPm1) return data ? 1.0 : -1.0;
  if (!data) throw std::domain_error(std::string(label_name(k)) + " is undefined for an empty X_w(b)");
  switch (k) {
    case LabelKind::kDim:
      return data->dim;
    case LabelKind::kDimMinusHalfLen:
      return data->dim - 0.5 * affine_length(w);
    case LabelKind::kVdNeqDimPm1:
      return virtual_dimension(w, nu) == Rational(data->dim) ? -1.0 : 1.0;
    case LabelKind::kIrr:
      return static_cast<double>(data->irr);
    case LabelKind::kNonemptyPm1:
      break;
  }
  return 0.0;
}

}  // namespace adlv
