#include "adlv/isocrystal.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace adlv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

Rational floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return Rational(q);
}

}  // namespace

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, text));
  const std::int64_t num = parse_int(s.substr(0, slash), text);
  const std::int64_t den = parse_int(s.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unbalanced brackets: '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Rational> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_rational(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::string> newton_point_violation(std::span<const Rational> coords) {
  if (coords.empty()) return "empty vector";
  Rational partial(0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    partial += coords[i];
    if (i + 1 < coords.size()) {
      if (coords[i] < coords[i + 1]) return "not dominant at index " + std::to_string(i + 1);
      if (coords[i] > coords[i + 1] && partial.denominator() != 1) {
        return "non-integral partial sum " + format_rational(partial) + " at slope change after index " +
               std::to_string(i + 1);
      }
    }
  }
  if (partial.numerator() != 0) return "coordinates sum to " + format_rational(partial) + ", not 0";
  return std::nullopt;
}

NewtonPoint NewtonPoint::make(std::vector<Rational> coords) {
  if (auto why = newton_point_violation(coords)) {
    throw std::invalid_argument("invalid Newton point: " + *why);
  }
  return NewtonPoint(std::move(coords));
}

NewtonPoint NewtonPoint::dominant_of(std::vector<Rational> coords) {
  std::sort(coords.begin(), coords.end(), std::greater<>());
  return make(std::move(coords));
}

NewtonPoint NewtonPoint::zero(int n) {
  return NewtonPoint(std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
}

NewtonPoint NewtonPoint::parse(std::string_view text) { return make(parse_rational_list(text)); }

bool NewtonPoint::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r.denominator() == 1; });
}

std::string NewtonPoint::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(coords_[i]);
  }
  return out + "]";
}

std::strong_ordering operator<=>(const NewtonPoint& a, const NewtonPoint& b) {
  const std::size_t common = std::min(a.coords_.size(), b.coords_.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
    if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
  }
  return a.coords_.size() <=> b.coords_.size();
}

Rational pair_2rho(std::span<const Rational> v) {
  const auto n = static_cast<std::int64_t>(v.size());
  Rational total(0);
  for (std::int64_t i = 0; i < n; ++i) total += v[static_cast<std::size_t>(i)] * (n - 1 - 2 * i);
  return total;
}

std::int64_t pair_2rho(std::span<const int> v) {
  const auto n = static_cast<std::int64_t>(v.size());
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < n; ++i) total += v[static_cast<std::size_t>(i)] * (n - 1 - 2 * i);
  return total;
}

std::vector<int> best_integral_approx(const NewtonPoint& nu) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(nu.rank()));
  Rational partial(0);
  std::int64_t previous_floor = 0;
  for (const Rational& c : nu.coords()) {
    partial += c;
    const std::int64_t f = floor_of(partial).numerator();
    out.push_back(static_cast<int>(f - previous_floor));
    previous_floor = f;
  }
  return out;
}

int defect(const NewtonPoint& nu) {
  const std::vector<int> floor = best_integral_approx(nu);
  std::vector<Rational> diff(nu.coords().begin(), nu.coords().end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= floor[i];
  const Rational d = pair_2rho(diff);
  if (d.denominator() != 1 || d.numerator() < 0) {
    throw std::logic_error("defect of " + nu.to_string() + " is not a nonnegative integer");
  }
  return static_cast<int>(d.numerator());
}

bool mazur_leq(const NewtonPoint& nu, std::span<const int> mu) {
  if (static_cast<std::size_t>(nu.rank()) != mu.size()) throw std::invalid_argument("mazur_leq: rank mismatch");
  Rational gap(0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    gap += Rational(mu[i]) - nu.coords()[i];
    if (gap.numerator() < 0) return false;
  }
  return gap.numerator() == 0;
}

bool mazur_leq(const NewtonPoint& lower, const NewtonPoint& upper) {
  if (lower.rank() != upper.rank()) throw std::invalid_argument("mazur_leq: rank mismatch");
  Rational gap(0);
  for (int i = 0; i < lower.rank(); ++i) {
    gap += upper[i] - lower[i];
    if (gap.numerator() < 0) return false;
  }
  return gap.numerator() == 0;
}

namespace {

// Newton polygons are concave with integral vertices. Walk over the vertex
// positions left to right, choosing each vertex height below μ's polygon.
class NewtonEnumerator {
 public:
  explicit NewtonEnumerator(std::span<const int> mu) : n_(static_cast<int>(mu.size())), bound_(mu.size() + 1, 0) {
    for (int i = 0; i < n_; ++i) bound_[static_cast<std::size_t>(i + 1)] = bound_[static_cast<std::size_t>(i)] + mu[static_cast<std::size_t>(i)];
  }

  std::vector<NewtonPoint> run() {
    std::vector<Rational> slopes;
    extend(0, 0, std::nullopt, slopes);
    return {found_.begin(), found_.end()};
  }

 private:
  void extend(int pos, std::int64_t height, std::optional<Rational> last_slope, std::vector<Rational>& slopes) {
    if (pos == n_) {
      if (height == 0) accept(slopes);
      return;
    }
    for (int next = pos + 1; next <= n_; ++next) {
      // Partial sums of a dominant zero-sum vector are nonnegative.
      const std::int64_t hi = next == n_ ? 0 : bound_[static_cast<std::size_t>(next)];
      for (std::int64_t h = 0; h <= hi; ++h) {
        const Rational slope(h - height, next - pos);
        if (last_slope && slope > *last_slope) continue;
        const std::size_t mark = slopes.size();
        slopes.resize(mark + static_cast<std::size_t>(next - pos), slope);
        extend(next, h, slope, slopes);
        slopes.resize(mark);
      }
    }
  }

  void accept(const std::vector<Rational>& slopes) {
    Rational partial(0);
    for (int i = 0; i < n_; ++i) {
      partial += slopes[static_cast<std::size_t>(i)];
      if (partial > Rational(bound_[static_cast<std::size_t>(i + 1)])) return;
    }
    found_.insert(NewtonPoint::make(slopes));
  }

  int n_;
  std::vector<std::int64_t> bound_;
  std::set<NewtonPoint> found_;
};

}  // namespace

std::vector<NewtonPoint> enumerate_newton_leq(std::span<const int> mu) {
  if (mu.empty()) throw std::invalid_argument("enumerate_newton_leq: empty coweight");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu[i];
    if (i + 1 < mu.size() && mu[i] < mu[i + 1]) throw std::invalid_argument("enumerate_newton_leq: μ is not dominant");
  }
  if (sum != 0) throw std::invalid_argument("enumerate_newton_leq: μ does not sum to 0");
  return NewtonEnumerator(mu).run();
}

BigInt kostant_partition(std::span<const int> c) {
  for (int v : c) {
    if (v < 0) return 0;
  }
  thread_local std::map<std::vector<int>, BigInt> cache;
  std::vector<int> key(c.begin(), c.end());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Unbounded coin change over the box ∏[0, c_k]; the coins are the positive
  // roots α_{i,j} = α_i + ... + α_{j-1}, i.e. runs of ones.
  const std::size_t m = key.size();
  std::vector<std::size_t> stride(m + 1, 1);
  for (std::size_t k = 0; k < m; ++k) stride[k + 1] = stride[k] * static_cast<std::size_t>(key[k] + 1);
  std::vector<BigInt> ways(stride[m], 0);
  ways[0] = 1;
  std::vector<int> coord(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      // Root covering simple coordinates [i, j).
      std::size_t offset = 0;
      for (std::size_t k = i; k < j; ++k) offset += stride[k];
      std::fill(coord.begin(), coord.end(), 0);
      for (std::size_t idx = 0; idx < ways.size(); ++idx) {
        bool fits = true;
        for (std::size_t k = i; k < j; ++k) {
          if (coord[k] == 0) {
            fits = false;
            break;
          }
        }
        if (fits) ways[idx] += ways[idx - offset];
        for (std::size_t k = 0; k < m; ++k) {
          if (++coord[k] <= key[k]) break;
          coord[k] = 0;
        }
      }
    }
  }
  BigInt result = ways.empty() ? BigInt(1) : ways.back();
  cache.emplace(std::move(key), result);
  return result;
}

BigInt weight_multiplicity(std::span<const int> mu, std::span<const int> lambda) {
  if (mu.size() != lambda.size()) throw std::invalid_argument("weight_multiplicity: rank mismatch");
  std::vector<int> c;
  std::int64_t partial = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    partial += mu[i] - lambda[i];
    if (i + 1 < mu.size()) {
      if (partial < 0) return 0;
      c.push_back(static_cast<int>(partial));
    }
  }
  if (partial != 0) return 0;
  return kostant_partition(c);
}

}  // namespace adlv

std::size_t std::hash<adlv::NewtonPoint>::operator()(const adlv::NewtonPoint& nu) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : nu.coords()) {
    h ^= static_cast<std::size_t>(r.numerator()) * 0x100000001b3ULL + static_cast<std::size_t>(r.denominator());
    h *= 0x100000001b3ULL;
  }
  return h;
}
