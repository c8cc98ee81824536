#include "adlv/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace adlv {

namespace {

void check_rank(int n) {
  if (n < 1 || n > kMaxRank) {
    throw std::invalid_argument("rank must lie in [1, " + std::to_string(kMaxRank) + "], got " + std::to_string(n));
  }
}

}  // namespace

Permutation Permutation::identity(int n) {
  check_rank(n);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  check_rank(n);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  std::array<bool, kMaxRank> seen{};
  for (int i = 0; i < n; ++i) {
    const int v = images[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("images do not form a permutation");
    seen[static_cast<std::size_t>(v)] = true;
    p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  return p;
}

Permutation Permutation::simple_reflection(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("finite simple reflection index out of range: " + std::to_string(i));
  return transposition(n, i - 1, i);
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p = identity(n);
  std::swap(p.img_[static_cast<std::size_t>(a)], p.img_[static_cast<std::size_t>(b)]);
  return p;
}

Permutation Permutation::longest(int n) {
  Permutation p = identity(n);
  std::reverse(p.img_.begin(), p.img_.begin() + n);
  return p;
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<Permutation> out;
  Permutation p = identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.img_.begin(), p.img_.begin() + n));
  return out;
}

std::vector<int> Permutation::images() const { return {img_.begin(), img_.begin() + n_}; }

int Permutation::length() const {
  int inv = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) inv += img_[i] > img_[j];
  }
  return inv;
}

int Permutation::cycle_count() const {
  std::array<bool, kMaxRank> seen{};
  int cycles = 0;
  for (int i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = img_[j]) seen[j] = true;
  }
  return cycles;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

std::vector<int> Permutation::reduced_word() const {
  // Strip right descents: u = (u s_k) s_k whenever u(k-1) > u(k).
  std::vector<int> reversed;
  Permutation u = *this;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i + 1 < n_; ++i) {
      if (u.img_[i] > u.img_[i + 1]) {
        std::swap(u.img_[i], u.img_[i + 1]);
        reversed.push_back(i + 1);
        changed = true;
        break;
      }
    }
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::size_t Permutation::lehmer_rank() const {
  std::size_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j) smaller += img_[j] < img_[i];
    rank = rank * static_cast<std::size_t>(n_ - i) + static_cast<std::size_t>(smaller);
  }
  return rank;
}

Permutation Permutation::from_lehmer_rank(int n, std::size_t rank) {
  check_rank(n);
  std::array<int, kMaxRank> digits{};
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::size_t>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> images;
  for (int i = 0; i < n; ++i) {
    const auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
    images.push_back(*it);
    pool.erase(it);
  }
  return from_images(images);
}

std::string Permutation::to_string() const {
  std::string out = "[";
  for (int i = 0; i < n_; ++i) {
    if (i) out += ", ";
    out += std::to_string(img_[i] + 1);
  }
  return out + "]";
}

std::vector<Root> positive_roots(int n) {
  std::vector<Root> roots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) roots.push_back({i, j});
  }
  return roots;
}

AffineElement AffineElement::identity(int n) {
  AffineElement w;
  w.z_ = Permutation::identity(n);
  return w;
}

AffineElement AffineElement::translation(std::span<const int> lambda) {
  return make(lambda, Permutation::identity(static_cast<int>(lambda.size())));
}

AffineElement AffineElement::make(std::span<const int> lambda, const Permutation& z) {
  if (static_cast<int>(lambda.size()) != z.rank()) throw std::invalid_argument("translation and permutation ranks differ");
  if (std::accumulate(lambda.begin(), lambda.end(), 0) != 0) {
    throw std::invalid_argument("translation " + format_int_list(lambda) + " does not sum to 0");
  }
  AffineElement w;
  std::copy(lambda.begin(), lambda.end(), w.lambda_.begin());
  w.z_ = z;
  return w;
}

AffineElement AffineElement::simple_reflection(int n, int i) {
  if (n < 2) throw std::invalid_argument("simple reflections need rank >= 2");
  if (i < 0 || i >= n) throw std::invalid_argument("affine simple reflection index out of range: " + std::to_string(i));
  if (i > 0) {
    AffineElement w = identity(n);
    w.z_ = Permutation::simple_reflection(n, i);
    return w;
  }
  // (1 n) t^{(-1,0,...,0,1)} = t^{(1,0,...,0,-1)} (1 n)
  AffineElement w = identity(n);
  w.z_ = Permutation::transposition(n, 0, n - 1);
  w.lambda_[0] = 1;
  w.lambda_[static_cast<std::size_t>(n - 1)] = -1;
  return w;
}

AffineElement AffineElement::from_word(int n, std::span<const int> word) {
  AffineElement w = identity(n);
  for (int i : word) w = w * simple_reflection(n, i);
  return w;
}

AffineElement AffineElement::inverse() const {
  // (t^lam z)^{-1} = t^{-z^{-1} lam} z^{-1}
  AffineElement r;
  r.z_ = z_.inverse();
  const Coweight moved = r.z_.act(lambda_);
  for (int i = 0; i < rank(); ++i) r.lambda_[static_cast<std::size_t>(i)] = -moved[static_cast<std::size_t>(i)];
  return r;
}

AffineElement AffineElement::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  AffineElement result = identity(rank());
  AffineElement base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

AffineElement AffineElement::times_simple(int i) const {
  // Right multiplication by a simple reflection permutes positions.
  const int n = rank();
  AffineElement r = *this;
  if (i > 0) {
    std::swap(r.z_.img_[static_cast<std::size_t>(i - 1)], r.z_.img_[static_cast<std::size_t>(i)]);
    return r;
  }
  // t^lam z . t^{e_1 - e_n} (1 n)
  r.lambda_[z_.img_[0]] += 1;
  r.lambda_[z_.img_[static_cast<std::size_t>(n - 1)]] -= 1;
  std::swap(r.z_.img_[0], r.z_.img_[static_cast<std::size_t>(n - 1)]);
  return r;
}

AffineElement AffineElement::conjugate_by_simple(int i) const {
  return simple_reflection(rank(), i) * times_simple(i);
}

std::size_t AffineElement::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(lambda_[static_cast<std::size_t>(i)]))) * 0x100000001b3ULL;
    h = (h ^ z_.img_[static_cast<std::size_t>(i)]) * 0x100000001b3ULL;
  }
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

Decomposition decompose(const AffineElement& w) {
  const int n = w.rank();
  const Permutation& z = w.finite();
  const Coweight& lambda = w.translation_array();
  // v = z^{-1} lam, i.e. v_i = lam_{z(i)}.
  Coweight v{};
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(z(i))];
  // y^{-1} lists positions of v in stable decreasing order.
  std::array<int, kMaxRank> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](int a, int b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
  const Permutation y_inv = Permutation::from_images(std::span<const int>(order.data(), static_cast<std::size_t>(n)));
  Decomposition d;
  d.n = n;
  d.y = y_inv.inverse();
  for (int k = 0; k < n; ++k) d.mu[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  d.x = z * y_inv;
  return d;
}

int affine_length(const AffineElement& w) {
  const Decomposition d = decompose(w);
  return static_cast<int>(pair_2rho(d.mu_span())) + d.x.length() - d.y.length();
}

NewtonPoint newton_point(const AffineElement& w) {
  AffineElement p = w;
  int k = 1;
  while (!p.finite().is_identity()) {
    p = p * w;
    ++k;
  }
  std::vector<Rational> coords;
  for (int v : p.translation()) coords.emplace_back(v, k);
  return NewtonPoint::dominant_of(std::move(coords));
}

int reflection_length(const Permutation& u) { return u.rank() - u.cycle_count(); }

DemazurePair demazure_products(const Permutation& a, const Permutation& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("demazure_products: rank mismatch");
  Permutation star = a;
  Permutation down = a;
  for (int letter : b.reduced_word()) {
    const Permutation s = Permutation::simple_reflection(a.rank(), letter);
    // u s_k is longer iff u(k-1) < u(k).
    if (star(letter - 1) < star(letter)) star = star * s;
    if (down(letter - 1) > down(letter)) down = down * s;
  }
  return {star, down};
}

std::vector<ShiftNeighbor> cyclic_shift_neighbors(const AffineElement& w) {
  std::vector<ShiftNeighbor> out;
  const int len = affine_length(w);
  for (int i = 0; i < w.rank(); ++i) {
    AffineElement c = w.conjugate_by_simple(i);
    const int lc = affine_length(c);
    if (lc == len) {
      out.push_back({i, std::move(c), ShiftKind::kEqualLength});
    } else if (lc < len) {
      out.push_back({i, std::move(c), ShiftKind::kLengthDrop});
    }
  }
  return out;
}

}  // namespace adlv
