#include "ghr/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "ghr/error.hpp"

namespace ghr {

namespace {

void require_cap(std::size_t m, std::size_t n) {
  if (m * n > kMaxExactPairs)
    throw Error(ErrorCode::SearchSpaceTooLarge,
                std::to_string(m) + "x" + std::to_string(n) + " exceeds the cap of " +
                    std::to_string(kMaxExactPairs) + " candidate pairs");
}

bool mask_is_surjective(std::size_t m, std::size_t n, std::uint64_t mask) {
  const std::uint64_t row_bits = (std::uint64_t{1} << n) - 1;
  std::uint64_t cols = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t row = (mask >> (i * n)) & row_bits;
    if (row == 0) return false;
    cols |= row;
  }
  return cols == row_bits;
}

double pair_gap(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const IndexPair& a,
                const IndexPair& b) {
  return std::abs(x(a.x, b.x) - y(a.y, b.y));
}

}  // namespace

// ---------------------------------------------------------------------------
// Relation / Correspondence

Relation::Relation(std::size_t m, std::size_t n, std::vector<IndexPair> pairs)
    : m_(m), n_(n), pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw Error(ErrorCode::InvalidInput, "a relation must be nonempty");
  for (const auto& p : pairs_)
    if (p.x >= m_ || p.y >= n_)
      throw Error(ErrorCode::IndexOutOfRange, "pair (" + std::to_string(p.x) + "," +
                                                  std::to_string(p.y) + ") outside " +
                                                  std::to_string(m_) + "x" + std::to_string(n_));
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool Relation::is_surjective() const {
  std::vector<char> rows(m_, 0), cols(n_, 0);
  for (const auto& p : pairs_) rows[p.x] = cols[p.y] = 1;
  return std::ranges::all_of(rows, [](char c) { return c != 0; }) &&
         std::ranges::all_of(cols, [](char c) { return c != 0; });
}

std::uint64_t Relation::mask() const {
  if (m_ * n_ > 64) throw Error(ErrorCode::SearchSpaceTooLarge, "bitmask needs m*n <= 64");
  std::uint64_t mask = 0;
  for (const auto& p : pairs_) mask |= std::uint64_t{1} << (p.x * n_ + p.y);
  return mask;
}

Correspondence::Correspondence(std::size_t m, std::size_t n, std::vector<IndexPair> pairs)
    : Correspondence(Relation(m, n, std::move(pairs))) {}

Correspondence::Correspondence(Relation rel) : Relation(std::move(rel)) {
  if (!is_surjective())
    throw Error(ErrorCode::NotACorrespondence, "a projection of the relation is not onto");
}

Correspondence Correspondence::from_mask(std::size_t m, std::size_t n, std::uint64_t mask) {
  std::vector<IndexPair> pairs;
  for (std::size_t b = 0; b < m * n; ++b)
    if ((mask >> b) & 1u) pairs.push_back({b / n, b % n});
  return Correspondence(m, n, std::move(pairs));
}

Correspondence Correspondence::identity(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, i});
  return Correspondence(n, n, std::move(pairs));
}

bool Correspondence::is_bijection() const noexcept {
  return size() == source_size() && size() == target_size();
}

Correspondence Correspondence::transposed() const {
  std::vector<IndexPair> pairs;
  pairs.reserve(size());
  for (const auto& p : this->pairs()) pairs.push_back({p.y, p.x});
  return Correspondence(target_size(), source_size(), std::move(pairs));
}

double distortion(const Relation& rel, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (rel.source_size() != x.size() || rel.target_size() != y.size())
    throw Error(ErrorCode::SizeMismatch, "relation is " + std::to_string(rel.source_size()) +
                                             "x" + std::to_string(rel.target_size()) +
                                             ", spaces are " + std::to_string(x.size()) + "x" +
                                             std::to_string(y.size()));
  double dis = 0.0;
  const auto& pairs = rel.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      dis = std::max(dis, pair_gap(x, y, pairs[a], pairs[b]));
  return dis;
}

// ---------------------------------------------------------------------------
// Enumeration

CorrespondenceStream::CorrespondenceStream(std::size_t m, std::size_t n) : m_(m), n_(n) {
  if (m == 0 || n == 0) throw Error(ErrorCode::InvalidInput, "both sets must be nonempty");
  require_cap(m, n);
  end_ = std::uint64_t{1} << (m * n);
}

std::optional<Correspondence> CorrespondenceStream::next() {
  while (++mask_ < end_)
    if (mask_is_surjective(m_, n_, mask_)) return Correspondence::from_mask(m_, n_, mask_);
  mask_ = end_ - 1;
  return std::nullopt;
}

std::uint64_t count_correspondences(std::size_t m, std::size_t n) {
  CorrespondenceStream stream(m, n);
  std::uint64_t count = 0;
  while (stream.next()) ++count;
  return count;
}

const char* to_string(GHMethod method) noexcept {
  return method == GHMethod::Exact ? "exact" : "heuristic";
}

// ---------------------------------------------------------------------------
// Exact search

namespace {

class ExactSearch {
 public:
  ExactSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y)
      : m_(x.size()), n_(y.size()), bits_(m_ * n_), gap_(bits_ * bits_),
        row_count_(m_, 0), col_count_(n_, 0), cols_uncovered_(n_) {
    for (std::size_t a = 0; a < bits_; ++a)
      for (std::size_t b = 0; b < bits_; ++b)
        gap_[a * bits_ + b] = pair_gap(x, y, {a / n_, a % n_}, {b / n_, b % n_});
    const Correspondence seed = eccentricity_matching(x, y);
    best_ = {distortion(seed, x, y), seed.size(), seed.mask()};
  }

  std::uint64_t run() {
    descend(0, 0.0);
    return std::get<2>(best_);
  }

 private:
  using Key = std::tuple<double, std::size_t, std::uint64_t>;

  double gap(std::size_t a, std::size_t b) const { return gap_[a * bits_ + b]; }

  double added_gap(std::size_t bit) const {
    double g = 0.0;
    for (std::size_t q : chosen_) g = std::max(g, gap(bit, q));
    return g;
  }

  // Called at the start of `row`: it and every later row are still empty and
  // must each receive some pair.
  double future_rows_bound(std::size_t row, double dis) const {
    for (std::size_t r = row; r < m_; ++r) {
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n_ && cheapest > dis; ++j)
        cheapest = std::min(cheapest, added_gap(r * n_ + j));
      dis = std::max(dis, cheapest);
    }
    return dis;
  }

  void descend(std::size_t bit, double dis) {
    const std::size_t card = chosen_.size();
    if (rows_covered_ == m_ && cols_uncovered_ == 0) {
      const Key key{dis, card, mask_};
      if (key < best_) best_ = key;
      return;
    }
    if (bit == bits_) return;

    const std::size_t row = bit / n_;
    const std::size_t col = bit % n_;
    const std::size_t rows_left = m_ - rows_covered_;
    const std::size_t card_bound = card + std::max(rows_left, cols_uncovered_);
    if (std::pair{dis, card_bound} > std::pair{std::get<0>(best_), std::get<1>(best_)}) return;
    if (col == 0 && std::pair{future_rows_bound(row, dis), card_bound} >
                        std::pair{std::get<0>(best_), std::get<1>(best_)})
      return;

    // include
    {
      const double next = std::max(dis, added_gap(bit));
      if (next <= std::get<0>(best_)) {
        chosen_.push_back(bit);
        mask_ |= std::uint64_t{1} << bit;
        if (row_count_[row]++ == 0) ++rows_covered_;
        if (col_count_[col]++ == 0) --cols_uncovered_;
        descend(bit + 1, next);
        if (--col_count_[col] == 0) ++cols_uncovered_;
        if (--row_count_[row] == 0) --rows_covered_;
        mask_ &= ~(std::uint64_t{1} << bit);
        chosen_.pop_back();
      }
    }
    // exclude
    const bool row_closes_empty = col == n_ - 1 && row_count_[row] == 0;
    const bool col_closes_empty = row == m_ - 1 && col_count_[col] == 0;
    if (!row_closes_empty && !col_closes_empty) descend(bit + 1, dis);
  }

  std::size_t m_, n_, bits_;
  std::vector<double> gap_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> row_count_, col_count_;
  std::size_t rows_covered_ = 0;
  std::size_t cols_uncovered_;
  std::uint64_t mask_ = 0;
  Key best_;
};

}  // namespace

GHResult gh_distance_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  require_cap(x.size(), y.size());
  const std::uint64_t mask = ExactSearch(x, y).run();
  Correspondence witness = Correspondence::from_mask(x.size(), y.size(), mask);
  const double value = 0.5 * distortion(witness, x, y);
  return {value, std::move(witness), GHMethod::Exact, true};
}

// ---------------------------------------------------------------------------
// Heuristic

Correspondence eccentricity_matching(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  auto by_eccentricity = [](const FiniteMetricSpace& s) {
    std::vector<double> ecc(s.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) ecc[i] = std::max(ecc[i], s(i, j));
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return ecc[a] < ecc[b]; });
    return order;
  };
  const auto xs = by_eccentricity(x);
  const auto ys = by_eccentricity(y);
  const std::size_t m = x.size(), n = y.size(), total = std::max(m, n);
  std::vector<IndexPair> pairs;
  for (std::size_t k = 0; k < total; ++k) pairs.push_back({xs[k * m / total], ys[k * n / total]});
  return Correspondence(m, n, std::move(pairs));
}

namespace {

// Bounded draws done by hand so the sequence does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Search state scored by (distortion, energy). Energy is the sum over pairs of
// each pair's worst gap; it separates states on the plateaus of the max.
class LocalSearch {
 public:
  LocalSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y)
      : x_(x), y_(y), m_(x.size()), n_(y.size()) {}

  void reset(const std::vector<IndexPair>& pairs) {
    pairs_ = pairs;
    member_.assign(m_ * n_, 0);
    row_count_.assign(m_, 0);
    col_count_.assign(n_, 0);
    for (const auto& p : pairs_) mark(p, +1);
    std::tie(dis_, energy_) = score(pairs_);
  }

  /// Unconditional add-then-remove steps that move the search off a local
  /// optimum without letting the next descent simply undo them.
  void kick(std::size_t strength, Rng& rng) {
    for (std::size_t step = 0; step < strength; ++step) {
      const IndexPair q{rng.below(m_), rng.below(n_)};
      if (member_[q.x * n_ + q.y]) continue;
      pairs_.push_back(q);
      mark(q, +1);
      std::vector<std::size_t> removable;
      for (std::size_t k = 0; k + 1 < pairs_.size(); ++k)
        if (row_count_[pairs_[k].x] > 1 && col_count_[pairs_[k].y] > 1) removable.push_back(k);
      if (!removable.empty()) {
        const std::size_t k = removable[rng.below(removable.size())];
        mark(pairs_[k], -1);
        pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
      }
    }
    std::tie(dis_, energy_) = score(pairs_);
  }

  /// First-improvement descent over remove, retarget and exchange moves.
  void climb(std::size_t budget, Rng& rng) {
    std::size_t spent = 0;
    while (spent < budget) {
      auto moves = neighbourhood();
      rng.shuffle(moves);
      bool improved = false;
      for (const Move& mv : moves) {
        if (spent++ >= budget) break;
        if (try_move(mv)) {
          improved = true;
          break;
        }
      }
      if (!improved) return;
    }
  }

  double distortion() const { return dis_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }

 private:
  enum class Kind { Remove, Retarget, Exchange };
  struct Move {
    Kind kind;
    std::size_t first;
    std::size_t second;   // Exchange: other pair index
    IndexPair target{};   // Retarget: replacement pair
  };

  double gap(const IndexPair& a, const IndexPair& b) const { return pair_gap(x_, y_, a, b); }

  void mark(const IndexPair& p, int delta) {
    member_[p.x * n_ + p.y] = delta > 0;
    row_count_[p.x] += static_cast<std::size_t>(delta);
    col_count_[p.y] += static_cast<std::size_t>(delta);
  }

  std::pair<double, double> score(const std::vector<IndexPair>& pairs) const {
    double dis = 0.0, energy = 0.0;
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      double worst = 0.0;
      for (std::size_t b = 0; b < pairs.size(); ++b) worst = std::max(worst, gap(pairs[a], pairs[b]));
      dis = std::max(dis, worst);
      energy += worst;
    }
    return {dis, energy};
  }

  // Incremental lower bound on the distortion after placing q: its gaps to the
  // pairs that stay.
  double gap_to_rest(const IndexPair& q, std::size_t skip1, std::size_t skip2) const {
    double g = 0.0;
    for (std::size_t r = 0; r < pairs_.size(); ++r)
      if (r != skip1 && r != skip2) g = std::max(g, gap(q, pairs_[r]));
    return g;
  }

  std::vector<Move> neighbourhood() const {
    std::vector<Move> moves;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const IndexPair p = pairs_[k];
      if (row_count_[p.x] > 1 && col_count_[p.y] > 1) moves.push_back({Kind::Remove, k, k});
      if (col_count_[p.y] > 1)
        for (std::size_t y = 0; y < n_; ++y)
          if (!member_[p.x * n_ + y]) moves.push_back({Kind::Retarget, k, k, {p.x, y}});
      if (row_count_[p.x] > 1)
        for (std::size_t x = 0; x < m_; ++x)
          if (!member_[x * n_ + p.y]) moves.push_back({Kind::Retarget, k, k, {x, p.y}});
      for (std::size_t l = k + 1; l < pairs_.size(); ++l) {
        const IndexPair q = pairs_[l];
        if (p.x != q.x && p.y != q.y && !member_[p.x * n_ + q.y] && !member_[q.x * n_ + p.y])
          moves.push_back({Kind::Exchange, k, l});
      }
    }
    return moves;
  }

  bool try_move(const Move& mv) {
    std::vector<IndexPair> next = pairs_;
    switch (mv.kind) {
      case Kind::Remove:
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(mv.first));
        break;
      case Kind::Retarget:
        if (gap_to_rest(mv.target, mv.first, mv.first) > dis_) return false;
        next[mv.first] = mv.target;
        break;
      case Kind::Exchange: {
        const IndexPair a{pairs_[mv.first].x, pairs_[mv.second].y};
        const IndexPair b{pairs_[mv.second].x, pairs_[mv.first].y};
        if (std::max(gap_to_rest(a, mv.first, mv.second), gap_to_rest(b, mv.first, mv.second)) >
            dis_)
          return false;
        next[mv.first] = a;
        next[mv.second] = b;
        break;
      }
    }
    const auto [dis, energy] = score(next);
    if (!(std::pair{dis, energy} < std::pair{dis_, energy_})) return false;
    for (const auto& p : pairs_) mark(p, -1);
    pairs_ = std::move(next);
    for (const auto& p : pairs_) mark(p, +1);
    dis_ = dis;
    energy_ = energy;
    return true;
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::size_t m_, n_;
  std::vector<IndexPair> pairs_;
  std::vector<char> member_;
  std::vector<std::size_t> row_count_, col_count_;
  double dis_ = 0.0;
  double energy_ = 0.0;
};

std::vector<IndexPair> random_correspondence(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<IndexPair> pairs;
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = rng.below(n);
    pairs.push_back({i, j});
    covered[j] = 1;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!covered[j]) pairs.push_back({rng.below(m), j});
  std::ranges::sort(pairs);
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

GHResult gh_distance_heuristic(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const HeuristicConfig& config) {
  const std::size_t m = x.size(), n = y.size();
  Rng rng(config.seed);
  LocalSearch search(x, y);

  search.reset(eccentricity_matching(x, y).pairs());
  search.climb(config.iterations, rng);
  std::vector<IndexPair> best = search.pairs();
  double best_dis = search.distortion();

  for (std::size_t r = 1; r <= config.restarts && best_dis > 0.0; ++r) {
    if (r % 2 == 1) {
      search.reset(random_correspondence(m, n, rng));
    } else {
      search.reset(best);
      search.kick(1 + rng.below(3), rng);
    }
    search.climb(config.iterations, rng);
    const double d = search.distortion();
    if (d < best_dis || (d == best_dis && search.pairs().size() < best.size())) {
      best = search.pairs();
      best_dis = d;
    }
  }

  Correspondence witness(m, n, std::move(best));
  const double value = 0.5 * distortion(witness, x, y);
  return {value, std::move(witness), GHMethod::Heuristic, false};
}

double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return 0.5 * std::abs(x.diameter() - y.diameter());
}

}  // namespace ghr
