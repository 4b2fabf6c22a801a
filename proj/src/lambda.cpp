#include "ltaction/lambda.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace ltaction::lambda {

bool is_lambda(const Seq& s) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] < 0) return false;
    if (j == 0 && s[0] % 2 != 0) return false;
    if (j > 0 && (s[j] <= s[j - 1] || (s[j] - s[j - 1]) % 2 == 0)) return false;
  }
  return true;
}

std::int64_t q_value(const Seq& s, std::int64_t q) {
  std::int64_t total = 0;
  for (int e : s) {
    std::int64_t term = 1;
    for (int k = 0; k < e; ++k) {
      if (term > INT64_MAX / q) throw std::overflow_error("q_value overflow");
      term *= q;
    }
    total += term;
  }
  return total;
}

namespace {

void search(std::int64_t q, std::int64_t remaining, int next_min, Seq& cur, std::vector<Seq>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  std::int64_t power = 1;
  for (int k = 0; k < next_min; ++k) {
    if (power > remaining / q) return;
    power *= q;
  }
  for (int e = next_min; power <= remaining; e += 2) {
    cur.push_back(e);
    search(q, remaining - power, e + 1, cur, out);
    cur.pop_back();
    if (power > remaining / (q * q)) break;
    power *= q * q;
  }
}

struct Cache {
  std::shared_mutex mutex;
  std::map<std::tuple<std::int64_t, std::int64_t, int>, std::vector<Seq>> lists;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

const std::vector<Seq>& enumerate_lambda(std::int64_t q, std::int64_t n, Parity parity) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const auto key = std::make_tuple(q, n, static_cast<int>(parity));
  Cache& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.lists.find(key);
    if (it != c.lists.end()) return it->second;
  }
  std::vector<Seq> all;
  Seq cur;
  search(q, n, 0, cur, all);
  std::vector<Seq> filtered;
  for (auto& s : all) {
    const bool odd = s.size() % 2 == 1;
    if (parity == Parity::All || (parity == Parity::Odd) == odd) filtered.push_back(std::move(s));
  }
  std::unique_lock lock(c.mutex);
  return c.lists.emplace(key, std::move(filtered)).first->second;
}

std::vector<std::int64_t> lambda_values(std::int64_t q, std::int64_t bound, Parity parity) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 0; n <= bound; ++n) {
    if (!enumerate_lambda(q, n, parity).empty()) out.push_back(n);
  }
  return out;
}

WeakCompositions::iterator::iterator(int total, int length) {
  if (total < 0 || length < 0 || (length == 0 && total != 0)) return;
  cur_.assign(static_cast<std::size_t>(length), 0);
  if (length > 0) cur_.back() = total;
  done_ = false;
}

WeakCompositions::iterator& WeakCompositions::iterator::operator++() {
  // Rightmost i < length - 1 whose suffix still has something to move left.
  int suffix = cur_.empty() ? 0 : cur_.back();
  for (int i = static_cast<int>(cur_.size()) - 2; i >= 0; --i) {
    if (suffix > 0) {
      cur_[static_cast<std::size_t>(i)] += 1;
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j + 1 < cur_.size(); ++j) cur_[j] = 0;
      cur_.back() = suffix - 1;
      return *this;
    }
    suffix += cur_[static_cast<std::size_t>(i)];
  }
  done_ = true;
  cur_.clear();
  return *this;
}

Compositions::iterator::iterator(int total, int below) : total_(total), below_(below) {
  if (total < 1 || below < 2) return;
  cur_.assign(static_cast<std::size_t>(total), 1);
  done_ = false;
}

Compositions::iterator& Compositions::iterator::operator++() {
  int prefix = std::accumulate(cur_.begin(), cur_.end(), 0);
  for (int i = static_cast<int>(cur_.size()) - 1; i >= 0; --i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    prefix -= cur_[ui];
    const int bumped = cur_[ui] + 1;
    const int rest = total_ - prefix - bumped;
    if (bumped < below_ && rest >= 0) {
      cur_.resize(ui + 1);
      cur_[ui] = bumped;
      cur_.insert(cur_.end(), static_cast<std::size_t>(rest), 1);
      return *this;
    }
  }
  done_ = true;
  cur_.clear();
  return *this;
}

}  // namespace ltaction::lambda
