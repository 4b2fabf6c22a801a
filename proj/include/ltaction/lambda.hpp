#pragma once

// Strictly increasing, parity-alternating sequences with even first entry,
// and the integer compositions used by the Witt-subgroup recursions.

#include <cstdint>
#include <iterator>
#include <vector>

namespace ltaction::lambda {

using Seq = std::vector<int>;

enum class Parity { All, Odd, Even };

bool is_lambda(const Seq& s);

// sum_j q^(i_j); 0 for the empty sequence.
std::int64_t q_value(const Seq& s, std::int64_t q);

/// All members of Lambda with q_value == n and length in the given parity
/// class, in lexicographic order. Results are cached; the returned reference
/// stays valid for the lifetime of the process.
const std::vector<Seq>& enumerate_lambda(std::int64_t q, std::int64_t n, Parity parity = Parity::All);

// Distinct values QI <= bound attained in the parity class, ascending.
std::vector<std::int64_t> lambda_values(std::int64_t q, std::int64_t bound, Parity parity = Parity::All);

// Streams the weak compositions of total into exactly length parts, lexicographically.
class WeakCompositions {
 public:
  WeakCompositions(int total, int length) : total_(total), length_(length) {}

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<int>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;
    iterator(int total, int length);
    reference operator*() const { return cur_; }
    pointer operator->() const { return &cur_; }
    iterator& operator++();
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || cur_ == o.cur_); }

   private:
    std::vector<int> cur_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(total_, length_); }
  iterator end() const { return iterator(); }

 private:
  int total_;
  int length_;
};

// Streams the compositions of total with every part < entries_below, lexicographically.
class Compositions {
 public:
  Compositions(int total, int entries_below) : total_(total), below_(entries_below) {}

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<int>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;
    iterator(int total, int below);
    reference operator*() const { return cur_; }
    pointer operator->() const { return &cur_; }
    iterator& operator++();
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || cur_ == o.cur_); }

   private:
    std::vector<int> cur_;
    int total_ = 0;
    int below_ = 0;
    bool done_ = true;
  };

  iterator begin() const { return iterator(total_, below_); }
  iterator end() const { return iterator(); }

 private:
  int total_;
  int below_;
};

inline WeakCompositions enumerate_weak_compositions(int total, int length) { return {total, length}; }
inline Compositions enumerate_compositions(int total, int entries_below) { return {total, entries_below}; }

}  // namespace ltaction::lambda
