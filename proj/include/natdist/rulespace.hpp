#pragma once

// Deterministic engines and exhaustive enumerators for the two rule spaces:
// s-symbol / k-state Turing machines and radius-1 binary cellular automata.

#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "natdist/errors.hpp"

namespace natdist {

using Symbol = std::uint8_t;

enum class Move : std::uint8_t { Left = 0, Right = 1 };

// One transition: the (write, move, next state) tail of the 5-tuple rule.
// Encodable as an integer in [0, 2sk):
//   code = write*(2k) + move*k + (next_state - 1), with Left=0, Right=1.
struct TmAction {
  Symbol write = 0;
  Move move = Move::Left;
  int next_state = 1;  // 1..k

  bool operator==(const TmAction&) const = default;
};

int encode_action(const TmAction& a, int states);
TmAction decode_action(int code, int symbols, int states);

// A total transition table: one action per (state, scanned symbol) pair.
// The enumeration ordinal `index` is the table read as a base-(2sk) number
// whose digit j (least significant = slot 0) is the action code of slot
// j = (state-1)*symbols + scanned.
struct TmProgram {
  int symbols = 2;
  int states = 2;
  std::uint64_t index = 0;
  std::vector<TmAction> table;  // size symbols*states, slot order above

  const TmAction& action(int state, Symbol scanned) const {
    return table[static_cast<std::size_t>(state - 1) * static_cast<std::size_t>(symbols) +
                 scanned];
  }

  bool operator==(const TmProgram&) const = default;
};

// (2sk)^(sk); throws CapacityError if the count does not fit in 64 bits.
std::uint64_t tm_space_size(int symbols, int states);

TmProgram decode_tm(std::uint64_t index, int symbols, int states);
std::uint64_t encode_tm(const TmProgram& program);

// Symbol-reversal dual: complements every written symbol (c -> s-1-c) and
// permutes the scanned-symbol slots the same way. Running the dual on the
// complemented background yields the complemented output.
TmProgram swap_symbols(const TmProgram& program);

// Lazy ascending-index stream over the whole (s,k) table space.
class TmEnumeration {
 public:
  TmEnumeration(int symbols, int states)
      : symbols_(symbols), states_(states), size_(tm_space_size(symbols, states)) {}

  std::uint64_t size() const { return size_; }
  TmProgram at(std::uint64_t index) const { return decode_tm(index, symbols_, states_); }

  class iterator {
   public:
    using value_type = TmProgram;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(const TmEnumeration* e, std::uint64_t i) : enum_(e), index_(i) {}
    TmProgram operator*() const { return enum_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator c = *this;
      ++index_;
      return c;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const TmEnumeration* enum_;
    std::uint64_t index_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, size_); }

 private:
  int symbols_;
  int states_;
  std::uint64_t size_;
};

// Full machine configuration: two-way-unbounded tape over a uniform
// background, head position, state, visited extent, elapsed steps.
// The visited extent covers every cell the head has occupied, including the
// resting cell after the final move.
class TmConfiguration {
 public:
  // capacity_hint: planned number of steps; the tape is preallocated to the
  // reachable extent and grows on demand if stepped further.
  explicit TmConfiguration(Symbol background, std::uint64_t capacity_hint = 0);

  void step(const TmProgram& program);

  Symbol at(std::int64_t cell) const;
  std::int64_t head() const { return head_; }
  int state() const { return state_; }
  std::int64_t visited_min() const { return visited_min_; }
  std::int64_t visited_max() const { return visited_max_; }
  std::uint64_t step_count() const { return step_; }
  Symbol background() const { return background_; }

  // Tape content over [visited_min, visited_max] as '0'/'1' characters.
  std::string visited_window() const;

 private:
  void grow_to(std::int64_t cell);

  std::vector<Symbol> tape_;
  std::int64_t origin_;  // tape_[origin_] is cell 0
  std::int64_t head_ = 0;
  int state_ = 1;
  std::int64_t visited_min_ = 0;
  std::int64_t visited_max_ = 0;
  std::uint64_t step_ = 0;
  Symbol background_;
};

struct TmRunResult {
  std::string output;
  TmConfiguration final;
};

// Start in state 1, head on cell 0, all cells = background; run exactly
// `steps` transitions (no halting in this rule space).
TmRunResult run_tm(const TmProgram& program, Symbol background, std::uint64_t steps);

// Radius-1 binary CA rule. table(b2 b1 b0) = bit (4*b2 + 2*b1 + b0) of
// `number`, with b2 the left neighbor.
struct EcaRule {
  std::uint8_t number = 0;

  Symbol next_cell(Symbol left, Symbol center, Symbol right) const {
    return static_cast<Symbol>((number >> ((left << 2) | (center << 1) | right)) & 1);
  }

  bool operator==(const EcaRule&) const = default;
};

inline constexpr int kEcaRuleCount = 256;

// Rules 0..255 in ascending number.
std::vector<EcaRule> enumerate_eca();

// One row of the light cone: 2t+1 cells after t steps, everything outside
// equal to `background` (which itself evolves under rule(b,b,b)).
struct EcaRow {
  std::vector<Symbol> cells;
  std::int64_t origin_offset = 0;  // position of the seed cell within `cells`
  Symbol background = 0;
  std::uint64_t step = 0;

  std::string to_string() const;
};

// Row 0: a single seed cell, the complement of the background.
EcaRow eca_seed_row(Symbol background);

EcaRow step_eca(const EcaRule& rule, const EcaRow& row);

// Rows 0..steps inclusive.
std::vector<EcaRow> run_eca(const EcaRule& rule, Symbol seed_background, std::uint64_t steps);

// Just the final row; avoids keeping the whole history.
EcaRow run_eca_final(const EcaRule& rule, Symbol seed_background, std::uint64_t steps);

}  // namespace natdist
