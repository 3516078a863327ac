#include "natdist/rulespace.hpp"

#include <algorithm>
#include <limits>

namespace natdist {

namespace {

void check_dims(int symbols, int states) {
  if (symbols < 1) throw ConfigError("symbol count must be >= 1");
  if (states < 1) throw ConfigError("state count must be >= 1");
}

}  // namespace

int encode_action(const TmAction& a, int states) {
  return static_cast<int>(a.write) * 2 * states + static_cast<int>(a.move) * states +
         (a.next_state - 1);
}

TmAction decode_action(int code, int symbols, int states) {
  const int space = 2 * symbols * states;
  if (code < 0 || code >= space) throw ConfigError("action code out of range");
  TmAction a;
  a.write = static_cast<Symbol>(code / (2 * states));
  const int rem = code % (2 * states);
  a.move = static_cast<Move>(rem / states);
  a.next_state = rem % states + 1;
  return a;
}

std::uint64_t tm_space_size(int symbols, int states) {
  check_dims(symbols, states);
  const std::uint64_t base = 2ull * static_cast<std::uint64_t>(symbols) *
                             static_cast<std::uint64_t>(states);
  const std::uint64_t exponent = static_cast<std::uint64_t>(symbols) *
                                 static_cast<std::uint64_t>(states);
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapacityError("rule space (2sk)^(sk) overflows 64-bit index arithmetic for s=" +
                          std::to_string(symbols) + ", k=" + std::to_string(states));
    }
    result *= base;
  }
  return result;
}

TmProgram decode_tm(std::uint64_t index, int symbols, int states) {
  const std::uint64_t space = tm_space_size(symbols, states);
  if (index >= space) throw std::out_of_range("program index out of range");
  const std::uint64_t base = 2ull * static_cast<std::uint64_t>(symbols) *
                             static_cast<std::uint64_t>(states);
  TmProgram p;
  p.symbols = symbols;
  p.states = states;
  p.index = index;
  p.table.resize(static_cast<std::size_t>(symbols) * static_cast<std::size_t>(states));
  std::uint64_t rest = index;
  for (auto& slot : p.table) {
    slot = decode_action(static_cast<int>(rest % base), symbols, states);
    rest /= base;
  }
  return p;
}

std::uint64_t encode_tm(const TmProgram& program) {
  check_dims(program.symbols, program.states);
  const std::size_t slots = static_cast<std::size_t>(program.symbols) *
                            static_cast<std::size_t>(program.states);
  if (program.table.size() != slots) throw ConfigError("transition table is not total");
  const std::uint64_t base = 2ull * static_cast<std::uint64_t>(program.symbols) *
                             static_cast<std::uint64_t>(program.states);
  std::uint64_t index = 0;
  for (std::size_t j = program.table.size(); j-- > 0;) {
    index = index * base + static_cast<std::uint64_t>(
                               encode_action(program.table[j], program.states));
  }
  return index;
}

TmProgram swap_symbols(const TmProgram& program) {
  TmProgram dual = program;
  const int s = program.symbols;
  for (int state = 1; state <= program.states; ++state) {
    for (int scanned = 0; scanned < s; ++scanned) {
      TmAction a = program.action(state, static_cast<Symbol>(s - 1 - scanned));
      a.write = static_cast<Symbol>(s - 1 - a.write);
      dual.table[static_cast<std::size_t>(state - 1) * static_cast<std::size_t>(s) +
                 static_cast<std::size_t>(scanned)] = a;
    }
  }
  dual.index = encode_tm(dual);
  return dual;
}

TmConfiguration::TmConfiguration(Symbol background, std::uint64_t capacity_hint)
    : background_(background) {
  // After t steps the head can reach cells in [-t, t].
  const std::int64_t reach = static_cast<std::int64_t>(std::min<std::uint64_t>(
      capacity_hint, 1u << 20));
  tape_.assign(static_cast<std::size_t>(2 * reach + 1), background);
  origin_ = reach;
}

Symbol TmConfiguration::at(std::int64_t cell) const {
  const std::int64_t i = origin_ + cell;
  if (i < 0 || i >= static_cast<std::int64_t>(tape_.size())) return background_;
  return tape_[static_cast<std::size_t>(i)];
}

void TmConfiguration::grow_to(std::int64_t cell) {
  std::int64_t i = origin_ + cell;
  while (i < 0 || i >= static_cast<std::int64_t>(tape_.size())) {
    const std::size_t old_size = tape_.size();
    const std::size_t grow = old_size + 1;
    if (i < 0) {
      tape_.insert(tape_.begin(), grow, background_);
      origin_ += static_cast<std::int64_t>(grow);
    } else {
      tape_.insert(tape_.end(), grow, background_);
    }
    i = origin_ + cell;
  }
}

void TmConfiguration::step(const TmProgram& program) {
  if (background_ >= program.symbols) {
    throw ConfigError("background symbol outside the program's alphabet");
  }
  grow_to(head_);
  const Symbol scanned = tape_[static_cast<std::size_t>(origin_ + head_)];
  const TmAction& a = program.action(state_, scanned);
  tape_[static_cast<std::size_t>(origin_ + head_)] = a.write;
  head_ += (a.move == Move::Right) ? 1 : -1;
  grow_to(head_);
  visited_min_ = std::min(visited_min_, head_);
  visited_max_ = std::max(visited_max_, head_);
  state_ = a.next_state;
  ++step_;
}

std::string TmConfiguration::visited_window() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(visited_max_ - visited_min_ + 1));
  for (std::int64_t c = visited_min_; c <= visited_max_; ++c) {
    out.push_back(static_cast<char>('0' + at(c)));
  }
  return out;
}

TmRunResult run_tm(const TmProgram& program, Symbol background, std::uint64_t steps) {
  TmConfiguration config(background, steps);
  for (std::uint64_t i = 0; i < steps; ++i) config.step(program);
  std::string output = config.visited_window();
  return TmRunResult{std::move(output), std::move(config)};
}

std::vector<EcaRule> enumerate_eca() {
  std::vector<EcaRule> rules(kEcaRuleCount);
  for (int i = 0; i < kEcaRuleCount; ++i) {
    rules[static_cast<std::size_t>(i)].number = static_cast<std::uint8_t>(i);
  }
  return rules;
}

std::string EcaRow::to_string() const {
  std::string out;
  out.reserve(cells.size());
  for (Symbol c : cells) out.push_back(static_cast<char>('0' + c));
  return out;
}

EcaRow eca_seed_row(Symbol background) {
  EcaRow row;
  row.cells = {static_cast<Symbol>(1 - background)};
  row.origin_offset = 0;
  row.background = background;
  row.step = 0;
  return row;
}

EcaRow step_eca(const EcaRule& rule, const EcaRow& row) {
  const std::int64_t old_len = static_cast<std::int64_t>(row.cells.size());
  EcaRow next;
  next.cells.resize(static_cast<std::size_t>(old_len + 2));
  next.origin_offset = row.origin_offset + 1;
  next.background = rule.next_cell(row.background, row.background, row.background);
  next.step = row.step + 1;

  auto cell = [&](std::int64_t j) -> Symbol {
    if (j < 0 || j >= old_len) return row.background;
    return row.cells[static_cast<std::size_t>(j)];
  };
  for (std::int64_t i = 0; i < old_len + 2; ++i) {
    const std::int64_t j = i - 1;  // position in the old row's coordinates
    next.cells[static_cast<std::size_t>(i)] = rule.next_cell(cell(j - 1), cell(j), cell(j + 1));
  }
  return next;
}

std::vector<EcaRow> run_eca(const EcaRule& rule, Symbol seed_background, std::uint64_t steps) {
  std::vector<EcaRow> rows;
  rows.reserve(static_cast<std::size_t>(steps + 1));
  rows.push_back(eca_seed_row(seed_background));
  for (std::uint64_t t = 0; t < steps; ++t) rows.push_back(step_eca(rule, rows.back()));
  return rows;
}

EcaRow run_eca_final(const EcaRule& rule, Symbol seed_background, std::uint64_t steps) {
  EcaRow row = eca_seed_row(seed_background);
  for (std::uint64_t t = 0; t < steps; ++t) row = step_eca(rule, row);
  return row;
}

}  // namespace natdist
