#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "teamlogic/errors.hpp"
#include "teamlogic/formula.hpp"

namespace teamlogic {

// Teams are sets of binary assignments over an ordered domain of variables.
// An assignment is stored as a 64-bit code: the bit for domain()[0] is the
// most significant of the used bits, so codes sorted ascending list rows in
// lexicographic order. That makes member order canonical and equality plain.

inline constexpr std::size_t kMaxTeamWidth = 63;
inline constexpr std::size_t kDefaultFullTeamWidth = 20;
inline constexpr std::size_t kMaxAllTeamsWidth = 4;   // 2^(2^4) teams already
inline constexpr std::size_t kDefaultSplitSize = 16;  // covers of | and otimes
inline constexpr std::size_t kDefaultSubsetSize = 20; // subteams of -->

// Bit of variable `index` inside a code of the given domain width.
inline bool code_bit(std::uint64_t code, std::size_t width, std::size_t index) {
  return (code >> (width - 1 - index)) & 1u;
}

// Row text for a code, domain order left to right.
inline std::string row_string(std::uint64_t code, std::size_t width) {
  std::string row(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if (code_bit(code, width, i)) row[i] = '1';
  return row;
}

class Team {
 public:
  Team() = default;

  explicit Team(SymbolList domain) : domain_(std::move(domain)) {
    check_domain(domain_);
  }

  Team(SymbolList domain, std::vector<std::uint64_t> codes)
      : domain_(std::move(domain)), codes_(std::move(codes)) {
    check_domain(domain_);
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    if (!codes_.empty() && width() < kMaxTeamWidth + 1 &&
        codes_.back() >> width() != 0)
      throw std::invalid_argument("assignment code wider than the team domain");
  }

  const SymbolList& domain() const noexcept { return domain_; }
  std::size_t width() const noexcept { return domain_.size(); }
  const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }

  bool contains(std::uint64_t code) const {
    return std::binary_search(codes_.begin(), codes_.end(), code);
  }

  void insert(std::uint64_t code) {
    if (width() == 0 && code != 0)
      throw std::invalid_argument("nonzero code over the empty domain");
    if (width() > 0 && width() <= kMaxTeamWidth && code >> width() != 0)
      throw std::invalid_argument("assignment code wider than the team domain");
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) codes_.insert(it, code);
  }

  // Value of `symbol` under member `code`; the symbol must be in the domain.
  bool value(std::uint64_t code, const PropSymbol& symbol) const {
    return code_bit(code, width(), index_of(symbol));
  }

  std::size_t index_of(const PropSymbol& symbol) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
      if (domain_[i] == symbol) return i;
    throw std::invalid_argument("variable '" + symbol.name() +
                                "' is not in the team domain");
  }

  bool in_domain(const PropSymbol& symbol) const {
    for (const auto& d : domain_)
      if (d == symbol) return true;
    return false;
  }

  friend bool operator==(const Team& a, const Team& b) {
    return a.domain_ == b.domain_ && a.codes_ == b.codes_;
  }

 private:
  static void check_domain(const SymbolList& domain) {
    if (domain.size() > kMaxTeamWidth)
      throw LimitError("team domain limited to " +
                       std::to_string(kMaxTeamWidth) + " variables");
    std::unordered_set<std::string> seen;
    for (const auto& s : domain)
      if (!seen.insert(s.name()).second)
        throw std::invalid_argument("duplicate variable '" + s.name() +
                                    "' in team domain");
  }

  SymbolList domain_;
  std::vector<std::uint64_t> codes_;  // sorted, unique
};

// All 2^n assignments over the domain. Materializes the full cube, so the
// width is budgeted; raise the limit knowingly.
inline Team full_team(const SymbolList& domain,
                      std::size_t max_width = kDefaultFullTeamWidth) {
  if (domain.size() > std::min(max_width, kMaxTeamWidth))
    throw LimitError("full team over " + std::to_string(domain.size()) +
                     " variables exceeds the limit of " +
                     std::to_string(std::min(max_width, kMaxTeamWidth)));
  std::vector<std::uint64_t> codes(std::size_t{1} << domain.size());
  for (std::uint64_t c = 0; c < codes.size(); ++c) codes[c] = c;
  return Team(domain, std::move(codes));
}

// Subset of the full cube picked out by a 2^n-bit mask (bit c = code c).
// Sweep plumbing for solvers and tests; width capped at 6 by the mask type.
inline Team team_from_universe_mask(const SymbolList& domain,
                                    std::uint64_t mask) {
  if (domain.size() > 6)
    throw LimitError("universe masks cover at most 6 variables");
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << domain.size()); ++c)
    if ((mask >> c) & 1u) codes.push_back(c);
  return Team(domain, std::move(codes));
}

// Every team over the domain, empty team first, in universe-mask order.
inline std::vector<Team> all_teams(const SymbolList& domain,
                                   std::size_t max_width = kMaxAllTeamsWidth) {
  if (domain.size() > std::min(max_width, kMaxAllTeamsWidth))
    throw LimitError("all_teams materializes 2^(2^n) teams; n is limited to " +
                     std::to_string(kMaxAllTeamsWidth));
  std::uint64_t universe = std::uint64_t{1} << domain.size();
  std::vector<Team> out;
  out.reserve(std::size_t{1} << universe);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe); ++mask)
    out.push_back(team_from_universe_mask(domain, mask));
  return out;
}

// ---------------------------------------------------------------------------
// Enumerators. Iterator-ish: while (e.valid()) { use e.current(); e.next(); }
// ---------------------------------------------------------------------------

// All pairs (Y, Z) with Y ∪ Z = X, overlap allowed: one trit per member
// (0: Z only, 1: Y only, 2: both), first member least significant. For a
// one-member team the order is (∅,X), (X,∅), (X,X).
class CoverEnumerator {
 public:
  explicit CoverEnumerator(const Team& team,
                           std::size_t max_size = kDefaultSplitSize)
      : team_(&team), trits_(team.size(), 0) {
    if (team.size() > max_size)
      throw LimitError("cover enumeration over " +
                       std::to_string(team.size()) +
                       " members exceeds the split budget of " +
                       std::to_string(max_size));
  }

  bool valid() const noexcept { return valid_; }

  std::pair<Team, Team> current() const {
    std::vector<std::uint64_t> y, z;
    for (std::size_t i = 0; i < trits_.size(); ++i) {
      std::uint64_t code = team_->codes()[i];
      if (trits_[i] != 0) y.push_back(code);
      if (trits_[i] != 1) z.push_back(code);
    }
    return {Team(team_->domain(), std::move(y)),
            Team(team_->domain(), std::move(z))};
  }

  void next() {
    for (std::size_t i = 0; i < trits_.size(); ++i) {
      if (++trits_[i] < 3) return;
      trits_[i] = 0;
    }
    valid_ = false;  // odometer wrapped
  }

 private:
  const Team* team_;
  std::vector<std::uint8_t> trits_;
  bool valid_ = true;
};

// All Y ⊆ X in member-mask order, ∅ first, X last.
class SubteamEnumerator {
 public:
  explicit SubteamEnumerator(const Team& team,
                             std::size_t max_size = kDefaultSubsetSize)
      : team_(&team) {
    if (team.size() > max_size)
      throw LimitError("subteam enumeration over " +
                       std::to_string(team.size()) +
                       " members exceeds the subset budget of " +
                       std::to_string(max_size));
    end_ = std::uint64_t{1} << team.size();
  }

  bool valid() const noexcept { return mask_ < end_; }

  Team current() const {
    std::vector<std::uint64_t> codes;
    for (std::size_t i = 0; i < team_->size(); ++i)
      if ((mask_ >> i) & 1u) codes.push_back(team_->codes()[i]);
    return Team(team_->domain(), std::move(codes));
  }

  void next() { ++mask_; }

 private:
  const Team* team_;
  std::uint64_t mask_ = 0;
  std::uint64_t end_ = 0;
};

// Projection onto a tuple of distinct domain variables, tuple order.
inline Team project(const Team& team, const SymbolList& tuple) {
  std::vector<std::size_t> positions;
  positions.reserve(tuple.size());
  for (const auto& s : tuple) positions.push_back(team.index_of(s));
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] == tuple[j])
        throw std::invalid_argument("projection tuple repeats '" +
                                    tuple[i].name() + "'");
  std::vector<std::uint64_t> codes;
  codes.reserve(team.size());
  for (std::uint64_t code : team.codes()) {
    std::uint64_t projected = 0;
    for (std::size_t pos : positions)
      projected = (projected << 1) | (code_bit(code, team.width(), pos) ? 1u : 0u);
    codes.push_back(projected);
  }
  return Team(tuple, std::move(codes));
}

// ---------------------------------------------------------------------------
// Team files. First content line names the domain; each further line is one
// row of 0/1 characters, one per variable. '#' starts a comment, blank lines
// are skipped, duplicate rows collapse.
// ---------------------------------------------------------------------------

inline Team read_team(std::istream& in) {
  SymbolList domain;
  std::vector<std::uint64_t> codes;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    if (!have_header) {
      std::string word;
      while (fields >> word) {
        if (!PropSymbol::valid_name(word))
          throw ParseError("invalid variable name '" + word + "'", line_no, 1);
        domain.emplace_back(word);
      }
      if (domain.empty()) continue;  // blank or comment line before header
      have_header = true;
      if (domain.size() > kMaxTeamWidth)
        throw LimitError("team domain limited to " +
                         std::to_string(kMaxTeamWidth) + " variables");
      std::unordered_set<std::string> seen;
      for (const auto& s : domain)
        if (!seen.insert(s.name()).second)
          throw ParseError("duplicate variable '" + s.name() + "' in header",
                           line_no, 1);
      continue;
    }
    std::string row;
    if (!(fields >> row)) continue;
    std::string extra;
    if (fields >> extra)
      throw ParseError("one row per line; unexpected '" + extra + "'",
                       line_no, 1);
    if (row.size() != domain.size())
      throw ParseError("row '" + row + "' has " +
                           std::to_string(row.size()) + " entries, domain has " +
                           std::to_string(domain.size()),
                       line_no, 1);
    std::uint64_t code = 0;
    for (char c : row) {
      if (c != '0' && c != '1')
        throw ParseError("row entries must be 0 or 1", line_no, 1);
      code = (code << 1) | (c == '1' ? 1u : 0u);
    }
    codes.push_back(code);
  }
  if (!have_header)
    throw ParseError("team file has no header line", line_no == 0 ? 1 : line_no, 1);
  return Team(std::move(domain), std::move(codes));
}

inline Team team_from_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_team(in);
}

inline Team read_team_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open team file '" + path + "'");
  return read_team(in);
}

inline void write_team(std::ostream& out, const Team& team) {
  if (team.width() == 0)
    throw std::invalid_argument("cannot write a team over the empty domain");
  for (std::size_t i = 0; i < team.width(); ++i) {
    if (i) out << ' ';
    out << team.domain()[i].name();
  }
  out << '\n';
  for (std::uint64_t code : team.codes())
    out << row_string(code, team.width()) << '\n';
}

inline std::string team_to_string(const Team& team) {
  std::ostringstream out;
  write_team(out, team);
  return out.str();
}

}  // namespace teamlogic
