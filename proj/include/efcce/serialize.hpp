#pragma once

// Text format for sequence-form games:
//
//   efg-seq 1 <num_players>
//   treeplex <i>
//   infoset <id> parent=<seq> actions=<k>
//   ...
//   terminals <count>
//   t <chance_prob> <seq_1> ... <seq_n> <payoff_1> ... <payoff_n>
//
// Infoset ids run 0, 1, ... within each block and sequences are numbered in
// listing order (sequence 0 is the empty sequence), so a parent must belong
// to an earlier infoset. Reals are written as shortest round-trip decimals.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "efcce/game.hpp"
#include "efcce/treeplex.hpp"

namespace efcce {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string format_real(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("cannot format real");
  return std::string(buf, end);
}

inline void save(const Game& game, std::ostream& out) {
  const int n = game.num_players();
  out << "efg-seq 1 " << n << '\n';
  for (int i = 0; i < n; ++i) {
    const Treeplex& tp = game.treeplex(i);
    out << "treeplex " << i << '\n';
    for (int k = 0; k < tp.num_infosets(); ++k) {
      out << "infoset " << k << " parent=" << tp.infoset(k).parent_seq
          << " actions=" << tp.infoset(k).num_actions << '\n';
    }
  }
  out << "terminals " << game.num_terminals() << '\n';
  std::string line;
  for (std::size_t z = 0; z < game.num_terminals(); ++z) {
    const TerminalEntry t = game.terminal(z);
    line = "t ";
    line += format_real(t.chance_prob);
    for (int s : t.last_seq) (line += ' ') += std::to_string(s);
    for (double u : t.payoffs) (line += ' ') += format_real(u);
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write failed");
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split on whitespace; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, text_)) {
      ++line_;
      if (!text_.empty() && text_.back() == '\r') text_.pop_back();
      tokens.clear();
      std::string_view rest(text_);
      while (!rest.empty()) {
        const auto b = rest.find_first_not_of(" \t");
        if (b == std::string_view::npos) break;
        rest.remove_prefix(b);
        const auto e = rest.find_first_of(" \t");
        tokens.push_back(rest.substr(0, e));
        rest.remove_prefix(e == std::string_view::npos ? rest.size() : e);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  long long integer(std::string_view tok) const {
    long long v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      fail("expected an integer, got '" + std::string(tok) + "'");
    }
    return v;
  }

  double real(std::string_view tok) const {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      fail("expected a real number, got '" + std::string(tok) + "'");
    }
    return v;
  }

  // Value of a `key=value` token.
  long long keyed(std::string_view tok, std::string_view key) const {
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=') {
      fail("expected " + std::string(key) + "=<integer>, got '" + std::string(tok) + "'");
    }
    return integer(tok.substr(key.size() + 1));
  }

 private:
  std::istream& in_;
  std::string text_;
  std::size_t line_ = 0;
};

}  // namespace detail

inline Game load(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw ParseError(reader.line(), "empty input");
  if (tok.size() != 3 || tok[0] != "efg-seq") reader.fail("expected header 'efg-seq <version> <players>'");
  if (reader.integer(tok[1]) != 1) reader.fail("unsupported efg-seq version " + std::string(tok[1]));
  const long long n = reader.integer(tok[2]);
  if (n < 1 || n > 1024) reader.fail("number of players must be in [1, 1024]");

  std::vector<Treeplex> treeplexes;
  // listing order -> canonical sequence numbering (the identity for files
  // written by save)
  std::vector<std::vector<int>> remap(n);
  bool have_line = reader.next(tok);
  for (long long i = 0; i < n; ++i) {
    if (!have_line || tok.size() != 2 || tok[0] != "treeplex" || reader.integer(tok[1]) != i) {
      reader.fail("expected 'treeplex " + std::to_string(i) + "'");
    }
    std::vector<InfosetSpec> specs;
    int num_seqs = 1;
    while ((have_line = reader.next(tok)) && tok[0] == "infoset") {
      if (tok.size() != 4) reader.fail("expected 'infoset <id> parent=<seq> actions=<k>'");
      if (reader.integer(tok[1]) != static_cast<long long>(specs.size())) {
        reader.fail("infoset ids must run 0, 1, ... in listing order");
      }
      const long long parent = reader.keyed(tok[2], "parent");
      const long long actions = reader.keyed(tok[3], "actions");
      if (actions < 1) reader.fail("infoset needs at least one action");
      if (parent < 0 || parent >= num_seqs) {
        reader.fail("parent sequence " + std::to_string(parent) +
                    " is not defined by an earlier infoset (infosets must be listed in topological order)");
      }
      specs.push_back({static_cast<int>(parent), static_cast<int>(actions), std::string(tok[1])});
      num_seqs += static_cast<int>(actions);
    }
    treeplexes.push_back(Treeplex::from_infosets(static_cast<int>(i), specs, &remap[i]));
  }

  if (!have_line || tok.size() != 2 || tok[0] != "terminals") reader.fail("expected 'terminals <count>'");
  const long long count = reader.integer(tok[1]);
  if (count < 0) reader.fail("negative terminal count");
  Game game(std::move(treeplexes));
  std::vector<int> seqs(n);
  std::vector<double> pays(n);
  for (long long z = 0; z < count; ++z) {
    if (!reader.next(tok)) reader.fail("expected " + std::to_string(count) + " terminals, got " + std::to_string(z));
    if (tok[0] != "t" || tok.size() != static_cast<std::size_t>(2 + 2 * n)) {
      reader.fail("expected 't <prob> <" + std::to_string(n) + " sequences> <" + std::to_string(n) + " payoffs>'");
    }
    const double prob = reader.real(tok[1]);
    if (!(prob > 0.0 && prob <= 1.0)) reader.fail("chance probability outside (0,1]");
    for (long long i = 0; i < n; ++i) {
      const long long s = reader.integer(tok[2 + i]);
      if (s < 0 || s >= game.treeplex(static_cast<int>(i)).num_sequences()) {
        reader.fail("sequence " + std::to_string(s) + " out of range for player " + std::to_string(i));
      }
      seqs[i] = remap[i][s];
      pays[i] = reader.real(tok[2 + n + i]);
      if (!std::isfinite(pays[i])) reader.fail("payoff is not finite");
    }
    game.add_terminal(prob, seqs, pays);
  }
  if (reader.next(tok)) reader.fail("unexpected content after the last terminal");
  return game;
}

inline std::string save_to_string(const Game& game) {
  std::ostringstream out;
  save(game, out);
  return out.str();
}

inline Game load_from_string(const std::string& text) {
  std::istringstream in(text);
  return load(in);
}

}  // namespace efcce
