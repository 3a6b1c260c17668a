// SPDX-License-Identifier: MIT
//
// Two-good menu mechanisms: menu representation, buyer best response,
// and the menu-file text format.
//
// A menu is a finite list of entries (q1, q2, t): buy good 1 with
// probability q1 and good 2 with probability q2 at price t. Every menu
// implicitly also offers the null entry (0, 0, 0), which is counted by
// menu_size but never stored.
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "menukit/common.hpp"

namespace menukit {

// Two utilities within this tolerance of each other are treated as tied
// when the buyer picks an entry.
inline constexpr double kTieTol = 1e-12;

struct MenuEntry {
  double q1 = 0.0;
  double q2 = 0.0;
  double t = 0.0;
};

struct BuyerType {
  double v1 = 0.0;
  double v2 = 0.0;
};

// Canonical menu: entries validated (0 <= q <= 1, t >= 0) and exact
// duplicate triples removed, first occurrence kept. Order is otherwise
// preserved so entry indices are stable.
class Menu {
 public:
  Menu() = default;

  explicit Menu(std::vector<MenuEntry> entries) {
    entries_.reserve(entries.size());
    for (const MenuEntry& e : entries) {
      require(e.q1 >= 0.0 && e.q1 <= 1.0 && e.q2 >= 0.0 && e.q2 <= 1.0,
              "menu entry allocation outside [0,1]");
      require(e.t >= 0.0, "menu entry price is negative");
      require(std::isfinite(e.q1) && std::isfinite(e.q2) && std::isfinite(e.t),
              "menu entry is not finite");
      bool dup = false;
      for (const MenuEntry& k : entries_) {
        if (k.q1 == e.q1 && k.q2 == e.q2 && k.t == e.t) {
          dup = true;
          break;
        }
      }
      if (!dup) entries_.push_back(e);
    }
  }

  [[nodiscard]] const std::vector<MenuEntry>& entries() const {
    return entries_;
  }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

 private:
  std::vector<MenuEntry> entries_;
};

// Number of distinct outcomes the buyer can end up with, null included.
[[nodiscard]] inline std::size_t menu_size(const Menu& m) {
  return m.entries().size() + 1;
}

// Bits needed for the buyer to name one of `size` outcomes.
[[nodiscard]] inline int comm_complexity(std::size_t size) {
  require(size >= 1, "comm_complexity: size must be at least 1");
  return static_cast<int>(std::bit_width(size - 1));
}

struct Choice {
  int index = -1;  // index into entries(), or -1 for the null entry
  double utility = 0.0;
  double payment = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
};

// Utility-maximizing entry for the given type. Utilities within kTieTol
// are tied; ties go to the higher price, then to the lower entry index,
// with the null entry ranked after all stored entries.
[[nodiscard]] inline Choice best_response(const Menu& m, BuyerType v) {
  Choice best;  // starts as the null entry: utility 0, payment 0
  const std::vector<MenuEntry>& es = m.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    const MenuEntry& e = es[i];
    const double u = e.q1 * v.v1 + e.q2 * v.v2 - e.t;
    bool take = false;
    if (u > best.utility + kTieTol) {
      take = true;
    } else if (u >= best.utility - kTieTol) {
      // Tie: higher price wins; at equal price the earlier stored entry
      // is kept, and any stored entry displaces the null entry.
      if (e.t > best.payment || (e.t == best.payment && best.index < 0))
        take = true;
    }
    if (take) {
      best.index = static_cast<int>(i);
      best.utility = u;
      best.payment = e.t;
      best.q1 = e.q1;
      best.q2 = e.q2;
    }
  }
  return best;
}

[[nodiscard]] inline double utility(const Menu& m, BuyerType v) {
  return best_response(m, v).utility;
}

// ==== menu file format =====================================================
//
// One entry per line: "q1 q2 t" separated by whitespace. '#' starts a
// comment that runs to end of line; blank lines are skipped.

[[nodiscard]] inline Menu parse_menu(std::istream& in) {
  std::vector<MenuEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    MenuEntry e;
    if (!(ls >> e.q1)) continue;  // blank or comment-only line
    if (!(ls >> e.q2 >> e.t)) {
      throw parse_error("menu line " + std::to_string(lineno) +
                        ": expected three numbers");
    }
    double extra;
    if (ls >> extra) {
      throw parse_error("menu line " + std::to_string(lineno) +
                        ": trailing fields");
    }
    entries.push_back(e);
  }
  try {
    return Menu(std::move(entries));
  } catch (const precondition_error& err) {
    throw parse_error(std::string("invalid menu: ") + err.what());
  }
}

[[nodiscard]] inline Menu parse_menu_text(const std::string& text) {
  std::istringstream in(text);
  return parse_menu(in);
}

[[nodiscard]] inline std::string format_menu(const Menu& m) {
  std::string out;
  char buf[96];
  for (const MenuEntry& e : m.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", e.q1, e.q2, e.t);
    out += buf;
  }
  return out;
}

}  // namespace menukit
