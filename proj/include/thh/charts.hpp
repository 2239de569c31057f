#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "thh/closed_forms.hpp"
#include "thh/quotient_ring.hpp"

namespace thh {

using Bidegree = std::pair<int, int>;

struct ChartCell {
  int i = 0;
  int j = 0;
  std::vector<std::string> labels;
  std::string module;
};

struct ChartArrow {
  Bidegree from;
  Bidegree to;
  int page = 0;
  /// One entry per distinct coefficient hitting this pair of cells.
  std::vector<std::string> labels;
  /// v_pi of each coefficient in A; kInfinity for a vanishing one.
  std::vector<int> valuations;

  std::string label() const {
    std::string out;
    for (const auto& l : labels) out += (out.empty() ? "" : ", ") + l;
    return out;
  }
};

/// A static page: cells sorted by (i, j), arrows sorted by source then target.
struct ChartPage {
  std::string title;
  std::vector<ChartCell> cells;
  std::vector<ChartArrow> arrows;
  std::vector<std::string> annotations;
};

/// The page r of an arrow, checked against the bidegree law (-r, r-1).
inline int arrow_page(Bidegree from, Bidegree to) {
  const int r = from.first - to.first;
  if (to.second - from.second != r - 1)
    throw std::logic_error("arrow shift does not match any page");
  return r;
}

namespace detail {

struct Monomial {
  int i, j, eps;
};

inline std::string monomial_label(const Monomial& m, const std::string& odd) {
  std::string out;
  if (m.i == 1) out += "x";
  if (m.i > 1) out += "x^" + std::to_string(m.i);
  if (m.j == 1) out += "y";
  if (m.j > 1) out += "y^[" + std::to_string(m.j) + "]";
  if (m.eps) out += odd;
  return out.empty() ? "1" : out;
}

inline std::string multiple(int n, const std::string& s) { return n == 1 ? s : std::to_string(n) + s; }

struct ChartRecipe {
  std::string title;
  std::string module;
  std::string odd;
  bool has_y = true;
  std::function<Bidegree(const Monomial&)> place;
  /// Label and valuation of the coefficient of x^{i-1} ... in d(x^i ...).
  std::function<std::pair<std::string, int>(int i)> x_coefficient;
  std::pair<std::string, int> y_coefficient;
};

/// Monomials x^i y^[j] (odd)^eps with 2(i + j) <= cap.
inline ChartPage build(const ChartRecipe& r, int cap) {
  ChartPage page;
  page.title = r.title;
  std::map<Bidegree, ChartCell> cells;
  std::map<std::pair<Bidegree, Bidegree>, ChartArrow> arrows;

  auto add_arrow = [&](const Monomial& src, const Monomial& dst, const std::pair<std::string, int>& coeff) {
    const Bidegree a = r.place(src), b = r.place(dst);
    auto& arrow = arrows[{a, b}];
    arrow.from = a;
    arrow.to = b;
    arrow.page = arrow_page(a, b);
    if (std::find(arrow.labels.begin(), arrow.labels.end(), coeff.first) == arrow.labels.end()) {
      arrow.labels.push_back(coeff.first);
      arrow.valuations.push_back(coeff.second);
    }
  };

  for (int m = 0; 2 * m <= cap; ++m)
    for (int eps = 0; eps <= 1; ++eps)
      for (int i = m; i >= (r.has_y ? 0 : m); --i) {
        const Monomial mono{i, m - i, eps};
        const Bidegree at = r.place(mono);
        auto& cell = cells[at];
        cell.i = at.first;
        cell.j = at.second;
        cell.module = r.module;
        cell.labels.push_back(monomial_label(mono, r.odd));
        if (eps) continue;
        if (mono.i > 0) add_arrow(mono, {mono.i - 1, mono.j, 1}, r.x_coefficient(mono.i));
        if (mono.j > 0) add_arrow(mono, {mono.i, mono.j - 1, 1}, r.y_coefficient);
      }

  for (auto& [_, c] : cells) page.cells.push_back(std::move(c));
  for (auto& [_, a] : arrows) page.arrows.push_back(std::move(a));
  return page;
}

inline ChartRecipe quotient_recipe(const QuotientRing& ring) {
  const CdvrSpec& cdvr = ring.cdvr();
  const int k = ring.length();
  ChartRecipe r;
  r.module = "A'";
  r.odd = "dz";
  r.title = "A/pi^" + std::to_string(k) + " over " + describe(cdvr);
  if (cdvr.mixed()) {
    const int d = phi_prime_valuation(cdvr), e = cdvr.e();
    const std::int64_t p = cdvr.p;
    r.x_coefficient = [=](int i) { return std::pair{multiple(i, "φ'(π)"), e * vp(std::int64_t(i), p) + d}; };
  } else {
    r.x_coefficient = [](int) { return std::pair<std::string, int>{"0", kInfinity}; };
  }
  r.y_coefficient = {"kπ^(k-1)", beta_valuation(cdvr, k)};
  return r;
}

}  // namespace detail

/// E2 page of the absolute sequence: x^i y^[j] dz^eps in column 2(i + j), row eps; d2 only.
inline ChartPage chart_main(const QuotientRing& ring, int cap) {
  auto r = detail::quotient_recipe(ring);
  r.title = "E2 of THH(" + r.title + ")";
  r.place = [](const detail::Monomial& m) { return Bidegree{2 * (m.i + m.j), m.eps}; };
  auto page = detail::build(r, cap);
  page.annotations.push_back("non-computed: E3 is the homology of the DGA, reported by the compute command");
  return page;
}

/// E2 page for the logarithmic THH of the CDVR itself: A{x^i} and A{x^i dlog z}.
inline ChartPage chart_log(const CdvrSpec& cdvr, int cap) {
  if (!cdvr.mixed()) throw Error(ErrorCode::SpecMismatch, "the log chart needs mixed characteristic");
  const int d = phi_prime_valuation(cdvr), e = cdvr.e();
  detail::ChartRecipe r;
  r.title = "E2 of log THH of " + describe(cdvr);
  r.module = "A";
  r.odd = "dlogz";
  r.has_y = false;
  r.place = [](const detail::Monomial& m) { return Bidegree{2 * m.i, m.eps}; };
  r.x_coefficient = [=, p = cdvr.p](int i) {
    return std::pair{detail::multiple(i, "πφ'(π)"), e * vp(std::int64_t(i), p) + d + 1};
  };
  auto page = detail::build(r, cap);
  page.annotations.push_back("non-computed: odd homology is computed by the log coefficient DGA");
  return page;
}

/// The four comparison pages; 1 is chart_main.
inline ChartPage chart_comparison(int which, const QuotientRing& ring, int cap) {
  if (which == 1) return chart_main(ring, cap);
  auto r = detail::quotient_recipe(ring);
  std::vector<std::string> notes;
  switch (which) {
    case 2:
      r.title = "virtual E0 of the Brun sequence for " + r.title;
      r.place = [](const detail::Monomial& m) { return Bidegree{2 * m.j, 2 * m.i + m.eps}; };
      notes = {"non-computed: E0 and d0 are a visualization aid; no page of an actual construction is claimed",
               "non-computed: for k = 1 there are longer differentials and a multiplicative extension",
               "non-computed: degenerates when k is big"};
      break;
    case 3:
      r.title = "E2 of the relative sequence for " + r.title;
      r.place = [](const detail::Monomial& m) { return Bidegree{2 * m.i, 2 * m.j + m.eps}; };
      notes = {"non-computed: degenerates when k is small",
               "non-computed: outside that range nontrivial extensions occur"};
      break;
    case 4:
      r.title = "HKR-type sequence for " + r.title;
      r.place = [](const detail::Monomial& m) { return Bidegree{2 * m.i + m.j, m.j + m.eps}; };
      notes = {"non-computed: the wedge above the diagonal through (0,1) is zero"};
      break;
    default:
      throw Error(ErrorCode::SpecMismatch, "chart index must be 1, 2, 3 or 4");
  }
  auto page = detail::build(r, cap);
  page.annotations = std::move(notes);
  return page;
}

inline std::string valuation_string(int v) { return v == kInfinity ? "inf" : std::to_string(v); }

namespace detail {

inline std::string arrow_line(const ChartArrow& a) {
  std::string out = "(" + std::to_string(a.from.first) + "," + std::to_string(a.from.second) + ") -> (" +
                    std::to_string(a.to.first) + "," + std::to_string(a.to.second) + ")  d" + std::to_string(a.page) + " ";
  for (std::size_t t = 0; t < a.labels.size(); ++t)
    out += (t ? ", " : "") + a.labels[t] + " [v=" + valuation_string(a.valuations[t]) + "]";
  return out;
}

/// Display width in code points, so UTF-8 labels pad correctly.
inline std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

inline std::string pad(const std::string& s, std::size_t w) { return s + std::string(w - width(s), ' '); }

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline Bidegree extent(const ChartPage& page) {
  Bidegree m{-1, -1};
  for (const auto& c : page.cells) m = {std::max(m.first, c.i), std::max(m.second, c.j)};
  return m;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace detail

/// Fixed-width grid, top row first; cells hold comma-separated labels, "." when empty.
inline std::string render_text(const ChartPage& page) {
  const auto [max_i, max_j] = detail::extent(page);
  std::map<Bidegree, std::string> text;
  std::size_t w = 1;
  for (const auto& c : page.cells) {
    std::string s;
    for (const auto& l : c.labels) s += (s.empty() ? "" : ",") + l;
    w = std::max(w, detail::width(s));
    text[{c.i, c.j}] = s;
  }
  std::ostringstream out;
  out << page.title << "\n";
  for (int j = max_j; j >= 0; --j) {
    char row[16];
    std::snprintf(row, sizeof row, "%3d |", j);
    out << row;
    for (int i = 0; i <= max_i; ++i) {
      auto it = text.find({i, j});
      out << " " << detail::pad(it == text.end() ? "." : it->second, w) << " |";
    }
    out << "\n";
  }
  if (max_i >= 0) {
    out << "     ";
    for (int i = 0; i <= max_i; ++i) out << " " << detail::pad(std::to_string(i), w) << "  ";
    out << "\n";
  }
  if (!page.arrows.empty()) out << "arrows:\n";
  for (const auto& a : page.arrows) out << "  " << detail::arrow_line(a) << "\n";
  if (!page.annotations.empty()) out << "notes:\n";
  for (const auto& n : page.annotations) out << "  " << n << "\n";
  return out.str();
}

/// SVG 1.1, one <g class="cell"> per cell and one marked <path class="arrow"> per arrow.
inline std::string render_svg(const ChartPage& page) {
  const auto [max_i, max_j] = detail::extent(page);
  const int W = 80 * (max_i + 1) + 80, H = 48 * (max_j + 1) + 80;
  auto cx = [](int i) { return 80.0 * i + 40; };
  auto cy = [H](int j) { return H - (48.0 * j + 40); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<title>" << detail::xml_escape(page.title) << "</title>\n"
      << "<defs><marker id=\"arrowhead\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
      << "<polygon points=\"0,0 8,4 0,8\"/></marker></defs>\n";
  for (const auto& c : page.cells) {
    std::string s;
    for (const auto& l : c.labels) s += (s.empty() ? "" : ", ") + l;
    out << "<g class=\"cell\" data-i=\"" << c.i << "\" data-j=\"" << c.j << "\"><text x=\"" << detail::fmt(cx(c.i))
        << "\" y=\"" << detail::fmt(cy(c.j)) << "\" font-size=\"12\" text-anchor=\"middle\">" << detail::xml_escape(s)
        << "</text></g>\n";
  }
  for (const auto& a : page.arrows) {
    // Stop short of both labels.
    double x1 = cx(a.from.first), y1 = cy(a.from.second), x2 = cx(a.to.first), y2 = cy(a.to.second);
    const double dx = x2 - x1, dy = y2 - y1, len = std::max(1.0, std::sqrt(dx * dx + dy * dy)), cut = 12.0 / len;
    x1 += dx * cut, y1 += dy * cut, x2 -= dx * cut, y2 -= dy * cut;
    out << "<path class=\"arrow\" data-page=\"" << a.page << "\" d=\"M " << detail::fmt(x1) << " " << detail::fmt(y1)
        << " L " << detail::fmt(x2) << " " << detail::fmt(y2)
        << "\" stroke=\"black\" fill=\"none\" marker-end=\"url(#arrowhead)\"><title>" << detail::xml_escape(a.label())
        << "</title></path>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline nlohmann::ordered_json chart_json(const ChartPage& page) {
  using nlohmann::ordered_json;
  ordered_json cells = ordered_json::array(), arrows = ordered_json::array();
  for (const auto& c : page.cells)
    cells.push_back(ordered_json{{"i", c.i}, {"j", c.j}, {"labels", c.labels}, {"module", c.module}});
  for (const auto& a : page.arrows) {
    ordered_json vals = ordered_json::array();
    for (int v : a.valuations) vals.push_back(v == kInfinity ? ordered_json(nullptr) : ordered_json(v));
    arrows.push_back(ordered_json{{"from", {a.from.first, a.from.second}},
                                  {"to", {a.to.first, a.to.second}},
                                  {"page", a.page},
                                  {"label", a.label()},
                                  {"valuations", vals}});
  }
  return ordered_json{{"title", page.title}, {"cells", cells}, {"arrows", arrows}, {"annotations", page.annotations}};
}

}  // namespace thh
