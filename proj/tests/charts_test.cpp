#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <regex>
#include <sstream>

#include "test_support.hpp"
#include "thh/thh.hpp"

using namespace thh;

namespace {

CdvrSpec zp(std::int64_t p) { return CdvrSpec::mixed_over_zp(p, {-p, 1}); }

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

const ChartCell* find_cell(const ChartPage& page, int i, int j) {
  for (const auto& c : page.cells)
    if (c.i == i && c.j == j) return &c;
  return nullptr;
}

const ChartArrow* find_arrow(const ChartPage& page, Bidegree from, Bidegree to) {
  for (const auto& a : page.arrows)
    if (a.from == from && a.to == to) return &a;
  return nullptr;
}

std::vector<std::string> labels_at(const ChartPage& page, int i, int j) {
  const auto* c = find_cell(page, i, j);
  return c ? c->labels : std::vector<std::string>{};
}

// Reads the grid back: row lines look like "  j | a,b | . |".
std::map<Bidegree, std::vector<std::string>> parse_grid(const std::string& text) {
  std::map<Bidegree, std::vector<std::string>> out;
  const std::regex row(R"(^\s*(\d+) \|(.*)$)");
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, row)) continue;
    const int j = std::stoi(m[1]);
    std::stringstream rest(m[2].str());
    std::string field;
    for (int i = 0; std::getline(rest, field, '|'); ++i) {
      field.erase(0, field.find_first_not_of(' '));
      field.erase(field.find_last_not_of(' ') + 1);
      if (field.empty() || field == ".") continue;
      std::vector<std::string> labels;
      std::stringstream parts(field);
      std::string l;
      while (std::getline(parts, l, ',')) labels.push_back(l);
      out[{i, j}] = labels;
    }
  }
  return out;
}

bool well_formed_xml(const std::string& doc) {
  try {
    std::istringstream in(doc);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    return tree.count("svg") == 1 && tree.size() == 1;
  } catch (const boost::property_tree::xml_parser_error&) {
    return false;
  }
}

std::vector<ChartPage> all_pages() {
  std::vector<ChartPage> pages;
  for (const auto& spec : {zp(3), CdvrSpec::mixed_over_zp(2, {-2, 0, 1}), CdvrSpec::equal_char(2)})
    for (int k : {1, 2, 4})
      for (int which = 1; which <= 4; ++which) pages.push_back(chart_comparison(which, QuotientRing(spec, k), 8));
  pages.push_back(chart_log(zp(5), 8));
  return pages;
}

}  // namespace

TEST(ChartMain, CellsAndArrows) {
  const auto page = chart_main(QuotientRing(zp(3), 2), 4);
  EXPECT_EQ(page.cells.size(), 6u);
  EXPECT_EQ(labels_at(page, 0, 0), (std::vector<std::string>{"1"}));
  EXPECT_EQ(labels_at(page, 2, 0), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(labels_at(page, 0, 1), (std::vector<std::string>{"dz"}));
  EXPECT_EQ(labels_at(page, 2, 1), (std::vector<std::string>{"xdz", "ydz"}));
  EXPECT_EQ(labels_at(page, 4, 0), (std::vector<std::string>{"x^2", "xy", "y^[2]"}));
  ASSERT_EQ(page.arrows.size(), 2u);
  EXPECT_NE(find_arrow(page, {2, 0}, {0, 1}), nullptr);
  EXPECT_NE(find_arrow(page, {4, 0}, {2, 1}), nullptr);
  for (const auto& a : page.arrows) EXPECT_EQ(a.page, 2);
  for (const auto& c : page.cells) EXPECT_EQ(c.module, "A'");
}

TEST(ChartMain, ArrowValuationsMatchRingCore) {
  for (const auto& spec : oracle::eisenstein_grid())
    for (int k = 1; k <= 5; ++k) {
      const QuotientRing ring(spec, k);
      const auto page = chart_main(ring, 4);
      const auto* a = find_arrow(page, {2, 0}, {0, 1});
      ASSERT_NE(a, nullptr);
      ASSERT_EQ(a->labels, (std::vector<std::string>{"φ'(π)", "kπ^(k-1)"}));
      // Recompute both valuations from scratch in a ring wide enough to see them.
      const QuotientRing wide(spec, spec.e() * 6 + k + 4);
      EXPECT_EQ(a->valuations[0], wide.valuation(wide.phi_prime()));
      EXPECT_EQ(a->valuations[1], wide.valuation(wide.scale(wide.pi_power(k - 1), Int(k))));
    }
}

TEST(ChartMain, EqualCharacteristicXArrowIsZero) {
  const auto page = chart_main(QuotientRing(CdvrSpec::equal_char(3), 2), 4);
  EXPECT_EQ(page.cells.size(), 6u);
  const auto* a = find_arrow(page, {2, 0}, {0, 1});
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->labels.front(), "0");
  EXPECT_EQ(a->valuations.front(), kInfinity);
  EXPECT_EQ(a->valuations.back(), 1);
}

TEST(ChartLog, Shape) {
  const auto page = chart_log(zp(3), 4);
  EXPECT_EQ(labels_at(page, 0, 1), (std::vector<std::string>{"dlogz"}));
  EXPECT_EQ(labels_at(page, 2, 1), (std::vector<std::string>{"xdlogz"}));
  for (const auto& c : page.cells) EXPECT_EQ(c.module, "A");
  const auto* a = find_arrow(page, {2, 0}, {0, 1});
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->label(), "πφ'(π)");
  EXPECT_EQ(a->valuations.front(), 1);
  ASSERT_NE(find_arrow(page, {4, 0}, {2, 1}), nullptr);
  EXPECT_EQ(find_arrow(page, {4, 0}, {2, 1})->label(), "2πφ'(π)");
}

TEST(ChartComparison, Placements) {
  const QuotientRing ring(zp(3), 2);
  EXPECT_EQ(chart_comparison(1, ring, 6).cells.size(), chart_main(ring, 6).cells.size());

  const auto brun = chart_comparison(2, ring, 4);
  EXPECT_EQ(labels_at(brun, 0, 2), (std::vector<std::string>{"x"}));
  EXPECT_EQ(labels_at(brun, 2, 0), (std::vector<std::string>{"y"}));
  EXPECT_EQ(labels_at(brun, 0, 4), (std::vector<std::string>{"x^2"}));
  EXPECT_EQ(labels_at(brun, 4, 0), (std::vector<std::string>{"y^[2]"}));
  EXPECT_EQ(find_arrow(brun, {0, 2}, {0, 1})->page, 0);
  EXPECT_EQ(find_arrow(brun, {2, 0}, {0, 1})->page, 2);

  const auto rel = chart_comparison(3, ring, 4);
  EXPECT_EQ(labels_at(rel, 2, 0), (std::vector<std::string>{"x"}));
  EXPECT_EQ(labels_at(rel, 0, 2), (std::vector<std::string>{"y"}));

  const auto hkr = chart_comparison(4, ring, 4);
  EXPECT_EQ(labels_at(hkr, 1, 1), (std::vector<std::string>{"y"}));
  EXPECT_EQ(labels_at(hkr, 2, 2), (std::vector<std::string>{"y^[2]"}));
  EXPECT_EQ(labels_at(hkr, 1, 2), (std::vector<std::string>{"ydz"}));
  EXPECT_EQ(find_arrow(hkr, {1, 1}, {0, 1})->page, 1);
  EXPECT_EQ(find_arrow(hkr, {2, 2}, {1, 2})->page, 1);
  ASSERT_EQ(hkr.annotations.size(), 1u);
  EXPECT_NE(hkr.annotations.front().find("wedge above the diagonal"), std::string::npos);
  // Nothing lives strictly above the diagonal j = i + 1.
  for (const auto& c : chart_comparison(4, ring, 12).cells) EXPECT_LE(c.j, c.i + 1);

  for (int which = 1; which <= 4; ++which)
    for (const auto& note : chart_comparison(which, ring, 4).annotations) EXPECT_EQ(note.rfind("non-computed: ", 0), 0u);
}

TEST(ChartProperties, BidegreeLaw) {
  for (const auto& page : all_pages())
    for (const auto& a : page.arrows) {
      EXPECT_EQ(a.from.first - a.to.first, a.page);
      EXPECT_EQ(a.to.second - a.from.second, a.page - 1);
      EXPECT_NE(find_cell(page, a.from.first, a.from.second), nullptr);
      EXPECT_NE(find_cell(page, a.to.first, a.to.second), nullptr);
      EXPECT_EQ(a.labels.size(), a.valuations.size());
    }
  EXPECT_THROW((void)arrow_page({2, 0}, {0, 0}), std::logic_error);
}

TEST(ChartRender, SvgCounts) {
  const auto svg = render_svg(chart_main(QuotientRing(zp(3), 2), 4));
  EXPECT_EQ(count(svg, "<g class=\"cell\""), 6u);
  EXPECT_EQ(count(svg, "<path class=\"arrow\""), 2u);
  EXPECT_EQ(count(svg, "marker-end="), 2u);
  EXPECT_TRUE(well_formed_xml(svg));
  // Cell (2,0) sits at x = 200, y = H - 40 with H = 48*2 + 80.
  EXPECT_NE(svg.find("data-i=\"2\" data-j=\"0\"><text x=\"200.0\" y=\"136.0\" font-size=\"12\""), std::string::npos);
}

TEST(ChartRender, SvgWellFormedAndStable) {
  for (const auto& page : all_pages()) {
    const auto svg = render_svg(page);
    EXPECT_TRUE(well_formed_xml(svg)) << page.title;
    EXPECT_EQ(svg, render_svg(page));
  }
  const auto again = render_svg(chart_comparison(2, QuotientRing(zp(2), 3), 6));
  EXPECT_EQ(again, render_svg(chart_comparison(2, QuotientRing(zp(2), 3), 6)));
}

TEST(ChartRender, EmptyPage) {
  const ChartPage empty{"empty", {}, {}, {}};
  const auto svg = render_svg(empty);
  EXPECT_TRUE(well_formed_xml(svg));
  EXPECT_EQ(count(svg, "<g "), 0u);
  EXPECT_EQ(count(svg, "<path"), 0u);
  EXPECT_EQ(render_text(empty), "empty\n");
}

TEST(ChartRender, TextRoundTrip) {
  for (const auto& page : all_pages()) {
    const auto parsed = parse_grid(render_text(page));
    std::map<Bidegree, std::vector<std::string>> expected;
    for (const auto& c : page.cells) expected[{c.i, c.j}] = c.labels;
    EXPECT_EQ(parsed, expected) << page.title;
  }
}

TEST(ChartRender, Json) {
  const auto j = chart_json(chart_main(QuotientRing(CdvrSpec::equal_char(2), 2), 2));
  EXPECT_EQ(j["cells"].size(), 4u);
  EXPECT_EQ(j["arrows"][0]["from"], nlohmann::ordered_json::parse("[2,0]"));
  EXPECT_EQ(j["arrows"][0]["page"], 2);
  EXPECT_TRUE(j["arrows"][0]["valuations"][0].is_null());
  EXPECT_EQ(j.begin().key(), "title");
}
