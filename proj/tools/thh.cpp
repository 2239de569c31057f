// Command-line front end: thh compute|classify|verify|chart.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "thh/thh.hpp"

namespace {

struct Options {
  std::string command;
  std::string config;
  int max_degree = 20;
  bool max_degree_given = false;
  std::string format = "table";
  std::string chart_format;
  int ss = 1;
  std::string suite;
  bool representatives = false;
  std::string out;
  bool log = false;
};

constexpr int kDefaultChartCap = 6;

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw thh::Error(thh::ErrorCode::Io, "cannot write " + opt.out);
  f << text;
  if (!f) throw thh::Error(thh::ErrorCode::Io, "write failed for " + opt.out);
}

thh::RingConfig ring_config(const Options& opt) {
  if (opt.config.empty()) throw thh::Error(thh::ErrorCode::ConfigParse, opt.command + " needs --config PATH");
  return thh::load_ring_config(opt.config);
}

int run_compute(const Options& opt) {
  if (opt.format != "table" && opt.format != "json")
    throw thh::Error(thh::ErrorCode::ConfigParse, "compute output is table or json");
  const auto report = thh::compute_report(ring_config(opt), opt.max_degree, opt.representatives);
  emit(opt, opt.format == "json" ? thh::report_json(report).dump(2) + "\n" : thh::report_table(report));
  return report.all_agree() ? 0 : 1;
}

int run_classify(const Options& opt) {
  const auto cfg = ring_config(opt);
  const auto regime = thh::classify(thh::QuotientRing(cfg.cdvr, cfg.k));
  if (opt.format == "json") {
    nlohmann::ordered_json j{{"schemaVersion", thh::kSchemaVersion}};
    j["ring"] = thh::describe(cfg.cdvr) + " k=" + std::to_string(cfg.k);
    j["regime"] = thh::regime_json(regime);
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, thh::regime_table(regime));
  }
  return 0;
}

int run_verify(const Options& opt) {
  std::vector<std::string> names = opt.suite.empty() ? thh::verify::suite_names() : std::vector{opt.suite};
  std::vector<thh::verify::SuiteResult> results;
  for (const auto& n : names) results.push_back(thh::verify::run_suite(n));
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();
  if (opt.format == "json") {
    nlohmann::ordered_json suites = nlohmann::ordered_json::array();
    for (const auto& r : results) suites.push_back(thh::verify::suite_json(r));
    emit(opt, nlohmann::ordered_json{{"schemaVersion", 1}, {"passed", ok}, {"suites", suites}}.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& r : results) text += thh::verify::suite_table(r);
    emit(opt, text);
  }
  return ok ? 0 : 1;
}

int run_chart(const Options& opt) {
  // --chart-format wins; otherwise --format may name a chart format directly.
  std::string fmt = opt.chart_format;
  if (fmt.empty()) fmt = opt.format == "svg" || opt.format == "json" ? opt.format : "text";
  const int cap = opt.max_degree_given ? opt.max_degree : kDefaultChartCap;
  const auto cfg = ring_config(opt);
  const auto page = opt.log ? thh::chart_log(cfg.cdvr, cap)
                            : thh::chart_comparison(opt.ss, thh::QuotientRing(cfg.cdvr, cfg.k), cap);
  if (fmt == "svg") {
    emit(opt, thh::render_svg(page));
  } else if (fmt == "json") {
    emit(opt, thh::chart_json(page).dump(2) + "\n");
  } else {
    emit(opt, thh::render_text(page));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"THH of quotients of complete discrete valuation rings"};
  Options opt;
  app.add_option("command", opt.command, "compute, classify, verify or chart")
      ->required()
      ->check(CLI::IsMember({"compute", "classify", "verify", "chart"}));
  app.add_option("--config", opt.config, "ring specification file");
  auto* md = app.add_option("--max-degree", opt.max_degree, "highest degree (compute) or chart cap")
                 ->check(CLI::Range(0, 400));
  app.add_option("--format", opt.format, "table or json; for chart also text or svg")
      ->check(CLI::IsMember({"table", "json", "text", "svg"}));
  app.add_option("--chart-format", opt.chart_format, "text, svg or json")->check(CLI::IsMember({"text", "svg", "json"}));
  app.add_option("--ss", opt.ss, "spectral sequence to chart")->check(CLI::Range(1, 4));
  app.add_option("--suite", opt.suite, "verification suite (default: all)");
  app.add_flag("--representatives", opt.representatives, "print a cycle for each summand");
  app.add_option("--out", opt.out, "write output here instead of stdout");
  app.add_flag("--log", opt.log, "chart the logarithmic sequence of the CDVR");
  CLI11_PARSE(app, argc, argv);
  opt.max_degree_given = md->count() > 0;

  try {
    if (opt.command == "compute") return run_compute(opt);
    if (opt.command == "classify") return run_classify(opt);
    if (opt.command == "verify") return run_verify(opt);
    return run_chart(opt);
  } catch (const thh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
