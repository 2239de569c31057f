#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "thh/closed_forms.hpp"
#include "thh/dga.hpp"
#include "thh/ring_config.hpp"

namespace thh {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ClosedFormCheck {
  std::string name;
  bool agree = false;
  /// The closed form's prediction, for the disagreement message.
  std::string expected;
};

struct DegreeRecord {
  int degree = 0;
  FinModule module;
  std::vector<ClosedFormCheck> checks;
  std::vector<std::string> representatives;
};

struct ComputeReport {
  RingConfig config;
  RegimeReport regime;
  int precision = 0;
  std::vector<DegreeRecord> degrees;
  bool with_representatives = false;

  bool all_agree() const {
    for (const auto& d : degrees)
      for (const auto& c : d.checks)
        if (!c.agree) return false;
    return true;
  }
};

/// Every closed form that applies to A' in degree n, evaluated against the DGA homology.
inline std::vector<ClosedFormCheck> closed_form_checks(const QuotientRing& ring, const RegimeReport& regime, int n,
                                                       const FinModule& actual) {
  std::vector<ClosedFormCheck> out;
  const CdvrSpec& cdvr = ring.cdvr();
  const std::int64_t p = cdvr.p;
  auto by_module = [&](const std::string& name, const FinModule& expected) {
    out.push_back({name, expected == actual, expected.to_string()});
  };
  if (cdvr.mixed() && cdvr.e() == 1 && cdvr.f == 1 && regime.k >= 2) {
    const auto expected = brun_invariants(p, regime.k, n);
    out.push_back({"brun", expected == actual.abelian(), abelian_to_string(p, expected)});
  }
  if (regime.k == 1) by_module("bokstedt-pattern", bokstedt_module(ring, n));
  if (regime.ksmall) by_module("ksmall", ksmall_invariants(ring, n));
  if (regime.kbig) by_module("kbig", kbig_invariants(ring, n));
  if (n == 2 && cdvr.mixed()) by_module("degree-two", degree_two_module(ring).module);
  return out;
}

inline ComputeReport compute_report(const RingConfig& cfg, int max_degree, bool representatives = false) {
  if (max_degree < 0) throw Error(ErrorCode::KOutOfRange, "max degree must be >= 0");
  const DgaSpec spec = DgaSpec::quotient_thh(cfg.cdvr, cfg.k);
  ComputeReport report;
  report.config = cfg;
  report.regime = classify(spec.ring);
  report.precision = spec.ring.precision();
  report.with_representatives = representatives;
  for (int n = 0; n <= max_degree; ++n) {
    const auto h = homology(spec, n);
    DegreeRecord rec{n, h.module, closed_form_checks(spec.ring, report.regime, n, h.module), {}};
    if (representatives)
      for (const auto& z : h.representatives) rec.representatives.push_back(to_string(spec, z));
    report.degrees.push_back(std::move(rec));
  }
  return report;
}

inline nlohmann::ordered_json fin_module_json(const FinModule& m) {
  nlohmann::ordered_json abelian = nlohmann::ordered_json::array();
  for (const auto& [exp, mult] : m.abelian()) abelian.push_back({m.context.p, exp, mult});
  return {{"piExponents", m.pi_exponents}, {"abelian", abelian}};
}

inline nlohmann::ordered_json regime_json(const RegimeReport& r) {
  using nlohmann::ordered_json;
  auto opt = [](int v) { return v == kInfinity ? ordered_json(nullptr) : ordered_json(v); };
  return ordered_json{
      {"characteristic", r.mixed ? "mixed" : "equal"},
      {"p", r.p},
      {"e", r.e},
      {"f", r.f},
      {"k", r.k},
      {"phiPrimeValuation", r.phi_prime_valuation ? ordered_json(*r.phi_prime_valuation) : ordered_json(nullptr)},
      {"betaValuation", opt(r.beta_valuation)},
      {"degreeTwoCase", r.mixed ? ordered_json(r.degree_two_case) : ordered_json(nullptr)},
      {"caseHolds", r.case_holds},
      {"ksmall", r.ksmall},
      {"kbig", r.kbig},
      {"inBetween", r.in_between},
      {"ratioVp", r.ratio_vp ? ordered_json(r.ratio_vp->to_string()) : ordered_json(nullptr)},
      {"regime", regime_name(r)},
  };
}

inline nlohmann::ordered_json report_json(const ComputeReport& report) {
  using nlohmann::ordered_json;
  ordered_json degrees = ordered_json::array();
  for (const auto& d : report.degrees) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : d.checks) {
      ordered_json entry{{"name", c.name}, {"result", c.agree ? "agree" : "disagree"}};
      if (!c.agree) entry["expected"] = c.expected;
      checks.push_back(entry);
    }
    ordered_json rec{{"degree", d.degree}};
    const auto m = fin_module_json(d.module);
    rec["piExponents"] = m["piExponents"];
    rec["abelian"] = m["abelian"];
    rec["matchedClosedForms"] = checks;
    if (report.with_representatives) rec["representatives"] = d.representatives;
    degrees.push_back(rec);
  }
  return ordered_json{
      {"schemaVersion", kSchemaVersion},
      {"ring", describe(report.config.cdvr) + " k=" + std::to_string(report.config.k)},
      {"regime", regime_json(report.regime)},
      {"metadata",
       {{"precision", report.precision},
        {"phiPrimeValuation", report.regime.phi_prime_valuation ? ordered_json(*report.regime.phi_prime_valuation)
                                                                : ordered_json(nullptr)},
        {"toolVersion", kToolVersion}}},
      {"degrees", degrees},
      {"allAgree", report.all_agree()},
  };
}

/// "A/π^c ⊕ ... (≅ Z/p^a ⊕ ...)", or "0".
inline std::string dual_notation(const FinModule& m) {
  if (m.is_zero()) return "0";
  return m.to_string() + " (≅ " + abelian_to_string(m.context.p, m.abelian()) + ")";
}

inline std::string report_table(const ComputeReport& report) {
  std::ostringstream out;
  out << "ring: " << describe(report.config.cdvr) << " k=" << report.config.k << "\n";
  out << "regime: " << regime_name(report.regime) << "\n";
  for (const auto& d : report.degrees) {
    out << "THH_" << d.degree << " = " << dual_notation(d.module);
    for (std::size_t i = 0; i < d.checks.size(); ++i) {
      const auto& c = d.checks[i];
      out << (i ? ", " : "   [") << c.name << ": " << (c.agree ? "agree" : "disagree (expected " + c.expected + ")");
    }
    out << (d.checks.empty() ? "" : "]") << "\n";
    for (const auto& r : d.representatives) out << "    " << r << "\n";
  }
  out << (report.all_agree() ? "all closed forms agree" : "DISAGREEMENT with a closed form") << "\n";
  return out.str();
}

inline std::string regime_table(const RegimeReport& r) {
  std::ostringstream out;
  auto val = [](int v) { return v == kInfinity ? std::string("inf") : std::to_string(v); };
  out << "k = " << r.k << ", p = " << r.p << ", f = " << r.f;
  if (!r.mixed) {
    out << "\nequal characteristic; ksmall always applies\n";
    out << "v_pi(k pi^(k-1)) = " << val(r.beta_valuation) << "\n";
    out << "regime: " << regime_name(r) << "\n";
    return out.str();
  }
  const int d = *r.phi_prime_valuation;
  out << ", e = " << r.e << "\n";
  out << "d = v_pi(phi'(pi)) = " << d << "\n";
  out << "v_pi(k pi^(k-1)) = " << val(r.beta_valuation) << "\n";
  static const std::array<const char*, 4> names{"p | k and pi^k | phi'(pi)", "p | k and phi'(pi) | pi^k",
                                                "p !| k and phi'(pi) | pi^(k-1)", "p !| k and pi^(k-1) | phi'(pi)"};
  for (int c = 0; c < 4; ++c)
    out << "case " << c + 1 << " (" << names[c] << "): " << (r.case_holds[c] ? "holds" : "fails") << "\n";
  out << "degree-two case: " << r.degree_two_case << "\n";
  if (r.ratio_vp) out << "v_p(k pi^(k-1) / phi'(pi)) = " << r.ratio_vp->to_string() << "\n";
  out << "regime: " << regime_name(r) << "\n";
  return out.str();
}

}  // namespace thh
