#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "moc/identity.hpp"
#include "moc/lemma.hpp"
#include "moc/poly.hpp"
#include "moc/rational.hpp"
#include "moc/series.hpp"

namespace moc {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline ordered_json to_json(const Poly& p) { return to_json(p.coefficients()); }

inline ordered_json to_json(const TSeries& s) {
  return ordered_json{{"order", s.order()}, {"coefficients", to_json(s.coefficients())}};
}

inline ordered_json to_json(const CkTable& t) {
  ordered_json entries = ordered_json::array();
  for (const auto& p : t.entries) entries.push_back(to_json(p));
  return ordered_json{{"alpha", t.alpha}, {"entries", entries}};
}

inline std::string join(const std::vector<unsigned>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return out;
}

inline std::string join(const std::vector<Rational>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + v[i].str();
  return out;
}

struct ReportOptions {
  bool timings = true;  // false: timing fields are written as 0
};

inline Rational alpha_factorial(const IdentityInstance& inst) {
  Rational f(1);
  for (unsigned a : inst.alpha) f *= factorial(a);
  return f;
}

// Field order shared by the JSON and CSV forms.
inline const std::vector<std::string>& report_fields() {
  static const std::vector<std::string> fields{
      "s",           "d",          "alpha",       "gamma",        "lhs_direct",   "lhs_residue",
      "lhs_theorem", "rhs",        "all_equal",   "lambda_parity", "k1_lhs",      "k1_rhs",
      "direct_us",   "residue_us", "theorem_us",  "direct_terms", "residue_ops", "theorem_ops"};
  return fields;
}

inline ordered_json to_json(const VerificationReport& r, const ReportOptions& opt = {}) {
  // Values are kept divided by alpha!; the k1_* fields restore the undivided form.
  const Rational af = alpha_factorial(r.instance);
  ordered_json alpha = ordered_json::array();
  for (unsigned a : r.instance.alpha) alpha.push_back(a);
  ordered_json j;
  j["s"] = r.instance.s;
  j["d"] = r.instance.d;
  j["alpha"] = alpha;
  j["gamma"] = to_json(r.instance.gamma);
  j["lhs_direct"] = r.lhs_direct.str();
  j["lhs_residue"] = r.lhs_residue.str();
  j["lhs_theorem"] = r.lhs_theorem.str();
  j["rhs"] = r.rhs.str();
  j["all_equal"] = r.all_equal;
  j["lambda_parity"] = r.lambda_parity;
  j["k1_lhs"] = (r.lhs_direct * af).str();
  j["k1_rhs"] = (r.rhs * af).str();
  j["direct_us"] = opt.timings ? r.timings.direct_us : 0;
  j["residue_us"] = opt.timings ? r.timings.residue_us : 0;
  j["theorem_us"] = opt.timings ? r.timings.theorem_us : 0;
  j["direct_terms"] = r.costs.direct_terms;
  j["residue_ops"] = r.costs.residue_ops;
  j["theorem_ops"] = r.costs.theorem_ops;
  return j;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& f : report_fields()) out += (out.empty() ? "" : ",") + f;
  return out;
}

inline std::string to_csv(const VerificationReport& r, const ReportOptions& opt = {}) {
  const ordered_json j = to_json(r, opt);
  std::ostringstream os;
  bool first = true;
  for (const auto& f : report_fields()) {
    if (!first) os << ',';
    first = false;
    if (f == "alpha") os << '"' << join(r.instance.alpha) << '"';
    else if (f == "gamma") os << '"' << join(r.instance.gamma) << '"';
    else if (j[f].is_string()) os << j[f].get<std::string>();
    else os << j[f].dump();
  }
  return os.str();
}

}  // namespace moc
