#include "cli.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "moc/moc.hpp"

namespace moc::cli {

namespace {

struct HelpRequested {
  std::string text;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      items.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  items.push_back(current);
  for (const auto& it : items)
    if (it.empty()) throw ParseError("empty item in list '" + text + "'");
  return items;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
    case Command::lemma2: return "lemma2";
    case Command::lemma3: return "lemma3";
    case Command::jseries: return "jseries";
    case Command::bench: return "bench";
  }
  return "";
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1U, std::thread::hardware_concurrency());
}

void emit_report(const VerificationReport& r, const CliConfig& c, std::ostream& out) {
  const ReportOptions opt{c.timings};
  if (c.format == Format::csv) out << to_csv(r, opt) << '\n';
  else out << to_json(r, opt).dump() << '\n';
}

int run_verify(const CliConfig& c, std::ostream& out) {
  if (c.alpha.size() != c.gamma.size())
    throw InvalidInstance("alpha has " + std::to_string(c.alpha.size()) + " coordinates but gamma has " +
                          std::to_string(c.gamma.size()));
  const IdentityInstance inst = IdentityInstance::make(c.s, c.alpha, c.gamma);
  const VerificationReport r = verify(inst);
  bool ok = r.all_equal && r.lambda_parity;
  if (!c.poly_gamma) {
    if (c.format == Format::csv) out << csv_header() << '\n';
    emit_report(r, c, out);
    return ok ? 0 : 1;
  }
  const PolyCertificate cert = verify_poly_gamma(inst, *c.poly_gamma);
  ok = ok && cert.equal;
  if (c.format == Format::csv) {
    out << csv_header() << ",poly_gamma,poly_equal,poly_degree,lhs_poly,rhs_poly\n";
    out << to_csv(r, {c.timings}) << ',' << *c.poly_gamma << ',' << (cert.equal ? "true" : "false") << ','
        << cert.lhs.degree() << ",\"" << join(cert.lhs.coefficients()) << "\",\"" << join(cert.rhs.coefficients())
        << "\"\n";
  } else {
    ordered_json j = to_json(r, {c.timings});
    j["poly_gamma"] = *c.poly_gamma;
    j["poly_equal"] = cert.equal;
    j["poly_degree"] = cert.lhs.degree();
    j["lhs_poly"] = to_json(cert.lhs);
    j["rhs_poly"] = to_json(cert.rhs);
    out << j.dump() << '\n';
  }
  return ok ? 0 : 1;
}

SweepSpec sweep_spec(const CliConfig& c) {
  return SweepSpec{c.max_s, c.max_d, c.gamma_set, c.cap, c.unsafe_even_weight};
}

int run_probe(const CliConfig& c, std::ostream& out) {
  // Outside the identity's hypothesis: report only, exit 0.
  if (c.format == Format::csv) out << "hypothesis,s,alpha,gamma,lhs_direct,lhs_residue,rhs,lhs_equals_rhs\n";
  for_each_sweep_selection(sweep_spec(c), [&](unsigned s, const std::vector<unsigned>& alpha,
                                              std::vector<Rational> gamma) {
    const ProbeResult p = probe_unchecked(s, alpha, std::move(gamma));
    const bool eq = p.lhs_direct == p.rhs;
    if (c.format == Format::csv) {
      out << "even_weight," << p.s << ",\"" << join(p.alpha) << "\",\"" << join(p.gamma) << "\"," << p.lhs_direct
          << ',' << p.lhs_residue << ',' << p.rhs << ',' << (eq ? "true" : "false") << '\n';
    } else {
      ordered_json a = ordered_json::array();
      for (unsigned x : p.alpha) a.push_back(x);
      ordered_json j{{"hypothesis", "even_weight"}, {"s", p.s},
                     {"alpha", a},                  {"gamma", to_json(p.gamma)},
                     {"lhs_direct", p.lhs_direct.str()}, {"lhs_residue", p.lhs_residue.str()},
                     {"rhs", p.rhs.str()},          {"lhs_equals_rhs", eq}};
      out << j.dump() << '\n';
    }
  });
  return 0;
}

int run_sweep(const CliConfig& c, std::ostream& out) {
  if (c.unsafe_even_weight) return run_probe(c, out);
  const auto reports = sweep(sweep_spec(c), resolve_jobs(c.jobs));
  if (c.format == Format::csv) out << csv_header() << '\n';
  bool ok = true;
  for (const auto& r : reports) {
    emit_report(r, c, out);
    ok = ok && r.all_equal && r.lambda_parity;
  }
  return ok ? 0 : 1;
}

int run_bench(const CliConfig& c, std::ostream& out) {
  SweepSpec spec = sweep_spec(c);
  const auto reports = sweep(spec, resolve_jobs(c.jobs));
  out << "s,d,alpha,gamma,direct_terms,expected_direct_terms,direct_us,residue_ops,residue_us,theorem_ops,"
         "theorem_us,all_equal\n";
  bool ok = true;
  for (const auto& r : reports) {
    const unsigned s = r.instance.s;
    const unsigned d = r.instance.d;
    mpz_class expected = 0;
    for (unsigned j = 0; j <= s; ++j) expected += binomial_count(s - j + d, d);
    const bool counter_ok = expected == r.costs.direct_terms;
    ok = ok && counter_ok && r.all_equal;
    out << s << ',' << d << ",\"" << join(r.instance.alpha) << "\",\"" << join(r.instance.gamma) << "\","
        << r.costs.direct_terms << ',' << expected.get_str() << ',' << (c.timings ? r.timings.direct_us : 0) << ','
        << r.costs.residue_ops << ',' << (c.timings ? r.timings.residue_us : 0) << ',' << r.costs.theorem_ops << ','
        << (c.timings ? r.timings.theorem_us : 0) << ',' << (r.all_equal ? "true" : "false") << '\n';
  }
  return ok ? 0 : 1;
}

int run_lemma2(const CliConfig& c, std::ostream& out) {
  const CkTable table = ck_expansion(c.series_alpha);
  const Rational inv = factorial(c.series_alpha).inverse();
  bool integer = true;
  for (const auto& p : table.entries) integer = integer && p.has_integer_coefficients();
  if (c.format == Format::csv) {
    out << "alpha,k,c_k,h_k" << (c.series_gamma ? ",h_k_value" : "") << '\n';
    for (std::size_t k = 0; k < table.entries.size(); ++k) {
      out << c.series_alpha << ',' << k << ",\"" << join(table.entries[k].coefficients()) << "\",\""
          << join((table.entries[k] * inv).coefficients()) << '"';
      if (c.series_gamma) out << ',' << (table.entries[k].eval(*c.series_gamma) * inv).str();
      out << '\n';
    }
    return 0;
  }
  ordered_json j = to_json(table);
  j["integer_coefficients"] = integer;
  ordered_json h = ordered_json::array();
  for (std::size_t k = 1; k < table.entries.size(); ++k) h.push_back(to_json(table.entries[k] * inv));
  j["h"] = h;
  if (c.series_gamma) {
    j["gamma"] = c.series_gamma->str();
    ordered_json values = ordered_json::array();
    for (unsigned k = 1; k <= c.series_alpha / 2; ++k) values.push_back(hk(c.series_alpha, k, *c.series_gamma).str());
    j["h_values"] = values;
  }
  out << j.dump() << '\n';
  return 0;
}

int run_lemma3(const CliConfig& c, std::ostream& out) {
  bool ok = true;
  if (c.format == Format::csv) out << "s,k,value\n";
  for (unsigned s = 0; s <= c.max_s; ++s) {
    const Rational J = lemma3_J(s);
    const bool j_ok = J == Rational(4).pow(s);
    std::vector<Rational> jk;
    bool even_zero = true;
    for (unsigned k = 1; k <= 2 * s; ++k) {
      jk.push_back(lemma3_Jk(s, k));
      if (k % 2 == 0 && !jk.back().is_zero()) even_zero = false;
    }
    ok = ok && j_ok && even_zero;
    if (c.format == Format::csv) {
      out << s << ",0," << J << '\n';
      for (unsigned k = 1; k <= 2 * s; ++k) out << s << ',' << k << ',' << jk[k - 1] << '\n';
    } else {
      ordered_json j{{"s", s},           {"J", J.str()}, {"J_equals_4_pow_s", j_ok},
                     {"J_k", to_json(jk)}, {"even_k_zero", even_zero}};
      out << j.dump() << '\n';
    }
  }
  return ok ? 0 : 1;
}

int run_jseries(const CliConfig& c, std::ostream& out) {
  const Rational gamma = c.series_gamma.value_or(Rational(0));
  const TSeries direct = j_series(c.series_alpha, gamma, c.order);
  const TSeries closed = j_closed(c.series_alpha, gamma, c.order);
  const TSeries oracle = nested_exp_core(gamma, c.order, c.series_alpha).coefficient(c.series_alpha);
  const bool closed_ok = direct == closed;
  const bool oracle_ok = direct == oracle;
  if (c.format == Format::csv) {
    out << "n,coefficient,closed,oracle\n";
    for (std::size_t n = 0; n <= c.order; ++n)
      out << n << ',' << direct[n] << ',' << closed[n] << ',' << oracle[n] << '\n';
  } else {
    ordered_json j{{"alpha", c.series_alpha},
                   {"gamma", gamma.str()},
                   {"order", c.order},
                   {"coefficients", to_json(direct.coefficients())},
                   {"closed_matches", closed_ok},
                   {"oracle_matches", oracle_ok}};
    out << j.dump() << '\n';
  }
  return closed_ok && oracle_ok ? 0 : 1;
}

}  // namespace

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& item : split_list(text)) {
    if (!std::all_of(item.begin(), item.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) || item.size() > 9)
      throw ParseError("malformed nonnegative integer '" + item + "' in '" + text + "'");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(Rational::parse(item));
  return out;
}

CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig c;
  CLI::App app{"Exact verification of a multiple combinatorial identity by the method of coefficients", "moc"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string alpha, gamma, gamma_set, series_gamma;
  std::optional<unsigned> poly_gamma;
  std::optional<std::size_t> cap;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--no-timings", [&](std::int64_t) { c.timings = false; }, "Write timing fields as 0");
  };

  auto* verify_cmd = app.add_subcommand("verify", "Verify one instance by all routes");
  verify_cmd->add_option("--s", c.s, "s (|alpha| = 2s+1)")->required();
  verify_cmd->add_option("--alpha", alpha, "a0,...,ad")->required();
  verify_cmd->add_option("--gamma", gamma, "g0,...,gd (rationals p/q)")->required();
  verify_cmd->add_option("--poly-gamma", poly_gamma, "Certify as a polynomial identity in gamma_i");
  add_format(verify_cmd);

  auto add_sweep_options = [&](CLI::App* sub) {
    sub->add_option("--max-s", c.max_s)->required();
    sub->add_option("--max-d", c.max_d)->required();
    sub->add_option("--gamma-set", gamma_set, "g1,g2,...")->required();
    sub->add_option("--jobs", c.jobs, "Worker threads (0: hardware concurrency)");
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "Verify every instance of a parameter grid");
  add_sweep_options(sweep_cmd);
  sweep_cmd->add_option("--cap", cap, "Maximum number of instances (evenly strided subsample)")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--unsafe-even-weight", c.unsafe_even_weight,
                      "Probe |alpha| = 2s instead (reported, never asserted)");
  add_format(sweep_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Per-instance route costs and timings as CSV");
  add_sweep_options(bench_cmd);
  bench_cmd->add_flag("--no-timings", [&](std::int64_t) { c.timings = false; }, "Write timing fields as 0");

  auto* lemma2_cmd = app.add_subcommand("lemma2", "Print the c_k / h_k table for one alpha");
  lemma2_cmd->add_option("--alpha", c.series_alpha)->required();
  lemma2_cmd->add_option("--gamma", series_gamma, "Also evaluate h_k at this gamma");
  add_format(lemma2_cmd);

  auto* lemma3_cmd = app.add_subcommand("lemma3", "Print J(s) and the J_k grid");
  lemma3_cmd->add_option("--max-s", c.max_s)->required();
  add_format(lemma3_cmd);

  auto* jseries_cmd = app.add_subcommand("jseries", "Expand J_{alpha,gamma}(t)");
  jseries_cmd->add_option("--alpha", c.series_alpha)->required();
  jseries_cmd->add_option("--gamma", series_gamma)->required();
  jseries_cmd->add_option("--order", c.order)->required();
  add_format(jseries_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (*verify_cmd) {
    c.command = Command::verify;
    c.alpha = parse_unsigned_list(alpha);
    c.gamma = parse_rational_list(gamma);
    c.poly_gamma = poly_gamma;
  } else if (*sweep_cmd || *bench_cmd) {
    c.command = *sweep_cmd ? Command::sweep : Command::bench;
    c.gamma_set = parse_rational_list(gamma_set);
    c.cap = cap;
  } else if (*lemma2_cmd) {
    c.command = Command::lemma2;
  } else if (*lemma3_cmd) {
    c.command = Command::lemma3;
  } else if (*jseries_cmd) {
    c.command = Command::jseries;
  }
  if (!series_gamma.empty()) c.series_gamma = Rational::parse(series_gamma);
  c.format = format == "csv" ? Format::csv : Format::json;
  return c;
}

std::string to_args(const CliConfig& c) {
  std::ostringstream os;
  os << command_name(c.command);
  switch (c.command) {
    case Command::verify:
      os << " --s " << c.s << " --alpha " << join(c.alpha) << " --gamma=" << join(c.gamma);
      if (c.poly_gamma) os << " --poly-gamma " << *c.poly_gamma;
      break;
    case Command::sweep:
    case Command::bench:
      os << " --max-s " << c.max_s << " --max-d " << c.max_d << " --gamma-set=" << join(c.gamma_set) << " --jobs "
         << c.jobs;
      if (c.command == Command::sweep) {
        if (c.cap) os << " --cap " << *c.cap;
        if (c.unsafe_even_weight) os << " --unsafe-even-weight";
      }
      break;
    case Command::lemma2:
      os << " --alpha " << c.series_alpha;
      if (c.series_gamma) os << " --gamma=" << c.series_gamma->str();
      break;
    case Command::lemma3:
      os << " --max-s " << c.max_s;
      break;
    case Command::jseries:
      os << " --alpha " << c.series_alpha << " --gamma=" << c.series_gamma.value_or(Rational(0)).str() << " --order "
         << c.order;
      break;
  }
  if (c.command != Command::bench) os << " --format " << (c.format == Format::csv ? "csv" : "json");
  if (!c.timings) os << " --no-timings";
  return os.str();
}

int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  (void)err;
  switch (c.command) {
    case Command::verify: return run_verify(c, out);
    case Command::sweep: return run_sweep(c, out);
    case Command::bench: return run_bench(c, out);
    case Command::lemma2: return run_lemma2(c, out);
    case Command::lemma3: return run_lemma3(c, out);
    case Command::jseries: return run_jseries(c, out);
  }
  return 2;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "moc: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "moc: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace moc::cli
