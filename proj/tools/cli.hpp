#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "moc/rational.hpp"

namespace moc::cli {

enum class Command { verify, sweep, lemma2, lemma3, jseries, bench };
enum class Format { json, csv };

struct CliConfig {
  Command command = Command::verify;
  Format format = Format::json;
  unsigned jobs = 1;
  bool timings = true;

  // verify
  unsigned s = 0;
  std::vector<unsigned> alpha;
  std::vector<Rational> gamma;
  std::optional<unsigned> poly_gamma;

  // sweep, bench; lemma3 uses max_s
  unsigned max_s = 0;
  unsigned max_d = 0;
  std::vector<Rational> gamma_set;
  std::optional<std::size_t> cap;
  bool unsafe_even_weight = false;

  // lemma2, jseries
  unsigned series_alpha = 0;
  std::optional<Rational> series_gamma;
  unsigned order = 0;

  friend bool operator==(const CliConfig&, const CliConfig&) = default;
};

std::vector<unsigned> parse_unsigned_list(const std::string& text);
std::vector<Rational> parse_rational_list(const std::string& text);

// Throws UsageError (or ParseError) on malformed input. `args` excludes the
// program name.
CliConfig parse_args(const std::vector<std::string>& args);

// Canonical argument string; parse_args(split(to_args(c))) == c.
std::string to_args(const CliConfig& config);

// Exit code: 0 when every check holds (or the command is informational),
// 1 on any mismatch.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run; usage errors print a diagnostic to `err` and return 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moc::cli
