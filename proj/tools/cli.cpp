#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "occbloom/analytics.hpp"
#include "occbloom/errors.hpp"
#include "occbloom/filter.hpp"
#include "occbloom/montecarlo.hpp"
#include "occbloom/verify.hpp"

namespace occbloom::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& text, bool csv_ok, const std::string& command) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv" && csv_ok) return Format::Csv;
  throw UsageError("--format " + text + " is not supported by '" + command + "'");
}

std::vector<FilterVariant> parse_variants(const std::string& text) {
  if (text == "both") return {FilterVariant::Classic, FilterVariant::Standard};
  try {
    return {parse_variant(text)};
  } catch (const DomainError&) {
    throw UsageError("--variant must be classic, standard or both");
  }
}

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open " + path + " for writing");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("write failed");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Huge fractions are unreadable in a terminal; JSON always carries them.
std::string fraction_text(const Rational& q) {
  const std::string n = q.numerator().get_str();
  const std::string d = q.denominator().get_str();
  if (n.size() + d.size() <= 64) return q.str();
  return "(" + std::to_string(n.size()) + "-digit / " + std::to_string(d.size()) +
         "-digit fraction; --format json prints it)";
}

json rational_json(const Rational& q, int digits) {
  return {{"fraction", q.str()}, {"decimal", q.to_decimal(digits)}, {"significant_digits", digits}};
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  // Write-then-rename so a failed write never truncates the original.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path + ": " + ec.message());
}

BloomFilter load_filter(const std::string& path) {
  const auto bytes = read_file(path);
  return BloomFilter::deserialize(bytes);
}

// Newline-delimited raw byte strings; only the '\n' terminator is stripped.
std::vector<std::string> read_elements(const std::string& path, std::istream& in) {
  std::ifstream file;
  std::istream* src = &in;
  if (!path.empty() && path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path);
    src = &file;
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(*src, line)) out.push_back(line);
  if (src->bad()) throw IoError("read failed");
  return out;
}

unsigned need(const std::optional<unsigned>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required ") + flag);
  return *v;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::optional<unsigned> m, n, k;
  std::string variant = "standard";
  std::string format = "text";
  std::string out;
  int digits = 6;
};

constexpr const char* kAnalyzeCsvHeader =
    "variant,m,n,k,exact,fraction,log2_exact,E,M,L,U,taylor,efficiency";

int cmd_analyze(const AnalyzeArgs& a, std::ostream& stdout_) {
  const Format format = parse_format(a.format, true, "analyze");
  const unsigned m = need(a.m, "--m");
  const unsigned n = need(a.n, "--n");
  const unsigned k = need(a.k, "--k");
  std::vector<FprReport> reports;
  for (FilterVariant v : parse_variants(a.variant)) reports.push_back(analyze(v, m, n, k));

  Sink sink(a.out, stdout_);
  std::ostream& out = *sink;
  const int d = a.digits;
  if (format == Format::Json) {
    json arr = json::array();
    for (const auto& r : reports) {
      arr.push_back({{"variant", to_string(r.variant)},
                     {"m", r.m},
                     {"n", r.n},
                     {"k", r.k},
                     {"fpr", rational_json(r.exact, d)},
                     {"log2_fpr", num_json(r.log2_exact)},
                     {"cut_down_bits", num_json(-r.log2_exact)},
                     {"bounds",
                      {{"E", r.bounds.E},
                       {"M", r.bounds.M},
                       {"L", rational_json(r.bounds.L, d)},
                       {"U", rational_json(r.bounds.U, d)},
                       {"ordered", r.bounds.ordered}}},
                     {"taylor", r.taylor},
                     {"efficiency", r.has_efficiency ? json(r.efficiency) : json(nullptr)}});
    }
    out << json{{"command", "analyze"}, {"reports", arr}}.dump(2) << '\n';
  } else if (format == Format::Csv) {
    out << kAnalyzeCsvHeader << '\n';
    for (const auto& r : reports) {
      out << to_string(r.variant) << ',' << r.m << ',' << r.n << ',' << r.k << ','
          << r.exact.to_decimal(d) << ',' << r.exact.str() << ',' << num(r.log2_exact) << ','
          << num(r.bounds.E) << ',' << num(r.bounds.M) << ',' << r.bounds.L.to_decimal(d) << ','
          << r.bounds.U.to_decimal(d) << ',' << num(r.taylor) << ','
          << (r.has_efficiency ? num(r.efficiency) : "") << '\n';
    }
  } else {
    for (const auto& r : reports) {
      out << to_string(r.variant) << " filter, m=" << r.m << " n=" << r.n << " k=" << r.k << '\n';
      out << "  fpr          " << r.exact.to_decimal(d) << "  (" << d << " significant digits)\n";
      out << "  exact        " << fraction_text(r.exact) << '\n';
      out << "  log2 fpr     " << num(r.log2_exact) << "  (cut-down " << num(-r.log2_exact)
          << " bits)\n";
      out << "  E            " << num(r.bounds.E) << '\n';
      out << "  M            " << num(r.bounds.M) << '\n';
      out << "  L            " << r.bounds.L.to_decimal(d) << '\n';
      out << "  U            " << r.bounds.U.to_decimal(d) << '\n';
      out << "  bounds       "
          << (r.bounds.ordered ? "L <= f <= U guaranteed (2k+1 <= m)" : "ordering not guaranteed (2k+1 > m)")
          << '\n';
      out << "  taylor       " << num(r.taylor) << '\n';
      out << "  efficiency   " << (r.has_efficiency ? num(r.efficiency) : "undefined (n=0)") << '\n';
    }
  }
  sink.close();
  return kOk;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeArgs {
  std::optional<unsigned> m, n;
  std::optional<double> p;
  std::string variant = "both";
  std::string format = "text";
  std::string out;
};

json optimal_json(const OptimalK& o) {
  return {{"k", o.k}, {"k_last", o.k_last}, {"fpr", rational_json(o.fpr, 4)}, {"log2_fpr", num_json(o.log2_fpr)}};
}

std::string optimal_text(const OptimalK& o) {
  std::string s = "k* = " + std::to_string(o.k);
  if (o.k_last != o.k) s += " (tied up to " + std::to_string(o.k_last) + ")";
  return s + ", fpr " + o.fpr.to_decimal(4);
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& stdout_) {
  const Format format = parse_format(a.format, false, "optimize");
  const int given = (a.m ? 1 : 0) + (a.n ? 1 : 0) + (a.p ? 1 : 0);
  if (given != 2) throw UsageError("optimize needs exactly two of --m, --n, --p");
  if (a.p && !(*a.p > 0 && *a.p < 1)) throw UsageError("--p must lie strictly between 0 and 1");
  if (a.n && *a.n == 0) throw UsageError("--n must be at least 1");
  if (a.m && *a.m == 0) throw UsageError("--m must be at least 1");
  const auto variants = parse_variants(a.variant);

  json result = json::array();
  std::ostringstream text;
  if (a.m && a.n) {
    const unsigned m = *a.m, n = *a.n;
    const double est = optimal_k_estimate(m, n);
    const auto rounded = static_cast<unsigned>(std::clamp(std::lround(est), 1L, static_cast<long>(m)));
    text << "m=" << m << " n=" << n << ", estimate (m/n) ln 2 = " << num(est) << " -> k = " << rounded << '\n';
    for (FilterVariant v : variants) {
      const OptimalK best = optimal_k_exact(v, m, n);
      const Rational at_est = fpr_exact(v, m, n, rounded);
      const double penalty = best.fpr.is_zero() ? 0.0 : ((at_est / best.fpr).to_double() - 1.0) * 100.0;
      const long gap = static_cast<long>(rounded) - static_cast<long>(best.k);
      text << "  " << to_string(v) << ": " << optimal_text(best) << "; at k=" << rounded << " fpr "
           << at_est.to_decimal(4) << " (+" << num(penalty) << "%), estimate gap " << gap << '\n';
      result.push_back({{"variant", to_string(v)},
                        {"m", m},
                        {"n", n},
                        {"optimal", optimal_json(best)},
                        {"estimate", est},
                        {"estimate_k", rounded},
                        {"estimate_fpr", rational_json(at_est, 4)},
                        {"penalty_percent", penalty},
                        {"estimate_gap", gap}});
    }
  } else if (a.m) {
    const unsigned m = *a.m;
    const double p = *a.p;
    const double est = capacity_n_estimate(m, p);
    text << "m=" << m << " p=" << num(p) << ", estimate n = " << num(est) << '\n';
    for (FilterVariant v : variants) {
      const unsigned n_max = capacity_n_max(v, m, p);
      const OptimalK best = optimal_k_exact(v, m, n_max);
      text << "  " << to_string(v) << ": n_max = " << n_max << " with " << optimal_text(best) << '\n';
      result.push_back({{"variant", to_string(v)}, {"m", m}, {"p", p}, {"n_max", n_max},
                        {"estimate", est}, {"optimal", optimal_json(best)}});
    }
  } else {
    const unsigned n = *a.n;
    const double p = *a.p;
    const double est = size_m_estimate(n, p);
    text << "n=" << n << " p=" << num(p) << ", estimate m = " << num(est) << '\n';
    for (FilterVariant v : variants) {
      const unsigned m_min = size_m_min(v, n, p);
      const OptimalK best = optimal_k_exact(v, m_min, n);
      text << "  " << to_string(v) << ": m_min = " << m_min << " with " << optimal_text(best) << '\n';
      result.push_back({{"variant", to_string(v)}, {"n", n}, {"p", p}, {"m_min", m_min},
                        {"estimate", est}, {"optimal", optimal_json(best)}});
    }
  }

  Sink sink(a.out, stdout_);
  if (format == Format::Json) {
    *sink << json{{"command", "optimize"}, {"plans", result}}.dump(2) << '\n';
  } else {
    *sink << text.str();
  }
  sink.close();
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string var;
  unsigned from = 1, to = 1, step = 1;
  std::optional<unsigned> m, n, k;
  std::string variant = "both";
  std::string outputs = "exact,E,M,L,U,taylor,efficiency";
  std::string out;
  std::string format = "csv";
};

const std::vector<std::string> kSweepOutputs = {"exact", "E", "M", "L", "U", "taylor", "efficiency", "kopt"};

std::string sweep_cell(const std::string& what, FilterVariant v, unsigned m, unsigned n, unsigned k) {
  try {
    if (what == "exact") return fpr_exact(v, m, n, k).to_decimal(10);
    if (what == "taylor") return num(fpr_taylor(m, n, k));
    if (what == "efficiency") return n == 0 ? "" : num(efficiency(v, m, n, k));
    const FprBounds b = fpr_bounds(m, n, k);
    if (what == "E") return num(b.E);
    if (what == "M") return num(b.M);
    if (what == "L") return b.L.to_decimal(10);
    return b.U.to_decimal(10);
  } catch (const Error&) {
    return "";  // point outside the variant's domain (e.g. classic k > m)
  }
}

int cmd_sweep(const SweepArgs& a, std::ostream& stdout_) {
  parse_format(a.format, true, "sweep");
  if (a.format != "csv") throw UsageError("sweep writes CSV only");
  if (a.var != "k" && a.var != "n" && a.var != "m") throw UsageError("--var must be k, n or m");
  if (a.step == 0 || a.from > a.to) throw UsageError("empty sweep range");
  std::vector<std::string> outputs;
  {
    std::stringstream ss(a.outputs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (std::find(kSweepOutputs.begin(), kSweepOutputs.end(), item) == kSweepOutputs.end()) {
        throw UsageError("unknown sweep output '" + item + "'");
      }
      outputs.push_back(item);
    }
  }
  if (outputs.empty()) throw UsageError("no sweep outputs selected");
  const bool per_k = std::any_of(outputs.begin(), outputs.end(), [](const std::string& o) { return o != "kopt"; });
  if (a.var != "m" && !a.m) throw UsageError("sweep needs --m");
  if (a.var != "n" && !a.n) throw UsageError("sweep needs --n");
  if (a.var != "k" && per_k && !a.k) throw UsageError("sweep needs --k for the selected outputs");
  const auto variants = parse_variants(a.variant);

  Sink sink(a.out, stdout_);
  std::ostream& out = *sink;
  out << "m,n,k,variant";
  for (const auto& o : outputs) {
    if (o == "kopt") {
      out << ",k_estimate,k_opt,k_opt_last";
    } else {
      out << ',' << o;
    }
  }
  out << '\n';
  for (unsigned x = a.from; x <= a.to; x += a.step) {
    const unsigned m = a.var == "m" ? x : *a.m;
    const unsigned n = a.var == "n" ? x : *a.n;
    const std::optional<unsigned> k = a.var == "k" ? std::optional<unsigned>(x) : a.k;
    if (m == 0) throw UsageError("m must be at least 1");
    if (k && *k == 0) throw UsageError("k must be at least 1");
    for (FilterVariant v : variants) {
      out << m << ',' << n << ',' << (k ? std::to_string(*k) : "") << ',' << to_string(v);
      for (const auto& o : outputs) {
        if (o == "kopt") {
          const OptimalK best = optimal_k_exact(v, m, n);
          out << ',' << (n == 0 ? "" : num(optimal_k_estimate(m, n))) << ',' << best.k << ',' << best.k_last;
        } else {
          out << ',' << sweep_cell(o, v, m, n, *k);
        }
      }
      out << '\n';
    }
    if (a.to - x < a.step) break;  // avoid wrap-around at the top of the range
  }
  sink.close();
  return kOk;
}

// --- filter files -----------------------------------------------------------

struct BuildArgs {
  std::optional<std::uint64_t> m;
  std::optional<unsigned> k;
  std::string variant = "standard";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  if (!a.m) throw UsageError("missing required --m");
  if (a.out.empty()) throw UsageError("build needs --out FILE");
  FilterParams params;
  params.m = *a.m;
  params.k = need(a.k, "--k");
  const auto vs = parse_variants(a.variant);
  if (vs.size() != 1) throw UsageError("build needs a single --variant");
  params.variant = vs.front();
  params.seed = seed_from_u64(a.seed);
  params.validate();
  const BloomFilter filter(params);
  write_file(a.out, filter.serialize());
  out << "built " << to_string(params.variant) << " filter m=" << params.m << " k=" << params.k
      << " seed=" << a.seed << " -> " << a.out << '\n';
  return kOk;
}

struct FileArgs {
  std::string file;
  std::string in;
  std::string format = "text";
};

int cmd_insert(const FileArgs& a, std::ostream& out, std::istream& in) {
  BloomFilter filter = load_filter(a.file);
  const auto elements = read_elements(a.in, in);
  for (const auto& e : elements) filter.insert(e);
  write_file(a.file, filter.serialize());
  out << "inserted " << elements.size() << " elements; bit sum " << filter.bit_sum() << "/"
      << filter.size() << '\n';
  return kOk;
}

int cmd_query(const FileArgs& a, std::ostream& out, std::istream& in) {
  const Format format = parse_format(a.format, false, "query");
  const BloomFilter filter = load_filter(a.file);
  const auto elements = read_elements(a.in, in);
  std::size_t positives = 0;
  json results = json::array();
  for (const auto& e : elements) {
    const bool hit = filter.query(e);
    positives += hit ? 1 : 0;
    if (format == Format::Json) {
      results.push_back({{"element", e}, {"positive", hit}});
    } else {
      out << (hit ? "positive" : "negative") << '\t' << e << '\n';
    }
  }
  if (format == Format::Json) {
    out << json{{"command", "query"}, {"results", results}, {"queried", elements.size()}, {"positives", positives}}
               .dump(2, ' ', false, json::error_handler_t::replace)
        << '\n';
  } else {
    out << "# " << elements.size() << " queried, " << positives << " positive\n";
  }
  return kOk;
}

int cmd_info(const FileArgs& a, std::ostream& out, std::ostream& err) {
  const Format format = parse_format(a.format, false, "info");
  const BloomFilter filter = load_filter(a.file);
  const FilterParams& p = filter.params();
  const std::uint64_t bits = filter.bit_sum();
  const double fill = static_cast<double>(bits) / static_cast<double>(p.m);
  std::optional<double> card;
  try {
    card = estimate_cardinality(filter);
  } catch (const SaturationError&) {
  }
  std::string seed_hex;
  for (std::uint8_t b : p.seed) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", b);
    seed_hex += buf;
  }
  if (format == Format::Json) {
    out << json{{"variant", to_string(p.variant)},
                {"m", p.m},
                {"k", p.k},
                {"seed", seed_hex},
                {"hash_scheme", kHashSchemeVersion},
                {"format_version", kFormatVersion},
                {"count", filter.count() ? json(*filter.count()) : json(nullptr)},
                {"bit_sum", bits},
                {"fill", fill},
                {"estimated_cardinality", card ? json(*card) : json(nullptr)}}
               .dump(2)
        << '\n';
  } else {
    out << "variant      " << to_string(p.variant) << '\n'
        << "m            " << p.m << '\n'
        << "k            " << p.k << '\n'
        << "seed         " << seed_hex << '\n'
        << "hash scheme  " << static_cast<unsigned>(kHashSchemeVersion) << '\n'
        << "count        " << (filter.count() ? std::to_string(*filter.count()) : "unknown") << '\n'
        << "bit sum      " << bits << " (" << num(fill) << " of bits set)\n"
        << "cardinality  " << (card ? num(*card) : "saturated, no estimate") << '\n';
  }
  if (fill > 0.5) {
    err << "warning: more than half of the bits are set; further items are better stored in a new "
           "filter\n";
  }
  return kOk;
}

// --- simulate / verify --------------------------------------------------------

struct SimulateArgs {
  std::optional<unsigned> m, n, k;
  std::string variant = "both";
  unsigned trials = 1000;
  unsigned probes = 100;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& stdout_) {
  const Format format = parse_format(a.format, true, "simulate");
  std::vector<ValidationRow> rows;
  for (FilterVariant v : parse_variants(a.variant)) {
    TrialConfig c;
    c.params.m = need(a.m, "--m");
    c.params.k = need(a.k, "--k");
    c.params.variant = v;
    c.params.seed = seed_from_u64(a.seed);
    c.params.validate();
    c.n = need(a.n, "--n");
    c.trials = a.trials;
    c.probes = a.probes;
    c.rng_seed = a.seed;
    if (c.trials == 0) throw UsageError("--trials must be at least 1");
    rows.push_back(validate(c));
  }
  Sink sink(a.out, stdout_);
  std::ostream& out = *sink;
  if (format == Format::Csv) {
    write_csv_header(out);
    for (const auto& r : rows) write_csv_row(out, r);
  } else if (format == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      const auto& c = r.config;
      arr.push_back({{"m", c.params.m},
                     {"n", c.n},
                     {"k", c.params.k},
                     {"variant", to_string(c.params.variant)},
                     {"trials", c.trials},
                     {"probes", c.probes},
                     {"exact_fpr", r.exact_fpr},
                     {"empirical_fpr", r.fpr.rate},
                     {"std_err", r.fpr.std_error},
                     {"binomial_std_err", r.fpr.binomial_std_error},
                     {"z_score", r.fpr_z},
                     {"mean_bit_sum", r.occupancy.mean},
                     {"exact_mean_bit_sum", r.occupancy.exact_mean},
                     {"mean_z_score", r.mean_z},
                     {"chi_square", r.occupancy.chi_square},
                     {"degrees_of_freedom", r.occupancy.degrees_of_freedom},
                     {"p_value", r.occupancy.p_value}});
    }
    out << json{{"command", "simulate"}, {"rows", arr}}.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      const auto& c = r.config;
      out << to_string(c.params.variant) << " m=" << c.params.m << " n=" << c.n << " k=" << c.params.k
          << ", " << c.trials << " trials x " << c.probes << " probes\n"
          << "  fpr       exact " << num(r.exact_fpr) << ", empirical " << num(r.fpr.rate) << " +- "
          << num(r.fpr.std_error) << " (z " << num(r.fpr_z) << ")\n"
          << "  bit sum   exact mean " << num(r.occupancy.exact_mean) << ", empirical "
          << num(r.occupancy.mean) << " (z " << num(r.mean_z) << ")\n"
          << "  chi2      " << num(r.occupancy.chi_square) << " on " << r.occupancy.degrees_of_freedom
          << " df, p " << num(r.occupancy.p_value) << '\n';
    }
  }
  sink.close();
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  unsigned trials = 10000;
  unsigned probes = 100;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::string format = "text";
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Format format = parse_format(a.format, false, "verify");
  std::vector<int> ids;
  try {
    ids = suite_criteria(a.suite);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  VerifyOptions options;
  options.mc_trials = a.trials;
  options.mc_probes = a.probes;
  options.seed = a.seed;
  options.artifact_dir = a.out;
  bool ok = true;
  json arr = json::array();
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, options);
    ok = ok && r.passed;
    if (format == Format::Json) {
      arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    } else {
      out << format_result(r) << std::endl;
    }
  }
  if (format == Format::Json) {
    out << json{{"suite", a.suite}, {"passed", ok}, {"criteria", arr}}.dump(2) << '\n';
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Exact false-positive analysis and file-based Bloom filters", "occbloom"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Exact FPR, bounds, Taylor estimate and efficiency");
  analyze_cmd->add_option("--m", an.m, "filter bits")->required();
  analyze_cmd->add_option("--n", an.n, "stored items")->required();
  analyze_cmd->add_option("--k", an.k, "bits per item")->required();
  analyze_cmd->add_option("--variant", an.variant, "classic, standard or both")->capture_default_str();
  analyze_cmd->add_option("--format", an.format, "text, json or csv")->capture_default_str();
  analyze_cmd->add_option("--digits", an.digits, "significant digits for decimals")
      ->check(CLI::Range(1, 60))->capture_default_str();
  analyze_cmd->add_option("--out", an.out, "write to FILE instead of stdout");

  OptimizeArgs op;
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "Optimal k for (m, n); largest n for (m, p); smallest m for (n, p)");
  optimize_cmd->add_option("--m", op.m, "filter bits");
  optimize_cmd->add_option("--n", op.n, "stored items");
  optimize_cmd->add_option("--p", op.p, "target false-positive rate");
  optimize_cmd->add_option("--variant", op.variant, "classic, standard or both")->capture_default_str();
  optimize_cmd->add_option("--format", op.format, "text or json")->capture_default_str();
  optimize_cmd->add_option("--out", op.out, "write to FILE instead of stdout");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand(
      "sweep",
      "CSV over a range of k, n or m. Columns: m,n,k,variant then the selected outputs; "
      "kopt expands to k_estimate,k_opt,k_opt_last");
  sweep_cmd->add_option("--var", sw.var, "swept parameter: k, n or m")->required();
  sweep_cmd->add_option("--from", sw.from, "first value (inclusive)")->required();
  sweep_cmd->add_option("--to", sw.to, "last value (inclusive)")->required();
  sweep_cmd->add_option("--step", sw.step, "increment")->capture_default_str();
  sweep_cmd->add_option("--m", sw.m, "fixed filter bits");
  sweep_cmd->add_option("--n", sw.n, "fixed stored items");
  sweep_cmd->add_option("--k", sw.k, "fixed bits per item");
  sweep_cmd->add_option("--variant", sw.variant, "classic, standard or both")->capture_default_str();
  sweep_cmd->add_option("--outputs", sw.outputs, "comma list of exact,E,M,L,U,taylor,efficiency,kopt")
      ->capture_default_str();
  sweep_cmd->add_option("--format", sw.format, "csv")->capture_default_str();
  sweep_cmd->add_option("--out", sw.out, "write to FILE instead of stdout");

  BuildArgs bu;
  auto* build_cmd = app.add_subcommand("build", "Write an empty filter file");
  build_cmd->add_option("--m", bu.m, "filter bits")->required();
  build_cmd->add_option("--k", bu.k, "bits per item")->required();
  build_cmd->add_option("--variant", bu.variant, "classic or standard")->capture_default_str();
  build_cmd->add_option("--seed", bu.seed, "hash seed")->capture_default_str();
  build_cmd->add_option("--out", bu.out, "filter file")->required();

  FileArgs ins, qry, inf;
  auto* insert_cmd = app.add_subcommand("insert", "Insert newline-delimited elements and rewrite the file");
  insert_cmd->add_option("file", ins.file, "filter file")->required();
  insert_cmd->add_option("--in", ins.in, "element file (default stdin)");
  auto* query_cmd = app.add_subcommand("query", "Print a verdict per newline-delimited element");
  query_cmd->add_option("file", qry.file, "filter file")->required();
  query_cmd->add_option("--in", qry.in, "element file (default stdin)");
  query_cmd->add_option("--format", qry.format, "text or json")->capture_default_str();
  auto* info_cmd = app.add_subcommand("info", "Parameters, bit sum and estimated cardinality");
  info_cmd->add_option("file", inf.file, "filter file")->required();
  info_cmd->add_option("--format", inf.format, "text or json")->capture_default_str();

  SimulateArgs si;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo comparison against exact values");
  simulate_cmd->add_option("--m", si.m, "filter bits")->required();
  simulate_cmd->add_option("--n", si.n, "items per trial")->required();
  simulate_cmd->add_option("--k", si.k, "bits per item")->required();
  simulate_cmd->add_option("--variant", si.variant, "classic, standard or both")->capture_default_str();
  simulate_cmd->add_option("--trials", si.trials, "independent filters")->capture_default_str();
  simulate_cmd->add_option("--probes", si.probes, "never-inserted queries per trial")->capture_default_str();
  simulate_cmd->add_option("--seed", si.seed, "hash and element seed")->capture_default_str();
  simulate_cmd->add_option("--format", si.format, "text, json or csv")->capture_default_str();
  simulate_cmd->add_option("--out", si.out, "write to FILE instead of stdout");

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "Run an acceptance suite; exit 3 on failure");
  verify_cmd->add_option("suite", ve.suite, "reference-values, oracle-small, invariants, montecarlo, "
                                             "asymptotics, valley, conjectures or all")
      ->capture_default_str();
  verify_cmd->add_option("--trials", ve.trials, "Monte Carlo trials")->capture_default_str();
  verify_cmd->add_option("--probes", ve.probes, "Monte Carlo probes per trial")->capture_default_str();
  verify_cmd->add_option("--seed", ve.seed, "Monte Carlo seed")->capture_default_str();
  verify_cmd->add_option("--format", ve.format, "text or json")->capture_default_str();
  verify_cmd->add_option("--out", ve.out, "directory for CSV artifacts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(an, out);
    if (*optimize_cmd) return cmd_optimize(op, out);
    if (*sweep_cmd) return cmd_sweep(sw, out);
    if (*build_cmd) return cmd_build(bu, out);
    if (*insert_cmd) return cmd_insert(ins, out, in);
    if (*query_cmd) return cmd_query(qry, out, in);
    if (*info_cmd) return cmd_info(inf, out, err);
    if (*simulate_cmd) return cmd_simulate(si, out);
    if (*verify_cmd) return cmd_verify(ve, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "error: malformed filter file: " << e.what() << '\n';
    return kIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace occbloom::cli
