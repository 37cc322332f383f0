#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "fmpartners/modarith.hpp"
#include "fmpartners/mukai.hpp"

namespace fmpartners::cli {

namespace {

using fmcount::FMRecord;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
std::string optional_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Runs fn(i) for i in [0, count) on `jobs` threads; results in index order.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<std::optional<Result>> slots(count);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

const char* depth_name(Depth d) {
  switch (d) {
    case Depth::Formula: return "formula";
    case Depth::Enumeration: return "enumeration";
    case Depth::Oracle: return "oracle";
    case Depth::Gram: return "gram";
  }
  return "?";
}

std::string format_record_text(const FMRecord& r) {
  std::ostringstream os;
  os << "d=" << r.d;
  if (r.d_prime) os << " d'=" << *r.d_prime;
  os << " u_2d=" << r.u_2d << " FM=" << r.count_formula;
  if (r.counts_by_type) {
    const auto& c = *r.counts_by_type;
    os << " M_ST=" << c.total() << " by_type=(" << c.type_I << ',' << c.type_II_k0 << ',' << c.type_II_k1
       << ',' << c.type_II_k2 << ')';
  }
  if (r.count_enumeration) os << " fm_enumeration=" << *r.count_enumeration;
  if (r.count_oracle) os << " fm_oracle=" << *r.count_oracle;
  os << " agree=" << (r.agree ? "true" : "false");
  return os.str();
}

std::string format_descriptor(const fmcount::OverlatticeDescriptor& desc, std::uint64_t d_prime) {
  std::ostringstream os;
  const auto generators = fmcount::glue_generators(desc, d_prime);
  if (const auto* g = std::get_if<fmcount::TypeIGlue>(&desc)) {
    os << "TypeI  b1=" << g->b1 << " b2=" << g->b2 << "  (" << g->b1 << "l + t1)/3, (" << g->b2
       << "l + t2)/" << 2 * d_prime;
  } else {
    const auto& g2 = std::get<fmcount::TypeIIGlue>(desc);
    os << "TypeII k=" << g2.k << " b3=" << g2.b3 << "  (" << g2.b3 << "l + " << 2 * d_prime * g2.k
       << "t1 + t2)/" << 6 * d_prime;
  }
  os << "  dual coords:";
  for (const auto& x : generators) os << " [" << x[0] << ", " << x[1] << ", " << x[2] << ']';
  return os.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + out_path);
  file << text;
}

fmcount::RecordOptions record_options(std::uint64_t enum_max, std::uint64_t oracle_max) {
  fmcount::RecordOptions options;
  options.enumeration_max_d_prime = enum_max;
  options.oracle_max_d_prime = std::min(oracle_max, fmcount::kOracleMaxDPrime);
  return options;
}

void warn_on_raised_bound(std::uint64_t value, std::uint64_t default_value, const char* flag,
                          std::ostream& err) {
  if (value > default_value)
    err << "warning: " << flag << " raised above its default (" << default_value
        << "); runtime grows with d'\n";
}

}  // namespace

// ---------------------------------------------------------------- serialization

std::string csv_header() {
  return "d,d_prime,u_2d,type_I,type_II_k0,type_II_k1,type_II_k2,M_ST,fm_formula,fm_oracle,agree";
}

std::string to_csv_row(const FMRecord& r) {
  std::ostringstream os;
  os << r.d << ',' << optional_cell(r.d_prime) << ',' << r.u_2d << ',';
  if (r.counts_by_type) {
    const auto& c = *r.counts_by_type;
    os << c.type_I << ',' << c.type_II_k0 << ',' << c.type_II_k1 << ',' << c.type_II_k2 << ',' << c.total();
  } else {
    os << ",,,,";
  }
  os << ',' << r.count_formula << ',' << optional_cell(r.count_oracle) << ',' << (r.agree ? "true" : "false");
  return os.str();
}

std::string to_json(const FMRecord& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = r.d;
  j["d_prime"] = optional_json(r.d_prime);
  j["u_2d"] = r.u_2d;
  if (r.counts_by_type) {
    const auto& c = *r.counts_by_type;
    j["type_I"] = c.type_I;
    j["type_II_k0"] = c.type_II_k0;
    j["type_II_k1"] = c.type_II_k1;
    j["type_II_k2"] = c.type_II_k2;
    j["M_ST"] = c.total();
  } else {
    for (const char* key : {"type_I", "type_II_k0", "type_II_k1", "type_II_k2", "M_ST"}) j[key] = nullptr;
  }
  j["fm_formula"] = r.count_formula;
  j["fm_oracle"] = optional_json(r.count_oracle);
  j["agree"] = r.agree;
  return j.dump();
}

// ---------------------------------------------------------------- sweeps

std::vector<FMRecord> tabulate(std::uint64_t d_min, std::uint64_t d_max, unsigned jobs,
                               const fmcount::RecordOptions& options) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = d_min; d <= d_max; ++d)
    if (mukai::SpecialDiscriminant::admissible(d)) ds.push_back(d);
  return parallel_map<FMRecord>(ds.size(), jobs,
                                [&](std::size_t i) { return fmcount::make_record(ds[i], options); });
}

VerifyOutcome verify(const VerifyOptions& options) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 18; d <= options.d_max; d += 18) ds.push_back(d);

  struct Item {
    std::optional<std::string> mismatch;
    std::optional<std::string> skipped;
    std::size_t lattices = 0;
  };

  auto check = [&](std::size_t i) {
    const std::uint64_t d = ds[i];
    const std::uint64_t dp = d / 18;
    Item item;
    bool bad = false;
    std::ostringstream detail;
    std::ostringstream skipped;

    const std::uint64_t formula = fmcount::fm_count(d);
    const std::uint64_t closed = fmcount::count_M_ST_closed_form(dp);
    detail << "d=" << d << " d'=" << dp << " formula=" << formula << " closed_form=" << closed / 2;
    bad |= closed % 2 != 0 || closed / 2 != formula;

    if (options.depth >= Depth::Enumeration) {
      if (dp <= options.enumeration_max_d_prime) {
        const auto by_type = fmcount::count_M_ST_by_type(dp);
        const auto expected = fmcount::closed_form_counts(dp);
        detail << " enumeration=" << by_type.total() / 2 << " by_type=(" << by_type.type_I << ','
               << by_type.type_II_k0 << ',' << by_type.type_II_k1 << ',' << by_type.type_II_k2 << ')';
        bad |= by_type != expected || by_type.total() != 2 * formula;
      } else {
        skipped << " enumeration";
      }
    }
    if (options.depth >= Depth::Oracle) {
      if (dp <= std::min(options.oracle_max_d_prime, fmcount::kOracleMaxDPrime)) {
        const std::uint64_t oracle = fmcount::glue_oracle_count(dp);
        detail << " oracle=" << oracle / 2;
        bad |= oracle != 2 * formula;
      } else {
        skipped << " oracle";
      }
    }
    if (options.depth >= Depth::Gram) {
      if (dp <= options.gram_max_d_prime) {
        std::size_t invalid = 0;
        for (const auto& desc : fmcount::enumerate_all(dp)) {
          ++item.lattices;
          if (!fmcount::assemble(desc, dp).valid(dp)) ++invalid;
        }
        detail << " gram_invalid=" << invalid;
        bad |= invalid != 0;
      } else {
        skipped << " gram";
      }
    }
    if (bad) item.mismatch = detail.str();
    if (!skipped.str().empty()) item.skipped = "d=" + std::to_string(d) + " skipped:" + skipped.str();
    return item;
  };

  VerifyOutcome outcome;
  for (auto& item : parallel_map<Item>(ds.size(), options.jobs, check)) {
    ++outcome.checked;
    outcome.lattices_assembled += item.lattices;
    if (item.mismatch) outcome.mismatches.push_back(std::move(*item.mismatch));
    if (item.skipped) outcome.skipped.push_back(std::move(*item.skipped));
  }
  return outcome;
}

// ---------------------------------------------------------------- entry point

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier-Mukai partner counts for very general special cubic fourfolds"};
  app.require_subcommand(1);

  std::uint64_t d = 0, d_min = 8, d_max = 0, n = 0;
  std::string format, out_path, depth_text = "oracle";
  unsigned jobs = 1;
  bool list = false;
  std::uint64_t enum_max = kDefaultEnumerationMaxDPrime;
  std::uint64_t oracle_max = kDefaultOracleMaxDPrime;
  std::uint64_t gram_max = kDefaultGramMaxDPrime;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--enum-max-dprime", enum_max, "Largest d' for the enumeration path");
    cmd->add_option("--oracle-max-dprime", oracle_max, "Largest d' for the glue oracle (at most 10000)");
  };

  auto* count = app.add_subcommand("count", "Report FM-partner counts for one discriminant");
  count->add_option("--d", d, "Discriminant")->required();
  count->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  count->add_option("--out", out_path, "Write output to FILE");
  add_bounds(count);

  auto* table = app.add_subcommand("table", "Tabulate records for every admissible d in a range");
  table->add_option("--d-min", d_min, "Smallest d")->capture_default_str();
  table->add_option("--d-max", d_max, "Largest d")->required();
  table->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  table->add_option("--out", out_path, "Write output to FILE");
  add_bounds(table);

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every computation path for 18 | d <= d-max");
  verify_cmd->add_option("--d-max", d_max, "Largest d")->required();
  verify_cmd->add_option("--depth", depth_text, "Deepest path to run")
      ->check(CLI::IsMember({"formula", "enumeration", "oracle", "gram"}))
      ->capture_default_str();
  verify_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  verify_cmd->add_option("--gram-max-dprime", gram_max, "Largest d' for lattice assembly");
  verify_cmd->add_option("--out", out_path, "Write output to FILE");
  add_bounds(verify_cmd);

  auto* roots = app.add_subcommand("roots", "Count square roots of unity modulo n");
  roots->add_option("--n", n, "Modulus")->required();
  roots->add_flag("--list", list, "Also list the residues");
  roots->add_option("--out", out_path, "Write output to FILE");

  auto* glue = app.add_subcommand("glue", "List the even overlattice descriptors for 18 | d");
  glue->add_option("--d", d, "Discriminant")->required();
  glue->add_option("--out", out_path, "Write output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::ostringstream buffer;
    int code = kExitOk;

    if (*count) {
      warn_on_raised_bound(enum_max, kDefaultEnumerationMaxDPrime, "--enum-max-dprime", err);
      const auto record = fmcount::make_record(d, record_options(enum_max, oracle_max));
      if (format == "csv")
        buffer << csv_header() << '\n' << to_csv_row(record) << '\n';
      else if (format == "json")
        buffer << to_json(record) << '\n';
      else
        buffer << format_record_text(record) << '\n';
      if (!record.agree) code = kExitMismatch;
    } else if (*table) {
      if (d_min < 8 || d_min > d_max)
        throw UsageError("bad range: need 8 <= d-min <= d-max, got " + std::to_string(d_min) + ".." +
                         std::to_string(d_max));
      warn_on_raised_bound(enum_max, kDefaultEnumerationMaxDPrime, "--enum-max-dprime", err);
      const auto records = tabulate(d_min, d_max, jobs, record_options(enum_max, oracle_max));
      if (format == "json") {
        buffer << "[\n";
        for (std::size_t i = 0; i < records.size(); ++i)
          buffer << to_json(records[i]) << (i + 1 < records.size() ? ",\n" : "\n");
        buffer << "]\n";
      } else {
        buffer << csv_header() << '\n';
        for (const auto& r : records) buffer << to_csv_row(r) << '\n';
      }
    } else if (*verify_cmd) {
      VerifyOptions options;
      options.d_max = d_max;
      options.jobs = jobs;
      options.enumeration_max_d_prime = enum_max;
      options.oracle_max_d_prime = oracle_max;
      options.gram_max_d_prime = gram_max;
      if (depth_text == "formula") options.depth = Depth::Formula;
      else if (depth_text == "enumeration") options.depth = Depth::Enumeration;
      else if (depth_text == "gram") options.depth = Depth::Gram;
      else options.depth = Depth::Oracle;
      warn_on_raised_bound(enum_max, kDefaultEnumerationMaxDPrime, "--enum-max-dprime", err);
      warn_on_raised_bound(gram_max, kDefaultGramMaxDPrime, "--gram-max-dprime", err);

      const auto outcome = verify(options);
      for (const auto& m : outcome.mismatches) buffer << "MISMATCH " << m << '\n';
      for (const auto& s : outcome.skipped) err << "note: " << s << " (beyond d' bound)\n";
      buffer << "verified " << outcome.checked << " discriminants (18 | d <= " << d_max << ") at depth "
             << depth_name(options.depth);
      if (options.depth == Depth::Gram) buffer << ", " << outcome.lattices_assembled << " lattices assembled";
      buffer << ": " << outcome.mismatches.size() << " mismatches\n";
      if (!outcome.mismatches.empty()) code = kExitMismatch;
    } else if (*roots) {
      buffer << modarith::unit_square_root_count(n);
      if (list) {
        const auto residues = modarith::unit_square_roots_bruteforce(n);
        buffer << ": [";
        for (std::size_t i = 0; i < residues.size(); ++i) buffer << (i ? "," : "") << residues[i];
        buffer << ']';
      }
      buffer << '\n';
    } else if (*glue) {
      if (d == 0 || d % 18 != 0)
        throw UsageError("glue requires 18 | d, got d = " + std::to_string(d));
      const std::uint64_t dp = d / 18;
      const auto descriptors = fmcount::enumerate_all(dp);
      buffer << "d=" << d << " d'=" << dp << " descriptors=" << descriptors.size()
             << " (dual coords in Z_" << 6 * dp << " + Z_3 + Z_" << 6 * dp << " on l/" << 6 * dp << ", t1/3, t2/"
             << 6 * dp << ")\n";
      for (const auto& desc : descriptors) buffer << format_descriptor(desc, dp) << '\n';
    }

    emit(buffer.str(), out_path, out);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mukai::InadmissibleDiscriminant& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fmpartners::cli
