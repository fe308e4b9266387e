#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "pbar/hrr.hpp"
#include "pbar/recurrence.hpp"
#include "pbar/selftest.hpp"

namespace pbar::cli {

namespace {

std::optional<std::uint64_t> parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

// Writes to the file when a path is given, to `io.out` otherwise.
template <typename Fn>
int with_sink(const std::optional<std::string>& path, Streams io, Fn&& write) {
  if (!path) {
    write(io.out);
    io.out.flush();
    return kOk;
  }
  std::ofstream file(*path, std::ios::trunc);
  if (!file) {
    io.err << "error: cannot open " << *path << " for writing\n";
    return kIoFailure;
  }
  write(file);
  file.flush();
  if (!file) {
    io.err << "error: failed writing " << *path << "\n";
    return kIoFailure;
  }
  return kOk;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("PBAR_WORKERS")) {
    if (auto v = parse_uint(env); v && *v > 0 && *v <= 4096) return static_cast<unsigned>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_compute(const std::string& n_text, const std::optional<std::string>& modulus,
                const std::optional<std::string>& path, Streams io) {
  const auto n = parse_uint(n_text);
  if (!n) {
    io.err << "error: n must be a non-negative integer, got '" << n_text << "'\n";
    return kInvalidArguments;
  }
  const EvalOptions options{default_workers(), kGuardBits};
  try {
    if (modulus) {
      const auto m = parse_uint(*modulus);
      if (!m || *m < 3 || *m % 2 == 0) {
        io.err << "error: modulus must be an odd integer >= 3, got '" << *modulus << "'\n";
        return kInvalidArguments;
      }
      const std::uint64_t r = overpartition_mod(*n, *m, options);
      return with_sink(path, io, [&](std::ostream& os) { os << r << '\n'; });
    }
    const mpz_class v = overpartition_exact(*n, options);
    return with_sink(path, io, [&](std::ostream& os) { os << v << '\n'; });
  } catch (const RoundingError& e) {
    io.err << "internal error: " << e.what() << "\n";
    return kSelftestFailed;
  }
}

int cmd_table(const std::string& n_text, const std::optional<std::string>& path, Streams io) {
  const auto n_max = parse_uint(n_text);
  if (!n_max) {
    io.err << "error: n_max must be a non-negative integer, got '" << n_text << "'\n";
    return kInvalidArguments;
  }
  const OverpartitionTable t = recursion_table(*n_max);
  return with_sink(path, io, [&](std::ostream& os) {
    for (std::size_t n = 0; n <= *n_max; ++n) os << n << ' ' << t[n] << '\n';
  });
}

int cmd_hunt(std::uint64_t ell, unsigned j, std::uint64_t q_max,
             const std::optional<std::string>& path, unsigned workers, Streams io) {
  std::vector<std::uint64_t> all;
  try {
    all = candidates(ell, j, q_max);
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }

  std::set<std::uint64_t> done;
  if (path) {
    try {
      for (const HuntLine& line : read_results(*path)) {
        if (line.record.ell == ell && line.record.j == j) done.insert(line.record.q);
      }
    } catch (const CorruptResults& e) {
      io.err << "error: corrupt results file " << *path << " at " << e.what() << "\n";
      return kCorruptResults;
    }
  }
  std::vector<std::uint64_t> todo;
  for (std::uint64_t q : all) {
    if (!done.count(q)) todo.push_back(q);
  }

  std::ofstream file;
  if (path) {
    file.open(*path, std::ios::app);
    if (!file) {
      io.err << "error: cannot open " << *path << " for appending\n";
      return kIoFailure;
    }
  }
  std::ostream& sink = path ? static_cast<std::ostream&>(file) : io.out;

  // Workers finish out of order; the writer below emits lines in ascending Q.
  std::mutex mutex;
  std::condition_variable ready;
  std::map<std::size_t, std::string> finished;
  std::optional<std::string> failure;
  std::atomic<std::size_t> next{0};
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(todo.size())));

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      std::string text;
      try {
        const auto start = std::chrono::steady_clock::now();
        HuntRecord r = hunt(ell, j, todo[i]);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        text = serialize({std::move(r), static_cast<std::uint64_t>(ms.count())});
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        if (!failure) failure = "Q=" + std::to_string(todo[i]) + ": " + e.what();
        next = todo.size();
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mutex);
      finished.emplace(i, std::move(text));
      ready.notify_all();
    }
  };

  bool write_failed = false;
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < pool; ++w) threads.emplace_back(work);
    std::unique_lock lock(mutex);
    for (std::size_t emit = 0; emit < todo.size(); ++emit) {
      ready.wait(lock, [&] { return finished.count(emit) || failure.has_value(); });
      if (!finished.count(emit)) break;
      const std::string text = std::move(finished[emit]);
      finished.erase(emit);
      lock.unlock();
      sink << text << '\n';
      sink.flush();
      if (!sink) write_failed = true;
      lock.lock();
      if (write_failed) {
        if (!failure) failure = "write failed";
        next = todo.size();
        break;
      }
    }
  }
  if (write_failed) {
    io.err << "error: failed writing results\n";
    return kIoFailure;
  }
  if (failure) {
    io.err << "error: " << *failure << "\n";
    return kInvalidArguments;
  }
  return kOk;
}

int cmd_verify(std::uint64_t ell, unsigned j, std::uint64_t q, std::size_t count, Streams io) {
  std::vector<std::uint64_t> samples;
  try {
    CongruenceParams::make(ell, j, q);
    samples = valid_samples(ell, q, count);
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }
  const VerifyReport report = verify_congruence(ell, j, q, samples, {default_workers(), kGuardBits});
  const std::uint64_t modulus = CongruenceParams::make(ell, j, q).modulus;
  for (const VerifyCheck& c : report.checks) {
    io.out << "n=" << c.n << " Q^3*n=" << c.argument << " pbar mod " << modulus << " = " << c.residue
           << (c.residue == 0 ? " ok" : " FAIL") << '\n';
  }
  if (const auto bad = report.first_failure()) {
    io.err << "counterexample: pbar(" << bad->argument << ") = " << bad->residue << " mod " << modulus
           << " (n=" << bad->n << ")\n";
    return kCounterexample;
  }
  return kOk;
}

int cmd_selftest(Streams io) {
  SelftestOptions options;
  options.workers = default_workers();
  std::optional<PropertyResult> first_bad;
  run_selftest(options, [&](const PropertyResult& r) {
    io.out << '[' << r.module << "] " << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases
           << " cases";
    if (!r.passed()) io.out << ", " << r.failures << " failed; first: " << r.first_failure;
    io.out << ")\n";
    io.out.flush();
    if (!r.passed() && !first_bad) first_bad = r;
  });
  if (first_bad) {
    io.err << "selftest failed: [" << first_bad->module << "] " << first_bad->name << "\n";
    return kSelftestFailed;
  }
  io.out << "all properties hold\n";
  return kOk;
}

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Overpartition function pbar(n): exact values, residues and congruence search"};
  app.require_subcommand(1);

  std::string n_text, table_text;
  std::optional<std::string> modulus, compute_out, table_out, hunt_out;
  auto* compute = app.add_subcommand("compute", "pbar(n), or pbar(n) mod M");
  compute->add_option("n", n_text, "argument")->required();
  compute->add_option("--mod", modulus, "odd modulus >= 3");
  compute->add_option("-o,--output", compute_out, "write to PATH instead of stdout");

  auto* table = app.add_subcommand("table", "pbar(0..n_max) from the recursion, one 'n value' per line");
  table->add_option("n_max", table_text, "largest argument")->required();
  table->add_option("-o,--output", table_out, "write to PATH instead of stdout");

  std::uint64_t ell = 0, q_max = 0, q = 0;
  unsigned j = 0, workers = default_workers();
  std::size_t count = 5;
  auto* hunt_cmd = app.add_subcommand("hunt", "test every candidate Q <= qmax");
  hunt_cmd->add_option("--ell", ell, "odd prime")->required();
  hunt_cmd->add_option("--j", j, "exponent >= 1")->required();
  hunt_cmd->add_option("--qmax", q_max, "largest Q")->required();
  hunt_cmd->add_option("-o,--output", hunt_out, "results file (appended, resumable)");
  hunt_cmd->add_option("--workers", workers, "parallel hunts")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check pbar(Q^3 n) = 0 mod ell^j on sample n");
  verify->add_option("--ell", ell, "odd prime")->required();
  verify->add_option("--j", j, "exponent >= 1")->required();
  verify->add_option("--q", q, "candidate prime Q")->required();
  verify->add_option("--count", count, "number of samples");

  auto* selftest = app.add_subcommand("selftest", "run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }

  if (compute->parsed()) return cmd_compute(n_text, modulus, compute_out, io);
  if (table->parsed()) return cmd_table(table_text, table_out, io);
  if (hunt_cmd->parsed()) {
    if (q_max == 0) {
      io.err << "error: qmax must be at least 1\n";
      return kInvalidArguments;
    }
    return cmd_hunt(ell, j, q_max, hunt_out, workers, io);
  }
  if (verify->parsed()) return cmd_verify(ell, j, q, count, io);
  if (selftest->parsed()) return cmd_selftest(io);
  return kInvalidArguments;
}

}  // namespace pbar::cli
