#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "vpa/bench.hpp"
#include "vpa/enumeration.hpp"
#include "vpa/oracle.hpp"

namespace {

vpa::Format to_format(const std::string& s) { return s == "structured" ? vpa::Format::Structured : vpa::Format::Plain; }

// "-" or empty selects stdout
std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw vpa::DomainError("cannot write " + path);
  return *holder;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-machine makespan solver with release and delivery times"};
  app.require_subcommand(1);

  std::string input, format = "plain", stats, dump_schedule, dump_partition, out_path;
  bool oracle_check = false, no_dominance = false, no_steady = false, parallel = false;
  int cap = vpa::kPrunedCap;

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--input", input, "instance file")->required();
  solve->add_option("--format", format)->check(CLI::IsMember({"plain", "structured"}));
  solve->add_flag("--oracle-check", oracle_check, "compare with the exact oracle");
  solve->add_option("--cap", cap, "oracle job cap");
  solve->add_flag("--no-dominance", no_dominance);
  solve->add_flag("--no-steady", no_steady);
  solve->add_flag("--parallel", parallel, "evaluate permutations with OpenMP");
  solve->add_option("--stats", stats, "CSV report path");
  solve->add_option("--dump-schedule", dump_schedule);
  solve->add_option("--dump-partition", dump_partition);

  auto* verify = app.add_subcommand("verify", "compare solver and oracle");
  verify->add_option("--input", input)->required();
  verify->add_option("--format", format)->check(CLI::IsMember({"plain", "structured"}));
  verify->add_option("--cap", cap);

  int gn = 0;
  std::uint64_t gseed = 1;
  vpa::Ranges ranges;
  auto* gen = app.add_subcommand("generate", "write a random instance");
  gen->add_option("--n", gn)->required();
  gen->add_option("--seed", gseed);
  gen->add_option("--r-max", ranges.r_max);
  gen->add_option("--p-max", ranges.p_max);
  gen->add_option("--q-max", ranges.q_max);
  gen->add_option("--out", out_path);
  gen->add_option("--format", format)->check(CLI::IsMember({"plain", "structured"}));

  std::vector<int> sizes;
  vpa::BenchOptions bo;
  bool serial = false, fixture = false;
  auto* bench = app.add_subcommand("bench", "nu/n experiment");
  bench->add_option("--sizes", sizes)->delimiter(',')->required();
  bench->add_option("--trials", bo.trials);
  bench->add_option("--seed", bo.seed0);
  bench->add_option("--out", out_path);
  bench->add_option("--nu-cap", bo.nu_cap);
  bench->add_option("--oracle-cap", bo.oracle_cap);
  bench->add_flag("--serial", serial, "run trials one at a time");
  bench->add_flag("--fixture", fixture, "use the 13-job example as trial 0 of size 13");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 1;
  }

  try {
    std::unique_ptr<std::ofstream> holder;
    if (solve->parsed()) {
      vpa::Instance inst = vpa::load_instance(input, to_format(format));
      vpa::SolveOptions opt;
      opt.dominance = !no_dominance;
      opt.steady = !no_steady;
      opt.parallel = parallel;
      auto t0 = std::chrono::steady_clock::now();
      vpa::SolveReport rep = vpa::solve(inst, opt);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      std::cout << "makespan " << rep.makespan << '\n';
      if (!dump_schedule.empty()) {
        std::unique_ptr<std::ofstream> h;
        vpa::write_schedule(open_out(dump_schedule, h), rep.best);
      }
      if (!dump_partition.empty()) {
        std::unique_ptr<std::ofstream> h;
        vpa::write_partition(open_out(dump_partition, h), rep.config.partition(inst.n()));
      }
      if (!stats.empty()) {
        std::unique_ptr<std::ofstream> h;
        std::ostream& o = open_out(stats, h);
        o << "n,nu,perms_examined,perms_filtered,schedules,makespan,millis\n";
        o << inst.n() << ',' << rep.nu << ',' << rep.permutations_examined << ','
          << rep.permutations_filtered_inconsistent + rep.permutations_filtered_dominated << ','
          << rep.complete_schedules << ',' << rep.makespan << ',' << ms << '\n';
      }
      if (oracle_check) {
        vpa::OracleResult o = vpa::brute_force_opt(inst, cap);
        bool ok = o.makespan == rep.makespan;
        std::cout << "oracle " << o.makespan << " match=" << (ok ? "yes" : "no") << '\n';
        if (!ok) return 3;
      }
      return 0;
    }
    if (verify->parsed()) {
      vpa::Instance inst = vpa::load_instance(input, to_format(format));
      vpa::SolveReport rep = vpa::solve(inst);
      vpa::OracleResult o = vpa::brute_force_opt(inst, cap);
      bool ok = o.makespan == rep.makespan;
      std::cout << "solver=" << rep.makespan << " oracle=" << o.makespan << " match=" << (ok ? "yes" : "no") << '\n';
      return ok ? 0 : 3;
    }
    if (gen->parsed()) {
      vpa::Instance inst = vpa::generate_instance(gn, gseed, ranges);
      vpa::write_instance(open_out(out_path, holder), inst, to_format(format));
      return 0;
    }
    if (bench->parsed()) {
      bo.sizes = sizes;
      bo.parallel = !serial;
      bo.inject_fixture = fixture;
      for (int n : sizes)
        if (n < 1) throw vpa::DomainError("sizes must be positive");
      auto rows = vpa::run_bench(bo);
      vpa::write_bench_csv(open_out(out_path, holder), rows);
      return 0;
    }
  } catch (const vpa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const vpa::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const vpa::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
