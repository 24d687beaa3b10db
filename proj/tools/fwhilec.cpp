// fwhilec: parse, analyze, optimize, run, and verify FWHILE programs.
//
// Exit codes: 0 success / verification pass, 1 parse error, 2 runtime
// error, 3 schedule enumeration bound exceeded, 4 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fwhile/interp.hpp"
#include "fwhile/json_io.hpp"
#include "fwhile/parser.hpp"
#include "fwhile/printer.hpp"
#include "fwhile/transform.hpp"
#include "fwhile/verify.hpp"

namespace {

constexpr int kExitParseError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitBoundExceeded = 3;
constexpr int kExitVerifyFailed = 4;

std::string readInput(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

struct ParseFailure {
  int code;
};

fwhile::Program parseOrDie(const std::string& source) {
  try {
    return fwhile::parse(source);
  } catch (const fwhile::ParseError& err) {
    auto [line, col] = fwhile::lineColOf(source, err.span().begin);
    std::cerr << "parse error at " << line << ":" << col << ": " << err.what()
              << "\n";
    throw ParseFailure{kExitParseError};
  }
}

// "7:2,1,9:1,2" or "7:2,1;9:1,2" -> permutations per fork node, 1-based
// thread numbers in the text, 0-based internally.
fwhile::Schedule parseScheduleSpec(const std::string& spec) {
  fwhile::Schedule sched;
  std::vector<std::string> tokens;
  std::string current;
  for (char c : spec) {
    if (c == ',' || c == ';') {
      if (!current.empty()) tokens.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(current);

  fwhile::NodeId node = 0;
  bool haveNode = false;
  for (const auto& tok : tokens) {
    auto colon = tok.find(':');
    if (colon != std::string::npos) {
      node = static_cast<fwhile::NodeId>(std::stoul(tok.substr(0, colon)));
      haveNode = true;
      sched.perms[node].push_back(std::stoi(tok.substr(colon + 1)) - 1);
    } else {
      if (!haveNode) {
        throw std::invalid_argument(
            "schedule entries look like forkNodeId:perm, e.g. 7:2,1");
      }
      sched.perms[node].push_back(std::stoi(tok) - 1);
    }
  }
  return sched;
}

void validateSchedule(const fwhile::Schedule& sched,
                      const fwhile::Program& p) {
  auto forks = fwhile::forkNodes(p);
  for (const auto& [node, perm] : sched.perms) {
    const auto it =
        std::find_if(forks.begin(), forks.end(),
                     [node = node](const auto& f) { return f.first == node; });
    if (it == forks.end()) {
      throw std::invalid_argument("node " + std::to_string(node) +
                                  " is not a fork statement");
    }
    std::vector<bool> seen(it->second, false);
    if (perm.size() != it->second) {
      throw std::invalid_argument("schedule for fork " + std::to_string(node) +
                                  " must list all " +
                                  std::to_string(it->second) + " threads");
    }
    for (int idx : perm) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= it->second ||
          seen[static_cast<std::size_t>(idx)]) {
        throw std::invalid_argument("schedule for fork " +
                                    std::to_string(node) +
                                    " is not a permutation");
      }
      seen[static_cast<std::size_t>(idx)] = true;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FWHILE partial redundancy elimination toolkit"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output;

  auto* cmdParse = app.add_subcommand("parse", "parse and reformat a program");
  bool astJson = false;
  cmdParse->add_option("input", input, "source file, or - for stdin");
  cmdParse->add_flag("--ast-json", astJson, "dump the AST as JSON");
  cmdParse->add_option("-o,--output", output, "output file");

  auto* cmdAnalyze =
      app.add_subcommand("analyze", "dump per-node analysis sets as JSON");
  long long pointFilter = -1;
  cmdAnalyze->add_option("input", input, "source file, or - for stdin");
  cmdAnalyze->add_option("--point", pointFilter, "restrict to one node id");
  cmdAnalyze->add_option("-o,--output", output, "output file");

  auto* cmdOptimize =
      app.add_subcommand("optimize", "apply partial redundancy elimination");
  bool dumpRewrites = false;
  std::string tempPrefix = "t";
  cmdOptimize->add_option("input", input, "source file, or - for stdin");
  cmdOptimize->add_flag("--dump-rewrites", dumpRewrites,
                        "emit the rewrite record as JSON instead of code");
  cmdOptimize->add_option("--temp-prefix", tempPrefix,
                          "prefix for generated temporaries");
  cmdOptimize->add_option("-o,--output", output, "output file");

  auto* cmdRun = app.add_subcommand("run", "execute under a fixed schedule");
  std::string stateJson = "{}";
  std::string scheduleSpec;
  std::uint64_t fuel = 10000;
  cmdRun->add_option("input", input, "source file, or - for stdin");
  cmdRun->add_option("--state", stateJson,
                     "initial state as JSON, e.g. '{\"a\":1}'");
  cmdRun->add_option("--schedule", scheduleSpec,
                     "fork order, e.g. 7:2,1 (identity when omitted)");
  cmdRun->add_option("--fuel", fuel, "statement budget (default 10000)");
  cmdRun->add_option("-o,--output", output, "output file");

  auto* cmdVerify = app.add_subcommand(
      "verify", "differentially test the optimization on this program");
  int states = 50;
  std::uint64_t seed = 0;
  std::uint64_t verifyFuel = 10000;
  std::int64_t range = 16;
  cmdVerify->add_option("input", input, "source file, or - for stdin");
  cmdVerify->add_option("--states", states, "random initial states to try");
  cmdVerify->add_option("--seed", seed, "random seed (reproducible)");
  cmdVerify->add_option("--fuel", verifyFuel, "statement budget per run");
  cmdVerify->add_option("--range", range,
                        "initial values drawn from [-range, range]");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string source = readInput(input);
    fwhile::Program program = parseOrDie(source);

    if (*cmdParse) {
      if (astJson) {
        writeOutput(output, fwhile::astToJson(program).dump(2));
      } else {
        writeOutput(output, fwhile::prettyPrint(program));
      }
      return 0;
    }

    if (*cmdAnalyze) {
      fwhile::Analysis analysis = fwhile::analyze(program);
      fwhile::json dump = fwhile::analysisToJson(program, analysis);
      if (pointFilter >= 0) {
        fwhile::json filtered = fwhile::json::array();
        for (auto& node : dump["nodes"]) {
          if (node["id"].get<long long>() == pointFilter) {
            filtered.push_back(node);
          }
        }
        dump["nodes"] = filtered;
      }
      writeOutput(output, dump.dump(2));
      return 0;
    }

    if (*cmdOptimize) {
      fwhile::TransformOptions opts;
      opts.tempPrefix = tempPrefix;
      fwhile::OptimizedProgram opt = fwhile::optimize(program, opts);
      if (dumpRewrites) {
        writeOutput(output, fwhile::rewritesToJson(opt).dump(2));
      } else {
        writeOutput(output, fwhile::prettyPrint(opt.program));
      }
      return 0;
    }

    if (*cmdRun) {
      fwhile::State initial =
          fwhile::stateFromJson(fwhile::json::parse(stateJson));
      fwhile::Schedule sched = parseScheduleSpec(scheduleSpec);
      validateSchedule(sched, program);
      fwhile::RunOutcome outcome =
          fwhile::run(program, std::move(initial), sched, fuel);
      if (fwhile::succeeded(outcome)) {
        writeOutput(output,
                    fwhile::runResultToJson(std::get<fwhile::RunResult>(outcome))
                        .dump(2));
        return 0;
      }
      std::cout << fwhile::runErrorToJson(std::get<fwhile::RunError>(outcome))
                       .dump(2)
                << "\n";
      return kExitRuntimeError;
    }

    if (*cmdVerify) {
      fwhile::VerifyOptions opts;
      opts.states = states;
      opts.seed = seed;
      opts.fuel = verifyFuel;
      opts.range = range;
      fwhile::OptimizedProgram opt = fwhile::optimize(program);
      fwhile::VerifyReport report;
      try {
        report = fwhile::verifyOptimization(program, opt, opts);
      } catch (const fwhile::ScheduleBoundError& err) {
        std::cerr << "bound exceeded: " << err.what() << "\n";
        return kExitBoundExceeded;
      }
      std::cout << "schedules: " << report.schedules << "\n";
      std::cout << "states: " << states << "\n";
      std::cout << "comparisons: " << report.comparisons << "\n";
      if (report.skippedFuel) {
        std::cout << "skipped (fuel): " << report.skippedFuel << "\n";
      }
      if (report.pass) {
        std::cout << "result: PASS\n";
        return 0;
      }
      std::cout << "result: FAIL\n";
      const auto& cex = *report.firstFailure;
      std::cout << "counterexample:\n";
      std::cout << "  state: " << fwhile::stateToJson(cex.initial).dump()
                << "\n";
      std::cout << "  schedule: " << cex.schedule << "\n";
      std::cout << "  detail: " << cex.detail << "\n";
      return kExitVerifyFailed;
    }
  } catch (const ParseFailure& f) {
    return f.code;
  } catch (const fwhile::ScheduleBoundError& err) {
    std::cerr << "bound exceeded: " << err.what() << "\n";
    return kExitBoundExceeded;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntimeError;
  }
  return 0;
}
