#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msl/foar.hpp"
#include "msl/parser.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;

enum class Verdict { Sat, Unsat, Unknown };

void report(Verdict v, bool szs, const std::string& name) {
  if (szs) {
    const char* status = v == Verdict::Sat     ? "Satisfiable"
                         : v == Verdict::Unsat ? "Unsatisfiable"
                                               : "GaveUp";
    std::cout << "% SZS status " << status << " for " << name << "\n";
  } else {
    std::cout << (v == Verdict::Sat     ? "SATISFIABLE"
                  : v == Verdict::Unsat ? "UNSATISFIABLE"
                                        : "UNKNOWN")
              << "\n";
  }
}

int code(Verdict v) {
  switch (v) {
    case Verdict::Sat: return kExitSat;
    case Verdict::Unsat: return kExitUnsat;
    default: return kExitUnknown;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"mslsat: satisfiability of monadic shallow linear clause sets with "
               "straight dismatching constraints, with an approximation-refinement "
               "front end for general equality-free clause sets"};
  std::string mode = "foar";
  int maxIterations = 100;
  int oracleDepth = 2;
  std::string tracePath;
  bool stats = false;
  bool szs = false;
  std::string file;
  app.add_option("--mode", mode, "decide (MSL(SDC) input only) or foar")
      ->check(CLI::IsMember({"decide", "foar"}));
  app.add_option("--max-iterations", maxIterations, "refinement iteration bound");
  app.add_option("--oracle-depth", oracleDepth, "depth bound for model evidence");
  app.add_option("--trace", tracePath, "write a per-iteration trace file");
  app.add_flag("--stats", stats, "print statistics and model evidence");
  app.add_flag("--szs", szs, "print SZS status lines");
  app.add_option("file", file, "problem file")->required();
  CLI11_PARSE(app, argc, argv);

  std::string name = std::filesystem::path(file).filename().string();
  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot open '" << file << "'\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  try {
    msl::Problem prob = msl::parseProblem(buf.str());
    std::ofstream trace;
    if (!tracePath.empty()) {
      trace.open(tracePath);
      if (!trace) {
        std::cerr << "error: cannot open trace file '" << tracePath << "'\n";
        return 1;
      }
    }

    if (mode == "decide") {
      for (const auto& cc : prob.clauses) {
        msl::ClauseClassReport r = msl::classify(cc, prob.ctx.sig);
        if (!r.isMSL) {
          std::cerr << "error: clause is not MSL(SDC): " << msl::show(cc, prob.ctx.sig)
                    << "\n";
          return 1;
        }
      }
      msl::SaturationLimits limits;
      msl::DecideResult d = msl::decide(prob.clauses, prob.ctx, limits);
      Verdict v = d.verdict == msl::DecideResult::Verdict::Sat     ? Verdict::Sat
                  : d.verdict == msl::DecideResult::Verdict::Unsat ? Verdict::Unsat
                                                                   : Verdict::Unknown;
      if (stats) {
        std::cerr << "% generated=" << d.saturation.stats.generated
                  << " kept=" << d.saturation.stats.kept
                  << " redundant=" << d.saturation.stats.redundant << "\n";
        if (v == Verdict::Sat) {
          try {
            std::vector<msl::Atom> m = msl::modelEval(d.model, prob.ctx.sig, oracleDepth);
            for (const auto& a : m) std::cerr << "% model " << msl::show(a, prob.ctx.sig) << "\n";
          } catch (const msl::OracleCapExceeded&) {
          }
          for (const auto& [s, t] : prob.disequations)
            std::cerr << "% disequation " << msl::show(s, prob.ctx.sig)
                      << " != " << msl::show(t, prob.ctx.sig) << " holds\n";
        }
      }
      if (trace.is_open())
        trace << "mode=decide verdict="
              << (v == Verdict::Sat ? "SAT" : v == Verdict::Unsat ? "UNSAT" : "UNKNOWN")
              << " generated=" << d.saturation.stats.generated << "\n";
      report(v, szs, name);
      return code(v);
    }

    msl::FoArConfig cfg;
    cfg.maxIterations = maxIterations;
    cfg.evidenceDepth = oracleDepth;
    msl::FoArResult r = msl::foArSolve(prob.clauses, prob.ctx, cfg);
    Verdict v = r.verdict == msl::FoArResult::Verdict::Sat     ? Verdict::Sat
                : r.verdict == msl::FoArResult::Verdict::Unsat ? Verdict::Unsat
                                                               : Verdict::Unknown;
    if (trace.is_open()) trace << msl::renderTrace(r, prob.ctx.sig);
    if (stats) {
      std::cerr << "% iterations=" << r.iterations.size() << "\n";
      if (v == Verdict::Sat) {
        for (const auto& a : r.modelSketch)
          std::cerr << "% model " << msl::show(a, prob.ctx.sig) << "\n";
        for (const auto& [s, t] : prob.disequations)
          std::cerr << "% disequation " << msl::show(s, prob.ctx.sig)
                    << " != " << msl::show(t, prob.ctx.sig) << " holds\n";
      }
      if (v == Verdict::Unsat) {
        for (const auto& [id, inst] : r.refutation)
          std::cerr << "% core clause " << id << ": " << msl::show(inst, prob.ctx.sig)
                    << "\n";
      }
    }
    report(v, szs, name);
    return code(v);
  } catch (const msl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
