#include "castellan/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "castellan/castling.hpp"
#include "castellan/geometry.hpp"
#include "castellan/json_io.hpp"
#include "castellan/search.hpp"
#include "castellan/tree.hpp"

namespace castellan::cli {

namespace {

using castling::CastlingMove;
using castling::CastlingParams;
using castling::CastlingTuple;
using castling::MoveKind;
using nlohmann::json;

struct Options {
  std::string l, alpha, tuple, pos, format, output;
  std::string max_entry, entry_max;
  std::string entry_min = "1";
  std::size_t max_depth = 0;
  std::size_t j_max = 1;
  std::size_t budget = tree::kDefaultNodeBudget;
  bool cube = false;
  int m = 2;
  std::size_t product_abelian = 2;
  int trials = 25;
};

CastlingParams parse_params(const Options& opt) {
  return CastlingParams(parse_int(opt.l), parse_int(opt.alpha));
}

/// Parses "2,5" into a canonical tuple; notes on stderr when the input
/// was not already canonical.
CastlingTuple parse_tuple(const std::string& text, std::ostream& err) {
  std::vector<Int> raw;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      throw std::invalid_argument("empty tuple entry in '" + text + "'");
    }
    const auto end = item.find_last_not_of(" \t");
    raw.push_back(parse_int(item.substr(begin, end - begin + 1)));
  }
  if (raw.empty()) throw std::invalid_argument("empty tuple");
  CastlingTuple t = CastlingTuple::canonicalize(raw);
  if (t.entries() != raw) {
    err << "note: tuple canonicalized to " << t.str() << "\n";
  }
  return t;
}

std::size_t env_budget(std::size_t fallback) {
  if (const char* env = std::getenv("CASTELLAN_BUDGET")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<std::size_t>(value);
  }
  return fallback;
}

json move_to_json(const CastlingMove& move) {
  json j;
  j["before"] = tuple_to_json(move.before);
  j["after"] = tuple_to_json(move.after);
  j["new_value"] = int_to_json(move.new_value);
  if (move.kind == MoveKind::Append) {
    j["position"] = "append";
  } else {
    j["position"] = move.position + 1;  // 1-based externally
  }
  j["self_loop"] = move.self_loop;
  return j;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const CastlingParams params = parse_params(opt);
  const CastlingTuple t = parse_tuple(opt.tuple, err);
  const Int r = castling::residual(params, t);
  if (opt.format == "json") {
    json doc;
    doc["l"] = int_to_json(params.l);
    doc["alpha"] = int_to_json(params.alpha);
    doc["tuple"] = tuple_to_json(t);
    doc["residual"] = int_to_json(r);
    doc["solution"] = (r == 0);
    out << doc.dump(2) << "\n";
  } else {
    out << "residual=" << r << " solution=" << (r == 0 ? "true" : "false")
        << "\n";
  }
  return kExitOk;
}

int cmd_step(const Options& opt, std::ostream& out, std::ostream& err) {
  const CastlingParams params = parse_params(opt);
  const CastlingTuple t = parse_tuple(opt.tuple, err);
  CastlingMove move;
  if (opt.pos == "append") {
    move = castling::castle(params, t, MoveKind::Append);
  } else {
    const long pos = std::stol(opt.pos);
    if (pos < 1 || static_cast<std::size_t>(pos) > t.length()) {
      throw std::invalid_argument("--pos must be 'append' or 1.." +
                                  std::to_string(t.length()));
    }
    move = castling::castle(params, t, MoveKind::AtPosition,
                            static_cast<std::size_t>(pos - 1));
  }
  if (move.self_loop) err << "note: move is a self-loop\n";
  if (opt.format == "json") {
    out << move_to_json(move).dump(2) << "\n";
  } else {
    out << move.after.str() << "\n";
  }
  return kExitOk;
}

int cmd_reduce(const Options& opt, std::ostream& out, std::ostream& err) {
  const CastlingParams params = parse_params(opt);
  const CastlingTuple t = parse_tuple(opt.tuple, err);
  const castling::ReductionTrace trace = castling::reduce_to_root(params, t);
  const std::string outcome =
      trace.outcome == castling::ReductionOutcome::ReachedRoot ? "reached_root"
      : trace.outcome == castling::ReductionOutcome::NotSolution
          ? "not_solution"
          : "not_reachable";
  if (opt.format == "json") {
    json doc;
    doc["start"] = tuple_to_json(trace.start);
    json moves = json::array();
    for (const CastlingMove& move : trace.moves) {
      moves.push_back(move_to_json(move));
    }
    doc["moves"] = std::move(moves);
    doc["outcome"] = outcome;
    doc["reason"] = trace.reason.empty() ? json(nullptr) : json(trace.reason);
    doc["residual"] = int_to_json(castling::residual(params, trace.start));
    out << doc.dump(2) << "\n";
  } else {
    out << trace.start.str();
    for (const CastlingMove& move : trace.moves) {
      out << " -> " << move.after.str();
    }
    out << "\n";
    out << "outcome=" << outcome << " steps=" << trace.moves.size();
    if (trace.outcome == castling::ReductionOutcome::NotSolution) {
      out << " residual=" << castling::residual(params, trace.start);
    }
    if (!trace.reason.empty()) out << " reason=\"" << trace.reason << "\"";
    out << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const Options& opt, std::ostream& out, std::ostream&) {
  tree::EnumerationConfig config{parse_params(opt)};
  config.max_depth = opt.max_depth;
  config.max_entry = parse_int(opt.max_entry);
  config.node_budget = env_budget(opt.budget);
  const tree::CastlingTree result = tree::enumerate(config);
  if (opt.format == "dot") {
    out << tree::export_dot(result);
  } else if (opt.format == "csv") {
    out << tree::export_csv(result);
  } else {
    out << tree::export_json(result);
  }
  return kExitOk;
}

int cmd_conjecture(const Options& opt, std::ostream& out, std::ostream&) {
  const CastlingParams params = parse_params(opt);
  search::SearchBox box{params, opt.j_max};
  if (opt.cube) {
    box = search::SearchBox::cube_box(params, opt.j_max);
  } else {
    if (opt.entry_max.empty()) {
      throw std::invalid_argument("either --cube or --entry-max is required");
    }
    box.entry_min = parse_int(opt.entry_min);
    box.entry_max = parse_int(opt.entry_max);
  }
  const std::uint64_t steps =
      env_budget(search::kDefaultStepBudget);
  const search::SearchReport report = search::search(box, steps);
  if (opt.format == "text") {
    for (const search::TaggedSolution& s : report.solutions) {
      out << s.tuple.str() << " " << search::tag_name(s.tag) << "\n";
    }
    out << "solutions=" << report.solutions.size()
        << " exhausted=" << (report.exhausted ? "true" : "false") << "\n";
  } else {
    out << search::report_json(report);
  }
  return report.exhausted ? kExitOk : kExitBudget;
}

int cmd_geometry(const Options& opt, std::ostream& out, std::ostream&) {
  const geometry::GeometryReport report =
      geometry::geometry_report(opt.m, opt.product_abelian, opt.trials);
  if (opt.format == "text") {
    out << "m=" << report.m << " torsion_zero=" << report.torsion_zero
        << " weyl_zero=" << report.weyl_zero
        << " ricci_zero=" << report.ricci_zero
        << " product_weyl_zero=" << report.product_weyl_zero
        << " f_table_ok=" << report.f_table_ok << "\n";
  } else {
    out << geometry::report_json(report);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"castling calculus on integer tuples"};
  app.name("castellan");
  Options opt;

  const auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--l", opt.l, "ambient size (l >= 3)")->required();
    cmd->add_option("--alpha", opt.alpha, "type parameter (1 <= alpha <= l - alpha)")
        ->required();
  };
  const auto add_format = [&](CLI::App* cmd,
                              const std::vector<std::string>& allowed) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember(allowed));
  };

  CLI::App* verify = app.add_subcommand("verify", "residual and solution flag");
  add_params(verify);
  verify->add_option("--tuple", opt.tuple, "comma-separated entries")->required();
  add_format(verify, {"text", "json"});

  CLI::App* step = app.add_subcommand("step", "apply one castling transform");
  add_params(step);
  step->add_option("--tuple", opt.tuple)->required();
  step->add_option("--pos", opt.pos, "1-based position or 'append'")->required();
  add_format(step, {"text", "json"});

  CLI::App* reduce = app.add_subcommand("reduce", "descend to the root");
  add_params(reduce);
  reduce->add_option("--tuple", opt.tuple)->required();
  add_format(reduce, {"text", "json"});

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "breadth-first solution tree");
  add_params(enumerate);
  enumerate->add_option("--max-entry", opt.max_entry, "per-entry bound")
      ->required();
  enumerate->add_option("--max-depth", opt.max_depth)->required();
  enumerate->add_option("--budget", opt.budget, "node budget cap");
  add_format(enumerate, {"json", "dot", "csv"});

  CLI::App* conjecture =
      app.add_subcommand("conjecture", "bounded exhaustive solution search");
  add_params(conjecture);
  conjecture->add_option("--j-max", opt.j_max)->required();
  CLI::Option* cube_flag = conjecture->add_flag(
      "--cube", opt.cube, "search the cube (entries <= alpha-1)");
  cube_flag->excludes(conjecture->add_option("--entry-max", opt.entry_max));
  conjecture->add_option("--entry-min", opt.entry_min);
  add_format(conjecture, {"json", "text"});

  CLI::App* geometry =
      app.add_subcommand("geometry", "exact tensor checks on PL(m)");
  geometry->add_option("--m", opt.m)->required()->check(CLI::Range(2, 64));
  geometry->add_option("--product-abelian", opt.product_abelian,
                       "abelian factor dimension");
  geometry->add_option("--trials", opt.trials)->check(CLI::Range(1, 10000));
  add_format(geometry, {"json", "text"});

  app.add_option("--output", opt.output, "write primary output to a file");
  app.require_subcommand(1);

  std::vector<std::string> argv_storage{"castellan"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  std::ostream& sink = opt.output.empty() ? out : buffer;
  int code = kExitUsage;
  try {
    if (verify->parsed()) code = cmd_verify(opt, sink, err);
    else if (step->parsed()) code = cmd_step(opt, sink, err);
    else if (reduce->parsed()) code = cmd_reduce(opt, sink, err);
    else if (enumerate->parsed()) code = cmd_enumerate(opt, sink, err);
    else if (conjecture->parsed()) code = cmd_conjecture(opt, sink, err);
    else if (geometry->parsed()) code = cmd_geometry(opt, sink, err);
  } catch (const tree::BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const castling::NonPositiveResult& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!opt.output.empty() && code != kExitUsage) {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << opt.output << "\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace castellan::cli
