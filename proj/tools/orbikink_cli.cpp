// orbikink: command-line front end for the walk normalizer.
//
// Exit codes: 0 success, 1 domain failure or inequality, 2 parse error,
// 3 undefined operation (iota on an order-two class).

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbikink/document.hpp"
#include "orbikink/dot.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/groupoid.hpp"
#include "orbikink/selftest.hpp"

using namespace orbikink;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kParse = 2;
constexpr int kUndefined = 3;

void diag(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

struct Reply {
  std::string out;
  std::string err;
  int code = kOk;
};

// Runs fn and maps library exceptions onto exit codes.
template <typename F>
Reply guarded(F fn) {
  Reply r;
  std::ostringstream out;
  std::ostringstream err;
  try {
    r.code = fn(out, err);
  } catch (const ParseError& e) {
    diag(err, "parse", e.what());
    r.code = kParse;
  } catch (const OrderTwoClass& e) {
    diag(err, "order_two", e.what());
    r.code = kUndefined;
  } catch (const Contractible& e) {
    diag(err, "contractible", e.what());
    r.code = kFail;
  } catch (const NotFlippable& e) {
    diag(err, "not_flippable", e.what());
    r.code = kFail;
  } catch (const InputError& e) {
    diag(err, "input", e.what());
    r.code = kFail;
  } catch (const std::logic_error& e) {
    diag(err, "internal", e.what());
    r.code = kFail;
  }
  r.out = out.str();
  r.err = err.str();
  return r;
}

int emit(const Reply& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Loaded {
  Triangulation t;
  LeafyDualGraph g;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.t = read_triangulation_file(path);
  l.g = leafy_dual_graph(l.t);
  return l;
}

std::string with_from(const std::string& from, const std::string& text) {
  return from.empty() ? text : from + " " + text;
}

ClosedWalkClass read_closed(const LeafyDualGraph& g, const std::string& text) {
  const Walk w = read_walk(g.graph, text);
  if (!w.is_loop()) throw InputError("closed walk must end where it starts");
  return canonical_closed(g.graph, w);
}

// Queries from positional arguments, or one per stdin line.
std::vector<std::string> queries(const std::vector<std::string>& given) {
  if (!given.empty()) return given;
  std::vector<std::string> out;
  for (std::string line; std::getline(std::cin, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

// Answers every query, `jobs` at a time, and prints in input order.
int answer_all(const std::vector<std::string>& qs, unsigned jobs,
               const std::function<Reply(const std::string&)>& fn) {
  std::vector<Reply> replies(qs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < qs.size(); i = next++) replies[i] = fn(qs[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  int code = kOk;
  for (const auto& r : replies) code = std::max(code, emit(r));
  return code;
}

std::string kink_report(const std::vector<Kink>& kinks) {
  std::string out;
  for (const auto& k : kinks) out += kink_json(k) + "\n";
  return out;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("KINK_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError(std::string("KINK_SEED is not a number: ") + s);
    }
  }
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms of walks in the 2-orbifold fundamental groupoid of a punctured surface"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for walk queries and selftest cases")->check(CLI::PositiveNumber);

  std::string file;
  std::string from;
  std::vector<std::string> walks;
  bool closed = false;

  auto add_common = [&](CLI::App* sub, bool with_walks) {
    sub->add_option("file", file, "Triangulation document (JSON)")->required();
    if (with_walks) {
      sub->add_option("walks", walks, "Walks: '<vertex> <edge>... [<vertex>]'; stdin lines if omitted");
      sub->add_option("--from", from, "Start vertex, prepended to every walk");
      sub->add_flag("--closed", closed, "Treat walks as closed (up to rotation)");
    }
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a signature-zero triangulation");
  add_common(validate_cmd, false);

  auto* normalize_cmd = app.add_subcommand("normalize", "Print the kink-free normal form");
  add_common(normalize_cmd, true);
  bool trace = false;
  bool orbifold_check = false;
  bool iota_strict = false;
  normalize_cmd->add_flag("--trace", trace, "Print every resolution step");
  normalize_cmd->add_flag("--orbifold-check", orbifold_check, "Re-check orbifold equality of input and output");
  normalize_cmd->add_flag("--iota-strict", iota_strict, "Refuse order-two loops (exit 3)");

  auto* kinks_cmd = app.add_subcommand("kinks", "List kinks, one JSON object per line");
  add_common(kinks_cmd, true);

  auto* signs_cmd = app.add_subcommand("signs", "Print the sign sequence");
  add_common(signs_cmd, true);

  auto* equal_cmd = app.add_subcommand("equal", "Compare two walks (exit 0 if equal)");
  add_common(equal_cmd, true);
  bool orbifold = false;
  equal_cmd->add_flag("--orbifold", orbifold, "Compare in the orbifold groupoid instead of up to homotopy");

  auto* order2_cmd = app.add_subcommand("order2", "Decide whether a loop has order two (exit 0 if so)");
  add_common(order2_cmd, true);

  std::string script;
  std::vector<std::string> moves;
  auto add_moves = [&](CLI::App* sub) {
    sub->add_option("--script", script, "Flip script (JSON)");
    sub->add_option("--move", moves, "standard:<arc> or double:<triangle>, applied in order")
        ->allow_extra_args(false);
  };
  auto* flip_cmd = app.add_subcommand("flip", "Apply flips and print the new triangulation");
  add_common(flip_cmd, false);
  add_moves(flip_cmd);

  auto* transport_cmd = app.add_subcommand("transport", "Carry walks across a sequence of flips");
  add_common(transport_cmd, true);
  add_moves(transport_cmd);

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz export of the leafy dual graph");
  add_common(dot_cmd, false);
  std::string highlight;
  bool plain_dual = false;
  dot_cmd->add_option("--walk", highlight, "Walk to highlight");
  dot_cmd->add_flag("--dual", plain_dual, "Export G(tau) instead of the leafy graph");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the seeded property suites");
  std::uint64_t seed = 42;
  std::size_t cases = 100;
  std::string fault;
  auto* seed_opt = selftest_cmd->add_option("--seed", seed, "Seed (default: $KINK_SEED, else 42)");
  selftest_cmd->add_option("--cases", cases, "Cases per suite; 0 runs nothing");
  selftest_cmd->add_option("--inject-fault", fault, "Mutation testing: skip-sign-condition")
      ->check(CLI::IsMember({"skip-sign-condition"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  auto move_list = [&] {
    std::vector<FlipMove> out;
    if (!script.empty()) out = parse_flip_script(slurp(script));
    for (const auto& m : moves) {
      const auto colon = m.find(':');
      if (colon == std::string::npos) throw ParseError("move must look like kind:target, got '" + m + "'");
      const std::string kind = m.substr(0, colon);
      if (kind != "standard" && kind != "double") throw ParseError("unknown move kind '" + kind + "'");
      out.push_back({kind == "standard" ? FlipMove::Kind::standard : FlipMove::Kind::double_flip, m.substr(colon + 1)});
    }
    if (out.empty()) throw ParseError("no moves given (use --script or --move)");
    return out;
  };

  if (*validate_cmd) {
    return emit(guarded([&](std::ostream& out, std::ostream& err) {
      const Triangulation t = read_triangulation_file(file);
      const auto problems = validate_signature_zero(t);
      for (const auto& d : problems) {
        err << json{{"code", d.code}, {"message", d.message}, {"subjects", d.subjects}}.dump() << '\n';
      }
      if (!problems.empty()) return kFail;
      const SurfaceSummary s = summarize(t);
      out << json{{"valid", true},
                  {"triangles", t.triangles.size()},
                  {"marked_points", s.marked_points},
                  {"punctures", s.punctures},
                  {"boundary_marked", s.boundary_marked},
                  {"euler_characteristic", s.euler_characteristic},
                  {"genus", s.genus}}
                 .dump()
          << '\n';
      return kOk;
    }));
  }

  if (*selftest_cmd) {
    return emit(guarded([&](std::ostream& out, std::ostream&) {
      SelftestConfig cfg;
      cfg.seed = seed_opt->count() > 0 ? seed : env_seed(seed);
      cfg.jobs = jobs;
      cfg.kink.skip_sign_condition = fault == "skip-sign-condition";
      out << "# orbikink selftest rng=" << kRngName << " seed=" << cfg.seed << " cases=" << cases
          << " jobs=" << jobs << (fault.empty() ? "" : " fault=" + fault) << '\n';
      const auto results = run_selftest(cfg, cases);
      int code = kOk;
      for (const auto& r : results) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases << " failures=" << r.failures
            << " seconds=" << r.seconds << " " << r.stats << '\n';
        if (!r.passed()) code = kFail;
      }
      for (const auto& r : results) {
        if (r.counterexample) out << "counterexample " << *r.counterexample << '\n';
      }
      out << "suites run: " << results.size() << '\n';
      return code;
    }));
  }

  if (*flip_cmd) {
    return emit(guarded([&](std::ostream& out, std::ostream&) {
      Triangulation t = read_triangulation_file(file);
      leafy_dual_graph(t);  // validates
      for (const auto& m : move_list()) t = flip(t, m);
      out << dump_triangulation(t) << '\n';
      return kOk;
    }));
  }

  if (*dot_cmd) {
    return emit(guarded([&](std::ostream& out, std::ostream&) {
      const Loaded l = load(file);
      std::optional<Walk> w;
      if (!highlight.empty()) w = read_walk(l.g.graph, highlight);
      if (plain_dual) {
        if (w) throw InputError("--walk highlights walks on the leafy graph only");
        out << to_dot(dual_graph(l.t).graph);
      } else {
        out << to_dot(l.g.graph, w);
      }
      return kOk;
    }));
  }

  // Everything below works on walk queries against one triangulation.
  std::optional<Loaded> loaded;
  {
    const Reply r = guarded([&](std::ostream&, std::ostream&) {
      loaded = load(file);
      return kOk;
    });
    if (r.code != kOk) return emit(r);
  }
  const LeafyDualGraph& g = loaded->g;

  if (*transport_cmd) {
    // The chain of transports is built once and shared by the queries.
    std::vector<std::unique_ptr<FlipTransport>> chain;
    const Reply r = guarded([&](std::ostream&, std::ostream&) {
      Triangulation t = loaded->t;
      for (const auto& m : move_list()) {
        chain.push_back(std::make_unique<FlipTransport>(t, m));
        t = chain.back()->target();
      }
      return kOk;
    });
    if (r.code != kOk) return emit(r);
    return answer_all(queries(walks), jobs, [&](const std::string& q) {
      return guarded([&](std::ostream& out, std::ostream&) {
        if (closed) {
          ClosedWalkClass c = read_closed(g, with_from(from, q));
          for (const auto& step : chain) c = step->transport(c);
          out << format_walk(chain.back()->target_graph().graph, c.representative()) << '\n';
        } else {
          Walk w = read_walk(g.graph, with_from(from, q));
          for (const auto& step : chain) w = step->transport(w);
          out << format_walk(chain.back()->target_graph().graph, w) << '\n';
        }
        return kOk;
      });
    });
  }

  if (*equal_cmd) {
    return emit(guarded([&](std::ostream& out, std::ostream&) {
      if (walks.size() != 2) throw InputError("equal needs exactly two walks");
      bool same = false;
      if (closed) {
        const auto a = read_closed(g, with_from(from, walks[0]));
        const auto b = read_closed(g, with_from(from, walks[1]));
        same = orbifold ? iota_free(g, a) == iota_free(g, b) : unoriented(g.graph, a) == unoriented(g.graph, b);
      } else {
        const Walk a = read_walk(g.graph, with_from(from, walks[0]));
        const Walk b = read_walk(g.graph, with_from(from, walks[1]));
        if (a.start != b.start || a.finish != b.finish) throw InputError("walks do not share endpoints");
        same = orbifold ? orbifold_equal(g, a, b) : a == b;
      }
      out << (same ? "equal" : "different") << '\n';
      return same ? kOk : kFail;
    }));
  }

  std::function<Reply(const std::string&)> fn;
  if (*normalize_cmd) {
    fn = [&](const std::string& q) {
      return guarded([&](std::ostream& out, std::ostream& err) {
        const std::string text = with_from(from, q);
        if (closed) {
          const ClosedWalkClass c = read_closed(g, text);
          StepObserver obs;
          if (trace) {
            obs = [&](const StepRecord& s) {
              out << "step " << kink_json(s.kink) << " swap=" << s.swap_index << " length " << s.length_before
                  << "->" << s.length_after << " multiplicity " << s.multiplicity_before << "->"
                  << s.multiplicity_after << " : " << format_walk(g.graph, s.result) << '\n';
            };
          }
          const ClosedWalkClass nf = normalize(g, c, {}, obs);
          out << format_walk(g.graph, nf.representative()) << '\n';
          return kOk;
        }
        const Walk w = read_walk(g.graph, text);
        if (iota_strict && g.is_basepoint(w.start) && g.is_basepoint(w.finish)) iota(g, w);
        StepObserver obs;
        if (trace) {
          obs = [&](const StepRecord& s) {
            out << "step " << kink_json(s.kink) << " swap=" << s.swap_index << " length " << s.length_before << "->"
                << s.length_after << " multiplicity " << s.multiplicity_before << "->" << s.multiplicity_after
                << " : " << format_walk(g.graph, s.result) << '\n';
          };
        }
        const Walk nf = normalize(g, w, {}, obs);
        if (orbifold_check) {
          if (!g.is_basepoint(w.start) || !g.is_basepoint(w.finish)) {
            throw InputError("--orbifold-check needs walks between boundary segments");
          }
          if (!orbifold_equal(g, nf, w) || !find_kinks(g, nf).empty()) {
            diag(err, "orbifold_check", "normal form is not an orbifold-equal kink-free walk");
            return kFail;
          }
        }
        out << format_walk(g.graph, nf) << '\n';
        return kOk;
      });
    };
  } else if (*kinks_cmd) {
    fn = [&](const std::string& q) {
      return guarded([&](std::ostream& out, std::ostream&) {
        const std::string text = with_from(from, q);
        out << (closed ? kink_report(find_kinks(g, read_closed(g, text)))
                       : kink_report(find_kinks(g, read_walk(g.graph, text))));
        return kOk;
      });
    };
  } else if (*signs_cmd) {
    fn = [&](const std::string& q) {
      return guarded([&](std::ostream& out, std::ostream&) {
        const std::string text = with_from(from, q);
        if (closed) {
          out << sign_string(closed_sign_sequence(g.graph, read_closed(g, text).representative())) << '\n';
        } else {
          out << sign_string(sign_sequence(g.graph, read_walk(g.graph, text))) << '\n';
        }
        return kOk;
      });
    };
  } else if (*order2_cmd) {
    fn = [&](const std::string& q) {
      return guarded([&](std::ostream& out, std::ostream&) {
        const Walk w = read_walk(g.graph, with_from(from, q));
        const bool yes = is_order_two(g, w);
        out << (yes ? "order-two" : "not-order-two") << '\n';
        return yes ? kOk : kFail;
      });
    };
  }
  return answer_all(queries(walks), jobs, fn);
}
