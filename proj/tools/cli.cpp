#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odokit/dynsys.hpp"
#include "odokit/error.hpp"
#include "odokit/odometer.hpp"
#include "odokit/projection.hpp"
#include "odokit/supernat.hpp"

namespace odokit::cli {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  std::istringstream in(text);
  if (!(in >> v) || !in.eof() || text.empty() || text.front() == '-') {
    throw ParseError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return v;
}

std::uint32_t parse_length(const std::string& text) {
  const std::uint64_t v = parse_count(text, "length");
  if (v == 0 || v > 1'000'000) throw ParseError("length out of range: " + text);
  return static_cast<std::uint32_t>(v);
}

std::int64_t parse_int(const std::string& text) {
  std::int64_t v = 0;
  std::istringstream in(text);
  if (!(in >> v) || !in.eof()) throw ParseError("invalid integer: '" + text + "'");
  return v;
}

RegularSeq parse_lengths(const std::string& text) {
  try {
    return RegularSeq(parse_base(text).levels());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

Json blocks_json(const PeriodicPartition& p) { return p.blocks(); }

Json report_json(const PartitionReport& r) {
  Json j;
  j["valid"] = r.valid();
  j["length"] = r.length;
  j["clopen"] = r.clopen;
  j["nonempty"] = r.nonempty;
  j["cyclic_image"] = r.cyclic_image;
  j["disjoint"] = r.disjoint;
  j["covering"] = r.covering;
  j["in_range"] = r.in_range;
  return j;
}

Json chain_json(const PartitionChain& chain) {
  Json j;
  j["lengths"] = chain.lengths().terms();
  Json levels = Json::array();
  for (const auto& p : chain.levels()) levels.push_back(blocks_json(p));
  j["levels"] = std::move(levels);
  return j;
}

void print_chain(std::ostream& out, const PartitionChain& chain) {
  for (const auto& p : chain.levels()) out << p.length() << ' ' << to_json(p) << '\n';
}

struct Context {
  bool json = false;
  std::ostream& out;
};

// Every subcommand stores its action here; run() invokes the one that was parsed.
using Action = std::function<void()>;

void add_sn(CLI::App& app, Context& ctx, Action& action) {
  auto* sn = app.add_subcommand("sn", "Supernatural number arithmetic")->require_subcommand(1);

  auto binary = [&](const char* name, const char* help,
                    std::function<Supernatural(const Supernatural&, const Supernatural&)> op) {
    auto* cmd = sn->add_subcommand(name, help);
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    cmd->add_option("a", *a)->required();
    cmd->add_option("b", *b)->required();
    cmd->callback([&ctx, &action, a, b, op] {
      action = [&ctx, a, b, op] {
        const auto r = to_string(op(parse_supernatural(*a), parse_supernatural(*b)));
        if (ctx.json) {
          ctx.out << Json{{"value", r}}.dump() << '\n';
        } else {
          ctx.out << r << '\n';
        }
      };
    });
  };
  binary("mul", "Product", [](const auto& a, const auto& b) { return mul(a, b); });
  binary("gcd", "Greatest common divisor", [](const auto& a, const auto& b) { return gcd(a, b); });
  binary("lcm", "Least common multiple", [](const auto& a, const auto& b) { return lcm(a, b); });

  auto emit_bool = [&ctx](bool v) {
    if (ctx.json) {
      ctx.out << Json{{"value", v}}.dump() << '\n';
    } else {
      ctx.out << (v ? "true" : "false") << '\n';
    }
  };
  auto emit_value = [&ctx](const std::string& v) {
    if (ctx.json) {
      ctx.out << Json{{"value", v}}.dump() << '\n';
    } else {
      ctx.out << v << '\n';
    }
  };

  {
    auto* cmd = sn->add_subcommand("leq", "Divisibility order a <= b");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    cmd->add_option("a", *a)->required();
    cmd->add_option("b", *b)->required();
    cmd->callback([&action, a, b, emit_bool] {
      action = [a, b, emit_bool] { emit_bool(leq(parse_supernatural(*a), parse_supernatural(*b))); };
    });
  }
  {
    auto* cmd = sn->add_subcommand("phi0", "Embed a positive integer");
    auto n = std::make_shared<std::string>();
    cmd->add_option("n", *n)->required();
    cmd->callback([&action, n, emit_value] {
      action = [n, emit_value] { emit_value(to_string(phi0(parse_count(*n, "integer")))); };
    });
  }
  {
    auto* cmd = sn->add_subcommand("phi-set", "Supremum of phi0 over a finite set");
    auto values = std::make_shared<std::vector<std::string>>();
    cmd->add_option("values", *values)->required();
    cmd->callback([&action, values, emit_value] {
      action = [values, emit_value] {
        std::vector<std::uint64_t> v;
        for (const auto& s : *values) v.push_back(parse_count(s, "integer"));
        emit_value(to_string(phi_of_set(v)));
      };
    });
  }
  {
    auto* cmd = sn->add_subcommand("contains", "Membership of an integer in a regular set");
    auto r = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    cmd->add_option("r", *r)->required();
    cmd->add_option("a", *a)->required();
    cmd->callback([&action, r, a, emit_bool] {
      action = [r, a, emit_bool] {
        emit_bool(regular_contains(parse_supernatural(*r), parse_count(*a, "integer")));
      };
    });
  }
  {
    auto* cmd = sn->add_subcommand("sequence", "Regular sequence realizing a supernatural number");
    auto r = std::make_shared<std::string>();
    auto depth = std::make_shared<std::string>();
    auto horizon = std::make_shared<std::uint64_t>(0);
    cmd->add_option("r", *r)->required();
    cmd->add_option("depth", *depth)->required();
    cmd->add_option("--horizon", *horizon, "Largest prime used when the default exponent is inf");
    cmd->callback([&ctx, &action, r, depth, horizon] {
      action = [&ctx, r, depth, horizon] {
        const auto seq = extract_regular_sequence(parse_supernatural(*r),
                                                  parse_count(*depth, "depth"), *horizon);
        if (ctx.json) {
          ctx.out << Json{{"terms", seq.terms()}}.dump() << '\n';
        } else {
          ctx.out << join(seq.terms()) << '\n';
        }
      };
    });
  }
  {
    auto* cmd = sn->add_subcommand("dominates", "Every term of a divides some term of b");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    cmd->add_option("a", *a)->required();
    cmd->add_option("b", *b)->required();
    cmd->callback([&action, a, b, emit_bool] {
      action = [a, b, emit_bool] { emit_bool(seq_dominates(parse_lengths(*a), parse_lengths(*b))); };
    });
  }
}

struct SystemArgs {
  std::string cycles;
  std::optional<std::size_t> size;

  void attach(CLI::App* cmd) {
    cmd->add_option("cycles", cycles, "Cycle notation, e.g. \"(0 1 2)(3 4 5)\"")->required();
    cmd->add_option("--size", size, "Number of points; unlisted points are fixed");
  }
  FinSystem system() const { return parse_cycles(cycles, size); }
};

void add_ess(CLI::App& app, Context& ctx, Action& action) {
  auto* cmd = app.add_subcommand("ess", "Periods of a finite system");
  auto sys = std::make_shared<SystemArgs>();
  sys->attach(cmd);
  cmd->callback([&ctx, &action, sys] {
    action = [&ctx, sys] {
      const auto e = ess_periods(sys->system());
      if (ctx.json) {
        Json j;
        j["periods"] = e.periods;
        j["phi"] = to_string(e.phi);
        ctx.out << j.dump() << '\n';
      } else {
        ctx.out << "periods " << join(e.periods) << "\nphi " << to_string(e.phi) << '\n';
      }
    };
  });
}

void add_oracle(CLI::App& app, Context& ctx, Action& action) {
  auto* cmd = app.add_subcommand("oracle", "All periodic partitions of a given length");
  auto sys = std::make_shared<SystemArgs>();
  auto m = std::make_shared<std::string>();
  sys->attach(cmd);
  cmd->add_option("m", *m)->required();
  cmd->callback([&ctx, &action, sys, m] {
    action = [&ctx, sys, m] {
      const auto all = all_partitions(sys->system(), parse_length(*m));
      if (ctx.json) {
        Json list = Json::array();
        for (const auto& p : all) list.push_back(blocks_json(p));
        ctx.out << Json{{"count", all.size()}, {"partitions", list}}.dump() << '\n';
      } else {
        for (const auto& p : all) ctx.out << to_json(p) << '\n';
      }
    };
  });
}

void add_part(CLI::App& app, Context& ctx, Action& action) {
  auto* part = app.add_subcommand("part", "Single-partition operations")->require_subcommand(1);
  auto emit = [&ctx](const PeriodicPartition& p) {
    if (ctx.json) {
      ctx.out << Json{{"length", p.length()}, {"blocks", blocks_json(p)}}.dump() << '\n';
    } else {
      ctx.out << to_json(p) << '\n';
    }
  };
  {
    auto* cmd = part->add_subcommand("validate", "Check the periodic-partition clauses");
    auto sys = std::make_shared<SystemArgs>();
    auto blocks = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("blocks", *blocks, "JSON, e.g. [[0,2],[1,3]]")->required();
    cmd->callback([&ctx, &action, sys, blocks] {
      action = [&ctx, sys, blocks] {
        const auto r = validate_partition(sys->system(), parse_blocks_json(*blocks));
        if (ctx.json) {
          ctx.out << report_json(r).dump() << '\n';
        } else {
          ctx.out << (r.valid() ? "valid" : "invalid") << " length " << r.length << '\n';
        }
        if (!r.valid()) throw DomainError("not a periodic partition");
      };
    });
  }
  {
    auto* cmd = part->add_subcommand("shift", "Cyclic re-indexing of the blocks");
    auto sys = std::make_shared<SystemArgs>();
    auto blocks = std::make_shared<std::string>();
    auto k = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("blocks", *blocks)->required();
    cmd->add_option("k", *k)->required();
    cmd->callback([&action, sys, blocks, k, emit] {
      action = [sys, blocks, k, emit] {
        emit(cyclic_shift(parse_partition_json(sys->system(), *blocks), parse_int(*k)));
      };
    });
  }
  {
    auto* cmd = part->add_subcommand("coarsen", "Merge blocks congruent modulo d");
    auto sys = std::make_shared<SystemArgs>();
    auto blocks = std::make_shared<std::string>();
    auto d = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("blocks", *blocks)->required();
    cmd->add_option("d", *d)->required();
    cmd->callback([&action, sys, blocks, d, emit] {
      action = [sys, blocks, d, emit] {
        emit(coarsen(parse_partition_json(sys->system(), *blocks), parse_length(*d)));
      };
    });
  }
  {
    auto* cmd = part->add_subcommand("return", "Partition generated by returns of x into U");
    auto sys = std::make_shared<SystemArgs>();
    auto x = std::make_shared<std::string>();
    auto u = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("x", *x)->required();
    cmd->add_option("neighborhood", *u, "JSON point list, e.g. [0,3]")->required();
    cmd->callback([&ctx, &action, sys, x, u] {
      action = [&ctx, sys, x, u] {
        const FinSystem s = sys->system();
        Json parsed;
        try {
          parsed = Json::parse(*u);
        } catch (const Json::parse_error& e) {
          throw ParseError(std::string("invalid neighborhood JSON: ") + e.what());
        }
        if (!parsed.is_array()) throw ParseError("neighborhood must be a JSON array");
        PointSet set;
        for (const auto& v : parsed) {
          if (!v.is_number_unsigned()) throw ParseError("point ids must be nonnegative integers");
          set.push_back(v.get<Point>());
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        const auto r = partition_from_return(s, static_cast<Point>(parse_count(*x, "point")), set);
        const Json blocks = r.global_blocks();
        if (ctx.json) {
          ctx.out << Json{{"period", r.period}, {"blocks", blocks}}.dump() << '\n';
        } else {
          ctx.out << "period " << r.period << '\n' << blocks.dump() << '\n';
        }
      };
    });
  }
  {
    auto* cmd = part->add_subcommand("equivalent", "Do two partitions differ by a cyclic shift");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("p1", *a)->required();
    cmd->add_option("p2", *b)->required();
    cmd->callback([&ctx, &action, sys, a, b] {
      action = [&ctx, sys, a, b] {
        const FinSystem s = sys->system();
        const bool v = are_equivalent(parse_partition_json(s, *a), parse_partition_json(s, *b));
        ctx.out << (ctx.json ? Json{{"value", v}}.dump() : std::string(v ? "true" : "false")) << '\n';
      };
    });
  }
}

void add_compat(CLI::App& app, Context& ctx, Action& action) {
  auto* compat = app.add_subcommand("compat", "Compatibility of periodic partitions")->require_subcommand(1);
  {
    auto* cmd = compat->add_subcommand("check", "Are two partitions compatible");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("p1", *a)->required();
    cmd->add_option("p2", *b)->required();
    cmd->callback([&ctx, &action, sys, a, b] {
      action = [&ctx, sys, a, b] {
        const FinSystem s = sys->system();
        const bool v = are_compatible(parse_partition_json(s, *a), parse_partition_json(s, *b));
        ctx.out << (ctx.json ? Json{{"value", v}}.dump() : std::string(v ? "true" : "false")) << '\n';
      };
    });
  }
  {
    auto* cmd = compat->add_subcommand("lcm", "Common refinement of two compatible partitions");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("p1", *a)->required();
    cmd->add_option("p2", *b)->required();
    cmd->callback([&ctx, &action, sys, a, b] {
      action = [&ctx, sys, a, b] {
        const FinSystem s = sys->system();
        const auto p = lcm_partition(parse_partition_json(s, *a), parse_partition_json(s, *b));
        ctx.out << (ctx.json ? Json{{"length", p.length()}, {"blocks", blocks_json(p)}}.dump()
                             : to_json(p))
                << '\n';
      };
    });
  }
  {
    auto* cmd = compat->add_subcommand("make", "A length-m partition compatible with p1");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("p1", *a)->required();
    cmd->add_option("m", *m)->required();
    cmd->callback([&ctx, &action, sys, a, m] {
      action = [&ctx, sys, a, m] {
        const auto p = make_compatible(parse_partition_json(sys->system(), *a), parse_length(*m));
        ctx.out << (ctx.json ? Json{{"length", p.length()}, {"blocks", blocks_json(p)}}.dump()
                             : to_json(p))
                << '\n';
      };
    });
  }
  {
    auto* cmd = compat->add_subcommand("enumerate", "The shifted family of compatible partitions");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("p1", *a)->required();
    cmd->add_option("m", *m)->required();
    cmd->callback([&ctx, &action, sys, a, m] {
      action = [&ctx, sys, a, m] {
        const auto fam =
            enumerate_compatible(parse_partition_json(sys->system(), *a), parse_length(*m));
        if (ctx.json) {
          Json members = Json::array();
          for (std::size_t i = 0; i < fam.members.size(); ++i) {
            members.push_back(Json{{"parameters", fam.parameters[i]},
                                   {"class", fam.class_of[i]},
                                   {"blocks", blocks_json(fam.members[i])}});
          }
          ctx.out << Json{{"class_count", fam.class_count}, {"members", members}}.dump() << '\n';
        } else {
          ctx.out << "classes " << fam.class_count << '\n';
          for (std::size_t i = 0; i < fam.members.size(); ++i) {
            ctx.out << "t=" << join(fam.parameters[i]) << " class " << fam.class_of[i] << ' '
                    << to_json(fam.members[i]) << '\n';
          }
        }
      };
    });
  }
}

void add_chain(CLI::App& app, Context& ctx, Action& action) {
  auto* chain = app.add_subcommand("chain", "Regular sequences of partitions")->require_subcommand(1);
  auto emit = [&ctx](const PartitionChain& c) {
    if (ctx.json) {
      ctx.out << chain_json(c).dump() << '\n';
    } else {
      print_chain(ctx.out, c);
    }
  };
  {
    auto* cmd = chain->add_subcommand("build", "Chain with the given lengths");
    auto sys = std::make_shared<SystemArgs>();
    auto lengths = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("lengths", *lengths, "e.g. 2,4,12")->required();
    cmd->callback([&action, sys, lengths, emit] {
      action = [sys, lengths, emit] { emit(build_chain(sys->system(), parse_lengths(*lengths))); };
    });
  }
  {
    auto* cmd = chain->add_subcommand("extend", "Build a chain, then insert one more level");
    auto sys = std::make_shared<SystemArgs>();
    auto lengths = std::make_shared<std::string>();
    auto m = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("lengths", *lengths)->required();
    cmd->add_option("m", *m)->required();
    cmd->callback([&action, sys, lengths, m, emit] {
      action = [sys, lengths, m, emit] {
        emit(extend_chain(build_chain(sys->system(), parse_lengths(*lengths)), parse_length(*m)));
      };
    });
  }
  {
    auto* cmd = chain->add_subcommand("validate", "Check a list of partitions as a chain");
    auto sys = std::make_shared<SystemArgs>();
    auto levels = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("levels", *levels, "JSON list of block lists")->required();
    cmd->callback([&ctx, &action, sys, levels] {
      action = [&ctx, sys, levels] {
        const FinSystem s = sys->system();
        Json parsed;
        try {
          parsed = Json::parse(*levels);
        } catch (const Json::parse_error& e) {
          throw ParseError(std::string("invalid chain JSON: ") + e.what());
        }
        if (!parsed.is_array()) throw ParseError("chain must be a JSON array of partitions");
        std::vector<PeriodicPartition> parts;
        for (const auto& p : parsed) parts.push_back(parse_partition_json(s, p.dump()));
        const auto r = validate_chain(parts);
        if (ctx.json) {
          Json j;
          j["valid"] = r.valid();
          j["nonempty"] = r.nonempty;
          j["same_system"] = r.same_system;
          j["divisibility"] = r.divisibility;
          j["consecutive_compatible"] = r.consecutive_compatible;
          j["pairwise_compatible"] = r.pairwise_compatible;
          j["refinement"] = r.refinement;
          ctx.out << j.dump() << '\n';
        } else {
          ctx.out << (r.valid() ? "valid" : "invalid") << '\n';
        }
        if (!r.valid()) throw DomainError("not a regular sequence of partitions");
      };
    });
  }
}

void add_project(CLI::App& app, Context& ctx, Action& action) {
  auto* cmd = app.add_subcommand("project", "Factor map onto an odometer, as a JSON report");
  auto sys = std::make_shared<SystemArgs>();
  auto levels = std::make_shared<std::string>();
  auto depth = std::make_shared<std::optional<std::size_t>>();
  sys->attach(cmd);
  cmd->add_option("--levels", *levels, "Chain lengths; default is the maximal factor");
  cmd->add_option("--depth", *depth, "Depth of the maximal factor");
  cmd->callback([&ctx, &action, sys, levels, depth] {
    action = [&ctx, sys, levels, depth] {
      const FinSystem s = sys->system();
      if (!levels->empty() && depth->has_value()) {
        throw ParseError("--levels and --depth are mutually exclusive");
      }
      const FactorMap f = levels->empty()
                              ? max_odometer_factor(s, *depth).map
                              : build_factor_map(s, build_chain(s, parse_lengths(*levels)));
      ctx.out << factor_map_json(f) << '\n';
    };
  });
}

void add_factor(CLI::App& app, Context& ctx, Action& action) {
  auto* factor = app.add_subcommand("factor", "Existence and order of projections")->require_subcommand(1);
  auto emit_bool = [&ctx](bool v) {
    ctx.out << (ctx.json ? Json{{"value", v}}.dump() : std::string(v ? "true" : "false")) << '\n';
  };
  {
    auto* cmd = factor->add_subcommand("exists", "Does the system project onto the odometer");
    auto sys = std::make_shared<SystemArgs>();
    auto base = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("base", *base)->required();
    cmd->callback([&action, sys, base, emit_bool] {
      action = [sys, base, emit_bool] { emit_bool(projection_exists(sys->system(), parse_base(*base))); };
    });
  }
  {
    auto* cmd = factor->add_subcommand("compare", "Order of two chain projections");
    auto sys = std::make_shared<SystemArgs>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("levels1", *a)->required();
    cmd->add_option("levels2", *b)->required();
    cmd->callback([&ctx, &action, sys, a, b] {
      action = [&ctx, sys, a, b] {
        const FinSystem s = sys->system();
        const auto order = compare_projections(build_factor_map(s, build_chain(s, parse_lengths(*a))),
                                               build_factor_map(s, build_chain(s, parse_lengths(*b))));
        ctx.out << (ctx.json ? Json{{"order", to_string(order)}}.dump() : to_string(order)) << '\n';
      };
    });
  }
  {
    auto* cmd = factor->add_subcommand("enumerate", "Classes of projections with given lengths");
    auto sys = std::make_shared<SystemArgs>();
    auto lengths = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("lengths", *lengths)->required();
    cmd->callback([&ctx, &action, sys, lengths] {
      action = [&ctx, sys, lengths] {
        const auto fam = enumerate_factor_maps(sys->system(), parse_lengths(*lengths));
        if (ctx.json) {
          ctx.out << Json{{"maps", fam.maps.size()}, {"class_count", fam.class_count}}.dump() << '\n';
        } else {
          ctx.out << "maps " << fam.maps.size() << "\nclasses " << fam.class_count << '\n';
        }
      };
    });
  }
  {
    auto* cmd = factor->add_subcommand("singletons", "Points with a one-point fiber");
    auto sys = std::make_shared<SystemArgs>();
    auto lengths = std::make_shared<std::string>();
    sys->attach(cmd);
    cmd->add_option("lengths", *lengths)->required();
    cmd->callback([&ctx, &action, sys, lengths] {
      action = [&ctx, sys, lengths] {
        const FinSystem s = sys->system();
        const Json q = singleton_fiber_set(build_factor_map(s, build_chain(s, parse_lengths(*lengths))));
        ctx.out << (ctx.json ? Json{{"points", q}}.dump() : q.dump()) << '\n';
      };
    });
  }
}

void add_odo(CLI::App& app, Context& ctx, Action& action) {
  auto* odo = app.add_subcommand("odo", "Odometer arithmetic")->require_subcommand(1);
  auto emit = [&ctx](const AdicInt& x) {
    ctx.out << (ctx.json ? Json{{"residues", x.residues()}}.dump() : to_string(x)) << '\n';
  };
  auto unary = [&](const char* name, const char* help, std::function<AdicInt(const AdicInt&)> op) {
    auto* cmd = odo->add_subcommand(name, help);
    auto base = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    cmd->add_option("base", *base, "e.g. 2,4,8")->required();
    cmd->add_option("x", *x, "e.g. [1,1,5]")->required();
    cmd->callback([&action, base, x, op, emit] {
      action = [base, x, op, emit] { emit(op(parse_adic(parse_base(*base), *x))); };
    });
  };
  unary("neg", "Additive inverse", [](const AdicInt& x) { return neg(x); });
  unary("translate", "x + e", [](const AdicInt& x) { return translate(x); });

  {
    auto* cmd = odo->add_subcommand("add", "Componentwise sum");
    auto base = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    auto y = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->add_option("x", *x)->required();
    cmd->add_option("y", *y)->required();
    cmd->callback([&action, base, x, y, emit] {
      action = [base, x, y, emit] {
        const auto b = parse_base(*base);
        emit(add(parse_adic(b, *x), parse_adic(b, *y)));
      };
    });
  }
  {
    auto* cmd = odo->add_subcommand("metric", "Distance 1/n_m at the first disagreeing level");
    auto base = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    auto y = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->add_option("x", *x)->required();
    cmd->add_option("y", *y)->required();
    cmd->callback([&ctx, &action, base, x, y] {
      action = [&ctx, base, x, y] {
        const auto b = parse_base(*base);
        const auto d = metric(parse_adic(b, *x), parse_adic(b, *y));
        if (ctx.json) {
          ctx.out << Json{{"numerator", d.numerator},
                          {"denominator", d.denominator},
                          {"agrees_to_depth", d.agrees_to_depth}}
                         .dump()
                  << '\n';
        } else {
          ctx.out << to_string(d) << (d.agrees_to_depth ? " (agrees to depth)" : "") << '\n';
        }
      };
    });
  }
  {
    auto* cmd = odo->add_subcommand("cylinder", "Is x in the cylinder {a : a_j = r}");
    auto base = std::make_shared<std::string>();
    auto j = std::make_shared<std::string>();
    auto r = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->add_option("level", *j)->required();
    cmd->add_option("residue", *r)->required();
    cmd->add_option("x", *x)->required();
    cmd->callback([&ctx, &action, base, j, r, x] {
      action = [&ctx, base, j, r, x] {
        const auto b = parse_base(*base);
        const Cylinder c(b, parse_count(*j, "level"), parse_count(*r, "residue"));
        const bool v = c.contains(parse_adic(b, *x));
        ctx.out << (ctx.json ? Json{{"value", v}}.dump() : std::string(v ? "true" : "false")) << '\n';
      };
    });
  }
  {
    auto* cmd = odo->add_subcommand("truncate", "The level-k cyclic system");
    auto base = std::make_shared<std::string>();
    auto k = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->add_option("level", *k)->required();
    cmd->callback([&ctx, &action, base, k] {
      action = [&ctx, base, k] {
        const auto s = to_cycle_string(truncate(parse_base(*base), parse_count(*k, "level")));
        ctx.out << (ctx.json ? Json{{"cycles", s}}.dump() : s) << '\n';
      };
    });
  }
  {
    auto* cmd = odo->add_subcommand("from-int", "Image of an integer");
    auto base = std::make_shared<std::string>();
    auto z = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->add_option("z", *z)->required();
    cmd->callback([&action, base, z, emit] {
      action = [base, z, emit] { emit(from_integer(parse_base(*base), parse_int(*z))); };
    });
  }
  {
    auto* cmd = odo->add_subcommand("ess", "Supernatural number of the base");
    auto base = std::make_shared<std::string>();
    cmd->add_option("base", *base)->required();
    cmd->callback([&ctx, &action, base] {
      action = [&ctx, base] {
        const auto s = to_string(ess_of_odometer(parse_base(*base)));
        ctx.out << (ctx.json ? Json{{"value", s}}.dump() : s) << '\n';
      };
    });
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic partitions, supernatural numbers and odometers", "odokit"};
  app.require_subcommand(1);
  app.allow_extras(false);

  Context ctx{false, out};
  app.add_flag("--json", ctx.json, "Emit JSON instead of text");
  Action action;
  add_sn(app, ctx, action);
  add_ess(app, ctx, action);
  add_oracle(app, ctx, action);
  add_part(app, ctx, action);
  add_compat(app, ctx, action);
  add_chain(app, ctx, action);
  add_project(app, ctx, action);
  add_factor(app, ctx, action);
  add_odo(app, ctx, action);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Error& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace odokit::cli
