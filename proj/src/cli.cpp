#include "strata/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "strata/cache.hpp"
#include "strata/errors.hpp"
#include "strata/report_json.hpp"

namespace strata {

namespace {

const NumberPartition kCounterLambda = NumberPartition::parse("7,6,4,3,2,1");
const NumberPartition kCounterMu = NumberPartition::parse("10,8,5");

struct Settings {
  int threads = 1;
  std::uint64_t guard_bell = Guards{}.max_bell;
  std::size_t guard_forests = Guards{}.max_forests;
  std::string cache_dir;
  bool json = false;

  Guards guards() const { return Guards{guard_bell, guard_forests}; }
};

ForestModel parse_model(const std::string& s) {
  if (s == "join-closed") return ForestModel::join_closed;
  if (s == "literal") return ForestModel::literal;
  throw InvalidInput("unknown model " + s);
}

void betti_table(std::ostream& out, const Json& betti) {
  out << "  i  betti\n";
  std::vector<std::pair<int, long>> rows;
  for (const auto& [key, value] : betti.items()) rows.emplace_back(std::stoi(key), value.get<long>());
  std::sort(rows.begin(), rows.end());
  for (const auto& [i, b] : rows) out << "  " << i << "  " << b << "\n";
}

std::string join_f(const std::vector<int>& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + ")";
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<NumberPartition> read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read family file " + path);
  std::vector<NumberPartition> family;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    family.push_back(NumberPartition::parse(line));
  }
  if (family.empty()) throw InvalidInput("family file is empty");
  return family;
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Betti numbers of multiple-root strata via marked forests", "strata"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--threads", s_.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--guard-bell", s_.guard_bell, "Largest Bell number enumerated by the oracle")->check(CLI::PositiveNumber);
    app.add_option("--guard-forests", s_.guard_forests, "Largest forest enumeration")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", s_.cache_dir, std::string("Result cache directory (default: $") + kCacheDirEnv + ")");
    app.add_flag("--json", s_.json, "JSON output");
    app.fallthrough();

    std::function<void()> action;
    add_commands(app, action);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitInvalid;
    }
    if (s_.cache_dir.empty()) {
      if (const char* env = std::getenv(kCacheDirEnv)) s_.cache_dir = env;
    }
    try {
      action();
      return exit_code_;
    } catch (const InvalidInput& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const GuardExceeded& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const ConsistencyError& e) {
      err_ << "consistency failure: " << e.what() << "\n";
      return kExitConsistency;
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << "\n";
      return kExitConsistency;
    }
  }

 private:
  void fail_if(bool bad, const std::string& what) {
    if (bad) {
      err_ << "consistency failure: " << what << "\n";
      exit_code_ = kExitConsistency;
    }
  }

  // JSON text of a report, served from the cache when possible.
  std::string cached(const std::string& command, const std::map<std::string, std::string>& args,
                     const std::function<Json()>& compute) {
    if (s_.cache_dir.empty()) return compute().dump(2);
    ResultCache cache(s_.cache_dir);
    const auto descriptor = cache_descriptor(command, args, s_.guards());
    if (auto hit = cache.get(descriptor)) return *hit;
    auto text = compute().dump(2);
    if (!cache.put(descriptor, text)) err_ << "warning: could not write cache entry in " << s_.cache_dir << "\n";
    return text;
  }

  void add_commands(CLI::App& app, std::function<void()>& action) {
    auto* bx = app.add_subcommand("betti-x", "Reduced Betti numbers of X_{lambda,mu}");
    bx->add_option("--lambda", lambda_, "Partition lambda, e.g. 2,1,1,1")->required();
    bx->add_option("--mu", mu_, "Coarsening mu of lambda")->required();
    bx->add_option("--model", model_, "join-closed or literal")->check(CLI::IsMember({"join-closed", "literal"}));
    bx->add_flag("--cross-check", cross_check_, "Compute every rank by both elimination orders");
    bx->callback([&] { action = [this] { betti_x(); }; });

    auto* bs = app.add_subcommand("betti-sigma", "Reduced Betti numbers of Sigma_lambda");
    bs->add_option("--lambda", lambda_, "Partition lambda")->required();
    bs->add_option("--n", n_, "Total; inferred from lambda when omitted");
    bs->callback([&] { action = [this] { betti_sigma_cmd(); }; });

    auto* va = app.add_subcommand("verify-arnold", "Check every (k^m,1^(n-km)) with n <= n-max");
    va->add_option("--n-max", n_, "Largest n")->required()->check(CLI::PositiveNumber);
    va->callback([&] { action = [this] { verify_arnold_cmd(); }; });

    auto* oc = app.add_subcommand("oracle-check", "Compare the forest model with the brute-force quotient");
    oc->add_option("--n", n_, "Ground set size")->required()->check(CLI::PositiveNumber);
    oc->add_option("--lambda", lambda_, "Restrict to one lambda");
    oc->add_option("--sweep-up-to", sweep_up_to_, "Validate orbits by a full group sweep up to this n");
    oc->callback([&] { action = [this] { oracle_check(); }; });

    auto* co = app.add_subcommand("collapse", "Collapsibility certificate for X_{Lambda,mu}");
    co->add_option("--k", k_, "Splitting parameter")->required();
    co->add_option("--lambda", lambda_, "Generating partition (arnold and closure families)");
    co->add_option("--mu", mu_, "Roots")->required();
    co->add_option("--family", family_, "arnold, closure, stanley, hanlon or custom-file")
        ->check(CLI::IsMember({"arnold", "closure", "stanley", "hanlon", "custom-file"}));
    co->add_option("--family-file", family_file_, "One partition per line (custom-file)");
    co->callback([&] { action = [this] { collapse_cmd(); }; });

    auto* cn = app.add_subcommand("cone", "Cone certificate for generic lambda");
    cn->add_option("--lambda", lambda_, "Generic partition")->required();
    cn->add_option("--mu", mu_, "Coarsening")->required();
    cn->callback([&] { action = [this] { cone_cmd(); }; });

    auto* fo = app.add_subcommand("forests", "List (lambda,mu)-forests");
    fo->add_option("--lambda", lambda_, "Partition lambda")->required();
    fo->add_option("--mu", mu_, "Roots")->required();
    fo->add_option("--rank", rank_, "Only this rank");
    fo->add_option("--model", model_, "join-closed or literal")->check(CLI::IsMember({"join-closed", "literal"}));
    fo->callback([&] { action = [this] { forests_cmd(); }; });

    auto* bd = app.add_subcommand("boundary", "Signed level deletions of a forest given as JSON");
    bd->add_option("--input", input_, "File holding the forest JSON, - for stdin");
    bd->add_option("--forest", forest_text_, "Forest JSON text");
    bd->callback([&] { action = [this] { boundary_cmd(); }; });

    auto* pp = app.add_subcommand("p-poset", "Bracketed-partition poset and its components");
    pp->add_option("--lambda", lambda_, "Partition lambda")->required();
    pp->add_option("--mu", mu_, "Brackets")->required();
    pp->add_flag("--components", components_, "Compare component counts with the forest model");
    pp->add_flag("--list-elements", list_elements_, "Print the elements");
    pp->callback([&] { action = [this] { p_poset_cmd(); }; });

    auto* ce = app.add_subcommand("counterexample", "lambda=(7,6,4,3,2,1), mu=(10,8,5)");
    ce->callback([&] { action = [this] { counterexample_cmd(); }; });

    auto* cs = app.add_subcommand("component-sweep", "Disconnected X_{lambda,mu} and their higher Betti numbers");
    cs->add_option("--n", n_, "Total")->required()->check(CLI::PositiveNumber);
    cs->callback([&] { action = [this] { component_sweep(); }; });
  }

  NumberPartition lambda() const { return NumberPartition::parse(lambda_); }
  NumberPartition mu() const { return NumberPartition::parse(mu_); }

  void betti_x() {
    auto l = lambda(), m = mu();
    auto x = build_x_space(l, m, parse_model(model_), s_.guards(), cross_check_);
    if (euler_characteristic(x.complex) != euler_from_betti(x.betti) && !x.empty && x.reachable) {
      throw ConsistencyError("Euler characteristic disagrees with the Betti numbers");
    }
    auto j = xspace_to_json(l, x);
    if (s_.json) {
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << "X_{" << l.to_string() << " | " << m.to_string() << "}";
    if (x.empty) out_ << "  (empty)";
    if (!x.reachable) out_ << "  (no element of this type: a point)";
    out_ << "\n  f-vector " << join_f(j["f_vector"].get<std::vector<int>>()) << "  euler " << j["euler"] << "\n";
    betti_table(out_, j["betti"]);
  }

  void betti_sigma_cmd() {
    auto l = lambda();
    if (n_ && *n_ != l.total()) throw InvalidInput("lambda does not partition n");
    SigmaOptions o{s_.guards(), s_.threads, false};
    auto text = cached("betti-sigma", {{"lambda", l.to_string()}}, [&] { return sigma_to_json(betti_sigma(l, o)); });
    if (s_.json) {
      out_ << text << "\n";
      return;
    }
    auto j = Json::parse(text);
    out_ << "Sigma_" << l.to_string() << " (n=" << l.total() << ")\n";
    betti_table(out_, j["betti"]);
    out_ << "  top class only: " << (j["top_class_only"].get<bool>() ? "yes" : "no")
         << "  vanishing bounds: " << (j["vanishing"].get<bool>() ? "hold" : "violated") << "\n";
  }

  void verify_arnold_cmd() {
    SigmaOptions o{s_.guards(), s_.threads, false};
    auto text = cached("verify-arnold", {{"n_max", std::to_string(*n_)}},
                       [&] { return arnold_to_json(verify_arnold(*n_, o)); });
    auto j = Json::parse(text);
    if (s_.json) {
      out_ << text << "\n";
    } else {
      for (const auto& c : j["cases"]) {
        out_ << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["lambda"].get<std::string>() << "  "
             << c["betti"].get<std::string>() << "\n";
      }
      out_ << j["cases"].size() << " cases, " << (j["all_pass"].get<bool>() ? "all pass" : "deviations found") << "\n";
    }
    fail_if(!j["all_pass"].get<bool>(), "a special partition has extra homology");
  }

  void oracle_check() {
    std::map<std::string, std::string> args{{"n", std::to_string(*n_)}, {"sweep_up_to", std::to_string(sweep_up_to_)}};
    std::optional<NumberPartition> only;
    if (!lambda_.empty()) {
      only = lambda();
      if (only->total() != *n_) throw InvalidInput("lambda does not partition n");
      args["lambda"] = only->to_string();
    }
    auto text = cached("oracle-check", args, [&] {
      Json arr = Json::array();
      if (only) {
        for (const auto& m : coarsenings(*only)) {
          if (m != *only) arr.push_back(oracle_to_json(compare_with_forest_model(*only, m, s_.guards(), sweep_up_to_)));
        }
      } else {
        for (const auto& r : oracle_sweep(*n_, s_.guards(), sweep_up_to_)) arr.push_back(oracle_to_json(r));
      }
      return arr;
    });
    out_ << text << "\n";
    for (const auto& r : Json::parse(text)) {
      fail_if(!r["ok"].get<bool>(),
              "oracle and forest model differ at " + r["lambda"].get<std::string>() + " | " + r["mu"].get<std::string>());
    }
  }

  void collapse_cmd() {
    auto m = mu();
    std::vector<NumberPartition> family;
    if (family_ == "arnold" || family_ == "closure") {
      if (lambda_.empty()) throw InvalidInput("--lambda is required for the " + family_ + " family");
      family = family_ == "arnold" ? arnold_family(lambda()) : refinement_closure(lambda());
    } else if (family_ == "stanley" || family_ == "hanlon") {
      family = length_family(m.total(), family_ == "stanley" ? 2 : 3);
    } else {
      if (family_file_.empty()) throw InvalidInput("--family-file is required for custom-file");
      family = read_family(family_file_);
    }
    auto cert = collapse_pipeline(family, m, k_, s_.guards());
    auto j = collapse_to_json(cert);
    j["family"] = family_;
    if (s_.json) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "family " << family_ << " (" << family.size() << " types), mu " << m.to_string() << ", k " << k_ << "\n"
           << "  f-vector " << join_f(cert.f_vector) << "\n"
           << "  K " << cert.k_shape << " " << join_f(cert.k_f_vector) << "\n"
           << "  matched pairs " << cert.matched << ", critical cells " << cert.critical << "\n"
           << "  acyclic " << cert.acyclic << ", perfect " << cert.perfect << ", reduced Betti zero " << cert.betti_zero
           << "\n";
    }
    fail_if(!cert.ok(), "collapse certificate failed");
  }

  void cone_cmd() {
    auto cert = generic_cone_matching(lambda(), mu(), s_.guards());
    auto j = cone_to_json(cert);
    if (s_.json) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "cone over vertex " << cert.apex << ": " << cert.matched << " pairs, " << cert.critical
           << " critical, f-vector " << join_f(cert.f_vector) << ", reduced Betti zero " << cert.betti_zero << "\n";
    }
    fail_if(!cert.ok(), "cone certificate failed");
  }

  void forests_cmd() {
    auto l = lambda(), m = mu();
    if (l.total() != m.total() || !refines_number(l, m)) throw InvalidInput(l.to_string() + " does not refine " + m.to_string());
    auto cells = enumerate_all_forests(lambda_admissible(l, parse_model(model_)), m, s_.guards());
    Json arr = Json::array();
    for (int r = 0; r <= cells.top_rank(); ++r) {
      if (rank_ && *rank_ != r) continue;
      for (const auto& f : cells.by_rank[r]) {
        if (s_.json) {
          arr.push_back(forest_to_json(f));
        } else {
          out_ << r << "  " << f.key() << "\n";
        }
      }
    }
    if (s_.json) out_ << arr.dump(2) << "\n";
  }

  void boundary_cmd() {
    if (input_.empty() == forest_text_.empty()) throw InvalidInput("give exactly one of --input and --forest");
    auto f = forest_from_json(parse_json(input_.empty() ? forest_text_ : read_text(input_)));
    if (f.rank() == 0) throw InvalidInput("a rank-0 forest has no forest boundary");
    Json arr = Json::array();
    for (const auto& [coef, face] : boundary(f)) {
      if (s_.json) {
        arr.push_back(Json{{"coefficient", coef}, {"face", forest_to_json(face)}});
      } else {
        out_ << (coef > 0 ? "+" : "") << coef << "  " << face.key() << "\n";
      }
    }
    if (s_.json) out_ << arr.dump(2) << "\n";
  }

  void p_poset_cmd() {
    auto l = lambda(), m = mu();
    auto p = build_p_poset(l, m);
    Json j{{"lambda", l.to_string()},
           {"mu", m.to_string()},
           {"elements", p.elements.size()},
           {"relations", p.relations.size()},
           {"components", beta0_of_order_complex(p)}};
    if (list_elements_) {
      Json list = Json::array();
      for (const auto& e : p.elements) list.push_back(e.to_string());
      j["element_list"] = std::move(list);
    }
    if (components_) j["forest_comparison"] = beta0_to_json(compare_beta0(l, m, s_.guards()));
    if (s_.json) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "P_{" << l.to_string() << " | " << m.to_string() << "}: " << p.elements.size() << " elements, "
           << p.relations.size() << " relations, " << j["components"] << " components\n";
      if (list_elements_) {
        for (const auto& e : p.elements) out_ << "  " << e.to_string() << "\n";
      }
      if (components_) {
        const auto& c = j["forest_comparison"];
        out_ << "  forest model components " << c["beta0_forest"] << ", vertices match " << c["vertices_match"]
             << ", edges match " << c["edges_match"] << "\n";
      }
    }
    if (components_) fail_if(!j["forest_comparison"]["ok"].get<bool>(), "poset and forest model differ");
  }

  void counterexample_cmd() {
    auto r = compare_beta0(kCounterLambda, kCounterMu, s_.guards());
    auto x = build_x_space(kCounterLambda, kCounterMu, ForestModel::join_closed, s_.guards());
    Json j = beta0_to_json(r);
    j["n"] = kCounterLambda.total();
    j["x"] = complex_to_json(x.space.f_vector(), x.betti);
    j["disconnected"] = r.beta0_poset >= 2;
    if (s_.json) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "lambda " << kCounterLambda.to_string() << ", mu " << kCounterMu.to_string() << ", n "
           << kCounterLambda.total() << "\n"
           << "  P: " << r.elements << " elements, " << r.relations << " relations\n"
           << "  components of the order complex of P: " << r.beta0_poset << "\n"
           << "  components of X (forest model):       " << r.beta0_forest << "\n"
           << "  vertices match " << r.vertices_match << ", edges match " << r.edges_match << "\n"
           << "  X f-vector " << join_f(x.space.f_vector()) << "\n";
      betti_table(out_, j["x"]["betti"]);
    }
    fail_if(!r.ok() || r.beta0_poset < 2, "counterexample not reproduced");
  }

  void component_sweep() {
    Json arr = Json::array();
    for (const auto& l : all_partitions(*n_)) {
      for (const auto& m : coarsenings(l)) {
        if (m == l) continue;
        auto x = build_x_space(l, m, ForestModel::join_closed, s_.guards());
        if (x.betti[0] < 1) continue;
        bool higher = false;
        for (const auto& [i, b] : x.betti.values()) higher = higher || (i >= 1 && b != 0);
        arr.push_back(Json{{"lambda", l.to_string()},
                           {"mu", m.to_string()},
                           {"components", x.betti[0] + 1},
                           {"betti", x.betti.to_string()},
                           {"some_component_not_acyclic", higher}});
      }
    }
    if (s_.json) {
      out_ << arr.dump(2) << "\n";
    } else {
      for (const auto& e : arr) {
        out_ << e["lambda"].get<std::string>() << " | " << e["mu"].get<std::string>() << "  components "
             << e["components"] << "  " << e["betti"].get<std::string>()
             << (e["some_component_not_acyclic"].get<bool>() ? "  (higher homology)" : "") << "\n";
      }
      out_ << arr.size() << " disconnected spaces\n";
    }
  }

  std::ostream& out_;
  std::ostream& err_;
  Settings s_;
  int exit_code_ = kExitOk;

  std::string lambda_, mu_, model_ = "join-closed", family_ = "arnold", family_file_, input_, forest_text_;
  std::optional<int> n_, rank_;
  int k_ = 2;
  int sweep_up_to_ = 6;
  bool cross_check_ = false, components_ = false, list_elements_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace strata
