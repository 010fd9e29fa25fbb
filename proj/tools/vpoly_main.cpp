// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vpoly/json_io.hpp"
#include "vpoly/parallel.hpp"
#include "vpoly/random_gen.hpp"
#include "vpoly/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace vpoly;

// Exit-code contract: 0 success/verified, 1 ran but the claimed property
// does not hold, 2 theorem hypothesis or capacity unmet, 64 malformed input.
constexpr int kExitFailedCheck = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitBadInput = 64;

struct CliError {
  int code;
  std::string message;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitBadInput, "cannot open " + path};
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError{kExitBadInput, path + ": " + e.what()};
  }
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw CliError{kExitBadInput, "cannot write " + out_path};
    out << text;
  }
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (...) {
      throw CliError{kExitBadInput, "expected comma-separated integers, got \"" + s + "\""};
    }
  }
  if (out.empty()) throw CliError{kExitBadInput, "empty integer list"};
  return out;
}

/// --d/--r to a full ArchitectureSpec: single values broadcast (with d_1 = n),
/// explicit lists must match the depth.
ArchitectureSpec make_spec(std::size_t n, std::size_t depth, const std::string& d_str,
                           const std::string& r_str) {
  ArchitectureSpec spec;
  spec.input_dim = n;
  spec.depth = depth;
  const std::vector<std::size_t> d = parse_size_list(d_str);
  const std::vector<std::size_t> r = parse_size_list(r_str);
  if (r.size() == 1)
    spec.rank.assign(depth, r[0]);
  else if (r.size() == depth)
    spec.rank = r;
  else
    throw CliError{kExitBadInput, "--r needs 1 or depth entries"};
  if (d.size() == 1) {
    spec.indegree.assign(depth, d[0]);
    if (depth > 0) spec.indegree[0] = n;
  } else if (d.size() == depth) {
    spec.indegree = d;
  } else {
    throw CliError{kExitBadInput, "--d needs 1 or depth entries"};
  }
  check_spec(spec);
  return spec;
}

RatVec parse_point(const Json& j) {
  if (j.is_object()) return vec_of_json(field(j, "x"));
  return vec_of_json(j);
}

int cmd_eval(const std::string& net_path, const std::string& point_path) {
  const SparseMaxoutNetwork net = network_of_json(load_json(net_path));
  const RatVec x = parse_point(load_json(point_path));
  std::cout << rat_to_string(net_eval(net, x)) << "\n";
  return 0;
}

int cmd_newton(const std::string& net_path, const std::string& out) {
  const SparseMaxoutNetwork net = network_of_json(load_json(net_path));
  const auto [v, w] = newton_extract(net);
  emit(json_of_newton_result(net, v, w), out);
  return 0;
}

int cmd_dim(const std::string& vp_path) {
  const VirtualPolytope v = vpolytope_of_json(load_json(vp_path));
  std::cout << v_dim(v) << "\n";
  return 0;
}

int cmd_bound_sweep(const std::string& cfg_path, unsigned jobs, std::int64_t seed_override,
                    const std::string& out) {
  const Json cfg = load_json(cfg_path);
  std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);
  const std::size_t count = cfg.value("networks", std::size_t{50});
  NetworkRanges ranges;
  if (cfg.contains("n")) {
    ranges.n_lo = cfg["n"].at(0).get<std::size_t>();
    ranges.n_hi = cfg["n"].at(1).get<std::size_t>();
  }
  if (cfg.contains("depth")) {
    ranges.depth_lo = cfg["depth"].at(0).get<std::size_t>();
    ranges.depth_hi = cfg["depth"].at(1).get<std::size_t>();
  }
  ranges.d_max = cfg.value("d_max", std::size_t{3});
  ranges.r_max = cfg.value("r_max", std::size_t{3});
  ranges.width_max = cfg.value("width_max", std::size_t{3});

  // Instances come from a single sequential stream so the seed alone
  // determines them; the per-network work then fans out.
  Rng rng(seed);
  std::vector<SparseMaxoutNetwork> nets;
  nets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) nets.push_back(random_network(rng, ranges));
  std::vector<Json> reports(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    const DimBoundReport rep = check_dim_bound(nets[i]);
    const VirtualPolytope newton = newton_extract(nets[i]).first;
    Json jr = json_of(rep, newton);
    jr["index"] = i;
    reports[i] = std::move(jr);
  });
  bool all_hold = true;
  Json out_reports = Json::array();
  for (auto& r : reports) {
    if (!r["holds"].get<bool>()) all_hold = false;
    out_reports.push_back(std::move(r));
  }
  Json j;
  j["kind"] = "bound_sweep_report";
  j["config"] = {{"seed", seed},
                 {"networks", count},
                 {"n", {ranges.n_lo, ranges.n_hi}},
                 {"depth", {ranges.depth_lo, ranges.depth_hi}},
                 {"d_max", ranges.d_max},
                 {"r_max", ranges.r_max},
                 {"width_max", ranges.width_max}};
  j["reports"] = std::move(out_reports);
  j["all_hold"] = all_hold;
  emit(j, out);
  return all_hold ? 0 : kExitFailedCheck;
}

int cmd_attain(std::size_t n, std::size_t depth, const std::string& d_str,
               const std::string& r_str, const std::string& I_str, const std::string& v_str,
               const std::string& out) {
  const ArchitectureSpec spec = make_spec(n, depth, d_str, r_str);
  const Int m = dim_bound(spec);
  std::vector<std::size_t> I;
  if (I_str.empty()) {
    for (Int i = 0; i < m; ++i) I.push_back(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i : parse_size_list(I_str)) {
      if (i == 0) throw CliError{kExitBadInput, "--I uses 1-based indices"};
      I.push_back(i - 1);
    }
  }
  RatVec v = zero_vec(n);
  if (!v_str.empty()) {
    std::stringstream ss(v_str);
    std::string item;
    RatVec parsed;
    while (std::getline(ss, item, ',')) parsed.push_back(rat_from_string(item));
    if (parsed.size() != n) throw CliError{kExitBadInput, "--v needs n entries"};
    v = std::move(parsed);
  }
  const auto [poly, w] = attainment_construct(spec, v, I);
  emit(json_of_attainment(spec, v, I, poly, w), out);
  return 0;
}

int cmd_certify_width(std::size_t n, std::size_t depth, const std::string& d_str,
                      const std::string& r_str, const std::string& out) {
  const ArchitectureSpec spec = make_spec(n, depth, d_str, r_str);
  const WidthCertificate cert = certify_width_cannot_compensate(n, spec);
  emit(json_of(cert), out);
  std::cerr << "verdict: " << (cert.not_in_max_n ? "NotInMaxN" : "Inconclusive") << "\n";
  return cert.not_in_max_n ? 0 : kExitFailedCheck;
}

int cmd_hierarchy(std::size_t n, const std::string& d_str, const std::string& r_str,
                  const std::string& out) {
  const HierarchyReport rep = hierarchy_report(n, parse_size_list(d_str), parse_size_list(r_str));
  std::cout << "depth | bound m | attained dim | strict over previous\n";
  for (const HierarchyLevel& lv : rep.levels)
    std::cout << lv.depth << "     | " << lv.bound << "       | " << lv.attained << "            | "
              << (lv.depth == 0 ? "-" : (lv.strict_over_previous ? "yes" : "no")) << "\n";
  std::cout << "terminal level: " << rep.terminal_level << "\n";
  emit(json_of(rep), out);
  return 0;
}

int cmd_max_to_net(const std::string& expr_path, std::size_t depth, const std::string& d_str,
                   const std::string& r_str, const std::string& out) {
  const MaxExpression e = expression_of_json(load_json(expr_path));
  const ArchitectureSpec spec = make_spec(e.input_dim, depth, d_str, r_str);
  const SparseMaxoutNetwork net = expr_to_network(e, spec);
  emit(json_of(net), out);
  return 0;
}

int cmd_verify(const std::string& cert_path) {
  const VerifyResult res = verify_certificate(load_json(cert_path));
  for (const std::string& line : res.checks) std::cout << "PASS " << line << "\n";
  for (const std::string& line : res.failures) std::cout << "FAIL " << line << "\n";
  std::cout << (res.ok ? "verified" : "NOT verified") << " (" << res.checks.size() << " checks, "
            << res.failures.size() << " failures)\n";
  return res.ok ? 0 : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact virtual-polytope toolkit for sparse maxout networks"};
  app.require_subcommand(1);

  std::string net_path, point_path, vp_path, expr_path, cfg_path, cert_path;
  std::string d_str = "2", r_str = "2", I_str, v_str, out_path;
  std::size_t n = 0, depth = 0;
  unsigned jobs = 1;
  std::int64_t seed_override = -1;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a network at a point (exact)");
  eval->add_option("network", net_path)->required();
  eval->add_option("point", point_path)->required();

  CLI::App* newton = app.add_subcommand("newton", "Newton virtual polytope with witness");
  newton->add_option("network", net_path)->required();
  newton->add_option("--out", out_path);

  CLI::App* dim = app.add_subcommand("dim", "dimension of a virtual polytope");
  dim->add_option("vpolytope", vp_path)->required();

  CLI::App* sweep = app.add_subcommand("bound-sweep", "dimension-bound reports for seeded random networks");
  sweep->add_option("--config", cfg_path)->required();
  sweep->add_option("--jobs", jobs);
  sweep->add_option("--seed", seed_override);
  sweep->add_option("--out", out_path);

  CLI::App* attain = app.add_subcommand("attain", "attainment polytope for a spec");
  attain->add_option("--n", n)->required();
  attain->add_option("--depth", depth)->required();
  attain->add_option("--d", d_str);
  attain->add_option("--r", r_str);
  attain->add_option("--I", I_str);
  attain->add_option("--v", v_str);
  attain->add_option("--out", out_path);

  CLI::App* certify = app.add_subcommand("certify-width", "width-cannot-compensate certificate");
  certify->add_option("--n", n)->required();
  certify->add_option("--depth", depth)->required();
  certify->add_option("--d", d_str);
  certify->add_option("--r", r_str);
  certify->add_option("--out", out_path);

  CLI::App* hier = app.add_subcommand("hierarchy", "depth hierarchy via attainment");
  hier->add_option("--n", n)->required();
  hier->add_option("--d", d_str);
  hier->add_option("--r", r_str);
  hier->add_option("--out", out_path);

  CLI::App* m2n = app.add_subcommand("max-to-net", "realize a MAX expression as a sparse network");
  m2n->add_option("expression", expr_path)->required();
  m2n->add_option("--depth", depth)->required();
  m2n->add_option("--d", d_str);
  m2n->add_option("--r", r_str);
  m2n->add_option("--out", out_path);

  CLI::App* verify = app.add_subcommand("verify", "replay a certificate from its transcript");
  verify->add_option("certificate", cert_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(net_path, point_path);
    if (newton->parsed()) return cmd_newton(net_path, out_path);
    if (dim->parsed()) return cmd_dim(vp_path);
    if (sweep->parsed()) return cmd_bound_sweep(cfg_path, jobs, seed_override, out_path);
    if (attain->parsed()) return cmd_attain(n, depth, d_str, r_str, I_str, v_str, out_path);
    if (certify->parsed()) return cmd_certify_width(n, depth, d_str, r_str, out_path);
    if (hier->parsed()) return cmd_hierarchy(n, d_str, r_str, out_path);
    if (m2n->parsed()) return cmd_max_to_net(expr_path, depth, d_str, r_str, out_path);
    if (verify->parsed()) return cmd_verify(cert_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const HypothesisUnmet& e) {
    std::cerr << "hypothesis unmet: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const InsufficientDepth& e) {
    std::cerr << "insufficient depth: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const InvalidNetwork& e) {
    std::cerr << "invalid network: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
