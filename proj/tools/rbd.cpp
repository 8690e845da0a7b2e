#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/cycle_synth.hpp"
#include "rbdecomp/even_synth.hpp"
#include "rbdecomp/io.hpp"
#include "rbdecomp/oracle.hpp"
#include "rbdecomp/random.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace rbd;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kInputError = 2, kPrecondition = 3 };

struct Failure {
  int code;
  std::string msg;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot open '" + path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kInputError, "cannot write '" + path + "'"};
  out << text;
}

Perm load_perm(const std::string& path, PermFormat f) {
  std::string text = read_file(path);
  try {
    return parse_perm(text, f);
  } catch (const parse_error& e) {
    throw Failure{kInputError, path + ": " + e.what()};
  }
}

struct RunConfig {
  std::string mode = "block7";
  std::string input;
  std::string format = "images";
  int r1 = 1;
  bool verify = true;
  bool images = false;
  std::string output;
  unsigned jobs = 1;
};

// one input file -> report and exit code; never throws
std::pair<ojson, int> decompose_one(const RunConfig& cfg, const std::string& path) {
  ojson rep;
  try {
    Perm s = load_perm(path, parse_format(cfg.format));
    Mode mode = parse_mode(cfg.mode);
    if (!is_even(s)) throw Failure{kPrecondition, "odd permutation: no decomposition into concurrent blocks"};
    if (cfg.r1 < 1 || cfg.r1 > s.n()) throw Failure{kPrecondition, "--r1 outside [1, n]"};
    Decomposition d;
    bool fallback = false;
    switch (mode) {
      case Mode::block7:
        if (s.n() < 4) throw Failure{kPrecondition, "block7 needs n >= 4 (n = " + std::to_string(s.n()) + ")"};
        fallback = s.n() < 6;
        d = decompose7(s, Options{cfg.r1});
        break;
      case Mode::even10:
        if (s.n() < 10) throw Failure{kPrecondition, "even10 needs n >= 10 (n = " + std::to_string(s.n()) + ")"};
        d = decompose10(s, cfg.r1);
        break;
      case Mode::greedy:
        if (s.n() < 4) throw Failure{kPrecondition, "greedy needs n >= 4"};
        d = decompose_greedy(s, cfg.r1);
        break;
    }
    rep = to_json(d, JsonOptions{cfg.images});
    if (fallback) rep["stats"]["fallback"] = "greedy below n = 6";
    int code = kOk;
    if (cfg.verify) {
      auto vr = verify_decomposition(s, d);
      rep["verified"] = vr.ok;
      rep["verify"] = to_json(vr);
      if (!vr.ok) code = kVerifyFail;
    }
    return {rep, code};
  } catch (const Failure& f) {
    return {ojson{{"error", f.msg}, {"exit", f.code}}, f.code};
  } catch (const parse_error& e) {
    return {ojson{{"error", e.what()}, {"exit", int(kInputError)}}, kInputError};
  } catch (const contract_error& e) {
    return {ojson{{"error", e.what()}, {"exit", int(kPrecondition)}}, kPrecondition};
  }
}

int run_decompose(const RunConfig& cfg) {
  std::error_code ec;
  if (!fs::is_directory(cfg.input, ec)) {
    auto [rep, code] = decompose_one(cfg, cfg.input);
    if (rep.contains("error")) std::cerr << "rbd: " << rep["error"].get<std::string>() << "\n";
    write_out(cfg.output, rep.dump(2) + "\n");
    return code;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(cfg.input))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<std::pair<ojson, int>> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) results[i] = decompose_one(cfg, files[i].string());
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, unsigned(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ojson out = ojson::array();
  int worst = kOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    ojson e;
    e["file"] = files[i].filename().string();
    for (auto& [k, v] : results[i].first.items()) e[k] = v;
    if (results[i].first.contains("error"))
      std::cerr << "rbd: " << files[i].filename().string() << ": " << results[i].first["error"].get<std::string>() << "\n";
    out.push_back(std::move(e));
    worst = std::max(worst, results[i].second);
  }
  write_out(cfg.output, out.dump(2) + "\n");
  return worst;
}

int run_verify(const std::string& input, const std::string& report, const std::string& format, const std::string& output) {
  Perm s = load_perm(input, parse_format(format));
  Decomposition d;
  try {
    d = decomposition_from_json(nlohmann::json::parse(read_file(report)));
  } catch (const nlohmann::json::exception& e) {
    throw Failure{kInputError, report + ": " + e.what()};
  } catch (const parse_error& e) {
    throw Failure{kInputError, report + ": " + e.what()};
  }
  if (d.n != s.n()) throw Failure{kInputError, "report width " + std::to_string(d.n) + " differs from the input width " + std::to_string(s.n())};
  auto vr = verify_decomposition(s, d);
  ojson j = to_json(vr);
  j["digest_matches"] = d.source_digest == digest(s);
  write_out(output, j.dump(2) + "\n");
  return vr.ok ? kOk : kVerifyFail;
}

struct OracleConfig {
  std::string lemma;
  int n = 0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string output;
};

int run_oracle(const OracleConfig& c) {
  ojson j;
  bool holds = false;
  if (c.lemma == "35free") {
    auto r = brute_35free(c.n ? c.n : 4, 1, 2, c.samples, c.seed, c.jobs);
    holds = r.holds;
    j = to_json(r);
  } else if (c.lemma == "new1tight") {
    int n = c.n ? c.n : 4;
    if (n < 3 || n > 4) throw Failure{kPrecondition, "new1tight enumerates (2^(n-1))! factors; n must be 3 or 4"};
    auto r = brute_new1tight(n, c.jobs);
    holds = r.holds;
    j = to_json(r);
  } else if (c.lemma == "badcase") {
    auto r = brute_badcase_invariants(c.samples, c.seed);
    holds = r.holds;
    j = to_json(r);
  } else if (c.lemma == "taxonomy") {
    auto r = calibrate_taxonomy();
    holds = r.holds;
    j = to_json(r);
  } else {
    throw Failure{kInputError, "unknown lemma '" + c.lemma + "'"};
  }
  write_out(c.output, j.dump(2) + "\n");
  return holds ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose reversible Boolean functions into concurrent controlled blocks"};
  app.require_subcommand(1);

  RunConfig dc;
  auto* dec = app.add_subcommand("decompose", "decompose a permutation file, or every file in a directory");
  dec->add_option("input", dc.input, "input file, directory, or - for stdin")->required();
  dec->add_option("--mode", dc.mode, "block7, even10 or greedy")->check(CLI::IsMember({"block7", "even10", "greedy"}));
  dec->add_option("--format", dc.format, "images or cycles")->check(CLI::IsMember({"images", "cycles"}));
  dec->add_option("--r1", dc.r1, "first control dimension");
  dec->add_flag("--no-verify", [&](std::int64_t) { dc.verify = false; }, "skip the product check");
  dec->add_flag("--images", dc.images, "add image tables to the block listing");
  dec->add_option("-o,--output", dc.output, "output path (default stdout)");
  dec->add_option("-j,--jobs", dc.jobs, "worker threads for directories")->check(CLI::Range(1u, 256u));

  std::string v_input, v_report, v_format = "images", v_output;
  auto* ver = app.add_subcommand("verify", "check a decomposition report against its input");
  ver->add_option("input", v_input, "permutation file")->required();
  ver->add_option("report", v_report, "decomposition JSON")->required();
  ver->add_option("--format", v_format, "images or cycles")->check(CLI::IsMember({"images", "cycles"}));
  ver->add_option("-o,--output", v_output, "output path");

  OracleConfig oc;
  auto* orc = app.add_subcommand("oracle", "run a brute-force check");
  orc->add_option("--lemma", oc.lemma, "35free, new1tight, badcase or taxonomy")
      ->required()
      ->check(CLI::IsMember({"35free", "new1tight", "badcase", "taxonomy"}));
  orc->add_option("--n", oc.n, "width");
  orc->add_option("--samples", oc.samples, "sample count (5-cycles for 35free, trials for badcase)");
  orc->add_option("--seed", oc.seed, "seed");
  orc->add_option("-j,--jobs", oc.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  orc->add_option("-o,--output", oc.output, "output path");

  int r_n = 0;
  bool r_even = false;
  std::uint64_t r_seed = 1;
  std::string r_format = "images", r_output;
  auto* rnd = app.add_subcommand("random", "print a seeded random permutation");
  rnd->add_option("--n", r_n, "width")->required();
  rnd->add_flag("--even", r_even, "repair the parity to even");
  rnd->add_option("--seed", r_seed, "seed");
  rnd->add_option("--format", r_format, "images or cycles")->check(CLI::IsMember({"images", "cycles"}));
  rnd->add_option("-o,--output", r_output, "output path");

  std::string c_input, c_format = "images", c_output;
  int c_r1 = 1, c_r2 = 2;
  bool c_json = false;
  auto* cub = app.add_subcommand("cuboid", "dump the colored cuboid and its pair counts");
  cub->add_option("input", c_input, "permutation file")->required();
  cub->add_option("--r1", c_r1, "color dimension");
  cub->add_option("--r2", c_r2, "pair dimension");
  cub->add_option("--format", c_format, "images or cycles")->check(CLI::IsMember({"images", "cycles"}));
  cub->add_flag("--json", c_json, "JSON instead of text");
  cub->add_option("-o,--output", c_output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*dec) return run_decompose(dc);
    if (*ver) return run_verify(v_input, v_report, v_format, v_output);
    if (*orc) return run_oracle(oc);
    if (*rnd) {
      check_width(r_n);
      Rng rng(r_seed);
      Perm p = r_even ? random_even_perm(r_n, rng) : random_perm(r_n, rng);
      write_out(r_output, emit_perm(p, parse_format(r_format)));
      return kOk;
    }
    if (*cub) {
      Perm s = load_perm(c_input, parse_format(c_format));
      if (c_r1 < 1 || c_r2 < 1 || c_r1 > s.n() || c_r2 > s.n() || c_r1 == c_r2)
        throw Failure{kPrecondition, "--r1 and --r2 must be distinct dimensions in [1, n]"};
      Cuboid c = build_cuboid(s, c_r1, c_r2);
      write_out(c_output, c_json ? to_json(c).dump(2) + "\n" : cuboid_text(c));
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "rbd: " << f.msg << "\n";
    return f.code;
  } catch (const parse_error& e) {
    std::cerr << "rbd: " << e.what() << "\n";
    return kInputError;
  } catch (const contract_error& e) {
    std::cerr << "rbd: " << e.what() << "\n";
    return kPrecondition;
  }
  return kOk;
}
