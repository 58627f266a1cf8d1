#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

// End-to-end tests against the installed binary (path injected by the build).

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cmd(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(PROBTREE_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return CmdResult{WEXITSTATUS(status), std::move(out)};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string::npos) nl = s.size();
    lines.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// Bench rows with the (non-deterministic) runtime column blanked out.
std::string strip_runtime_column(const std::string& bench_out) {
  std::string result;
  for (const auto& line : lines_of(bench_out)) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() == 7 && cols[0][0] != '#') cols[5] = "-";
    for (std::size_t i = 0; i < cols.size(); ++i) {
      result += cols[i];
      result += i + 1 < cols.size() ? "\t" : "\n";
    }
  }
  return result;
}

}  // namespace

TEST_CASE("run: exact grass table, byte for byte") {
  CmdResult r = run_cmd("run --model grass");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "true\t0.4581\nfalse\t0.18899999999999997\n");
}

TEST_CASE("run: --normalize rescales and reports the evidence") {
  CmdResult r = run_cmd("run --model grass --normalize");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "true\t0.7079276773296245\n"
        "false\t0.2920723226703755\n"
        "# evidence\t0.6471\n");
}

TEST_CASE("run: depth cutoff folds only settled mass") {
  // At depth 0 nothing about the grass model is settled yet.
  CmdResult shallow = run_cmd("run --model grass --depth 0");
  CHECK(shallow.exit_code == 0);
  CHECK(shallow.out.empty());
  // A generous depth reaches everything.
  CmdResult deep = run_cmd("run --model grass --depth 100");
  CHECK(deep.exit_code == 0);
  CHECK(deep.out == run_cmd("run --model grass").out);
}

TEST_CASE("list-models: every bundled model, sorted") {
  CmdResult r = run_cmd("list-models");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "coin_a\ncoin_b\ncoin_c\ngrass\ngrass_lazy\nhmm_low_5_to_10\n"
        "hmm_query1\nhmm_query1_bucketed\nmotif_develop\nmotif_likelihood\n");
}

TEST_CASE("run: unknown model exits 2") {
  CmdResult r = run_cmd("run --model no_such_model", true);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("unknown model") != std::string::npos);
}

TEST_CASE("run: configuration errors exit 3") {
  CHECK(run_cmd("run --model grass --samples 100").exit_code == 3);
  CHECK(run_cmd("run --model grass --infer rejection").exit_code == 3);
  CHECK(run_cmd("run --model grass --infer rejection --samples 0").exit_code ==
        3);
  CHECK(run_cmd("run --model grass --infer importance --samples 10 --depth 2")
            .exit_code == 3);
  CHECK(run_cmd("run --model grass --jobs 2").exit_code == 3);
  CHECK(run_cmd("run --model grass --infer annealing --samples 9").exit_code ==
        3);
  CHECK(run_cmd("run").exit_code == 3);  // --model is required
  CHECK(run_cmd("bench").exit_code == 3);
  CHECK(run_cmd("bench --model grass --bucketed").exit_code == 3);
  CHECK(run_cmd("bench --steps 0").exit_code == 3);
}

TEST_CASE("help exits 0 and names the subcommands") {
  CmdResult r = run_cmd("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("run") != std::string::npos);
  CHECK(r.out.find("bench") != std::string::npos);
  CHECK(r.out.find("list-models") != std::string::npos);
}

TEST_CASE("run: json document shape") {
  CmdResult r = run_cmd("run --model grass --normalize --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("strategy") == "exact");
  CHECK(doc.at("seed") == 0);
  CHECK(doc.at("total") == 1.0);
  CHECK(doc.at("log_total").get<double>() ==
        doctest::Approx(std::log(0.6471)).epsilon(1e-12));
  CHECK(doc.at("evidence").get<double>() ==
        doctest::Approx(0.6471).epsilon(1e-12));
  REQUIRE(doc.at("entries").size() == 2);
  CHECK(doc.at("entries")[0].at("value") == true);
  CHECK(doc.at("entries")[0].at("weight").get<double>() ==
        doctest::Approx(0.7079276773296245).epsilon(1e-12));
  CHECK(doc.at("runtime_sec").is_number());
}

TEST_CASE("run: an all-failed sampling run is an empty, valid report") {
  CmdResult r = run_cmd(
      "run --model hmm_low_5_to_10 --infer rejection --samples 1 --seed 1 "
      "--format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("total") == 0.0);
  CHECK(doc.at("log_total").is_null());
  CHECK(doc.at("entries").empty());
}

TEST_CASE("run: normalizing an empty table is an inference error (exit 4)") {
  CmdResult r = run_cmd(
      "run --model hmm_low_5_to_10 --infer rejection --samples 1 --seed 1 "
      "--normalize",
      true);
  CHECK(r.exit_code == 4);
  CHECK(r.out.find("nothing to normalize") != std::string::npos);
}

TEST_CASE("run: sampling output is a pure function of the seed") {
  const std::string cmd =
      "run --model grass --infer rejection --samples 500 --seed 42";
  CHECK(run_cmd(cmd).out == run_cmd(cmd).out);
  CHECK(run_cmd(cmd).out !=
        run_cmd("run --model grass --infer rejection --samples 500 --seed 43")
            .out);
  const std::string imp =
      "run --model grass --infer importance --samples 200 --seed 7 "
      "--format json";
  auto strip = [](const std::string& s) {
    auto doc = nlohmann::json::parse(s);
    doc["runtime_sec"] = 0.0;
    return doc.dump();
  };
  CHECK(strip(run_cmd(imp).out) == strip(run_cmd(imp).out));
}

TEST_CASE("run: the report is identical for any --jobs value") {
  const std::string base =
      "run --model grass --infer importance --samples 4001 --seed 5 ";
  CHECK(run_cmd(base + "--jobs 1").out == run_cmd(base + "--jobs 4").out);
  const std::string rej =
      "run --model hmm_query1 --infer rejection --samples 1000 --seed 9 ";
  CHECK(run_cmd(rej + "--jobs 1").out == run_cmd(rej + "--jobs 3").out);
}

TEST_CASE("bench: header and exact-row columns") {
  CmdResult r = run_cmd("bench --model grass --model coin_a");
  CHECK(r.exit_code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] ==
        "# label\tstrategy\tsamples\tdist_calls\tmodel_invocations\t"
        "runtime_sec\tchecksum");
  CHECK(rows[1].rfind("grass\texact\t-\t55\t1\t", 0) == 0);
  CHECK(rows[2].rfind("coin_a\texact\t-\t", 0) == 0);
  // 16-hex-digit checksum at the end of each row.
  const std::string sum = rows[1].substr(rows[1].rfind('\t') + 1);
  CHECK(sum.size() == 16);
  CHECK(sum.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("bench: chain rows are labeled by length and variant") {
  CmdResult naive = run_cmd("bench --steps 3 --steps 5");
  CHECK(naive.exit_code == 0);
  CHECK(lines_of(naive.out)[1].rfind("chain/3\t", 0) == 0);
  CHECK(lines_of(naive.out)[2].rfind("chain/5\t", 0) == 0);
  CmdResult bucketed = run_cmd("bench --steps 3 --bucketed");
  CHECK(lines_of(bucketed.out)[1].rfind("chain_bucketed/3\t", 0) == 0);
}

TEST_CASE("bench: deterministic apart from the runtime column") {
  const std::string cmd =
      "bench --model grass --steps 4 --infer importance --samples 300 "
      "--seed 11";
  CmdResult a = run_cmd(cmd);
  CmdResult b = run_cmd(cmd);
  CHECK(a.exit_code == 0);
  CHECK(strip_runtime_column(a.out) == strip_runtime_column(b.out));
}

TEST_CASE("bench: unknown model exits 2 before any work") {
  CmdResult r = run_cmd("bench --model grass --model nope", true);
  CHECK(r.exit_code == 2);
}
