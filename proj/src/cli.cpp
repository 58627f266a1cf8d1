#include "probtree/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "probtree/errors.hpp"
#include "probtree/inference.hpp"
#include "probtree/models/hmm.hpp"
#include "probtree/models/registry.hpp"
#include "probtree/numeric.hpp"

namespace probtree::cli {

namespace {

using nlohmann::ordered_json;

struct Row {
  Value value;
  double weight;
  std::string rendered;
};

// Heaviest first; ties broken by the rendered value so output is total.
std::vector<Row> sorted_rows(const WeightTable& t) {
  std::vector<Row> rows;
  rows.reserve(t.size());
  for (const auto& [v, w] : t) rows.push_back(Row{v, w, v.render()});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.rendered < b.rendered;
  });
  return rows;
}

ordered_json value_to_json(const Value& v) {
  if (v.is_unit()) return nullptr;
  if (v.is_bool()) return v.as_bool();
  if (v.is_int()) return v.as_int();
  if (v.is_double()) return v.as_double();
  if (v.is_string()) return v.as_string();
  ordered_json arr = ordered_json::array();
  for (const auto& item : v.as_list()) arr.push_back(value_to_json(item));
  return arr;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kExact: return "exact";
    case Strategy::kRejection: return "rejection";
    case Strategy::kImportance: return "importance";
  }
  return "?";
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[x & 0xf];
    x >>= 4;
  }
  return out;
}

std::string table_checksum(const WeightTable& t) {
  std::string flat;
  for (const auto& row : sorted_rows(t)) {
    flat += row.rendered;
    flat += '\t';
    flat += render_double(row.weight);
    flat += '\n';
  }
  return hex64(fnv1a64(flat));
}

int validate_run(const RunConfig& cfg, std::ostream& err) {
  const bool sampling = cfg.strategy != Strategy::kExact;
  if (sampling && !cfg.samples) {
    err << "error: --samples is required with --infer "
        << strategy_name(cfg.strategy) << "\n";
    return kExitBadConfig;
  }
  if (!sampling && cfg.samples) {
    err << "error: --samples makes no sense with exact inference\n";
    return kExitBadConfig;
  }
  if (cfg.samples && *cfg.samples < 1) {
    err << "error: --samples must be at least 1\n";
    return kExitBadConfig;
  }
  if (cfg.depth && sampling) {
    err << "error: --depth applies to exact inference only\n";
    return kExitBadConfig;
  }
  if (cfg.depth && *cfg.depth < 0) {
    err << "error: --depth must be non-negative\n";
    return kExitBadConfig;
  }
  if (cfg.jobs < 1) {
    err << "error: --jobs must be at least 1\n";
    return kExitBadConfig;
  }
  if (cfg.jobs != 1 && !sampling) {
    err << "error: --jobs applies to sampling strategies only\n";
    return kExitBadConfig;
  }
  return kExitOk;
}

struct RunResult {
  WeightTable table;
  double runtime_sec;
};

RunResult run_inference(const RunConfig& cfg, const Model<Value>& m) {
  const auto t0 = std::chrono::steady_clock::now();
  WeightTable table;
  switch (cfg.strategy) {
    case Strategy::kExact:
      if (cfg.depth) {
        table = closed_mass(explore(*cfg.depth, reify(m)));
      } else {
        table = exact_reify(m);
      }
      break;
    case Strategy::kRejection:
    case Strategy::kImportance: {
      const auto kind = cfg.strategy == Strategy::kRejection
                            ? SampleKind::kRejection
                            : SampleKind::kImportance;
      table = sample_parallel(kind, m, static_cast<int>(*cfg.samples),
                              cfg.seed, cfg.jobs)
                  .aggregate();
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  return RunResult{std::move(table),
                   std::chrono::duration<double>(t1 - t0).count()};
}

void print_tsv(const RunConfig& cfg, const WeightTable& table, double total,
               std::ostream& out) {
  const double scale = cfg.normalize ? 1.0 / total : 1.0;
  for (const auto& row : sorted_rows(table)) {
    out << row.rendered << '\t' << render_double(row.weight * scale) << '\n';
  }
  if (cfg.normalize) {
    out << "# evidence\t" << render_double(total) << '\n';
  }
}

void print_json(const RunConfig& cfg, const WeightTable& table, double total,
                double runtime_sec, std::ostream& out) {
  const double scale = cfg.normalize ? 1.0 / total : 1.0;
  ordered_json doc;
  doc["strategy"] = strategy_name(cfg.strategy);
  doc["seed"] = cfg.seed;
  doc["total"] = cfg.normalize ? 1.0 : total;
  if (total > 0.0) {
    doc["log_total"] = std::log(total);
  } else {
    doc["log_total"] = nullptr;
  }
  if (cfg.normalize) doc["evidence"] = total;
  ordered_json entries = ordered_json::array();
  for (const auto& row : sorted_rows(table)) {
    ordered_json e;
    e["value"] = value_to_json(row.value);
    e["weight"] = row.weight * scale;
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  doc["runtime_sec"] = runtime_sec;
  out << doc.dump(2) << '\n';
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (int rc = validate_run(cfg, err); rc != kExitOk) return rc;
  const models::ModelEntry* entry = models::find_model(cfg.model);
  if (entry == nullptr) {
    err << "error: unknown model '" << cfg.model
        << "' (see `list-models`)\n";
    return kExitUnknownModel;
  }
  try {
    const Model<Value> m = entry->build();
    const RunResult result = run_inference(cfg, m);
    const double total = result.table.total();
    if (cfg.normalize && !(total > 0.0)) {
      err << "error: nothing to normalize, the table is empty\n";
      return kExitInferenceError;
    }
    if (cfg.format == Format::kTsv) {
      print_tsv(cfg, result.table, total, out);
    } else {
      print_json(cfg, result.table, total, result.runtime_sec, out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInferenceError;
  }
}

namespace {

int bench_one(const BenchConfig& cfg, const std::string& label,
              Model<Value> model, std::ostream& out) {
  auto [counted, counter] = with_counter(std::move(model));
  const auto t0 = std::chrono::steady_clock::now();
  WeightTable table;
  if (cfg.strategy == Strategy::kExact) {
    table = exact_reify(counted);
  } else {
    const auto kind = cfg.strategy == Strategy::kRejection
                          ? SampleKind::kRejection
                          : SampleKind::kImportance;
    table = sample_parallel(kind, counted, static_cast<int>(*cfg.samples),
                            cfg.seed, cfg.jobs)
                .aggregate();
  }
  const auto t1 = std::chrono::steady_clock::now();
  out << label << '\t' << strategy_name(cfg.strategy) << '\t'
      << (cfg.samples ? std::to_string(*cfg.samples) : "-") << '\t'
      << counter->dist_calls.load() << '\t'
      << counter->model_invocations.load() << '\t'
      << render_double(std::chrono::duration<double>(t1 - t0).count())
      << '\t' << table_checksum(table) << '\n';
  return kExitOk;
}

}  // namespace

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool sampling = cfg.strategy != Strategy::kExact;
  if (sampling && !cfg.samples) {
    err << "error: --samples is required with --infer "
        << strategy_name(cfg.strategy) << "\n";
    return kExitBadConfig;
  }
  if (!sampling && cfg.samples) {
    err << "error: --samples makes no sense with exact inference\n";
    return kExitBadConfig;
  }
  if (cfg.jobs < 1) {
    err << "error: --jobs must be at least 1\n";
    return kExitBadConfig;
  }
  if (cfg.models.empty() && cfg.steps.empty()) {
    err << "error: nothing to bench (give --model or --steps)\n";
    return kExitBadConfig;
  }
  if (cfg.bucketed && cfg.steps.empty()) {
    err << "error: --bucketed applies to --steps rows only\n";
    return kExitBadConfig;
  }
  for (int n : cfg.steps) {
    if (n < 1) {
      err << "error: --steps entries must be at least 1\n";
      return kExitBadConfig;
    }
  }
  for (const auto& name : cfg.models) {
    if (models::find_model(name) == nullptr) {
      err << "error: unknown model '" << name << "' (see `list-models`)\n";
      return kExitUnknownModel;
    }
  }
  out << "# label\tstrategy\tsamples\tdist_calls\tmodel_invocations\t"
         "runtime_sec\tchecksum\n";
  try {
    for (const auto& name : cfg.models) {
      const models::ModelEntry* entry = models::find_model(name);
      bench_one(cfg, name, entry->build(), out);
    }
    for (int n : cfg.steps) {
      const std::string label = (cfg.bucketed ? "chain_bucketed/" : "chain/") +
                                std::to_string(n);
      Model<Value> m = cfg.bucketed
                           ? models::run_bucketed(n, models::low_at(5))
                           : models::run(n, models::low_at(5));
      bench_one(cfg, label, std::move(m), out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInferenceError;
  }
}

int cmd_list(std::ostream& out) {
  for (const auto& e : models::registry()) out << e.name << '\n';
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"probtree: inference over probabilistic programs"};
  app.require_subcommand(1);

  const std::map<std::string, Strategy> strategy_names{
      {"exact", Strategy::kExact},
      {"rejection", Strategy::kRejection},
      {"importance", Strategy::kImportance}};
  const std::map<std::string, Format> format_names{{"tsv", Format::kTsv},
                                                   {"json", Format::kJson}};

  RunConfig run_cfg;
  CLI::App* run = app.add_subcommand("run", "run inference on a model");
  run->add_option("--model", run_cfg.model, "model name (see list-models)")
      ->required();
  run->add_option("--infer", run_cfg.strategy, "inference strategy")
      ->transform(CLI::CheckedTransformer(strategy_names, CLI::ignore_case));
  run->add_option("--samples", run_cfg.samples,
                  "number of runs (sampling strategies)");
  run->add_option("--seed", run_cfg.seed, "random seed");
  run->add_option("--depth", run_cfg.depth,
                  "exploration depth cutoff (exact only)");
  run->add_flag("--normalize", run_cfg.normalize,
                "divide weights by the total and report the evidence");
  run->add_option("--format", run_cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  run->add_option("--jobs", run_cfg.jobs,
                  "worker threads (sampling strategies)");

  BenchConfig bench_cfg;
  CLI::App* bench =
      app.add_subcommand("bench", "time models and count choice points");
  bench->add_option("--model", bench_cfg.models,
                    "registry model to bench (repeatable)");
  bench->add_option("--steps", bench_cfg.steps,
                    "drift-chain lengths to bench (repeatable)");
  bench->add_flag("--bucketed", bench_cfg.bucketed,
                  "use the bucketed chain for --steps rows");
  bench->add_option("--infer", bench_cfg.strategy, "inference strategy")
      ->transform(CLI::CheckedTransformer(strategy_names, CLI::ignore_case));
  bench->add_option("--samples", bench_cfg.samples,
                    "number of runs (sampling strategies)");
  bench->add_option("--seed", bench_cfg.seed, "random seed");
  bench->add_option("--jobs", bench_cfg.jobs,
                    "worker threads (sampling strategies)");

  CLI::App* list = app.add_subcommand("list-models", "print model names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }

  if (run->parsed()) return cmd_run(run_cfg, out, err);
  if (bench->parsed()) return cmd_bench(bench_cfg, out, err);
  if (list->parsed()) return cmd_list(out);
  err << "error: no subcommand\n";
  return kExitBadConfig;
}

}  // namespace probtree::cli
