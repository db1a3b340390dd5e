#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "alignkit/align_score.hpp"
#include "alignkit/detection.hpp"
#include "alignkit/generator.hpp"
#include "alignkit/guidance.hpp"
#include "alignkit/io.hpp"
#include "alignkit/reviser.hpp"
#include "alignkit/stats.hpp"
#include "manifest.hpp"

namespace alignkit::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string format_number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Round-trippable; used where outputs are compared exactly.
std::string exact(double v) { return format_number(v, 17); }
std::string table_number(double v) { return format_number(v, 10); }

std::optional<fs::path> config_file(const char* name) {
  const char* dir = std::getenv(kConfigDirEnv);
  if (!dir || !*dir) return std::nullopt;
  fs::path p = fs::path(dir) / name;
  if (!fs::exists(p)) return std::nullopt;
  return p;
}

// Writes every output, then the manifest beside the first one.
void commit(RunManifest& manifest, const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [path, content] : files) manifest.output(path, content);
  for (const auto& [path, content] : files) io::write_file_atomic(path, content);
  io::write_file_atomic(RunManifest::path_for(files.front().first), manifest.serialize());
}

// Runs fn(i) for i in [0, n) on `threads` workers; rethrows the first
// failure by index after joining.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<BenchmarkEntry> load_benchmark(const std::string& path, RunManifest& manifest) {
  const auto text = io::read_file(path);
  manifest.input(path, text);
  std::istringstream in(text);
  return io::read_benchmark(in, path);
}

// --------------------------------------------------------------------------

struct GenerateOptions {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double p = 0.05;
  std::size_t max_instances = 5;
  std::size_t max_relations = 6;
  std::size_t max_categories = 5;
  std::size_t max_words = 78;
  unsigned threads = 1;
  std::string vocabulary;
  std::string output;
  std::string stats;
};

std::string stats_table(const BenchmarkStats& s) {
  std::ostringstream t;
  t << "quantity\tvalue\tentries\n";
  auto rows = [&](const char* name, const std::map<int, std::size_t>& h) {
    for (const auto& [v, n] : h) t << name << '\t' << v << '\t' << n << '\n';
  };
  rows("total_instances", s.total_instances);
  rows("category_count", s.category_count);
  rows("relation_count", s.relation_count);
  rows("max_same_category", s.max_same_category);
  rows("prompt_words", s.prompt_words);
  for (const auto& [key, n] : s.splits) t << "split\t" << key.first << 'x' << key.second << '\t' << n << '\n';
  return t.str();
}

int run_generate(const GenerateOptions& o, std::ostream& out) {
  RunManifest manifest("generate");
  std::optional<CompatibilityTable> table;
  std::string vocab_source = "builtin";
  if (!o.vocabulary.empty() || config_file("compatibility.json")) {
    const auto path = o.vocabulary.empty() ? config_file("compatibility.json")->string() : o.vocabulary;
    const auto text = io::read_file(path);
    manifest.input(path, text);
    table = io::parse_vocabulary(text, path);
    vocab_source = path;
  }

  GeneratorConfig cfg;
  cfg.relation_probability = o.p;
  cfg.max_instances = o.max_instances;
  cfg.max_relations = o.max_relations;
  cfg.max_categories = o.max_categories;
  cfg.max_prompt_words = o.max_words;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (table) cfg.table = &*table;
  try {
    check_config(cfg);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  manifest.seed(o.seed);
  manifest.flag("count", o.count);
  manifest.flag("p", o.p);
  manifest.flag("max_instances", o.max_instances);
  manifest.flag("max_relations", o.max_relations);
  manifest.flag("max_categories", o.max_categories);
  manifest.flag("max_words", o.max_words);
  manifest.flag("vocabulary", vocab_source);

  const auto entries = build_benchmark(cfg, o.count);
  std::ostringstream bench;
  io::write_benchmark(bench, entries);
  const auto stats = benchmark_stats(entries);

  std::vector<std::pair<std::string, std::string>> files{{o.output, bench.str()}};
  if (!o.stats.empty()) files.emplace_back(o.stats, stats_table(stats));
  commit(manifest, files);

  out << "entries: " << stats.entries << '\n'
      << "max instances: " << stats.total_instances.rbegin()->first << " (limit " << o.max_instances << ")\n"
      << "max relations: " << stats.relation_count.rbegin()->first << " (limit " << o.max_relations << ")\n"
      << "max words: " << stats.max_words << " (limit " << o.max_words << ")\n";
  return kSuccess;
}

// --------------------------------------------------------------------------

struct ScoreOptions {
  std::string benchmark;
  std::string detections;
  std::string output;
  unsigned threads = 1;
  PostProcessConfig post;
};

int run_score(const ScoreOptions& o, std::ostream& out) {
  try {
    check_config(o.post);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!fs::is_directory(o.detections)) {
    throw std::runtime_error("detection directory '" + o.detections + "' does not exist");
  }
  RunManifest manifest("score");
  manifest.flag("min_confidence", o.post.confidence_threshold);
  manifest.flag("dedup_iou", o.post.dedup_iou_threshold);
  manifest.flag("min_side", o.post.min_side);
  manifest.flag("relation_offset", o.post.relation_offset);
  const auto entries = load_benchmark(o.benchmark, manifest);
  if (entries.empty()) throw std::runtime_error(o.benchmark + ": benchmark has no entries");

  std::vector<std::optional<std::vector<RawDetection>>> raw(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto path = (fs::path(o.detections) / (std::to_string(entries[i].id) + ".json")).string();
    if (!fs::exists(path)) continue;
    const auto text = io::read_file(path);
    manifest.input(path, text);
    auto record = io::parse_detection_record(text, path);
    if (record.image_id != entries[i].id) {
      throw io::ParseError(path, 0, "image_id",
                           "record is for image " + std::to_string(record.image_id) + ", expected " +
                               std::to_string(entries[i].id));
    }
    raw[i] = std::move(record.detections);
  }

  std::vector<ScoredPrompt> prompts(entries.size());
  parallel_for(entries.size(), o.threads, [&](std::size_t i) {
    const auto& scene = entries[i].scene;
    const auto dets = raw[i] ? post_process(*raw[i], o.post) : DetectionSet{};
    prompts[i] = {entries[i].id, summarize(scene), evaluate(scene, dets, o.post), !raw[i]};
  });

  std::vector<ScoreReport> reports;
  std::size_t missing = 0;
  for (const auto& p : prompts) {
    reports.push_back(p.report);
    missing += p.missing_detections ? 1 : 0;
  }
  io::ScoreFile file{std::move(prompts), aggregate(reports)};
  commit(manifest, {{o.output, io::serialize_score_file(file)}});

  const auto& a = file.aggregate;
  out << "prompts: " << a.count << " (missing detections: " << missing << ")\n"
      << "acc: " << table_number(a.mean_acc) << '\n'
      << "bias: " << table_number(a.mean_bias) << '\n'
      << "align_score: " << table_number(a.align_score) << '\n'
      << "mean_align_score: " << table_number(a.mean_align_score) << '\n';
  return kSuccess;
}

// --------------------------------------------------------------------------

struct ReviseOptions {
  std::string scores;
  std::string benchmark;
  std::string output;
};

int run_revise(const ReviseOptions& o, std::ostream& out) {
  RunManifest manifest("revise");
  const auto score_text = io::read_file(o.scores);
  manifest.input(o.scores, score_text);
  const auto scores = io::parse_score_file(score_text, o.scores);
  const auto entries = load_benchmark(o.benchmark, manifest);
  std::map<std::int64_t, const BenchmarkEntry*> by_id;
  for (const auto& e : entries) by_id[e.id] = &e;

  io::EnforceFile file;
  for (const auto& p : scores.prompts) {
    if (p.report.perfect()) continue;
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      throw std::runtime_error(o.scores + ": prompt " + std::to_string(p.id) + " is not in " + o.benchmark);
    }
    const auto& entry = *it->second;
    const auto pair = build_enforce_pair(diagnose(p.report, entry.scene));
    file.records.push_back({entry.id, entry.seed, entry.prompt, pair});
  }
  if (file.records.empty()) file.notice = "every prompt is aligned; no enforce pairs";
  commit(manifest, {{o.output, io::serialize_enforce_file(file)}});
  out << "enforce pairs: " << file.records.size() << " of " << scores.prompts.size() << " prompts\n";
  if (file.notice) out << *file.notice << '\n';
  return kSuccess;
}

// --------------------------------------------------------------------------

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  std::string group_by = "total";
  std::optional<int> fix_total;
  bool directions = false;
  bool stability = false;
  std::string output;
};

int run_analyze(const AnalyzeOptions& o, std::ostream& out) {
  if (o.directions && o.stability) throw UsageError("--directions and --stability are exclusive");
  if (o.stability && o.inputs.size() < 2) throw UsageError("--stability needs at least two --input files");
  if (!o.stability && o.inputs.size() != 1) throw UsageError("expected exactly one --input file");
  const auto key = parse_group_key(o.group_by);
  if (!key) throw UsageError("unknown --group-by key '" + o.group_by + "'");

  RunManifest manifest("analyze");
  manifest.flag("group_by", o.group_by);
  manifest.flag("fix_total", o.fix_total ? Json(*o.fix_total) : Json(nullptr));
  manifest.flag("directions", o.directions);
  manifest.flag("stability", o.stability);
  std::vector<io::ScoreFile> files;
  for (const auto& path : o.inputs) {
    const auto text = io::read_file(path);
    manifest.input(path, text);
    files.push_back(io::parse_score_file(text, path));
  }

  std::ostringstream t;
  if (o.stability) {
    std::vector<AggregateScore> runs;
    for (const auto& f : files) runs.push_back(f.aggregate);
    const auto r = stability_report(runs);
    t << "metric\tmean\tsd\truns\n";
    auto row = [&](const char* name, const MeanSd& m) {
      t << name << '\t' << table_number(m.mean) << '\t' << table_number(m.sd) << '\t' << r.runs << '\n';
    };
    row("acc", r.acc);
    row("bias", r.bias);
    row("align_score", r.align_score);
  } else if (o.directions) {
    t << "kind\tcorrect\ttotal\taccuracy\n";
    for (const auto& [kind, d] : relation_direction_accuracy(files.front().prompts)) {
      t << to_string(kind) << '\t' << d.correct << '\t' << d.total << '\t' << table_number(d.accuracy()) << '\n';
    }
  } else {
    GroupFilter filter{o.fix_total};
    const auto g = group_scores(files.front().prompts, *key, filter);
    for (const auto& note : g.notes) t << "# " << note << '\n';
    t << to_string(*key) << "\tsize\tmean_acc\tmean_bias\tmean_align_score\n";
    for (const auto& [value, s] : g.groups) {
      if (*key == GroupKey::RelationKind) {
        t << to_string(static_cast<RelationKind>(value));
      } else {
        t << value;
      }
      t << '\t' << s.size << '\t' << table_number(s.mean_acc) << '\t' << table_number(s.mean_bias) << '\t'
        << table_number(s.mean_align_score) << '\n';
    }
  }
  commit(manifest, {{o.output, t.str()}});
  out << t.str();
  return kSuccess;
}

// --------------------------------------------------------------------------

struct RatingTable {
  std::vector<double> metric;
  std::vector<std::vector<std::optional<double>>> raters;  // raters x rows
};

RatingTable parse_rating_table(const std::string& text, const std::string& source) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    if (!line.empty() && line.back() == '\t') cells.emplace_back();
    return cells;
  };
  auto number = [&](const std::string& cell, std::size_t line, const std::string& column) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(v)) {
      throw io::ParseError(source, line, column, "expected a number, found '" + cell + "'");
    }
    return v;
  };

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  RatingTable t;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = std::move(cells);
      if (header.size() < 3 || header[0] != "id" || header[1] != "metric") {
        throw io::ParseError(source, line_no, "", "header must be: id, metric, then one column per rater");
      }
      t.raters.resize(header.size() - 2);
      continue;
    }
    if (cells.size() != header.size()) {
      throw io::ParseError(source, line_no, "", "expected " + std::to_string(header.size()) + " columns, found " +
                                                    std::to_string(cells.size()));
    }
    t.metric.push_back(number(cells[1], line_no, header[1]));
    for (std::size_t r = 0; r < t.raters.size(); ++r) {
      const auto& cell = cells[r + 2];
      if (cell == "NA" || cell.empty()) {
        t.raters[r].push_back(std::nullopt);
      } else {
        t.raters[r].push_back(number(cell, line_no, header[r + 2]));
      }
    }
  }
  if (header.empty()) throw io::ParseError(source, 0, "", "empty table");
  return t;
}

struct CorrelateOptions {
  std::string table;
  std::string output;
};

int run_correlate(const CorrelateOptions& o, std::ostream& out) {
  RunManifest manifest("correlate");
  const auto text = io::read_file(o.table);
  manifest.input(o.table, text);
  const auto table = parse_rating_table(text, o.table);

  // Ratings are averaged over the raters present before correlating.
  std::vector<double> metric, rating;
  for (std::size_t i = 0; i < table.metric.size(); ++i) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : table.raters) {
      if (r[i]) {
        sum += *r[i];
        ++n;
      }
    }
    if (n == 0) continue;
    metric.push_back(table.metric[i]);
    rating.push_back(sum / n);
  }

  std::ostringstream t;
  t << "statistic\tvalue\tn\n";
  auto row = [&](const char* name, auto compute, std::size_t n) {
    t << name << '\t';
    try {
      t << exact(compute());
    } catch (const UndefinedStatistic&) {
      t << "NA";
    } catch (const std::invalid_argument&) {
      t << "NA";
    }
    t << '\t' << n << '\n';
  };
  row("pearson", [&] { return pearson(metric, rating); }, metric.size());
  row("spearman", [&] { return spearman(metric, rating); }, metric.size());
  row("kendall_tau_b", [&] { return kendall_tau(metric, rating); }, metric.size());
  row("krippendorff_alpha_interval", [&] { return krippendorff_alpha(table.raters); }, table.metric.size());

  commit(manifest, {{o.output, t.str()}});
  out << t.str();
  return kSuccess;
}

// --------------------------------------------------------------------------

struct GuidanceOptions {
  std::string mode = "cfg";
  double w = 7.0;
  std::optional<double> w_prime;
  std::string fixture;
  std::string c0 = "king";
  std::optional<std::string> c1;
  std::optional<std::string> c2;
  int steps = 10;
  std::optional<double> eta;
  std::string output;
};

std::string default_fixture() {
  if (auto p = config_file("toy_embeddings.json")) return p->string();
#ifdef ALIGNKIT_SOURCE_DATA_DIR
  const auto p = fs::path(ALIGNKIT_SOURCE_DATA_DIR) / "toy_embeddings.json";
  if (fs::exists(p)) return p.string();
#endif
  throw UsageError(std::string("no --fixture given and no toy_embeddings.json under $") + kConfigDirEnv);
}

int run_guidance_demo(const GuidanceOptions& o, std::ostream& out) {
  const auto mode = guidance::parse_mode(o.mode);
  if (!mode) throw UsageError("unknown --mode '" + o.mode + "'");
  guidance::GuidanceSpec spec{*mode, o.w, o.w_prime.value_or(o.w / 2.0), o.c0, o.c1, o.c2};
  try {
    guidance::check_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  RunManifest manifest("guidance-demo");
  const auto fixture_path = o.fixture.empty() ? default_fixture() : o.fixture;
  const auto text = io::read_file(fixture_path);
  manifest.input(fixture_path, text);
  const auto fx = io::parse_toy_fixture(text, fixture_path);
  const double eta = o.eta.value_or(fx.eta);
  manifest.flag("mode", o.mode);
  manifest.flag("w", spec.w);
  manifest.flag("w_prime", spec.w_prime);
  manifest.flag("c0", spec.c0);
  manifest.flag("c1", spec.c1 ? Json(*spec.c1) : Json(nullptr));
  manifest.flag("c2", spec.c2 ? Json(*spec.c2) : Json(nullptr));
  manifest.flag("steps", o.steps);
  manifest.flag("eta", eta);

  const guidance::ToyDenoiser model(fx.dim, fx.matrix, fx.embeddings);
  std::vector<guidance::Vector> states;
  try {
    states = guidance::denoise_loop(model, spec, fx.x0, o.steps, eta);
  } catch (const std::out_of_range& e) {
    throw std::runtime_error(fixture_path + ": " + e.what());
  }

  std::ostringstream t;
  t << "step";
  for (std::size_t i = 0; i < fx.dim; ++i) t << "\tx" << i;
  t << '\n';
  for (std::size_t s = 0; s < states.size(); ++s) {
    t << s;
    for (double v : states[s]) t << '\t' << exact(v);
    t << '\n';
  }
  if (o.output.empty()) {
    out << t.str();
  } else {
    commit(manifest, {{o.output, t.str()}});
  }
  return kSuccess;
}

// --------------------------------------------------------------------------

int run_export_vocabulary(const std::string& output, std::ostream& out) {
  RunManifest manifest("export-vocabulary");
  const auto& table = default_compatibility_table();
  commit(manifest, {{output, io::serialize_vocabulary(table)}});
  out << "categories: " << table.size() << '\n';
  return kSuccess;
}

const CLI::Validator kAtLeastOne(
    [](std::string& value) -> std::string {
      try {
        if (std::stoll(value) >= 1) return {};
      } catch (const std::exception&) {
      }
      return "must be an integer >= 1, got '" + value + "'";
    },
    "INT>=1");

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alignment benchmark generation and scoring", "alignkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a benchmark file");
  generate->add_option("--count", gen.count, "Number of entries")->required()->check(kAtLeastOne);
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--p", gen.p, "Per-kind relation probability")->capture_default_str();
  generate->add_option("--max-instances", gen.max_instances)->capture_default_str();
  generate->add_option("--max-relations", gen.max_relations)->capture_default_str();
  generate->add_option("--max-categories", gen.max_categories)->capture_default_str();
  generate->add_option("--max-words", gen.max_words)->capture_default_str();
  generate->add_option("--vocabulary", gen.vocabulary, "Category/color compatibility file");
  generate->add_option("--threads", gen.threads, "Worker threads (0: all cores)")->capture_default_str();
  generate->add_option("--output", gen.output, "Benchmark file to write")->required();
  generate->add_option("--stats", gen.stats, "Also write a statistics table");

  ScoreOptions sc;
  auto* score = app.add_subcommand("score", "Score detections against a benchmark");
  score->add_option("--benchmark", sc.benchmark)->required();
  score->add_option("--detections", sc.detections, "Directory of <id>.json detection records")->required();
  score->add_option("--output", sc.output)->required();
  score->add_option("--threads", sc.threads)->capture_default_str();
  score->add_option("--min-confidence", sc.post.confidence_threshold)->capture_default_str();
  score->add_option("--dedup-iou", sc.post.dedup_iou_threshold)->capture_default_str();
  score->add_option("--min-side", sc.post.min_side)->capture_default_str();
  score->add_option("--relation-offset", sc.post.relation_offset)->capture_default_str();

  ReviseOptions rv;
  auto* revise = app.add_subcommand("revise", "Build enforce pairs from a score file");
  revise->add_option("--scores", rv.scores)->required();
  revise->add_option("--benchmark", rv.benchmark)->required();
  revise->add_option("--output", rv.output)->required();

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Group, direction and stability tables");
  analyze->add_option("--input", an.inputs, "Score file(s)")->required();
  analyze->add_option("--group-by", an.group_by, "total|categories|relations|max-same|relation-kind")
      ->capture_default_str();
  analyze->add_option("--fix-total", an.fix_total, "Keep prompts with this many instances");
  analyze->add_flag("--directions", an.directions, "Per-kind relation accuracy");
  analyze->add_flag("--stability", an.stability, "Mean and sd across runs");
  analyze->add_option("--output", an.output)->required();

  CorrelateOptions co;
  auto* correlate = app.add_subcommand("correlate", "Metric/rating correlations and agreement");
  correlate->add_option("--table", co.table, "TSV: id, metric, rater columns (NA = missing)")->required();
  correlate->add_option("--output", co.output)->required();

  GuidanceOptions gd;
  auto* demo = app.add_subcommand("guidance-demo", "Run guided updates on the toy denoiser");
  demo->add_option("--mode", gd.mode, "cfg|rte|negative|positive")->capture_default_str();
  demo->add_option("--w", gd.w)->capture_default_str();
  demo->add_option("--wprime", gd.w_prime, "Paired-prompt weight (default w/2)");
  demo->add_option("--fixture", gd.fixture, "Toy denoiser fixture");
  demo->add_option("--c0", gd.c0)->capture_default_str();
  demo->add_option("--c1", gd.c1);
  demo->add_option("--c2", gd.c2);
  demo->add_option("--steps", gd.steps)->check(kAtLeastOne)->capture_default_str();
  demo->add_option("--eta", gd.eta, "Step size (default from fixture)");
  demo->add_option("--output", gd.output, "Table file (default stdout)");

  std::string vocab_out;
  auto* export_vocab = app.add_subcommand("export-vocabulary", "Write the built-in compatibility table");
  export_vocab->add_option("--output", vocab_out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (generate->parsed()) return run_generate(gen, out);
    if (score->parsed()) return run_score(sc, out);
    if (revise->parsed()) return run_revise(rv, out);
    if (analyze->parsed()) return run_analyze(an, out);
    if (correlate->parsed()) return run_correlate(co, out);
    if (demo->parsed()) return run_guidance_demo(gd, out);
    if (export_vocab->parsed()) return run_export_vocabulary(vocab_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace alignkit::cli
