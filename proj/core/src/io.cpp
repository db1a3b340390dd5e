#include "alignkit/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace alignkit::io {

using Json = nlohmann::ordered_json;

ParseError::ParseError(std::string source, std::size_t line, std::string field,
                       const std::string& what)
    : std::runtime_error([&] {
        std::string msg = source;
        if (line) msg += ":" + std::to_string(line);
        if (!field.empty()) msg += ": field '" + field + "'";
        return msg + ": " + what;
      }()),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

namespace {

// Parsing context: where we are, for error messages.
struct Ctx {
  const std::string& source;
  std::size_t line;

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(source, line, field, what);
  }
};

Json parse_json(std::string_view text, const Ctx& ctx) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    ctx.fail("", std::string("malformed JSON: ") + e.what());
  }
}

const Json& member(const Json& obj, const char* key, const std::string& path, const Ctx& ctx) {
  if (!obj.is_object()) ctx.fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) ctx.fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join_path(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& array_member(const Json& obj, const char* key, const std::string& path, const Ctx& ctx) {
  const auto& v = member(obj, key, path, ctx);
  if (!v.is_array()) ctx.fail(join_path(path, key), "expected an array");
  return v;
}

std::string string_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_string()) ctx.fail(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t int_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_number_integer()) ctx.fail(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    ctx.fail(path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

std::uint64_t uint_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_number_integer()) ctx.fail(path, "expected an unsigned integer");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) ctx.fail(path, "expected an unsigned integer");
  return static_cast<std::uint64_t>(s);
}

double number_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_number()) ctx.fail(path, "expected a number");
  const auto d = v.get<double>();
  if (!std::isfinite(d)) ctx.fail(path, "expected a finite number");
  return d;
}

bool bool_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_boolean()) ctx.fail(path, "expected a boolean");
  return v.get<bool>();
}

Color color_of(const Json& v, const std::string& path, const Ctx& ctx) {
  auto c = parse_color(string_of(v, path, ctx));
  if (!c) ctx.fail(path, "unknown color '" + v.get<std::string>() + "'");
  return *c;
}

RelationKind kind_of(const Json& v, const std::string& path, const Ctx& ctx) {
  auto k = parse_relation_kind(string_of(v, path, ctx));
  if (!k) ctx.fail(path, "unknown relation kind '" + v.get<std::string>() + "'");
  return *k;
}

void check_schema(const Json& obj, std::string_view expected, const Ctx& ctx) {
  const auto tag = string_of(member(obj, "schema", "", ctx), "schema", ctx);
  if (tag != expected) {
    ctx.fail("schema", "expected '" + std::string(expected) + "', found '" + tag + "'");
  }
}

// Instances are written as [category, id] with id = ordinal - 1.
Json ref_json(const InstanceRef& ref) { return Json::array({ref.category, ref.ordinal - 1}); }

InstanceRef ref_of(const Json& v, const std::string& path, const Ctx& ctx) {
  if (!v.is_array() || v.size() != 2) ctx.fail(path, "expected [category, id]");
  const auto id = int_of(v[1], path + "[1]", ctx);
  if (id < 0) ctx.fail(path + "[1]", "id must be >= 0");
  return {string_of(v[0], path + "[0]", ctx), static_cast<int>(id) + 1};
}

Json scene_json(const StructuredScene& scene) {
  Json cats = Json::array();
  for (const auto& category : scene.categories()) {
    Json instances = Json::array();
    for (const auto& inst : scene.instances()) {
      if (inst.category != category) continue;
      Json rels = Json::array();
      for (const auto& r : scene.relations()) {
        if (r.subject == inst.ref()) {
          rels.push_back({{"kind", to_string(r.kind)}, {"object", ref_json(r.object)}});
        }
      }
      Json i = {{"id", inst.ordinal - 1}};
      i["color"] = inst.color ? Json(to_string(*inst.color)) : Json(nullptr);
      i["relations"] = std::move(rels);
      instances.push_back(std::move(i));
    }
    cats.push_back({{"category", category}, {"instances", std::move(instances)}});
  }
  return Json{{"total_number", scene.total_number()}, {"categories", std::move(cats)}};
}

StructuredScene scene_of(const Json& obj, const std::string& path, const Ctx& ctx) {
  const auto total = int_of(member(obj, "total_number", path, ctx), join_path(path, "total_number"), ctx);
  const auto& cats = array_member(obj, "categories", path, ctx);
  std::vector<InstanceSpec> instances;
  std::vector<RelationSpec> relations;
  for (std::size_t c = 0; c < cats.size(); ++c) {
    const auto cpath = index_path(join_path(path, "categories"), c);
    const auto name = string_of(member(cats[c], "category", cpath, ctx), join_path(cpath, "category"), ctx);
    if (name.empty()) ctx.fail(join_path(cpath, "category"), "empty category name");
    const auto& insts = array_member(cats[c], "instances", cpath, ctx);
    if (insts.empty()) ctx.fail(join_path(cpath, "instances"), "category lists no instances");
    for (std::size_t i = 0; i < insts.size(); ++i) {
      const auto ipath = index_path(join_path(cpath, "instances"), i);
      const auto id = int_of(member(insts[i], "id", ipath, ctx), join_path(ipath, "id"), ctx);
      if (id < 0) ctx.fail(join_path(ipath, "id"), "id must be >= 0");
      InstanceSpec spec{name, static_cast<int>(id) + 1, std::nullopt};
      if (auto it = insts[i].find("color"); it != insts[i].end() && !it->is_null()) {
        spec.color = color_of(*it, join_path(ipath, "color"), ctx);
      }
      if (auto it = insts[i].find("relations"); it != insts[i].end()) {
        const auto rpath = join_path(ipath, "relations");
        if (!it->is_array()) ctx.fail(rpath, "expected an array");
        for (std::size_t r = 0; r < it->size(); ++r) {
          const auto one = index_path(rpath, r);
          const auto& rel = (*it)[r];
          relations.push_back({spec.ref(),
                               ref_of(member(rel, "object", one, ctx), join_path(one, "object"), ctx),
                               kind_of(member(rel, "kind", one, ctx), join_path(one, "kind"), ctx)});
        }
      }
      instances.push_back(std::move(spec));
    }
  }
  if (total != static_cast<std::int64_t>(instances.size())) {
    ctx.fail(join_path(path, "total_number"), "total_number " + std::to_string(total) +
                                                  " disagrees with " +
                                                  std::to_string(instances.size()) + " listed instances");
  }
  StructuredScene scene(std::move(instances), std::move(relations));
  // Structural integrity only; vocabulary checks belong to validate_scene.
  for (std::size_t i = 0; i < scene.instances().size(); ++i) {
    const auto& inst = scene.instances()[i];
    if (scene.index_of(inst.ref()) != i) {
      ctx.fail(join_path(path, "categories"),
               "duplicate instance " + inst.category + " id " + std::to_string(inst.ordinal - 1));
    }
  }
  for (const auto& r : scene.relations()) {
    if (!scene.index_of(r.object)) {
      ctx.fail(join_path(path, "categories"), "relation object " + r.object.category + " id " +
                                                  std::to_string(r.object.ordinal - 1) + " does not exist");
    }
    if (r.subject == r.object) ctx.fail(join_path(path, "categories"), "relation from an instance to itself");
  }
  return scene;
}

Json entry_json(const BenchmarkEntry& e) {
  Json scene = scene_json(e.scene);
  Json out = {{"id", e.id}, {"seed", e.seed}};
  out["total_number"] = scene["total_number"];
  out["categories"] = scene["categories"];
  out["prompt"] = e.prompt;
  return out;
}

BenchmarkEntry entry_of(const Json& obj, const Ctx& ctx) {
  BenchmarkEntry e;
  e.id = int_of(member(obj, "id", "", ctx), "id", ctx);
  e.seed = uint_of(member(obj, "seed", "", ctx), "seed", ctx);
  e.scene = scene_of(obj, "", ctx);
  e.prompt = string_of(member(obj, "prompt", "", ctx), "prompt", ctx);
  return e;
}

}  // namespace

std::string serialize_scene(const StructuredScene& scene) { return scene_json(scene).dump(); }

StructuredScene parse_scene(std::string_view text) {
  const std::string source = "<scene>";
  Ctx ctx{source, 0};
  return scene_of(parse_json(text, ctx), "", ctx);
}

std::string serialize_entry(const BenchmarkEntry& entry) { return entry_json(entry).dump(); }

BenchmarkEntry parse_entry(std::string_view text, const std::string& source, std::size_t line) {
  Ctx ctx{source, line};
  return entry_of(parse_json(text, ctx), ctx);
}

void write_benchmark(std::ostream& out, const std::vector<BenchmarkEntry>& entries) {
  Json header = {{"schema", kBenchmarkSchema}, {"entries", entries.size()}};
  out << header.dump() << '\n';
  for (const auto& e : entries) out << serialize_entry(e) << '\n';
}

std::vector<BenchmarkEntry> read_benchmark(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared;
  std::vector<BenchmarkEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Ctx ctx{source, line_no};
    if (!declared) {
      const auto header = parse_json(line, ctx);
      check_schema(header, kBenchmarkSchema, ctx);
      declared = static_cast<std::size_t>(uint_of(member(header, "entries", "", ctx), "entries", ctx));
      continue;
    }
    entries.push_back(entry_of(parse_json(line, ctx), ctx));
  }
  if (!declared) throw ParseError(source, 0, "schema", "missing header line");
  if (*declared != entries.size()) {
    throw ParseError(source, 1, "entries",
                     "header declares " + std::to_string(*declared) + " entries, found " +
                         std::to_string(entries.size()));
  }
  return entries;
}

// ---------------------------------------------------------------------------

std::string serialize_vocabulary(const CompatibilityTable& table) {
  Json cats = Json::array();
  for (const auto& name : table.categories()) {
    Json colors = Json::array();
    for (auto c : table.colors(name)) colors.push_back(to_string(c));
    cats.push_back({{"name", name}, {"colors", std::move(colors)}});
  }
  Json out = {{"schema", kVocabularySchema}, {"canonical", table.canonical()}, {"categories", std::move(cats)}};
  return out.dump(2) + "\n";
}

CompatibilityTable parse_vocabulary(std::string_view text, const std::string& source) {
  Ctx ctx{source, 0};
  const auto doc = parse_json(text, ctx);
  check_schema(doc, kVocabularySchema, ctx);
  bool canonical = false;
  if (auto it = doc.find("canonical"); it != doc.end()) canonical = bool_of(*it, "canonical", ctx);
  std::vector<std::pair<std::string, std::vector<Color>>> entries;
  const auto& cats = array_member(doc, "categories", "", ctx);
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const auto path = index_path("categories", i);
    auto name = string_of(member(cats[i], "name", path, ctx), join_path(path, "name"), ctx);
    const auto& colors = array_member(cats[i], "colors", path, ctx);
    std::vector<Color> parsed;
    for (std::size_t c = 0; c < colors.size(); ++c) {
      parsed.push_back(color_of(colors[c], index_path(join_path(path, "colors"), c), ctx));
    }
    entries.emplace_back(std::move(name), std::move(parsed));
  }
  try {
    return CompatibilityTable(std::move(entries), canonical);
  } catch (const std::invalid_argument& e) {
    ctx.fail("categories", e.what());
  }
}

// ---------------------------------------------------------------------------

std::string serialize_detection_record(const DetectionRecord& record) {
  Json dets = Json::array();
  for (const auto& d : record.detections) {
    Json scores = Json::object();
    for (std::size_t i = 0; i < kPalette.size(); ++i) scores[std::string(to_string(kPalette[i]))] = d.color_scores[i];
    dets.push_back({{"category", d.category},
                    {"confidence", d.confidence},
                    {"box", {d.box.cx, d.box.cy, d.box.w, d.box.h}},
                    {"color_scores", std::move(scores)}});
  }
  Json out = {{"schema", kDetectionSchema}, {"image_id", record.image_id}, {"detections", std::move(dets)}};
  return out.dump(2) + "\n";
}

DetectionRecord parse_detection_record(std::string_view text, const std::string& source) {
  Ctx ctx{source, 0};
  const auto doc = parse_json(text, ctx);
  check_schema(doc, kDetectionSchema, ctx);
  DetectionRecord rec;
  rec.image_id = int_of(member(doc, "image_id", "", ctx), "image_id", ctx);
  const auto& dets = array_member(doc, "detections", "", ctx);
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const auto path = index_path("detections", i);
    RawDetection d;
    d.category = string_of(member(dets[i], "category", path, ctx), join_path(path, "category"), ctx);
    d.confidence = number_of(member(dets[i], "confidence", path, ctx), join_path(path, "confidence"), ctx);
    if (d.confidence < 0.0 || d.confidence > 1.0) {
      ctx.fail(join_path(path, "confidence"), "confidence must lie in [0, 1]");
    }
    const auto bpath = join_path(path, "box");
    const auto& box = member(dets[i], "box", path, ctx);
    if (!box.is_array() || box.size() != 4) ctx.fail(bpath, "expected [cx, cy, w, h]");
    d.box = {number_of(box[0], bpath + "[0]", ctx), number_of(box[1], bpath + "[1]", ctx),
             number_of(box[2], bpath + "[2]", ctx), number_of(box[3], bpath + "[3]", ctx)};
    if (!(d.box.w > 0.0 && d.box.h > 0.0)) ctx.fail(bpath, "width and height must be positive");
    const auto spath = join_path(path, "color_scores");
    const auto& scores = member(dets[i], "color_scores", path, ctx);
    if (!scores.is_object()) ctx.fail(spath, "expected an object");
    if (scores.size() != kPaletteSize) {
      ctx.fail(spath, "expected exactly " + std::to_string(kPaletteSize) + " palette colors");
    }
    for (auto it = scores.begin(); it != scores.end(); ++it) {
      if (!parse_color(it.key())) ctx.fail(spath + "." + it.key(), "not a palette color");
    }
    for (std::size_t c = 0; c < kPalette.size(); ++c) {
      const auto key = std::string(to_string(kPalette[c]));
      d.color_scores[c] = number_of(member(scores, key.c_str(), spath, ctx), spath + "." + key, ctx);
    }
    rec.detections.push_back(std::move(d));
  }
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

Json kinds_json(const std::optional<RelationSet>& s) {
  if (!s) return nullptr;
  Json arr = Json::array();
  for (auto k : s->kinds()) arr.push_back(to_string(k));
  return arr;
}

Json prompt_json(const ScoredPrompt& p) {
  const auto& r = p.report;
  Json matching = Json::array();
  // Matching targets follow the canonical instance order of the scene; the
  // instance references are recorded from the verdict lists and counts.
  for (const auto& t : r.matching.targets) matching.push_back(t ? Json(*t) : Json(nullptr));
  Json counts = Json::array();
  for (const auto& c : r.counts) {
    counts.push_back({{"category", c.category}, {"required", c.required}, {"detected", c.detected}});
  }
  Json colors = Json::array();
  for (const auto& v : r.colors) {
    colors.push_back({{"instance", ref_json(v.instance)},
                      {"required", to_string(v.required)},
                      {"target", v.target ? Json(*v.target) : Json(nullptr)},
                      {"detected", v.detected ? Json(to_string(*v.detected)) : Json(nullptr)},
                      {"correct", v.correct}});
  }
  Json rels = Json::array();
  for (const auto& v : r.relations) {
    rels.push_back({{"subject", ref_json(v.relation.subject)},
                    {"object", ref_json(v.relation.object)},
                    {"kind", to_string(v.relation.kind)},
                    {"detected", kinds_json(v.detected)},
                    {"correct", v.correct}});
  }
  return Json{{"id", p.id},
              {"total_number", p.summary.total_instances},
              {"category_count", p.summary.category_count},
              {"relation_count", p.summary.relation_count},
              {"max_same_category", p.summary.max_same_category},
              {"missing_detections", p.missing_detections},
              {"bias", r.bias},
              {"acc", r.acc},
              {"align_score", r.align_score},
              {"normalizer", r.normalizer},
              {"correct", r.correct},
              {"matching", std::move(matching)},
              {"counts", std::move(counts)},
              {"colors", std::move(colors)},
              {"relations", std::move(rels)}};
}

ScoredPrompt prompt_of(const Json& obj, const std::string& path, const Ctx& ctx) {
  auto get = [&](const char* key) -> const Json& { return member(obj, key, path, ctx); };
  auto at = [&](const char* key) { return join_path(path, key); };
  ScoredPrompt p;
  p.id = int_of(get("id"), at("id"), ctx);
  p.summary.total_instances = static_cast<int>(int_of(get("total_number"), at("total_number"), ctx));
  p.summary.category_count = static_cast<int>(int_of(get("category_count"), at("category_count"), ctx));
  p.summary.relation_count = static_cast<int>(int_of(get("relation_count"), at("relation_count"), ctx));
  p.summary.max_same_category =
      static_cast<int>(int_of(get("max_same_category"), at("max_same_category"), ctx));
  p.missing_detections = bool_of(get("missing_detections"), at("missing_detections"), ctx);
  auto& r = p.report;
  r.bias = static_cast<int>(int_of(get("bias"), at("bias"), ctx));
  r.acc = number_of(get("acc"), at("acc"), ctx);
  r.align_score = number_of(get("align_score"), at("align_score"), ctx);
  r.normalizer = uint_of(get("normalizer"), at("normalizer"), ctx);
  r.correct = uint_of(get("correct"), at("correct"), ctx);

  const auto& matching = array_member(obj, "matching", path, ctx);
  for (std::size_t i = 0; i < matching.size(); ++i) {
    if (matching[i].is_null()) {
      r.matching.targets.push_back(std::nullopt);
    } else {
      r.matching.targets.push_back(uint_of(matching[i], index_path(at("matching"), i), ctx));
    }
  }
  const auto& counts = array_member(obj, "counts", path, ctx);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto cp = index_path(at("counts"), i);
    r.counts.push_back(
        {string_of(member(counts[i], "category", cp, ctx), join_path(cp, "category"), ctx),
         static_cast<int>(int_of(member(counts[i], "required", cp, ctx), join_path(cp, "required"), ctx)),
         static_cast<int>(int_of(member(counts[i], "detected", cp, ctx), join_path(cp, "detected"), ctx))});
  }
  const auto& colors = array_member(obj, "colors", path, ctx);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const auto cp = index_path(at("colors"), i);
    const auto& c = colors[i];
    ColorVerdict v;
    v.instance = ref_of(member(c, "instance", cp, ctx), join_path(cp, "instance"), ctx);
    v.required = color_of(member(c, "required", cp, ctx), join_path(cp, "required"), ctx);
    if (const auto& t = member(c, "target", cp, ctx); !t.is_null()) v.target = uint_of(t, join_path(cp, "target"), ctx);
    if (const auto& d = member(c, "detected", cp, ctx); !d.is_null()) {
      v.detected = color_of(d, join_path(cp, "detected"), ctx);
    }
    v.correct = bool_of(member(c, "correct", cp, ctx), join_path(cp, "correct"), ctx);
    r.colors.push_back(std::move(v));
  }
  const auto& rels = array_member(obj, "relations", path, ctx);
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const auto rp = index_path(at("relations"), i);
    const auto& j = rels[i];
    RelationVerdict v;
    v.relation.subject = ref_of(member(j, "subject", rp, ctx), join_path(rp, "subject"), ctx);
    v.relation.object = ref_of(member(j, "object", rp, ctx), join_path(rp, "object"), ctx);
    v.relation.kind = kind_of(member(j, "kind", rp, ctx), join_path(rp, "kind"), ctx);
    if (const auto& d = member(j, "detected", rp, ctx); !d.is_null()) {
      if (!d.is_array()) ctx.fail(join_path(rp, "detected"), "expected an array or null");
      RelationSet s;
      for (std::size_t k = 0; k < d.size(); ++k) {
        s.insert(kind_of(d[k], index_path(join_path(rp, "detected"), k), ctx));
      }
      v.detected = s;
    }
    v.correct = bool_of(member(j, "correct", rp, ctx), join_path(rp, "correct"), ctx);
    r.relations.push_back(std::move(v));
  }
  return p;
}

}  // namespace

std::string serialize_score_file(const ScoreFile& file) {
  Json prompts = Json::array();
  for (const auto& p : file.prompts) prompts.push_back(prompt_json(p));
  const auto& a = file.aggregate;
  Json out = {{"schema", kScoreSchema},
              {"prompts", std::move(prompts)},
              {"aggregate",
               {{"count", a.count},
                {"mean_acc", a.mean_acc},
                {"mean_bias", a.mean_bias},
                {"align_score", a.align_score},
                {"mean_align_score", a.mean_align_score}}}};
  return out.dump(2) + "\n";
}

ScoreFile parse_score_file(std::string_view text, const std::string& source) {
  Ctx ctx{source, 0};
  const auto doc = parse_json(text, ctx);
  check_schema(doc, kScoreSchema, ctx);
  ScoreFile file;
  const auto& prompts = array_member(doc, "prompts", "", ctx);
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    file.prompts.push_back(prompt_of(prompts[i], index_path("prompts", i), ctx));
  }
  const auto& a = member(doc, "aggregate", "", ctx);
  file.aggregate.count = uint_of(member(a, "count", "aggregate", ctx), "aggregate.count", ctx);
  file.aggregate.mean_acc = number_of(member(a, "mean_acc", "aggregate", ctx), "aggregate.mean_acc", ctx);
  file.aggregate.mean_bias = number_of(member(a, "mean_bias", "aggregate", ctx), "aggregate.mean_bias", ctx);
  file.aggregate.align_score =
      number_of(member(a, "align_score", "aggregate", ctx), "aggregate.align_score", ctx);
  file.aggregate.mean_align_score =
      number_of(member(a, "mean_align_score", "aggregate", ctx), "aggregate.mean_align_score", ctx);
  return file;
}

// ---------------------------------------------------------------------------

std::string serialize_enforce_file(const EnforceFile& file) {
  Json records = Json::array();
  for (const auto& r : file.records) {
    records.push_back({{"id", r.id}, {"seed", r.seed}, {"prompt", r.prompt}, {"c1", r.pair.c1}, {"c2", r.pair.c2}});
  }
  Json out = {{"schema", kEnforceSchema}};
  if (file.notice) out["notice"] = *file.notice;
  out["pairs"] = std::move(records);
  return out.dump(2) + "\n";
}

EnforceFile parse_enforce_file(std::string_view text, const std::string& source) {
  Ctx ctx{source, 0};
  const auto doc = parse_json(text, ctx);
  check_schema(doc, kEnforceSchema, ctx);
  EnforceFile file;
  if (auto it = doc.find("notice"); it != doc.end()) file.notice = string_of(*it, "notice", ctx);
  const auto& pairs = array_member(doc, "pairs", "", ctx);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto p = index_path("pairs", i);
    const auto& j = pairs[i];
    EnforceRecord r;
    r.id = int_of(member(j, "id", p, ctx), join_path(p, "id"), ctx);
    r.seed = uint_of(member(j, "seed", p, ctx), join_path(p, "seed"), ctx);
    r.prompt = string_of(member(j, "prompt", p, ctx), join_path(p, "prompt"), ctx);
    r.pair.c1 = string_of(member(j, "c1", p, ctx), join_path(p, "c1"), ctx);
    r.pair.c2 = string_of(member(j, "c2", p, ctx), join_path(p, "c2"), ctx);
    file.records.push_back(std::move(r));
  }
  return file;
}

// ---------------------------------------------------------------------------

ToyFixture parse_toy_fixture(std::string_view text, const std::string& source) {
  Ctx ctx{source, 0};
  const auto doc = parse_json(text, ctx);
  check_schema(doc, kToySchema, ctx);
  ToyFixture fx;
  const auto dim = int_of(member(doc, "dim", "", ctx), "dim", ctx);
  if (dim < 1) ctx.fail("dim", "must be >= 1");
  fx.dim = static_cast<std::size_t>(dim);
  auto vector_of = [&](const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != fx.dim) ctx.fail(path, "expected " + std::to_string(fx.dim) + " numbers");
    guidance::Vector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_of(v[i], index_path(path, i), ctx));
    return out;
  };
  const auto& rows = array_member(doc, "matrix", "", ctx);
  if (rows.size() != fx.dim) ctx.fail("matrix", "expected " + std::to_string(fx.dim) + " rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto row = vector_of(rows[r], index_path("matrix", r));
    fx.matrix.insert(fx.matrix.end(), row.begin(), row.end());
  }
  fx.eta = number_of(member(doc, "eta", "", ctx), "eta", ctx);
  fx.x0 = vector_of(member(doc, "x0", "", ctx), "x0");
  const auto& emb = member(doc, "embeddings", "", ctx);
  if (!emb.is_object()) ctx.fail("embeddings", "expected an object");
  for (auto it = emb.begin(); it != emb.end(); ++it) {
    fx.embeddings.emplace(it.key(), vector_of(it.value(), "embeddings." + it.key()));
  }
  return fx;
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
  }
}

}  // namespace alignkit::io
