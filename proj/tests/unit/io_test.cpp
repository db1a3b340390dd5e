#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "alignkit/generator.hpp"
#include "alignkit/io.hpp"
#include "fixtures.hpp"

using namespace alignkit;
namespace fs = std::filesystem;

namespace {

template <typename Fn>
io::ParseError parse_error(Fn fn) {
  try {
    fn();
  } catch (const io::ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a ParseError";
  return io::ParseError("", 0, "", "");
}

const char* kBenchBoatRecord =
    R"({"total_number":4,"categories":[)"
    R"({"category":"bench","instances":[{"id":0,"color":"white","relations":[{"kind":"left","object":["boat",0]}]},)"
    R"({"id":1,"color":"black"},{"id":2,"color":"red"}]},)"
    R"({"category":"boat","instances":[{"id":0,"color":"green"}]}]})";

}  // namespace

TEST(SceneFormat, BenchBoatRecordParses) {
  EXPECT_EQ(io::parse_scene(kBenchBoatRecord), testing_support::bench_boat_scene());
}

TEST(SceneFormat, RoundTrip) {
  const auto s = testing_support::bench_boat_scene();
  EXPECT_EQ(io::parse_scene(io::serialize_scene(s)), s);
  StructuredScene bare({{"a", 1, std::nullopt}}, {});
  EXPECT_EQ(io::parse_scene(io::serialize_scene(bare)), bare);
}

TEST(SceneFormat, Errors) {
  EXPECT_EQ(parse_error([] { io::parse_scene("{"); }).field(), "");
  EXPECT_EQ(parse_error([] { io::parse_scene(R"({"categories":[]})"); }).field(), "total_number");
  EXPECT_EQ(parse_error([] { io::parse_scene(R"({"total_number":2,"categories":[{"category":"a","instances":[{"id":0}]}]})"); })
                .field(),
            "total_number");
  EXPECT_EQ(parse_error([] {
              io::parse_scene(R"({"total_number":1,"categories":[{"category":"a","instances":[{"id":0,"color":"mauve"}]}]})");
            }).field(),
            "categories[0].instances[0].color");
  EXPECT_EQ(parse_error([] {
              io::parse_scene(
                  R"({"total_number":1,"categories":[{"category":"a","instances":[{"id":0,"relations":[{"kind":"left","object":["b",0]}]}]}]})");
            }).field(),
            "categories");
  EXPECT_EQ(parse_error([] {
              io::parse_scene(
                  R"({"total_number":1,"categories":[{"category":"a","instances":[{"id":0,"relations":[{"kind":"behind","object":["a",0]}]}]}]})");
            }).field(),
            "categories[0].instances[0].relations[0].kind");
}

TEST(BenchmarkFormat, RoundTripAndLineNumbers) {
  GeneratorConfig cfg;
  cfg.seed = 11;
  const auto entries = build_benchmark(cfg, 50);
  std::stringstream ss;
  io::write_benchmark(ss, entries);
  EXPECT_EQ(io::read_benchmark(ss, "bench.jsonl"), entries);

  std::stringstream bad;
  bad << R"({"schema":"alignkit.benchmark/1","entries":2})" << '\n'
      << io::serialize_entry(entries[0]) << '\n'
      << R"({"id":1,"seed":1,"total_number":1,"categories":[],"prompt":"x"})" << '\n';
  const auto e = parse_error([&] { io::read_benchmark(bad, "bench.jsonl"); });
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.source(), "bench.jsonl");
  EXPECT_NE(std::string(e.what()).find("bench.jsonl:3"), std::string::npos);

  std::stringstream wrong_schema(R"({"schema":"other/1","entries":0})");
  EXPECT_EQ(parse_error([&] { io::read_benchmark(wrong_schema, "x"); }).field(), "schema");
  std::stringstream short_file(R"({"schema":"alignkit.benchmark/1","entries":3})");
  EXPECT_EQ(parse_error([&] { io::read_benchmark(short_file, "x"); }).field(), "entries");
}

TEST(DetectionFormat, RoundTripAndValidation) {
  io::DetectionRecord rec{7, {{"cat", 0.75, {10, 20, 30, 40}, testing_support::scores_for(Color::Black)}}};
  EXPECT_EQ(io::parse_detection_record(io::serialize_detection_record(rec), "7.json"), rec);

  auto make = [](const std::string& det) {
    return R"({"schema":"alignkit.detections/1","image_id":1,"detections":[)" + det + "]}";
  };
  const std::string scores =
      R"("color_scores":{"green":0,"red":0,"yellow":0,"brown":0,"black":1,"white":0,"blue":0})";
  EXPECT_NO_THROW(io::parse_detection_record(make(R"({"category":"cat","confidence":0.5,"box":[1,2,3,4],)" + scores + "}"), "f"));
  EXPECT_EQ(parse_error([&] {
              io::parse_detection_record(make(R"({"category":"cat","confidence":1.5,"box":[1,2,3,4],)" + scores + "}"), "f");
            }).field(),
            "detections[0].confidence");
  EXPECT_EQ(parse_error([&] {
              io::parse_detection_record(make(R"({"category":"cat","confidence":0.5,"box":[1,2,0,4],)" + scores + "}"), "f");
            }).field(),
            "detections[0].box");
  EXPECT_EQ(parse_error([&] {
              io::parse_detection_record(
                  make(R"({"category":"cat","confidence":0.5,"box":[1,2,3,4],"color_scores":{"green":1}})"), "f");
            }).field(),
            "detections[0].color_scores");
}

TEST(ScoreFormat, RoundTrip) {
  DetectionSet d;
  d.instances.push_back(testing_support::detected("bench", Color::Black, {10, 10, 10, 10}));
  d.instances.push_back(testing_support::detected("boat", Color::Green, {90, 10, 10, 10}));
  const auto scene = testing_support::bench_boat_scene();
  io::ScoreFile f;
  f.prompts.push_back({3, summarize(scene), evaluate(scene, d), false});
  f.prompts.push_back({4, summarize(scene), evaluate(scene, {}), true});
  f.aggregate = aggregate(std::vector{f.prompts[0].report, f.prompts[1].report});
  const auto text = io::serialize_score_file(f);
  const auto back = io::parse_score_file(text, "s.json");
  EXPECT_EQ(back.prompts, f.prompts);
  EXPECT_EQ(io::serialize_score_file(back), text);
}

TEST(EnforceFormat, RoundTrip) {
  io::EnforceFile f;
  f.records.push_back({1, 42, "prompt", {"2 bowl", "1 bowl"}});
  const auto back = io::parse_enforce_file(io::serialize_enforce_file(f), "e.json");
  EXPECT_EQ(back.records, f.records);
  EXPECT_FALSE(back.notice);
  io::EnforceFile empty;
  empty.notice = "nothing";
  EXPECT_EQ(io::parse_enforce_file(io::serialize_enforce_file(empty), "e.json").notice, "nothing");
}

TEST(VocabularyFormat, ShippedFileMatchesBuiltin) {
  const auto path = fs::path(ALIGNKIT_DATA_DIR) / "compatibility.json";
  const auto text = io::read_file(path.string());
  EXPECT_EQ(io::parse_vocabulary(text, path.string()), default_compatibility_table());
  EXPECT_EQ(io::serialize_vocabulary(default_compatibility_table()), text);
}

TEST(ToyFixture, ShippedFileHasExactQueenIdentity) {
  const auto path = (fs::path(ALIGNKIT_DATA_DIR) / "toy_embeddings.json").string();
  const auto fx = io::parse_toy_fixture(io::read_file(path), path);
  EXPECT_EQ(fx.matrix.size(), fx.dim * fx.dim);
  const auto& e = fx.embeddings;
  for (std::size_t i = 0; i < fx.dim; ++i) {
    EXPECT_EQ(e.at("king")[i] + e.at("woman")[i] - e.at("man")[i], e.at("queen")[i]);
  }
  EXPECT_EQ(parse_error([] { io::parse_toy_fixture(R"({"schema":"alignkit.toy/1","dim":2,"matrix":[[1,0]],"eta":0.1,"x0":[0,0],"embeddings":{}})", "t"); })
                .field(),
            "matrix");
}

TEST(Files, AtomicWriteReplaces) {
  const auto dir = fs::temp_directory_path() / "alignkit_io_test";
  fs::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  EXPECT_EQ(io::read_file(path), "second");
  EXPECT_FALSE(fs::exists(path + ".tmp"));
  EXPECT_THROW(io::read_file((dir / "missing").string()), std::runtime_error);
  EXPECT_THROW(io::write_file_atomic((dir / "no" / "such" / "dir").string(), "x"), std::runtime_error);
  fs::remove_all(dir);
}
