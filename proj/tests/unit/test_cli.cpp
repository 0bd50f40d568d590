#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "limelight/cli.hpp"

namespace fs = std::filesystem;
using namespace limelight;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("limelight-cli-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// synth -> prep -> split -> train in `s`, returning the model path.
std::string small_pipeline(const Scratch& s) {
  REQUIRE(cli({"synth", "--out", s.path("c.csv"), "--per-class", "40"}).code == 0);
  REQUIRE(cli({"prep", "--in", s.path("c.csv"), "--out", s.path("c.jsonl")}).code == 0);
  REQUIRE(cli({"split", "--in", s.path("c.jsonl"), "--out-dir", s.path("split")}).code == 0);
  const auto t = cli({"train", "--train", s.path("split/train.jsonl"), "--eval", s.path("split/test.jsonl"),
                      "--out", s.path("m.json")});
  REQUIRE(t.code == 0);
  return s.path("m.json");
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"prep", "--nope"}).code == kExitUsage);
  CHECK(cli({"prep", "--in", "/nonexistent.csv"}).code == kExitUsage);
  const auto v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("limelight 0.1.0") != std::string::npos);
  CHECK(v.out.find("limelight-blackbox v1") != std::string::npos);
  CHECK(cli({"explain", "--help"}).code == 0);
}

TEST_CASE("prep on the three-row fixture") {
  Scratch s;
  write(s.path("three.csv"), "class,tweet\n0,\"You are #Vermin, @bob!\"\n1,what an idiot\n2,sunny weekend http://t.co/x\n");
  const auto r = cli({"prep", "--in", s.path("three.csv"), "--out", s.path("three.jsonl")});
  REQUIRE(r.code == 0);
  const std::string text = slurp(s.path("three.jsonl"));
  CHECK(lines(text) == 3);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> labels;
  while (std::getline(in, line)) labels.push_back(nlohmann::json::parse(line)["label"]);
  CHECK(labels == std::vector<std::string>{"hate", "offensive", "none"});
  CHECK(text.find("\"#vermin\"") != std::string::npos);
}

TEST_CASE("data errors exit 2 and name the stage") {
  Scratch s;
  write(s.path("bad.csv"), "class,tweet\n9,hello\n");
  const auto r = cli({"prep", "--in", s.path("bad.csv")});
  CHECK(r.code == kExitData);
  CHECK(r.err.rfind("error [", 0) == 0);
  write(s.path("notjson.json"), "{");
  write(s.path("docs.jsonl"), "");
  CHECK(cli({"eval", "--model", s.path("notjson.json"), "--in", s.path("docs.jsonl")}).code == kExitData);
}

TEST_CASE("pipeline subcommands") {
  Scratch s;
  const std::string model = small_pipeline(s);
  CHECK(lines(slurp(s.path("split/train.jsonl"))) == 84);
  CHECK(lines(slurp(s.path("split/test.jsonl"))) == 24);
  CHECK(lines(slurp(s.path("split/validation.jsonl"))) == 12);

  const auto ev = cli({"eval", "--model", model, "--in", s.path("split/test.jsonl"), "--format", "json"});
  CHECK(ev.code == 0);
  CHECK(nlohmann::json::parse(ev.out)["epochs"].size() == 1);

  SUBCASE("explain html") {
    const auto r = cli({"explain", "--model", model, "--text", "you stupid vermin", "--classes", "all",
                        "--format", "html", "--out", s.path("e.html"), "--no-timestamp"});
    CHECK(r.code == 0);
    const std::string html = slurp(s.path("e.html"));
    CHECK(html.rfind("<!DOCTYPE html>", 0) == 0);
    CHECK(html.find("class=\"timestamp\"") == std::string::npos);
    const auto again = cli({"explain", "--model", model, "--text", "you stupid vermin", "--format", "html",
                            "--out", s.path("e2.html"), "--no-timestamp"});
    CHECK(again.code == 0);
    CHECK(slurp(s.path("e2.html")) == html);
  }
  SUBCASE("explain json with selected classes") {
    const auto r = cli({"explain", "--model", model, "--text", "stupid vermin weekend", "--classes", "hate,none",
                        "--num-samples", "200", "--top-k", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["classes"].size() == 2);
    CHECK(j["classes"][0]["features"].size() <= 2);
    CHECK(j["config"]["num_samples"] == 200);
    CHECK(cli({"explain", "--model", model, "--text", "the and", "--tokens", "preprocessed"}).code == kExitData);
    CHECK(cli({"explain", "--model", model, "--text", "x", "--format", "pdf"}).code == kExitUsage);
    CHECK(cli({"explain", "--model", model, "--text", "x", "--classes", "nope"}).code == kExitUsage);
  }
  SUBCASE("explain batch") {
    write(s.path("b.txt"), "stupid idiot\nvermin scum\nsunny weekend\n");
    const auto r = cli({"explain", "--model", model, "--batch", s.path("b.txt"), "--batch-format", "lines",
                        "--num-samples", "50", "--jobs", "2"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out) == 3);
    CHECK(nlohmann::json::parse(r.out.substr(0, r.out.find('\n')))["id"] == 1);
    CHECK(cli({"explain", "--model", model, "--batch", s.path("b.txt"), "--batch-format", "lines",
               "--format", "html"}).code == kExitUsage);
  }
  SUBCASE("analyze freq sample") {
    const auto a = cli({"analyze", "--model", model, "--in", s.path("split/test.jsonl")});
    CHECK(a.code == 0);
    CHECK(a.out.find("Overall error %") != std::string::npos);
    const auto aj = cli({"analyze", "--model", model, "--in", s.path("c.jsonl"), "--format", "json",
                         "--per-class", "10"});
    REQUIRE(aj.code == 0);
    CHECK(nlohmann::json::parse(aj.out)["documents"] == 30);
    CHECK(cli({"freq", "--in", s.path("c.jsonl"), "--out-dir", s.path("freq"), "--k", "5"}).code == 0);
    CHECK(fs::exists(s.path("freq/freq_hate.csv")));
    CHECK(fs::exists(s.path("freq/freq_none.svg")));
    CHECK(lines(slurp(s.path("freq/freq_hate.csv"))) == 6);
    const auto sm = cli({"sample-150", "--in", s.path("c.jsonl"), "--per-class", "5"});
    CHECK(sm.code == 0);
    CHECK(lines(sm.out) == 15);
  }
}

TEST_CASE("external adapter failures exit 3") {
  const std::string stub = std::string("'") + LIMELIGHT_STUB_ADAPTER + "'";
  CHECK(cli({"explain", "--blackbox", stub + " dead", "--text", "hello"}).code == kExitProtocol);
  CHECK(cli({"explain", "--blackbox", stub + " bad-norm", "--text", "hello"}).code == kExitProtocol);
  const auto ok = cli({"explain", "--blackbox", stub + " keyword", "--text", "stupid vermin scum",
                       "--format", "text"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("vermin") != std::string::npos);
  CHECK(cli({"explain", "--model", "x.json", "--blackbox", stub, "--text", "a"}).code == kExitUsage);
}

TEST_CASE("toml config supplies defaults and flags win") {
  Scratch s;
  write(s.path("cfg.toml"), "[synth]\nper-class = 4\nseed = 3\n");
  const auto a = cli({"--config", s.path("cfg.toml"), "synth"});
  REQUIRE(a.code == 0);
  CHECK(lines(a.out) == 13);
  const auto b = cli({"--config", s.path("cfg.toml"), "synth", "--per-class", "2"});
  REQUIRE(b.code == 0);
  CHECK(lines(b.out) == 7);
  const auto c = cli({"synth", "--per-class", "4", "--seed", "3"});
  CHECK(c.out == a.out);
}
