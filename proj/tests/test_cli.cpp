#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>

namespace {

struct Run {
  std::string out;
  int status = -1;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PHO_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string grammar(const char* name) { return std::string(PHO_GRAMMAR_DIR) + "/" + name + ".pho"; }

}  // namespace

TEST_CASE("eval") {
  auto r = run("eval " + grammar("turkish") + " evler Harmony");
  CHECK(r.status == 0);
  CHECK(r.out == "ok\n");
  r = run("eval " + grammar("turkish") + " evlar Harmony");
  CHECK(r.status == 1);
  CHECK(r.out == "3\ta\n");
  r = run("eval " + grammar("turkish") + " evle Left");
  CHECK(r.status == 0);
  CHECK(r.out == "1\tv\n2\tl\n3\te\n");
  r = run("eval " + grammar("world") + " '' 'big & slow'");
  CHECK(r.out == "heart\n");
  CHECK(run("eval " + grammar("turkish") + " evler 'head [+nope]'").status == 2);
  CHECK(run("eval " + grammar("turkish") + " evmer Harmony").status == 2);
}

TEST_CASE("derive") {
  auto r = run("derive " + grammar("turkish") + " kVtV --theory front-first");
  CHECK(r.status == 0);
  CHECK(r.out == "ketö\nketü\nkitö\nkitü\n");
  r = run("derive " + grammar("turkish") + " kVtV --theory round-first");
  CHECK(r.out == "köto\nkötu\nküto\nkütu\n");
  CHECK(run("derive " + grammar("turkish") + " evlVr --theory harmony").out == "evler\n");
  CHECK(run("derive " + grammar("turkish") + " evlAr-exception --theory exceptional").out == "evlar\n");
  CHECK(run("derive " + grammar("turkish") + " evlAr-exception --theory harmony").status == 1);
  CHECK(run("derive " + grammar("turkish") + " kVtV").status == 2);  // several theories, none chosen
  CHECK(run("derive " + grammar("turkish") + " nope --theory harmony").status == 2);

  CHECK(run("derive " + grammar("stress") + " row2 --theory ot").out == "+-+-+-+-+\n");
  CHECK(run("derive " + grammar("stress") + " row1 --theory positional").out == "+-+-+-+--\n");
  CHECK(run("derive " + grammar("stress") + " row2 --theory ot-reversed").out == "+++++++++\n");
  CHECK(run("derive " + grammar("stress") + " row2 --theory ot --cap 10").status == 3);
}

TEST_CASE("derive with a trace and as JSON") {
  auto r = run("derive " + grammar("stress") + " row1 --theory ot --trace");
  CHECK(r.status == 0);
  CHECK(r.out.find("step 1: default NoClash") != std::string::npos);
  r = run("derive " + grammar("stress") + " row1 --theory ot --json --trace");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["candidates"].size() == 5);
  CHECK(j["trace"].is_array());
}

TEST_CASE("derive the whole lexicon") {
  auto r = run("derive " + grammar("stress") + " --theory clash-free --all-lexicon");
  CHECK(r.status == 1);  // `clash` is a strict contradiction
  CHECK(r.out.find("row1\t") != std::string::npos);
  CHECK(r.out.find("clash\t") == std::string::npos);
}

TEST_CASE("abstract and recover") {
  auto r = run("abstract " + grammar("turkish") + " plural");
  CHECK(r.status == 0);
  CHECK(r.out == "l [-round,-high] r\n");
  r = run("abstract " + grammar("turkish") + " possessive --theory harmony --recover ev --recover göz");
  CHECK(r.out == "[+high] n [+high] z\nev\tiniz\ngöz\tünüz\n");
  CHECK(run("abstract " + grammar("turkish") + " lar leri").status == 1);
}

TEST_CASE("paradigm") {
  auto r = run("paradigm " + grammar("paradigm10") + " P10");
  CHECK(r.status == 1);
  r = run("paradigm " + grammar("paradigm10") + " P10 --default +d");
  CHECK(r.status == 0);
  CHECK(r.out.find("4/4 cells recovered") != std::string::npos);
  CHECK(run("paradigm " + grammar("paradigm10") + " P10 --default Plus").status == 0);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("derive /nonexistent.pho x").status == 2);
}
