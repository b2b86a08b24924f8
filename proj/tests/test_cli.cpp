#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <axoforge/cli.hpp>

#include "support/corpus.hpp"

namespace fs = std::filesystem;
using axoforge::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("axoforge_test_" + std::to_string(
                                   std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_quiet(std::vector<std::string> args, std::string* out_text = nullptr,
              std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = run(std::move(args), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

} // namespace

TEST_CASE("cli: render svg and pdf") {
  TempDir tmp;
  fs::path axo = tmp.path / "example.axo";
  write(axo, corpus::kExampleDoc);

  fs::path svg = tmp.path / "example.svg";
  CHECK(run_quiet({"render", axo.string(), "-o", svg.string()}) == 0);
  REQUIRE(fs::exists(svg));
  CHECK(slurp(svg).find("width=\"200pt\"") != std::string::npos);

  fs::path pdf = tmp.path / "example.pdf";
  CHECK(run_quiet({"render", axo.string(), "-o", pdf.string()}) == 0);
  REQUIRE(fs::exists(pdf));
  CHECK(slurp(pdf).rfind("%PDF-1.4", 0) == 0);

  SECTION("rendering twice is byte-identical") {
    std::string first = slurp(svg);
    CHECK(run_quiet({"render", axo.string(), "-o", svg.string()}) == 0);
    CHECK(slurp(svg) == first);

    std::string first_pdf = slurp(pdf);
    CHECK(run_quiet({"render", axo.string(), "-o", pdf.string()}) == 0);
    CHECK(slurp(pdf) == first_pdf);
  }
  SECTION("--format overrides the extension") {
    fs::path odd = tmp.path / "example.out";
    CHECK(run_quiet({"render", axo.string(), "-o", odd.string(), "--format", "pdf"}) == 0);
    CHECK(slurp(odd).rfind("%PDF-1.4", 0) == 0);
  }
  SECTION("--grid overlays grid strokes") {
    fs::path plain = tmp.path / "plain.svg", gridded = tmp.path / "grid.svg";
    CHECK(run_quiet({"render", axo.string(), "-o", plain.string()}) == 0);
    CHECK(run_quiet({"render", axo.string(), "-o", gridded.string(), "--grid", "10"}) == 0);
    CHECK(slurp(gridded).size() > slurp(plain).size());
    CHECK(slurp(gridded).find("#cccccc") != std::string::npos); // LightGray strokes
  }
  SECTION("multiple inputs render concurrently to derived names") {
    fs::path a = tmp.path / "a.axo", b = tmp.path / "b.axo";
    write(a, corpus::kExampleDoc);
    write(b, corpus::wrap_document(corpus::command_corpus()));
    CHECK(run_quiet({"render", a.string(), b.string()}) == 0);
    CHECK(fs::exists(tmp.path / "a.svg"));
    CHECK(fs::exists(tmp.path / "b.svg"));
  }
}

TEST_CASE("cli: check") {
  TempDir tmp;
  fs::path good = tmp.path / "good.axo";
  write(good, corpus::kExampleDoc);
  std::string out, err;
  CHECK(run_quiet({"check", good.string()}, &out, &err) == 0);
  CHECK(out.find("OK") != std::string::npos);
  CHECK(out.find("9 items") != std::string::npos);

  fs::path bad = tmp.path / "bad.axo";
  write(bad, "\\begin{axopicture}(10,10)\n\\Line(0,0(1,1)\n\\end{axopicture}\n");
  CHECK(run_quiet({"check", bad.string()}, &out, &err) == 1);
  CHECK(err.find("line 2") != std::string::npos);
}

TEST_CASE("cli: compat") {
  TempDir tmp;
  fs::path ax1 = tmp.path / "job.ax1";
  write(ax1, "1;1;1;\\Line(0,0)(72.27,0)\n2;1;1;\\Vertex(5,5){2}\n");

  SECTION("by job name") {
    CHECK(run_quiet({"compat", (tmp.path / "job").string()}) == 0);
    REQUIRE(fs::exists(tmp.path / "job.ax2"));
    std::string ax2 = slurp(tmp.path / "job.ax2");
    CHECK(ax2.rfind("1 ; ", 0) == 0);
    CHECK(ax2.find("\n2 ; ") != std::string::npos);
  }
  SECTION("by .ax1 path") {
    CHECK(run_quiet({"compat", ax1.string()}) == 0);
    CHECK(fs::exists(tmp.path / "job.ax2"));
  }
  SECTION("entry errors exit 1 with the id") {
    fs::path broken = tmp.path / "broken.ax1";
    write(broken, "5;1;1;\\Line(0,0\n");
    std::string out, err;
    CHECK(run_quiet({"compat", broken.string()}, &out, &err) == 1);
    CHECK(err.find("5") != std::string::npos);
  }
}

TEST_CASE("cli: colors") {
  std::string out, err;
  CHECK(run_quiet({"colors"}, &out, &err) == 0);
  int lines = 0;
  for (char c : out)
    if (c == '\n') ++lines;
  CHECK(lines == 73);
  CHECK(out.find("GreenYellow 0.85 0.9 0.3") != std::string::npos);
  CHECK(out.find("Black 0 0 0") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  TempDir tmp;
  std::string out, err;

  SECTION("usage errors exit 2") {
    CHECK(run_quiet({"render", "--bogus"}, &out, &err) == 2);
    CHECK(!err.empty());
    CHECK(run_quiet({}, &out, &err) == 2);
    CHECK(run_quiet({"render"}, &out, &err) == 2);
    CHECK(run_quiet({"frobnicate"}, &out, &err) == 2);
  }
  SECTION("--help exits 0") {
    CHECK(run_quiet({"--help"}, &out, &err) == 0);
    CHECK(out.find("render") != std::string::npos);
  }
  SECTION("missing input exits 1") {
    CHECK(run_quiet({"render", (tmp.path / "nope.axo").string()}, &out, &err) == 1);
    CHECK(run_quiet({"check", (tmp.path / "nope.axo").string()}, &out, &err) == 1);
    CHECK(run_quiet({"compat", (tmp.path / "nope").string()}, &out, &err) == 1);
  }
  SECTION("arbitrary bytes never crash") {
    fs::path junk = tmp.path / "junk.axo";
    std::string bytes;
    for (int i = 0; i < 256; ++i) bytes += static_cast<char>(i);
    write(junk, bytes);
    CHECK(run_quiet({"render", junk.string(), "-o", (tmp.path / "junk.svg").string()}, &out,
                    &err) == 1);
    CHECK(!err.empty());
  }
}
