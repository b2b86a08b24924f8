#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <axoforge/compat.hpp>

using namespace axoforge;

namespace {

std::vector<std::string> tokens_of(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    if (nl > start) lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

} // namespace

TEST_CASE("read_ax1") {
  SECTION("single entry") {
    auto entries = compat::read_ax1("1;1;1;\\Line(0,0)(10,0)\n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].id == 1);
    CHECK(entries[0].xscale == 1.0);
    CHECK(entries[0].yscale == 1.0);
    CHECK(entries[0].command == "\\Line(0,0)(10,0)");
  }
  SECTION("whitespace and comments tolerated") {
    auto entries = compat::read_ax1("% header comment\n\n 2 ; 1.5 ; 2 ; \\Vertex(0,0){2} \n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].id == 2);
    CHECK(entries[0].xscale == 1.5);
    CHECK(entries[0].yscale == 2.0);
    CHECK(entries[0].command == "\\Vertex(0,0){2}");
  }
  SECTION("duplicate ids") {
    CHECK_THROWS_MATCHES(compat::read_ax1("1;1;1;\\Line(0,0)(1,0)\n1;1;1;\\Line(0,0)(2,0)\n"),
                         compat::Ax1Error,
                         Catch::Matchers::Predicate<compat::Ax1Error>([](const auto& e) {
                           return e.kind() == compat::Ax1ErrorKind::DuplicateId && e.line() == 2;
                         }));
  }
  SECTION("malformed lines") {
    CHECK_THROWS_MATCHES(compat::read_ax1("not an entry\n"), compat::Ax1Error,
                         Catch::Matchers::Predicate<compat::Ax1Error>([](const auto& e) {
                           return e.kind() == compat::Ax1ErrorKind::Format && e.line() == 1;
                         }));
    CHECK_THROWS_AS(compat::read_ax1("0;1;1;\\Line(0,0)(1,0)\n"), compat::Ax1Error);
    CHECK_THROWS_AS(compat::read_ax1("3;-1;1;\\Line(0,0)(1,0)\n"), compat::Ax1Error);
    CHECK_THROWS_AS(compat::read_ax1("4;1;1\n"), compat::Ax1Error);
  }
  SECTION("the example gluon at double scale") {
    auto entries = compat::read_ax1("7;2;2;\\Gluon(0,50)(60,50){5}{4}\n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].id == 7);
    CHECK(entries[0].xscale == 2.0);
    model::DrawState state;
    auto item = parser::parse_command(entries[0].command, state);
    auto& wig = std::get<model::WigglyPrim>(std::get<model::Primitive>(item).shape);
    CHECK(wig.spec.amplitude == 5.0);
    CHECK(wig.spec.count == 4);
  }
}

TEST_CASE("process_ax1") {
  SECTION("record order and structure") {
    std::string ax2 = compat::process_ax1("1;1;1;\\Line(0,0)(10,0)\n2;1;1;\\Vertex(5,5){2}\n");
    auto lines = split_lines(ax2);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rfind("1 ; ", 0) == 0);
    CHECK(lines[1].rfind("2 ; ", 0) == 0);
  }
  SECTION("unit conversion lands in bp") {
    std::string ax2 = compat::process_ax1("1;1;1;\\Line(0,0)(72.27,0)\n");
    auto lines = split_lines(ax2);
    REQUIRE(lines.size() == 1);
    // record: id ; llx lly urx ury ; payload
    std::istringstream in(lines[0]);
    std::string id, semi1, semi2;
    double llx, lly, urx, ury;
    in >> id >> semi1 >> llx >> lly >> urx >> ury >> semi2;
    CHECK(id == "1");
    CHECK(llx == Catch::Approx(0).margin(1e-6));
    CHECK(urx == Catch::Approx(72.0).margin(1e-6));
  }
  SECTION("anisotropic scales apply to geometry") {
    std::string ax2 = compat::process_ax1("9;1.5;1;\\Line(0,0)(10,10)\n");
    std::istringstream in(split_lines(ax2)[0]);
    std::string id, semi;
    double llx, lly, urx, ury;
    in >> id >> semi >> llx >> lly >> urx >> ury;
    CHECK(urx == Catch::Approx(backends::pt_to_bp(15)).margin(1e-6));
    CHECK(ury == Catch::Approx(backends::pt_to_bp(10)).margin(1e-6));
  }
  SECTION("errors name the entry id") {
    try {
      compat::process_ax1("41;1;1;\\Line(0,0\n");
      FAIL("expected Ax1Error");
    } catch (const compat::Ax1Error& e) {
      CHECK(e.kind() == compat::Ax1ErrorKind::Entry);
      CHECK(std::string(e.what()).find("41") != std::string::npos);
    }
  }
  SECTION("idempotence") {
    const char* src = "1;1;1;\\Gluon(0,50)(60,50){5}{4}\n2;1;1;\\Arc[arrow](100,50)(40,0,180)\n";
    CHECK(compat::process_ax1(src) == compat::process_ax1(src));
  }
  SECTION("ten entries keep id order") {
    std::string src;
    for (int i = 1; i <= 10; ++i)
      src += std::to_string(i) + ";1;1;\\Vertex(" + std::to_string(i * 10) + ",0){2}\n";
    auto lines = split_lines(compat::process_ax1(src));
    REQUIRE(lines.size() == 10);
    for (int i = 0; i < 10; ++i)
      CHECK(lines[i].rfind(std::to_string(i + 1) + " ; ", 0) == 0);
  }
}

TEST_CASE("payload matches the emit_pdf content stream token-for-token") {
  for (const char* cmd : {"\\Line(0,0)(10,0)", "\\Gluon(0,50)(60,50){5}{4}",
                          "\\Arc[arrow](100,50)(40,0,180)", "\\Vertex(60,50){2}"}) {
    INFO(cmd);
    // the equivalent one-primitive diagram at origin (0,0)
    auto d = parser::parse_document("\\begin{axopicture}(300,300)\n" + std::string(cmd) +
                                    "\n\\end{axopicture}\n");
    std::string pdf = backends::emit_pdf(d);
    std::size_t s0 = pdf.find("stream\n") + 7;
    std::size_t s1 = pdf.find("endstream");
    auto stream_tokens = tokens_of(pdf.substr(s0, s1 - s0));

    std::string ax2 = compat::process_ax1("1;1;1;" + std::string(cmd) + "\n");
    std::size_t payload_start = ax2.find(" ; ", ax2.find(" ; ") + 3);
    REQUIRE(payload_start != std::string::npos);
    auto payload_tokens = tokens_of(ax2.substr(payload_start + 3));

    REQUIRE(payload_tokens == stream_tokens);
  }
}

TEST_CASE("state-change entries produce empty payloads") {
  std::string ax2 = compat::process_ax1("1;1;1;\\SetColor{Red}\n");
  auto lines = split_lines(ax2);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("1 ; 0 0 0 0 ; ", 0) == 0);
}
