#pragma once

// Shared test inputs: the one-loop example document and a command
// corpus covering every recognized form.

#include <string>
#include <vector>

namespace corpus {

inline const char* kExampleDoc =
    "\\begin{axopicture}(200,110)\n"
    "  \\SetColor{Red}\n"
    "  \\Arc[arrow](100,50)(40,0,180)\n"
    "  \\Text(100,100){$\\alpha P_1 + \\beta P_2 + k_\\perp$}\n"
    "  \\SetColor{Black}\n"
    "  \\Arc[arrow](100,50)(40,180,360)\n"
    "  \\Gluon(0,50)(60,50){5}{4}\n"
    "  \\Vertex(60,50){2}\n"
    "  \\Gluon(140,50)(200,50){5}{4}\n"
    "  \\Vertex(140,50){2}\n"
    "\\end{axopicture}\n";

/// One line per recognized command (41 forms).
inline std::vector<std::string> command_corpus() {
  return {
      "\\Line(0,0)(30,10)",
      "\\Line[arrow,arrowpos=0.8,color=Blue,width=1.2](0,2)(30,2)",
      "\\DashLine(0,0)(30,0){3}",
      "\\DoubleLine(0,0)(30,0){2.5}",
      "\\DashDoubleLine(0,0)(30,0){3}{2.5}",
      "\\LongArrow(0,0)(25,15)",
      "\\DashLongArrow(0,0)(25,15){2}",
      "\\DoubleLongArrow(0,0)(25,15){1.5}",
      "\\Arc(100,50)(40,0,180)",
      "\\Arc[arrow,arrowpos=0.25,double,sep=1.5](100,50)(40,45,270)",
      "\\CArc(100,50)(40,180,360)",
      "\\DashArc(100,50)(40,0,90){2.5}",
      "\\Bezier(0,0)(10,20)(30,20)(40,0)",
      "\\DashBezier(0,0)(10,20)(30,20)(40,0){2}",
      "\\Gluon(0,50)(60,50){5}{4}",
      "\\GluonArc(100,50)(40,0,180){5}{4}",
      "\\GlueArc(100,50)(40,0,180){5}{4}",
      "\\GluonCircle(50,50)(30){4}{8}",
      "\\Photon(0,0)(60,0){4}{4}",
      "\\PhotonArc(100,50)(40,0,180){4}{6}",
      "\\ZigZag(0,0)(60,0){4}{5}",
      "\\Vertex(60,50){2}",
      "\\ECirc(60,50){8}",
      "\\GCirc(60,50){8}{0.5}",
      "\\EBoxc(50,50)(40,20)",
      "\\GBoxc(50,50)(40,20){0.8}",
      "\\Boxc(50,50)(40,20)",
      "\\Polygon(0,0)(30,0)(30,30)(0,30)",
      "\\FPolygon(0,0)(30,0)(15,25)",
      "\\RBox(50,50)(40,20){30}",
      "\\Oval(50,50)(30,15){0}",
      "\\GOval(50,50)(30,15){45}{0.9}",
      "\\AxoGrid(0,0)(10,10){8}{6}",
      "\\Text(100,100){a plain label}",
      "\\BText(50,50){boxed}",
      "\\GText(50,50){0.75}{gray boxed}",
      "\\CText(50,50){oval}",
      "\\BTwoText(50,50){first}{second}",
      "\\GTwoText(50,50){0.6}{first}{second}",
      "\\CTwoText(50,50){first}{second}",
      "\\SetColor{NavyBlue}",
      "\\SetWidth{1.5}",
      "\\SetScale{2}",
  };
}

inline std::string wrap_document(const std::vector<std::string>& commands, double w = 400,
                                 double h = 400) {
  std::string doc = "\\begin{axopicture}(" + std::to_string(static_cast<int>(w)) + "," +
                    std::to_string(static_cast<int>(h)) + ")\n";
  for (const auto& c : commands) doc += c + "\n";
  doc += "\\end{axopicture}\n";
  return doc;
}

} // namespace corpus
