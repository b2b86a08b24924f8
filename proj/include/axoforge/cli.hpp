#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <axoforge/compat.hpp>
#include <axoforge/parser.hpp>
#include <axoforge/pdf.hpp>
#include <axoforge/svg.hpp>

namespace axoforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUsageError = 2;

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("error writing '" + path.string() + "'");
}

inline std::string format_from_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".svg") return "svg";
  if (ext == ".pdf") return "pdf";
  return "";
}

/// Underlay grid for layout work, covering the whole canvas.
inline void overlay_grid(model::Diagram& d, double cell) {
  model::GridPrim grid;
  grid.origin = d.canvas.origin;
  grid.cell_w = cell;
  grid.cell_h = cell;
  grid.cols = std::max(1, static_cast<int>(std::ceil(d.canvas.width / cell)));
  grid.rows = std::max(1, static_cast<int>(std::ceil(d.canvas.height / cell)));
  d.items.insert(d.items.begin(), model::Primitive{grid, model::LineStyle{}});
}

inline void render_one(const std::filesystem::path& input, const std::filesystem::path& output,
                       const std::string& format, double tol, double grid_cell) {
  model::Diagram d = parser::parse_document(read_file(input));
  if (grid_cell > 0) overlay_grid(d, grid_cell);
  std::string bytes = format == "pdf" ? backends::emit_pdf(d, tol) : backends::emit_svg(d, tol);
  write_file(output, bytes);
}

} // namespace detail

/// Entry point shared by the binary and the tests; args exclude the
/// program name. Exit status: 0 ok, 1 input error, 2 usage error.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"axoforge: compiles axodraw2 diagram source to SVG and PDF"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string output;
  std::string format;
  double tol = geom::kDefaultTol;
  double grid_cell = 0;

  CLI::App* render = app.add_subcommand("render", "Render .axo files to SVG or PDF");
  render->add_option("input", inputs, "input .axo file(s)")->required()->expected(-1);
  render->add_option("-o,--output", output, "output file (single input only)");
  render->add_option("-f,--format", format, "output format")
      ->check(CLI::IsMember({"svg", "pdf"}));
  render->add_option("--tol", tol, "flattening tolerance in pt")
      ->check(CLI::PositiveNumber);
  render->add_option("--grid", grid_cell, "underlay an AxoGrid with this cell size (pt)")
      ->check(CLI::PositiveNumber);

  std::string check_input;
  CLI::App* check = app.add_subcommand("check", "Parse a .axo file and report diagnostics");
  check->add_option("input", check_input, "input .axo file")->required();

  std::string compat_name;
  CLI::App* compat_cmd =
      app.add_subcommand("compat", "Process NAME.ax1 into NAME.ax2 (two-pass helper)");
  compat_cmd->add_option("name", compat_name, "job name or .ax1 path")->required();

  CLI::App* colors = app.add_subcommand("colors", "Print the named-color table");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;
    err << "usage error: " << e.what() << "\n";
    err << app.help();
    return kExitUsageError;
  }

  try {
    if (colors->parsed()) {
      for (const auto& entry : model::color_table()) {
        out << entry.name << " " << axoforge::detail::fmt_sig(entry.rgb.r) << " "
            << axoforge::detail::fmt_sig(entry.rgb.g) << " "
            << axoforge::detail::fmt_sig(entry.rgb.b) << "\n";
      }
      return kExitOk;
    }

    if (check->parsed()) {
      std::string src = detail::read_file(check_input);
      try {
        model::Diagram d = parser::parse_document(src);
        std::size_t prims = 0;
        for (const auto& item : d.items)
          if (std::holds_alternative<model::Primitive>(item)) ++prims;
        out << check_input << ": OK, canvas " << axoforge::detail::fmt_sig(d.canvas.width) << "x"
            << axoforge::detail::fmt_sig(d.canvas.height) << ", " << d.items.size() << " items ("
            << prims << " primitives)\n";
        return kExitOk;
      } catch (const parser::ParseError& e) {
        err << check_input << ":" << e.what() << "\n";
        return kExitInputError;
      }
    }

    if (compat_cmd->parsed()) {
      std::filesystem::path in_path = compat_name;
      if (in_path.extension() != ".ax1") in_path += ".ax1";
      std::filesystem::path out_path = in_path;
      out_path.replace_extension(".ax2");
      detail::write_file(out_path, compat::process_ax1(detail::read_file(in_path)));
      return kExitOk;
    }

    if (render->parsed()) {
      if (inputs.size() > 1 && !output.empty()) {
        err << "usage error: -o needs a single input file\n";
        return kExitUsageError;
      }
      struct Job {
        std::filesystem::path in, out;
        std::string fmt;
      };
      std::vector<Job> jobs;
      for (const auto& in : inputs) {
        Job job;
        job.in = in;
        if (inputs.size() == 1 && !output.empty()) {
          job.out = output;
          job.fmt = !format.empty() ? format : detail::format_from_extension(job.out);
          if (job.fmt.empty()) {
            err << "usage error: cannot infer format of '" << output
                << "'; use --format svg|pdf\n";
            return kExitUsageError;
          }
        } else {
          job.fmt = !format.empty() ? format : "svg";
          job.out = job.in;
          job.out.replace_extension(job.fmt == "pdf" ? ".pdf" : ".svg");
        }
        jobs.push_back(std::move(job));
      }

      // Independent files render concurrently; output bytes per file are
      // deterministic regardless of scheduling.
      std::vector<std::future<void>> tasks;
      tasks.reserve(jobs.size());
      for (const auto& job : jobs) {
        tasks.push_back(std::async(jobs.size() > 1 ? std::launch::async : std::launch::deferred,
                                   [&job, tol, grid_cell] {
                                     detail::render_one(job.in, job.out, job.fmt, tol, grid_cell);
                                   }));
      }
      bool failed = false;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        try {
          tasks[i].get();
        } catch (const std::exception& e) {
          err << jobs[i].in.string() << ": " << e.what() << "\n";
          failed = true;
        }
      }
      return failed ? kExitInputError : kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitUsageError;
}

} // namespace axoforge::cli
