#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "codeview/pipeline.hpp"

namespace fs = std::filesystem;
using namespace codeview;

namespace {

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_stream(in);
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, path);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct CliOptions {
  std::string file;
  std::string lang = "java";
  std::string views = "ast";
  bool collapsed = false;
  bool minimized = false;
  std::string blacklist;
  bool last_def = false;
  bool last_use = false;
  bool no_interprocedural = false;
  bool method_snippet = false;
  std::string format = "json";
  std::string out;
  std::string batch;
};

int make_view_config(const CliOptions& cli, ViewConfig& config,
                     std::string& error) {
  if (cli.lang != "java") {
    error = "unsupported language '" + cli.lang + "' (supported: java)";
    return 2;
  }
  config.language = Language::Java;

  config.views.clear();
  for (const std::string& name : split_list(cli.views)) {
    auto view = view_from_string(name);
    if (!view) {
      error = "unknown view '" + name + "' (expected ast, cfg, dfg)";
      return 2;
    }
    if (std::find(config.views.begin(), config.views.end(), *view) ==
        config.views.end()) {
      config.views.push_back(*view);
    }
  }
  if (config.views.empty()) {
    error = "--views must select at least one of ast, cfg, dfg";
    return 2;
  }

  config.ast.collapsed = cli.collapsed;
  config.ast.minimized = cli.minimized || !cli.blacklist.empty();
  config.ast.blacklist = split_list(cli.blacklist);
  config.dfg.last_def = cli.last_def;
  config.dfg.last_use = cli.last_use;
  if (cli.no_interprocedural) config.interprocedural = false;
  config.method_snippet = cli.method_snippet;

  if (cli.format == "json") {
    config.format = OutputFormat::Json;
  } else if (cli.format == "dot") {
    config.format = OutputFormat::Dot;
  } else {
    error = "unknown format '" + cli.format + "' (expected json or dot)";
    return 2;
  }
  return 0;
}

int run_single(const CliOptions& cli, const ViewConfig& config,
               const DotOptions& dot_options) {
  SourceUnit unit;
  if (!cli.file.empty()) {
    unit.text = read_file(cli.file);
    unit.origin = cli.file;
  } else {
    unit.text = read_stream(std::cin);
  }

  try {
    std::string bytes = generate_serialized(unit, config, dot_options);
    if (!cli.out.empty()) {
      write_atomic(cli.out, bytes);
    } else {
      std::cout << bytes;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const EmptyInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int run_batch(const CliOptions& cli, const ViewConfig& config,
              const DotOptions& dot_options) {
  if (cli.out.empty()) {
    std::cerr << "error: --batch requires --out <directory>\n";
    return 2;
  }
  fs::path in_dir(cli.batch);
  if (!fs::is_directory(in_dir)) {
    std::cerr << "error: not a directory: " << in_dir << "\n";
    return 2;
  }
  fs::path out_dir(cli.out);
  fs::create_directories(out_dir);

  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      inputs.push_back(entry.path());
    }
  }
  std::sort(inputs.begin(), inputs.end());

  const char* ext = config.format == OutputFormat::Dot ? ".dot" : ".json";
  size_t processed = 0;
  size_t succeeded = 0;
  size_t syntax_errors = 0;
  for (const fs::path& path : inputs) {
    ++processed;
    SourceUnit unit;
    unit.text = read_file(path);
    unit.origin = path.filename().string();
    try {
      std::string bytes = generate_serialized(unit, config, dot_options);
      write_atomic(out_dir / (path.stem().string() + ext), bytes);
      ++succeeded;
    } catch (const SyntaxError& e) {
      ++syntax_errors;
      std::cerr << path.filename().string() << ": " << e.what() << "\n";
    } catch (const EmptyInputError& e) {
      ++syntax_errors;
      std::cerr << path.filename().string() << ": " << e.what() << "\n";
    }
  }
  std::cout << "processed=" << processed << " succeeded=" << succeeded
            << " syntax_errors=" << syntax_errors << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Emits combinable AST/CFG/DFG code-view graphs for Java snippets as "
      "deterministic JSON or DOT."};
  CliOptions cli;

  app.add_option("--file", cli.file, "Input file (default: read stdin)");
  app.add_option("--lang", cli.lang, "Source language (java)");
  app.add_option("--views", cli.views,
                 "Comma-separated views: ast,cfg,dfg (default ast)");
  app.add_flag("--collapsed", cli.collapsed,
               "AST: merge all occurrences of one variable into one node");
  app.add_flag("--minimized", cli.minimized,
               "AST: apply the blacklist filter (identity when empty)");
  app.add_option("--blacklist", cli.blacklist,
                 "AST: comma-separated node kinds to remove (implies --minimized)");
  app.add_flag("--last-def", cli.last_def, "DFG: add last_def edges");
  app.add_flag("--last-use", cli.last_use, "DFG: add last_use edges");
  app.add_flag("--no-interprocedural", cli.no_interprocedural,
               "Disable call/return edges and two-phase dataflow");
  app.add_flag("--method-snippet", cli.method_snippet,
               "Treat input as a method-level snippet (force wrapping)");
  app.add_option("--format", cli.format, "Output format: json or dot");
  app.add_option("--out", cli.out, "Output file (single) or directory (batch)");
  app.add_option("--batch", cli.batch,
                 "Process every .java file in a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ViewConfig config;
  std::string error;
  if (int code = make_view_config(cli, config, error); code != 0) {
    std::cerr << "error: " << error << "\n";
    return code;
  }

  DotOptions dot_options;
  if (std::getenv("CODEVIEW_NO_COLOR") != nullptr) dot_options.color = false;

  try {
    if (!cli.batch.empty()) return run_batch(cli, config, dot_options);
    return run_single(cli, config, dot_options);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
