// Command-line batch interface: runs one task on one problem file and
// prints a deterministic report.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "pwforge/corpus.hpp"
#include "pwforge/problem.hpp"

namespace {

struct TaskOptions {
  std::string file;
  int caps_x = -1;
  bool as_json = false;
  bool as_text = false;
  std::string out;
};

int run_task(const std::string& task, const TaskOptions& opt) {
  try {
    pwf::Problem problem = pwf::load_problem(opt.file);
    if (opt.caps_x >= 0) problem.x_degree = opt.caps_x;
    pwf::Report report = pwf::run(task, problem);
    const std::string& body = opt.as_text ? report.text : report.json_text;
    if (opt.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
      if (!f) {
        std::cerr << "pwforge: cannot write " << opt.out << "\n";
        return 1;
      }
      f << body;
    }
    return 0;
  } catch (const pwf::ProblemError& e) {
    std::cerr << "pwforge: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pwforge: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pwforge: exact curvature, symmetry, and ambient-metric computations "
      "for cotangent-bundle metrics built from projective data"};
  app.require_subcommand(1);

  auto opt = std::make_shared<TaskOptions>();
  int exit_code = 0;

  for (const std::string& task : pwf::task_names()) {
    CLI::App* sub = app.add_subcommand(task, "run the " + task + " task");
    sub->add_option("problem", opt->file, "problem file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--caps-x", opt->caps_x,
                    "override the x-degree ansatz cap");
    auto* j = sub->add_flag("--json", opt->as_json, "JSON report (default)");
    sub->add_flag("--text", opt->as_text, "plain-text report")->excludes(j);
    sub->add_option("--out", opt->out, "write the report to a file");
    sub->callback([task, opt, &exit_code]() {
      exit_code = run_task(task, *opt);
    });
  }

  auto corpus_dir = std::make_shared<std::string>();
  CLI::App* csub = app.add_subcommand("corpus", "bundled problem files");
  csub->add_option("--write", *corpus_dir,
                   "write every bundled file into this directory");
  csub->callback([corpus_dir, &exit_code]() {
    try {
      if (corpus_dir->empty()) {
        for (const auto& e : pwf::corpus()) std::cout << e.name << ".json\n";
      } else {
        int n = pwf::write_corpus(*corpus_dir);
        std::cout << "wrote " << n << " files to " << *corpus_dir << "\n";
      }
    } catch (const std::exception& e) {
      std::cerr << "pwforge: " << e.what() << "\n";
      exit_code = 1;
    }
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
