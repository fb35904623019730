#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "picheck/vernacular.hpp"

int main(int argc, char** argv) {
  CLI::App app{"picheck - batch proof checker for .pv files"};
  app.get_formatter()->column_width(28);

  bool json = false;
  std::uint64_t fuel = 1'000'000;
  std::vector<std::string> includes;
  std::vector<std::string> files;
  app.add_flag("--json", json, "emit one JSON object per file");
  app.add_option("--fuel", fuel, "reduction step budget")
      ->capture_default_str();
  app.add_option("-I", includes, "directory searched by Require")
      ->type_name("PATH");
  app.add_option("files", files, "files to check, in order, one session")
      ->required()
      ->type_name("FILE...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (fuel == 0) {
    std::cerr << "picheck: --fuel must be positive\n";
    return 2;
  }

  picheck::CheckOptions opts;
  opts.include_paths = includes;
  opts.fuel = fuel;
  picheck::CheckReport report = picheck::check_files(files, opts);
  std::cout << (json ? picheck::report_json(report)
                     : picheck::report_text(report));
  return report.exit_code;
}
