// Runs every acceptance check at full strength and prints one verdict line
// per check. Exit code 0 only when all pass.
#include <bergmanosc/bergmanosc.hpp>

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  bergmanosc::checks::CheckOptions opt;
  opt.anchor_path = std::string(BERGMANOSC_SOURCE_DIR) + "/data/anchors.json";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) opt.fast = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      opt.threads = std::atoi(argv[i + 1]);
    }
  }
  auto results = bergmanosc::checks::run_checks(opt);
  bergmanosc::checks::print_results(std::cout, results);
  return bergmanosc::checks::all_passed(results) ? 0 : 1;
}
