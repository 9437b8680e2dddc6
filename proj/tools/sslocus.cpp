#include <cstdlib>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "sslocus/errors.hpp"
#include "sslocus/local_geometry.hpp"
#include "sslocus/model.hpp"
#include "sslocus/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitVerifyFailed = 4;

bool use_color() {
  return ::isatty(STDOUT_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
}

int run_describe(const std::string& path, const std::string& format) {
  sslocus::SpecFile spec_file;
  try {
    spec_file = sslocus::load_spec_file(path);
  } catch (const sslocus::error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  const sslocus::ValidationResult validation = sslocus::validate_spec(spec_file.spec);
  if (!validation.ok()) {
    for (const sslocus::Violation& violation : validation.violations) {
      std::cerr << sslocus::errc_name(violation.code) << ": " << violation.message << "\n";
    }
    return kExitValidation;
  }

  const sslocus::Report report = sslocus::build_report(spec_file);
  if (format == "json") {
    std::cout << sslocus::render_json(report);
  } else {
    std::cout << sslocus::render_text(report, use_color());
  }
  return kExitOk;
}

int run_verify(long long p, const sslocus::VerifyOptions& options) {
  sslocus::VerificationReport report;
  try {
    report = sslocus::verify_counts(p, options);
  } catch (const sslocus::error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << sslocus::render_verification_text(report, use_color());
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

int run_convert_height(int m, long long j) {
  if (m < 1 || m > 4) {
    std::cerr << "UnsupportedM: m = " << m << " is outside 1..4\n";
    return kExitUsage;
  }
  std::cout << sslocus::quasi_isogeny_height(m, j) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"descriptors and brute-force verification for the geometry of supersingular "
               "loci of unitary Shimura varieties (m <= 4, p totally split and unramified)"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string format = "text";
  CLI::App* describe = app.add_subcommand(
      "describe", "evaluate the geometry descriptor for a spec file");
  describe->add_option("spec-file", spec_path, "JSON spec file")->required();
  describe->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  long long verify_p = 0;
  sslocus::VerifyOptions verify_options;
  CLI::App* verify = app.add_subcommand(
      "verify", "diff the descriptor table against brute-force finite-geometry enumeration");
  verify->add_option("--p", verify_p, "odd prime to verify at")->required();
  verify->add_option("--max-p", verify_options.max_p, "enumeration bound")->capture_default_str();
  verify->add_option("--workers", verify_options.workers, "enumeration worker threads")
      ->capture_default_str();
  verify->add_flag("--corrupt-table", verify_options.corrupt_table,
                   "perturb one table constant (self-test of failure detection)");

  int height_m = 0;
  long long height_j = 0;
  CLI::App* convert = app.add_subcommand(
      "convert-height", "print the quasi-isogeny height m*j for a polarization index j");
  convert->add_option("--m", height_m, "signature sum, 1..4")->required();
  convert->add_option("--j", height_j, "polarization index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (describe->parsed()) return run_describe(spec_path, format);
  if (verify->parsed()) return run_verify(verify_p, verify_options);
  return run_convert_height(height_m, height_j);
}
