#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsm/errors.hpp"
#include "report_io.hpp"

int main(int argc, char** argv) {
  dsmtool::set_invocation(argc, argv);
  CLI::App app{"Numerical laboratory for invariant measures of matrix cosets "
               "and the standard circle family"};
  app.set_version_flag("--version", std::string("dsmlab ") + DSMLAB_VERSION);
  app.require_subcommand(1);

  int exit_code = 0;
  dsmtool::register_cmd_ds_verify(app, exit_code);
  dsmtool::register_cmd_inequality(app, exit_code);
  dsmtool::register_cmd_arnold(app, exit_code);
  dsmtool::register_cmd_gl2r(app, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const dsm::BadParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsm::DimOutOfRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dsm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
