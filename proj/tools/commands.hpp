#pragma once

namespace CLI {
class App;
}

namespace dsmtool {

// Each registration adds one subcommand to the app; the callback stores its
// result in exit_code (0 check passed / clean run, 1 check failed).
void register_cmd_ds_verify(CLI::App& app, int& exit_code);
void register_cmd_inequality(CLI::App& app, int& exit_code);
void register_cmd_arnold(CLI::App& app, int& exit_code);
void register_cmd_gl2r(CLI::App& app, int& exit_code);

}  // namespace dsmtool
