// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/cli/cli.hpp"

#include <ostream>

#include "commands.hpp"
#include "topoforge/error.hpp"

#ifndef TOPOFORGE_VERSION
#define TOPOFORGE_VERSION "0.0.0"
#endif

namespace topoforge::cli {

std::string Version() { return TOPOFORGE_VERSION; }

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"topoforge: intra-AS topology extraction, generation and evaluation"};
  app.name("topoforge");
  app.set_version_flag("--version", Version());
  app.set_config("--config", "", "key = value file; [section] per subcommand");
  app.require_subcommand(1);
  AddIngest(app, io);
  AddExtract(app, io);
  AddTrain(app, io);
  AddGenerate(app, io);
  AddGenerateBaseline(app, io);
  AddEval(app, io);
  AddMetrics(app, io);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << Version() << '\n';
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace topoforge::cli
