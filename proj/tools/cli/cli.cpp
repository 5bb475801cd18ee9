#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <ostream>

#include "chaoscode/errors.hpp"
#include "commands.hpp"
#include "output.hpp"

#ifndef CHAOSCODE_VERSION
#define CHAOSCODE_VERSION "0.0.0"
#endif

namespace chaoscode::cli {

namespace fs = std::filesystem;

std::string version() { return CHAOSCODE_VERSION; }

namespace {

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

bool is_flag(const std::string& token) {
  return token.size() > 1 && token[0] == '-' && !std::isdigit(static_cast<unsigned char>(token[1])) &&
         token[1] != '.';
}

// Argument list with input-file values made absolute.
std::vector<std::string> replayable_args(const std::vector<std::string>& args,
                                         const std::vector<std::string>& input_flags) {
  std::vector<std::string> out;
  bool in_inputs = false;
  for (const auto& a : args) {
    if (is_flag(a)) {
      in_inputs = false;
      const auto eq = a.find('=');
      const auto name = a.substr(0, eq);
      const bool input = std::find(input_flags.begin(), input_flags.end(), name) != input_flags.end();
      if (input && eq != std::string::npos) {
        out.push_back(name + "=" + fs::absolute(a.substr(eq + 1)).string());
        continue;
      }
      in_inputs = input;
      out.push_back(a);
    } else {
      out.push_back(in_inputs ? fs::absolute(a).string() : a);
    }
  }
  return out;
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const std::vector<std::string>& args, const Command& cmd,
                    const Emission& e) {
  ojson m;
  m["tool"] = "chaoscode";
  m["version"] = version();
  m["subcommand"] = subcommand;
  m["argv"] = replayable_args(args, cmd.input_flags);
  m["params"] = e.params;
  m["seeds"] = e.seeds;
  ojson inputs = ojson::array();
  for (const auto& p : e.inputs) {
    inputs.push_back({{"path", fs::absolute(p).string()}, {"sha256", sha256_hex(read_file(p))}});
  }
  m["inputs"] = inputs;
  m["outputs"] = ojson::array(
      {{{"path", fs::absolute(out_path).string()}, {"sha256", sha256_hex(e.body)}}});
  write_atomic(manifest_path(out_path), m.dump(2) + "\n");
}

int replay(const std::string& manifest_file, std::ostream& out, std::ostream& err) {
  const auto m = ojson::parse(read_file(manifest_file));
  auto args = m.at("argv").get<std::vector<std::string>>();
  const auto& recorded = m.at("outputs").at(0);
  const auto expected = recorded.at("sha256").get<std::string>();
  const std::string tmp = recorded.at("path").get<std::string>() + ".replay";

  bool replaced = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" && i + 1 < args.size()) {
      args[i + 1] = tmp;
      replaced = true;
    } else if (args[i].rfind("--out=", 0) == 0) {
      args[i] = "--out=" + tmp;
      replaced = true;
    }
  }
  if (!replaced) throw DomainError("replay: manifest argv has no --out");

  const int rc = run_cli(args, out, err);
  if (rc != kExitOk) return rc;
  const auto actual = sha256_hex(read_file(tmp));
  fs::remove(tmp);
  fs::remove(manifest_path(tmp));
  if (actual != expected) {
    err << "replay: checksum mismatch for " << recorded.at("path").get<std::string>()
        << "\n  recorded " << expected << "\n  replayed " << actual << "\n";
    return kExitFailure;
  }
  out << "replay: " << recorded.at("path").get<std::string>() << " reproduced (sha256 "
      << actual << ")\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logistic-map dynamics and chaotic spreading-code tools", "chaoscode"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1, 1);
  auto commands = register_commands(app);

  std::string manifest_file;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare checksums");
  replay_cmd->add_option("manifest", manifest_file, "Path to <out>.manifest.json")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (replay_cmd->parsed()) return replay(manifest_file, out, err);

    const auto it = std::find_if(commands.begin(), commands.end(),
                                 [](const Command& c) { return c.app->parsed(); });
    const Emission e = it->run();
    const std::string& out_path = *it->out_path;
    if (out_path.empty()) {
      out << e.body;
    } else {
      write_atomic(out_path, e.body);
      write_manifest(out_path, it->app->get_name(), args, *it, e);
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace chaoscode::cli
