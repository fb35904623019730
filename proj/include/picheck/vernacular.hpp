#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picheck/ast.hpp"
#include "picheck/kernel.hpp"

namespace picheck {

struct CommandOutcome {
  std::string name;    // declared name; module for Require; empty otherwise
  std::string kind;    // surface keyword
  std::string status;  // "ok" | "error" | "skipped"
  SrcLoc span;
  std::optional<ErrKind> error;
  std::string message;
  std::vector<Constraint> core;  // universe inconsistency cycles
  std::string output;            // Check/Eval printed result
};

struct FileReport {
  std::string file;
  std::vector<CommandOutcome> commands;
  std::size_t levels = 0;       // levels allocated while this file checked
  std::size_t user_levels = 0;  // levels from Type occurrences in source
  std::size_t constraints = 0;  // session constraint count after the file
  bool satisfiable = true;
  double ms = 0.0;

  bool all_ok() const;
  // First errored command, if any.
  const CommandOutcome* first_error() const;
};

struct CheckReport {
  std::vector<FileReport> files;
  int exit_code = 0;
};

struct CheckOptions {
  std::vector<std::string> include_paths;
  std::uint64_t fuel = 1'000'000;
};

// Converts a surface expression into a kernel term: resolves names to de
// Bruijn indices or global references, allocates a level per Type
// occurrence and infers the domain of infix equalities. `locals` are binder
// names (innermost last) with their types in `ctx`.
Term elaborate(const GlobalEnv& env, LevelAlloc& alloc,
               const ReductionFlags& flags, std::vector<std::string>& locals,
               Telescope& ctx, const ast::ExprPtr& e,
               const std::map<std::string, Term>* extra_scope = nullptr,
               std::size_t* user_levels = nullptr);

// One sequential checking session: a shared environment and level allocator
// across every file passed on one command line.
class Session {
 public:
  explicit Session(CheckOptions opts) : opts_(std::move(opts)) {}

  FileReport check_file(const std::string& path);
  FileReport check_source(const std::string& text, const std::string& name);

  const GlobalEnv& env() const { return env_; }
  const CheckOptions& options() const { return opts_; }
  // The session's allocator: levels created against this env must come from
  // here so ids never collide.
  LevelAlloc& level_alloc() { return alloc_; }

 private:
  friend struct Processor;
  CheckOptions opts_;
  GlobalEnv env_;
  LevelAlloc alloc_;
  std::set<std::string> loaded_modules_;
  std::vector<std::string> require_stack_;
  std::size_t user_levels_ = 0;

  FileReport run(const std::vector<ast::Command>& cmds, const std::string& name);
};

// Checks the files in order in one session and aggregates the reports.
// Exit code 0 when everything checks, 1 on any parse or check error, 2 on
// an unreadable input file.
CheckReport check_files(const std::vector<std::string>& paths,
                        const CheckOptions& opts);

// Renders a report as text (one line per command) or as one JSON object per
// file, newline separated.
std::string report_text(const CheckReport& report);
std::string report_json(const CheckReport& report);

}  // namespace picheck
