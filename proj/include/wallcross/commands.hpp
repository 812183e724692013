#pragma once

#include "wallcross/config.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace wallcross {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<int> trunc;
    std::optional<double> tol;
};

struct CommandResult {
    nlohmann::json report;
    std::string text;
    bool pass = true;
};

CommandResult cmd_analyze(const JobConfig& cfg, const RunOptions& opt);
CommandResult cmd_boxes(const JobConfig& cfg, const RunOptions& opt);
CommandResult cmd_fixed_points(const JobConfig& cfg, const RunOptions& opt);
CommandResult cmd_continuation(const JobConfig& cfg, const RunOptions& opt);
CommandResult cmd_fm(const JobConfig& cfg, const RunOptions& opt);
CommandResult cmd_series(const JobConfig& cfg, const RunOptions& opt);
// suite is one of uhfm, pairing, mb, ode, lifts.
CommandResult cmd_verify(const JobConfig& cfg, const std::string& suite, const RunOptions& opt);

std::string dump_report(const nlohmann::json& report);  // stable formatting

}  // namespace wallcross
