#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "erc/core_model.hpp"

namespace erc {

/// Malformed instance text. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string section, std::size_t line, const std::string& what);

  const std::string& section() const { return section_; }
  std::size_t line() const { return line_; }

 private:
  std::string section_;
  std::size_t line_;
};

// JSON layout:
//   {"capacity": C, "horizon": [lo, hi],
//    "activities": [{"s": [s_min, s_max], "p": p, "h": h}, ...],
//    "precedences": [[pred, succ], ...],
//    "resources": [{"capacity": C2, "heights": [...]}, ...]}
// "capacity" and each activity's "h" describe the first resource; "resources"
// lists any further ones. "horizon", "precedences" and "resources" are
// optional; the horizon defaults to [min s_min, max e_max].
nlohmann::json to_json(const RcpspInstance& inst);
nlohmann::json to_json(const CuspInstance& inst);
RcpspInstance rcpsp_from_json(const nlohmann::json& j);
RcpspInstance parse_json_instance(std::string_view text);

/// Single-mode PSPLIB (.sm): job count, horizon, precedence relations,
/// requests/durations and renewable resource availabilities. Activities get
/// s_min = 0 and s_max = horizon - p, the horizon being the declared one or
/// the sum of durations. Cyclic precedences are rejected.
RcpspInstance parse_psplib(std::string_view text);
std::string write_psplib(const RcpspInstance& inst);

/// By extension: ".sm" is PSPLIB, anything else JSON. Throws ParseError, or
/// std::runtime_error when the file cannot be read.
RcpspInstance read_instance_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const RcpspInstance& inst);

}  // namespace erc
