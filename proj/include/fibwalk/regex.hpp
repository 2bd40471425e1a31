#pragma once

// Regular expressions over digit tuples, as used by `reg` commands:
// letters "0"/"1" for one track or "[d1,...,dk]" for k tracks, with
// concatenation, "|", "*", "+", "?" and parentheses. Whitespace is ignored.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fibwalk/automata.hpp"

namespace fibwalk {

class RegexError : public std::runtime_error {
 public:
  RegexError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exact regex language (no canonicality restriction), minimized.
automata::SyncDFA compile_regex_raw(std::string_view pattern, int arity);

/// Regex language intersected with canonical representations on every track.
automata::SyncDFA compile_regex(std::string_view pattern, int arity);

}  // namespace fibwalk
