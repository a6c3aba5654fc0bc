#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tpk/symbol.hpp"

namespace tpk {

/// Reads a symbol from a file path or inline text; JSON when it starts with '{',
/// an expression otherwise. `p` overrides a JSON "p" field; expressions default to 2.
PCSymbol load_symbol(const std::string& source, std::optional<Exponent> p);

/// Runs one subcommand. Returns 0 on success (including mathematical verdicts such as
/// "no p-factorization"), 2 on domain errors, 1 on usage and parse errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpk
